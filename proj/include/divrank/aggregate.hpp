#pragma once

// Rank aggregation: Contract-and-Sort on each side of the split, followed by
// interleaving the two side rankings into fixed global slots.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "divrank/model.hpp"

namespace divrank {

// Directed graph over a paper subset with one edge per ordered pair of
// consecutive papers in some reviewer's (restricted) ranking.
class ProfileGraph {
 public:
  // `papers` must be sorted; every ranking's support must lie inside it.
  ProfileGraph(std::span<const PaperIndex> papers,
               std::span<const Ranking> rankings);

  const std::vector<PaperIndex>& papers() const { return papers_; }
  // Adjacency over local vertex ids (positions in papers()), sorted, no
  // duplicate edges.
  const std::vector<std::vector<int>>& successors() const { return adj_; }
  int local_id(PaperIndex paper) const;
  std::size_t num_edges() const;

 private:
  std::vector<PaperIndex> papers_;
  std::vector<std::vector<int>> adj_;
};

struct SccDecomposition {
  std::vector<int> component_of;          // per vertex
  std::vector<std::vector<int>> members;  // per component, sorted
};

// Linear-time (iterative Tarjan) strongly connected components.
SccDecomposition strongly_connected_components(
    const std::vector<std::vector<int>>& successors);

// Topological order of the condensation. Among the components currently
// without unplaced predecessors, the one holding the smallest vertex id goes
// first.
std::vector<int> condensation_order(
    const std::vector<std::vector<int>>& successors,
    const SccDecomposition& scc);

// The within-SCC rule: orders `members` (sorted paper indices of one SCC)
// given the profile restricted to the side being aggregated.
struct AggregateStrategy {
  using Fn = std::function<std::vector<PaperIndex>(
      const std::vector<PaperIndex>& members, std::span<const Ranking> profile)>;

  std::string name;
  Fn order;

  // Borda count on the rankings restricted to the members: a restricted
  // ranking of size s gives (s - rank) points to its rank-th paper. Ties go to
  // the lower paper index.
  static AggregateStrategy borda();
};

// Aggregates one side. `side_papers` must be sorted and contain every ranked
// paper (ContractViolation otherwise). Papers that appear in no ranking are
// appended last in index order.
Ranking contract_and_sort(std::span<const PaperIndex> side_papers,
                          std::span<const Ranking> rankings,
                          const AggregateStrategy& strategy =
                              AggregateStrategy::borda());

// 1-based global slots of the larger side (size n1): floor(k*n/n1), k=1..n1.
std::vector<int> larger_side_slots(int n, int n1);
// 1-based global slots of the smaller side (size n2): ceil(k*n/n2) - 1.
std::vector<int> smaller_side_slots(int n, int n2);

// Places the larger ranking's papers into larger_side_slots in order and the
// smaller one's into smaller_side_slots. Requires |a| + |b| == n and the two
// rankings to partition [0, n); ContractViolation otherwise.
AggregateRanking interleave(const Ranking& ranking_c, const Ranking& ranking_cbar,
                            int n);

// Restricts the profile to each side, aggregates both sides and interleaves.
// The profile holds one ranking per reviewer of the partition; a reviewer
// ranking a paper on its own side raises ContractViolation naming them.
AggregateRanking divide_and_rank_aggregate(
    const Profile& profile, const PartitionResult& partition,
    const AggregateStrategy& strategy = AggregateStrategy::borda());

using Mechanism = std::function<AggregateRanking(const Profile&)>;

Mechanism divide_and_rank_mechanism(
    PartitionResult partition,
    AggregateStrategy strategy = AggregateStrategy::borda());

// Plain Borda count over the whole profile (ties: lower index first). Not
// strategyproof; used as a baseline by the checkers.
AggregateRanking borda_aggregate(const Profile& profile, int num_papers);

}  // namespace divrank
