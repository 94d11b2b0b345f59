#pragma once

// Executable property checkers: group unanimity, pairwise unanimity,
// strategyproofness (exhaustive and sampled), plus the structural tools used
// to certify that pairwise unanimity is unattainable for a review graph.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "divrank/aggregate.hpp"
#include "divrank/model.hpp"

namespace divrank {

enum class Property { kGU, kPU, kSP, kWSP };
const char* property_name(Property property);

using PaperPair = std::pair<PaperIndex, PaperIndex>;  // (should win, should lose)

struct Witness {
  std::string description;
  std::optional<PaperPair> pair;
  std::optional<ReviewerIndex> reviewer;
  std::optional<PaperIndex> paper;
  std::optional<Profile> profile;
  std::optional<Ranking> deviation;  // the deviating reviewer's alternative
  std::optional<int> position_before;
  std::optional<int> position_after;
};

// verdict == false always comes with a witness.
struct PropertyReport {
  Property property = Property::kGU;
  bool verdict = true;
  std::optional<Witness> witness;
  std::uint64_t cases_checked = 0;
  std::string note;
};

std::string serialize(const PropertyReport& report, const Labels& labels);

// All papers reviewed together by at least one reviewer, as (a, b) with a < b.
std::vector<PaperPair> co_reviewed_pairs(const ReviewGraph& rg);

// Pairs (x, y) the output must order x above y for group unanimity: x and y
// are co-reviewed, lie in different strongly connected components of the
// profile graph, and x reaches y.
std::vector<PaperPair> gu_required_pairs(const ReviewGraph& rg,
                                         const Profile& profile);

// Pairs (x, y) co-reviewed by at least one reviewer where every common
// reviewer ranks x above y.
std::vector<PaperPair> pu_required_pairs(const ReviewGraph& rg,
                                         const Profile& profile);

PropertyReport check_gu(const ReviewGraph& rg, const Profile& profile,
                        const AggregateRanking& output);
PropertyReport check_pu(const ReviewGraph& rg, const Profile& profile,
                        const AggregateRanking& output);

// Enumerates every profile of a review graph. Reviewer i's rankings are the
// permutations of P_i in lexicographic order; profile indices are mixed radix
// with reviewer 0 as the least significant digit.
class ProfileSpace {
 public:
  explicit ProfileSpace(const ReviewGraph& rg);

  // Number of profiles; saturates at UINT64_MAX.
  std::uint64_t size() const { return size_; }
  int num_reviewers() const { return static_cast<int>(rankings_.size()); }
  const std::vector<Ranking>& rankings_of(ReviewerIndex r) const {
    return rankings_[static_cast<std::size_t>(r)];
  }
  std::uint64_t stride(ReviewerIndex r) const {
    return strides_[static_cast<std::size_t>(r)];
  }
  int digit(std::uint64_t index, ReviewerIndex r) const;
  Profile at(std::uint64_t index) const;

 private:
  std::vector<std::vector<Ranking>> rankings_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t size_ = 1;
};

// Refuses with BudgetExceeded when the number of profiles exceeds
// `profile_budget`.
PropertyReport check_sp_exhaustive(const ReviewGraph& rg,
                                   const ConflictGraph& conflicts,
                                   const Mechanism& mechanism,
                                   std::uint64_t profile_budget = 2'000'000);

// One-sided evidence: each trial draws a uniform profile, a uniform reviewer
// among those with conflicts and a uniform deviation for them.
PropertyReport check_sp_randomized(const ReviewGraph& rg,
                                   const ConflictGraph& conflicts,
                                   const Mechanism& mechanism,
                                   std::uint64_t trials, std::uint64_t seed);

// Conflict graph where every reviewer conflicts with every paper on their own
// side; SP against it means a reviewer never moves any own-side paper.
ConflictGraph own_side_conflicts(const PartitionResult& partition);

// Undirected paper graph: edge iff some reviewer reviews both papers.
struct ReviewRelationGraph {
  std::vector<std::vector<PaperIndex>> adjacency;  // sorted

  static ReviewRelationGraph build(const ReviewGraph& rg);
  bool adjacent(PaperIndex a, PaperIndex b) const;
};

// Vertices are the distinct review sets; edge iff two sets share a paper.
struct PaperRelationGraph {
  std::vector<std::vector<PaperIndex>> sets;
  std::vector<std::pair<int, int>> edges;

  static PaperRelationGraph build(const ReviewGraph& rg);
  bool is_forest() const;
};

// First reviewer (by index) whose review set contains all of `papers`.
std::optional<ReviewerIndex> covering_reviewer(const ReviewGraph& rg,
                                               const std::vector<PaperIndex>& papers);

// Searches for a simple cycle of the review-relation graph with length in
// [min_length, max_length] that no single reviewer covers. Cycles are
// explored from their smallest paper; `step_budget` bounds DFS expansions.
struct CycleSearch {
  std::optional<std::vector<PaperIndex>> cycle;
  bool exhausted = true;  // false when the step budget ran out
};
CycleSearch find_uncovered_cycle(const ReviewGraph& rg, int min_length,
                                 int max_length,
                                 std::uint64_t step_budget = 5'000'000);

// A complete profile in which, for every consecutive pair (c_j, c_{j+1}) of
// the cycle (cyclically), every common reviewer ranks c_j above c_{j+1}.
// Each reviewer's ranking is the smallest-index-first topological extension of
// their share of those constraints. The cycle's pairs are then unanimous, so
// no output can respect them all.
struct CyclicUnanimityWitness {
  Profile profile;
  std::vector<PaperPair> constraint_cycle;
};

// Throws ContractViolation when the cycle is shorter than 3, repeats a paper,
// has a consecutive pair nobody co-reviews, or is covered by one reviewer.
CyclicUnanimityWitness cyclic_unanimity_witness(
    const ReviewGraph& rg, const std::vector<PaperIndex>& cycle);

// Necessary conditions for pairwise unanimity when all review sets have the
// same size mu >= 2.
struct PuConditionsReport {
  int mu = 0;
  int num_papers = 0;

  // (i) no review-relation cycle longer than mu (searched up to mu + 3).
  bool long_cycle_free = true;
  bool long_cycle_search_exhausted = true;
  std::optional<std::vector<PaperIndex>> long_cycle;

  // (ii) every pairwise intersection has size 0, 1 or mu.
  bool intersections_ok = true;
  std::optional<std::pair<ReviewerIndex, ReviewerIndex>> bad_reviewer_pair;
  std::optional<std::vector<PaperIndex>> induced_cycle;  // 4-cycle witness

  // (iii) distinct review sets <= (n - 1) / (mu - 1).
  bool distinct_sets_ok = true;
  int distinct_sets = 0;
  double distinct_sets_bound = 0.0;

  // Informational: whether the paper-relation graph is a forest.
  bool paper_relation_forest = true;

  bool pu_impossible() const {
    return !long_cycle_free || !intersections_ok || !distinct_sets_ok;
  }
};

// Throws ContractViolation unless all review sets share one size mu >= 2.
PuConditionsReport check_pu_conditions(const ReviewGraph& rg);

}  // namespace divrank
