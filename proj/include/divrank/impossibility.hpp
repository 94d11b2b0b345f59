#pragma once

// Finite checks of the negative results: rule tables over the total-ranking
// setting, influence graphs, a backtracking search for rules that are both
// group unanimous and weakly strategyproof, and the misplacement simulation.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "divrank/model.hpp"

namespace divrank {

// Every reviewer ranks all n papers. Profiles are indexed mixed radix in base
// n! with reviewer 0 least significant; rankings() lists the permutations of
// [0, n) in lexicographic order and output[p] indexes into it.
class RuleTable {
 public:
  RuleTable(int num_papers, int num_reviewers);

  static RuleTable constant(int num_papers, int num_reviewers, int output = 0);
  static RuleTable from_mechanism(
      int num_papers, int num_reviewers,
      const std::function<AggregateRanking(const Profile&)>& mechanism);

  int num_papers() const { return n_; }
  int num_reviewers() const { return m_; }
  std::uint64_t num_profiles() const { return num_profiles_; }
  const std::vector<Ranking>& rankings() const { return rankings_; }
  Profile profile(std::uint64_t index) const;

  int output_index(std::uint64_t profile) const {
    return output_[static_cast<std::size_t>(profile)];
  }
  void set_output(std::uint64_t profile, int ranking_index) {
    output_[static_cast<std::size_t>(profile)] = ranking_index;
  }
  // 1-based output position of `paper` under the given profile.
  int position(std::uint64_t profile, PaperIndex paper) const;

 private:
  int n_;
  int m_;
  std::uint64_t num_profiles_ = 1;
  std::vector<Ranking> rankings_;
  std::vector<std::vector<int>> positions_;  // per ranking, per paper
  std::vector<int> output_;
};

struct InfluenceGraph {
  int num_reviewers = 0;
  int num_papers = 0;
  std::vector<std::vector<char>> edge;  // edge[i][j]

  bool has_edge(ReviewerIndex i, PaperIndex j) const {
    return edge[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0;
  }
  int degree(ReviewerIndex i) const;
  // Weak strategyproofness: every reviewer misses at least one paper.
  bool is_wsp() const;
};

// Exact, by comparing every profile with every unilateral deviation. Refuses
// with BudgetExceeded when profiles * n! exceeds `budget`.
InfluenceGraph influence_graph(const RuleTable& rule,
                               std::uint64_t budget = 50'000'000);

struct TotalRankingCensus {
  int num_papers = 0;
  int num_reviewers = 0;
  bool in_scope = true;  // false for n < 2
  std::uint64_t num_profiles = 0;
  std::uint64_t num_rules = 0;
  std::uint64_t num_pu_rules = 0;
  std::uint64_t num_pu_and_wsp_rules = 0;
  std::string note;
};

// Enumerates every rule table for n papers and m reviewers who all rank every
// paper, counting those that are pairwise unanimous and those that are also
// weakly strategyproof. Refuses with BudgetExceeded above `rule_budget` rules.
TotalRankingCensus total_ranking_census(int num_papers, int num_reviewers,
                                        std::uint64_t rule_budget = 1'000'000);

std::string serialize(const TotalRankingCensus& census);

enum class WspMode {
  kNone,
  // One immune paper per reviewer for all of their deviations.
  kStrict,
  // Each single-reviewer deviation pair keeps at least one paper in place.
  // Weaker than kStrict, so unsatisfiability here implies it for kStrict.
  kPerPair,
};

struct RuleSearchOptions {
  bool group_unanimity = true;
  WspMode wsp = WspMode::kStrict;
  // Profiles (indices into ProfileSpace) the rule is constrained on; empty
  // means all of them.
  std::vector<std::uint64_t> profiles;
};

struct RuleSearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t backtracks = 0;
  std::uint64_t immune_choices = 0;  // kStrict: immune-paper tuples tried
};

struct RuleSearchResult {
  bool satisfiable = false;
  // For each constrained profile (same order as the searched profile list):
  // the profile index and the chosen output.
  std::vector<std::uint64_t> profiles;
  std::vector<AggregateRanking> outputs;
  std::vector<PaperIndex> immune_papers;  // kStrict witnesses
  RuleSearchStats stats;
};

// Backtracking over rule tables on a small review graph. Profiles are taken in
// index order; with group unanimity on, the Contract-and-Sort output of a
// profile is tried first, otherwise outputs are tried in lexicographic order.
RuleSearchResult search_rules(const ReviewGraph& rg,
                              const RuleSearchOptions& options,
                              std::uint64_t node_budget = 50'000'000);

// Independent check of a satisfiable result: group unanimity via check_gu on
// each profile and the requested WSP notion across all deviation pairs.
bool verify_rule_witness(const ReviewGraph& rg, const RuleSearchOptions& options,
                         const RuleSearchResult& result);

// The chain instance: four papers, reviewers {0,1}, {1,2}, {2,3}.
ReviewGraph chain_instance();

struct ChainCertificate {
  RuleSearchResult strict;          // GU + WSP
  RuleSearchResult per_pair;        // GU + per-pair WSP
  RuleSearchResult without_wsp;     // GU only
  RuleSearchResult without_gu;      // WSP only
  bool without_wsp_verified = false;
  bool without_gu_verified = false;
  // Minimal sets of profiles already unsatisfiable under GU + per-pair WSP.
  std::vector<std::vector<std::uint64_t>> minimal_cores;
};

ChainCertificate certify_chain_instance();

std::string serialize(const ChainCertificate& certificate);

struct MisplacementReport {
  int n = 0;
  int n1 = 0;
  double c = 0.0;
  double delta = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double bound = 0.0;
  std::uint64_t violations = 0;
  double violation_rate = 0.0;
  int max_observed = 0;
  double mean_max_displacement = 0.0;
};

// 2 * sqrt(n * c * ln(2n / delta)).
double misplacement_bound(int n, double c, double delta);

// max over papers of |truth position - output position|.
int max_displacement(const Ranking& truth, const AggregateRanking& output);

// Papers [0, n1) form one side and [n1, n) the other. Each trial draws a
// uniform true ranking, sorts both sides by it, interleaves them and records
// the largest displacement. Throws ContractViolation unless 1 <= n1 <= n - 1,
// 0 < delta < 1 and n >= 4c / ln 2.
MisplacementReport misplacement_monte_carlo(int n, int n1, double delta,
                                            std::uint64_t trials,
                                            std::uint64_t seed);

std::string serialize(const MisplacementReport& report);

}  // namespace divrank
