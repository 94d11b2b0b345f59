#include "divrank/impossibility.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "divrank/aggregate.hpp"
#include "divrank/error.hpp"
#include "divrank/random.hpp"
#include "divrank/verify.hpp"
#include "json.hpp"

namespace divrank {
namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kSaturated / a) return kSaturated;
  return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t out = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    out = saturating_mul(out, base);
    if (out == kSaturated) break;
  }
  return out;
}

std::vector<Ranking> all_permutations(int n) {
  std::vector<Ranking> out;
  Ranking current(static_cast<std::size_t>(n));
  std::iota(current.begin(), current.end(), 0);
  do {
    out.push_back(current);
  } while (std::next_permutation(current.begin(), current.end()));
  return out;
}

std::vector<std::vector<int>> position_table(const std::vector<Ranking>& rankings,
                                             int n) {
  std::vector<std::vector<int>> pos(rankings.size(),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (std::size_t r = 0; r < rankings.size(); ++r) {
    for (std::size_t k = 0; k < rankings[r].size(); ++k) {
      pos[r][static_cast<std::size_t>(rankings[r][k])] = static_cast<int>(k) + 1;
    }
  }
  return pos;
}

int ranking_index(const std::vector<Ranking>& rankings, const Ranking& r) {
  const auto it = std::lower_bound(rankings.begin(), rankings.end(), r);
  return static_cast<int>(it - rankings.begin());
}

}  // namespace

RuleTable::RuleTable(int num_papers, int num_reviewers)
    : n_(num_papers), m_(num_reviewers) {
  if (n_ < 1 || n_ > 8 || m_ < 1) {
    throw ContractViolation("rule tables need 1 <= n <= 8 and m >= 1");
  }
  rankings_ = all_permutations(n_);
  positions_ = position_table(rankings_, n_);
  num_profiles_ = saturating_pow(rankings_.size(), static_cast<std::uint64_t>(m_));
  if (num_profiles_ > 100'000'000) {
    throw BudgetExceeded("rule table would hold " + std::to_string(num_profiles_) +
                         " profiles");
  }
  output_.assign(static_cast<std::size_t>(num_profiles_), 0);
}

RuleTable RuleTable::constant(int num_papers, int num_reviewers, int output) {
  RuleTable table(num_papers, num_reviewers);
  std::fill(table.output_.begin(), table.output_.end(), output);
  return table;
}

RuleTable RuleTable::from_mechanism(
    int num_papers, int num_reviewers,
    const std::function<AggregateRanking(const Profile&)>& mechanism) {
  RuleTable table(num_papers, num_reviewers);
  for (std::uint64_t p = 0; p < table.num_profiles_; ++p) {
    const AggregateRanking out = mechanism(table.profile(p));
    table.set_output(p, ranking_index(table.rankings_, out.order()));
  }
  return table;
}

Profile RuleTable::profile(std::uint64_t index) const {
  Profile out;
  const auto radix = static_cast<std::uint64_t>(rankings_.size());
  for (int r = 0; r < m_; ++r) {
    out.push_back(rankings_[static_cast<std::size_t>(index % radix)]);
    index /= radix;
  }
  return out;
}

int RuleTable::position(std::uint64_t profile, PaperIndex paper) const {
  return positions_[static_cast<std::size_t>(output_index(profile))]
                   [static_cast<std::size_t>(paper)];
}

int InfluenceGraph::degree(ReviewerIndex i) const {
  const auto& row = edge[static_cast<std::size_t>(i)];
  return static_cast<int>(std::count(row.begin(), row.end(), 1));
}

bool InfluenceGraph::is_wsp() const {
  for (ReviewerIndex i = 0; i < num_reviewers; ++i) {
    if (degree(i) >= num_papers) return false;
  }
  return true;
}

InfluenceGraph influence_graph(const RuleTable& rule, std::uint64_t budget) {
  const auto radix = static_cast<std::uint64_t>(rule.rankings().size());
  if (saturating_mul(rule.num_profiles(), radix) > budget) {
    throw BudgetExceeded("influence graph needs " +
                         std::to_string(rule.num_profiles()) + " profiles x " +
                         std::to_string(radix) + " deviations, budget is " +
                         std::to_string(budget));
  }
  InfluenceGraph g;
  g.num_reviewers = rule.num_reviewers();
  g.num_papers = rule.num_papers();
  g.edge.assign(static_cast<std::size_t>(g.num_reviewers),
                std::vector<char>(static_cast<std::size_t>(g.num_papers), 0));
  std::uint64_t stride = 1;
  for (ReviewerIndex i = 0; i < g.num_reviewers; ++i, stride *= radix) {
    auto& row = g.edge[static_cast<std::size_t>(i)];
    for (std::uint64_t base = 0; base < rule.num_profiles(); ++base) {
      if ((base / stride) % radix != 0) continue;
      for (std::uint64_t d = 1; d < radix; ++d) {
        const std::uint64_t other = base + d * stride;
        if (rule.output_index(other) == rule.output_index(base)) continue;
        for (PaperIndex j = 0; j < g.num_papers; ++j) {
          if (rule.position(base, j) != rule.position(other, j)) {
            row[static_cast<std::size_t>(j)] = 1;
          }
        }
      }
    }
  }
  return g;
}

TotalRankingCensus total_ranking_census(int num_papers, int num_reviewers,
                                        std::uint64_t rule_budget) {
  TotalRankingCensus census;
  census.num_papers = num_papers;
  census.num_reviewers = num_reviewers;
  if (num_papers < 1 || num_reviewers < 1) {
    throw ContractViolation("census needs n >= 1 and m >= 1");
  }
  RuleTable table(num_papers, num_reviewers);
  const auto radix = static_cast<std::uint64_t>(table.rankings().size());
  census.num_profiles = table.num_profiles();
  census.num_rules = saturating_pow(radix, census.num_profiles);
  if (census.num_rules > rule_budget) {
    throw BudgetExceeded("census over n=" + std::to_string(num_papers) +
                         ", m=" + std::to_string(num_reviewers) + " needs " +
                         (census.num_rules == kSaturated
                              ? std::string("more than 2^64")
                              : std::to_string(census.num_rules)) +
                         " rule tables, budget is " + std::to_string(rule_budget));
  }
  if (num_papers < 2) {
    census.in_scope = false;
    census.note = "n < 2: every rule is constant, PU is vacuous and WSP holds";
  }

  // allowed[p][r]: output r respects every unanimous pair of profile p.
  const std::vector<std::vector<PaperIndex>> everything(
      static_cast<std::size_t>(num_reviewers),
      [&] {
        std::vector<PaperIndex> all(static_cast<std::size_t>(num_papers));
        std::iota(all.begin(), all.end(), 0);
        return all;
      }());
  const ReviewGraph full(num_papers, everything);
  std::vector<std::vector<char>> allowed(static_cast<std::size_t>(census.num_profiles));
  for (std::uint64_t p = 0; p < census.num_profiles; ++p) {
    const Profile profile = table.profile(p);
    auto& row = allowed[static_cast<std::size_t>(p)];
    row.resize(static_cast<std::size_t>(radix));
    for (std::uint64_t r = 0; r < radix; ++r) {
      row[static_cast<std::size_t>(r)] =
          check_pu(full, profile, AggregateRanking(table.rankings()[static_cast<std::size_t>(r)]))
              .verdict;
    }
  }

  // Odometer over all rule tables, profile 0 least significant.
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(census.num_profiles), 0);
  for (std::uint64_t rule = 0; rule < census.num_rules; ++rule) {
    bool pu = true;
    for (std::uint64_t p = 0; p < census.num_profiles && pu; ++p) {
      pu = allowed[static_cast<std::size_t>(p)]
                  [static_cast<std::size_t>(digits[static_cast<std::size_t>(p)])] != 0;
    }
    if (pu) {
      ++census.num_pu_rules;
      for (std::uint64_t p = 0; p < census.num_profiles; ++p) {
        table.set_output(p, static_cast<int>(digits[static_cast<std::size_t>(p)]));
      }
      if (influence_graph(table).is_wsp()) ++census.num_pu_and_wsp_rules;
    }
    for (auto& d : digits) {
      if (++d < radix) break;
      d = 0;
    }
  }
  return census;
}

std::string serialize(const TotalRankingCensus& census) {
  nlohmann::json doc;
  doc["n"] = census.num_papers;
  doc["m"] = census.num_reviewers;
  doc["in_scope"] = census.in_scope;
  doc["num_profiles"] = census.num_profiles;
  doc["num_rules"] = census.num_rules;
  doc["num_PU_rules"] = census.num_pu_rules;
  doc["num_PU_and_WSP_rules"] = census.num_pu_and_wsp_rules;
  doc["note"] = census.note;
  return doc.dump(2) + "\n";
}

namespace {

struct DeviationPair {
  std::size_t a;  // positions in the searched profile list, a < b
  std::size_t b;
  ReviewerIndex reviewer;
};

struct SearchInstance {
  std::vector<std::uint64_t> profiles;
  std::vector<Profile> profile_values;
  std::vector<Ranking> rankings;
  std::vector<std::vector<int>> positions;
  std::vector<DeviationPair> pairs;
  std::vector<std::vector<std::size_t>> pairs_ending_at;  // by b
};

SearchInstance make_instance(const ReviewGraph& rg, const RuleSearchOptions& options) {
  const ProfileSpace space(rg);
  if (space.size() > 100'000) {
    throw BudgetExceeded("rule search over " + std::to_string(space.size()) +
                         " profiles is out of budget");
  }
  if (rg.num_papers() > 8) {
    throw BudgetExceeded("rule search supports at most 8 papers");
  }
  SearchInstance inst;
  if (options.profiles.empty()) {
    inst.profiles.resize(static_cast<std::size_t>(space.size()));
    std::iota(inst.profiles.begin(), inst.profiles.end(), std::uint64_t{0});
  } else {
    inst.profiles = options.profiles;
    std::sort(inst.profiles.begin(), inst.profiles.end());
    inst.profiles.erase(std::unique(inst.profiles.begin(), inst.profiles.end()),
                        inst.profiles.end());
    if (inst.profiles.back() >= space.size()) {
      throw ContractViolation("profile index out of range");
    }
  }
  for (auto p : inst.profiles) inst.profile_values.push_back(space.at(p));
  inst.rankings = all_permutations(rg.num_papers());
  inst.positions = position_table(inst.rankings, rg.num_papers());
  inst.pairs_ending_at.resize(inst.profiles.size());
  for (std::size_t b = 0; b < inst.profiles.size(); ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      int differing = -1;
      int count = 0;
      for (ReviewerIndex r = 0; r < rg.num_reviewers(); ++r) {
        if (space.digit(inst.profiles[a], r) != space.digit(inst.profiles[b], r)) {
          differing = r;
          ++count;
        }
      }
      if (count == 1) {
        inst.pairs_ending_at[b].push_back(inst.pairs.size());
        inst.pairs.push_back({a, b, differing});
      }
    }
  }
  return inst;
}

class Backtracker {
 public:
  Backtracker(const SearchInstance& inst, std::vector<std::vector<int>> domains,
              WspMode mode, std::vector<PaperIndex> immune, RuleSearchStats& stats,
              std::uint64_t node_budget)
      : inst_(inst),
        domains_(std::move(domains)),
        mode_(mode),
        immune_(std::move(immune)),
        stats_(stats),
        node_budget_(node_budget),
        chosen_(inst.profiles.size(), -1) {}

  bool run() { return extend(0); }
  const std::vector<int>& chosen() const { return chosen_; }

 private:
  bool compatible(const DeviationPair& pair, int out_a, int out_b) const {
    const auto& pa = inst_.positions[static_cast<std::size_t>(out_a)];
    const auto& pb = inst_.positions[static_cast<std::size_t>(out_b)];
    switch (mode_) {
      case WspMode::kNone:
        return true;
      case WspMode::kStrict: {
        const auto j = static_cast<std::size_t>(
            immune_[static_cast<std::size_t>(pair.reviewer)]);
        return pa[j] == pb[j];
      }
      case WspMode::kPerPair:
        for (std::size_t j = 0; j < pa.size(); ++j) {
          if (pa[j] == pb[j]) return true;
        }
        return false;
    }
    return true;
  }

  bool extend(std::size_t k) {
    if (k == chosen_.size()) return true;
    for (int value : domains_[k]) {
      if (++stats_.nodes > node_budget_) {
        throw BudgetExceeded("rule search exceeded its node budget of " +
                             std::to_string(node_budget_));
      }
      bool ok = true;
      for (std::size_t idx : inst_.pairs_ending_at[k]) {
        const auto& pair = inst_.pairs[idx];
        if (!compatible(pair, chosen_[pair.a], value)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen_[k] = value;
      if (extend(k + 1)) return true;
    }
    chosen_[k] = -1;
    ++stats_.backtracks;
    return false;
  }

  const SearchInstance& inst_;
  std::vector<std::vector<int>> domains_;
  WspMode mode_;
  std::vector<PaperIndex> immune_;
  RuleSearchStats& stats_;
  std::uint64_t node_budget_;
  std::vector<int> chosen_;
};

std::vector<std::vector<int>> make_domains(const ReviewGraph& rg,
                                           const SearchInstance& inst,
                                           bool group_unanimity) {
  std::vector<PaperIndex> all(static_cast<std::size_t>(rg.num_papers()));
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<int>> domains;
  for (const Profile& profile : inst.profile_values) {
    std::vector<int> domain;
    if (!group_unanimity) {
      domain.resize(inst.rankings.size());
      std::iota(domain.begin(), domain.end(), 0);
    } else {
      const auto required = gu_required_pairs(rg, profile);
      const int preferred = ranking_index(inst.rankings, contract_and_sort(all, profile));
      for (std::size_t r = 0; r < inst.rankings.size(); ++r) {
        const auto& pos = inst.positions[r];
        const bool ok = std::all_of(required.begin(), required.end(), [&](const auto& pr) {
          return pos[static_cast<std::size_t>(pr.first)] <
                 pos[static_cast<std::size_t>(pr.second)];
        });
        if (ok) domain.push_back(static_cast<int>(r));
      }
      const auto it = std::find(domain.begin(), domain.end(), preferred);
      if (it != domain.end()) std::rotate(domain.begin(), it, it + 1);
    }
    domains.push_back(std::move(domain));
  }
  return domains;
}

}  // namespace

RuleSearchResult search_rules(const ReviewGraph& rg, const RuleSearchOptions& options,
                              std::uint64_t node_budget) {
  const SearchInstance inst = make_instance(rg, options);
  const auto domains = make_domains(rg, inst, options.group_unanimity);

  RuleSearchResult result;
  result.profiles = inst.profiles;
  auto finish = [&](const Backtracker& bt) {
    result.satisfiable = true;
    for (int out : bt.chosen()) {
      result.outputs.emplace_back(inst.rankings[static_cast<std::size_t>(out)]);
    }
  };

  if (options.wsp != WspMode::kStrict) {
    Backtracker bt(inst, domains, options.wsp, {}, result.stats, node_budget);
    if (bt.run()) finish(bt);
    return result;
  }

  // Strict WSP: fix an immune paper per reviewer, then search.
  const int m = rg.num_reviewers();
  const int n = rg.num_papers();
  std::vector<PaperIndex> immune(static_cast<std::size_t>(m), 0);
  for (;;) {
    ++result.stats.immune_choices;
    Backtracker bt(inst, domains, WspMode::kStrict, immune, result.stats, node_budget);
    if (bt.run()) {
      finish(bt);
      result.immune_papers = immune;
      return result;
    }
    std::size_t r = 0;
    for (; r < immune.size(); ++r) {
      if (++immune[r] < n) break;
      immune[r] = 0;
    }
    if (r == immune.size()) break;
  }
  return result;
}

bool verify_rule_witness(const ReviewGraph& rg, const RuleSearchOptions& options,
                         const RuleSearchResult& result) {
  if (!result.satisfiable || result.outputs.size() != result.profiles.size()) {
    return false;
  }
  const ProfileSpace space(rg);
  const auto count = result.profiles.size();
  if (options.group_unanimity) {
    for (std::size_t k = 0; k < count; ++k) {
      if (!check_gu(rg, space.at(result.profiles[k]), result.outputs[k]).verdict) {
        return false;
      }
    }
  }
  if (options.wsp == WspMode::kNone) return true;

  // moved[i][j]: some deviation of reviewer i inside the list moves paper j.
  const int m = rg.num_reviewers();
  const int n = rg.num_papers();
  std::vector<std::vector<char>> moved(static_cast<std::size_t>(m),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      int differing = -1;
      int diffs = 0;
      for (ReviewerIndex r = 0; r < m; ++r) {
        if (space.digit(result.profiles[a], r) != space.digit(result.profiles[b], r)) {
          differing = r;
          ++diffs;
        }
      }
      if (diffs != 1) continue;
      bool some_fixed = false;
      for (PaperIndex j = 0; j < n; ++j) {
        if (result.outputs[a].position_of(j) == result.outputs[b].position_of(j)) {
          some_fixed = true;
        } else {
          moved[static_cast<std::size_t>(differing)][static_cast<std::size_t>(j)] = 1;
        }
      }
      if (options.wsp == WspMode::kPerPair && !some_fixed) return false;
    }
  }
  if (options.wsp == WspMode::kStrict) {
    for (const auto& row : moved) {
      if (std::all_of(row.begin(), row.end(), [](char c) { return c != 0; })) {
        return false;
      }
    }
  }
  return true;
}

ReviewGraph chain_instance() { return ReviewGraph(4, {{0, 1}, {1, 2}, {2, 3}}); }

ChainCertificate certify_chain_instance() {
  const ReviewGraph rg = chain_instance();
  ChainCertificate cert;
  cert.strict = search_rules(rg, {true, WspMode::kStrict, {}});
  cert.per_pair = search_rules(rg, {true, WspMode::kPerPair, {}});

  const RuleSearchOptions gu_only{true, WspMode::kNone, {}};
  cert.without_wsp = search_rules(rg, gu_only);
  cert.without_wsp_verified = verify_rule_witness(rg, gu_only, cert.without_wsp);

  const RuleSearchOptions wsp_only{false, WspMode::kStrict, {}};
  cert.without_gu = search_rules(rg, wsp_only);
  cert.without_gu_verified = verify_rule_witness(rg, wsp_only, cert.without_gu);

  // Minimal unsatisfiable profile subsets, by increasing size.
  const std::uint64_t total = ProfileSpace(rg).size();
  std::vector<std::uint64_t> masks;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << total); ++mask) {
    masks.push_back(mask);
  }
  std::stable_sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  std::vector<std::uint64_t> core_masks;
  for (std::uint64_t mask : masks) {
    const bool has_core = std::any_of(core_masks.begin(), core_masks.end(),
                                      [&](std::uint64_t c) { return (mask & c) == c; });
    if (has_core) continue;
    RuleSearchOptions opts{true, WspMode::kPerPair, {}};
    for (std::uint64_t p = 0; p < total; ++p) {
      if (mask >> p & 1) opts.profiles.push_back(p);
    }
    if (!search_rules(rg, opts).satisfiable) {
      core_masks.push_back(mask);
      cert.minimal_cores.push_back(opts.profiles);
    }
  }
  return cert;
}

namespace {

nlohmann::json search_json(const RuleSearchResult& r, const ProfileSpace& space) {
  nlohmann::json out;
  out["satisfiable"] = r.satisfiable;
  out["nodes"] = r.stats.nodes;
  out["backtracks"] = r.stats.backtracks;
  out["immune_choices"] = r.stats.immune_choices;
  if (r.satisfiable) {
    nlohmann::json rule = nlohmann::json::array();
    for (std::size_t k = 0; k < r.profiles.size(); ++k) {
      rule.push_back({{"profile_index", r.profiles[k]},
                      {"profile", space.at(r.profiles[k])},
                      {"output", r.outputs[k].order()}});
    }
    out["rule"] = std::move(rule);
    if (!r.immune_papers.empty()) out["immune_papers"] = r.immune_papers;
  }
  return out;
}

}  // namespace

std::string serialize(const ChainCertificate& cert) {
  const ReviewGraph rg = chain_instance();
  const ProfileSpace space(rg);
  nlohmann::json doc;
  doc["instance"] = rg.review_sets();
  doc["gu_and_wsp"] = search_json(cert.strict, space);
  doc["gu_and_per_pair_wsp"] = search_json(cert.per_pair, space);
  doc["gu_only"] = search_json(cert.without_wsp, space);
  doc["gu_only"]["witness_verified"] = cert.without_wsp_verified;
  doc["wsp_only"] = search_json(cert.without_gu, space);
  doc["wsp_only"]["witness_verified"] = cert.without_gu_verified;
  nlohmann::json cores = nlohmann::json::array();
  for (const auto& core : cert.minimal_cores) {
    nlohmann::json c;
    c["profile_indices"] = core;
    nlohmann::json profiles = nlohmann::json::array();
    for (auto p : core) profiles.push_back(space.at(p));
    c["profiles"] = std::move(profiles);
    cores.push_back(std::move(c));
  }
  doc["minimal_unsat_cores"] = std::move(cores);
  doc["unsat"] = !cert.strict.satisfiable;
  return doc.dump(2) + "\n";
}

double misplacement_bound(int n, double c, double delta) {
  const double nd = static_cast<double>(n);
  return 2.0 * std::sqrt(nd * c * std::log(2.0 * nd / delta));
}

int max_displacement(const Ranking& truth, const AggregateRanking& output) {
  int worst = 0;
  for (std::size_t k = 0; k < truth.size(); ++k) {
    const int d = std::abs(static_cast<int>(k) + 1 - output.position_of(truth[k]));
    worst = std::max(worst, d);
  }
  return worst;
}

MisplacementReport misplacement_monte_carlo(int n, int n1, double delta,
                                            std::uint64_t trials,
                                            std::uint64_t seed) {
  if (n1 < 1 || n1 > n - 1) {
    throw ContractViolation("need 1 <= n1 <= n - 1, got n=" + std::to_string(n) +
                            ", n1=" + std::to_string(n1));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ContractViolation("delta must lie in (0, 1)");
  }
  MisplacementReport report;
  report.n = n;
  report.n1 = n1;
  report.c = std::max(static_cast<double>(n) / n1, static_cast<double>(n) / (n - n1));
  if (static_cast<double>(n) < 4.0 * report.c / std::log(2.0)) {
    throw ContractViolation("n = " + std::to_string(n) +
                            " is below 4c / ln 2 for c = " + std::to_string(report.c));
  }
  report.delta = delta;
  report.trials = trials;
  report.seed = seed;
  report.bound = misplacement_bound(n, report.c, delta);

  Rng rng(seed);
  Ranking truth(static_cast<std::size_t>(n));
  std::vector<int> truth_pos(static_cast<std::size_t>(n));
  Ranking side_c;
  Ranking side_cbar;
  double total = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::iota(truth.begin(), truth.end(), 0);
    rng.shuffle(std::span<PaperIndex>(truth));
    side_c.clear();
    side_cbar.clear();
    // Walking the true ranking yields each side already sorted by it.
    for (PaperIndex p : truth) (p < n1 ? side_c : side_cbar).push_back(p);
    const int d = max_displacement(truth, interleave(side_c, side_cbar, n));
    report.max_observed = std::max(report.max_observed, d);
    if (static_cast<double>(d) > report.bound) ++report.violations;
    total += d;
  }
  if (trials > 0) {
    report.violation_rate = static_cast<double>(report.violations) /
                            static_cast<double>(trials);
    report.mean_max_displacement = total / static_cast<double>(trials);
  }
  return report;
}

std::string serialize(const MisplacementReport& r) {
  nlohmann::json doc;
  doc["n"] = r.n;
  doc["n1"] = r.n1;
  doc["c"] = r.c;
  doc["delta"] = r.delta;
  doc["trials"] = r.trials;
  doc["seed"] = r.seed;
  doc["bound"] = r.bound;
  doc["violations"] = r.violations;
  doc["violation_rate"] = r.violation_rate;
  doc["max_observed"] = r.max_observed;
  doc["mean_max_displacement"] = r.mean_max_displacement;
  return doc.dump(2) + "\n";
}

}  // namespace divrank
