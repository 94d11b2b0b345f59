#include "divrank/verify.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "divrank/error.hpp"
#include "divrank/random.hpp"
#include "json.hpp"

namespace divrank {

const char* property_name(Property property) {
  switch (property) {
    case Property::kGU:
      return "GU";
    case Property::kPU:
      return "PU";
    case Property::kSP:
      return "SP";
    case Property::kWSP:
      return "WSP";
  }
  return "?";
}

std::string serialize(const PropertyReport& report, const Labels& labels) {
  using nlohmann::json;
  auto paper = [&](PaperIndex p) {
    return p >= 0 && static_cast<std::size_t>(p) < labels.papers.size()
               ? json(labels.papers[static_cast<std::size_t>(p)])
               : json(p);
  };
  auto reviewer = [&](ReviewerIndex r) {
    return r >= 0 && static_cast<std::size_t>(r) < labels.reviewers.size()
               ? json(labels.reviewers[static_cast<std::size_t>(r)])
               : json(r);
  };
  auto ranking = [&](const Ranking& rk) {
    json out = json::array();
    for (PaperIndex p : rk) out.push_back(paper(p));
    return out;
  };

  json doc;
  doc["property"] = property_name(report.property);
  doc["verdict"] = report.verdict;
  doc["cases_checked"] = report.cases_checked;
  doc["note"] = report.note;
  if (report.witness) {
    const auto& w = *report.witness;
    json wj;
    wj["description"] = w.description;
    if (w.pair) wj["pair"] = {paper(w.pair->first), paper(w.pair->second)};
    if (w.reviewer) wj["reviewer"] = reviewer(*w.reviewer);
    if (w.paper) wj["paper"] = paper(*w.paper);
    if (w.profile) {
      json pj = json::object();
      for (std::size_t i = 0; i < w.profile->size(); ++i) {
        pj[reviewer(static_cast<ReviewerIndex>(i)).get<std::string>()] =
            ranking((*w.profile)[i]);
      }
      wj["profile"] = std::move(pj);
    }
    if (w.deviation) wj["deviation"] = ranking(*w.deviation);
    if (w.position_before) wj["position_before"] = *w.position_before;
    if (w.position_after) wj["position_after"] = *w.position_after;
    doc["witness"] = std::move(wj);
  } else {
    doc["witness"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::vector<PaperPair> co_reviewed_pairs(const ReviewGraph& rg) {
  const auto n = static_cast<std::size_t>(rg.num_papers());
  std::vector<char> seen(n * n, 0);
  std::vector<PaperPair> pairs;
  for (const auto& set : rg.review_sets()) {
    for (std::size_t a = 0; a < set.size(); ++a) {
      for (std::size_t b = a + 1; b < set.size(); ++b) {
        auto& s = seen[static_cast<std::size_t>(set[a]) * n +
                       static_cast<std::size_t>(set[b])];
        if (!s) {
          s = 1;
          pairs.emplace_back(set[a], set[b]);
        }
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

std::vector<PaperPair> gu_required_pairs(const ReviewGraph& rg,
                                         const Profile& profile) {
  check_profile_alignment(rg, profile);
  const int n = rg.num_papers();
  std::vector<PaperIndex> papers(static_cast<std::size_t>(n));
  std::iota(papers.begin(), papers.end(), 0);
  const ProfileGraph graph(papers, profile);
  const auto scc = strongly_connected_components(graph.successors());

  const auto pairs = co_reviewed_pairs(rg);
  // Reachability rows on demand, one BFS per source paper.
  std::vector<std::vector<char>> reach(static_cast<std::size_t>(n));
  auto reaches = [&](PaperIndex from, PaperIndex to) {
    auto& row = reach[static_cast<std::size_t>(from)];
    if (row.empty()) {
      row.assign(static_cast<std::size_t>(n), 0);
      std::deque<int> queue{from};
      row[static_cast<std::size_t>(from)] = 1;
      while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : graph.successors()[static_cast<std::size_t>(v)]) {
          if (!row[static_cast<std::size_t>(w)]) {
            row[static_cast<std::size_t>(w)] = 1;
            queue.push_back(w);
          }
        }
      }
    }
    return row[static_cast<std::size_t>(to)] != 0;
  };

  std::vector<PaperPair> required;
  for (const auto& [a, b] : pairs) {
    if (scc.component_of[static_cast<std::size_t>(a)] ==
        scc.component_of[static_cast<std::size_t>(b)]) {
      continue;
    }
    if (reaches(a, b)) {
      required.emplace_back(a, b);
    } else if (reaches(b, a)) {
      required.emplace_back(b, a);
    }
  }
  return required;
}

std::vector<PaperPair> pu_required_pairs(const ReviewGraph& rg,
                                         const Profile& profile) {
  check_profile_alignment(rg, profile);
  const int n = rg.num_papers();
  const int m = rg.num_reviewers();
  std::vector<std::vector<int>> position(
      static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(n), -1));
  std::vector<std::vector<ReviewerIndex>> reviewers_of(static_cast<std::size_t>(n));
  for (ReviewerIndex r = 0; r < m; ++r) {
    const auto& ranking = profile[static_cast<std::size_t>(r)];
    for (std::size_t k = 0; k < ranking.size(); ++k) {
      position[static_cast<std::size_t>(r)][static_cast<std::size_t>(ranking[k])] =
          static_cast<int>(k);
      reviewers_of[static_cast<std::size_t>(ranking[k])].push_back(r);
    }
  }

  std::vector<PaperPair> required;
  for (const auto& [a, b] : co_reviewed_pairs(rg)) {
    int a_wins = 0;
    int b_wins = 0;
    for (ReviewerIndex r : reviewers_of[static_cast<std::size_t>(a)]) {
      const int pb = position[static_cast<std::size_t>(r)][static_cast<std::size_t>(b)];
      if (pb < 0) continue;
      const int pa = position[static_cast<std::size_t>(r)][static_cast<std::size_t>(a)];
      (pa < pb ? a_wins : b_wins)++;
    }
    if (b_wins == 0) {
      required.emplace_back(a, b);
    } else if (a_wins == 0) {
      required.emplace_back(b, a);
    }
  }
  return required;
}

namespace {

PropertyReport check_pairs(Property property,
                           const std::vector<PaperPair>& required,
                           const AggregateRanking& output, int num_papers) {
  if (output.size() != num_papers) {
    throw ContractViolation("output ranks " + std::to_string(output.size()) +
                            " papers, expected " + std::to_string(num_papers));
  }
  PropertyReport report;
  report.property = property;
  report.cases_checked = required.size();
  for (const auto& [x, y] : required) {
    if (!output.prefers(x, y)) {
      report.verdict = false;
      Witness w;
      w.description = std::string(property_name(property)) +
                      " requires paper " + std::to_string(x) +
                      " above paper " + std::to_string(y);
      w.pair = PaperPair{x, y};
      w.position_before = output.position_of(x);
      w.position_after = output.position_of(y);
      report.witness = std::move(w);
      return report;
    }
  }
  return report;
}

}  // namespace

PropertyReport check_gu(const ReviewGraph& rg, const Profile& profile,
                        const AggregateRanking& output) {
  return check_pairs(Property::kGU, gu_required_pairs(rg, profile), output,
                     rg.num_papers());
}

PropertyReport check_pu(const ReviewGraph& rg, const Profile& profile,
                        const AggregateRanking& output) {
  return check_pairs(Property::kPU, pu_required_pairs(rg, profile), output,
                     rg.num_papers());
}

ProfileSpace::ProfileSpace(const ReviewGraph& rg) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (const auto& set : rg.review_sets()) {
    std::vector<Ranking> perms;
    Ranking current = set;  // sorted, so first permutation in lex order
    do {
      perms.push_back(current);
    } while (std::next_permutation(current.begin(), current.end()));
    strides_.push_back(size_);
    const auto radix = static_cast<std::uint64_t>(perms.size());
    size_ = size_ > kMax / radix ? kMax : size_ * radix;
    rankings_.push_back(std::move(perms));
  }
}

int ProfileSpace::digit(std::uint64_t index, ReviewerIndex r) const {
  const auto radix = rankings_[static_cast<std::size_t>(r)].size();
  return static_cast<int>((index / strides_[static_cast<std::size_t>(r)]) % radix);
}

Profile ProfileSpace::at(std::uint64_t index) const {
  Profile profile;
  profile.reserve(rankings_.size());
  for (std::size_t r = 0; r < rankings_.size(); ++r) {
    const auto radix = rankings_[r].size();
    profile.push_back(rankings_[r][index % radix]);
    index /= radix;
  }
  return profile;
}

PropertyReport check_sp_exhaustive(const ReviewGraph& rg,
                                   const ConflictGraph& conflicts,
                                   const Mechanism& mechanism,
                                   std::uint64_t profile_budget) {
  if (conflicts.num_reviewers() != rg.num_reviewers() ||
      conflicts.num_papers() != rg.num_papers()) {
    throw ContractViolation("conflict graph and review graph sizes differ");
  }
  const ProfileSpace space(rg);
  if (space.size() > profile_budget) {
    throw BudgetExceeded("exhaustive SP check needs " +
                         std::to_string(space.size()) +
                         " profiles, budget is " + std::to_string(profile_budget) +
                         "; use the randomized check instead");
  }

  PropertyReport report;
  report.property = Property::kSP;
  for (ReviewerIndex i = 0; i < rg.num_reviewers(); ++i) {
    const auto conflicted = conflicts.papers_of(i);
    const auto& options = space.rankings_of(i);
    if (conflicted.empty() || options.size() < 2) continue;
    for (std::uint64_t base = 0; base < space.size(); ++base) {
      if (space.digit(base, i) != 0) continue;
      const Profile base_profile = space.at(base);
      const AggregateRanking base_out = mechanism(base_profile);
      for (std::size_t d = 1; d < options.size(); ++d) {
        Profile deviated = base_profile;
        deviated[static_cast<std::size_t>(i)] = options[d];
        const AggregateRanking out = mechanism(deviated);
        ++report.cases_checked;
        for (PaperIndex j : conflicted) {
          if (out.position_of(j) != base_out.position_of(j)) {
            report.verdict = false;
            Witness w;
            w.description = "reviewer " + std::to_string(i) +
                            " moves conflicted paper " + std::to_string(j) +
                            " by deviating";
            w.reviewer = i;
            w.paper = j;
            w.profile = base_profile;
            w.deviation = options[d];
            w.position_before = base_out.position_of(j);
            w.position_after = out.position_of(j);
            report.witness = std::move(w);
            return report;
          }
        }
      }
    }
  }
  if (report.cases_checked == 0) {
    report.note = "no reviewer has both a conflict and an alternative ranking";
  }
  return report;
}

PropertyReport check_sp_randomized(const ReviewGraph& rg,
                                   const ConflictGraph& conflicts,
                                   const Mechanism& mechanism,
                                   std::uint64_t trials, std::uint64_t seed) {
  if (conflicts.num_reviewers() != rg.num_reviewers() ||
      conflicts.num_papers() != rg.num_papers()) {
    throw ContractViolation("conflict graph and review graph sizes differ");
  }
  PropertyReport report;
  report.property = Property::kSP;
  if (trials == 0) {
    report.note = "0 trials: vacuously true";
    return report;
  }
  std::vector<ReviewerIndex> candidates;
  for (ReviewerIndex i = 0; i < rg.num_reviewers(); ++i) {
    if (!conflicts.papers_of(i).empty()) candidates.push_back(i);
  }
  if (candidates.empty()) {
    report.note = "no reviewer has a conflict: vacuously true";
    return report;
  }

  Rng rng(seed);
  Profile profile(static_cast<std::size_t>(rg.num_reviewers()));
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (ReviewerIndex r = 0; r < rg.num_reviewers(); ++r) {
      auto& ranking = profile[static_cast<std::size_t>(r)];
      ranking = rg.review_set(r);
      rng.shuffle(std::span<PaperIndex>(ranking));
    }
    const ReviewerIndex i = candidates[rng.below(candidates.size())];
    Ranking deviation = rg.review_set(i);
    rng.shuffle(std::span<PaperIndex>(deviation));

    const AggregateRanking before = mechanism(profile);
    Profile deviated = profile;
    deviated[static_cast<std::size_t>(i)] = deviation;
    const AggregateRanking after = mechanism(deviated);
    ++report.cases_checked;
    for (PaperIndex j : conflicts.papers_of(i)) {
      if (before.position_of(j) != after.position_of(j)) {
        report.verdict = false;
        Witness w;
        w.description = "trial " + std::to_string(t) + ": reviewer " +
                        std::to_string(i) + " moves conflicted paper " +
                        std::to_string(j);
        w.reviewer = i;
        w.paper = j;
        w.profile = profile;
        w.deviation = deviation;
        w.position_before = before.position_of(j);
        w.position_after = after.position_of(j);
        report.witness = std::move(w);
        return report;
      }
    }
  }
  report.note = std::to_string(trials) +
                " sampled deviations, no violation (one-sided evidence)";
  return report;
}

ConflictGraph own_side_conflicts(const PartitionResult& partition) {
  const int m = static_cast<int>(partition.c.reviewers.size() +
                                 partition.cbar.reviewers.size());
  const int n = static_cast<int>(partition.c.papers.size() +
                                 partition.cbar.papers.size());
  std::vector<Conflict> edges;
  for (const Side* side : {&partition.c, &partition.cbar}) {
    for (ReviewerIndex r : side->reviewers) {
      for (PaperIndex p : side->papers) edges.push_back({r, p});
    }
  }
  return ConflictGraph(m, n, std::move(edges));
}

ReviewRelationGraph ReviewRelationGraph::build(const ReviewGraph& rg) {
  ReviewRelationGraph h;
  h.adjacency.assign(static_cast<std::size_t>(rg.num_papers()), {});
  for (const auto& [a, b] : co_reviewed_pairs(rg)) {
    h.adjacency[static_cast<std::size_t>(a)].push_back(b);
    h.adjacency[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& adj : h.adjacency) std::sort(adj.begin(), adj.end());
  return h;
}

bool ReviewRelationGraph::adjacent(PaperIndex a, PaperIndex b) const {
  const auto& adj = adjacency[static_cast<std::size_t>(a)];
  return std::binary_search(adj.begin(), adj.end(), b);
}

PaperRelationGraph PaperRelationGraph::build(const ReviewGraph& rg) {
  PaperRelationGraph g;
  const std::set<std::vector<PaperIndex>> distinct(rg.review_sets().begin(),
                                                   rg.review_sets().end());
  g.sets.assign(distinct.begin(), distinct.end());
  for (std::size_t a = 0; a < g.sets.size(); ++a) {
    for (std::size_t b = a + 1; b < g.sets.size(); ++b) {
      std::vector<PaperIndex> common;
      std::set_intersection(g.sets[a].begin(), g.sets[a].end(),
                            g.sets[b].begin(), g.sets[b].end(),
                            std::back_inserter(common));
      if (!common.empty()) {
        g.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return g;
}

bool PaperRelationGraph::is_forest() const {
  std::vector<int> parent(sets.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      v = parent[static_cast<std::size_t>(v)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    }
    return v;
  };
  for (const auto& [a, b] : edges) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra == rb) return false;
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  return true;
}

std::optional<ReviewerIndex> covering_reviewer(
    const ReviewGraph& rg, const std::vector<PaperIndex>& papers) {
  for (ReviewerIndex r = 0; r < rg.num_reviewers(); ++r) {
    const bool covers = std::all_of(papers.begin(), papers.end(),
                                    [&](PaperIndex p) { return rg.reviews(r, p); });
    if (covers) return r;
  }
  return std::nullopt;
}

CycleSearch find_uncovered_cycle(const ReviewGraph& rg, int min_length,
                                 int max_length, std::uint64_t step_budget) {
  const auto h = ReviewRelationGraph::build(rg);
  const int n = rg.num_papers();
  min_length = std::max(min_length, 3);
  CycleSearch result;
  std::uint64_t steps = 0;
  std::vector<PaperIndex> path;
  std::vector<char> on_path(static_cast<std::size_t>(n), 0);

  // Returns true when the search should stop (found or out of budget).
  auto dfs = [&](auto&& self, PaperIndex start) -> bool {
    if (++steps > step_budget) {
      result.exhausted = false;
      return true;
    }
    const PaperIndex last = path.back();
    const int len = static_cast<int>(path.size());
    if (len >= min_length && path[1] < last && h.adjacent(last, start) &&
        !covering_reviewer(rg, path)) {
      result.cycle = path;
      return true;
    }
    if (len == max_length) return false;
    for (PaperIndex next : h.adjacency[static_cast<std::size_t>(last)]) {
      if (next <= start || on_path[static_cast<std::size_t>(next)]) continue;
      path.push_back(next);
      on_path[static_cast<std::size_t>(next)] = 1;
      if (self(self, start)) return true;
      on_path[static_cast<std::size_t>(next)] = 0;
      path.pop_back();
    }
    return false;
  };

  for (PaperIndex start = 0; start < n; ++start) {
    path.assign(1, start);
    std::fill(on_path.begin(), on_path.end(), 0);
    on_path[static_cast<std::size_t>(start)] = 1;
    for (PaperIndex second : h.adjacency[static_cast<std::size_t>(start)]) {
      if (second <= start) continue;
      path.push_back(second);
      on_path[static_cast<std::size_t>(second)] = 1;
      if (dfs(dfs, start)) return result;
      on_path[static_cast<std::size_t>(second)] = 0;
      path.pop_back();
    }
  }
  return result;
}

CyclicUnanimityWitness cyclic_unanimity_witness(
    const ReviewGraph& rg, const std::vector<PaperIndex>& cycle) {
  const std::size_t len = cycle.size();
  if (len < 3) {
    throw ContractViolation("cycle has length " + std::to_string(len) +
                            ", need at least 3");
  }
  if (!is_strict_ranking(cycle, rg.num_papers())) {
    throw ContractViolation("cycle repeats a paper or leaves the paper range");
  }
  const auto h = ReviewRelationGraph::build(rg);
  for (std::size_t k = 0; k < len; ++k) {
    const PaperIndex a = cycle[k];
    const PaperIndex b = cycle[(k + 1) % len];
    if (!h.adjacent(a, b)) {
      throw ContractViolation("papers " + std::to_string(a) + " and " +
                              std::to_string(b) +
                              " are consecutive on the cycle but nobody "
                              "reviews both");
    }
  }
  if (const auto r = covering_reviewer(rg, cycle)) {
    throw ContractViolation("reviewer " + std::to_string(*r) +
                            " reviews every paper on the cycle");
  }

  CyclicUnanimityWitness out;
  for (std::size_t k = 0; k < len; ++k) {
    out.constraint_cycle.emplace_back(cycle[k], cycle[(k + 1) % len]);
  }
  for (ReviewerIndex r = 0; r < rg.num_reviewers(); ++r) {
    const auto& set = rg.review_set(r);
    // Kahn's algorithm over the reviewer's share of the cycle constraints.
    std::vector<std::vector<std::size_t>> succ(set.size());
    std::vector<int> indegree(set.size(), 0);
    auto local = [&](PaperIndex p) -> std::optional<std::size_t> {
      const auto it = std::lower_bound(set.begin(), set.end(), p);
      if (it == set.end() || *it != p) return std::nullopt;
      return static_cast<std::size_t>(it - set.begin());
    };
    for (const auto& [a, b] : out.constraint_cycle) {
      const auto la = local(a);
      const auto lb = local(b);
      if (la && lb) {
        succ[*la].push_back(*lb);
        ++indegree[*lb];
      }
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < set.size(); ++v) {
      if (indegree[v] == 0) ready.push(v);
    }
    Ranking ranking;
    while (!ready.empty()) {
      const std::size_t v = ready.top();
      ready.pop();
      ranking.push_back(set[v]);
      for (std::size_t w : succ[v]) {
        if (--indegree[w] == 0) ready.push(w);
      }
    }
    if (ranking.size() != set.size()) {
      throw ContractViolation("reviewer " + std::to_string(r) +
                              " received cyclic constraints");
    }
    out.profile.push_back(std::move(ranking));
  }
  return out;
}

PuConditionsReport check_pu_conditions(const ReviewGraph& rg) {
  if (rg.num_reviewers() == 0) {
    throw ContractViolation("review graph has no reviewers");
  }
  const auto mu = static_cast<int>(rg.review_set(0).size());
  for (ReviewerIndex r = 0; r < rg.num_reviewers(); ++r) {
    if (static_cast<int>(rg.review_set(r).size()) != mu) {
      throw ContractViolation("review sets have different sizes");
    }
  }
  if (mu < 2) throw ContractViolation("review sets must hold at least 2 papers");

  PuConditionsReport report;
  report.mu = mu;
  report.num_papers = rg.num_papers();

  for (ReviewerIndex a = 0; a < rg.num_reviewers() && report.intersections_ok; ++a) {
    for (ReviewerIndex b = a + 1; b < rg.num_reviewers(); ++b) {
      const auto& sa = rg.review_set(a);
      const auto& sb = rg.review_set(b);
      std::vector<PaperIndex> common;
      std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                            std::back_inserter(common));
      const auto size = static_cast<int>(common.size());
      if (size == 0 || size == 1 || size == mu) continue;
      std::vector<PaperIndex> only_a;
      std::vector<PaperIndex> only_b;
      std::set_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                          std::back_inserter(only_a));
      std::set_difference(sb.begin(), sb.end(), sa.begin(), sa.end(),
                          std::back_inserter(only_b));
      report.intersections_ok = false;
      report.bad_reviewer_pair = {a, b};
      report.induced_cycle = std::vector<PaperIndex>{
          only_a.front(), common[0], only_b.front(), common[1]};
      break;
    }
  }

  const PaperRelationGraph gp = PaperRelationGraph::build(rg);
  report.distinct_sets = static_cast<int>(gp.sets.size());
  report.distinct_sets_bound =
      static_cast<double>(rg.num_papers() - 1) / static_cast<double>(mu - 1);
  report.distinct_sets_ok =
      static_cast<long long>(report.distinct_sets) * (mu - 1) <=
      static_cast<long long>(rg.num_papers()) - 1;
  report.paper_relation_forest = gp.is_forest();

  const auto search = find_uncovered_cycle(rg, mu + 1, mu + 3);
  report.long_cycle_search_exhausted = search.exhausted;
  if (search.cycle) {
    report.long_cycle_free = false;
    report.long_cycle = search.cycle;
  }
  return report;
}

}  // namespace divrank
