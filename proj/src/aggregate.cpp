#include "divrank/aggregate.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>

#include "divrank/error.hpp"

namespace divrank {

ProfileGraph::ProfileGraph(std::span<const PaperIndex> papers,
                           std::span<const Ranking> rankings)
    : papers_(papers.begin(), papers.end()), adj_(papers.size()) {
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    const auto& ranking = rankings[i];
    int prev = -1;
    for (PaperIndex paper : ranking) {
      const int v = local_id(paper);
      if (v < 0) {
        throw ContractViolation("ranking " + std::to_string(i) +
                                " mentions paper " + std::to_string(paper) +
                                " outside the aggregated set");
      }
      if (prev >= 0) adj_[static_cast<std::size_t>(prev)].push_back(v);
      prev = v;
    }
  }
  for (auto& out : adj_) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
}

int ProfileGraph::local_id(PaperIndex paper) const {
  const auto it = std::lower_bound(papers_.begin(), papers_.end(), paper);
  if (it == papers_.end() || *it != paper) return -1;
  return static_cast<int>(it - papers_.begin());
}

std::size_t ProfileGraph::num_edges() const {
  std::size_t total = 0;
  for (const auto& out : adj_) total += out.size();
  return total;
}

SccDecomposition strongly_connected_components(
    const std::vector<std::vector<int>>& successors) {
  const int n = static_cast<int>(successors.size());
  SccDecomposition out;
  out.component_of.assign(static_cast<std::size_t>(n), -1);

  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  // Explicit DFS frames: (vertex, next successor position).
  std::vector<std::pair<int, std::size_t>> frames;
  int counter = 0;

  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    frames.emplace_back(root, 0);
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] =
        counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = 1;

    while (!frames.empty()) {
      auto& [v, next] = frames.back();
      const auto& succ = successors[static_cast<std::size_t>(v)];
      if (next < succ.size()) {
        const int w = succ[next++];
        if (index[static_cast<std::size_t>(w)] < 0) {
          index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] =
              counter++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(v)] =
              std::min(low[static_cast<std::size_t>(v)],
                       index[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      const int finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        const int parent = frames.back().first;
        low[static_cast<std::size_t>(parent)] =
            std::min(low[static_cast<std::size_t>(parent)],
                     low[static_cast<std::size_t>(finished)]);
      }
      if (low[static_cast<std::size_t>(finished)] ==
          index[static_cast<std::size_t>(finished)]) {
        const int id = static_cast<int>(out.members.size());
        std::vector<int> members;
        int w = -1;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          out.component_of[static_cast<std::size_t>(w)] = id;
          members.push_back(w);
        } while (w != finished);
        std::sort(members.begin(), members.end());
        out.members.push_back(std::move(members));
      }
    }
  }
  return out;
}

std::vector<int> condensation_order(
    const std::vector<std::vector<int>>& successors,
    const SccDecomposition& scc) {
  const std::size_t k = scc.members.size();
  std::vector<std::vector<int>> dag(k);
  std::vector<int> indegree(k, 0);
  for (std::size_t v = 0; v < successors.size(); ++v) {
    const int cv = scc.component_of[v];
    for (int w : successors[v]) {
      const int cw = scc.component_of[static_cast<std::size_t>(w)];
      if (cv != cw) dag[static_cast<std::size_t>(cv)].push_back(cw);
    }
  }
  for (auto& out : dag) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (int c : out) ++indegree[static_cast<std::size_t>(c)];
  }

  // Members are sorted, so members.front() is the component's smallest vertex.
  using Entry = std::pair<int, int>;  // (smallest vertex, component)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::size_t c = 0; c < k; ++c) {
    if (indegree[c] == 0) ready.emplace(scc.members[c].front(), static_cast<int>(c));
  }
  std::vector<int> order;
  order.reserve(k);
  while (!ready.empty()) {
    const int c = ready.top().second;
    ready.pop();
    order.push_back(c);
    for (int d : dag[static_cast<std::size_t>(c)]) {
      if (--indegree[static_cast<std::size_t>(d)] == 0) {
        ready.emplace(scc.members[static_cast<std::size_t>(d)].front(), d);
      }
    }
  }
  return order;
}

AggregateStrategy AggregateStrategy::borda() {
  return {"borda", [](const std::vector<PaperIndex>& members,
                      std::span<const Ranking> profile) {
            if (members.size() == 1) return members;
            std::vector<std::int64_t> score(members.size(), 0);
            std::vector<int> restricted;
            for (const auto& ranking : profile) {
              restricted.clear();
              for (PaperIndex p : ranking) {
                const auto it =
                    std::lower_bound(members.begin(), members.end(), p);
                if (it != members.end() && *it == p) {
                  restricted.push_back(static_cast<int>(it - members.begin()));
                }
              }
              const auto s = static_cast<std::int64_t>(restricted.size());
              for (std::size_t rank = 0; rank < restricted.size(); ++rank) {
                score[static_cast<std::size_t>(restricted[rank])] +=
                    s - static_cast<std::int64_t>(rank + 1);
              }
            }
            std::vector<std::size_t> idx(members.size());
            std::iota(idx.begin(), idx.end(), 0);
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) {
                               return score[a] > score[b];
                             });
            std::vector<PaperIndex> out;
            out.reserve(members.size());
            for (std::size_t i : idx) out.push_back(members[i]);
            return out;
          }};
}

Ranking contract_and_sort(std::span<const PaperIndex> side_papers,
                          std::span<const Ranking> rankings,
                          const AggregateStrategy& strategy) {
  const ProfileGraph graph(side_papers, rankings);
  const auto& papers = graph.papers();

  std::vector<char> ranked(papers.size(), 0);
  for (const auto& ranking : rankings) {
    for (PaperIndex p : ranking) {
      ranked[static_cast<std::size_t>(graph.local_id(p))] = 1;
    }
  }

  const auto scc = strongly_connected_components(graph.successors());
  const auto order = condensation_order(graph.successors(), scc);

  Ranking out;
  out.reserve(papers.size());
  std::vector<PaperIndex> members;
  for (int c : order) {
    const auto& local = scc.members[static_cast<std::size_t>(c)];
    if (local.size() == 1 && !ranked[static_cast<std::size_t>(local.front())]) {
      continue;  // unreviewed paper, appended below
    }
    members.clear();
    for (int v : local) members.push_back(papers[static_cast<std::size_t>(v)]);
    auto ordered = strategy.order(members, rankings);
    auto check = ordered;
    std::sort(check.begin(), check.end());
    if (check != members) {
      throw ContractViolation("aggregation strategy '" + strategy.name +
                              "' did not return a permutation of its SCC");
    }
    out.insert(out.end(), ordered.begin(), ordered.end());
  }
  for (std::size_t v = 0; v < papers.size(); ++v) {
    if (!ranked[v]) out.push_back(papers[v]);
  }
  return out;
}

std::vector<int> larger_side_slots(int n, int n1) {
  std::vector<int> slots;
  slots.reserve(static_cast<std::size_t>(std::max(n1, 0)));
  for (std::int64_t k = 1; k <= n1; ++k) {
    slots.push_back(static_cast<int>(k * n / n1));
  }
  return slots;
}

std::vector<int> smaller_side_slots(int n, int n2) {
  std::vector<int> slots;
  slots.reserve(static_cast<std::size_t>(std::max(n2, 0)));
  for (std::int64_t k = 1; k <= n2; ++k) {
    // ceil(k*n/n2) - 1 == floor((k*n - 1)/n2) for k*n >= 1
    slots.push_back(static_cast<int>((k * n - 1) / n2));
  }
  return slots;
}

AggregateRanking interleave(const Ranking& ranking_c, const Ranking& ranking_cbar,
                            int n) {
  const Ranking& larger =
      ranking_c.size() >= ranking_cbar.size() ? ranking_c : ranking_cbar;
  const Ranking& smaller =
      ranking_c.size() >= ranking_cbar.size() ? ranking_cbar : ranking_c;
  if (static_cast<int>(larger.size() + smaller.size()) != n) {
    throw ContractViolation("interleave: side sizes " +
                            std::to_string(ranking_c.size()) + " + " +
                            std::to_string(ranking_cbar.size()) +
                            " do not add up to n = " + std::to_string(n));
  }
  std::vector<PaperIndex> order(static_cast<std::size_t>(n), -1);
  const auto big = larger_side_slots(n, static_cast<int>(larger.size()));
  const auto small = smaller_side_slots(n, static_cast<int>(smaller.size()));
  for (std::size_t k = 0; k < big.size(); ++k) {
    order[static_cast<std::size_t>(big[k] - 1)] = larger[k];
  }
  for (std::size_t k = 0; k < small.size(); ++k) {
    auto& slot = order[static_cast<std::size_t>(small[k] - 1)];
    if (slot != -1) throw ContractViolation("interleave: slot collision");
    slot = smaller[k];
  }
  return AggregateRanking(std::move(order));
}

AggregateRanking divide_and_rank_aggregate(const Profile& profile,
                                           const PartitionResult& partition,
                                           const AggregateStrategy& strategy) {
  const int m = static_cast<int>(partition.c.reviewers.size() +
                                 partition.cbar.reviewers.size());
  const int n = static_cast<int>(partition.c.papers.size() +
                                 partition.cbar.papers.size());
  if (static_cast<int>(profile.size()) != m) {
    throw ContractViolation("profile has " + std::to_string(profile.size()) +
                            " rankings for " + std::to_string(m) + " reviewers");
  }
  // side_of[p]: 0 for C, 1 for Cbar
  std::vector<int> side_of(static_cast<std::size_t>(n), -1);
  for (PaperIndex p : partition.c.papers) side_of.at(static_cast<std::size_t>(p)) = 0;
  for (PaperIndex p : partition.cbar.papers) {
    side_of.at(static_cast<std::size_t>(p)) = 1;
  }
  std::vector<int> reviewer_side(static_cast<std::size_t>(m), -1);
  for (ReviewerIndex r : partition.c.reviewers) {
    reviewer_side.at(static_cast<std::size_t>(r)) = 0;
  }
  for (ReviewerIndex r : partition.cbar.reviewers) {
    reviewer_side.at(static_cast<std::size_t>(r)) = 1;
  }

  std::vector<Ranking> on_c;
  std::vector<Ranking> on_cbar;
  for (ReviewerIndex r = 0; r < m; ++r) {
    const auto& ranking = profile[static_cast<std::size_t>(r)];
    if (!is_strict_ranking(ranking, n)) {
      throw ContractViolation("ranking of reviewer " + std::to_string(r) +
                              " is not a strict ranking of papers");
    }
    Ranking c_part;
    Ranking cbar_part;
    for (PaperIndex p : ranking) {
      if (side_of[static_cast<std::size_t>(p)] ==
          reviewer_side[static_cast<std::size_t>(r)]) {
        throw ContractViolation("reviewer " + std::to_string(r) +
                                " ranks paper " + std::to_string(p) +
                                " from their own side of the partition");
      }
      (side_of[static_cast<std::size_t>(p)] == 0 ? c_part : cbar_part)
          .push_back(p);
    }
    if (!c_part.empty()) on_c.push_back(std::move(c_part));
    if (!cbar_part.empty()) on_cbar.push_back(std::move(cbar_part));
  }

  const Ranking ranking_c = contract_and_sort(partition.c.papers, on_c, strategy);
  const Ranking ranking_cbar =
      contract_and_sort(partition.cbar.papers, on_cbar, strategy);
  return interleave(ranking_c, ranking_cbar, n);
}

Mechanism divide_and_rank_mechanism(PartitionResult partition,
                                    AggregateStrategy strategy) {
  return [partition = std::move(partition),
          strategy = std::move(strategy)](const Profile& profile) {
    return divide_and_rank_aggregate(profile, partition, strategy);
  };
}

AggregateRanking borda_aggregate(const Profile& profile, int num_papers) {
  std::vector<std::int64_t> score(static_cast<std::size_t>(num_papers), 0);
  for (const auto& ranking : profile) {
    const auto s = static_cast<std::int64_t>(ranking.size());
    for (std::size_t rank = 0; rank < ranking.size(); ++rank) {
      score.at(static_cast<std::size_t>(ranking[rank])) +=
          s - static_cast<std::int64_t>(rank + 1);
    }
  }
  std::vector<PaperIndex> order(static_cast<std::size_t>(num_papers));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](PaperIndex a, PaperIndex b) {
    return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)];
  });
  return AggregateRanking(std::move(order));
}

}  // namespace divrank
