#include "divrank/components.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "divrank/error.hpp"

namespace divrank {

int ComponentStats::total_reviewers() const {
  int total = 0;
  for (const auto& s : sizes) total += s.reviewers;
  return total;
}

int ComponentStats::total_papers() const {
  int total = 0;
  for (const auto& s : sizes) total += s.papers;
  return total;
}

ComponentSize ComponentStats::largest(std::size_t rank) const {
  return rank < sizes.size() ? sizes[rank] : ComponentSize{};
}

ComponentStats Components::stats() const {
  ComponentStats stats{sizes};
  std::sort(stats.sizes.begin(), stats.sizes.end(),
            [](const ComponentSize& a, const ComponentSize& b) {
              if (a.papers != b.papers) return a.papers > b.papers;
              return a.reviewers > b.reviewers;
            });
  return stats;
}

Components connected_components(const ConflictGraph& graph,
                                std::span<const char> reviewer_active) {
  const int m = graph.num_reviewers();
  const int n = graph.num_papers();
  if (!reviewer_active.empty() &&
      static_cast<int>(reviewer_active.size()) != m) {
    throw ContractViolation("reviewer mask size does not match the graph");
  }
  auto active = [&](ReviewerIndex r) {
    return reviewer_active.empty() ||
           reviewer_active[static_cast<std::size_t>(r)] != 0;
  };

  Components out;
  out.reviewer_component.assign(static_cast<std::size_t>(m), -1);
  out.paper_component.assign(static_cast<std::size_t>(n), -1);

  // Queue entries: reviewers as r, papers as m + p.
  std::deque<int> queue;
  auto run_bfs = [&](int seed) {
    const int id = out.count();
    ComponentSize size;
    queue.push_back(seed);
    if (seed < m) {
      out.reviewer_component[static_cast<std::size_t>(seed)] = id;
    } else {
      out.paper_component[static_cast<std::size_t>(seed - m)] = id;
    }
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      if (v < m) {
        ++size.reviewers;
        for (PaperIndex p : graph.papers_of(v)) {
          auto& label = out.paper_component[static_cast<std::size_t>(p)];
          if (label < 0) {
            label = id;
            queue.push_back(m + p);
          }
        }
      } else {
        ++size.papers;
        for (ReviewerIndex r : graph.reviewers_of(v - m)) {
          auto& label = out.reviewer_component[static_cast<std::size_t>(r)];
          if (label < 0 && active(r)) {
            label = id;
            queue.push_back(r);
          }
        }
      }
    }
    out.sizes.push_back(size);
  };

  for (ReviewerIndex r = 0; r < m; ++r) {
    if (active(r) && out.reviewer_component[static_cast<std::size_t>(r)] < 0) {
      run_bfs(r);
    }
  }
  for (PaperIndex p = 0; p < n; ++p) {
    if (out.paper_component[static_cast<std::size_t>(p)] < 0) run_bfs(m + p);
  }
  return out;
}

AuthorshipSummary summarize(const ConflictGraph& graph) {
  AuthorshipSummary summary;
  summary.num_papers = graph.num_papers();
  summary.num_authors = graph.num_reviewers();
  summary.num_conflicts = static_cast<int>(graph.conflicts().size());
  for (ReviewerIndex r = 0; r < graph.num_reviewers(); ++r) {
    summary.max_papers_per_author =
        std::max(summary.max_papers_per_author,
                 static_cast<int>(graph.papers_of(r).size()));
  }
  summary.avg_papers_per_author =
      summary.num_authors == 0
          ? 0.0
          : static_cast<double>(summary.num_conflicts) / summary.num_authors;
  summary.components = connected_components(graph).stats();
  return summary;
}

PruneTrace prune_top_degree(const ConflictGraph& graph, int num_remove,
                            std::vector<int> checkpoints, DegreeMode mode) {
  const int m = graph.num_reviewers();
  if (num_remove < 0 || num_remove > m) {
    throw ContractViolation("prune: cannot remove " +
                            std::to_string(num_remove) + " of " +
                            std::to_string(m) + " reviewers");
  }
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                    checkpoints.end());
  if (!checkpoints.empty() &&
      (checkpoints.front() < 0 || checkpoints.back() > num_remove)) {
    throw ContractViolation("prune: checkpoints must lie in [0, " +
                            std::to_string(num_remove) + "]");
  }

  std::vector<char> active(static_cast<std::size_t>(m), 1);
  // Residual degree: conflicts to papers still present. Papers are never
  // removed, so this only changes when the reviewer itself is removed.
  auto residual_degree = [&](ReviewerIndex r) {
    return static_cast<int>(graph.papers_of(r).size());
  };

  std::vector<ReviewerIndex> initial_order(static_cast<std::size_t>(m));
  std::iota(initial_order.begin(), initial_order.end(), 0);
  std::stable_sort(initial_order.begin(), initial_order.end(),
                   [&](ReviewerIndex a, ReviewerIndex b) {
                     return graph.papers_of(a).size() > graph.papers_of(b).size();
                   });

  PruneTrace trace;
  auto next_checkpoint = checkpoints.begin();
  auto snapshot_if_due = [&](int removed) {
    if (next_checkpoint != checkpoints.end() && *next_checkpoint == removed) {
      trace.snapshots.push_back({removed, connected_components(graph, active).stats()});
      ++next_checkpoint;
    }
  };

  snapshot_if_due(0);
  for (int step = 0; step < num_remove; ++step) {
    ReviewerIndex pick = -1;
    if (mode == DegreeMode::kInitial) {
      pick = initial_order[static_cast<std::size_t>(step)];
    } else {
      int best = -1;
      for (ReviewerIndex r = 0; r < m; ++r) {
        if (!active[static_cast<std::size_t>(r)]) continue;
        const int d = residual_degree(r);
        if (d > best) {
          best = d;
          pick = r;
        }
      }
    }
    active[static_cast<std::size_t>(pick)] = 0;
    trace.removed_authors.push_back(pick);
    snapshot_if_due(step + 1);
  }
  return trace;
}

}  // namespace divrank
