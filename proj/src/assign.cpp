#include "divrank/assign.hpp"

#include <algorithm>

#include "divrank/error.hpp"

namespace divrank {

AssignStrategy AssignStrategy::round_robin() {
  return {"round-robin",
          [](const std::vector<PaperIndex>& papers,
             const std::vector<ReviewerIndex>& reviewers,
             const AssignmentParams& params) {
            std::vector<std::vector<PaperIndex>> sets(reviewers.size());
            if (reviewers.empty()) return sets;
            // Deal t goes to reviewer t mod |R|; paper j owns deals
            // j*lambda .. j*lambda + lambda - 1, so its copies land on
            // distinct reviewers whenever lambda <= |R|.
            std::size_t deal = 0;
            for (PaperIndex p : papers) {
              for (int copy = 0; copy < params.lambda; ++copy, ++deal) {
                sets[deal % reviewers.size()].push_back(p);
              }
            }
            for (auto& s : sets) {
              std::sort(s.begin(), s.end());
              s.erase(std::unique(s.begin(), s.end()), s.end());
            }
            return sets;
          }};
}

namespace {

void check_direction(const std::vector<std::vector<PaperIndex>>& sets,
                     const std::vector<PaperIndex>& papers,
                     const std::vector<ReviewerIndex>& reviewers,
                     const AssignmentParams& params,
                     const std::string& strategy) {
  auto fail = [&](const std::string& what) {
    throw ContractViolation("assignment strategy '" + strategy + "' " + what);
  };
  if (sets.size() != reviewers.size()) fail("returned the wrong number of sets");
  std::vector<int> counts(papers.size(), 0);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (static_cast<int>(sets[i].size()) > params.mu) {
      fail("gave reviewer " + std::to_string(reviewers[i]) + " more than mu = " +
           std::to_string(params.mu) + " papers");
    }
    for (PaperIndex p : sets[i]) {
      const auto it = std::lower_bound(papers.begin(), papers.end(), p);
      if (it == papers.end() || *it != p) {
        fail("assigned paper " + std::to_string(p) + " to reviewer " +
             std::to_string(reviewers[i]) + " across the split");
      }
      ++counts[static_cast<std::size_t>(it - papers.begin())];
    }
  }
  for (std::size_t j = 0; j < papers.size(); ++j) {
    if (counts[j] < params.lambda) {
      fail("left paper " + std::to_string(papers[j]) + " with " +
           std::to_string(counts[j]) + " < lambda = " +
           std::to_string(params.lambda) + " reviews");
    }
  }
}

}  // namespace

ReviewGraph assign_across(const PartitionResult& partition, int num_papers,
                          const AssignmentParams& params,
                          const AssignStrategy& strategy) {
  int num_reviewers = 0;
  for (const Side* side : {&partition.c, &partition.cbar}) {
    for (ReviewerIndex r : side->reviewers) {
      num_reviewers = std::max(num_reviewers, r + 1);
    }
  }
  std::vector<std::vector<PaperIndex>> sets(
      static_cast<std::size_t>(num_reviewers));

  const std::pair<const Side*, const Side*> directions[] = {
      {&partition.c, &partition.cbar}, {&partition.cbar, &partition.c}};
  for (const auto& [reviewer_side, paper_side] : directions) {
    auto part = strategy.assign(paper_side->papers, reviewer_side->reviewers,
                                params);
    for (auto& s : part) std::sort(s.begin(), s.end());
    check_direction(part, paper_side->papers, reviewer_side->reviewers, params,
                    strategy.name);
    for (std::size_t i = 0; i < part.size(); ++i) {
      sets[static_cast<std::size_t>(reviewer_side->reviewers[i])] =
          std::move(part[i]);
    }
  }
  return ReviewGraph(num_papers, std::move(sets));
}

DivideAndRankAssignment divide_and_rank_assign(const ConflictGraph& graph,
                                               const AssignmentParams& params,
                                               const AssignStrategy& strategy) {
  DivideAndRankAssignment out;
  out.partition = partition(graph, params);
  out.review_graph =
      assign_across(out.partition, graph.num_papers(), params, strategy);
  return out;
}

AssignmentCheck validate_assignment(const ReviewGraph& rg,
                                    const ConflictGraph& graph,
                                    const AssignmentParams& params) {
  if (rg.num_reviewers() != graph.num_reviewers() ||
      rg.num_papers() != graph.num_papers()) {
    return {false, "shape", "review graph and conflict graph sizes differ",
            std::nullopt, std::nullopt};
  }
  for (ReviewerIndex r = 0; r < rg.num_reviewers(); ++r) {
    const auto& set = rg.review_set(r);
    if (static_cast<int>(set.size()) > params.mu) {
      return {false, "mu-cap",
              "reviewer " + std::to_string(r) + " has " +
                  std::to_string(set.size()) + " > mu papers",
              r, std::nullopt};
    }
    for (PaperIndex p : set) {
      if (graph.has_conflict(r, p)) {
        return {false, "conflict",
                "reviewer " + std::to_string(r) + " reviews conflicted paper " +
                    std::to_string(p),
                r, p};
      }
    }
  }
  const auto counts = rg.review_counts();
  for (PaperIndex p = 0; p < rg.num_papers(); ++p) {
    if (counts[static_cast<std::size_t>(p)] < params.lambda) {
      return {false, "lambda-floor",
              "paper " + std::to_string(p) + " has " +
                  std::to_string(counts[static_cast<std::size_t>(p)]) +
                  " < lambda reviews",
              std::nullopt, p};
    }
  }
  return {};
}

}  // namespace divrank
