#pragma once

// Cross-partition reviewer assignment: reviewers of one side only review
// papers of the other side, so nobody ever reviews a paper on their own side.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "divrank/model.hpp"
#include "divrank/partition.hpp"

namespace divrank {

// An assignment algorithm for one direction of the split: distributes
// `papers` over `reviewers` (both sorted by index) and returns one list of
// papers per entry of `reviewers`.
struct AssignStrategy {
  using Fn = std::function<std::vector<std::vector<PaperIndex>>(
      const std::vector<PaperIndex>& papers,
      const std::vector<ReviewerIndex>& reviewers,
      const AssignmentParams& params)>;

  std::string name;
  Fn assign;

  // Deals the lambda copies of each paper to consecutive reviewers in cyclic
  // order, papers taken by ascending index. Loads differ by at most one.
  static AssignStrategy round_robin();
};

struct DivideAndRankAssignment {
  PartitionResult partition;
  ReviewGraph review_graph;
};

// Partitions the conflict graph, then runs the strategy once per direction.
// Throws InfeasiblePartition from the partitioner and ContractViolation
// (naming the strategy) when the strategy output breaks the mu/lambda
// contract.
DivideAndRankAssignment divide_and_rank_assign(
    const ConflictGraph& graph, const AssignmentParams& params,
    const AssignStrategy& strategy = AssignStrategy::round_robin());

// Same, for an already computed split.
ReviewGraph assign_across(const PartitionResult& partition, int num_papers,
                          const AssignmentParams& params,
                          const AssignStrategy& strategy);

struct AssignmentCheck {
  bool ok = true;
  std::string clause;  // "shape", "mu-cap", "lambda-floor", "conflict"
  std::string detail;
  std::optional<ReviewerIndex> reviewer;
  std::optional<PaperIndex> paper;
};

AssignmentCheck validate_assignment(const ReviewGraph& rg,
                                    const ConflictGraph& graph,
                                    const AssignmentParams& params);

}  // namespace divrank
