#pragma once

// Connected-component analysis of the conflict graph and the greedy
// max-degree author-pruning study.

#include <span>
#include <vector>

#include "divrank/model.hpp"

namespace divrank {

struct ComponentSize {
  int reviewers = 0;
  int papers = 0;
  bool operator==(const ComponentSize&) const = default;
};

// Component sizes sorted by papers descending, then reviewers descending.
struct ComponentStats {
  std::vector<ComponentSize> sizes;

  int num_components() const { return static_cast<int>(sizes.size()); }
  int total_reviewers() const;
  int total_papers() const;
  // Largest component under the sort order; {0,0} when there is none.
  ComponentSize largest(std::size_t rank = 0) const;
  bool operator==(const ComponentStats&) const = default;
};

// Membership labeling. Components are numbered in BFS discovery order,
// seeding from reviewers 0..m-1 first and then from any unreached papers.
struct Components {
  std::vector<int> reviewer_component;  // -1 for reviewers excluded from the pool
  std::vector<int> paper_component;
  std::vector<ComponentSize> sizes;     // indexed by component id

  int count() const { return static_cast<int>(sizes.size()); }
  ComponentStats stats() const;
};

// `reviewer_active`, when non-empty, masks reviewers out of the graph (a zero
// entry removes the reviewer vertex and its edges). Papers are always kept.
Components connected_components(const ConflictGraph& graph,
                                std::span<const char> reviewer_active = {});

// Table-1 style summary of an authorship conflict graph.
struct AuthorshipSummary {
  int num_papers = 0;
  int num_authors = 0;
  int num_conflicts = 0;
  double avg_papers_per_author = 0.0;
  int max_papers_per_author = 0;
  ComponentStats components;
};

AuthorshipSummary summarize(const ConflictGraph& graph);

// kAdaptive recomputes degrees on the residual graph before each removal;
// kInitial ranks reviewers once by their degree in the input graph.
enum class DegreeMode { kAdaptive, kInitial };

struct PruneSnapshot {
  int removed = 0;
  ComponentStats stats;
};

struct PruneTrace {
  std::vector<ReviewerIndex> removed_authors;
  std::vector<PruneSnapshot> snapshots;  // ascending by `removed`
};

// Removes `num_remove` reviewers one at a time, always the one with maximum
// conflict degree (ties: lowest index). A snapshot is recorded after each
// checkpoint count of removals. Throws ContractViolation when num_remove > m
// or a checkpoint exceeds num_remove.
PruneTrace prune_top_degree(const ConflictGraph& graph, int num_remove,
                            std::vector<int> checkpoints,
                            DegreeMode mode = DegreeMode::kAdaptive);

}  // namespace divrank
