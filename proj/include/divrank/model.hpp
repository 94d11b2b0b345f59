#pragma once

// Core data model: reviewers and papers are dense 0-based indices; external
// string ids live in a Labels side table.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace divrank {

using ReviewerIndex = int;
using PaperIndex = int;

struct Conflict {
  ReviewerIndex reviewer;
  PaperIndex paper;
  auto operator<=>(const Conflict&) const = default;
};

// id <-> index symbol table. Position i holds the external id of index i.
struct Labels {
  std::vector<std::string> reviewers;
  std::vector<std::string> papers;

  static Labels defaults(int num_reviewers, int num_papers);
  bool operator==(const Labels&) const = default;
};

// Bipartite reviewer/paper conflict graph.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  // Sorts and deduplicates `conflicts`. Throws ContractViolation when an
  // index is out of range or the labels do not match the vertex counts. Empty
  // labels are replaced by Labels::defaults.
  ConflictGraph(int num_reviewers, int num_papers,
                std::vector<Conflict> conflicts, Labels labels = {});

  int num_reviewers() const { return num_reviewers_; }
  int num_papers() const { return num_papers_; }
  const std::vector<Conflict>& conflicts() const { return conflicts_; }
  const Labels& labels() const { return labels_; }

  std::span<const PaperIndex> papers_of(ReviewerIndex r) const {
    return reviewer_adj_[static_cast<std::size_t>(r)];
  }
  std::span<const ReviewerIndex> reviewers_of(PaperIndex p) const {
    return paper_adj_[static_cast<std::size_t>(p)];
  }
  bool has_conflict(ReviewerIndex r, PaperIndex p) const;

  bool operator==(const ConflictGraph& other) const {
    return num_reviewers_ == other.num_reviewers_ &&
           num_papers_ == other.num_papers_ &&
           conflicts_ == other.conflicts_ && labels_ == other.labels_;
  }

 private:
  int num_reviewers_ = 0;
  int num_papers_ = 0;
  std::vector<Conflict> conflicts_;
  Labels labels_;
  std::vector<std::vector<PaperIndex>> reviewer_adj_;
  std::vector<std::vector<ReviewerIndex>> paper_adj_;
};

// mu: max papers per reviewer; lambda: min reviews per paper.
struct AssignmentParams {
  int mu = 1;
  int lambda = 1;

  // Throws ContractViolation unless 1 <= lambda and 1 <= mu <= num_papers.
  void validate(int num_papers) const;
  bool operator==(const AssignmentParams&) const = default;
};

// Assignment A: review_sets[i] is P_i, kept sorted by paper index.
class ReviewGraph {
 public:
  ReviewGraph() = default;
  // Throws ContractViolation on out-of-range or repeated papers in a set.
  ReviewGraph(int num_papers, std::vector<std::vector<PaperIndex>> review_sets);

  int num_papers() const { return num_papers_; }
  int num_reviewers() const { return static_cast<int>(review_sets_.size()); }
  const std::vector<std::vector<PaperIndex>>& review_sets() const {
    return review_sets_;
  }
  const std::vector<PaperIndex>& review_set(ReviewerIndex r) const {
    return review_sets_[static_cast<std::size_t>(r)];
  }
  bool reviews(ReviewerIndex r, PaperIndex p) const;
  // Number of reviewers assigned to each paper.
  std::vector<int> review_counts() const;

  bool operator==(const ReviewGraph&) const = default;

 private:
  int num_papers_ = 0;
  std::vector<std::vector<PaperIndex>> review_sets_;
};

// Best-first list of distinct papers.
using Ranking = std::vector<PaperIndex>;
// One ranking per reviewer; the support of ranking i must equal P_i.
using Profile = std::vector<Ranking>;

// True when every entry lies in [0, num_papers) and none repeats.
bool is_strict_ranking(std::span<const PaperIndex> ranking, int num_papers);

// Throws ContractViolation (naming the reviewer) unless profile[i] is a strict
// ranking of exactly review_set(i) for every reviewer.
void check_profile_alignment(const ReviewGraph& rg, const Profile& profile);

// Total output ranking: a permutation of all papers. Positions are 1-based,
// position 1 is best.
class AggregateRanking {
 public:
  AggregateRanking() = default;
  // Throws ContractViolation unless `order` is a permutation of [0, n).
  explicit AggregateRanking(std::vector<PaperIndex> order);

  int size() const { return static_cast<int>(order_.size()); }
  const std::vector<PaperIndex>& order() const { return order_; }
  PaperIndex at_position(int position) const {
    return order_[static_cast<std::size_t>(position - 1)];
  }
  int position_of(PaperIndex paper) const {
    return position_[static_cast<std::size_t>(paper)];
  }
  bool prefers(PaperIndex a, PaperIndex b) const {
    return position_of(a) < position_of(b);
  }

  bool operator==(const AggregateRanking& other) const {
    return order_ == other.order_;
  }

 private:
  std::vector<PaperIndex> order_;
  std::vector<int> position_;
};

// Two-sided split of all reviewers and papers (the groups C and C-bar).
// Member lists are sorted by index.
struct Side {
  std::vector<ReviewerIndex> reviewers;
  std::vector<PaperIndex> papers;
  bool operator==(const Side&) const = default;
};

struct PartitionResult {
  Side c;
  Side cbar;
  bool operator==(const PartitionResult&) const = default;
};

}  // namespace divrank
