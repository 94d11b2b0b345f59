#include "divrank/model.hpp"

#include <algorithm>

#include "divrank/error.hpp"

namespace divrank {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk:
      return "ok";
    case ErrorCode::kParse:
      return "parse-error";
    case ErrorCode::kInfeasiblePartition:
      return "infeasible-partition";
    case ErrorCode::kContractViolation:
      return "contract-violation";
    case ErrorCode::kBudgetExceeded:
      return "budget-exceeded";
  }
  return "unknown";
}

Labels Labels::defaults(int num_reviewers, int num_papers) {
  Labels labels;
  labels.reviewers.reserve(static_cast<std::size_t>(num_reviewers));
  labels.papers.reserve(static_cast<std::size_t>(num_papers));
  for (int i = 0; i < num_reviewers; ++i) {
    labels.reviewers.push_back("r" + std::to_string(i));
  }
  for (int j = 0; j < num_papers; ++j) {
    labels.papers.push_back("p" + std::to_string(j));
  }
  return labels;
}

ConflictGraph::ConflictGraph(int num_reviewers, int num_papers,
                             std::vector<Conflict> conflicts, Labels labels)
    : num_reviewers_(num_reviewers),
      num_papers_(num_papers),
      conflicts_(std::move(conflicts)),
      labels_(std::move(labels)) {
  if (num_reviewers < 0 || num_papers < 0) {
    throw ContractViolation("conflict graph: negative vertex count");
  }
  if (labels_.reviewers.empty() && labels_.papers.empty()) {
    labels_ = Labels::defaults(num_reviewers, num_papers);
  }
  if (static_cast<int>(labels_.reviewers.size()) != num_reviewers ||
      static_cast<int>(labels_.papers.size()) != num_papers) {
    throw ContractViolation("conflict graph: label table size mismatch");
  }
  for (const auto& c : conflicts_) {
    if (c.reviewer < 0 || c.reviewer >= num_reviewers || c.paper < 0 ||
        c.paper >= num_papers) {
      throw ContractViolation("conflict graph: edge (" +
                              std::to_string(c.reviewer) + "," +
                              std::to_string(c.paper) + ") out of range");
    }
  }
  std::sort(conflicts_.begin(), conflicts_.end());
  conflicts_.erase(std::unique(conflicts_.begin(), conflicts_.end()),
                   conflicts_.end());

  reviewer_adj_.assign(static_cast<std::size_t>(num_reviewers), {});
  paper_adj_.assign(static_cast<std::size_t>(num_papers), {});
  for (const auto& c : conflicts_) {
    reviewer_adj_[static_cast<std::size_t>(c.reviewer)].push_back(c.paper);
    paper_adj_[static_cast<std::size_t>(c.paper)].push_back(c.reviewer);
  }
  for (auto& adj : paper_adj_) std::sort(adj.begin(), adj.end());
}

bool ConflictGraph::has_conflict(ReviewerIndex r, PaperIndex p) const {
  const auto adj = papers_of(r);
  return std::binary_search(adj.begin(), adj.end(), p);
}

void AssignmentParams::validate(int num_papers) const {
  if (lambda < 1) {
    throw ContractViolation("assignment params: lambda must be >= 1");
  }
  if (mu < 1 || mu > num_papers) {
    throw ContractViolation("assignment params: mu must lie in [1, " +
                            std::to_string(num_papers) + "], got " +
                            std::to_string(mu));
  }
}

ReviewGraph::ReviewGraph(int num_papers,
                         std::vector<std::vector<PaperIndex>> review_sets)
    : num_papers_(num_papers), review_sets_(std::move(review_sets)) {
  for (std::size_t i = 0; i < review_sets_.size(); ++i) {
    auto& set = review_sets_[i];
    std::sort(set.begin(), set.end());
    if (!is_strict_ranking(set, num_papers)) {
      throw ContractViolation("review graph: review set of reviewer " +
                              std::to_string(i) +
                              " has an out-of-range or repeated paper");
    }
  }
}

bool ReviewGraph::reviews(ReviewerIndex r, PaperIndex p) const {
  const auto& set = review_set(r);
  return std::binary_search(set.begin(), set.end(), p);
}

std::vector<int> ReviewGraph::review_counts() const {
  std::vector<int> counts(static_cast<std::size_t>(num_papers_), 0);
  for (const auto& set : review_sets_) {
    for (PaperIndex p : set) ++counts[static_cast<std::size_t>(p)];
  }
  return counts;
}

bool is_strict_ranking(std::span<const PaperIndex> ranking, int num_papers) {
  std::vector<char> seen(static_cast<std::size_t>(std::max(num_papers, 0)), 0);
  for (PaperIndex p : ranking) {
    if (p < 0 || p >= num_papers) return false;
    auto& s = seen[static_cast<std::size_t>(p)];
    if (s) return false;
    s = 1;
  }
  return true;
}

void check_profile_alignment(const ReviewGraph& rg, const Profile& profile) {
  if (static_cast<int>(profile.size()) != rg.num_reviewers()) {
    throw ContractViolation("profile has " + std::to_string(profile.size()) +
                            " rankings but the review graph has " +
                            std::to_string(rg.num_reviewers()) + " reviewers");
  }
  for (int i = 0; i < rg.num_reviewers(); ++i) {
    const auto& ranking = profile[static_cast<std::size_t>(i)];
    Ranking sorted = ranking;
    std::sort(sorted.begin(), sorted.end());
    if (!is_strict_ranking(ranking, rg.num_papers()) ||
        sorted != rg.review_set(i)) {
      throw ContractViolation("ranking of reviewer " + std::to_string(i) +
                              " does not match its review set");
    }
  }
}

AggregateRanking::AggregateRanking(std::vector<PaperIndex> order)
    : order_(std::move(order)) {
  const int n = static_cast<int>(order_.size());
  position_.assign(order_.size(), 0);
  for (int pos = 0; pos < n; ++pos) {
    const PaperIndex p = order_[static_cast<std::size_t>(pos)];
    if (p < 0 || p >= n || position_[static_cast<std::size_t>(p)] != 0) {
      throw ContractViolation("aggregate ranking is not a permutation");
    }
    position_[static_cast<std::size_t>(p)] = pos + 1;
  }
}

}  // namespace divrank
