#include "divrank/partition.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace divrank {

double Ratio::value() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  if (num == 0) return 0.0;
  return static_cast<double>(num) / static_cast<double>(den);
}

std::string Ratio::str() const {
  if (is_infinite()) return "inf";
  if (num == 0) return "0";
  std::ostringstream out;
  out << num << "/" << den;
  return out.str();
}

bool operator<(const Ratio& a, const Ratio& b) {
  if (a.is_infinite()) return false;
  if (b.is_infinite()) return true;
  if (a.num == 0 || b.num == 0) return a.num == 0 && b.num != 0;
  return a.num * b.den < b.num * a.den;
}

bool operator==(const Ratio& a, const Ratio& b) { return !(a < b) && !(b < a); }

Ratio split_ratio(int m, int n, int r, int p) {
  const Ratio first{p, m - r};
  const Ratio second{n - p, r};
  return first < second ? second : first;
}

ReachabilityTable::ReachabilityTable(std::span<const ComponentSize> components,
                                     int num_reviewers, int num_papers)
    : layers_(static_cast<int>(components.size())),
      m_(num_reviewers),
      n_(num_papers) {
  bits_.assign(static_cast<std::size_t>(layers_) *
                   static_cast<std::size_t>(m_ + 1) *
                   static_cast<std::size_t>(n_ + 1),
               false);
  if (layers_ == 0) return;
  bits_[offset(1, 0, 0)] = true;
  bits_[offset(1, components[0].reviewers, components[0].papers)] = true;
  for (int k = 2; k <= layers_; ++k) {
    const auto& comp = components[static_cast<std::size_t>(k - 1)];
    for (int r = 0; r <= m_; ++r) {
      for (int p = 0; p <= n_; ++p) {
        bool v = bits_[offset(k - 1, r, p)];
        if (!v && r >= comp.reviewers && p >= comp.papers) {
          v = bits_[offset(k - 1, r - comp.reviewers, p - comp.papers)];
        }
        bits_[offset(k, r, p)] = v;
        ++fill_operations_;
      }
    }
  }
}

std::size_t ReachabilityTable::offset(int k, int r, int p) const {
  return (static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(m_ + 1) +
          static_cast<std::size_t>(r)) *
             static_cast<std::size_t>(n_ + 1) +
         static_cast<std::size_t>(p);
}

bool ReachabilityTable::at(int k, int r, int p) const {
  if (k < 1 || k > layers_ || r < 0 || r > m_ || p < 0 || p > n_) return false;
  return bits_[offset(k, r, p)];
}

InfeasiblePartition::InfeasiblePartition(Ratio best,
                                         const AssignmentParams& params)
    : Error(ErrorCode::kInfeasiblePartition,
            "no conflict-free split satisfies the load constraint: best "
            "achievable ratio " +
                best.str() + " exceeds mu/lambda = " +
                std::to_string(params.mu) + "/" +
                std::to_string(params.lambda) +
                "; hint: remove high-degree authors from the reviewer pool "
                "(see `divrank prune`)"),
      best_(best) {}

PartitionResult partition(const ConflictGraph& graph,
                          const AssignmentParams& params,
                          PartitionDiagnostics* diagnostics) {
  const int m = graph.num_reviewers();
  const int n = graph.num_papers();
  if (m < 2) {
    throw ContractViolation("partition needs at least two reviewers");
  }
  params.validate(n);

  const Components comps = connected_components(graph);
  const ReachabilityTable table(comps.sizes, m, n);
  const int K = comps.count();

  bool found = false;
  int best_r = 0;
  int best_p = 0;
  Ratio best;
  for (int r = 0; r <= m; ++r) {
    for (int p = 0; p <= n; ++p) {
      if (!table.at(K, r, p)) continue;
      const Ratio ratio = split_ratio(m, n, r, p);
      if (!found || ratio < best) {
        found = true;
        best = ratio;
        best_r = r;
        best_p = p;
      }
    }
  }
  const Ratio limit{params.mu, params.lambda};
  if (!found || limit < best) throw InfeasiblePartition(best, params);

  std::vector<char> in_c(static_cast<std::size_t>(K), 0);
  int r = best_r;
  int p = best_p;
  for (int k = K; k >= 2; --k) {
    const auto& comp = comps.sizes[static_cast<std::size_t>(k - 1)];
    if (r >= comp.reviewers && p >= comp.papers &&
        table.at(k - 1, r - comp.reviewers, p - comp.papers)) {
      in_c[static_cast<std::size_t>(k - 1)] = 1;
      r -= comp.reviewers;
      p -= comp.papers;
    }
  }
  if (K >= 1 && (r != 0 || p != 0)) {
    in_c[0] = 1;
  }

  PartitionResult result;
  for (ReviewerIndex i = 0; i < m; ++i) {
    const int id = comps.reviewer_component[static_cast<std::size_t>(i)];
    (in_c[static_cast<std::size_t>(id)] ? result.c : result.cbar)
        .reviewers.push_back(i);
  }
  for (PaperIndex j = 0; j < n; ++j) {
    const int id = comps.paper_component[static_cast<std::size_t>(j)];
    (in_c[static_cast<std::size_t>(id)] ? result.c : result.cbar)
        .papers.push_back(j);
  }

  if (diagnostics != nullptr) {
    diagnostics->num_components = K;
    diagnostics->chosen_reviewers = best_r;
    diagnostics->chosen_papers = best_p;
    diagnostics->ratio = best;
    diagnostics->fill_operations = table.fill_operations();
  }
  return result;
}

PartitionCheck verify_partition(const PartitionResult& result,
                                const ConflictGraph& graph,
                                const AssignmentParams& params) {
  const int m = graph.num_reviewers();
  const int n = graph.num_papers();
  // 0 = unassigned, 1 = C, 2 = Cbar
  std::vector<int> reviewer_side(static_cast<std::size_t>(m), 0);
  std::vector<int> paper_side(static_cast<std::size_t>(n), 0);

  auto place = [](std::vector<int>& sides, int v, int side, const char* kind)
      -> PartitionCheck {
    if (v < 0 || v >= static_cast<int>(sides.size())) {
      return {false, "cover", std::string(kind) + " " + std::to_string(v) +
                                  " is out of range", std::nullopt};
    }
    auto& slot = sides[static_cast<std::size_t>(v)];
    if (slot != 0) {
      return {false, "disjoint", std::string(kind) + " " + std::to_string(v) +
                                     " appears more than once", std::nullopt};
    }
    slot = side;
    return {};
  };

  const std::pair<const Side*, int> sides[] = {{&result.c, 1}, {&result.cbar, 2}};
  for (const auto& [side, tag] : sides) {
    for (ReviewerIndex r : side->reviewers) {
      if (auto c = place(reviewer_side, r, tag, "reviewer"); !c.ok) return c;
    }
    for (PaperIndex p : side->papers) {
      if (auto c = place(paper_side, p, tag, "paper"); !c.ok) return c;
    }
  }
  for (ReviewerIndex r = 0; r < m; ++r) {
    if (reviewer_side[static_cast<std::size_t>(r)] == 0) {
      return {false, "cover", "reviewer " + std::to_string(r) + " is on no side",
              std::nullopt};
    }
  }
  for (PaperIndex p = 0; p < n; ++p) {
    if (paper_side[static_cast<std::size_t>(p)] == 0) {
      return {false, "cover", "paper " + std::to_string(p) + " is on no side",
              std::nullopt};
    }
  }
  for (const auto& c : graph.conflicts()) {
    if (reviewer_side[static_cast<std::size_t>(c.reviewer)] !=
        paper_side[static_cast<std::size_t>(c.paper)]) {
      return {false, "crossing-conflict",
              "conflict (" + std::to_string(c.reviewer) + "," +
                  std::to_string(c.paper) + ") crosses the split",
              c};
    }
  }
  const Ratio ratio =
      split_ratio(m, n, static_cast<int>(result.c.reviewers.size()),
                  static_cast<int>(result.c.papers.size()));
  const Ratio limit{params.mu, params.lambda};
  if (limit < ratio) {
    return {false, "ratio",
            "load ratio " + ratio.str() + " exceeds mu/lambda = " + limit.str(),
            std::nullopt};
  }
  return {};
}

}  // namespace divrank
