#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library beyond the data model.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "divrank/model.hpp"

namespace oracle {

using divrank::PaperIndex;
using divrank::Profile;
using divrank::ReviewGraph;

// Pairs (x, y) that some unanimous cut separates with x on the winning side
// and that some reviewer co-reviews. A cut S is unanimous when every reviewer
// ranks all of S ∩ P_i above all of P_i \ S. Enumerates all 2^n cuts.
inline std::set<std::pair<int, int>> gu_required_by_cuts(const ReviewGraph& rg,
                                                         const Profile& profile) {
  const int n = rg.num_papers();
  std::vector<std::vector<char>> co(static_cast<std::size_t>(n),
                                    std::vector<char>(static_cast<std::size_t>(n), 0));
  for (const auto& set : rg.review_sets()) {
    for (int a : set) {
      for (int b : set) {
        if (a != b) co[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
      }
    }
  }
  std::set<std::pair<int, int>> required;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    bool unanimous = true;
    for (const auto& ranking : profile) {
      bool seen_out = false;
      for (int p : ranking) {
        const bool in = (mask >> p) & 1u;
        if (!in) seen_out = true;
        if (in && seen_out) unanimous = false;
      }
      if (!unanimous) break;
    }
    if (!unanimous) continue;
    for (int x = 0; x < n; ++x) {
      if (!((mask >> x) & 1u)) continue;
      for (int y = 0; y < n; ++y) {
        if (((mask >> y) & 1u) || !co[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) {
          continue;
        }
        required.insert({x, y});
      }
    }
  }
  return required;
}

struct BruteSplit {
  bool any_cell = false;
  // Best cell under max{p/(m-r), (n-p)/r}, ties: smaller r, then smaller p.
  long double best_ratio = 0;
  int r = 0;
  int p = 0;
};

// Enumerates every subset of components (given as (r_k, p_k) sizes).
inline BruteSplit best_split(const std::vector<std::pair<int, int>>& components, int m,
                             int n) {
  auto ratio = [&](int r, int p) -> long double {
    auto part = [](int num, int den) -> long double {
      if (den == 0) return num == 0 ? 0.0L : 1e300L;
      return static_cast<long double>(num) / den;
    };
    return std::max(part(p, m - r), part(n - p, r));
  };
  BruteSplit best;
  const std::size_t k = components.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    int r = 0;
    int p = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1u) {
        r += components[i].first;
        p += components[i].second;
      }
    }
    const long double value = ratio(r, p);
    const bool better = !best.any_cell || value < best.best_ratio ||
                        (value == best.best_ratio &&
                         (r < best.r || (r == best.r && p < best.p)));
    if (better) best = {true, value, r, p};
  }
  return best;
}

// True when some permutation of `papers` ranks x above y for every pair.
inline bool exists_consistent_order(std::vector<PaperIndex> papers,
                                    const std::vector<std::pair<int, int>>& pairs) {
  std::sort(papers.begin(), papers.end());
  do {
    bool ok = true;
    for (const auto& [x, y] : pairs) {
      const auto px = std::find(papers.begin(), papers.end(), x);
      const auto py = std::find(papers.begin(), papers.end(), y);
      if (px > py) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(papers.begin(), papers.end()));
  return false;
}

}  // namespace oracle
