#include <algorithm>

#include "divrank/assign.hpp"
#include "divrank/partition.hpp"
#include "divrank/random.hpp"
#include "doctest.h"

using namespace divrank;

TEST_CASE("round robin deals papers cyclically") {
  // |R_C| = 2 (r1, r2), P_Cbar = {p3..p6}; indices are 0-based.
  const PartitionResult split{{{0, 1}, {0, 1}}, {{2, 3}, {2, 3, 4, 5}}};
  const auto sets = AssignStrategy::round_robin().assign({2, 3, 4, 5}, {0, 1}, {2, 1});
  CHECK(sets == std::vector<std::vector<PaperIndex>>{{2, 4}, {3, 5}});
  const auto rg = assign_across(split, 6, {2, 1}, AssignStrategy::round_robin());
  CHECK(rg.review_set(0) == std::vector<PaperIndex>{2, 4});
  CHECK(rg.review_set(1) == std::vector<PaperIndex>{3, 5});
  CHECK(rg.review_set(2) == std::vector<PaperIndex>{0});
  CHECK(rg.review_set(3) == std::vector<PaperIndex>{1});
}

TEST_CASE("mu equal to lambda fills every reviewer") {
  // Two isolated reviewers per side, two papers per side.
  const ConflictGraph g(4, 4, {});
  const auto result = divide_and_rank_assign(g, {2, 2});
  for (const auto& set : result.review_graph.review_sets()) CHECK(set.size() == 2);
  CHECK(validate_assignment(result.review_graph, g, {2, 2}).ok);
}

TEST_CASE("strategy that breaks mu is named in the error") {
  const AssignStrategy greedy{"everything-to-first",
                              [](const std::vector<PaperIndex>& papers,
                                 const std::vector<ReviewerIndex>& reviewers,
                                 const AssignmentParams&) {
                                std::vector<std::vector<PaperIndex>> sets(reviewers.size());
                                if (!sets.empty()) sets[0] = papers;
                                return sets;
                              }};
  const ConflictGraph g(4, 4, {});
  try {
    divide_and_rank_assign(g, {1, 1}, greedy);
    FAIL("expected a contract violation");
  } catch (const ContractViolation& e) {
    CHECK(std::string(e.what()).find("everything-to-first") != std::string::npos);
  }
}

TEST_CASE("lambda above the opposite side's reviewer count is refused") {
  // One reviewer per side; the ratio test passes for mu = 2, lambda = 2.
  const ConflictGraph g(2, 2, {{0, 0}, {1, 1}});
  CHECK_THROWS_AS(divide_and_rank_assign(g, {2, 2}), ContractViolation);
}

TEST_CASE("validate_assignment witnesses") {
  const ConflictGraph g(2, 2, {{0, 0}, {1, 1}});
  const AssignmentParams params{1, 1};
  CHECK(validate_assignment(ReviewGraph(2, {{1}, {0}}), g, params).ok);

  const auto own = validate_assignment(ReviewGraph(2, {{0}, {1}}), g, params);
  CHECK_FALSE(own.ok);
  CHECK(own.clause == "conflict");
  CHECK(own.reviewer == 0);
  CHECK(own.paper == 0);

  const auto short_paper = validate_assignment(ReviewGraph(2, {{1}, {}}), g, params);
  CHECK_FALSE(short_paper.ok);
  CHECK(short_paper.clause == "lambda-floor");
  CHECK(short_paper.paper == 0);

  const auto over = validate_assignment(ReviewGraph(2, {{1}, {0, 1}}), g, params);
  CHECK_FALSE(over.ok);

  CHECK(validate_assignment(ReviewGraph(2, {{1}}), g, params).clause == "shape");
}

TEST_CASE("random feasible instances give valid balanced assignments") {
  Rng rng(23);
  int checked = 0;
  while (checked < 1000) {
    const int m = 2 + static_cast<int>(rng.below(10));
    const int n = 1 + static_cast<int>(rng.below(12));
    std::vector<Conflict> edges;
    const auto count = rng.below(static_cast<std::uint64_t>(m + n));
    for (std::uint64_t e = 0; e < count; ++e) {
      edges.push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(m))),
                       static_cast<int>(rng.below(static_cast<std::uint64_t>(n)))});
    }
    const ConflictGraph g(m, n, edges);
    const AssignmentParams params{1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n))),
                                  1 + static_cast<int>(rng.below(2))};
    DivideAndRankAssignment result;
    try {
      result = divide_and_rank_assign(g, params);
    } catch (const Error&) {
      continue;
    }
    ++checked;
    CHECK(verify_partition(result.partition, g, params).ok);
    CHECK(validate_assignment(result.review_graph, g, params).ok);
    // Every reviewer reviews only papers from the other side.
    for (const Side* side : {&result.partition.c, &result.partition.cbar}) {
      std::size_t lo = SIZE_MAX;
      std::size_t hi = 0;
      for (ReviewerIndex r : side->reviewers) {
        for (PaperIndex p : result.review_graph.review_set(r)) {
          CHECK_FALSE(std::binary_search(side->papers.begin(), side->papers.end(), p));
        }
        const auto load = result.review_graph.review_set(r).size();
        if (load > 0) {
          lo = std::min(lo, load);
          hi = std::max(hi, load);
        }
      }
      if (hi > 0) CHECK(hi - lo <= 1);
    }
  }
}
