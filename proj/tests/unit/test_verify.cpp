#include <numeric>

#include "divrank/aggregate.hpp"
#include "divrank/assign.hpp"
#include "divrank/error.hpp"
#include "divrank/partition.hpp"
#include "divrank/random.hpp"
#include "divrank/verify.hpp"
#include "doctest.h"
#include "json.hpp"
#include "oracles/oracles.hpp"

using namespace divrank;

namespace {

constexpr PaperIndex A = 0;
constexpr PaperIndex B = 1;
constexpr PaperIndex C = 2;

// Three (2,2) blocks; see the golden fixture.
ConflictGraph three_blocks() {
  std::vector<Conflict> edges;
  for (int b = 0; b < 3; ++b) {
    edges.push_back({2 * b, 2 * b});
    edges.push_back({2 * b, 2 * b + 1});
    edges.push_back({2 * b + 1, 2 * b + 1});
  }
  return ConflictGraph(6, 6, edges);
}

Mechanism whole_set_contract_and_sort(int n) {
  return [n](const Profile& profile) {
    std::vector<PaperIndex> papers(static_cast<std::size_t>(n));
    std::iota(papers.begin(), papers.end(), 0);
    return AggregateRanking(contract_and_sort(papers, profile));
  };
}

bool replay_moves(const Mechanism& mech, const Witness& w) {
  Profile deviated = *w.profile;
  deviated[static_cast<std::size_t>(*w.reviewer)] = *w.deviation;
  return mech(*w.profile).position_of(*w.paper) == *w.position_before &&
         mech(deviated).position_of(*w.paper) == *w.position_after &&
         *w.position_before != *w.position_after;
}

}  // namespace

TEST_CASE("GU holds when every reviewer agrees and the output follows them") {
  const ReviewGraph rg(3, {{0, 1, 2}, {0, 1, 2}});
  const Profile profile{{B, C, A}, {B, C, A}};
  const auto report = check_gu(rg, profile, AggregateRanking({B, C, A}));
  CHECK(report.verdict);
  CHECK_FALSE(report.witness.has_value());
  CHECK(report.cases_checked == 3);
}

TEST_CASE("GU violation on a two-reviewer chain") {
  const ReviewGraph rg(3, {{A, B}, {B, C}});
  const Profile profile{{A, B}, {B, C}};
  const auto report = check_gu(rg, profile, AggregateRanking({C, A, B}));
  CHECK_FALSE(report.verdict);
  REQUIRE(report.witness.has_value());
  CHECK(report.witness->pair == PaperPair{B, C});
  CHECK(gu_required_pairs(rg, profile) == std::vector<PaperPair>{{A, B}, {B, C}});
}

TEST_CASE("GU ignores pairs inside one strongly connected component") {
  const ReviewGraph rg(2, {{A, B}, {A, B}});
  const Profile profile{{A, B}, {B, A}};
  CHECK(gu_required_pairs(rg, profile).empty());
  CHECK(check_gu(rg, profile, AggregateRanking({B, A})).verdict);
}

TEST_CASE("PU basics") {
  const ReviewGraph single(3, {{0, 1, 2}});
  CHECK(check_pu(single, {{C, A, B}}, AggregateRanking({C, A, B})).verdict);

  const ReviewGraph rg(2, {{A, B}, {A, B}});
  const auto report = check_pu(rg, {{A, B}, {A, B}}, AggregateRanking({B, A}));
  CHECK_FALSE(report.verdict);
  CHECK(report.witness->pair == PaperPair{A, B});
  CHECK(pu_required_pairs(rg, {{A, B}, {B, A}}).empty());
}

TEST_CASE("PU implies GU on random instances") {
  Rng rng(31);
  int pu_true = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const int m = 1 + static_cast<int>(rng.below(4));
    std::vector<PaperIndex> papers(static_cast<std::size_t>(n));
    std::iota(papers.begin(), papers.end(), 0);
    std::vector<std::vector<PaperIndex>> sets;
    Profile profile;
    for (int r = 0; r < m; ++r) {
      auto s = papers;
      rng.shuffle(std::span<PaperIndex>(s));
      s.resize(1 + rng.below(static_cast<std::uint64_t>(n)));
      profile.push_back(s);
      sets.push_back(s);
    }
    const ReviewGraph rg(n, sets);
    auto order = papers;
    rng.shuffle(std::span<PaperIndex>(order));
    const AggregateRanking out(order);
    if (check_pu(rg, profile, out).verdict) {
      ++pu_true;
      CHECK(check_gu(rg, profile, out).verdict);
    }
  }
  CHECK(pu_true > 100);
}

TEST_CASE("reachability GU agrees with the cut oracle on random instances") {
  Rng rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(4));
    std::vector<PaperIndex> papers(static_cast<std::size_t>(n));
    std::iota(papers.begin(), papers.end(), 0);
    std::vector<std::vector<PaperIndex>> sets;
    for (int r = 0; r < 3; ++r) {
      auto s = papers;
      rng.shuffle(std::span<PaperIndex>(s));
      s.resize(1 + rng.below(static_cast<std::uint64_t>(n)));
      sets.push_back(s);
    }
    const ReviewGraph rg(n, sets);
    const ProfileSpace space(rg);
    for (std::uint64_t idx = 0; idx < space.size(); ++idx) {
      const auto profile = space.at(idx);
      const auto fast = gu_required_pairs(rg, profile);
      const std::set<std::pair<int, int>> fast_set(fast.begin(), fast.end());
      REQUIRE(fast_set == oracle::gu_required_by_cuts(rg, profile));
    }
  }
}

TEST_CASE("profile space enumerates in mixed radix") {
  const ReviewGraph rg(3, {{0, 1}, {0, 1, 2}, {}});
  const ProfileSpace space(rg);
  CHECK(space.size() == 12);
  CHECK(space.stride(1) == 2);
  CHECK(space.at(0) == Profile{{0, 1}, {0, 1, 2}, {}});
  CHECK(space.at(1) == Profile{{1, 0}, {0, 1, 2}, {}});
  CHECK(space.at(2) == Profile{{0, 1}, {0, 2, 1}, {}});
  CHECK(space.digit(11, 1) == 5);
}

TEST_CASE("exhaustive SP: constant rule and Divide-and-Rank pass") {
  const auto g = three_blocks();
  const auto assigned = divide_and_rank_assign(g, {2, 1});
  const Mechanism constant = [](const Profile&) {
    return AggregateRanking({0, 1, 2, 3, 4, 5});
  };
  CHECK(check_sp_exhaustive(assigned.review_graph, g, constant).verdict);

  const auto mech = divide_and_rank_mechanism(assigned.partition);
  const auto report = check_sp_exhaustive(assigned.review_graph, g, mech);
  CHECK(report.verdict);
  CHECK(report.cases_checked > 0);
  CHECK(check_sp_exhaustive(assigned.review_graph, own_side_conflicts(assigned.partition),
                            mech)
            .verdict);
}

TEST_CASE("exhaustive SP finds a Borda manipulation on a connected assignment") {
  // Reviewer 0 authors paper 0 and reviews it alongside papers 1 and 2.
  const ConflictGraph g(2, 3, {{0, 0}});
  const ReviewGraph rg(3, {{0, 1, 2}, {0, 1, 2}});
  const Mechanism borda = [](const Profile& p) { return borda_aggregate(p, 3); };
  const auto report = check_sp_exhaustive(rg, g, borda);
  CHECK_FALSE(report.verdict);
  REQUIRE(report.witness.has_value());
  CHECK(report.witness->reviewer == 0);
  CHECK(report.witness->paper == 0);
  CHECK(replay_moves(borda, *report.witness));
}

TEST_CASE("exhaustive SP refuses oversized profile spaces") {
  std::vector<std::vector<PaperIndex>> sets(4, {0, 1, 2, 3, 4, 5, 6});
  const ReviewGraph rg(7, sets);
  const Mechanism constant = [](const Profile&) {
    return AggregateRanking({0, 1, 2, 3, 4, 5, 6});
  };
  CHECK_THROWS_AS(check_sp_exhaustive(rg, ConflictGraph(4, 7, {}), constant),
                  BudgetExceeded);
}

TEST_CASE("sampled SP") {
  const auto g = three_blocks();
  const auto assigned = divide_and_rank_assign(g, {2, 1});
  const auto mech = divide_and_rank_mechanism(assigned.partition);

  const auto none = check_sp_randomized(assigned.review_graph, g, mech, 0, 1);
  CHECK(none.verdict);
  CHECK(none.note.find("0 trials") != std::string::npos);

  const auto many = check_sp_randomized(assigned.review_graph, g, mech, 100000, 42);
  CHECK(many.verdict);
  CHECK(many.cases_checked == 100000);

  // Corrupt the assignment: reviewer 4 also reviews their own paper 4, and
  // the aggregator no longer respects the split.
  auto sets = assigned.review_graph.review_sets();
  sets[4].push_back(4);
  const ReviewGraph corrupted(6, sets);
  const auto whole = whole_set_contract_and_sort(6);
  const auto found = check_sp_randomized(corrupted, g, whole, 10000, 7);
  CHECK_FALSE(found.verdict);
  REQUIRE(found.witness.has_value());
  CHECK(replay_moves(whole, *found.witness));
}

TEST_CASE("own-side conflict graph") {
  const PartitionResult split{{{0}, {1, 2}}, {{1, 2}, {0}}};
  const auto g = own_side_conflicts(split);
  CHECK(g.num_reviewers() == 3);
  CHECK(g.num_papers() == 3);
  CHECK(g.conflicts() == std::vector<Conflict>{{0, 1}, {0, 2}, {1, 0}, {2, 0}});
}

TEST_CASE("relation graphs") {
  const ReviewGraph rg(5, {{0, 1, 2}, {2, 3}, {0, 1, 2}, {4}});
  const auto h = ReviewRelationGraph::build(rg);
  CHECK(h.adjacency[2] == std::vector<PaperIndex>{0, 1, 3});
  CHECK(h.adjacent(3, 2));
  CHECK_FALSE(h.adjacent(4, 4));
  const auto gp = PaperRelationGraph::build(rg);
  CHECK(gp.sets.size() == 3);
  CHECK(gp.edges.size() == 1);
  CHECK(gp.is_forest());
  CHECK(covering_reviewer(rg, {0, 2}) == 0);
  CHECK_FALSE(covering_reviewer(rg, {1, 3}).has_value());
}

TEST_CASE("cyclic unanimity witness on a triangle") {
  const ReviewGraph rg(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto w = cyclic_unanimity_witness(rg, {0, 1, 2});
  CHECK(w.profile == Profile{{0, 1}, {1, 2}, {2, 0}});
  CHECK(w.constraint_cycle == std::vector<PaperPair>{{0, 1}, {1, 2}, {2, 0}});
  const auto required = pu_required_pairs(rg, w.profile);
  CHECK_FALSE(oracle::exists_consistent_order(
      {0, 1, 2}, std::vector<std::pair<int, int>>(required.begin(), required.end())));
}

TEST_CASE("cyclic unanimity witness on the induced four-cycle") {
  // {j1, j3, j4} and {j2, j3, j4} with j1..j4 = 0..3.
  const ReviewGraph rg(4, {{0, 2, 3}, {1, 2, 3}});
  const auto w = cyclic_unanimity_witness(rg, {0, 2, 1, 3});
  check_profile_alignment(rg, w.profile);
  CHECK(w.profile[0] == Ranking{3, 0, 2});
  CHECK(w.profile[1] == Ranking{2, 1, 3});
  const auto required = pu_required_pairs(rg, w.profile);
  CHECK_FALSE(oracle::exists_consistent_order(
      {0, 1, 2, 3}, std::vector<std::pair<int, int>>(required.begin(), required.end())));
}

TEST_CASE("cyclic unanimity witness preconditions") {
  const ReviewGraph covered(3, {{0, 1, 2}});
  try {
    cyclic_unanimity_witness(covered, {0, 1, 2});
    FAIL("expected a contract violation");
  } catch (const ContractViolation& e) {
    CHECK(std::string(e.what()).find("reviewer 0") != std::string::npos);
  }
  const ReviewGraph path(3, {{0, 1}, {1, 2}});
  CHECK_THROWS_AS(cyclic_unanimity_witness(path, {0, 1, 2}), ContractViolation);
  CHECK_THROWS_AS(cyclic_unanimity_witness(path, {0, 1}), ContractViolation);
  CHECK_THROWS_AS(cyclic_unanimity_witness(path, {0, 1, 1}), ContractViolation);
}

TEST_CASE("PU conditions: identical review sets pass") {
  const ReviewGraph rg(3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  const auto report = check_pu_conditions(rg);
  CHECK(report.long_cycle_free);
  CHECK(report.intersections_ok);
  CHECK(report.distinct_sets_ok);
  CHECK(report.distinct_sets == 1);
  CHECK_FALSE(report.pu_impossible());
}

TEST_CASE("PU conditions: two sets sharing two of three papers") {
  const ReviewGraph rg(4, {{0, 2, 3}, {1, 2, 3}});
  const auto report = check_pu_conditions(rg);
  CHECK_FALSE(report.intersections_ok);
  CHECK(report.pu_impossible());
  REQUIRE(report.induced_cycle.has_value());
  CHECK(*report.induced_cycle == std::vector<PaperIndex>{0, 2, 1, 3});
  CHECK_NOTHROW(cyclic_unanimity_witness(rg, *report.induced_cycle));
  CHECK_FALSE(report.long_cycle_free);
}

TEST_CASE("PU conditions: a chain of sets sharing single papers passes") {
  const ReviewGraph rg(7, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}});
  const auto report = check_pu_conditions(rg);
  CHECK(report.long_cycle_free);
  CHECK(report.long_cycle_search_exhausted);
  CHECK(report.intersections_ok);
  CHECK(report.distinct_sets_ok);
  CHECK(report.paper_relation_forest);
  CHECK_FALSE(report.pu_impossible());
}

TEST_CASE("PU conditions: too many distinct sets") {
  // Four pairwise-disjoint-ish sets of size 2 over 4 papers: 4 * 1 > 3.
  const ReviewGraph rg(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const auto report = check_pu_conditions(rg);
  CHECK_FALSE(report.distinct_sets_ok);
  CHECK_FALSE(report.long_cycle_free);  // the 4-cycle itself
}

TEST_CASE("PU conditions reject non-uniform sizes") {
  CHECK_THROWS_AS(check_pu_conditions(ReviewGraph(3, {{0, 1}, {0, 1, 2}})), ContractViolation);
  CHECK_THROWS_AS(check_pu_conditions(ReviewGraph(3, {{0}, {1}})), ContractViolation);
}

TEST_CASE("report serialization uses labels") {
  const ReviewGraph rg(3, {{A, B}, {B, C}});
  const Profile profile{{A, B}, {B, C}};
  const auto report = check_gu(rg, profile, AggregateRanking({C, A, B}));
  const Labels labels{{"ann", "bo"}, {"x", "y", "z"}};
  const auto doc = nlohmann::json::parse(serialize(report, labels));
  CHECK(doc["property"] == "GU");
  CHECK(doc["verdict"] == false);
  CHECK(doc["witness"]["pair"] == nlohmann::json::array({"y", "z"}));
}
