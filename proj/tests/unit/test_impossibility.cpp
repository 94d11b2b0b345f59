#include <algorithm>
#include <cmath>
#include <numeric>

#include "divrank/aggregate.hpp"
#include "divrank/error.hpp"
#include "divrank/impossibility.hpp"
#include "divrank/random.hpp"
#include "divrank/verify.hpp"
#include "doctest.h"

using namespace divrank;

TEST_CASE("influence graph of simple rules") {
  const auto constant = RuleTable::constant(2, 2);
  const auto none = influence_graph(constant);
  CHECK(none.degree(0) == 0);
  CHECK(none.degree(1) == 0);
  CHECK(none.is_wsp());

  const auto dictator = RuleTable::from_mechanism(
      2, 2, [](const Profile& p) { return AggregateRanking(p[0]); });
  const auto dg = influence_graph(dictator);
  CHECK(dg.has_edge(0, 0));
  CHECK(dg.has_edge(0, 1));
  CHECK(dg.degree(1) == 0);
  CHECK_FALSE(dg.is_wsp());

  const auto borda = RuleTable::from_mechanism(
      2, 2, [](const Profile& p) { return borda_aggregate(p, 2); });
  const auto bg = influence_graph(borda);
  CHECK(bg.degree(0) == 2);
  CHECK(bg.degree(1) == 2);
}

TEST_CASE("influence graph refuses oversized tables") {
  const auto table = RuleTable::constant(3, 3);
  CHECK_THROWS_AS(influence_graph(table, 100), BudgetExceeded);
}

TEST_CASE("total-ranking census, two papers") {
  const auto two = total_ranking_census(2, 2);
  CHECK(two.in_scope);
  CHECK(two.num_profiles == 4);
  CHECK(two.num_rules == 16);
  CHECK(two.num_pu_rules == 4);  // 2^(non-unanimous profiles)
  CHECK(two.num_pu_and_wsp_rules == 0);

  const auto three = total_ranking_census(2, 3);
  CHECK(three.num_rules == 256);
  CHECK(three.num_pu_rules == 64);  // 2^6 non-unanimous profiles
  CHECK(three.num_pu_and_wsp_rules == 0);
}

TEST_CASE("total-ranking census scope and budget") {
  const auto one = total_ranking_census(1, 3);
  CHECK_FALSE(one.in_scope);
  CHECK(one.num_rules == 1);
  CHECK(one.num_pu_and_wsp_rules == 1);
  CHECK_THROWS_AS(total_ranking_census(3, 2), BudgetExceeded);
}

TEST_CASE("chain instance: GU and WSP cannot both hold") {
  const auto cert = certify_chain_instance();
  CHECK_FALSE(cert.strict.satisfiable);
  CHECK(cert.strict.stats.immune_choices == 64);
  CHECK_FALSE(cert.per_pair.satisfiable);

  CHECK(cert.without_wsp.satisfiable);
  CHECK(cert.without_wsp_verified);
  // The GU-only witness is Contract-and-Sort on every profile.
  const auto rg = chain_instance();
  const ProfileSpace space(rg);
  const std::vector<PaperIndex> papers{0, 1, 2, 3};
  for (std::size_t k = 0; k < cert.without_wsp.profiles.size(); ++k) {
    const auto profile = space.at(cert.without_wsp.profiles[k]);
    CHECK(cert.without_wsp.outputs[k].order() == contract_and_sort(papers, profile));
  }

  CHECK(cert.without_gu.satisfiable);
  CHECK(cert.without_gu_verified);
  for (const auto& out : cert.without_gu.outputs) CHECK(out == cert.without_gu.outputs[0]);

  // Profiles all-forward (0), all-reversed (7), first reviewer reversed (1)
  // and first two reversed (3) form a minimal core.
  const std::vector<std::uint64_t> expected{0, 1, 3, 7};
  CHECK(std::find(cert.minimal_cores.begin(), cert.minimal_cores.end(), expected) !=
        cert.minimal_cores.end());
}

TEST_CASE("rule witness verification rejects a broken rule") {
  const auto rg = chain_instance();
  const RuleSearchOptions options{true, WspMode::kNone, {}};
  auto result = search_rules(rg, options);
  REQUIRE(result.satisfiable);
  CHECK(verify_rule_witness(rg, options, result));
  // All-forward profile demands 0 > 1 > 2 > 3; reverse it.
  result.outputs[0] = AggregateRanking({3, 2, 1, 0});
  CHECK_FALSE(verify_rule_witness(rg, options, result));
}

TEST_CASE("misplacement bound formula") {
  CHECK(misplacement_bound(1000, 2.0, 0.05) ==
        doctest::Approx(2.0 * std::sqrt(2000.0 * std::log(40000.0))));
  CHECK(misplacement_bound(1000, 2.0, 0.05) == doctest::Approx(291.16).epsilon(1e-3));
}

TEST_CASE("misplacement simulation is deterministic and within the bound") {
  const auto a = misplacement_monte_carlo(200, 100, 0.05, 300, 99);
  const auto b = misplacement_monte_carlo(200, 100, 0.05, 300, 99);
  CHECK(serialize(a) == serialize(b));
  CHECK(a.c == doctest::Approx(2.0));
  CHECK(a.violation_rate <= 0.05);
  CHECK(a.max_observed > 0);
  const auto other = misplacement_monte_carlo(200, 100, 0.05, 300, 100);
  CHECK(serialize(other) != serialize(a));
}

TEST_CASE("misplacement preconditions") {
  CHECK_THROWS_AS(misplacement_monte_carlo(100, 100, 0.05, 1, 1), ContractViolation);
  CHECK_THROWS_AS(misplacement_monte_carlo(100, 0, 0.05, 1, 1), ContractViolation);
  CHECK_THROWS_AS(misplacement_monte_carlo(100, 50, 1.0, 1, 1), ContractViolation);
  CHECK_THROWS_AS(misplacement_monte_carlo(100, 50, 0.0, 1, 1), ContractViolation);
  CHECK_THROWS_AS(misplacement_monte_carlo(5, 2, 0.05, 1, 1), ContractViolation);
}

TEST_CASE("displacement is invariant under relabeling papers") {
  Rng rng(12);
  const int n = 40;
  for (int trial = 0; trial < 100; ++trial) {
    Ranking truth(n);
    std::iota(truth.begin(), truth.end(), 0);
    rng.shuffle(std::span<PaperIndex>(truth));
    std::vector<char> in_c(n, 0);
    for (int p = 0; p < 25; ++p) in_c[static_cast<std::size_t>(truth[static_cast<std::size_t>(rng.below(n))])] = 1;
    Ranking relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    rng.shuffle(std::span<PaperIndex>(relabel));

    auto displacement = [&](const Ranking& t, auto side_of) {
      Ranking c;
      Ranking cbar;
      for (PaperIndex p : t) (side_of(p) ? c : cbar).push_back(p);
      return max_displacement(t, interleave(c, cbar, n));
    };
    Ranking renamed;
    for (PaperIndex p : truth) renamed.push_back(relabel[static_cast<std::size_t>(p)]);
    std::vector<char> renamed_c(n, 0);
    for (int p = 0; p < n; ++p) {
      renamed_c[static_cast<std::size_t>(relabel[static_cast<std::size_t>(p)])] =
          in_c[static_cast<std::size_t>(p)];
    }
    CHECK(displacement(truth, [&](PaperIndex p) { return in_c[static_cast<std::size_t>(p)] != 0; }) ==
          displacement(renamed,
                       [&](PaperIndex p) { return renamed_c[static_cast<std::size_t>(p)] != 0; }));
  }
}
