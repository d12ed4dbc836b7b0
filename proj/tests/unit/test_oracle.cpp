#include <doctest.h>

#include <stdexcept>

#include "rmab/oracle.hpp"

using namespace rmab;

namespace {
std::vector<ComponentSpec> homogeneous(std::size_t n, double q) {
  return std::vector<ComponentSpec>(n, ComponentSpec(AttackProcess::markov(q), 1.0));
}

std::vector<ComponentSpec> fig3() {
  const std::vector<std::vector<double>> tables = {{0.5, 0.7, 0.85, 0.95, 0.97, 0.975},
                                                   {0.3, 0.4, 0.48, 0.54, 0.57, 0.59},
                                                   {0.36, 0.46, 0.5, 0.53, 0.55, 0.56},
                                                   {0.6, 0.78, 0.9, 0.96, 0.98, 0.99}};
  const std::vector<double> costs = {0.8, 1.0, 1.2, 0.9};
  std::vector<ComponentSpec> specs;
  for (std::size_t n = 0; n < 4; ++n) specs.emplace_back(AttackProcess::table(tables[n]), costs[n]);
  return specs;
}
}  // namespace

TEST_CASE("single slot costs the summed beliefs") {
  const std::vector<ComponentSpec> specs = {ComponentSpec(AttackProcess::markov(0.5), 1.0),
                                            ComponentSpec(AttackProcess::markov(0.3), 1.0)};
  const JointState start(2, kFreshArm);
  CHECK(dp_optimal(specs, start, 1, 1).total_cost == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(policy_evaluate_exact(specs, start, 1, 1, whittle_rule()) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(policy_evaluate_exact(specs, start, 1, 1, myopic_rule()) == doctest::Approx(0.8).epsilon(1e-15));
}

// Reference values from an exact rational brute force over all K-subsets.
TEST_CASE("fig3 instance") {
  const auto specs = fig3();
  const JointState start(4, kFreshArm);
  const double optimal[] = {1.672, 3.4, 5.2048, 7.00592, 8.866918336, 10.6739048};
  const double whittle[] = {1.672, 3.4, 5.2048, 7.06712, 8.891056, 10.761784};
  const double myopic[] = {1.672, 3.4, 5.2048, 7.04552, 8.889472, 10.813472};
  for (std::size_t t = 1; t <= 6; ++t) {
    CHECK(dp_optimal(specs, start, 1, t).total_cost == doctest::Approx(optimal[t - 1]).epsilon(1e-12));
    CHECK(policy_evaluate_exact(specs, start, 1, t, whittle_rule()) ==
          doctest::Approx(whittle[t - 1]).epsilon(1e-12));
    CHECK(policy_evaluate_exact(specs, start, 1, t, myopic_rule()) == doctest::Approx(myopic[t - 1]).epsilon(1e-12));
  }
}

TEST_CASE("homogeneous instances") {
  {
    const auto specs = homogeneous(3, 0.3);
    const JointState start(3, kFreshArm);
    const double opt = dp_optimal(specs, start, 1, 6).total_cost;
    CHECK(opt == doctest::Approx(6.636993).epsilon(1e-12));
    CHECK(policy_evaluate_exact(specs, start, 1, 6, whittle_rule()) == doctest::Approx(opt).epsilon(1e-12));
  }
  CHECK(dp_optimal(homogeneous(4, 0.5), JointState(4, kFreshArm), 2, 5).total_cost == doctest::Approx(8.625));
  CHECK(dp_optimal(homogeneous(2, 0.5), JointState(2, kFreshArm), 1, 3).total_cost == doctest::Approx(2.75));
}

TEST_CASE("slot costs add up and stay within the cost ceiling") {
  const auto specs = fig3();
  const DpResult r = dp_optimal(specs, JointState(4, kFreshArm), 1, 5);
  REQUIRE(r.slot_costs.size() == 5);
  double sum = 0.0;
  for (double c : r.slot_costs) {
    CHECK(c >= 0.0);
    CHECK(c <= 0.8 + 1.0 + 1.2 + 0.9);
    sum += c;
  }
  CHECK(sum == doctest::Approx(r.total_cost).epsilon(1e-12));
  REQUIRE_FALSE(r.table.empty());
  CHECK(r.table.front().slot == 0);
  CHECK(r.table.front().expected_cost == doctest::Approx(r.total_cost).epsilon(1e-12));
  CHECK(r.table.front().action.size() == 1);
}

TEST_CASE("zero-hazard components cost nothing") {
  const std::vector<ComponentSpec> specs(3, ComponentSpec(AttackProcess::table({0.0}), 2.0));
  const JointState start(3, kFreshArm);
  CHECK(dp_optimal(specs, start, 1, 5).total_cost == 0.0);
  CHECK(policy_evaluate_exact(specs, start, 2, 5, whittle_rule()) == 0.0);
}

TEST_CASE("search-space guard") {
  const auto specs = fig3();
  const JointState start(4, kFreshArm);
  CHECK_THROWS_AS(dp_optimal(specs, start, 1, 6, 50), GuardError);
  CHECK_THROWS_AS(policy_evaluate_exact(specs, start, 1, 6, whittle_rule(), 5), GuardError);
  try {
    dp_optimal(specs, start, 1, 6, 50);
  } catch (const GuardError& e) {
    CHECK(e.state_count() > 50);
  }
}

TEST_CASE("value monotonicity") {
  CHECK(value_monotonicity_probe(homogeneous(3, 0.3), 1, 4, 100));
  CHECK(value_monotonicity_probe(homogeneous(3, 0.3), 1, 1, 20));
  CHECK(value_monotonicity_probe(homogeneous(1, 0.4), 1, 5, 20));
}

TEST_CASE("single-arm subsidy dp") {
  const ComponentSpec spec(AttackProcess::markov(0.5), 1.0);
  // one slot left: passive earns lambda - c p(t), active earns -c p(t)
  const auto q = single_arm_subsidy_dp(spec, {0, 2}, 0.3, 1);
  CHECK(q.passive == doctest::Approx(0.3 - 0.75));
  CHECK(q.active == doctest::Approx(-0.75));
}
