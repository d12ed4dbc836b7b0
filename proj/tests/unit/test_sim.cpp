#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rmab/oracle.hpp"
#include "rmab/sim.hpp"

using namespace rmab;

TEST_CASE("zero hazards cost nothing") {
  const std::vector<ComponentSpec> specs(3, ComponentSpec(AttackProcess::table({0.0}), 1.0));
  RunConfig rc{specs, 1, 50, PolicyKind::random, 20, 9, {}};
  const CostTrajectory t = run(rc);
  for (double v : t.mean_cumulative) CHECK(v == 0.0);
}

TEST_CASE("world_step charges before repair") {
  const std::vector<ComponentSpec> specs = {ComponentSpec(AttackProcess::markov(0.5), 3.0),
                                            ComponentSpec(AttackProcess::table({0.0}), 1.0)};
  StreamSet streams(1, 0, 2);
  WorldState world{{1, 0}, {4, 1}};
  const StepResult r = world_step(specs, world, {0}, streams);
  CHECK(r.cost == 3.0);
  REQUIRE(r.observations.size() == 1);
  CHECK(r.observations[0] == 1);
  CHECK(world.abnormal[0] == 0);
  CHECK(world.abnormal[1] == 0);
}

TEST_CASE("abnormal components stay abnormal until probed") {
  const std::vector<ComponentSpec> specs = {ComponentSpec(AttackProcess::markov(0.5), 1.0)};
  StreamSet streams(5, 0, 1);
  WorldState world{{1}, {2}};
  for (int s = 0; s < 20; ++s) CHECK(world_step(specs, world, {}, streams).cost == 1.0);
}

TEST_CASE("run is deterministic and well formed") {
  const std::vector<ComponentSpec> specs = {ComponentSpec(AttackProcess::markov(0.2), 2.0),
                                            ComponentSpec(AttackProcess::markov(0.5), 1.0),
                                            ComponentSpec(AttackProcess::markov(0.7), 0.5)};
  RunConfig rc{specs, 1, 40, PolicyKind::whittle, 130, 77, {}};
  const CostTrajectory a = run(rc), b = run(rc);
  CHECK(a.mean_cumulative == b.mean_cumulative);
  CHECK(a.stderr_cumulative == b.stderr_cumulative);
  for (std::size_t s = 1; s < a.mean_cumulative.size(); ++s) {
    CHECK(a.mean_cumulative[s] >= a.mean_cumulative[s - 1]);
    CHECK(a.mean_cumulative[s] - a.mean_cumulative[s - 1] <= 3.5);
  }
  rc.seed = 78;
  CHECK(run(rc).mean_cumulative != a.mean_cumulative);
  // a replication path does not depend on how many replications run
  rc.seed = 77;
  const auto path = run_replication(rc, 3);
  rc.replications = 4;
  CHECK(run_replication(rc, 3) == path);
}

TEST_CASE("single unprobed arm follows the marginal") {
  const ComponentSpec spec(AttackProcess::table({0.1, 0.25, 0.3, 0.6, 0.61, 0.9}), 1.0);
  const std::vector<ComponentSpec> specs = {spec};
  const std::size_t reps = 100000;
  std::vector<std::size_t> hits(8, 0);
  for (std::size_t r = 0; r < reps; ++r) {
    StreamSet streams(4, r, 1);
    const std::vector<ArmState> start = {kFreshArm};
    WorldState world = sample_world(specs, start, streams);
    for (std::size_t t = 1; t <= 8; ++t) hits[t - 1] += static_cast<std::size_t>(world_step(specs, world, {}, streams).cost);
  }
  for (std::size_t t = 1; t <= 8; ++t) {
    const double p = marginal_p(spec.process, t);
    CHECK(std::abs(double(hits[t - 1]) / reps - p) <= 3 * std::sqrt(p * (1 - p) / reps));
  }
}

TEST_CASE("monte carlo mean agrees with exact evaluation") {
  const std::vector<ComponentSpec> specs = {ComponentSpec(AttackProcess::table({0.5, 0.7, 0.85, 0.95}), 0.8),
                                            ComponentSpec(AttackProcess::table({0.3, 0.4, 0.48}), 1.0),
                                            ComponentSpec(AttackProcess::markov(0.4), 1.2)};
  const JointState start = {{0, 1}, {1, 2}, {0, 3}};
  for (PolicyKind p : {PolicyKind::whittle, PolicyKind::myopic}) {
    RunConfig rc{specs, 1, 6, p, 40000, 21, start};
    const CostTrajectory t = run(rc);
    const double exact =
        policy_evaluate_exact(specs, start, 1, 6, p == PolicyKind::whittle ? whittle_rule() : myopic_rule());
    CHECK(std::abs(t.mean_cumulative.back() - exact) <= 4 * t.stderr_cumulative.back());
  }
}

TEST_CASE("relaxed policy hits its activation budget") {
  const std::vector<ComponentSpec> specs = {ComponentSpec(AttackProcess::markov(0.2), 2.0),
                                            ComponentSpec(AttackProcess::markov(0.5), 1.0),
                                            ComponentSpec(AttackProcess::markov(0.7), 0.5),
                                            ComponentSpec(AttackProcess::markov(0.35), 1.5)};
  const RelaxedPlan plan = solve_lambda_star(specs, 2);
  const RelaxedRunStats st = simulate_relaxed(specs, plan, 200000, 5);
  CHECK(st.mean_activations == doctest::Approx(2.0).epsilon(0.01));
  CHECK(st.mean_cost == doctest::Approx(relaxed_average_cost(specs, plan)).epsilon(0.01));
}
