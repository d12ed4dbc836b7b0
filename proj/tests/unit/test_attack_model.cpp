#include <doctest.h>

#include <stdexcept>

#include "rmab/attack_model.hpp"

using namespace rmab;

namespace {
const std::vector<double> kFig2 = {0.5, 0.7, 0.85, 0.95, 0.97, 0.975, 0.978, 0.98};
}

TEST_CASE("marginal_p") {
  CHECK(marginal_p(AttackProcess::markov(0.5), 2) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(marginal_p(AttackProcess::markov(0.5), 0) == 0.0);
  CHECK(marginal_p(AttackProcess::table(kFig2), 0) == 0.0);
  CHECK(marginal_p(AttackProcess::table(kFig2), 3) == 0.85);
  // clamped past the table end
  CHECK(marginal_p(AttackProcess::table(kFig2), 8) == 0.98);
  CHECK(marginal_p(AttackProcess::table(kFig2), 500) == 0.98);
}

TEST_CASE("marginal_p is nondecreasing and bounded") {
  const auto m = AttackProcess::markov(0.13);
  double prev = 0.0;
  for (std::size_t t = 0; t < 200; ++t) {
    const double v = marginal_p(m, t);
    CHECK(v >= prev);
    CHECK(v <= 1.0);
    prev = v;
  }
  CHECK(AttackProcess::table(kFig2).limit() == 0.98);
  CHECK(m.limit() == 1.0);
}

TEST_CASE("hazard") {
  for (std::size_t t = 1; t < 30; ++t) CHECK(hazard(AttackProcess::markov(0.3), t) == 0.3);
  CHECK(hazard(AttackProcess::table(kFig2), 1) == doctest::Approx(0.5));
  CHECK(hazard(AttackProcess::table(kFig2), 2) == doctest::Approx(0.4));
  // past the table the increments vanish
  CHECK(hazard(AttackProcess::table(kFig2), 9) == 0.0);
  CHECK(hazard(AttackProcess::table({0.4, 1.0, 1.0}), 3) == 1.0);
  CHECK_THROWS_AS(hazard(AttackProcess::table(kFig2), 0), std::invalid_argument);
}

TEST_CASE("hazards reproduce the marginals") {
  const auto table = AttackProcess::table({0.1, 0.25, 0.3, 0.6, 0.61, 0.9});
  double healthy = 1.0;
  for (std::size_t t = 1; t <= 10; ++t) {
    healthy *= 1.0 - hazard(table, t);
    CHECK(1.0 - healthy == doctest::Approx(marginal_p(table, t)).epsilon(1e-12));
  }
}

TEST_CASE("check_c1") {
  CHECK(check_c1(AttackProcess::markov(0.5), 20));
  CHECK(check_c1(AttackProcess::table(kFig2), 8));
  // the ninth increment is zero once the table clamps
  CHECK_FALSE(check_c1(AttackProcess::table(kFig2), 9));
  CHECK_FALSE(check_c1(AttackProcess::table({0.5, 0.5, 0.5}), 3));
  // increments 0.2, 0.3: not decreasing
  CHECK_FALSE(check_c1(AttackProcess::table({0.2, 0.5, 0.6}), 2));
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(AttackProcess::markov(0.0), std::invalid_argument);
  CHECK_THROWS_AS(AttackProcess::markov(1.0), std::invalid_argument);
  CHECK_THROWS_AS(AttackProcess::table({}), std::invalid_argument);
  CHECK_THROWS_AS(AttackProcess::table({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(AttackProcess::table({0.5, 1.2}), std::invalid_argument);
  CHECK_THROWS_AS(ComponentSpec(AttackProcess::markov(0.2), -1.0), std::invalid_argument);
  CHECK_NOTHROW(ComponentSpec(AttackProcess::markov(0.2), 0.0));
}
