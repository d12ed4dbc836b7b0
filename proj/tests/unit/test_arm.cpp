#include <doctest.h>

#include <stdexcept>

#include "rmab/arm.hpp"

using namespace rmab;

namespace {
const ComponentSpec kFig2(AttackProcess::table({0.5, 0.7, 0.85, 0.95, 0.97, 0.975, 0.978, 0.98}), 1.0);
const ComponentSpec kHalf(AttackProcess::markov(0.5), 1.0);
}

TEST_CASE("belief_abnormal") {
  CHECK(belief_abnormal(kHalf, {1, 1}) == 0.0);
  CHECK(belief_abnormal(kFig2, {1, 1}) == 0.0);
  CHECK(belief_abnormal(kHalf, {0, 2}) == doctest::Approx(0.75));
  CHECK(belief_abnormal(kFig2, {1, 3}) == 0.7);
  // (1,t) and (0,t-1) carry the same belief
  for (std::size_t t = 2; t < 12; ++t) CHECK(belief_abnormal(kFig2, {1, t}) == belief_abnormal(kFig2, {0, t - 1}));
}

TEST_CASE("transition") {
  CHECK(transition({0, 5}, Action::active, 0) == ArmState{0, 1});
  CHECK(transition({0, 5}, Action::active, 1) == ArmState{1, 1});
  CHECK(transition({1, 2}, Action::passive, std::nullopt) == ArmState{1, 3});
  CHECK_THROWS_AS(transition({0, 5}, Action::active, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(transition({0, 5}, Action::passive, 1), std::invalid_argument);
  CHECK_THROWS_AS(transition({0, 5}, Action::active, 2), std::invalid_argument);
}

TEST_CASE("make_arm_state") {
  CHECK(make_arm_state(1, 4) == ArmState{1, 4});
  CHECK_THROWS_AS(make_arm_state(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_arm_state(0, 0), std::invalid_argument);
  CHECK(kFreshArm.delay() == 1);
}
