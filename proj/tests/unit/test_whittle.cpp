#include <doctest.h>

#include <stdexcept>

#include "rmab/oracle.hpp"
#include "rmab/whittle.hpp"

using namespace rmab;

namespace {
const ComponentSpec kFig2(AttackProcess::table({0.5, 0.7, 0.85, 0.95, 0.97, 0.975, 0.978, 0.98}), 1.0);
const ComponentSpec kHalf(AttackProcess::markov(0.5), 1.0);
}

TEST_CASE("index values") {
  CHECK(whittle_index_delay(kHalf, 0) == 0.0);
  CHECK(whittle_index(kHalf, {1, 1}) == 0.0);
  CHECK(whittle_index(kFig2, {1, 1}) == 0.0);
  CHECK(whittle_index(kHalf, {0, 1}) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(whittle_index(kHalf, {0, 2}) == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
  CHECK(whittle_index(kHalf, {0, 3}) == doctest::Approx(22.0 / 17.0).epsilon(1e-14));
  CHECK(whittle_index(kFig2, {0, 1}) == doctest::Approx(0.375).epsilon(1e-14));
}

TEST_CASE("fig2 curve against exact rational evaluation") {
  const double expected[] = {0.0,
                             0.375,
                             0.7956521739130434,
                             1.275,
                             1.7073529411764705,
                             1.8217910447761194,
                             1.8561465603190428,
                             1.8798343313373254};
  for (std::size_t e = 0; e < 8; ++e) CHECK(whittle_index_delay(kFig2, e) == doctest::Approx(expected[e]).epsilon(1e-12));
}

TEST_CASE("W(1,t) = W(0,t-1) exactly") {
  for (std::size_t t = 1; t <= 50; ++t) {
    CHECK(whittle_index(kFig2, {1, t}) == whittle_index(kFig2, {0, t - 1}));
    CHECK(whittle_index(kHalf, {1, t}) == whittle_index(kHalf, {0, t - 1}));
  }
}

TEST_CASE("cost scales the index linearly") {
  const ComponentSpec twice(kFig2.process, 2.0);
  for (std::size_t e = 0; e < 12; ++e) CHECK(whittle_index_delay(twice, e) == 2.0 * whittle_index_delay(kFig2, e));
}

TEST_CASE("markov index tends to c/q") {
  const ComponentSpec spec(AttackProcess::markov(0.3), 1.5);
  CHECK(whittle_index_delay(spec, 400) == doctest::Approx(1.5 / 0.3).epsilon(1e-9));
}

TEST_CASE("strict indexability") {
  CHECK(verify_strict_indexability(kHalf, 30));
  CHECK(verify_strict_indexability(kFig2, 7));
  CHECK_FALSE(verify_strict_indexability(ComponentSpec(AttackProcess::table({0.5}), 1.0), 3));
}

TEST_CASE("index_table") {
  const auto rows = index_table(kHalf, 2);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].state == ArmState{0, 1});
  CHECK(rows[0].index == doctest::Approx(0.4));
  CHECK(rows[1].state == ArmState{0, 2});
  CHECK(rows[1].index == doctest::Approx(8.0 / 9.0));
  CHECK(rows[2].state == ArmState{1, 1});
  CHECK(rows[2].index == 0.0);
  CHECK(rows[3].state == ArmState{1, 2});
  CHECK(rows[3].index == rows[0].index);

  const auto one = index_table(kFig2, 1);
  REQUIRE(one.size() == 2);
  CHECK(one[1].index == 0.0);

  const auto fig2 = index_table(kFig2, 7);
  REQUIRE(fig2.size() == 14);
  for (std::size_t t = 2; t <= 7; ++t) CHECK(fig2[7 + t - 1].index == fig2[t - 2].index);
}

TEST_CASE("index is the indifference subsidy of the single-arm problem") {
  for (std::size_t e = 1; e <= 4; ++e) {
    const double w = whittle_index_delay(kFig2, e);
    CHECK(single_arm_subsidy_dp(kFig2, {0, e}, w, 200).gap() <= 1e-3);
    // away from the index the preference is strict
    const auto below = single_arm_subsidy_dp(kFig2, {0, e}, w - 0.05, 200);
    CHECK(below.active > below.passive);
    const auto above = single_arm_subsidy_dp(kFig2, {0, e}, w + 0.05, 200);
    CHECK(above.passive > above.active);
  }
}
