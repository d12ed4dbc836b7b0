#pragma once

#include <cstddef>
#include <optional>

#include "rmab/attack_model.hpp"

namespace rmab {

/// Sufficient statistic of one arm: the last observed component state `i`
/// and the number of slots `t` since that observation.
///
/// (1, t) and (0, t-1) share belief, dynamics and index, so most code works
/// with the effective delay t - i. The pair (0, 0) is only used as the origin
/// of the index and never appears in a trajectory.
struct ArmState {
  int i = 0;
  std::size_t t = 1;

  std::size_t delay() const { return t - static_cast<std::size_t>(i); }
  friend bool operator==(const ArmState&, const ArmState&) = default;
};

enum class Action { passive = 0, active = 1 };

/// Initial state of a component patched one slot before the horizon starts.
inline constexpr ArmState kFreshArm{0, 1};

ArmState make_arm_state(int i, std::size_t t);

/// Pr(component abnormal now | arm state) = p(t) if i = 0, p(t-1) if i = 1.
double belief_abnormal(const ComponentSpec& spec, ArmState state);

/// One-step update of the arm state. An observation must be supplied exactly
/// when the arm is probed.
ArmState transition(ArmState state, Action action, std::optional<int> observation);

}  // namespace rmab
