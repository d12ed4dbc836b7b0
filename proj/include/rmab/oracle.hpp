#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rmab/arm.hpp"
#include "rmab/policies.hpp"

namespace rmab {

using JointState = std::vector<ArmState>;

inline constexpr std::size_t kDefaultStateBound = 10'000'000;

/// Raised when an exact enumeration would exceed the configured bound.
class GuardError : public std::runtime_error {
 public:
  GuardError(std::size_t state_count, std::size_t bound);
  std::size_t state_count() const { return state_count_; }

 private:
  std::size_t state_count_;
};

/// Deterministic selection rule, a function of the current arm states only.
using SelectionRule =
    std::function<Selection(std::span<const ComponentSpec>, std::span<const ArmState>, std::size_t)>;

SelectionRule whittle_rule();
SelectionRule myopic_rule();

struct PolicyEntry {
  std::size_t slot;  // zero-based decision epoch
  JointState state;
  double expected_cost;  // from this slot to the horizon
  Selection action;
};

struct DpResult {
  double total_cost;
  std::vector<double> slot_costs;  // expected cost per slot under the optimal policy
  std::vector<PolicyEntry> table;
};

/// Minimal expected total cost over `horizon` slots by backward induction
/// over the joint states reachable from `initial`.
DpResult dp_optimal(std::span<const ComponentSpec> specs, const JointState& initial, std::size_t k,
                    std::size_t horizon, std::size_t state_bound = kDefaultStateBound);

/// Exact expected total cost of a deterministic rule, by propagating the
/// probability mass over the observation tree.
double policy_evaluate_exact(std::span<const ComponentSpec> specs, const JointState& initial, std::size_t k,
                             std::size_t horizon, const SelectionRule& rule,
                             std::size_t state_bound = kDefaultStateBound);

/// Random search for a violation of "the Whittle value is nondecreasing in
/// each arm's abnormal belief". True when none is found.
bool value_monotonicity_probe(std::span<const ComponentSpec> specs, std::size_t k, std::size_t horizon,
                              std::size_t trials, std::uint64_t seed = 1,
                              std::size_t state_bound = kDefaultStateBound);

/// Q-values of the first decision of a single arm with passivity subsidy
/// `lambda` over `horizon` slots, rewards being subsidy minus cost.
struct SubsidyQ {
  double passive;
  double active;
  double gap() const { return passive > active ? passive - active : active - passive; }
};

SubsidyQ single_arm_subsidy_dp(const ComponentSpec& spec, ArmState state, double lambda, std::size_t horizon);

}  // namespace rmab
