#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "rmab/arm.hpp"
#include "rmab/policies.hpp"

namespace rmab {

inline constexpr std::size_t kDefaultStoppingCap = 10000;

/// Optimal probe delays of the single arm under passivity subsidy lambda:
/// t0 after a healthy observation, t1 after an abnormal one.
struct SubsidyPolicy {
  std::size_t t0_star;
  std::size_t t1_star;
};

struct GainResult {
  double g;  // long-run average reward per slot (subsidy minus cost)
  std::size_t t0_star;
};

/// argmax over t0 in [1, t_cap] of
///   (lambda (t0 - 1 + p(t0)) - c sum_{k<=t0} p(k)) / (t0 + p(t0)),
/// smallest maximiser on ties. lambda < 0 gives t0 = t1 = 1.
SubsidyPolicy optimal_stopping(const ComponentSpec& spec, double lambda, std::size_t t_cap = kDefaultStoppingCap);

GainResult gain(const ComponentSpec& spec, double lambda, std::size_t t_cap = kDefaultStoppingCap);

/// Long-run fraction of active slots, 1 / (t0* + p(t0*)).
double activation_rate(const ComponentSpec& spec, double lambda, std::size_t t_cap = kDefaultStoppingCap);

/// A subsidy value at which the optimal healthy-observation delay jumps from
/// `before` to `after`.
struct StoppingBreakpoint {
  double lambda;
  std::size_t before;
  std::size_t after;
};

/// Kinks of g(lambda) (the upper envelope of the per-delay reward lines),
/// in increasing lambda. Under C1 the k-th breakpoint is W(0,k).
std::vector<StoppingBreakpoint> stopping_breakpoints(const ComponentSpec& spec,
                                                     std::size_t t_cap = kDefaultStoppingCap);

/// Per-arm threshold rule at lambda*, in effective delay e = t - i:
/// probe when e >= active_from, probe with probability `mixing` when
/// mix_from <= e < active_from, stay passive otherwise.
struct ArmPlan {
  std::size_t mix_from;
  std::size_t active_from;
  double mixing;
  double activation_rate;  // with mixing applied
  std::size_t t0_star;     // optimal_stopping at lambda*
};

struct RelaxedPlan {
  double lambda_star;
  std::vector<ArmPlan> arms;
  double total_rate() const;
};

struct ThresholdRates {
  double activation;  // probes per slot
  double cost;        // expected abnormal cost per slot
};

/// Exact renewal rates of one arm running a threshold rule.
ThresholdRates threshold_rates(const ComponentSpec& spec, std::size_t mix_from, std::size_t active_from,
                               double mixing);

/// Optimal subsidy of the average-constraint relaxation: the smallest
/// lambda >= 0 at which the summed activation rate drops to K, with boundary
/// mixing so the mixed rate equals K.
RelaxedPlan solve_lambda_star(std::span<const ComponentSpec> specs, std::size_t k,
                              std::size_t t_cap = kDefaultStoppingCap);

/// Arms active this slot under the relaxed-constraint policy (any number).
Selection relaxed_select(std::span<const ComponentSpec> specs, std::span<const ArmState> states,
                         const RelaxedPlan& plan, std::mt19937_64& rng);

/// Long-run average cost of the relaxed-constraint policy.
double relaxed_average_cost(std::span<const ComponentSpec> specs, const RelaxedPlan& plan);

/// Uniform double in [0,1) from the top 53 bits of one draw.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace rmab
