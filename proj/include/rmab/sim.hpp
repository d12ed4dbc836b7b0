#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "rmab/arm.hpp"
#include "rmab/policies.hpp"
#include "rmab/subsidy.hpp"

namespace rmab {

/// True component states plus the slots-since-reset counter that drives the
/// hazard. An abnormal component stays abnormal until probed.
struct WorldState {
  std::vector<int> abnormal;
  std::vector<std::size_t> since_reset;
};

/// One random stream per (seed, replication, arm), plus one per
/// (seed, replication) for policy randomness.
class StreamSet {
 public:
  StreamSet(std::uint64_t seed, std::uint64_t replication, std::size_t arms);
  std::mt19937_64& arm(std::size_t a) { return arms_[a]; }
  std::mt19937_64& policy() { return policy_; }

 private:
  std::vector<std::mt19937_64> arms_;
  std::mt19937_64 policy_;
};

/// Samples a world consistent with the given arm states (belief p(t - i)).
WorldState sample_world(std::span<const ComponentSpec> specs, std::span<const ArmState> states, StreamSet& streams);

struct StepResult {
  std::vector<int> observations;  // aligned with the selection
  double cost;
};

/// Charges sum c_n 1{abnormal}, observes the probed arms, then advances the
/// world one slot: probed healthy arms restart their attack clock, probed
/// abnormal arms are repaired and healthy next slot, unprobed healthy arms
/// flip with hazard(counter + 1).
StepResult world_step(std::span<const ComponentSpec> specs, WorldState& world, const Selection& selection,
                      StreamSet& streams);

struct RunConfig {
  std::vector<ComponentSpec> specs;
  std::size_t k = 1;
  std::size_t horizon = 1;
  PolicyKind policy = PolicyKind::whittle;
  std::size_t replications = 1;
  std::uint64_t seed = 1;
  std::vector<ArmState> initial;  // empty: every arm starts at (0,1)
};

struct CostTrajectory {
  std::vector<double> mean_cumulative;
  std::vector<double> stderr_cumulative;
};

/// Per-replication cumulative cost path; deterministic in (config, rep).
std::vector<double> run_replication(const RunConfig& config, std::uint64_t replication);

CostTrajectory run(const RunConfig& config);

/// Empirical behaviour of the relaxed-constraint policy on one long path.
struct RelaxedRunStats {
  double mean_activations;
  double mean_cost;
};

RelaxedRunStats simulate_relaxed(std::span<const ComponentSpec> specs, const RelaxedPlan& plan, std::size_t slots,
                                 std::uint64_t seed);

}  // namespace rmab
