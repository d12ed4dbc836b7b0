#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rmab/oracle.hpp"
#include "rmab/policies.hpp"
#include "rmab/queueing.hpp"

namespace rmab::cli {

/// Schema or value problem in a configuration; maps to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitGuard = 3;

struct ExperimentConfig {
  std::vector<ComponentSpec> components;
  std::size_t k = 1;
  std::size_t horizon = 0;
  std::vector<PolicyKind> policies;
  std::size_t replications = 1;
  std::uint64_t seed = 1;
  std::vector<ArmState> initial;
  std::size_t state_bound = kDefaultStateBound;
  std::optional<QueueNetworkSpec> queueing;
  std::string dispatch = "simulate";  // queueing target: simulate | oracle
};

ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig preset(std::string_view name);

/// Component descriptor and queueing descriptor readers, exposed for tests.
ComponentSpec parse_component(std::string_view json_text);
QueueNetworkSpec parse_queueing(std::string_view json_text);

std::string cmd_index(const ExperimentConfig& config);
std::string cmd_simulate(const ExperimentConfig& config);
std::string cmd_evaluate(const ExperimentConfig& config);
std::string cmd_oracle(const ExperimentConfig& config, std::string* policy_table = nullptr);
std::string cmd_subsidy(const ExperimentConfig& config);
std::string cmd_queueing(const ExperimentConfig& config);

/// Shortest round-trip decimal form, used for every CSV number.
std::string format_number(double v);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rmab::cli
