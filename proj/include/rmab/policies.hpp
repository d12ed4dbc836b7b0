#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "rmab/arm.hpp"

namespace rmab {

using ArmId = std::size_t;  // zero-based arm identifier

/// Arms probed in one slot, in priority order.
using Selection = std::vector<ArmId>;

enum class PolicyKind { whittle, myopic, queue, random };

PolicyKind parse_policy(std::string_view name);
std::string_view policy_name(PolicyKind kind);

/// The K arms with the largest index. Ties go to the larger cost-weighted
/// belief, then to the larger t (probed longer ago), then to the smaller id.
Selection select_whittle(std::span<const ComponentSpec> specs, std::span<const ArmState> states, std::size_t k);

/// The K arms with the largest cost-weighted abnormal belief, same tie chain.
Selection select_myopic(std::span<const ComponentSpec> specs, std::span<const ArmState> states, std::size_t k);

/// Uniform K-subset.
Selection select_random(std::size_t n, std::size_t k, std::mt19937_64& rng);

/// Queue realisation of the homogeneous Whittle policy: probe the K head
/// arms, then requeue them behind the others with arms observed abnormal
/// ahead of arms observed healthy (each group keeps its prior order).
class QueueState {
 public:
  QueueState(std::size_t n, std::vector<ArmId> order);

  /// Queue sorted by the myopic priority of the given states.
  static QueueState from_states(std::span<const ComponentSpec> specs, std::span<const ArmState> states);

  const std::vector<ArmId>& order() const { return order_; }
  Selection head(std::size_t k) const;

  friend bool operator==(const QueueState&, const QueueState&) = default;

 private:
  std::vector<ArmId> order_;
};

QueueState queue_init(std::size_t n, std::vector<ArmId> initial_order);

std::pair<Selection, QueueState> queue_step(const QueueState& queue, std::size_t k,
                                            const std::map<ArmId, int>& observations);

}  // namespace rmab
