#include "rmab/policies.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rmab/whittle.hpp"

namespace rmab {

namespace {

void check_inputs(std::span<const ComponentSpec> specs, std::span<const ArmState> states, std::size_t k) {
  if (specs.size() != states.size()) throw std::invalid_argument("specs and states differ in length");
  if (k < 1) throw std::invalid_argument("K must be >= 1");
  if (k > specs.size()) throw std::invalid_argument("K exceeds the number of arms");
}

struct Priority {
  double primary;
  double weighted_belief;
  std::size_t t;
  ArmId id;
};

bool higher(const Priority& a, const Priority& b) {
  if (a.primary != b.primary) return a.primary > b.primary;
  if (a.weighted_belief != b.weighted_belief) return a.weighted_belief > b.weighted_belief;
  if (a.t != b.t) return a.t > b.t;
  return a.id < b.id;
}

template <class PrimaryFn>
Selection top_k(std::span<const ComponentSpec> specs, std::span<const ArmState> states, std::size_t k,
                PrimaryFn primary) {
  check_inputs(specs, states, k);
  std::vector<Priority> keys;
  keys.reserve(specs.size());
  for (ArmId n = 0; n < specs.size(); ++n) {
    const double wb = specs[n].cost * belief_abnormal(specs[n], states[n]);
    keys.push_back({primary(n, wb), wb, states[n].t, n});
  }
  std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(k), keys.end(), higher);
  Selection out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) out.push_back(keys[j].id);
  return out;
}

}  // namespace

PolicyKind parse_policy(std::string_view name) {
  if (name == "whittle") return PolicyKind::whittle;
  if (name == "myopic") return PolicyKind::myopic;
  if (name == "queue") return PolicyKind::queue;
  if (name == "random") return PolicyKind::random;
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

std::string_view policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::whittle: return "whittle";
    case PolicyKind::myopic: return "myopic";
    case PolicyKind::queue: return "queue";
    case PolicyKind::random: return "random";
  }
  return "unknown";
}

Selection select_whittle(std::span<const ComponentSpec> specs, std::span<const ArmState> states, std::size_t k) {
  return top_k(specs, states, k, [&](ArmId n, double) { return whittle_index(specs[n], states[n]); });
}

Selection select_myopic(std::span<const ComponentSpec> specs, std::span<const ArmState> states, std::size_t k) {
  return top_k(specs, states, k, [](ArmId, double wb) { return wb; });
}

Selection select_random(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  if (k < 1 || k > n) throw std::invalid_argument("random selection needs 1 <= K <= N");
  // Partial Fisher-Yates with an explicit bounded draw keeps the stream
  // identical across standard library implementations.
  std::vector<ArmId> ids(n);
  std::iota(ids.begin(), ids.end(), ArmId{0});
  for (std::size_t j = 0; j < k; ++j) {
    const std::uint64_t span = n - j;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    std::swap(ids[j], ids[j + draw % span]);
  }
  ids.resize(k);
  return ids;
}

QueueState::QueueState(std::size_t n, std::vector<ArmId> order) : order_(std::move(order)) {
  if (n < 1) throw std::invalid_argument("queue needs at least one arm");
  if (order_.size() != n) throw std::invalid_argument("queue order is not a permutation of the arms");
  std::vector<bool> seen(n, false);
  for (ArmId id : order_) {
    if (id >= n || seen[id]) throw std::invalid_argument("queue order is not a permutation of the arms");
    seen[id] = true;
  }
}

QueueState QueueState::from_states(std::span<const ComponentSpec> specs, std::span<const ArmState> states) {
  Selection all = select_myopic(specs, states, specs.size());
  return QueueState(specs.size(), std::move(all));
}

Selection QueueState::head(std::size_t k) const {
  if (k < 1 || k > order_.size()) throw std::invalid_argument("K must lie in [1, N]");
  return Selection(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(k));
}

QueueState queue_init(std::size_t n, std::vector<ArmId> initial_order) {
  return QueueState(n, std::move(initial_order));
}

std::pair<Selection, QueueState> queue_step(const QueueState& queue, std::size_t k,
                                            const std::map<ArmId, int>& observations) {
  Selection selected = queue.head(k);
  if (observations.size() != k) throw std::invalid_argument("observations must cover exactly the probed arms");
  std::vector<ArmId> abnormal, healthy;
  for (ArmId id : selected) {
    const auto it = observations.find(id);
    if (it == observations.end()) {
      throw std::invalid_argument("missing observation for probed arm " + std::to_string(id));
    }
    if (it->second != 0 && it->second != 1) throw std::invalid_argument("observation must be 0 or 1");
    (it->second == 1 ? abnormal : healthy).push_back(id);
  }
  const auto& order = queue.order();
  std::vector<ArmId> next(order.begin() + static_cast<std::ptrdiff_t>(k), order.end());
  next.insert(next.end(), abnormal.begin(), abnormal.end());
  next.insert(next.end(), healthy.begin(), healthy.end());
  return {std::move(selected), QueueState(order.size(), std::move(next))};
}

}  // namespace rmab
