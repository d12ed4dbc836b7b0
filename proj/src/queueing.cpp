#include "rmab/queueing.hpp"

#include <stdexcept>
#include <string>
#include <type_traits>

namespace rmab {

RmabInstance to_rmab(const QueueNetworkSpec& spec) {
  const std::size_t n = spec.classes.size();
  if (spec.servers < 1) throw std::invalid_argument("queueing network needs at least one server");
  if (spec.servers >= n) {
    throw std::invalid_argument("queueing network needs fewer servers (" + std::to_string(spec.servers) +
                                ") than customer classes (" + std::to_string(n) + ")");
  }
  RmabInstance out{{}, spec.servers};
  out.specs.reserve(n);
  for (const auto& cls : spec.classes) {
    AttackProcess proc = std::visit(
        [](const auto& arrival) {
          using T = std::decay_t<decltype(arrival)>;
          if constexpr (std::is_same_v<T, BernoulliArrival>) {
            // A class that never receives customers has p(t) = 0 throughout.
            if (arrival.q == 0.0) return AttackProcess::table({0.0});
            return AttackProcess::markov(arrival.q);
          } else {
            return AttackProcess::table(arrival.fill_probability);
          }
        },
        cls.arrival);
    out.specs.emplace_back(std::move(proc), cls.holding_cost);
  }
  return out;
}

}  // namespace rmab
