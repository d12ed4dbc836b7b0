#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "rmab/attack_model.hpp"

namespace rmab {

/// i.i.d. Bernoulli batch arrivals into an empty buffer.
struct BernoulliArrival {
  double q;
};

/// Probability that the buffer has filled t slots after it was served.
/// Batch-arrival semantics must justify the monotonicity of this table.
struct MarginalArrival {
  std::vector<double> fill_probability;
};

using ArrivalModel = std::variant<BernoulliArrival, MarginalArrival>;

struct CustomerClass {
  ArrivalModel arrival;
  double holding_cost;
};

/// K servers sharing N single-batch buffers. A full buffer receives no
/// arrivals until a server clears it.
struct QueueNetworkSpec {
  std::vector<CustomerClass> classes;
  std::size_t servers;
};

struct RmabInstance {
  std::vector<ComponentSpec> specs;
  std::size_t k;
};

/// Buffer full <-> abnormal, serving <-> probing, holding cost <-> c_n.
RmabInstance to_rmab(const QueueNetworkSpec& spec);

}  // namespace rmab
