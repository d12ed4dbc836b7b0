#include "rmab/whittle.hpp"

#include <stdexcept>

namespace rmab {

double whittle_index_delay(const ComponentSpec& spec, std::size_t delay) {
  if (delay == 0) return 0.0;
  const auto& proc = spec.process;
  double tail_sum = 0.0;
  for (std::size_t k = 1; k <= delay; ++k) tail_sum += marginal_p(proc, k);
  const double p_now = marginal_p(proc, delay);
  const double p_next = marginal_p(proc, delay + 1);
  const double t = static_cast<double>(delay);
  return (p_next * (t + p_now) / (1.0 + p_next - p_now) - tail_sum) * spec.cost;
}

double whittle_index(const ComponentSpec& spec, ArmState state) {
  if (state.i == 1 && state.t < 1) throw std::invalid_argument("index of (1,t) needs t >= 1");
  return whittle_index_delay(spec, state.delay());
}

bool verify_strict_indexability(const ComponentSpec& spec, std::size_t horizon) {
  if (horizon < 2) throw std::invalid_argument("verify_strict_indexability needs horizon >= 2");
  double prev = whittle_index_delay(spec, 0);
  for (std::size_t t = 1; t <= horizon; ++t) {
    const double w = whittle_index_delay(spec, t);
    if (!(w > prev)) return false;
    prev = w;
  }
  return true;
}

std::vector<IndexRow> index_table(const ComponentSpec& spec, std::size_t horizon) {
  if (horizon < 1) throw std::invalid_argument("index_table needs horizon >= 1");
  std::vector<IndexRow> rows;
  rows.reserve(2 * horizon);
  for (int i = 0; i <= 1; ++i) {
    for (std::size_t t = 1; t <= horizon; ++t) {
      const ArmState s{i, t};
      rows.push_back({s, whittle_index(spec, s)});
    }
  }
  return rows;
}

}  // namespace rmab
