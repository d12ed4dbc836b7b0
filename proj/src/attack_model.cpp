#include "rmab/attack_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rmab {

AttackProcess AttackProcess::markov(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("markov attack probability q must lie in (0,1), got " + std::to_string(q));
  }
  return AttackProcess(MarkovIID{q});
}

AttackProcess AttackProcess::table(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("probability table must not be empty");
  double prev = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double v = values[k];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("probability table entry p(" + std::to_string(k + 1) + ") outside [0,1]");
    }
    if (v < prev) {
      throw std::invalid_argument("probability table must be nondecreasing at p(" + std::to_string(k + 1) + ")");
    }
    prev = v;
  }
  return AttackProcess(ProbTable{std::move(values)});
}

double AttackProcess::limit() const {
  if (const auto* t = std::get_if<ProbTable>(&kind_)) return t->values.back();
  return 1.0;
}

ComponentSpec::ComponentSpec(AttackProcess p, double c) : process(std::move(p)), cost(c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("component cost must be a finite nonnegative number");
}

double marginal_p(const AttackProcess& process, std::size_t t) {
  if (t == 0) return 0.0;
  if (const auto* m = std::get_if<MarkovIID>(&process.kind())) {
    return 1.0 - std::pow(1.0 - m->q, static_cast<double>(t));
  }
  const auto& values = std::get<ProbTable>(process.kind()).values;
  return t <= values.size() ? values[t - 1] : values.back();
}

double hazard(const AttackProcess& process, std::size_t t) {
  if (t == 0) throw std::invalid_argument("hazard is defined for t >= 1");
  if (const auto* m = std::get_if<MarkovIID>(&process.kind())) return m->q;
  const double before = marginal_p(process, t - 1);
  if (before >= 1.0) return 1.0;
  return (marginal_p(process, t) - before) / (1.0 - before);
}

bool check_c1(const AttackProcess& process, std::size_t horizon) {
  if (horizon < 2) throw std::invalid_argument("check_c1 needs horizon >= 2");
  if (process.is_markov()) return true;  // q(1-q)^t is strictly decreasing
  double prev_inc = marginal_p(process, 1) - marginal_p(process, 0);
  for (std::size_t t = 1; t < horizon; ++t) {
    const double inc = marginal_p(process, t + 1) - marginal_p(process, t);
    if (!(inc < prev_inc)) return false;
    prev_inc = inc;
  }
  return prev_inc > 0.0;
}

}  // namespace rmab
