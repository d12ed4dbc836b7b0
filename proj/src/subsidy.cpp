#include "rmab/subsidy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <variant>

namespace rmab {

namespace {

constexpr double kSaturation = 1e-12;

/// Candidate stopping delays [1..s] U {t_cap}. Past the saturation point s
/// the reward ratio is monotone in t0, so only its endpoints can be optimal.
struct StoppingProfile {
  std::vector<std::size_t> stops;
  std::vector<double> p;
  std::vector<double> cum;  // sum_{k<=t0} p(k)
};

double tail_sum(const AttackProcess& proc, std::size_t from, std::size_t to) {
  // sum_{k=from..to} p(k)
  if (from > to) return 0.0;
  if (const auto* m = std::get_if<MarkovIID>(&proc.kind())) {
    const double r = 1.0 - m->q;
    const double geo = (std::pow(r, static_cast<double>(from)) - std::pow(r, static_cast<double>(to + 1))) / m->q;
    return static_cast<double>(to - from + 1) - geo;
  }
  const auto& v = std::get<ProbTable>(proc.kind()).values;
  double s = 0.0;
  std::size_t k = from;
  for (; k <= to && k <= v.size(); ++k) s += v[k - 1];
  if (k <= to) s += v.back() * static_cast<double>(to - k + 1);
  return s;
}

StoppingProfile stopping_profile(const AttackProcess& proc, std::size_t t_cap) {
  if (t_cap < 1) throw std::invalid_argument("t_cap must be >= 1");
  StoppingProfile prof;
  const double lim = proc.limit();
  double cum = 0.0;
  std::size_t t = 1;
  for (; t <= t_cap; ++t) {
    const double pt = marginal_p(proc, t);
    cum += pt;
    prof.stops.push_back(t);
    prof.p.push_back(pt);
    prof.cum.push_back(cum);
    if (lim - pt <= kSaturation) break;
  }
  if (t < t_cap) {
    prof.stops.push_back(t_cap);
    prof.p.push_back(marginal_p(proc, t_cap));
    prof.cum.push_back(cum + tail_sum(proc, t + 1, t_cap));
  }
  return prof;
}

double reward(const StoppingProfile& prof, std::size_t j, double lambda, double cost) {
  const double t0 = static_cast<double>(prof.stops[j]);
  return (lambda * (t0 - 1.0 + prof.p[j]) - cost * prof.cum[j]) / (t0 + prof.p[j]);
}

std::size_t best_stop(const StoppingProfile& prof, double lambda, double cost) {
  std::size_t best = 0;
  double best_val = reward(prof, 0, lambda, cost);
  for (std::size_t j = 1; j < prof.stops.size(); ++j) {
    const double v = reward(prof, j, lambda, cost);
    if (v > best_val) {
      best_val = v;
      best = j;
    }
  }
  return best;
}

struct Line {
  double slope;
  double intercept;
  std::size_t stop;
  double p;
};

double meet(const Line& a, const Line& b) { return (a.intercept - b.intercept) / (b.slope - a.slope); }

std::vector<Line> upper_envelope(const StoppingProfile& prof, double cost) {
  std::vector<Line> hull;
  for (std::size_t j = 0; j < prof.stops.size(); ++j) {
    const double t0 = static_cast<double>(prof.stops[j]);
    const double len = t0 + prof.p[j];
    const Line l{(t0 - 1.0 + prof.p[j]) / len, -cost * prof.cum[j] / len, prof.stops[j], prof.p[j]};
    if (!hull.empty() && !(l.slope > hull.back().slope)) {
      // equal slopes: keep the better intercept; ties keep the earlier stop
      if (l.intercept > hull.back().intercept) hull.pop_back();
      else continue;
    }
    while (hull.size() >= 2 && meet(hull[hull.size() - 2], l) <= meet(hull[hull.size() - 2], hull.back())) {
      hull.pop_back();
    }
    hull.push_back(l);
  }
  return hull;
}

double renewal_length(std::size_t stop, double p) { return static_cast<double>(stop) + p; }

}  // namespace

SubsidyPolicy optimal_stopping(const ComponentSpec& spec, double lambda, std::size_t t_cap) {
  if (t_cap < 1) throw std::invalid_argument("t_cap must be >= 1");
  if (lambda < 0.0) return {1, 1};
  const auto prof = stopping_profile(spec.process, t_cap);
  const std::size_t t0 = prof.stops[best_stop(prof, lambda, spec.cost)];
  return {t0, t0 + 1};
}

GainResult gain(const ComponentSpec& spec, double lambda, std::size_t t_cap) {
  if (t_cap < 1) throw std::invalid_argument("t_cap must be >= 1");
  const auto prof = stopping_profile(spec.process, t_cap);
  const std::size_t j = lambda < 0.0 ? 0 : best_stop(prof, lambda, spec.cost);
  return {reward(prof, j, lambda, spec.cost), prof.stops[j]};
}

double activation_rate(const ComponentSpec& spec, double lambda, std::size_t t_cap) {
  const std::size_t t0 = optimal_stopping(spec, lambda, t_cap).t0_star;
  return 1.0 / renewal_length(t0, marginal_p(spec.process, t0));
}

std::vector<StoppingBreakpoint> stopping_breakpoints(const ComponentSpec& spec, std::size_t t_cap) {
  const auto hull = upper_envelope(stopping_profile(spec.process, t_cap), spec.cost);
  std::vector<StoppingBreakpoint> out;
  for (std::size_t j = 0; j + 1 < hull.size(); ++j) {
    out.push_back({meet(hull[j], hull[j + 1]), hull[j].stop, hull[j + 1].stop});
  }
  return out;
}

double RelaxedPlan::total_rate() const {
  double s = 0.0;
  for (const auto& a : arms) s += a.activation_rate;
  return s;
}

ThresholdRates threshold_rates(const ComponentSpec& spec, std::size_t mix_from, std::size_t active_from,
                               double mixing) {
  if (active_from < 1) throw std::invalid_argument("active_from must be >= 1");
  if (mix_from > active_from) throw std::invalid_argument("mix_from must not exceed active_from");
  if (!(mixing >= 0.0 && mixing <= 1.0)) throw std::invalid_argument("mixing probability outside [0,1]");

  struct Leg {
    double slots = 0.0;
    double cost = 0.0;
    double ends_abnormal = 0.0;
  };
  // A leg starts right after a probe: at e = 0 after an abnormal
  // observation, at e = 1 after a healthy one.
  auto walk = [&](std::size_t start) {
    Leg leg;
    double alive = 1.0;
    for (std::size_t e = start;; ++e) {
      const double pe = marginal_p(spec.process, e);
      const double act = e >= active_from ? 1.0 : (e >= mix_from ? mixing : 0.0);
      leg.slots += alive;
      leg.cost += alive * spec.cost * pe;
      leg.ends_abnormal += alive * act * pe;
      alive *= 1.0 - act;
      if (alive == 0.0) break;
    }
    return leg;
  };
  const Leg after_abnormal = walk(0);
  const Leg after_healthy = walk(1);
  // Two-state chain over the type of the last observation.
  const double denom = after_healthy.ends_abnormal + 1.0 - after_abnormal.ends_abnormal;
  const double frac_abnormal = denom > 0.0 ? after_healthy.ends_abnormal / denom : 1.0;
  const double slots = frac_abnormal * after_abnormal.slots + (1.0 - frac_abnormal) * after_healthy.slots;
  const double cost = frac_abnormal * after_abnormal.cost + (1.0 - frac_abnormal) * after_healthy.cost;
  return {1.0 / slots, cost / slots};
}

RelaxedPlan solve_lambda_star(std::span<const ComponentSpec> specs, std::size_t k, std::size_t t_cap) {
  const std::size_t n = specs.size();
  if (k < 1 || k >= n) throw std::invalid_argument("relaxed plan needs 1 <= K < N");

  struct Event {
    double lambda;
    std::size_t arm;
    std::size_t before;
    std::size_t after;
  };
  std::vector<Event> events;
  std::vector<std::size_t> stop(n);
  std::vector<double> rate(n);
  double total = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    const auto bps = stopping_breakpoints(specs[a], t_cap);
    // delay just to the right of lambda = 0
    std::size_t right_of_zero = bps.empty() ? optimal_stopping(specs[a], 0.0, t_cap).t0_star : bps.front().before;
    for (const auto& b : bps) {
      if (b.lambda > 0.0) events.push_back({b.lambda, a, b.before, b.after});
      else right_of_zero = b.after;
    }
    stop[a] = right_of_zero;
    rate[a] = 1.0 / renewal_length(stop[a], marginal_p(specs[a].process, stop[a]));
    total += rate[a];
  }

  RelaxedPlan plan{0.0, std::vector<ArmPlan>(n)};
  std::vector<std::size_t> boundary;
  std::vector<std::size_t> mix_from(n), active_from(stop);
  const double target = static_cast<double>(k);

  if (total <= target) {
    // lambda* = 0: states with index 0, i.e. (1,1) and any flat-zero
    // states, sit on the boundary.
    for (std::size_t a = 0; a < n; ++a) {
      mix_from[a] = 0;
      boundary.push_back(a);
    }
  } else {
    std::sort(events.begin(), events.end(), [](const Event& x, const Event& y) {
      return x.lambda != y.lambda ? x.lambda < y.lambda : x.arm < y.arm;
    });
    bool found = false;
    for (std::size_t j = 0; j < events.size() && !found;) {
      std::size_t end = j;
      while (end < events.size() && events[end].lambda == events[j].lambda) ++end;
      for (std::size_t e = j; e < end; ++e) {
        const auto& ev = events[e];
        total -= rate[ev.arm];
        stop[ev.arm] = ev.after;
        rate[ev.arm] = 1.0 / renewal_length(ev.after, marginal_p(specs[ev.arm].process, ev.after));
        total += rate[ev.arm];
      }
      if (total <= target) {
        plan.lambda_star = events[j].lambda;
        for (std::size_t e = j; e < end; ++e) {
          boundary.push_back(events[e].arm);
          mix_from[events[e].arm] = events[e].before;
          active_from[events[e].arm] = events[e].after;
        }
        found = true;
      }
      j = end;
    }
    if (!found) throw std::domain_error("activation budget K is below the rate reachable at t_cap");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (std::find(boundary.begin(), boundary.end(), a) == boundary.end()) {
      mix_from[a] = active_from[a] = stop[a];
    }
  }

  double fixed = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (std::find(boundary.begin(), boundary.end(), a) == boundary.end()) fixed += rate[a];
  }
  auto boundary_rate = [&](double rho) {
    double s = 0.0;
    for (std::size_t a : boundary) s += threshold_rates(specs[a], mix_from[a], active_from[a], rho).activation;
    return s;
  };
  // The boundary rate increases with rho, from the right limit to the left.
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    (fixed + boundary_rate(mid) < target ? lo : hi) = mid;
  }
  const double rho = 0.5 * (lo + hi);

  for (std::size_t a = 0; a < n; ++a) {
    const bool on_boundary = std::find(boundary.begin(), boundary.end(), a) != boundary.end();
    auto& arm = plan.arms[a];
    arm.mix_from = mix_from[a];
    arm.active_from = active_from[a];
    arm.mixing = on_boundary ? rho : 0.0;
    arm.activation_rate = on_boundary ? threshold_rates(specs[a], mix_from[a], active_from[a], rho).activation : rate[a];
    arm.t0_star = optimal_stopping(specs[a], plan.lambda_star, t_cap).t0_star;
  }
  return plan;
}

Selection relaxed_select(std::span<const ComponentSpec> specs, std::span<const ArmState> states,
                         const RelaxedPlan& plan, std::mt19937_64& rng) {
  if (specs.size() != states.size() || specs.size() != plan.arms.size()) {
    throw std::invalid_argument("relaxed_select: specs, states and plan differ in length");
  }
  Selection out;
  for (ArmId a = 0; a < specs.size(); ++a) {
    const auto& arm = plan.arms[a];
    const std::size_t e = states[a].delay();
    if (e >= arm.active_from) {
      out.push_back(a);
    } else if (e >= arm.mix_from && arm.mixing > 0.0) {
      if (unit_uniform(rng) < arm.mixing) out.push_back(a);
    }
  }
  return out;
}

double relaxed_average_cost(std::span<const ComponentSpec> specs, const RelaxedPlan& plan) {
  double c = 0.0;
  for (std::size_t a = 0; a < specs.size(); ++a) {
    const auto& arm = plan.arms[a];
    c += threshold_rates(specs[a], arm.mix_from, arm.active_from, arm.mixing).cost;
  }
  return c;
}

}  // namespace rmab
