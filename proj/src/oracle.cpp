#include "rmab/oracle.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>

#include "rmab/whittle.hpp"

namespace rmab {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint32_t v : key) {
      h ^= v;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

using Key = std::vector<std::uint32_t>;

Key encode(const JointState& s) {
  Key k(s.size());
  for (std::size_t a = 0; a < s.size(); ++a) k[a] = static_cast<std::uint32_t>(s[a].t * 2 + static_cast<std::size_t>(s[a].i));
  return k;
}

/// Reachable states of one decision epoch.
struct Layer {
  std::vector<JointState> states;
  std::unordered_map<Key, std::size_t, KeyHash> index;

  std::size_t insert(const JointState& s) {
    auto [it, fresh] = index.try_emplace(encode(s), states.size());
    if (fresh) states.push_back(s);
    return it->second;
  }
  std::size_t find(const JointState& s) const { return index.at(encode(s)); }
};

struct Outcome {
  double prob;
  JointState next;
};

std::vector<Outcome> outcomes(std::span<const ComponentSpec> specs, const JointState& s, const Selection& sel) {
  JointState base(s.size());
  std::vector<bool> probed(s.size(), false);
  for (ArmId a : sel) probed[a] = true;
  for (std::size_t a = 0; a < s.size(); ++a) {
    if (!probed[a]) base[a] = transition(s[a], Action::passive, std::nullopt);
  }
  std::vector<Outcome> out;
  const std::size_t m = sel.size();
  out.reserve(std::size_t{1} << m);
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    Outcome o{1.0, base};
    for (std::size_t j = 0; j < m; ++j) {
      const ArmId a = sel[j];
      const double b = belief_abnormal(specs[a], s[a]);
      const int obs = static_cast<int>((mask >> j) & 1U);
      o.prob *= obs ? b : 1.0 - b;
      o.next[a] = transition(s[a], Action::active, obs);
    }
    if (o.prob > 0.0) out.push_back(std::move(o));
  }
  return out;
}

double slot_cost(std::span<const ComponentSpec> specs, const JointState& s) {
  double c = 0.0;
  for (std::size_t a = 0; a < s.size(); ++a) c += specs[a].cost * belief_abnormal(specs[a], s[a]);
  return c;
}

std::vector<Selection> all_subsets(std::size_t n, std::size_t k) {
  std::vector<Selection> out;
  Selection cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t a = from; a + (k - cur.size()) <= n; ++a) {
      cur.push_back(a);
      rec(a + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

void validate(std::span<const ComponentSpec> specs, const JointState& initial, std::size_t k, std::size_t horizon) {
  if (specs.empty() || specs.size() != initial.size()) throw std::invalid_argument("specs and initial state differ in length");
  if (k < 1 || k > specs.size()) throw std::invalid_argument("K must lie in [1, N]");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  for (const auto& s : initial) make_arm_state(s.i, s.t);
}

}  // namespace

GuardError::GuardError(std::size_t state_count, std::size_t bound)
    : std::runtime_error("exact enumeration refused: at least " + std::to_string(state_count) +
                         " reachable joint states exceed the bound of " + std::to_string(bound)),
      state_count_(state_count) {}

SelectionRule whittle_rule() {
  return [](std::span<const ComponentSpec> s, std::span<const ArmState> x, std::size_t k) { return select_whittle(s, x, k); };
}

SelectionRule myopic_rule() {
  return [](std::span<const ComponentSpec> s, std::span<const ArmState> x, std::size_t k) { return select_myopic(s, x, k); };
}

DpResult dp_optimal(std::span<const ComponentSpec> specs, const JointState& initial, std::size_t k,
                    std::size_t horizon, std::size_t state_bound) {
  validate(specs, initial, k, horizon);
  const auto actions = all_subsets(specs.size(), k);

  std::vector<Layer> layers(horizon);
  layers[0].insert(initial);
  std::size_t count = 1;
  for (std::size_t d = 0; d + 1 < horizon; ++d) {
    for (std::size_t x = 0; x < layers[d].states.size(); ++x) {
      const JointState s = layers[d].states[x];
      for (const auto& act : actions) {
        for (const auto& o : outcomes(specs, s, act)) {
          const std::size_t before = layers[d + 1].states.size();
          layers[d + 1].insert(o.next);
          count += layers[d + 1].states.size() - before;
          if (count > state_bound) throw GuardError(count, state_bound);
        }
      }
    }
  }

  // Backward induction; within a layer every entry only reads the next one.
  std::vector<std::vector<double>> value(horizon);
  std::vector<std::vector<std::size_t>> best(horizon);
  for (std::size_t d = horizon; d-- > 0;) {
    const auto& layer = layers[d];
    value[d].assign(layer.states.size(), 0.0);
    best[d].assign(layer.states.size(), 0);
    for (std::size_t x = 0; x < layer.states.size(); ++x) {
      const JointState& s = layer.states[x];
      double future = 0.0;
      if (d + 1 < horizon) {
        double best_val = 0.0;
        for (std::size_t a = 0; a < actions.size(); ++a) {
          double v = 0.0;
          for (const auto& o : outcomes(specs, s, actions[a])) v += o.prob * value[d + 1][layers[d + 1].find(o.next)];
          if (a == 0 || v < best_val) {
            best_val = v;
            best[d][x] = a;
          }
        }
        future = best_val;
      }
      value[d][x] = slot_cost(specs, s) + future;
    }
  }

  DpResult res{value[0][0], std::vector<double>(horizon, 0.0), {}};
  // Forward pass under the optimal actions for the per-slot profile.
  std::vector<double> mass(1, 1.0);
  for (std::size_t d = 0; d < horizon; ++d) {
    std::vector<double> next_mass(d + 1 < horizon ? layers[d + 1].states.size() : 0, 0.0);
    for (std::size_t x = 0; x < layers[d].states.size(); ++x) {
      const JointState& s = layers[d].states[x];
      const Selection& act = actions[best[d][x]];
      res.table.push_back({d, s, value[d][x], act});
      if (mass[x] == 0.0) continue;
      res.slot_costs[d] += mass[x] * slot_cost(specs, s);
      if (d + 1 < horizon) {
        for (const auto& o : outcomes(specs, s, act)) next_mass[layers[d + 1].find(o.next)] += mass[x] * o.prob;
      }
    }
    mass = std::move(next_mass);
  }
  return res;
}

double policy_evaluate_exact(std::span<const ComponentSpec> specs, const JointState& initial, std::size_t k,
                             std::size_t horizon, const SelectionRule& rule, std::size_t state_bound) {
  validate(specs, initial, k, horizon);
  Layer layer;
  layer.insert(initial);
  std::vector<double> mass{1.0};
  std::size_t count = 1;
  double total = 0.0;
  for (std::size_t d = 0; d < horizon; ++d) {
    Layer next;
    std::vector<double> next_mass;
    for (std::size_t x = 0; x < layer.states.size(); ++x) {
      const JointState& s = layer.states[x];
      total += mass[x] * slot_cost(specs, s);
      if (d + 1 == horizon) continue;
      const Selection sel = rule(specs, s, k);
      for (const auto& o : outcomes(specs, s, sel)) {
        const std::size_t before = next.states.size();
        const std::size_t idx = next.insert(o.next);
        if (next.states.size() != before) {
          next_mass.push_back(0.0);
          if (++count > state_bound) throw GuardError(count, state_bound);
        }
        next_mass[idx] += mass[x] * o.prob;
      }
    }
    layer = std::move(next);
    mass = std::move(next_mass);
  }
  return total;
}

bool value_monotonicity_probe(std::span<const ComponentSpec> specs, std::size_t k, std::size_t horizon,
                              std::size_t trials, std::uint64_t seed, std::size_t state_bound) {
  const std::size_t n = specs.size();
  if (n < 1) throw std::invalid_argument("need at least one arm");
  std::mt19937_64 rng(seed);
  auto draw = [&](std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(rng() % (hi - lo + 1)); };
  const auto rule = whittle_rule();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    JointState s(n);
    for (auto& a : s) a = ArmState{static_cast<int>(rng() & 1U), draw(1, 6)};
    const std::size_t arm = draw(0, n - 1);
    JointState lower = s, upper = s;
    const std::size_t extra = draw(1, 4);
    upper[arm].t = lower[arm].t + extra;
    const double bl = belief_abnormal(specs[arm], lower[arm]);
    const double bu = belief_abnormal(specs[arm], upper[arm]);
    if (bu < bl) return false;  // monotone sequences never do this
    const double vl = policy_evaluate_exact(specs, lower, k, horizon, rule, state_bound);
    const double vu = policy_evaluate_exact(specs, upper, k, horizon, rule, state_bound);
    if (vu < vl - 1e-9) return false;
  }
  return true;
}

SubsidyQ single_arm_subsidy_dp(const ComponentSpec& spec, ArmState state, double lambda, std::size_t horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  make_arm_state(state.i, state.t);
  const std::size_t tmax = state.t + horizon + 1;
  // v[i][t], t in [1, tmax]; entries with t + remaining > tmax are never read
  // by states reachable from `state`.
  std::vector<double> belief[2];
  for (int i = 0; i < 2; ++i) {
    belief[i].resize(tmax + 2);
    for (std::size_t t = 1; t <= tmax + 1; ++t) belief[i][t] = belief_abnormal(spec, ArmState{i, t});
  }
  std::vector<double> v[2] = {std::vector<double>(tmax + 2, 0.0), std::vector<double>(tmax + 2, 0.0)};
  for (std::size_t remaining = 1; remaining < horizon; ++remaining) {
    std::vector<double> nv[2] = {std::vector<double>(tmax + 2, 0.0), std::vector<double>(tmax + 2, 0.0)};
    for (int i = 0; i < 2; ++i) {
      for (std::size_t t = 1; t <= tmax; ++t) {
        const double b = belief[i][t];
        const double passive = lambda - spec.cost * b + v[i][t + 1];
        const double active = -spec.cost * b + b * v[1][1] + (1.0 - b) * v[0][1];
        nv[i][t] = std::max(passive, active);
      }
    }
    v[0].swap(nv[0]);
    v[1].swap(nv[1]);
  }
  const double b = belief[state.i][state.t];
  return {lambda - spec.cost * b + v[state.i][state.t + 1], -spec.cost * b + b * v[1][1] + (1.0 - b) * v[0][1]};
}

}  // namespace rmab
