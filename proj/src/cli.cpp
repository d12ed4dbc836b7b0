#include "rmab/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "rmab/sim.hpp"
#include "rmab/subsidy.hpp"
#include "rmab/whittle.hpp"

namespace rmab::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

double number_at(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

std::size_t count_at(const json& v, const std::string& path, std::size_t min_value) {
  if (!v.is_number_integer() || v.get<long long>() < static_cast<long long>(min_value)) {
    fail(path, "expected an integer >= " + std::to_string(min_value));
  }
  return v.get<std::size_t>();
}

std::vector<double> numbers_at(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (std::size_t j = 0; j < v.size(); ++j) out.push_back(number_at(v[j], path + "[" + std::to_string(j) + "]"));
  return out;
}

AttackProcess process_at(const json& obj, const std::string& path, const char* markov_kind) {
  const json& kind = require(obj, "kind", path);
  if (!kind.is_string()) fail(path + ".kind", "expected a string");
  const auto k = kind.get<std::string>();
  try {
    if (k == markov_kind) return AttackProcess::markov(number_at(require(obj, "q", path), path + ".q"));
    if (k == "table") return AttackProcess::table(numbers_at(require(obj, "p", path), path + ".p"));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown kind '" + k + "' (expected '" + markov_kind + "' or 'table')");
}

ComponentSpec component_at(const json& obj, const std::string& path) {
  AttackProcess proc = process_at(obj, path, "markov");
  double cost = 1.0;
  if (obj.contains("cost")) cost = number_at(obj["cost"], path + ".cost");
  if (!(cost >= 0.0)) fail(path + ".cost", "cost must be nonnegative");
  return ComponentSpec(std::move(proc), cost);
}

QueueNetworkSpec queueing_at(const json& root) {
  QueueNetworkSpec q{{}, count_at(require(root, "servers", "config"), "config.servers", 1)};
  const json& classes = require(root, "classes", "config");
  if (!classes.is_array() || classes.empty()) fail("config.classes", "expected a non-empty array");
  for (std::size_t j = 0; j < classes.size(); ++j) {
    const std::string path = "config.classes[" + std::to_string(j) + "]";
    const json& arr = require(classes[j], "arrival", path);
    const json& kind = require(arr, "kind", path + ".arrival");
    CustomerClass cls{BernoulliArrival{0.0}, number_at(require(classes[j], "holding_cost", path), path + ".holding_cost")};
    if (!(cls.holding_cost >= 0.0)) fail(path + ".holding_cost", "holding cost must be nonnegative");
    if (kind == "bernoulli") {
      const double rate = number_at(require(arr, "q", path + ".arrival"), path + ".arrival.q");
      if (!(rate >= 0.0 && rate < 1.0)) fail(path + ".arrival.q", "arrival probability must lie in [0,1)");
      cls.arrival = BernoulliArrival{rate};
    } else if (kind == "table") {
      cls.arrival = MarginalArrival{numbers_at(require(arr, "p", path + ".arrival"), path + ".arrival.p")};
    } else {
      fail(path + ".arrival.kind", "expected 'bernoulli' or 'table'");
    }
    q.classes.push_back(std::move(cls));
  }
  return q;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::vector<ComponentSpec> queueing_components(const QueueNetworkSpec& q, std::size_t& k) {
  try {
    auto inst = to_rmab(q);
    k = inst.k;
    return std::move(inst.specs);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

void check_k(const ExperimentConfig& c) {
  if (c.components.empty()) throw ConfigError("config.components: at least one component is required");
  if (c.k < 1 || c.k > c.components.size()) throw ConfigError("config.K: must lie in [1, number of components]");
}

void check_horizon(const ExperimentConfig& c) {
  if (c.horizon < 1) throw ConfigError("config.horizon: must be >= 1");
}

std::vector<ArmState> initial_states(const ExperimentConfig& c) {
  return c.initial.empty() ? std::vector<ArmState>(c.components.size(), kFreshArm) : c.initial;
}

std::vector<PolicyKind> exact_policies(const ExperimentConfig& c) {
  if (c.policies.empty()) return {PolicyKind::whittle, PolicyKind::myopic};
  for (PolicyKind p : c.policies) {
    if (p == PolicyKind::queue || p == PolicyKind::random) {
      throw ConfigError("config.policies: exact evaluation supports 'whittle' and 'myopic' only, got '" +
                        std::string(policy_name(p)) + "'");
    }
  }
  return c.policies;
}

SelectionRule rule_for(PolicyKind p) { return p == PolicyKind::whittle ? whittle_rule() : myopic_rule(); }

// Differences at rounding level (different summation order) print as 0.
double relative_gap(double value, double optimum) {
  if (optimum <= 0.0 || std::abs(value - optimum) <= 1e-12 * optimum) return 0.0;
  return (value - optimum) / optimum;
}

void write_state(std::ostream& os, const JointState& s) {
  for (std::size_t a = 0; a < s.size(); ++a) os << (a ? " " : "") << '(' << s[a].i << ';' << s[a].t << ')';
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

ComponentSpec parse_component(std::string_view json_text) { return component_at(parse_json(json_text), "component"); }

QueueNetworkSpec parse_queueing(std::string_view json_text) { return queueing_at(parse_json(json_text)); }

ExperimentConfig parse_config(std::string_view json_text) {
  const json root = parse_json(json_text);
  if (!root.is_object()) throw ConfigError("config: expected a JSON object");
  ExperimentConfig c;
  if (root.contains("classes") || root.contains("servers")) {
    c.queueing = queueing_at(root);
    c.components = queueing_components(*c.queueing, c.k);
  } else {
    const json& comps = require(root, "components", "config");
    if (!comps.is_array() || comps.empty()) fail("config.components", "expected a non-empty array");
    for (std::size_t j = 0; j < comps.size(); ++j) {
      c.components.push_back(component_at(comps[j], "config.components[" + std::to_string(j) + "]"));
    }
    if (root.contains("K")) c.k = count_at(root["K"], "config.K", 1);
  }
  if (root.contains("horizon")) c.horizon = count_at(root["horizon"], "config.horizon", 1);
  if (root.contains("replications")) c.replications = count_at(root["replications"], "config.replications", 1);
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) fail("config.seed", "expected a nonnegative integer");
    c.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("state_bound")) c.state_bound = count_at(root["state_bound"], "config.state_bound", 1);
  auto add_policy = [&](const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a policy name");
    try {
      c.policies.push_back(parse_policy(v.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  };
  if (root.contains("policy")) add_policy(root["policy"], "config.policy");
  if (root.contains("policies")) {
    const json& ps = root["policies"];
    if (!ps.is_array()) fail("config.policies", "expected an array of policy names");
    for (std::size_t j = 0; j < ps.size(); ++j) add_policy(ps[j], "config.policies[" + std::to_string(j) + "]");
  }
  if (root.contains("initial")) {
    const json& init = root["initial"];
    if (!init.is_array() || init.size() != c.components.size()) {
      fail("config.initial", "expected one {\"i\",\"t\"} state per component");
    }
    for (std::size_t j = 0; j < init.size(); ++j) {
      const std::string path = "config.initial[" + std::to_string(j) + "]";
      const json& iv = require(init[j], "i", path);
      if (!iv.is_number_integer() || (iv.get<int>() != 0 && iv.get<int>() != 1)) fail(path + ".i", "expected 0 or 1");
      c.initial.push_back(ArmState{iv.get<int>(), count_at(require(init[j], "t", path), path + ".t", 1)});
    }
  }
  if (root.contains("dispatch")) {
    const json& d = root["dispatch"];
    if (!d.is_string() || (d != "simulate" && d != "oracle")) fail("config.dispatch", "expected 'simulate' or 'oracle'");
    c.dispatch = d.get<std::string>();
  }
  if (root.contains("mode") && !root["mode"].is_string()) fail("config.mode", "expected a string");
  check_k(c);
  return c;
}

ExperimentConfig preset(std::string_view name) {
  ExperimentConfig c;
  if (name == "fig2") {
    c.components.emplace_back(AttackProcess::table({0.5, 0.7, 0.85, 0.95, 0.97, 0.975, 0.978, 0.98}), 1.0);
    c.k = 1;
    c.horizon = 7;
  } else if (name == "fig3") {
    const std::vector<std::vector<double>> tables = {{0.5, 0.7, 0.85, 0.95, 0.97, 0.975},
                                                     {0.3, 0.4, 0.48, 0.54, 0.57, 0.59},
                                                     {0.36, 0.46, 0.5, 0.53, 0.55, 0.56},
                                                     {0.6, 0.78, 0.9, 0.96, 0.98, 0.99}};
    const std::vector<double> costs = {0.8, 1.0, 1.2, 0.9};
    for (std::size_t n = 0; n < tables.size(); ++n) c.components.emplace_back(AttackProcess::table(tables[n]), costs[n]);
    c.k = 1;
    c.horizon = 6;
    c.policies = {PolicyKind::whittle, PolicyKind::myopic};
  } else if (name == "fig4") {
    const std::vector<double> q = {0.2, 0.3, 0.3, 0.5, 0.6, 0.7, 0.7, 0.8};
    const std::vector<double> costs = {2.5, 2.0, 1.8, 1.5, 1.2, 1.0, 0.6, 0.5};
    for (std::size_t n = 0; n < q.size(); ++n) c.components.emplace_back(AttackProcess::markov(q[n]), costs[n]);
    c.k = 2;
    c.horizon = 500;
    c.replications = 2000;
    c.policies = {PolicyKind::whittle, PolicyKind::myopic};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig2, fig3 or fig4)");
  }
  return c;
}

std::string cmd_index(const ExperimentConfig& config) {
  check_horizon(config);
  std::ostringstream os;
  os << "component,state_i,state_t,index\n";
  for (std::size_t n = 0; n < config.components.size(); ++n) {
    for (const auto& row : index_table(config.components[n], config.horizon)) {
      os << n << ',' << row.state.i << ',' << row.state.t << ',' << format_number(row.index) << '\n';
    }
  }
  return os.str();
}

std::string cmd_simulate(const ExperimentConfig& config) {
  check_k(config);
  check_horizon(config);
  const std::vector<PolicyKind> policies =
      config.policies.empty() ? std::vector<PolicyKind>{PolicyKind::whittle, PolicyKind::myopic} : config.policies;
  std::ostringstream os;
  os << "policy,slot,mean_cumulative_cost,stderr\n";
  for (PolicyKind p : policies) {
    RunConfig rc{config.components, config.k, config.horizon, p, config.replications, config.seed, config.initial};
    const CostTrajectory traj = run(rc);
    for (std::size_t s = 0; s < config.horizon; ++s) {
      os << policy_name(p) << ',' << s + 1 << ',' << format_number(traj.mean_cumulative[s]) << ','
         << format_number(traj.stderr_cumulative[s]) << '\n';
    }
  }
  return os.str();
}

std::string cmd_evaluate(const ExperimentConfig& config) {
  check_k(config);
  check_horizon(config);
  const auto initial = initial_states(config);
  std::ostringstream os;
  os << "policy,horizon,expected_cost\n";
  for (PolicyKind p : exact_policies(config)) {
    const double v =
        policy_evaluate_exact(config.components, initial, config.k, config.horizon, rule_for(p), config.state_bound);
    os << policy_name(p) << ',' << config.horizon << ',' << format_number(v) << '\n';
  }
  return os.str();
}

std::string cmd_oracle(const ExperimentConfig& config, std::string* policy_table) {
  check_k(config);
  check_horizon(config);
  const auto initial = initial_states(config);
  const auto policies = exact_policies(config);
  std::ostringstream os;
  os << "horizon,optimal";
  for (PolicyKind p : policies) os << ',' << policy_name(p);
  for (PolicyKind p : policies) os << ',' << policy_name(p) << "_rel_gap";
  os << '\n';
  for (std::size_t T = 1; T <= config.horizon; ++T) {
    const DpResult dp = dp_optimal(config.components, initial, config.k, T, config.state_bound);
    std::vector<double> values;
    for (PolicyKind p : policies) {
      values.push_back(policy_evaluate_exact(config.components, initial, config.k, T, rule_for(p), config.state_bound));
    }
    os << T << ',' << format_number(dp.total_cost);
    for (double v : values) os << ',' << format_number(v);
    for (double v : values) os << ',' << format_number(relative_gap(v, dp.total_cost));
    os << '\n';
    if (policy_table && T == config.horizon) {
      if (config.components.size() > 3) throw ConfigError("policy table dumps are limited to N <= 3");
      std::ostringstream pt;
      pt << "slot,state,expected_cost,action\n";
      for (const auto& e : dp.table) {
        pt << e.slot + 1 << ',';
        write_state(pt, e.state);
        pt << ',' << format_number(e.expected_cost) << ',';
        for (std::size_t j = 0; j < e.action.size(); ++j) pt << (j ? " " : "") << e.action[j];
        pt << '\n';
      }
      *policy_table = pt.str();
    }
  }
  return os.str();
}

std::string cmd_subsidy(const ExperimentConfig& config) {
  if (config.k >= config.components.size()) throw ConfigError("config.K: the relaxed plan needs K < N");
  check_k(config);
  const RelaxedPlan plan = solve_lambda_star(config.components, config.k);
  std::ostringstream os;
  os << "arm,lambda_star,t0_star,activation_rate,mixing_probability\n";
  for (std::size_t n = 0; n < plan.arms.size(); ++n) {
    const auto& a = plan.arms[n];
    os << n << ',' << format_number(plan.lambda_star) << ',' << a.t0_star << ',' << format_number(a.activation_rate)
       << ',' << format_number(a.mixing) << '\n';
  }
  return os.str();
}

std::string cmd_queueing(const ExperimentConfig& config) {
  if (!config.queueing) throw ConfigError("config: the queueing command needs 'servers' and 'classes'");
  ExperimentConfig mapped = config;
  mapped.components = queueing_components(*config.queueing, mapped.k);
  return config.dispatch == "oracle" ? cmd_oracle(mapped) : cmd_simulate(mapped);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Whittle-index scheduling engine for intrusion-detection probing"};
  app.require_subcommand(1);
  std::string config_path, preset_name, out_path, policy_out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replications, horizon;
  app.add_option("--config", config_path, "JSON experiment configuration");
  app.add_option("--preset", preset_name, "figure preset: fig2 | fig3 | fig4");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--replications", replications, "Monte Carlo replications");
  app.add_option("--horizon", horizon, "horizon in slots");
  app.add_option("--out", out_path, "output CSV path (default: stdout)");
  app.add_option("--policy-out", policy_out, "oracle: also write the optimal policy table (N <= 3)");
  const std::pair<const char*, const char*> commands[] = {
      {"index", "Whittle index table per component"},
      {"simulate", "Monte Carlo cost trajectories per policy"},
      {"evaluate", "exact expected cost of the deterministic policies"},
      {"oracle", "optimal finite-horizon cost next to the policies, T = 1..horizon"},
      {"subsidy", "relaxed-constraint subsidy, delays and activation rates"},
      {"queueing", "map a server-allocation network, then simulate or run the oracle"},
  };
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (config_path.empty() == preset_name.empty()) throw ConfigError("exactly one of --config or --preset is required");
    ExperimentConfig config;
    if (!preset_name.empty()) {
      config = preset(preset_name);
    } else {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
      std::stringstream buf;
      buf << in.rdbuf();
      config = parse_config(buf.str());
    }
    if (seed) config.seed = *seed;
    if (replications) {
      if (*replications < 1) throw ConfigError("--replications must be >= 1");
      config.replications = *replications;
    }
    if (horizon) config.horizon = *horizon;

    const std::string cmd = app.get_subcommands().front()->get_name();
    std::string csv, table;
    if (cmd == "index") csv = cmd_index(config);
    else if (cmd == "simulate") csv = cmd_simulate(config);
    else if (cmd == "evaluate") csv = cmd_evaluate(config);
    else if (cmd == "oracle") csv = cmd_oracle(config, policy_out.empty() ? nullptr : &table);
    else if (cmd == "subsidy") csv = cmd_subsidy(config);
    else csv = cmd_queueing(config);

    auto write = [](const std::string& path, const std::string& text) {
      std::ofstream f(path, std::ios::binary);
      if (!f) throw ConfigError("cannot write '" + path + "'");
      f << text;
    };
    if (out_path.empty()) out << csv;
    else write(out_path, csv);
    if (!policy_out.empty()) write(policy_out, table);
    return kExitOk;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rmab::cli
