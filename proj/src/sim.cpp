#include "rmab/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace rmab {

namespace {

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t replication, std::uint32_t tag, std::uint64_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replication), static_cast<std::uint32_t>(replication >> 32), tag,
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
  return std::mt19937_64(seq);
}

void validate(const RunConfig& c) {
  if (c.specs.empty()) throw std::invalid_argument("run needs at least one component");
  if (c.k < 1 || c.k > c.specs.size()) throw std::invalid_argument("K must lie in [1, N]");
  if (c.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (c.replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (!c.initial.empty() && c.initial.size() != c.specs.size()) {
    throw std::invalid_argument("initial states must match the number of components");
  }
}

}  // namespace

StreamSet::StreamSet(std::uint64_t seed, std::uint64_t replication, std::size_t arms)
    : policy_(make_stream(seed, replication, 1, 0)) {
  arms_.reserve(arms);
  for (std::size_t a = 0; a < arms; ++a) arms_.push_back(make_stream(seed, replication, 0, a));
}

WorldState sample_world(std::span<const ComponentSpec> specs, std::span<const ArmState> states, StreamSet& streams) {
  WorldState w{std::vector<int>(specs.size(), 0), std::vector<std::size_t>(specs.size(), 0)};
  for (std::size_t a = 0; a < specs.size(); ++a) {
    const std::size_t e = states[a].delay();
    // Walk the attack clock forward so the sample path uses the hazards.
    for (std::size_t s = 1; s <= e && !w.abnormal[a]; ++s) {
      if (unit_uniform(streams.arm(a)) < hazard(specs[a].process, s)) w.abnormal[a] = 1;
    }
    w.since_reset[a] = e;
  }
  return w;
}

StepResult world_step(std::span<const ComponentSpec> specs, WorldState& world, const Selection& selection,
                      StreamSet& streams) {
  const std::size_t n = specs.size();
  StepResult r{{}, 0.0};
  for (std::size_t a = 0; a < n; ++a) {
    if (world.abnormal[a]) r.cost += specs[a].cost;
  }
  std::vector<bool> probed(n, false);
  for (ArmId a : selection) {
    if (a >= n || probed[a]) throw std::invalid_argument("selection has an invalid or repeated arm");
    probed[a] = true;
    r.observations.push_back(world.abnormal[a]);
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (probed[a] && world.abnormal[a]) {
      world.abnormal[a] = 0;
      world.since_reset[a] = 0;
      continue;
    }
    if (probed[a]) world.since_reset[a] = 0;
    ++world.since_reset[a];
    if (!world.abnormal[a] && unit_uniform(streams.arm(a)) < hazard(specs[a].process, world.since_reset[a])) {
      world.abnormal[a] = 1;
    }
  }
  return r;
}

std::vector<double> run_replication(const RunConfig& config, std::uint64_t replication) {
  const std::size_t n = config.specs.size();
  const std::span<const ComponentSpec> specs(config.specs);
  StreamSet streams(config.seed, replication, n);
  std::vector<ArmState> states = config.initial.empty() ? std::vector<ArmState>(n, kFreshArm) : config.initial;
  WorldState world = sample_world(specs, states, streams);
  QueueState queue = QueueState::from_states(specs, states);

  std::vector<double> path(config.horizon);
  double cumulative = 0.0;
  for (std::size_t slot = 0; slot < config.horizon; ++slot) {
    Selection sel;
    switch (config.policy) {
      case PolicyKind::whittle: sel = select_whittle(specs, states, config.k); break;
      case PolicyKind::myopic: sel = select_myopic(specs, states, config.k); break;
      case PolicyKind::queue: sel = queue.head(config.k); break;
      case PolicyKind::random: sel = select_random(n, config.k, streams.policy()); break;
    }
    const StepResult step = world_step(specs, world, sel, streams);
    cumulative += step.cost;
    path[slot] = cumulative;

    std::map<ArmId, int> obs;
    std::vector<bool> probed(n, false);
    for (std::size_t j = 0; j < sel.size(); ++j) {
      obs[sel[j]] = step.observations[j];
      probed[sel[j]] = true;
    }
    for (std::size_t a = 0; a < n; ++a) {
      states[a] = probed[a] ? transition(states[a], Action::active, obs[a]) : transition(states[a], Action::passive, std::nullopt);
    }
    if (config.policy == PolicyKind::queue) queue = queue_step(queue, config.k, obs).second;
  }
  return path;
}

CostTrajectory run(const RunConfig& config) {
  validate(config);
  const std::size_t horizon = config.horizon;
  // Fixed-size blocks of replications are summed independently and then
  // reduced in block order, so the result does not depend on thread count.
  constexpr std::size_t kBlock = 64;
  const std::size_t blocks = (config.replications + kBlock - 1) / kBlock;
  std::vector<std::vector<double>> sums(blocks, std::vector<double>(horizon, 0.0));
  std::vector<std::vector<double>> squares(blocks, std::vector<double>(horizon, 0.0));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) {
      const std::size_t end = std::min(config.replications, (b + 1) * kBlock);
      for (std::size_t r = b * kBlock; r < end; ++r) {
        const auto path = run_replication(config, r);
        for (std::size_t s = 0; s < horizon; ++s) {
          sums[b][s] += path[s];
          squares[b][s] += path[s] * path[s];
        }
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, blocks);
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  const double r = static_cast<double>(config.replications);
  CostTrajectory out{std::vector<double>(horizon, 0.0), std::vector<double>(horizon, 0.0)};
  for (std::size_t s = 0; s < horizon; ++s) {
    double sum = 0.0, sq = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      sum += sums[b][s];
      sq += squares[b][s];
    }
    const double mean = sum / r;
    out.mean_cumulative[s] = mean;
    if (config.replications > 1) {
      const double var = std::max(0.0, (sq - r * mean * mean) / (r - 1.0));
      out.stderr_cumulative[s] = std::sqrt(var / r);
    }
  }
  return out;
}

RelaxedRunStats simulate_relaxed(std::span<const ComponentSpec> specs, const RelaxedPlan& plan, std::size_t slots,
                                 std::uint64_t seed) {
  if (slots < 1) throw std::invalid_argument("slots must be >= 1");
  const std::size_t n = specs.size();
  StreamSet streams(seed, 0, n);
  std::vector<ArmState> states(n, kFreshArm);
  WorldState world = sample_world(specs, states, streams);
  double activations = 0.0, cost = 0.0;
  for (std::size_t slot = 0; slot < slots; ++slot) {
    const Selection sel = relaxed_select(specs, states, plan, streams.policy());
    const StepResult step = world_step(specs, world, sel, streams);
    activations += static_cast<double>(sel.size());
    cost += step.cost;
    std::vector<int> obs(n, -1);
    for (std::size_t j = 0; j < sel.size(); ++j) obs[sel[j]] = step.observations[j];
    for (std::size_t a = 0; a < n; ++a) {
      states[a] = obs[a] >= 0 ? transition(states[a], Action::active, obs[a]) : transition(states[a], Action::passive, std::nullopt);
    }
  }
  return {activations / static_cast<double>(slots), cost / static_cast<double>(slots)};
}

}  // namespace rmab
