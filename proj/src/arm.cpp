#include "rmab/arm.hpp"

#include <stdexcept>

namespace rmab {

ArmState make_arm_state(int i, std::size_t t) {
  if (i != 0 && i != 1) throw std::invalid_argument("arm state i must be 0 or 1");
  if (t < 1) throw std::invalid_argument("arm state t must be >= 1");
  return ArmState{i, t};
}

double belief_abnormal(const ComponentSpec& spec, ArmState state) {
  if (state.t < 1) throw std::invalid_argument("belief_abnormal needs t >= 1");
  return marginal_p(spec.process, state.delay());
}

ArmState transition(ArmState state, Action action, std::optional<int> observation) {
  if (action == Action::passive) {
    if (observation) throw std::invalid_argument("passive arm cannot carry an observation");
    return ArmState{state.i, state.t + 1};
  }
  if (!observation) throw std::invalid_argument("probed arm requires an observation");
  if (*observation != 0 && *observation != 1) throw std::invalid_argument("observation must be 0 or 1");
  return ArmState{*observation, 1};
}

}  // namespace rmab
