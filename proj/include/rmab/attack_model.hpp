#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace rmab {

/// Geometric attack model: the component is compromised with probability q
/// in every slot, so p(t) = 1 - (1-q)^t.
struct MarkovIID {
  double q;
};

/// Explicit marginal table holding p(1), p(2), ..., p(L). Queries past L
/// return p(L).
struct ProbTable {
  std::vector<double> values;
};

/// Monotone abnormal-probability sequence {p(t)} of one component, with
/// p(0) = 0 (the component was reset t slots ago).
class AttackProcess {
 public:
  static AttackProcess markov(double q);
  static AttackProcess table(std::vector<double> values);

  bool is_markov() const { return std::holds_alternative<MarkovIID>(kind_); }
  const std::variant<MarkovIID, ProbTable>& kind() const { return kind_; }

  /// Limit of p(t) as t grows (1 for Markov, the last entry for tables).
  double limit() const;

  friend bool operator==(const AttackProcess&, const AttackProcess&);

 private:
  explicit AttackProcess(std::variant<MarkovIID, ProbTable> kind) : kind_(std::move(kind)) {}
  std::variant<MarkovIID, ProbTable> kind_;
};

inline bool operator==(const MarkovIID& a, const MarkovIID& b) { return a.q == b.q; }
inline bool operator==(const ProbTable& a, const ProbTable& b) { return a.values == b.values; }
inline bool operator==(const AttackProcess& a, const AttackProcess& b) { return a.kind_ == b.kind_; }

struct ComponentSpec {
  AttackProcess process;
  double cost = 1.0;  // per-slot cost while abnormal

  ComponentSpec(AttackProcess p, double c);
  friend bool operator==(const ComponentSpec&, const ComponentSpec&) = default;
};

double marginal_p(const AttackProcess& process, std::size_t t);

/// Conditional 0 -> 1 flip probability at step t since reset:
/// (p(t) - p(t-1)) / (1 - p(t-1)), and 1 when p(t-1) == 1.
double hazard(const AttackProcess& process, std::size_t t);

/// Condition C1 on a finite horizon: the increments p(t+1) - p(t) for
/// t = 0..horizon-1 are strictly decreasing and stay positive.
bool check_c1(const AttackProcess& process, std::size_t horizon);

}  // namespace rmab
