#pragma once

#include <cstddef>
#include <vector>

#include "rmab/arm.hpp"

namespace rmab {

/// Closed-form index of (0, e):
///   W(0,e) = c * ( p(e+1)(e + p(e)) / (1 + p(e+1) - p(e)) - sum_{k<=e} p(k) ),
/// with W(0,0) = 0. W(1,t) is evaluated as W(0,t-1) through the same path.
double whittle_index_delay(const ComponentSpec& spec, std::size_t delay);

double whittle_index(const ComponentSpec& spec, ArmState state);

/// True iff W(0,t) is strictly increasing on t = 0..horizon.
bool verify_strict_indexability(const ComponentSpec& spec, std::size_t horizon);

struct IndexRow {
  ArmState state;
  double index;
};

/// Rows (0,1..horizon) followed by (1,1..horizon).
std::vector<IndexRow> index_table(const ComponentSpec& spec, std::size_t horizon);

}  // namespace rmab
