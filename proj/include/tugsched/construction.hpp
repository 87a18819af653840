#pragma once

// Adaptive greedy insertion: typeF orders first, then typeE orders, each at
// the position or visit plan with the smallest loss increase.

#include "tugsched/insertion.hpp"
#include "tugsched/model.hpp"

namespace tug {

/// Inserts pooled typeF order `order` at its cheapest position pair.
void greedy_insert_f(const Inserter& ins, Solution& sol, int order);

/// Inserts the pooled demand of typeE order `order` with its cheapest visit
/// plan. Throws InsufficientBarges when the free pool is too small.
void greedy_insert_e(const Inserter& ins, Solution& sol, int order);

/// Complete solution built from empty routes, orders in input order.
Solution construct(const Instance& inst, const Penalties& pen);

inline Solution construct(const Instance& inst) { return construct(inst, inst.penalties()); }

}  // namespace tug
