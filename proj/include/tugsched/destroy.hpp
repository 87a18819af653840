#pragma once

// Removal operators. Each takes `step` entities off the routes into the
// pools; removals are capped at what is available. All throw
// NothingToRemove when there is nothing of their kind on the routes.

#include <string_view>

#include "tugsched/evaluation.hpp"
#include "tugsched/model.hpp"
#include "tugsched/rng.hpp"

namespace tug {

enum class DestroyOp { FRR, FGR, ERR, EGR, RRR, RGR };

inline constexpr DestroyOp kDestroyOps[] = {DestroyOp::FRR, DestroyOp::FGR, DestroyOp::ERR,
                                            DestroyOp::EGR, DestroyOp::RRR, DestroyOp::RGR};

std::string_view to_string(DestroyOp op);

/// max(1, ceil(0.15 * n)) where n counts routed typeF orders (FRR, FGR),
/// routed typeE visits (ERR, EGR) or non-empty routes (RRR, RGR).
int default_step(const Instance& inst, const Solution& sol, DestroyOp op);

/// Random typeF orders.
void frr(const Instance& inst, Solution& sol, int step, Rng& rng);
/// Repeatedly: on the costliest route holding a typeF order, the order whose
/// removal saves most.
void fgr(const Instance& inst, const Penalties& pen, Solution& sol, int step);
/// Random typeE visits, each with the barges it drops.
void err(const Instance& inst, Solution& sol, int step, Rng& rng);
/// Greedy counterpart of err on the costliest route holding a typeE visit.
void egr(const Instance& inst, const Penalties& pen, Solution& sol, int step);
/// Random whole routes.
void rrr(const Instance& inst, Solution& sol, int step, Rng& rng);
/// Costliest whole routes.
void rgr(const Instance& inst, const Penalties& pen, Solution& sol, int step);

void destroy(DestroyOp op, const Instance& inst, const Penalties& pen, Solution& sol, int step, Rng& rng);

}  // namespace tug
