#pragma once

// Exhaustive enumeration for tiny instances. The oracle simulates routes
// itself and does not reuse the evaluation or validator code, so it can be
// used to test them.

#include <functional>

#include "tugsched/evaluation.hpp"
#include "tugsched/model.hpp"

namespace tug {

struct OracleLimits {
    int max_nodes = 12;  // non-virtual nodes
};

struct OracleSolution {
    Solution solution;
    LossBreakdown loss;
};

/// Calls `fn` for every feasible complete solution. Routes of identical
/// consecutive tugboats are kept in non-decreasing lexicographic order, so
/// solutions that only permute such tugboats are yielded once.
/// Throws TooLarge above the node limit.
void enumerate(const Instance& inst, const OracleLimits& limits,
               const std::function<void(const OracleSolution&)>& fn);

/// Feasible solution of least loss; ties go to the lexicographically
/// smallest route encoding. Throws Infeasible when none exists.
OracleSolution optimum(const Instance& inst, const OracleLimits& limits = {});

/// Calls `fn(sol, feasible)` for every structurally well-formed route set:
/// each tugboat sequence uses typeF nodes and barges at most once, typeE
/// destinations at most twice per route, barges tagged with any typeE order,
/// no capacity, time or demand pruning, every tugboat enumerated separately.
/// `feasible` is the oracle's own verdict on the full constraint set.
void enumerate_universe(const Instance& inst, const OracleLimits& limits,
                        const std::function<void(const Solution&, bool feasible)>& fn);

/// The oracle's own feasibility verdict for a route set.
bool oracle_feasible(const Instance& inst, const Solution& sol);

/// Routing cost of a route set computed by the oracle.
LossBreakdown oracle_cost(const Instance& inst, const Solution& sol);

}  // namespace tug
