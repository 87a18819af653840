#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tugsched/evaluation.hpp"
#include "tugsched/model.hpp"

namespace tug {

/// One broken constraint. `constraint` is one of C1..C32, C17a or C17b.
/// C5 is checked per order: every typeE order is served by one or two
/// tugboats, each visiting at most twice.
struct Violation {
    std::string constraint;
    std::optional<int> tugboat;
    std::optional<NodeId> node;
    double magnitude = 1.0;
    std::string message;
};

inline constexpr double kTimeTolerance = 1e-6;

/// Checks a solution against the full constraint set, deriving the schedule
/// by earliest-start propagation. Empty result means feasible.
std::vector<Violation> validate(const Instance& inst, const Solution& sol);

/// Same, but checks the given schedule instead of a derived one, including
/// its consistency with travel times and load recursions.
std::vector<Violation> validate(const Instance& inst, const Solution& sol, const Schedule& schedule);

/// Distinct constraint tags present in `violations`, sorted.
std::vector<std::string> violated_tags(const std::vector<Violation>& violations);

}  // namespace tug
