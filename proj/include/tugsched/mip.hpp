#pragma once

// CPLEX-LP export of the full routing model for external MIP solvers.
//
// Every typeE destination is split into two visit copies (t = 1, 2) so that
// each copy is an ordinary node with in-degree at most one per tugboat. Barge
// collection is modelled by assignment binaries a_b_h_t_p, trip scoping and
// subtour elimination by per-tugboat order variables o_i_p, and the product
// of the drop count with the visit indicator by w = e*u:
//   w <= K u,  w <= e,  w >= e - K (1 - u).

#include <cstddef>
#include <optional>
#include <string>

#include "tugsched/model.hpp"

namespace tug {

struct MipConfig {
    std::optional<double> time_horizon;  // defaults to max_p T_p
    std::optional<double> big_m;         // time big-M; defaults to 2*horizon + max t
    std::size_t max_variables = 1'000'000;
};

struct LpModel {
    std::string text;
    std::size_t variables = 0;
    std::size_t constraints = 0;
};

/// Throws TooLarge when the variable count exceeds the cap.
LpModel export_lp(const Instance& inst, const MipConfig& cfg = {});

}  // namespace tug
