#include "tugsched/destroy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tugsched/error.hpp"
#include "tugsched/routes.hpp"

namespace tug {

namespace {

double route_cost(const Instance& inst, const Penalties& pen, const Solution& sol, int p) {
    return route_loss(inst, p, sol.routes[static_cast<std::size_t>(p)], pen).total;
}

std::vector<int> routed_f_orders(const Instance& inst, const Route& r) {
    std::vector<int> out;
    for (const RouteElement& el : r) {
        if (inst.kind(el.node) == NodeKind::FOrigin) {
            out.push_back(inst.node(el.node).ref);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool has_e_visit(const Instance& inst, const Route& r) {
    return std::any_of(r.begin(), r.end(),
                       [&inst](const RouteElement& el) { return inst.kind(el.node) == NodeKind::EDestination; });
}

// Costliest route satisfying `eligible`; ties go to the lowest index.
template <typename Pred>
int costliest_route(const Instance& inst, const Penalties& pen, const Solution& sol, Pred eligible) {
    int best = -1;
    double best_cost = -std::numeric_limits<double>::infinity();
    for (int p = 0; p < static_cast<int>(sol.routes.size()); ++p) {
        if (!eligible(sol.routes[static_cast<std::size_t>(p)])) {
            continue;
        }
        const double c = route_cost(inst, pen, sol, p);
        if (c > best_cost) {
            best_cost = c;
            best = p;
        }
    }
    return best;
}

int capped(int step, std::size_t available) {
    return std::min(std::max(step, 1), static_cast<int>(available));
}

}  // namespace

std::string_view to_string(DestroyOp op) {
    switch (op) {
        case DestroyOp::FRR: return "FRR";
        case DestroyOp::FGR: return "FGR";
        case DestroyOp::ERR: return "ERR";
        case DestroyOp::EGR: return "EGR";
        case DestroyOp::RRR: return "RRR";
        case DestroyOp::RGR: return "RGR";
    }
    return "?";
}

int default_step(const Instance& inst, const Solution& sol, DestroyOp op) {
    std::size_t n = 0;
    switch (op) {
        case DestroyOp::FRR:
        case DestroyOp::FGR: n = static_cast<std::size_t>(routed_f_count(inst, sol)); break;
        case DestroyOp::ERR:
        case DestroyOp::EGR: n = e_visits(inst, sol).size(); break;
        case DestroyOp::RRR:
        case DestroyOp::RGR:
            n = static_cast<std::size_t>(
                std::count_if(sol.routes.begin(), sol.routes.end(), [](const Route& r) { return !r.empty(); }));
            break;
    }
    return std::max(1, static_cast<int>(std::ceil(0.15 * static_cast<double>(n) - 1e-9)));
}

void frr(const Instance& inst, Solution& sol, int step, Rng& rng) {
    std::vector<int> routed;
    for (const Route& r : sol.routes) {
        const auto orders = routed_f_orders(inst, r);
        routed.insert(routed.end(), orders.begin(), orders.end());
    }
    if (routed.empty()) {
        throw NothingToRemove("no typeF order on the routes");
    }
    std::sort(routed.begin(), routed.end());
    const int n = capped(step, routed.size());
    for (int i = 0; i < n; ++i) {
        const std::size_t pick = rng.below(routed.size());
        remove_f_order(inst, sol, routed[pick]);
        routed.erase(routed.begin() + static_cast<std::ptrdiff_t>(pick));
    }
}

void fgr(const Instance& inst, const Penalties& pen, Solution& sol, int step) {
    auto holds_f = [&inst](const Route& r) { return !routed_f_orders(inst, r).empty(); };
    if (costliest_route(inst, pen, sol, holds_f) < 0) {
        throw NothingToRemove("no typeF order on the routes");
    }
    for (int i = 0; i < std::max(step, 1); ++i) {
        const int p = costliest_route(inst, pen, sol, holds_f);
        if (p < 0) {
            break;
        }
        const Route& r = sol.routes[static_cast<std::size_t>(p)];
        const double before = route_loss(inst, p, r, pen).total;
        int best = -1;
        double best_saving = -std::numeric_limits<double>::infinity();
        for (int k : routed_f_orders(inst, r)) {
            Route trial = r;
            std::erase_if(trial, [&](const RouteElement& el) {
                return el.node == inst.f_origin(k) || el.node == inst.f_destination(k);
            });
            const double saving = before - route_loss(inst, p, trial, pen).total;
            if (saving > best_saving) {
                best_saving = saving;
                best = k;
            }
        }
        remove_f_order(inst, sol, best);
    }
}

void err(const Instance& inst, Solution& sol, int step, Rng& rng) {
    if (e_visits(inst, sol).empty()) {
        throw NothingToRemove("no typeE visit on the routes");
    }
    const int n = capped(step, e_visits(inst, sol).size());
    for (int i = 0; i < n; ++i) {
        const std::vector<Position> visits = e_visits(inst, sol);
        const Position& pick = visits[rng.below(visits.size())];
        remove_e_visit(inst, sol, pick.route, pick.index);
    }
}

void egr(const Instance& inst, const Penalties& pen, Solution& sol, int step) {
    auto holds_e = [&inst](const Route& r) { return has_e_visit(inst, r); };
    if (costliest_route(inst, pen, sol, holds_e) < 0) {
        throw NothingToRemove("no typeE visit on the routes");
    }
    for (int i = 0; i < std::max(step, 1); ++i) {
        const int p = costliest_route(inst, pen, sol, holds_e);
        if (p < 0) {
            break;
        }
        const Route& r = sol.routes[static_cast<std::size_t>(p)];
        const double before = route_loss(inst, p, r, pen).total;
        int best = -1;
        double best_saving = -std::numeric_limits<double>::infinity();
        for (int idx = 0; idx < static_cast<int>(r.size()); ++idx) {
            if (inst.kind(r[static_cast<std::size_t>(idx)].node) != NodeKind::EDestination) {
                continue;
            }
            Solution trial;
            trial.routes = {r};
            remove_e_visit(inst, trial, 0, idx);
            const double saving = before - route_loss(inst, p, trial.routes[0], pen).total;
            if (saving > best_saving) {
                best_saving = saving;
                best = idx;
            }
        }
        remove_e_visit(inst, sol, p, best);
    }
}

void rrr(const Instance& inst, Solution& sol, int step, Rng& rng) {
    std::vector<int> busy;
    for (int p = 0; p < static_cast<int>(sol.routes.size()); ++p) {
        if (!sol.routes[static_cast<std::size_t>(p)].empty()) {
            busy.push_back(p);
        }
    }
    if (busy.empty()) {
        throw NothingToRemove("all routes are empty");
    }
    const int n = capped(step, busy.size());
    for (int i = 0; i < n; ++i) {
        const std::size_t pick = rng.below(busy.size());
        clear_route(inst, sol, busy[pick]);
        busy.erase(busy.begin() + static_cast<std::ptrdiff_t>(pick));
    }
}

void rgr(const Instance& inst, const Penalties& pen, Solution& sol, int step) {
    auto busy = [](const Route& r) { return !r.empty(); };
    if (costliest_route(inst, pen, sol, busy) < 0) {
        throw NothingToRemove("all routes are empty");
    }
    for (int i = 0; i < std::max(step, 1); ++i) {
        const int p = costliest_route(inst, pen, sol, busy);
        if (p < 0) {
            break;
        }
        clear_route(inst, sol, p);
    }
}

void destroy(DestroyOp op, const Instance& inst, const Penalties& pen, Solution& sol, int step, Rng& rng) {
    switch (op) {
        case DestroyOp::FRR: frr(inst, sol, step, rng); break;
        case DestroyOp::FGR: fgr(inst, pen, sol, step); break;
        case DestroyOp::ERR: err(inst, sol, step, rng); break;
        case DestroyOp::EGR: egr(inst, pen, sol, step); break;
        case DestroyOp::RRR: rrr(inst, sol, step, rng); break;
        case DestroyOp::RGR: rgr(inst, pen, sol, step); break;
    }
}

}  // namespace tug
