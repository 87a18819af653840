#include "tugsched/routes.hpp"

#include <algorithm>

#include "tugsched/error.hpp"

namespace tug {

std::optional<Position> locate(const Solution& sol, NodeId node) {
    for (std::size_t p = 0; p < sol.routes.size(); ++p) {
        const Route& r = sol.routes[p];
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i].node == node) {
                return Position{static_cast<int>(p), static_cast<int>(i)};
            }
        }
    }
    return std::nullopt;
}

void renumber_visits(const Instance& inst, Route& route) {
    std::vector<int> seen(static_cast<std::size_t>(inst.e_count()), 0);
    for (RouteElement& el : route) {
        if (inst.kind(el.node) == NodeKind::EDestination) {
            el.visit = ++seen[static_cast<std::size_t>(inst.node(el.node).ref)];
        }
    }
}

int visits_on_route(const Instance& inst, const Route& route, int order) {
    const NodeId h = inst.e_destination(order);
    return static_cast<int>(std::count_if(route.begin(), route.end(), [h](const RouteElement& e) { return e.node == h; }));
}

std::vector<int> serving_tugs(const Instance& inst, const Solution& sol, int order) {
    std::vector<int> tugs;
    for (std::size_t p = 0; p < sol.routes.size(); ++p) {
        if (visits_on_route(inst, sol.routes[p], order) > 0) {
            tugs.push_back(static_cast<int>(p));
        }
    }
    return tugs;
}

std::vector<int> trip_barges(const Instance& inst, const Route& route, int h_index) {
    const NodeId h = route[static_cast<std::size_t>(h_index)].node;
    const int order = inst.node(h).ref;
    std::vector<int> out;
    for (int i = h_index - 1; i >= 0; --i) {
        const RouteElement& el = route[static_cast<std::size_t>(i)];
        if (el.node == h) {
            break;
        }
        if (el.order == order && inst.kind(el.node) == NodeKind::Barge) {
            out.push_back(i);
        }
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<bool> open_trip_slots(const Instance& inst, const Route& route, int order) {
    std::vector<bool> open(route.size() + 1, false);
    const NodeId h = inst.e_destination(order);
    bool carrying = false;
    for (std::size_t i = 0; i < route.size(); ++i) {
        open[i] = carrying;
        const RouteElement& el = route[i];
        if (el.node == h) {
            carrying = false;
        } else if (el.order == order && inst.kind(el.node) == NodeKind::Barge) {
            carrying = true;
        }
    }
    open[route.size()] = carrying;
    return open;
}

void pool_f(Solution& sol, int order) {
    sol.unassigned_f.push_back(order);
}

void pool_e(Solution& sol, int order, int count) {
    if (count <= 0) {
        return;
    }
    for (PooledEOrder& e : sol.unassigned_e) {
        if (e.order == order) {
            e.remaining += count;
            return;
        }
    }
    sol.unassigned_e.push_back({order, count});
}

void unpool_e(Solution& sol, int order, int count) {
    for (auto it = sol.unassigned_e.begin(); it != sol.unassigned_e.end(); ++it) {
        if (it->order == order) {
            it->remaining -= count;
            if (it->remaining <= 0) {
                sol.unassigned_e.erase(it);
            }
            return;
        }
    }
}

void free_barge(Solution& sol, int barge) {
    auto it = std::lower_bound(sol.free_barges.begin(), sol.free_barges.end(), barge);
    sol.free_barges.insert(it, barge);
}

bool take_barge(Solution& sol, int barge) {
    auto it = std::find(sol.free_barges.begin(), sol.free_barges.end(), barge);
    if (it == sol.free_barges.end()) {
        return false;
    }
    sol.free_barges.erase(it);
    return true;
}

void remove_f_order(const Instance& inst, Solution& sol, int order) {
    const NodeId o = inst.f_origin(order);
    const NodeId d = inst.f_destination(order);
    bool found = false;
    for (Route& r : sol.routes) {
        const auto before = r.size();
        std::erase_if(r, [o, d](const RouteElement& e) { return e.node == o || e.node == d; });
        found = found || r.size() != before;
    }
    if (!found) {
        throw NothingToRemove("typeF order " + std::to_string(order) + " is not routed");
    }
    pool_f(sol, order);
}

int remove_e_visit(const Instance& inst, Solution& sol, int route, int index) {
    Route& r = sol.routes[static_cast<std::size_t>(route)];
    const int order = inst.node(r[static_cast<std::size_t>(index)].node).ref;
    std::vector<int> doomed = trip_barges(inst, r, index);
    doomed.push_back(index);
    for (auto it = doomed.rbegin(); it != doomed.rend(); ++it) {
        const RouteElement& el = r[static_cast<std::size_t>(*it)];
        if (inst.kind(el.node) == NodeKind::Barge) {
            free_barge(sol, inst.node(el.node).ref);
        }
        r.erase(r.begin() + *it);
    }
    const int dropped = static_cast<int>(doomed.size()) - 1;
    renumber_visits(inst, r);
    pool_e(sol, order, dropped);
    return dropped;
}

void clear_route(const Instance& inst, Solution& sol, int route) {
    Route& r = sol.routes[static_cast<std::size_t>(route)];
    std::vector<int> f_seen;
    std::vector<int> carried(static_cast<std::size_t>(inst.e_count()), 0);
    for (const RouteElement& el : r) {
        const NodeInfo& info = inst.node(el.node);
        switch (info.kind) {
            case NodeKind::FOrigin: f_seen.push_back(info.ref); break;
            case NodeKind::Barge:
                free_barge(sol, info.ref);
                if (el.order >= 0) {
                    ++carried[static_cast<std::size_t>(el.order)];
                }
                break;
            case NodeKind::EDestination:
                pool_e(sol, info.ref, carried[static_cast<std::size_t>(info.ref)]);
                carried[static_cast<std::size_t>(info.ref)] = 0;
                break;
            default: break;
        }
    }
    for (int k : f_seen) {
        pool_f(sol, k);
    }
    r.clear();
}

int routed_f_count(const Instance& inst, const Solution& sol) {
    int n = 0;
    for (const Route& r : sol.routes) {
        for (const RouteElement& el : r) {
            if (inst.kind(el.node) == NodeKind::FOrigin) {
                ++n;
            }
        }
    }
    return n;
}

std::vector<Position> e_visits(const Instance& inst, const Solution& sol) {
    std::vector<Position> out;
    for (std::size_t p = 0; p < sol.routes.size(); ++p) {
        const Route& r = sol.routes[p];
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (inst.kind(r[i].node) == NodeKind::EDestination) {
                out.push_back({static_cast<int>(p), static_cast<int>(i)});
            }
        }
    }
    return out;
}

}  // namespace tug
