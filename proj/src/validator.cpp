#include "tugsched/validator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace tug {

namespace {

class Checker {
public:
    Checker(const Instance& inst, const Solution& sol) : inst_(inst), sol_(sol) {}

    std::vector<Violation> run(const Schedule* given) {
        const int tugs = inst_.tugboat_count();
        const int routes = static_cast<int>(sol_.routes.size());
        if (routes != tugs) {
            add("C1", std::nullopt, std::nullopt, std::abs(routes - tugs),
                "solution has " + std::to_string(routes) + " routes for " + std::to_string(tugs) + " tugboats");
        }
        std::vector<bool> route_ok(sol_.routes.size(), true);
        for (int p = 0; p < routes; ++p) {
            route_ok[static_cast<std::size_t>(p)] = check_elements(p);
        }
        check_coverage();
        check_typeE(route_ok);

        Schedule derived;
        const Schedule* schedule = given;
        if (schedule == nullptr) {
            for (std::size_t p = 0; p < sol_.routes.size(); ++p) {
                derived.routes.push_back(route_ok[p] ? propagate_route(inst_, sol_.routes[p], true) : RouteSchedule{});
            }
            schedule = &derived;
        } else if (schedule->routes.size() != sol_.routes.size()) {
            add("C22", std::nullopt, std::nullopt, 1.0, "schedule does not match the number of routes");
            return std::move(out_);
        }
        for (int p = 0; p < std::min(routes, tugs); ++p) {
            if (!route_ok[static_cast<std::size_t>(p)]) {
                continue;
            }
            const RouteSchedule& rs = schedule->routes[static_cast<std::size_t>(p)];
            if (rs.visits.size() != sol_.routes[static_cast<std::size_t>(p)].size()) {
                add("C22", p, std::nullopt, 1.0, "schedule does not match route length");
                continue;
            }
            check_schedule(p, rs);
        }
        return std::move(out_);
    }

private:
    void add(const char* tag, std::optional<int> tug, std::optional<NodeId> node, double magnitude,
             std::string message) {
        out_.push_back({tag, tug, node, magnitude, std::move(message)});
    }

    // Node ids, virtual nodes, barge tags and visit indices.
    bool check_elements(int p) {
        bool ok = true;
        const Route& r = sol_.routes[static_cast<std::size_t>(p)];
        std::vector<int> seen(static_cast<std::size_t>(inst_.e_count()), 0);
        for (const RouteElement& el : r) {
            if (!inst_.valid_node(el.node)) {
                add("C8", p, el.node, 1.0, "route references unknown node " + std::to_string(el.node));
                ok = false;
                continue;
            }
            const NodeKind kind = inst_.kind(el.node);
            if (kind == NodeKind::Source) {
                add("C1", p, el.node, 1.0, "virtual origin may only start a route");
                ok = false;
                continue;
            }
            if (kind == NodeKind::Sink) {
                add("C2", p, el.node, 1.0, "virtual sink may only end a route");
                ok = false;
                continue;
            }
            if (kind == NodeKind::Barge) {
                if (el.order < 0 || el.order >= inst_.e_count()) {
                    add("C7", p, el.node, 1.0, "barge is not collected for a known typeE order");
                    ok = false;
                }
            } else if (el.order != -1) {
                add("C7", p, el.node, 1.0, "only barge elements carry a typeE order tag");
            }
            if (kind == NodeKind::EDestination) {
                int& count = seen[static_cast<std::size_t>(inst_.node(el.node).ref)];
                ++count;
                if (count > 2) {
                    add("C14", p, el.node, 1.0, "typeE destination visited more than twice by one tugboat");
                } else if (el.visit != count) {
                    add("C13", p, el.node, 1.0,
                        "visit " + std::to_string(el.visit) + " recorded where visit " + std::to_string(count) +
                            " happens");
                }
            } else if (el.visit != 1) {
                add("C14", p, el.node, 1.0, "visit index other than 1 on a node visited once");
            }
        }
        return ok;
    }

    void check_coverage() {
        std::vector<int> count(static_cast<std::size_t>(inst_.node_count()), 0);
        std::vector<int> where(static_cast<std::size_t>(inst_.node_count()), -1);
        std::vector<int> pos(static_cast<std::size_t>(inst_.node_count()), -1);
        for (std::size_t p = 0; p < sol_.routes.size(); ++p) {
            const Route& r = sol_.routes[p];
            for (std::size_t i = 0; i < r.size(); ++i) {
                if (!inst_.valid_node(r[i].node)) {
                    continue;
                }
                const auto n = static_cast<std::size_t>(r[i].node);
                ++count[n];
                where[n] = static_cast<int>(p);
                pos[n] = static_cast<int>(i);
            }
        }
        for (int k = 0; k < inst_.f_count(); ++k) {
            const auto o = static_cast<std::size_t>(inst_.f_origin(k));
            const auto d = static_cast<std::size_t>(inst_.f_destination(k));
            if (count[o] == 0 && count[d] == 0) {
                add("C3", std::nullopt, inst_.f_origin(k), 1.0, "typeF order " + std::to_string(k) + " is not served");
                continue;
            }
            if (count[o] != 1) {
                add("C3", std::nullopt, inst_.f_origin(k), std::abs(count[o] - 1),
                    "typeF origin covered " + std::to_string(count[o]) + " times");
            }
            if (count[d] != 1) {
                add("C4", std::nullopt, inst_.f_destination(k), std::abs(count[d] - 1),
                    "typeF destination covered " + std::to_string(count[d]) + " times");
            }
            if (count[o] == 1 && count[d] == 1) {
                if (where[o] != where[d]) {
                    add("C9", where[d], inst_.f_destination(k), 1.0,
                        "typeF order " + std::to_string(k) + " split across tugboats");
                } else if (pos[d] < pos[o]) {
                    add("C9", where[d], inst_.f_destination(k), 1.0,
                        "typeF order " + std::to_string(k) + " delivered before pickup");
                }
            } else if (count[o] + count[d] == 1) {
                add("C9", std::nullopt, count[o] ? inst_.f_origin(k) : inst_.f_destination(k), 1.0,
                    "typeF order " + std::to_string(k) + " has only one endpoint routed");
            }
        }
        for (int b = 0; b < inst_.barge_count(); ++b) {
            const auto n = static_cast<std::size_t>(inst_.barge_node(b));
            if (count[n] > 1) {
                add("C6", std::nullopt, inst_.barge_node(b), count[n] - 1, "barge used more than once");
            }
        }
    }

    // Per-visit drops from barge tags, order service and totals.
    void check_typeE(const std::vector<bool>& route_ok) {
        const int ne = inst_.e_count();
        std::vector<int> delivered(static_cast<std::size_t>(ne), 0);
        std::vector<std::set<int>> tugs(static_cast<std::size_t>(ne));
        for (std::size_t p = 0; p < sol_.routes.size(); ++p) {
            if (!route_ok[p]) {
                continue;
            }
            const Route& r = sol_.routes[p];
            const int tug = static_cast<int>(p);
            std::vector<int> carried(static_cast<std::size_t>(ne), 0);
            std::vector<int> first_drop(static_cast<std::size_t>(ne), -1);
            for (const RouteElement& el : r) {
                const NodeInfo& info = inst_.node(el.node);
                if (info.kind == NodeKind::Barge) {
                    ++carried[static_cast<std::size_t>(el.order)];
                } else if (info.kind == NodeKind::EDestination) {
                    const auto h = static_cast<std::size_t>(info.ref);
                    const int drop = carried[h];
                    carried[h] = 0;
                    delivered[h] += drop;
                    tugs[h].insert(tug);
                    if (drop == 0) {
                        add("C10", tug, el.node, 1.0, "typeE visit drops no barges");
                    }
                    if (first_drop[h] < 0) {
                        first_drop[h] = drop;
                    } else if (first_drop[h] == 0 && drop > 0) {
                        add("C12", tug, el.node, drop, "second visit drops barges while the first dropped none");
                    }
                }
            }
            for (int h = 0; h < ne; ++h) {
                if (carried[static_cast<std::size_t>(h)] > 0) {
                    add("C10", tug, inst_.e_destination(h), carried[static_cast<std::size_t>(h)],
                        "barges collected for typeE order " + std::to_string(h) + " are never dropped");
                }
            }
        }
        for (int h = 0; h < ne; ++h) {
            const auto hh = static_cast<std::size_t>(h);
            const NodeId node = inst_.e_destination(h);
            if (tugs[hh].empty()) {
                add("C5", std::nullopt, node, 1.0, "typeE order " + std::to_string(h) + " is not served");
                continue;
            }
            if (tugs[hh].size() > 2) {
                add("C5", std::nullopt, node, static_cast<double>(tugs[hh].size() - 2),
                    "typeE order " + std::to_string(h) + " served by more than two tugboats");
            }
            const int q = inst_.order_e(h).required_barges;
            if (delivered[hh] != q) {
                add("C11", std::nullopt, node, std::abs(delivered[hh] - q),
                    "typeE order " + std::to_string(h) + " receives " + std::to_string(delivered[hh]) + " of " +
                        std::to_string(q) + " barges");
            }
        }
    }

    void check_schedule(int p, const RouteSchedule& rs) {
        const Route& r = sol_.routes[static_cast<std::size_t>(p)];
        const Tugboat& boat = inst_.tugboat(p);
        const int K = inst_.capacity();
        const double tol = kTimeTolerance;

        if (std::abs(rs.start) > tol) {
            add("C28", p, inst_.source(), std::abs(rs.start), "tugboat does not leave the origin at time 0");
        }
        if (rs.start_empty != 0) {
            add("C29", p, inst_.source(), std::abs(rs.start_empty), "tugboat leaves the origin towing empty barges");
        }
        if (rs.start_full != 0) {
            add("C30", p, inst_.source(), std::abs(rs.start_full), "tugboat leaves the origin towing laden barges");
        }

        std::vector<int> carried(static_cast<std::size_t>(inst_.e_count()), 0);
        NodeId prev = inst_.source();
        double prev_dep = rs.start;
        int prev_full = rs.start_full;
        int prev_empty = rs.start_empty;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const RouteElement& el = r[i];
            const VisitSchedule& v = rs.visits[i];
            const NodeInfo& info = inst_.node(el.node);
            const bool is_h = info.kind == NodeKind::EDestination;

            if (v.arrival < -tol || v.stay < -tol) {
                add("C22", p, el.node, std::max(-v.arrival, -v.stay), "negative arrival or staying time");
            }
            const double earliest_arrival = prev_dep + inst_.time(prev, el.node);
            if (v.arrival < earliest_arrival - tol) {
                add("C22", p, el.node, earliest_arrival - v.arrival, "arrival earlier than travel time allows");
            }
            const double service = v.arrival + v.stay;
            if (service < info.window.earliest - tol) {
                add(is_h ? "C20" : "C18", p, el.node, info.window.earliest - service, "service starts before window");
            }
            if (v.arrival > info.window.latest + tol) {
                add(is_h ? "C21" : "C19", p, el.node, v.arrival - info.window.latest, "arrival after window closes");
            }
            if (info.kind == NodeKind::Barge && service < inst_.barge(info.ref).idle_until - tol) {
                add("C16", p, el.node, inst_.barge(info.ref).idle_until - service, "barge taken before it is idle");
            }

            int want_full = prev_full;
            int want_empty = prev_empty;
            switch (info.kind) {
                case NodeKind::FOrigin: {
                    ++want_full;
                    // Pickup-to-delivery timing for the pair.
                    const NodeId d = inst_.f_destination(info.ref);
                    for (std::size_t j = i + 1; j < r.size(); ++j) {
                        if (r[j].node == d) {
                            const double need = v.departure() + inst_.time(el.node, d);
                            if (rs.visits[j].arrival < need - tol) {
                                add("C23", p, d, need - rs.visits[j].arrival,
                                    "delivery earlier than pickup plus travel time");
                            }
                            break;
                        }
                    }
                    break;
                }
                case NodeKind::FDestination: --want_full; break;
                case NodeKind::Barge:
                    ++want_empty;
                    ++carried[static_cast<std::size_t>(el.order)];
                    break;
                case NodeKind::EDestination: {
                    int& c = carried[static_cast<std::size_t>(info.ref)];
                    if (v.dropped != c) {
                        add("C10", p, el.node, std::abs(v.dropped - c),
                            "recorded drop differs from barges collected on this trip");
                    }
                    c = 0;
                    want_empty -= v.dropped;
                    for (int b : trip_barge_indices(r, i)) {
                        const VisitSchedule& bv = rs.visits[static_cast<std::size_t>(b)];
                        const double need = bv.departure() + inst_.time(r[static_cast<std::size_t>(b)].node, el.node);
                        if (v.arrival < need - tol) {
                            add("C24", p, el.node, need - v.arrival, "typeE visit before collected barge can arrive");
                        }
                    }
                    break;
                }
                default: break;
            }
            if (v.full_load != want_full) {
                add(info.kind == NodeKind::FDestination ? "C26" : "C25", p, el.node,
                    std::abs(v.full_load - want_full), "laden-barge count does not follow the route");
            }
            if (v.empty_load != want_empty) {
                add("C27", p, el.node, std::abs(v.empty_load - want_empty),
                    "empty-barge count does not follow the route");
            }
            if (v.full_load + v.empty_load > K) {
                add("C17a", p, el.node, v.full_load + v.empty_load - K, "tugboat overloaded");
            }
            if (v.full_load < 0 || v.empty_load < 0) {
                add("C17b", p, el.node, -std::min(v.full_load, v.empty_load), "negative barge count");
            }
            prev = el.node;
            prev_dep = v.departure();
            prev_full = v.full_load;
            prev_empty = v.empty_load;
        }
        const double earliest_finish = prev_dep + inst_.time(prev, inst_.sink());
        if (rs.finish < earliest_finish - tol) {
            add("C22", p, inst_.sink(), earliest_finish - rs.finish, "return earlier than travel time allows");
        }
        if (rs.finish - rs.start > boat.max_working_time + tol) {
            add("C15", p, inst_.sink(), rs.finish - rs.start - boat.max_working_time, "working time exceeded");
        }
        if (prev_empty != 0) {
            add("C31", p, inst_.sink(), std::abs(prev_empty), "tugboat returns towing empty barges");
        }
        if (prev_full != 0) {
            add("C32", p, inst_.sink(), std::abs(prev_full), "tugboat returns towing laden barges");
        }
    }

    std::vector<int> trip_barge_indices(const Route& r, std::size_t h_index) const {
        std::vector<int> out;
        const NodeId h = r[h_index].node;
        const int order = inst_.node(h).ref;
        for (std::size_t j = h_index; j-- > 0;) {
            if (r[j].node == h) {
                break;
            }
            if (r[j].order == order && inst_.kind(r[j].node) == NodeKind::Barge) {
                out.push_back(static_cast<int>(j));
            }
        }
        return out;
    }

    const Instance& inst_;
    const Solution& sol_;
    std::vector<Violation> out_;
};

}  // namespace

std::vector<Violation> validate(const Instance& inst, const Solution& sol) {
    return Checker(inst, sol).run(nullptr);
}

std::vector<Violation> validate(const Instance& inst, const Solution& sol, const Schedule& schedule) {
    return Checker(inst, sol).run(&schedule);
}

std::vector<std::string> violated_tags(const std::vector<Violation>& violations) {
    std::set<std::string> tags;
    for (const Violation& v : violations) {
        tags.insert(v.constraint);
    }
    return {tags.begin(), tags.end()};
}

}  // namespace tug
