#include "tugsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>

#include "tugsched/error.hpp"

namespace tug {

namespace {

constexpr double kTol = 1e-6;

void check_size(const Instance& inst, const OracleLimits& limits) {
    const int n = inst.node_count() - 2;
    if (n > limits.max_nodes) {
        throw TooLarge("instance has " + std::to_string(n) + " non-virtual nodes, oracle limit is " +
                       std::to_string(limits.max_nodes));
    }
}

bool identical_tugs(const Tugboat& a, const Tugboat& b) {
    return a.max_working_time == b.max_working_time && a.cost_per_time == b.cost_per_time &&
           a.cost_per_distance == b.cost_per_distance;
}

std::vector<std::pair<NodeId, int>> encode(const Route& r) {
    std::vector<std::pair<NodeId, int>> out;
    for (const RouteElement& el : r) {
        out.emplace_back(el.node, el.order);
    }
    return out;
}

std::vector<std::vector<std::pair<NodeId, int>>> encode(const Solution& s) {
    std::vector<std::vector<std::pair<NodeId, int>>> out;
    for (const Route& r : s.routes) {
        out.push_back(encode(r));
    }
    return out;
}

// Shared depth-first search over route sets.
class Enumerator {
public:
    Enumerator(const Instance& inst, bool universe) : inst_(inst), universe_(universe) {
        const auto P = static_cast<std::size_t>(inst.tugboat_count());
        routes_.resize(P);
        f_on_.assign(static_cast<std::size_t>(inst.f_count()), -1);
        f_done_.assign(static_cast<std::size_t>(inst.f_count()), false);
        barge_used_.assign(static_cast<std::size_t>(inst.barge_count()), false);
        delivered_.assign(static_cast<std::size_t>(inst.e_count()), 0);
        tugs_serving_.assign(static_cast<std::size_t>(inst.e_count()), 0);
    }

    std::function<void(const Solution&)> on_leaf;

    void run() { start_route(0); }

private:
    struct RouteState {
        NodeId cur;
        double dep;
        int load;
        std::vector<int> carried;  // per typeE order
        std::vector<int> visits;   // per typeE order
        bool claims_any;           // this route serves some order (feasible mode bookkeeping)
    };

    void start_route(int p) {
        if (p == inst_.tugboat_count()) {
            leaf();
            return;
        }
        RouteState st{inst_.source(), 0.0, 0, std::vector<int>(static_cast<std::size_t>(inst_.e_count()), 0),
                      std::vector<int>(static_cast<std::size_t>(inst_.e_count()), 0), false};
        extend(p, st);
    }

    bool symmetric_prefix_ok(int p) const {
        if (universe_ || p == 0 || !identical_tugs(inst_.tugboat(p), inst_.tugboat(p - 1))) {
            return true;
        }
        const Route& prev = routes_[static_cast<std::size_t>(p - 1)];
        const Route& cur = routes_[static_cast<std::size_t>(p)];
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (i >= prev.size()) {
                return true;
            }
            const auto a = std::make_pair(cur[i].node, cur[i].order);
            const auto b = std::make_pair(prev[i].node, prev[i].order);
            if (a != b) {
                return a > b;
            }
        }
        return true;
    }

    bool symmetric_complete_ok(int p) const {
        if (universe_ || p == 0 || !identical_tugs(inst_.tugboat(p), inst_.tugboat(p - 1))) {
            return true;
        }
        return encode(routes_[static_cast<std::size_t>(p - 1)]) <= encode(routes_[static_cast<std::size_t>(p)]);
    }

    void close(int p, const RouteState& st) {
        if (!universe_) {
            if (st.load != 0) {
                return;
            }
            const double fin = st.dep + inst_.time(st.cur, inst_.sink());
            if (fin > inst_.tugboat(p).max_working_time + kTol) {
                return;
            }
            if (!symmetric_complete_ok(p)) {
                return;
            }
        }
        start_route(p + 1);
    }

    void leaf() {
        if (!universe_) {
            for (int k = 0; k < inst_.f_count(); ++k) {
                if (!f_done_[static_cast<std::size_t>(k)]) {
                    return;
                }
            }
            for (int h = 0; h < inst_.e_count(); ++h) {
                if (delivered_[static_cast<std::size_t>(h)] != inst_.order_e(h).required_barges) {
                    return;
                }
            }
        }
        Solution s;
        s.routes = routes_;
        for (int k = 0; k < inst_.f_count(); ++k) {
            if (f_on_[static_cast<std::size_t>(k)] < 0) {
                s.unassigned_f.push_back(k);
            }
        }
        for (int h = 0; h < inst_.e_count(); ++h) {
            const int missing = inst_.order_e(h).required_barges - delivered_[static_cast<std::size_t>(h)];
            if (missing > 0) {
                s.unassigned_e.push_back({h, missing});
            }
        }
        for (int b = 0; b < inst_.barge_count(); ++b) {
            if (!barge_used_[static_cast<std::size_t>(b)]) {
                s.free_barges.push_back(b);
            }
        }
        on_leaf(s);
    }

    // Arrival check; returns the departure or a negative value when pruned.
    double arrive(int p, const RouteState& st, NodeId node, double ready) const {
        const double a = st.dep + inst_.time(st.cur, node);
        if (!universe_) {
            if (a > inst_.node(node).window.latest + kTol) {
                return -1.0;
            }
            const double d = std::max(a, ready);
            if (d > inst_.tugboat(p).max_working_time + kTol) {
                return -1.0;
            }
            return d;
        }
        return std::max(a, ready);
    }

    void push(int p, RouteElement el) {
        routes_[static_cast<std::size_t>(p)].push_back(el);
    }
    void pop(int p) { routes_[static_cast<std::size_t>(p)].pop_back(); }

    void extend(int p, RouteState& st) {
        const int K = inst_.capacity();
        close(p, st);

        for (int k = 0; k < inst_.f_count(); ++k) {
            const auto ks = static_cast<std::size_t>(k);
            const NodeId o = inst_.f_origin(k);
            const NodeId d = inst_.f_destination(k);
            // Origin.
            if (f_on_[ks] < 0 && (universe_ || st.load + 1 <= K)) {
                const double dep = arrive(p, st, o, inst_.node(o).ready);
                if (dep >= 0.0) {
                    RouteState next = st;
                    next.cur = o;
                    next.dep = dep;
                    next.load += 1;
                    f_on_[ks] = p;
                    push(p, {o, 1, -1});
                    if (symmetric_prefix_ok(p)) {
                        extend(p, next);
                    }
                    pop(p);
                    f_on_[ks] = -1;
                }
            }
            // Destination: in feasible mode only after this route's origin.
            const bool dest_allowed = universe_ ? !dest_used(k) : (f_on_[ks] == p && !f_done_[ks]);
            if (dest_allowed) {
                const double dep = arrive(p, st, d, inst_.node(d).ready);
                if (dep >= 0.0) {
                    RouteState next = st;
                    next.cur = d;
                    next.dep = dep;
                    next.load -= 1;
                    const bool was = f_done_[ks];
                    f_done_[ks] = true;
                    dest_route_[k] = p;
                    push(p, {d, 1, -1});
                    if (symmetric_prefix_ok(p)) {
                        extend(p, next);
                    }
                    pop(p);
                    dest_route_.erase(k);
                    f_done_[ks] = was;
                }
            }
        }

        for (int h = 0; h < inst_.e_count(); ++h) {
            const auto hs = static_cast<std::size_t>(h);
            const NodeId hn = inst_.e_destination(h);
            const int q = inst_.order_e(h).required_barges;
            const bool joins = st.visits[hs] == 0 && st.carried[hs] == 0;
            // Barge collected for h.
            for (int b = 0; b < inst_.barge_count(); ++b) {
                const auto bs = static_cast<std::size_t>(b);
                if (barge_used_[bs]) {
                    continue;
                }
                if (!universe_) {
                    if (st.load + 1 > K || delivered_[hs] + st.carried[hs] + 1 > q || st.visits[hs] >= 2) {
                        continue;
                    }
                    if (joins && tugs_serving_[hs] >= 2) {
                        continue;
                    }
                }
                const NodeId bn = inst_.barge_node(b);
                const double dep = arrive(p, st, bn, inst_.node(bn).ready);
                if (dep < 0.0) {
                    continue;
                }
                RouteState next = st;
                next.cur = bn;
                next.dep = dep;
                next.load += 1;
                next.carried[hs] += 1;
                barge_used_[bs] = true;
                if (joins && !universe_) {
                    ++tugs_serving_[hs];
                }
                push(p, {bn, 1, h});
                if (symmetric_prefix_ok(p)) {
                    extend(p, next);
                }
                pop(p);
                if (joins && !universe_) {
                    --tugs_serving_[hs];
                }
                barge_used_[bs] = false;
            }
            // Visit of h.
            if (st.visits[hs] < 2 && (universe_ || st.carried[hs] >= 1)) {
                const double dep = arrive(p, st, hn, inst_.node(hn).ready);
                if (dep >= 0.0) {
                    RouteState next = st;
                    next.cur = hn;
                    next.dep = dep;
                    next.load -= st.carried[hs];
                    next.carried[hs] = 0;
                    next.visits[hs] += 1;
                    delivered_[hs] += st.carried[hs];
                    push(p, {hn, next.visits[hs], -1});
                    if (symmetric_prefix_ok(p)) {
                        extend(p, next);
                    }
                    pop(p);
                    delivered_[hs] -= st.carried[hs];
                }
            }
        }
    }

    bool dest_used(int k) const { return dest_route_.contains(k); }

    const Instance& inst_;
    bool universe_;
    std::vector<Route> routes_;
    std::vector<int> f_on_;
    std::vector<bool> f_done_;
    std::map<int, int> dest_route_;
    std::vector<bool> barge_used_;
    std::vector<int> delivered_;
    std::vector<int> tugs_serving_;
};

}  // namespace

LossBreakdown oracle_cost(const Instance& inst, const Solution& sol) {
    LossBreakdown out;
    for (int p = 0; p < static_cast<int>(sol.routes.size()); ++p) {
        const Tugboat& t = inst.tugboat(p);
        NodeId prev = inst.source();
        auto arc = [&](NodeId i, NodeId j) {
            out.time_cost += t.cost_per_time * inst.time(i, j);
            out.distance_cost += t.cost_per_distance * inst.distance(i, j);
        };
        for (const RouteElement& el : sol.routes[static_cast<std::size_t>(p)]) {
            arc(prev, el.node);
            prev = el.node;
        }
        arc(prev, inst.sink());
    }
    out.total = out.time_cost + out.distance_cost;
    return out;
}

bool oracle_feasible(const Instance& inst, const Solution& sol) {
    if (static_cast<int>(sol.routes.size()) != inst.tugboat_count()) {
        return false;
    }
    const int K = inst.capacity();
    std::vector<int> origin_seen(static_cast<std::size_t>(inst.f_count()), 0);
    std::vector<int> dest_seen(static_cast<std::size_t>(inst.f_count()), 0);
    std::vector<int> barge_seen(static_cast<std::size_t>(inst.barge_count()), 0);
    std::vector<int> delivered(static_cast<std::size_t>(inst.e_count()), 0);
    std::vector<std::set<int>> servers(static_cast<std::size_t>(inst.e_count()));

    for (int p = 0; p < inst.tugboat_count(); ++p) {
        const Route& r = sol.routes[static_cast<std::size_t>(p)];
        std::vector<int> carried(static_cast<std::size_t>(inst.e_count()), 0);
        std::vector<int> visits(static_cast<std::size_t>(inst.e_count()), 0);
        std::vector<int> open_f(static_cast<std::size_t>(inst.f_count()), 0);
        NodeId prev = inst.source();
        double t = 0.0;
        int load = 0;
        for (const RouteElement& el : r) {
            if (!inst.valid_node(el.node)) {
                return false;
            }
            const NodeInfo& info = inst.node(el.node);
            const double arrival = t + inst.time(prev, el.node);
            if (arrival > info.window.latest + kTol) {
                return false;
            }
            double ready = info.window.earliest;
            switch (info.kind) {
                case NodeKind::Source:
                case NodeKind::Sink: return false;
                case NodeKind::FOrigin:
                    if (el.visit != 1 || el.order != -1) return false;
                    ++origin_seen[static_cast<std::size_t>(info.ref)];
                    open_f[static_cast<std::size_t>(info.ref)] = 1;
                    ++load;
                    break;
                case NodeKind::FDestination:
                    if (el.visit != 1 || el.order != -1) return false;
                    ++dest_seen[static_cast<std::size_t>(info.ref)];
                    if (open_f[static_cast<std::size_t>(info.ref)] != 1) return false;
                    open_f[static_cast<std::size_t>(info.ref)] = 2;
                    --load;
                    break;
                case NodeKind::Barge:
                    if (el.visit != 1 || el.order < 0 || el.order >= inst.e_count()) return false;
                    ++barge_seen[static_cast<std::size_t>(info.ref)];
                    ++carried[static_cast<std::size_t>(el.order)];
                    ready = std::max(ready, inst.barge(info.ref).idle_until);
                    ++load;
                    break;
                case NodeKind::EDestination: {
                    const auto h = static_cast<std::size_t>(info.ref);
                    ++visits[h];
                    if (el.visit != visits[h] || visits[h] > 2 || el.order != -1) return false;
                    if (carried[h] == 0) return false;
                    delivered[h] += carried[h];
                    load -= carried[h];
                    carried[h] = 0;
                    servers[h].insert(p);
                    break;
                }
            }
            if (load > K) {
                return false;
            }
            t = std::max(arrival, ready);
            prev = el.node;
        }
        if (t + inst.time(prev, inst.sink()) > inst.tugboat(p).max_working_time + kTol) {
            return false;
        }
        if (load != 0) {
            return false;
        }
    }
    for (int k = 0; k < inst.f_count(); ++k) {
        if (origin_seen[static_cast<std::size_t>(k)] != 1 || dest_seen[static_cast<std::size_t>(k)] != 1) {
            return false;
        }
    }
    for (int b : barge_seen) {
        if (b > 1) {
            return false;
        }
    }
    for (int h = 0; h < inst.e_count(); ++h) {
        if (delivered[static_cast<std::size_t>(h)] != inst.order_e(h).required_barges ||
            servers[static_cast<std::size_t>(h)].size() > 2) {
            return false;
        }
    }
    return true;
}

void enumerate(const Instance& inst, const OracleLimits& limits,
               const std::function<void(const OracleSolution&)>& fn) {
    check_size(inst, limits);
    Enumerator e(inst, false);
    e.on_leaf = [&](const Solution& s) {
        if (oracle_feasible(inst, s)) {
            fn(OracleSolution{s, oracle_cost(inst, s)});
        }
    };
    e.run();
}

OracleSolution optimum(const Instance& inst, const OracleLimits& limits) {
    std::optional<OracleSolution> best;
    enumerate(inst, limits, [&](const OracleSolution& s) {
        if (!best || s.loss.total < best->loss.total - 1e-9 ||
            (std::abs(s.loss.total - best->loss.total) <= 1e-9 && encode(s.solution) < encode(best->solution))) {
            best = s;
        }
    });
    if (!best) {
        throw Infeasible("no feasible solution exists");
    }
    return *best;
}

void enumerate_universe(const Instance& inst, const OracleLimits& limits,
                        const std::function<void(const Solution&, bool)>& fn) {
    check_size(inst, limits);
    Enumerator e(inst, true);
    e.on_leaf = [&](const Solution& s) { fn(s, oracle_feasible(inst, s)); };
    e.run();
}

}  // namespace tug
