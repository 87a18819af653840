#include "tugsched/insertion.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tugsched/error.hpp"
#include "tugsched/routes.hpp"

namespace tug {

namespace {

constexpr double kEps = 1e-12;

int load_change(const Instance& inst, const RouteElement& el, std::vector<int>& carried) {
    const NodeInfo& info = inst.node(el.node);
    switch (info.kind) {
        case NodeKind::FOrigin: return 1;
        case NodeKind::FDestination: return -1;
        case NodeKind::Barge:
            ++carried[static_cast<std::size_t>(el.order)];
            return 1;
        case NodeKind::EDestination: {
            int& c = carried[static_cast<std::size_t>(info.ref)];
            const int d = c;
            c = 0;
            return -d;
        }
        default: return 0;
    }
}

int max_load(const Instance& inst, const Route& route) {
    std::vector<int> carried(static_cast<std::size_t>(inst.e_count()), 0);
    int load = 0;
    int peak = 0;
    for (const RouteElement& el : route) {
        load += load_change(inst, el, carried);
        peak = std::max(peak, load);
    }
    return peak;
}

}  // namespace

void RouteCache::build(const Instance& inst, const Penalties& pen, int tug_index, const Route& route) {
    tug = tug_index;
    const std::size_t n = route.size();
    arrival.resize(n);
    departure.resize(n);
    load.resize(n);
    suffix_late.assign(n + 1, 0.0);
    slack.assign(n + 1, 0.0);
    prefix_cost.assign(n + 1, 0.0);

    std::vector<int> carried(static_cast<std::size_t>(inst.e_count()), 0);
    NodeId prev = inst.source();
    double dep = 0.0;
    double c = 0.0;
    int l = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const RouteElement& el = route[k];
        const NodeInfo& info = inst.node(el.node);
        const double a = dep + inst.time(prev, el.node);
        arrival[k] = a;
        dep = std::max(a, info.ready);
        departure[k] = dep;
        c += inst.arc_cost(tug, prev, el.node);
        prefix_cost[k + 1] = c;
        l += load_change(inst, el, carried);
        load[k] = l;
        prev = el.node;
    }
    finish = dep + inst.time(prev, inst.sink());
    cost = c + inst.arc_cost(tug, prev, inst.sink());

    const double limit = inst.tugboat(tug).max_working_time;
    hours_penalty = pen.working_hours * std::max(0.0, finish - limit);
    slack[n] = finish <= limit ? limit - finish : 0.0;
    for (std::size_t k = n; k-- > 0;) {
        const Window& w = inst.node(route[k].node).window;
        const double late = std::max(0.0, arrival[k] - w.latest);
        suffix_late[k] = suffix_late[k + 1] + late;
        const double room = arrival[k] <= w.latest ? w.latest - arrival[k] : 0.0;
        slack[k] = std::min(room, (departure[k] - arrival[k]) + slack[k + 1]);
    }
    loss = cost + pen.time_window * suffix_late[0] + hours_penalty;
}

int EPlan::amount() const {
    int n = 0;
    for (const EBlock& b : blocks) {
        n += static_cast<int>(b.barges.size());
    }
    return n;
}

// Forward simulation of a partially rebuilt route: the modified prefix is
// walked node by node, then rejoined with the cached original suffix.
struct Inserter::Chain {
    const Inserter& ins;
    const Route& route;
    const RouteCache& cache;
    NodeId cur;
    double dep;
    double cost;
    double late;

    Chain(const Inserter& in, const Route& r, const RouteCache& c, std::size_t slot)
        : ins(in), route(r), cache(c) {
        const Instance& inst = ins.inst_;
        cur = slot > 0 ? r[slot - 1].node : inst.source();
        dep = slot > 0 ? c.departure[slot - 1] : 0.0;
        cost = c.prefix_cost[slot];
        late = c.suffix_late[0] - c.suffix_late[slot];
    }

    void visit(NodeId node) {
        const Instance& inst = ins.inst_;
        const NodeInfo& info = inst.node(node);
        const double a = dep + inst.time(cur, node);
        late += std::max(0.0, a - info.window.latest);
        cost += inst.arc_cost(cache.tug, cur, node);
        dep = std::max(a, info.ready);
        cur = node;
    }

    // Route loss after rejoining at original element k (k == size means s').
    double close(std::size_t k) const {
        const Instance& inst = ins.inst_;
        const Penalties& pen = ins.pen_;
        if (k == route.size()) {
            const double fin = dep + inst.time(cur, inst.sink());
            const double limit = inst.tugboat(cache.tug).max_working_time;
            return cost + inst.arc_cost(cache.tug, cur, inst.sink()) + pen.time_window * late +
                   pen.working_hours * std::max(0.0, fin - limit);
        }
        const NodeId next = route[k].node;
        const double a = dep + inst.time(cur, next);
        const double total_cost = cost + inst.arc_cost(cache.tug, cur, next) + (cache.cost - cache.prefix_cost[k + 1]);
        const double delay = a - cache.arrival[k];
        if (delay >= -kEps && delay <= cache.slack[k] + kEps) {
            return total_cost + pen.time_window * (late + cache.suffix_late[k]) + cache.hours_penalty;
        }
        double rest_late = 0.0;
        const double tail = ins.suffix_loss(route, cache, k, a, rest_late);
        return total_cost + pen.time_window * (late + rest_late) + tail;
    }
};

// Lateness from element k on (into `late`) and the working-hours penalty,
// given a new arrival time at k.
double Inserter::suffix_loss(const Route& route, const RouteCache& cache, std::size_t k, double arrival,
                             double& late) const {
    late = 0.0;
    NodeId prev = route[k].node;
    double a = arrival;
    double dep = 0.0;
    for (std::size_t m = k;; ++m) {
        const NodeInfo& info = inst_.node(route[m].node);
        late += std::max(0.0, a - info.window.latest);
        dep = std::max(a, info.ready);
        prev = route[m].node;
        if (m + 1 == route.size()) {
            break;
        }
        a = dep + inst_.time(prev, route[m + 1].node);
    }
    const double fin = dep + inst_.time(prev, inst_.sink());
    return pen_.working_hours * std::max(0.0, fin - inst_.tugboat(cache.tug).max_working_time);
}

void Inserter::scan_f(const Solution& sol, int order, const std::function<void(const FCandidate&)>& fn) const {
    const NodeId o = inst_.f_origin(order);
    const NodeId d = inst_.f_destination(order);
    const int K = inst_.capacity();
    RouteCache cache;
    for (std::size_t p = 0; p < sol.routes.size(); ++p) {
        const Route& r = sol.routes[p];
        cache.build(inst_, pen_, static_cast<int>(p), r);
        const std::size_t n = r.size();
        for (std::size_t i = 0; i <= n; ++i) {
            const int before = i > 0 ? cache.load[i - 1] : 0;
            if (before + 1 > K) {
                continue;
            }
            Chain chain(*this, r, cache, i);
            chain.visit(o);
            for (std::size_t j = i; j <= n; ++j) {
                if (j > i) {
                    if (cache.load[j - 1] + 1 > K) {
                        break;
                    }
                    chain.visit(r[j - 1].node);
                }
                Chain with_dest = chain;
                with_dest.visit(d);
                const double new_loss = with_dest.close(j);
                fn(FCandidate{static_cast<int>(p), static_cast<int>(i), static_cast<int>(j), new_loss - cache.loss});
            }
        }
    }
}

FCandidate Inserter::best_f(const Solution& sol, int order) const {
    FCandidate best;
    scan_f(sol, order, [&best](const FCandidate& c) {
        if (c.delta < best.delta - kEps) {
            best = c;
        }
    });
    return best;
}

void Inserter::apply_f(Solution& sol, int order, const FCandidate& c) const {
    Route& r = sol.routes[static_cast<std::size_t>(c.tug)];
    r.insert(r.begin() + c.dest_slot, RouteElement{inst_.f_destination(order), 1, -1});
    r.insert(r.begin() + c.origin_slot, RouteElement{inst_.f_origin(order), 1, -1});
    auto it = std::find(sol.unassigned_f.begin(), sol.unassigned_f.end(), order);
    if (it != sol.unassigned_f.end()) {
        sol.unassigned_f.erase(it);
    }
}

namespace {

void add_permutations(std::vector<int> parts, std::set<std::vector<int>>& out) {
    std::sort(parts.begin(), parts.end());
    do {
        out.insert(parts);
    } while (std::next_permutation(parts.begin(), parts.end()));
}

std::vector<std::vector<int>> compositions(int need, int m, int K) {
    std::set<std::vector<int>> out;
    auto valid = [K](const std::vector<int>& v) {
        return std::all_of(v.begin(), v.end(), [K](int a) { return a >= 1 && a <= K; });
    };
    if (m == 1) {
        if (need >= 1 && need <= K) {
            out.insert({need});
        }
    } else if (m == 2) {
        for (int a = 1; a < need; ++a) {
            if (a <= K && need - a <= K) {
                out.insert({a, need - a});
            }
        }
    } else {
        std::vector<int> fill(static_cast<std::size_t>(m), 0);
        int left = need;
        for (int i = 0; i < m; ++i) {
            fill[static_cast<std::size_t>(i)] = std::min(K, left - (m - 1 - i));
            left -= fill[static_cast<std::size_t>(i)];
        }
        if (left == 0 && valid(fill)) {
            add_permutations(fill, out);
        }
        std::vector<int> even(static_cast<std::size_t>(m), need / m);
        for (int i = 0; i < need % m; ++i) {
            ++even[static_cast<std::size_t>(i)];
        }
        if (valid(even)) {
            add_permutations(even, out);
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace

std::vector<PlanShape> Inserter::shapes(const Solution& sol, int order, int need) const {
    const int K = inst_.capacity();
    const int tugs = static_cast<int>(sol.routes.size());
    std::vector<int> existing(static_cast<std::size_t>(tugs), 0);
    std::set<int> serving;
    for (int p = 0; p < tugs; ++p) {
        existing[static_cast<std::size_t>(p)] = visits_on_route(inst_, sol.routes[static_cast<std::size_t>(p)], order);
        if (existing[static_cast<std::size_t>(p)] > 0) {
            serving.insert(p);
        }
    }
    const int first_m = need <= K ? 1 : (need <= 2 * K ? 2 : 3);
    std::vector<PlanShape> out;
    for (int m = first_m; m <= 4 && out.empty(); ++m) {
        const auto amounts = compositions(need, m, K);
        if (amounts.empty()) {
            continue;
        }
        std::vector<int> seq(static_cast<std::size_t>(m), 0);
        while (true) {
            std::vector<int> count(static_cast<std::size_t>(tugs), 0);
            std::set<int> used = serving;
            bool ok = true;
            for (int p : seq) {
                used.insert(p);
                if (++count[static_cast<std::size_t>(p)] + existing[static_cast<std::size_t>(p)] > 2) {
                    ok = false;
                }
            }
            if (ok && used.size() <= 2) {
                for (const auto& a : amounts) {
                    PlanShape shape;
                    for (int i = 0; i < m; ++i) {
                        shape.emplace_back(seq[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i)]);
                    }
                    out.push_back(std::move(shape));
                }
            }
            int pos = m - 1;
            while (pos >= 0 && ++seq[static_cast<std::size_t>(pos)] == tugs) {
                seq[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) {
                break;
            }
        }
    }
    return out;
}

void insert_block(const Instance& inst, Route& route, int order, const EBlock& block) {
    Route inserted;
    for (int b : block.barges) {
        inserted.push_back({inst.barge_node(b), 1, order});
    }
    inserted.push_back({inst.e_destination(order), 1, -1});
    route.insert(route.begin() + block.slot, inserted.begin(), inserted.end());
    renumber_visits(inst, route);
}

double Inserter::block_delta(const Route& route, const RouteCache& cache, int order, const EBlock& block) const {
    const auto slot = static_cast<std::size_t>(block.slot);
    const int before = slot > 0 ? cache.load[slot - 1] : 0;
    if (before + static_cast<int>(block.barges.size()) > inst_.capacity()) {
        return std::numeric_limits<double>::infinity();
    }
    if (open_trip_slots(inst_, route, order)[slot]) {
        return std::numeric_limits<double>::infinity();
    }
    Chain chain(*this, route, cache, slot);
    for (int b : block.barges) {
        chain.visit(inst_.barge_node(b));
    }
    chain.visit(inst_.e_destination(order));
    return chain.close(slot) - cache.loss;
}

EBlock Inserter::best_block(const Route& route, const RouteCache& cache, int tug, int order, int amount,
                            std::span<const int> available, double& delta) const {
    const NodeId h = inst_.e_destination(order);
    const std::vector<bool> open = open_trip_slots(inst_, route, order);
    const int K = inst_.capacity();
    const std::size_t n = route.size();
    const std::size_t pool = available.size();

    // Ordered selections are enumerated outright when there are few of them.
    double selections = 1.0;
    for (int i = 0; i < amount; ++i) {
        selections *= static_cast<double>(pool - static_cast<std::size_t>(i));
    }
    const bool exhaustive = selections <= 120.0;

    EBlock best{tug, 0, {}};
    delta = std::numeric_limits<double>::infinity();
    std::vector<int> pick;
    std::vector<int> chosen;
    std::vector<bool> used(pool, false);
    for (std::size_t slot = 0; slot <= n; ++slot) {
        if (open[slot]) {
            continue;
        }
        const int before = slot > 0 ? cache.load[slot - 1] : 0;
        if (before + amount > K) {
            continue;
        }
        const NodeId prev = slot > 0 ? route[slot - 1].node : inst_.source();
        const NodeId next = slot < n ? route[slot].node : inst_.sink();
        const double tail = inst_.arc_cost(tug, h, next);

        chosen.clear();
        if (exhaustive) {
            double best_est = std::numeric_limits<double>::infinity();
            pick.clear();
            std::fill(used.begin(), used.end(), false);
            auto dfs = [&](auto&& self, NodeId at, double acc) -> void {
                if (acc >= best_est) {
                    return;
                }
                if (static_cast<int>(pick.size()) == amount) {
                    const double est = acc + inst_.arc_cost(tug, at, h) + tail;
                    if (est < best_est - kEps) {
                        best_est = est;
                        chosen = pick;
                    }
                    return;
                }
                for (std::size_t i = 0; i < pool; ++i) {
                    if (used[i]) {
                        continue;
                    }
                    used[i] = true;
                    const NodeId bn = inst_.barge_node(available[i]);
                    pick.push_back(available[i]);
                    self(self, bn, acc + inst_.arc_cost(tug, at, bn));
                    pick.pop_back();
                    used[i] = false;
                }
            };
            dfs(dfs, prev, 0.0);
        } else {
            // Cheapest detours first, then nearest-neighbour pickup order.
            std::vector<std::pair<double, int>> score;
            score.reserve(pool);
            for (int b : available) {
                const NodeId bn = inst_.barge_node(b);
                score.emplace_back(inst_.arc_cost(tug, prev, bn) + inst_.arc_cost(tug, bn, h), b);
            }
            std::partial_sort(score.begin(), score.begin() + amount, score.end());
            std::vector<int> subset;
            for (int i = 0; i < amount; ++i) {
                subset.push_back(score[static_cast<std::size_t>(i)].second);
            }
            NodeId at = prev;
            while (!subset.empty()) {
                std::size_t nearest = 0;
                for (std::size_t i = 1; i < subset.size(); ++i) {
                    if (inst_.arc_cost(tug, at, inst_.barge_node(subset[i])) <
                        inst_.arc_cost(tug, at, inst_.barge_node(subset[nearest])) - kEps) {
                        nearest = i;
                    }
                }
                chosen.push_back(subset[nearest]);
                at = inst_.barge_node(subset[nearest]);
                subset.erase(subset.begin() + static_cast<std::ptrdiff_t>(nearest));
            }
        }

        Chain chain(*this, route, cache, slot);
        for (int b : chosen) {
            chain.visit(inst_.barge_node(b));
        }
        chain.visit(h);
        const double d = chain.close(slot) - cache.loss;
        if (d < delta - kEps) {
            delta = d;
            best = EBlock{tug, static_cast<int>(slot), chosen};
        }
    }
    return best;
}

std::vector<EPlan> Inserter::plans(const Solution& sol, int order, int need) const {
    if (static_cast<int>(sol.free_barges.size()) < need) {
        throw InsufficientBarges("typeE order " + std::to_string(order) + " needs " + std::to_string(need) +
                                 " barges, " + std::to_string(sol.free_barges.size()) + " free");
    }
    std::vector<EPlan> out;
    RouteCache cache;
    for (const PlanShape& shape : shapes(sol, order, need)) {
        EPlan plan{order, {}, 0.0};
        std::vector<Route> routes = sol.routes;
        std::vector<int> avail = sol.free_barges;
        for (const auto& [tug, amount] : shape) {
            Route& r = routes[static_cast<std::size_t>(tug)];
            cache.build(inst_, pen_, tug, r);
            double d = 0.0;
            EBlock block = best_block(r, cache, tug, order, amount, avail, d);
            plan.delta += d;
            insert_block(inst_, r, order, block);
            for (int b : block.barges) {
                avail.erase(std::find(avail.begin(), avail.end(), b));
            }
            plan.blocks.push_back(std::move(block));
        }
        out.push_back(std::move(plan));
    }
    return out;
}

double Inserter::plan_delta(const Solution& sol, const EPlan& plan) const {
    std::vector<Route> routes = sol.routes;
    std::set<int> touched;
    for (const EBlock& b : plan.blocks) {
        insert_block(inst_, routes[static_cast<std::size_t>(b.tug)], plan.order, b);
        touched.insert(b.tug);
    }
    double d = 0.0;
    for (int p : touched) {
        const Route& now = routes[static_cast<std::size_t>(p)];
        if (max_load(inst_, now) > inst_.capacity()) {
            return std::numeric_limits<double>::infinity();
        }
        d += route_loss(inst_, p, now, pen_).total - route_loss(inst_, p, sol.routes[static_cast<std::size_t>(p)], pen_).total;
    }
    return d;
}

EPlan Inserter::refine(const Solution& sol, EPlan plan) const {
    std::set<int> in_plan;
    for (const EBlock& b : plan.blocks) {
        in_plan.insert(b.barges.begin(), b.barges.end());
    }
    double current = plan_delta(sol, plan);
    bool improved = true;
    while (improved) {
        improved = false;
        for (EBlock& block : plan.blocks) {
            for (int& slot_barge : block.barges) {
                for (int cand : sol.free_barges) {
                    if (in_plan.contains(cand)) {
                        continue;
                    }
                    const int old = slot_barge;
                    slot_barge = cand;
                    const double d = plan_delta(sol, plan);
                    if (d < current - 1e-9) {
                        current = d;
                        in_plan.erase(old);
                        in_plan.insert(cand);
                        improved = true;
                    } else {
                        slot_barge = old;
                    }
                }
            }
        }
    }
    plan.delta = current;
    return plan;
}

EPlan Inserter::best_e(const Solution& sol, int order, int need) const {
    EPlan best;
    for (EPlan& p : plans(sol, order, need)) {
        if (p.delta < best.delta - kEps) {
            best = std::move(p);
        }
    }
    if (!best.valid()) {
        throw Infeasible("no admissible visit plan for typeE order " + std::to_string(order));
    }
    return refine(sol, std::move(best));
}

EPlan Inserter::random_e(const Solution& sol, int order, int need, Rng& rng) const {
    if (static_cast<int>(sol.free_barges.size()) < need) {
        throw InsufficientBarges("typeE order " + std::to_string(order) + " needs " + std::to_string(need) +
                                 " barges, " + std::to_string(sol.free_barges.size()) + " free");
    }
    const std::vector<PlanShape> all = shapes(sol, order, need);
    if (all.empty()) {
        throw Infeasible("no admissible visit plan for typeE order " + std::to_string(order));
    }
    const PlanShape& shape = all[rng.below(all.size())];
    std::vector<int> avail = sol.free_barges;
    rng.shuffle(std::span<int>(avail));
    std::vector<Route> routes = sol.routes;
    RouteCache cache;
    EPlan plan{order, {}, 0.0};
    std::size_t next_barge = 0;
    for (const auto& [tug, amount] : shape) {
        Route& r = routes[static_cast<std::size_t>(tug)];
        cache.build(inst_, pen_, tug, r);
        const std::vector<bool> open = open_trip_slots(inst_, r, order);
        std::vector<int> slots;
        for (std::size_t s = 0; s <= r.size(); ++s) {
            const int before = s > 0 ? cache.load[s - 1] : 0;
            if (!open[s] && before + amount <= inst_.capacity()) {
                slots.push_back(static_cast<int>(s));
            }
        }
        EBlock block{tug, slots[rng.below(slots.size())], {}};
        for (int i = 0; i < amount; ++i) {
            block.barges.push_back(avail[next_barge++]);
        }
        insert_block(inst_, r, order, block);
        plan.blocks.push_back(std::move(block));
    }
    plan.delta = plan_delta(sol, plan);
    return plan;
}

void Inserter::apply_e(Solution& sol, const EPlan& plan) const {
    for (const EBlock& b : plan.blocks) {
        insert_block(inst_, sol.routes[static_cast<std::size_t>(b.tug)], plan.order, b);
        for (int barge : b.barges) {
            take_barge(sol, barge);
        }
    }
    unpool_e(sol, plan.order, plan.amount());
}

}  // namespace tug
