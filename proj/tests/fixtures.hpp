#pragma once

// Small hand-checkable instances for the test suites.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "tugsched/model.hpp"
#include "tugsched/rng.hpp"
#include "tugsched/validator.hpp"

namespace fixture {

using namespace tug;

/// Node positions on a plane; travel time and distance are Euclidean.
struct Plane {
    std::vector<std::pair<double, double>> f_origin, f_dest, e_dest, barges;
    std::pair<double, double> depot{0.0, 0.0};
};

inline InstanceData from_plane(const Plane& pl, int tugs, const std::vector<int>& q, int K = 5,
                               double cost_per_time = 1.0, double cost_per_distance = 0.0,
                               double working_time = 1000.0) {
    InstanceData d;
    d.capacity = K;
    for (int p = 0; p < tugs; ++p) {
        d.tugboats.push_back({"T" + std::to_string(p + 1), working_time, cost_per_time, cost_per_distance});
    }
    std::vector<std::pair<double, double>> pos;
    for (std::size_t k = 0; k < pl.f_origin.size(); ++k) {
        d.orders_f.push_back({});
        pos.push_back(pl.f_origin[k]);
        pos.push_back(pl.f_dest[k]);
    }
    for (std::size_t h = 0; h < pl.e_dest.size(); ++h) {
        d.orders_e.push_back({q[h], {}});
        pos.push_back(pl.e_dest[h]);
    }
    for (const auto& b : pl.barges) {
        d.barges.push_back({0.0, {}});
        pos.push_back(b);
    }
    pos.push_back(pl.depot);
    pos.push_back(pl.depot);
    const std::size_t n = pos.size();
    d.time_matrix.assign(n, std::vector<double>(n, 0.0));
    d.distance_matrix.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dist = std::hypot(pos[i].first - pos[j].first, pos[i].second - pos[j].second);
            d.time_matrix[i][j] = dist;
            d.distance_matrix[i][j] = dist;
        }
    }
    return d;
}

/// Explicit matrices with every entry equal to `t` off the diagonal.
inline InstanceData uniform(int tugs, int f, const std::vector<int>& q, int barges, double t = 1.0, int K = 5) {
    InstanceData d;
    d.capacity = K;
    for (int p = 0; p < tugs; ++p) {
        d.tugboats.push_back({"T" + std::to_string(p + 1), 1000.0, 1.0, 0.0});
    }
    d.orders_f.resize(static_cast<std::size_t>(f));
    for (int x : q) {
        d.orders_e.push_back({x, {}});
    }
    d.barges.resize(static_cast<std::size_t>(barges));
    const std::size_t n = d.node_count();
    d.time_matrix.assign(n, std::vector<double>(n, t));
    d.distance_matrix.assign(n, std::vector<double>(n, t));
    for (std::size_t i = 0; i < n; ++i) {
        d.time_matrix[i][i] = 0.0;
        d.distance_matrix[i][i] = 0.0;
    }
    // s and s' are the same depot.
    d.time_matrix[n - 2][n - 1] = d.time_matrix[n - 1][n - 2] = 0.0;
    d.distance_matrix[n - 2][n - 1] = d.distance_matrix[n - 1][n - 2] = 0.0;
    return d;
}

enum class TinyKind { FOnly, EOnly, Mixed, Cooperative };

/// Seeded tiny instance with at most `max_nodes` non-virtual nodes.
/// Cooperative instances need more barges than one visit can carry.
inline InstanceData random_tiny(std::uint64_t seed, TinyKind kind, int max_nodes = 10) {
    Rng rng(seed);
    auto point = [&rng] { return std::make_pair(10.0 * rng.uniform(), 10.0 * rng.uniform()); };
    Plane pl;
    std::vector<int> q;
    int K = 5;
    int tugs = 1 + static_cast<int>(rng.below(2));
    switch (kind) {
        case TinyKind::FOnly: {
            const int f = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(std::min(4, max_nodes / 2))));
            for (int k = 0; k < f; ++k) {
                pl.f_origin.push_back(point());
                pl.f_dest.push_back(point());
            }
            break;
        }
        case TinyKind::EOnly: {
            const int need = 1 + static_cast<int>(rng.below(3));
            q.push_back(need);
            pl.e_dest.push_back(point());
            const int spare = static_cast<int>(rng.below(2));
            for (int b = 0; b < need + spare; ++b) {
                pl.barges.push_back(point());
            }
            K = 2 + static_cast<int>(rng.below(2));
            break;
        }
        case TinyKind::Mixed: {
            const int f = 1 + static_cast<int>(rng.below(2));
            for (int k = 0; k < f; ++k) {
                pl.f_origin.push_back(point());
                pl.f_dest.push_back(point());
            }
            const int need = 1 + static_cast<int>(rng.below(2));
            q.push_back(need);
            pl.e_dest.push_back(point());
            for (int b = 0; b < need; ++b) {
                pl.barges.push_back(point());
            }
            K = 2;
            break;
        }
        case TinyKind::Cooperative: {
            K = 1 + static_cast<int>(rng.below(2));
            const int need = K + 1 + static_cast<int>(rng.below(static_cast<std::size_t>(K)));
            q.push_back(need);
            pl.e_dest.push_back(point());
            for (int b = 0; b < need; ++b) {
                pl.barges.push_back(point());
            }
            if (rng.below(2) == 0 && 2 * 1 + 1 + need <= max_nodes) {
                pl.f_origin.push_back(point());
                pl.f_dest.push_back(point());
            }
            tugs = 2;
            break;
        }
    }
    InstanceData d = from_plane(pl, tugs, q, K);
    // Some instances get release times and deadlines that bind.
    if (rng.below(2) == 0) {
        d.penalties = Penalties{1e6, 1e6, 1e7};
        for (auto& f : d.orders_f) {
            f.origin_window.earliest = 5.0 * rng.uniform();
            f.destination_window.latest = 25.0 + 20.0 * rng.uniform();
        }
        for (auto& b : d.barges) {
            b.idle_until = 5.0 * rng.uniform();
        }
        for (auto& e : d.orders_e) {
            e.window.latest = 40.0 + 20.0 * rng.uniform();
        }
    }
    return d;
}

/// Every typeF order routed or pooled exactly once, every barge routed or
/// free exactly once, and per typeE order the barges carried plus the pooled
/// remainder equal the demand.
inline bool conserved(const Instance& inst, const Solution& sol) {
    std::vector<int> f(static_cast<std::size_t>(inst.f_count()), 0);
    std::vector<int> b(static_cast<std::size_t>(inst.barge_count()), 0);
    std::vector<int> e(static_cast<std::size_t>(inst.e_count()), 0);
    for (const Route& r : sol.routes) {
        for (const RouteElement& el : r) {
            if (!inst.valid_node(el.node)) {
                return false;
            }
            const NodeInfo& info = inst.node(el.node);
            if (info.kind == NodeKind::FOrigin) {
                ++f[static_cast<std::size_t>(info.ref)];
            } else if (info.kind == NodeKind::Barge) {
                ++b[static_cast<std::size_t>(info.ref)];
                if (el.order >= 0 && el.order < inst.e_count()) {
                    ++e[static_cast<std::size_t>(el.order)];
                }
            }
        }
    }
    for (int k : sol.unassigned_f) {
        ++f[static_cast<std::size_t>(k)];
    }
    for (int x : sol.free_barges) {
        ++b[static_cast<std::size_t>(x)];
    }
    for (const PooledEOrder& p : sol.unassigned_e) {
        e[static_cast<std::size_t>(p.order)] += p.remaining;
    }
    for (int h = 0; h < inst.e_count(); ++h) {
        if (e[static_cast<std::size_t>(h)] != inst.order_e(h).required_barges) {
            return false;
        }
    }
    return std::all_of(f.begin(), f.end(), [](int c) { return c == 1; }) &&
           std::all_of(b.begin(), b.end(), [](int c) { return c == 1; });
}

/// Violations other than lateness and working-time overruns, which the
/// search treats as soft.
inline std::vector<std::string> structural_violations(const Instance& inst, const Solution& sol) {
    std::vector<std::string> out;
    for (const std::string& tag : violated_tags(validate(inst, sol))) {
        if (tag != "C15" && tag != "C19" && tag != "C21") {
            out.push_back(tag);
        }
    }
    return out;
}

}  // namespace fixture
