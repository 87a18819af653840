#include "tugsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tugsched/error.hpp"

namespace tug {

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Source: return "source";
        case NodeKind::Sink: return "sink";
        case NodeKind::FOrigin: return "f_origin";
        case NodeKind::FDestination: return "f_destination";
        case NodeKind::EDestination: return "e_destination";
        case NodeKind::Barge: return "barge";
    }
    return "unknown";
}

double great_circle_km(Coordinate a, Coordinate b) {
    constexpr double kEarthRadiusKm = 6371.0;
    constexpr double kRad = std::numbers::pi / 180.0;
    const double dlat = (b.lat - a.lat) * kRad;
    const double dlon = (b.lon - a.lon) * kRad;
    const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                     std::cos(a.lat * kRad) * std::cos(b.lat * kRad) * std::sin(dlon / 2) * std::sin(dlon / 2);
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

namespace {

void check_window(const Window& w, const std::string& what) {
    if (!(w.earliest >= 0.0)) {
        throw InconsistentError(what + ": window start must be non-negative");
    }
    if (w.earliest > w.latest) {
        throw InconsistentError(what + ": window start exceeds window end");
    }
}

void check_matrix(const std::vector<std::vector<double>>& m, std::size_t n, const std::string& what) {
    if (m.size() != n) {
        throw SchemaError(what + " must have " + std::to_string(n) + " rows, got " + std::to_string(m.size()));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) {
            throw SchemaError(what + " row " + std::to_string(i) + " must have " + std::to_string(n) + " entries");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(m[i][j]) || m[i][j] < 0.0) {
                throw InconsistentError(what + " entries must be finite and non-negative");
            }
            if (i == j && m[i][j] != 0.0) {
                throw InconsistentError(what + " must have a zero diagonal");
            }
        }
    }
}

}  // namespace

Instance build_instance(InstanceData raw) {
    if (raw.tugboats.empty()) {
        throw SchemaError("instance needs at least one tugboat");
    }
    if (raw.capacity < 1) {
        throw InconsistentError("tugboat capacity K must be at least 1");
    }
    for (const Tugboat& t : raw.tugboats) {
        if (!(t.max_working_time > 0.0)) {
            throw InconsistentError("tugboat " + t.id + ": max_working_time must be positive");
        }
        if (t.cost_per_time < 0.0 || t.cost_per_distance < 0.0) {
            throw InconsistentError("tugboat " + t.id + ": cost rates must be non-negative");
        }
    }
    for (std::size_t k = 0; k < raw.orders_f.size(); ++k) {
        check_window(raw.orders_f[k].origin_window, "typeF order " + std::to_string(k) + " origin");
        check_window(raw.orders_f[k].destination_window, "typeF order " + std::to_string(k) + " destination");
    }
    const int tugs_per_order = std::min<int>(2, static_cast<int>(raw.tugboats.size()));
    int demand = 0;
    for (std::size_t h = 0; h < raw.orders_e.size(); ++h) {
        const TypeEOrder& e = raw.orders_e[h];
        check_window(e.window, "typeE order " + std::to_string(h));
        if (e.required_barges < 1) {
            throw InconsistentError("typeE order " + std::to_string(h) + ": required_barges must be positive");
        }
        if (e.required_barges > 2 * raw.capacity * tugs_per_order) {
            throw InconsistentError("typeE order " + std::to_string(h) + ": required_barges exceeds what " +
                                    std::to_string(tugs_per_order) + " tugboat(s) can deliver in two visits");
        }
        demand += e.required_barges;
    }
    for (std::size_t b = 0; b < raw.barges.size(); ++b) {
        check_window(raw.barges[b].window, "barge " + std::to_string(b));
        if (!(raw.barges[b].idle_until >= 0.0)) {
            throw InconsistentError("barge " + std::to_string(b) + ": idle_until must be non-negative");
        }
    }
    if (demand > static_cast<int>(raw.barges.size())) {
        throw InconsistentError("typeE orders require " + std::to_string(demand) + " empty barges but only " +
                                std::to_string(raw.barges.size()) + " are listed");
    }
    const Penalties& pen = raw.penalties;
    if (pen.time_window < 0.0 || pen.working_hours < 0.0 || pen.unserved < 0.0) {
        throw InconsistentError("penalty weights must be non-negative");
    }

    const std::size_t n = raw.node_count();
    Instance inst;
    inst.time_.assign(n * n, 0.0);
    inst.distance_.assign(n * n, 0.0);
    if (!raw.time_matrix.empty() || !raw.distance_matrix.empty()) {
        check_matrix(raw.time_matrix, n, "time_matrix");
        check_matrix(raw.distance_matrix, n, "distance_matrix");
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                inst.time_[i * n + j] = raw.time_matrix[i][j];
                inst.distance_[i * n + j] = raw.distance_matrix[i][j];
            }
        }
    } else if (!raw.coordinates.empty()) {
        if (raw.coordinates.size() != n) {
            throw SchemaError("coordinates must list " + std::to_string(n) + " nodes");
        }
        if (!(raw.speed > 0.0)) {
            throw InconsistentError("speed must be positive");
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double d = i == j ? 0.0 : great_circle_km(raw.coordinates[i], raw.coordinates[j]);
                inst.distance_[i * n + j] = d;
                inst.time_[i * n + j] = d / raw.speed;
            }
        }
    } else {
        throw SchemaError("network needs either time/distance matrices or coordinates");
    }

    inst.nodes_.resize(n);
    const int nf = static_cast<int>(raw.orders_f.size());
    const int ne = static_cast<int>(raw.orders_e.size());
    for (int k = 0; k < nf; ++k) {
        const TypeFOrder& o = raw.orders_f[static_cast<std::size_t>(k)];
        inst.nodes_[static_cast<std::size_t>(2 * k)] = {NodeKind::FOrigin, k, o.origin_window, o.origin_window.earliest};
        inst.nodes_[static_cast<std::size_t>(2 * k + 1)] = {NodeKind::FDestination, k, o.destination_window,
                                                            o.destination_window.earliest};
    }
    for (int h = 0; h < ne; ++h) {
        const TypeEOrder& e = raw.orders_e[static_cast<std::size_t>(h)];
        inst.nodes_[static_cast<std::size_t>(2 * nf + h)] = {NodeKind::EDestination, h, e.window, e.window.earliest};
    }
    for (std::size_t b = 0; b < raw.barges.size(); ++b) {
        const EmptyBarge& eb = raw.barges[b];
        inst.nodes_[static_cast<std::size_t>(2 * nf + ne) + b] = {NodeKind::Barge, static_cast<int>(b), eb.window,
                                                                   std::max(eb.window.earliest, eb.idle_until)};
    }
    inst.nodes_[n - 2] = {NodeKind::Source, -1, Window{}, 0.0};
    inst.nodes_[n - 1] = {NodeKind::Sink, -1, Window{}, 0.0};

    inst.metric_times_ = true;
    for (std::size_t i = 0; i < n && inst.metric_times_; ++i) {
        for (std::size_t j = 0; j < n && inst.metric_times_; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (inst.time_[i * n + k] + inst.time_[k * n + j] < inst.time_[i * n + j] - 1e-9) {
                    inst.metric_times_ = false;
                    break;
                }
            }
        }
    }
    inst.max_time_ = *std::max_element(inst.time_.begin(), inst.time_.end());
    inst.data_ = std::move(raw);
    return inst;
}

int Instance::total_required_barges() const {
    int total = 0;
    for (const TypeEOrder& e : data_.orders_e) {
        total += e.required_barges;
    }
    return total;
}

Solution empty_solution(const Instance& inst) {
    Solution sol;
    sol.routes.resize(static_cast<std::size_t>(inst.tugboat_count()));
    for (int k = 0; k < inst.f_count(); ++k) {
        sol.unassigned_f.push_back(k);
    }
    for (int h = 0; h < inst.e_count(); ++h) {
        sol.unassigned_e.push_back({h, inst.order_e(h).required_barges});
    }
    for (int b = 0; b < inst.barge_count(); ++b) {
        sol.free_barges.push_back(b);
    }
    return sol;
}

bool complete(const Solution& sol) {
    return sol.unassigned_f.empty() && sol.unassigned_e.empty();
}

std::size_t routed_element_count(const Solution& sol) {
    std::size_t n = 0;
    for (const Route& r : sol.routes) {
        n += r.size();
    }
    return n;
}

std::uint64_t route_hash(const Solution& sol) {
    // FNV-1a over (route separator, node, visit, order).
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    for (const Route& r : sol.routes) {
        mix(0xfffffffffULL);
        for (const RouteElement& e : r) {
            mix(static_cast<std::uint64_t>(e.node));
            mix(static_cast<std::uint64_t>(e.visit));
            mix(static_cast<std::uint64_t>(e.order + 1));
        }
    }
    return h;
}

}  // namespace tug
