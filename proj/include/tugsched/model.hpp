#pragma once

// Problem data and the route encoding shared by every solver component.
//
// Logical nodes are numbered contiguously: typeF order k owns origin 2k and
// destination 2k+1, then one node per typeE destination, then one node per
// empty barge, and finally the virtual origin s and virtual sink s'. Routes
// never store s or s'; they are implied at both ends.

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace tug {

using NodeId = int;

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct Window {
    double earliest = 0.0;
    double latest = kUnbounded;

    friend bool operator==(const Window&, const Window&) = default;
};

enum class NodeKind { Source, Sink, FOrigin, FDestination, EDestination, Barge };

const char* to_string(NodeKind kind);

struct Tugboat {
    std::string id;
    double max_working_time = 14.0;  // hours in one shift
    double cost_per_time = 0.0;      // per hour sailed
    double cost_per_distance = 0.0;  // per km sailed

    friend bool operator==(const Tugboat&, const Tugboat&) = default;
};

/// Move one laden barge from an origin port to a destination port.
struct TypeFOrder {
    Window origin_window;
    Window destination_window;

    friend bool operator==(const TypeFOrder&, const TypeFOrder&) = default;
};

/// Deliver `required_barges` empty barges to a destination port.
struct TypeEOrder {
    int required_barges = 1;
    Window window;

    friend bool operator==(const TypeEOrder&, const TypeEOrder&) = default;
};

struct EmptyBarge {
    double idle_until = 0.0;  // a point in time, not a window
    Window window;

    friend bool operator==(const EmptyBarge&, const EmptyBarge&) = default;
};

struct Penalties {
    double time_window = 1e4;    // per hour of lateness
    double working_hours = 1e4;  // per hour beyond the working-time limit
    double unserved = 1e5;       // per pooled order and per missing barge

    friend bool operator==(const Penalties&, const Penalties&) = default;
};

struct Coordinate {
    double lon = 0.0;
    double lat = 0.0;

    friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// Great-circle distance in km.
double great_circle_km(Coordinate a, Coordinate b);

/// Raw instance description, as read from an instance file. The network is
/// given either as explicit matrices or as per-node coordinates plus a speed.
struct InstanceData {
    std::vector<Tugboat> tugboats;
    std::vector<TypeFOrder> orders_f;
    std::vector<TypeEOrder> orders_e;
    std::vector<EmptyBarge> barges;

    std::vector<std::vector<double>> time_matrix;
    std::vector<std::vector<double>> distance_matrix;
    std::vector<Coordinate> coordinates;
    double speed = 20.0;  // km/h, used only with coordinates

    int capacity = 5;
    Penalties penalties;

    std::size_t node_count() const {
        return 2 * orders_f.size() + orders_e.size() + barges.size() + 2;
    }

    friend bool operator==(const InstanceData&, const InstanceData&) = default;
};

struct NodeInfo {
    NodeKind kind = NodeKind::Source;
    int ref = -1;        // order index (F or E) or barge index
    Window window;
    double ready = 0.0;  // earliest departure: E_i, or max(E_i, idle) for barges
};

/// Immutable, validated problem instance.
class Instance {
public:
    const InstanceData& data() const { return data_; }

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int tugboat_count() const { return static_cast<int>(data_.tugboats.size()); }
    int f_count() const { return static_cast<int>(data_.orders_f.size()); }
    int e_count() const { return static_cast<int>(data_.orders_e.size()); }
    int barge_count() const { return static_cast<int>(data_.barges.size()); }
    int capacity() const { return data_.capacity; }
    const Penalties& penalties() const { return data_.penalties; }

    NodeId source() const { return node_count() - 2; }
    NodeId sink() const { return node_count() - 1; }
    NodeId f_origin(int order) const { return 2 * order; }
    NodeId f_destination(int order) const { return 2 * order + 1; }
    NodeId e_destination(int order) const { return 2 * f_count() + order; }
    NodeId barge_node(int barge) const { return 2 * f_count() + e_count() + barge; }

    const NodeInfo& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
    NodeKind kind(NodeId id) const { return node(id).kind; }
    bool valid_node(NodeId id) const { return id >= 0 && id < node_count(); }

    const Tugboat& tugboat(int p) const { return data_.tugboats[static_cast<std::size_t>(p)]; }
    const TypeFOrder& order_f(int k) const { return data_.orders_f[static_cast<std::size_t>(k)]; }
    const TypeEOrder& order_e(int h) const { return data_.orders_e[static_cast<std::size_t>(h)]; }
    const EmptyBarge& barge(int b) const { return data_.barges[static_cast<std::size_t>(b)]; }

    double time(NodeId i, NodeId j) const { return time_[index(i, j)]; }
    double distance(NodeId i, NodeId j) const { return distance_[index(i, j)]; }
    double arc_cost(int tug, NodeId i, NodeId j) const {
        const Tugboat& t = tugboat(tug);
        return t.cost_per_time * time(i, j) + t.cost_per_distance * distance(i, j);
    }

    bool has_coordinates() const { return !data_.coordinates.empty(); }
    /// True when travel times satisfy the triangle inequality.
    bool metric_times() const { return metric_times_; }
    double max_travel_time() const { return max_time_; }
    int total_required_barges() const;

private:
    friend Instance build_instance(InstanceData raw);

    std::size_t index(NodeId i, NodeId j) const {
        return static_cast<std::size_t>(i) * nodes_.size() + static_cast<std::size_t>(j);
    }

    InstanceData data_;
    std::vector<NodeInfo> nodes_;
    std::vector<double> time_;
    std::vector<double> distance_;
    bool metric_times_ = false;
    double max_time_ = 0.0;
};

/// Validates a raw description and derives the node network.
/// Throws SchemaError for malformed data and InconsistentError for data that
/// is well-formed but contradictory (inverted windows, barge shortage).
Instance build_instance(InstanceData raw);

/// One stop on a tugboat route. `visit` is 1 or 2 for typeE destinations and
/// 1 otherwise; `order` names the typeE order a barge element is collected for.
struct RouteElement {
    NodeId node = 0;
    int visit = 1;
    int order = -1;

    friend auto operator<=>(const RouteElement&, const RouteElement&) = default;
};

using Route = std::vector<RouteElement>;

struct PooledEOrder {
    int order = 0;
    int remaining = 0;  // barges still to deliver

    friend auto operator<=>(const PooledEOrder&, const PooledEOrder&) = default;
};

struct Solution {
    std::vector<Route> routes;          // one per tugboat
    std::vector<int> unassigned_f;      // typeF order indices
    std::vector<PooledEOrder> unassigned_e;
    std::vector<int> free_barges;       // barge indices not on any route

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// All routes empty, every order pooled, every barge free.
Solution empty_solution(const Instance& inst);

/// True when no order is waiting in a pool. Barges left in the free pool are
/// surplus supply, which the model allows.
bool complete(const Solution& sol);

/// Number of routed elements over all routes.
std::size_t routed_element_count(const Solution& sol);

/// Stable 64-bit fingerprint of the routes.
std::uint64_t route_hash(const Solution& sol);

}  // namespace tug
