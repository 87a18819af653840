#pragma once

// Insertion machinery shared by the constructive heuristic and the repair
// operators: exact marginal-loss evaluation of typeF pair insertions and of
// typeE visit plans (a typeE visit preceded by the barges it drops).

#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "tugsched/evaluation.hpp"
#include "tugsched/model.hpp"
#include "tugsched/rng.hpp"

namespace tug {

/// Per-route data for O(1) suffix checks: if an insertion delays the arrival
/// at element k by no more than `slack[k]`, no penalty from k onward changes.
struct RouteCache {
    int tug = 0;
    std::vector<double> arrival;
    std::vector<double> departure;
    std::vector<int> load;             // total barges after leaving element
    std::vector<double> suffix_late;   // sum of lateness from element k on; size L+1
    std::vector<double> slack;         // tolerable arrival delay; slack[L] refers to s'
    std::vector<double> prefix_cost;   // cost of arcs into elements 0..k-1; size L+1
    double cost = 0.0;                 // all arcs including the one into s'
    double finish = 0.0;
    double hours_penalty = 0.0;
    double loss = 0.0;                 // route loss without unserved penalty

    void build(const Instance& inst, const Penalties& pen, int tug, const Route& route);
};

struct FCandidate {
    int tug = -1;
    int origin_slot = 0;  // origin inserted before element origin_slot
    int dest_slot = 0;    // destination inserted before original element dest_slot
    double delta = std::numeric_limits<double>::infinity();

    bool valid() const { return tug >= 0; }
};

/// One typeE visit with the barges collected for it, in pickup order.
struct EBlock {
    int tug = 0;
    int slot = 0;
    std::vector<int> barges;
};

struct EPlan {
    int order = 0;
    std::vector<EBlock> blocks;
    double delta = std::numeric_limits<double>::infinity();

    int amount() const;
    bool valid() const { return !blocks.empty(); }
};

/// (tugboat, barge count) per visit, in insertion order.
using PlanShape = std::vector<std::pair<int, int>>;

class Inserter {
public:
    Inserter(const Instance& inst, const Penalties& pen) : inst_(inst), pen_(pen) {}

    const Instance& instance() const { return inst_; }
    const Penalties& penalties() const { return pen_; }

    /// Calls `fn(candidate)` for every capacity-feasible position pair of
    /// typeF order `order` on every route, tugboats in index order and slots
    /// in increasing order.
    void scan_f(const Solution& sol, int order, const std::function<void(const FCandidate&)>& fn) const;

    /// Lowest-delta position; ties go to the lowest tugboat, then earliest slots.
    FCandidate best_f(const Solution& sol, int order) const;

    void apply_f(Solution& sol, int order, const FCandidate& c) const;

    /// Visit shapes allowed for delivering `need` barges of `order` given the
    /// tugboats already serving it: one visit when need <= K, two when
    /// need <= 2K, otherwise three or four visits over two tugboats.
    std::vector<PlanShape> shapes(const Solution& sol, int order, int need) const;

    /// Best plan per shape, built visit by visit. Throws InsufficientBarges
    /// when fewer than `need` barges are free.
    std::vector<EPlan> plans(const Solution& sol, int order, int need) const;

    /// Lowest-delta plan, refined by single barge swaps.
    EPlan best_e(const Solution& sol, int order, int need) const;

    /// Random shape, random slots and random free barges.
    EPlan random_e(const Solution& sol, int order, int need, Rng& rng) const;

    /// Inserts the plan's blocks, updating pools and visit numbering.
    void apply_e(Solution& sol, const EPlan& plan) const;

    /// Exact route-loss change of inserting `block` into `route`; infinity if
    /// the block breaks capacity or lands inside an open trip of the order.
    double block_delta(const Route& route, const RouteCache& cache, int order, const EBlock& block) const;

    /// Routing-loss change of a full plan, evaluated on copies.
    double plan_delta(const Solution& sol, const EPlan& plan) const;

    /// Swaps single plan barges for free ones while the plan gets cheaper.
    EPlan refine(const Solution& sol, EPlan plan) const;

private:
    struct Chain;

    EBlock best_block(const Route& route, const RouteCache& cache, int tug, int order, int amount,
                      std::span<const int> available, double& delta) const;
    double suffix_loss(const Route& route, const RouteCache& cache, std::size_t k, double arrival,
                       double& late) const;

    const Instance& inst_;
    const Penalties& pen_;
};

/// Inserts `block` into `route` at its slot, tagging barges with `order`.
void insert_block(const Instance& inst, Route& route, int order, const EBlock& block);

}  // namespace tug
