#pragma once

// Adaptive large neighbourhood search with simulated-annealing acceptance.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_set>
#include <vector>

#include "tugsched/adaptive.hpp"
#include "tugsched/destroy.hpp"
#include "tugsched/evaluation.hpp"
#include "tugsched/insertion.hpp"
#include "tugsched/model.hpp"
#include "tugsched/repair.hpp"
#include "tugsched/rng.hpp"

namespace tug {

struct SearchConfig {
    double t_initial = 100.0;
    double cooling = 0.98;
    double t_min = 10.0;
    int iter_max_no_improve = 200;
    int family_b = 4;             // typeE family drawn with probability 1/family_b
    int segment_length = 115;
    double reaction = 0.5;
    RewardTiers tiers;
    std::uint64_t seed = 1;
    int step = 0;                 // removals per destroy; 0 picks the default
    bool regret_literal = false;
    std::optional<double> time_limit_seconds;
    std::optional<long> max_iterations;
    std::optional<Penalties> penalties;  // instance penalties when unset
    bool record_trace = true;

    /// Throws SchemaError on out-of-range values.
    void check() const;
};

/// Candidate accepted if strictly better, otherwise when eps < exp((cur - cand) / T).
bool accept(double loss_current, double loss_candidate, double temperature, double eps);
bool accept(double loss_current, double loss_candidate, double temperature, Rng& rng);

/// t_initial * cooling^k.
double temperature_at(const SearchConfig& cfg, long k);

/// Iterations before the temperature first drops below t_min.
long epoch_length(const SearchConfig& cfg);

enum class Family { F, E };

struct IterationRecord {
    long iter = 0;
    double temperature = 0.0;
    Family family = Family::F;
    std::string destroy_op;
    std::string repair_op;
    double candidate_loss = 0.0;
    double current_loss = 0.0;
    double best_loss = 0.0;
    Outcome outcome = Outcome::None;
};

struct RunStats {
    std::uint64_t seed = 0;
    double construction_seconds = 0.0;
    double search_seconds = 0.0;
    double initial_loss = 0.0;
    double final_loss = 0.0;
    long iterations = 0;
    long improvements = 0;
    std::vector<IterationRecord> trace;
    std::vector<WeightRecord> weights;
};

void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace);

struct SearchResult {
    Solution best;
    Schedule schedule;
    LossBreakdown loss;
    RunStats stats;
};

/// One search run over a fixed instance. Banks: F-destroy, F-repair,
/// E-destroy, E-repair; route removals appear in both destroy banks.
class Search {
public:
    Search(const Instance& inst, SearchConfig cfg, Solution initial);

    /// One iteration with a fresh family draw.
    Outcome step();
    /// One iteration with the family draw r in 1..family_b given.
    Outcome step(int r);

    /// Iterates until a stopping rule fires.
    void run();
    bool done() const;

    const Solution& current() const { return current_; }
    const Solution& best() const { return best_; }
    double current_loss() const { return current_loss_; }
    double best_loss() const { return best_loss_; }
    double temperature() const { return temperature_; }
    long iterations() const { return iter_; }
    long no_improve() const { return no_improve_; }
    int segments() const { return segment_; }
    const OperatorBank& bank(Family family, bool destroy) const;
    const RunStats& stats() const { return stats_; }
    RunStats& stats() { return stats_; }

private:
    OperatorBank& bank_ref(Family family, bool destroy);
    double eval(const Solution& s) const;

    const Instance& inst_;
    SearchConfig cfg_;
    Penalties pen_;
    Inserter inserter_;
    Rng rng_;
    OperatorBank f_destroy_, f_repair_, e_destroy_, e_repair_;
    std::vector<DestroyOp> f_destroy_ops_, e_destroy_ops_;
    std::vector<RepairOp> f_repair_ops_, e_repair_ops_;
    Solution current_, best_;
    double current_loss_ = 0.0;
    double best_loss_ = 0.0;
    double temperature_ = 0.0;
    long epoch_iter_ = 0;
    long iter_ = 0;
    long no_improve_ = 0;
    int segment_ = 0;
    int segment_iter_ = 0;
    std::unordered_set<std::uint64_t> visited_;
    RunStats stats_;
    double started_ = 0.0;
};

/// Construction followed by search.
SearchResult solve(const Instance& inst, const SearchConfig& cfg);

/// `starts` independent runs with seeds cfg.seed, cfg.seed+1, ...; the
/// lowest final loss wins, ties to the earlier seed. At most `threads`
/// runs execute concurrently.
SearchResult solve_multistart(const Instance& inst, const SearchConfig& cfg, int starts, int threads);

}  // namespace tug
