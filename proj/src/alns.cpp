#include "tugsched/alns.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

#include "tugsched/construction.hpp"
#include "tugsched/error.hpp"

namespace tug {

namespace {

double now_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

template <typename Op>
std::vector<std::string> names(const std::vector<Op>& ops) {
    std::vector<std::string> out;
    for (Op op : ops) {
        out.emplace_back(to_string(op));
    }
    return out;
}

constexpr double kImprovementEps = 1e-9;

}  // namespace

void SearchConfig::check() const {
    if (!(t_initial > 0.0) || !(cooling > 0.0 && cooling < 1.0) || !(t_min > 0.0 && t_min < t_initial)) {
        throw SchemaError("temperature schedule needs t_initial > t_min > 0 and 0 < cooling < 1");
    }
    if (iter_max_no_improve < 1 || family_b < 2 || segment_length < 1) {
        throw SchemaError("iter_max >= 1, family_b >= 2 and segment_length >= 1 are required");
    }
    if (!(reaction >= 0.0 && reaction <= 1.0) || step < 0) {
        throw SchemaError("reaction factor must lie in [0, 1] and step must be non-negative");
    }
}

bool accept(double loss_current, double loss_candidate, double temperature, double eps) {
    if (loss_candidate < loss_current) {
        return true;
    }
    return eps < std::exp((loss_current - loss_candidate) / temperature);
}

bool accept(double loss_current, double loss_candidate, double temperature, Rng& rng) {
    if (loss_candidate < loss_current) {
        return true;
    }
    return accept(loss_current, loss_candidate, temperature, rng.uniform());
}

double temperature_at(const SearchConfig& cfg, long k) {
    return cfg.t_initial * std::pow(cfg.cooling, static_cast<double>(k));
}

long epoch_length(const SearchConfig& cfg) {
    long k = 0;
    while (temperature_at(cfg, k) >= cfg.t_min) {
        ++k;
    }
    return k;
}

void write_trace_csv(std::ostream& out, const std::vector<IterationRecord>& trace) {
    out << "iter,temperature,family,destroy_op,repair_op,candidate_loss,current_loss,best_loss,outcome\n";
    out.precision(10);
    for (const IterationRecord& r : trace) {
        out << r.iter << ',' << r.temperature << ',' << (r.family == Family::F ? "F" : "E") << ',' << r.destroy_op
            << ',' << r.repair_op << ',' << r.candidate_loss << ',' << r.current_loss << ',' << r.best_loss << ','
            << to_string(r.outcome) << '\n';
    }
}

Search::Search(const Instance& inst, SearchConfig cfg, Solution initial)
    : inst_(inst),
      cfg_(std::move(cfg)),
      pen_(cfg_.penalties.value_or(inst.penalties())),
      inserter_(inst_, pen_),
      rng_(cfg_.seed),
      f_destroy_ops_{DestroyOp::FRR, DestroyOp::FGR, DestroyOp::RRR, DestroyOp::RGR},
      e_destroy_ops_{DestroyOp::ERR, DestroyOp::EGR, DestroyOp::RRR, DestroyOp::RGR},
      f_repair_ops_(std::begin(kFRepairOps), std::end(kFRepairOps)),
      e_repair_ops_(std::begin(kERepairOps), std::end(kERepairOps)),
      current_(std::move(initial)) {
    cfg_.check();
    f_destroy_ = OperatorBank("F-destroy", names(f_destroy_ops_));
    f_repair_ = OperatorBank("F-repair", names(f_repair_ops_));
    e_destroy_ = OperatorBank("E-destroy", names(e_destroy_ops_));
    e_repair_ = OperatorBank("E-repair", names(e_repair_ops_));
    best_ = current_;
    current_loss_ = best_loss_ = eval(current_);
    temperature_ = temperature_at(cfg_, 0);
    visited_.insert(route_hash(current_));
    stats_.seed = cfg_.seed;
    stats_.initial_loss = current_loss_;
    stats_.final_loss = best_loss_;
    started_ = now_seconds();
}

double Search::eval(const Solution& s) const {
    return loss(inst_, s, pen_).total;
}

OperatorBank& Search::bank_ref(Family family, bool destroy) {
    if (family == Family::F) {
        return destroy ? f_destroy_ : f_repair_;
    }
    return destroy ? e_destroy_ : e_repair_;
}

const OperatorBank& Search::bank(Family family, bool destroy) const {
    return const_cast<Search*>(this)->bank_ref(family, destroy);
}

Outcome Search::step() {
    const int r = 1 + static_cast<int>(rng_.below(static_cast<std::size_t>(cfg_.family_b)));
    return step(r);
}

Outcome Search::step(int r) {
    Family family = r == cfg_.family_b ? Family::E : Family::F;
    if (inst_.e_count() == 0) {
        family = Family::F;
    } else if (inst_.f_count() == 0) {
        family = Family::E;
    }
    OperatorBank& dbank = bank_ref(family, true);
    OperatorBank& rbank = bank_ref(family, false);
    const std::size_t di = dbank.select(rng_);
    const std::size_t ri = rbank.select(rng_);
    const DestroyOp dop = family == Family::F ? f_destroy_ops_[di] : e_destroy_ops_[di];
    const RepairOp rop = family == Family::F ? f_repair_ops_[ri] : e_repair_ops_[ri];

    Outcome outcome = Outcome::None;
    double cand_loss = std::numeric_limits<double>::infinity();
    try {
        Solution cand = current_;
        const int n = cfg_.step > 0 ? cfg_.step : default_step(inst_, cand, dop);
        destroy(dop, inst_, pen_, cand, n, rng_);
        RepairContext ctx(inserter_, rng_);
        ctx.regret_literal = cfg_.regret_literal;
        repair(rop, ctx, cand);
        cand_loss = eval(cand);
        const bool unexplored = visited_.insert(route_hash(cand)).second;
        if (cand_loss < best_loss_ - kImprovementEps) {
            outcome = Outcome::GlobalBest;
            best_ = cand;
            best_loss_ = cand_loss;
            current_ = std::move(cand);
            current_loss_ = cand_loss;
        } else if (accept(current_loss_, cand_loss, temperature_, rng_)) {
            outcome = cand_loss < current_loss_ && unexplored ? Outcome::BetterUnexplored : Outcome::AcceptedWorse;
            current_ = std::move(cand);
            current_loss_ = cand_loss;
        }
    } catch (const Error&) {
        outcome = Outcome::None;
    }

    dbank.reward(di, outcome, cfg_.tiers);
    rbank.reward(ri, outcome, cfg_.tiers);
    if (outcome == Outcome::GlobalBest) {
        no_improve_ = 0;
        ++stats_.improvements;
    } else {
        ++no_improve_;
    }
    if (cfg_.record_trace) {
        stats_.trace.push_back({iter_, temperature_, family, std::string(to_string(dop)), std::string(to_string(rop)),
                                cand_loss, current_loss_, best_loss_, outcome});
    }

    ++iter_;
    if (++segment_iter_ == cfg_.segment_length) {
        for (OperatorBank* b : {&f_destroy_, &f_repair_, &e_destroy_, &e_repair_}) {
            b->end_segment(cfg_.reaction, segment_, &stats_.weights);
        }
        ++segment_;
        segment_iter_ = 0;
    }
    ++epoch_iter_;
    temperature_ = temperature_at(cfg_, epoch_iter_);
    if (temperature_ < cfg_.t_min) {
        epoch_iter_ = 0;
        temperature_ = temperature_at(cfg_, 0);
    }
    stats_.iterations = iter_;
    stats_.final_loss = best_loss_;
    return outcome;
}

bool Search::done() const {
    if (inst_.f_count() == 0 && inst_.e_count() == 0) {
        return true;
    }
    if (no_improve_ >= cfg_.iter_max_no_improve) {
        return true;
    }
    if (cfg_.max_iterations && iter_ >= *cfg_.max_iterations) {
        return true;
    }
    return cfg_.time_limit_seconds && now_seconds() - started_ >= *cfg_.time_limit_seconds;
}

void Search::run() {
    started_ = now_seconds();
    while (!done()) {
        step();
    }
    stats_.search_seconds = now_seconds() - started_;
}

SearchResult solve(const Instance& inst, const SearchConfig& cfg) {
    cfg.check();
    const Penalties pen = cfg.penalties.value_or(inst.penalties());
    const double t0 = now_seconds();
    Solution initial = construct(inst, pen);
    const double t1 = now_seconds();
    Search search(inst, cfg, std::move(initial));
    search.run();
    SearchResult out;
    out.best = search.best();
    out.schedule = propagate(inst, out.best);
    out.loss = loss(inst, out.best, pen);
    out.stats = std::move(search.stats());
    out.stats.construction_seconds = t1 - t0;
    return out;
}

SearchResult solve_multistart(const Instance& inst, const SearchConfig& cfg, int starts, int threads) {
    starts = std::max(starts, 1);
    threads = std::clamp(threads, 1, starts);
    std::vector<std::optional<SearchResult>> results(static_cast<std::size_t>(starts));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(starts));
    std::mutex mu;
    int next = 0;
    auto worker = [&] {
        while (true) {
            int i;
            {
                std::lock_guard lock(mu);
                if (next >= starts) {
                    return;
                }
                i = next++;
            }
            SearchConfig c = cfg;
            c.seed = cfg.seed + static_cast<std::uint64_t>(i);
            try {
                results[static_cast<std::size_t>(i)] = solve(inst, c);
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
        t.join();
    }
    for (const std::exception_ptr& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    std::size_t pick = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (results[i]->loss.total < results[pick]->loss.total) {
            pick = i;
        }
    }
    return std::move(*results[pick]);
}

}  // namespace tug
