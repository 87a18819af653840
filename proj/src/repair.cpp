#include "tugsched/repair.hpp"

#include <algorithm>

#include "tugsched/error.hpp"
#include "tugsched/routes.hpp"

namespace tug {

std::string_view to_string(RepairOp op) {
    switch (op) {
        case RepairOp::FRGI: return "FRGI";
        case RepairOp::FGI: return "FGI";
        case RepairOp::FSGI: return "FSGI";
        case RepairOp::FNRGI: return "FNRGI";
        case RepairOp::FNGI: return "FNGI";
        case RepairOp::FNSGI: return "FNSGI";
        case RepairOp::EARI: return "EARI";
        case RepairOp::EAGI: return "EAGI";
        case RepairOp::EASGI: return "EASGI";
        case RepairOp::ENAGI: return "ENAGI";
        case RepairOp::ENASGI: return "ENASGI";
    }
    return "?";
}

bool is_noisy(RepairOp op) {
    return op == RepairOp::FNRGI || op == RepairOp::FNGI || op == RepairOp::FNSGI || op == RepairOp::ENAGI ||
           op == RepairOp::ENASGI;
}

RepairOp noiseless_twin(RepairOp op) {
    switch (op) {
        case RepairOp::FNRGI: return RepairOp::FRGI;
        case RepairOp::FNGI: return RepairOp::FGI;
        case RepairOp::FNSGI: return RepairOp::FSGI;
        case RepairOp::ENAGI: return RepairOp::EAGI;
        case RepairOp::ENASGI: return RepairOp::EASGI;
        default: return op;
    }
}

double CandidateSummary::regret() const {
    if (second == std::numeric_limits<double>::infinity()) {
        return std::numeric_limits<double>::infinity();
    }
    return second - best;
}

std::size_t select_greedy(std::span<const CandidateSummary> c) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i].best < c[pick].best) {
            pick = i;
        }
    }
    return pick;
}

std::size_t select_regret(std::span<const CandidateSummary> c, bool literal) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        const double r = c[i].regret();
        const double rp = c[pick].regret();
        const bool better = literal ? r < rp : r > rp;
        if (better || (r == rp && c[i].best < c[pick].best)) {
            pick = i;
        }
    }
    return pick;
}

namespace {

using Scale = std::function<double(double)>;

Scale make_scale(RepairContext& ctx, bool noisy) {
    if (!noisy) {
        return [](double d) { return d; };
    }
    return [&ctx](double d) { return d * ctx.noise(); };
}

struct FChoice {
    CandidateSummary summary;
    FCandidate best;
};

FChoice summarize_f(const Inserter& ins, const Solution& sol, int order, const Scale& scale) {
    FChoice out;
    out.summary.entity = order;
    ins.scan_f(sol, order, [&](const FCandidate& c) {
        const double d = scale(c.delta);
        if (d < out.summary.best) {
            out.summary.second = out.summary.best;
            out.summary.best = d;
            out.best = c;
        } else if (d < out.summary.second) {
            out.summary.second = d;
        }
    });
    return out;
}

void insert_f_sequential(RepairContext& ctx, Solution& sol, const Scale& scale) {
    std::vector<int> pool = sol.unassigned_f;
    ctx.rng.shuffle(std::span<int>(pool));
    for (int k : pool) {
        ctx.inserter.apply_f(sol, k, summarize_f(ctx.inserter, sol, k, scale).best);
    }
}

void insert_f_ranked(RepairContext& ctx, Solution& sol, const Scale& scale, bool regret) {
    while (!sol.unassigned_f.empty()) {
        std::vector<int> pool = sol.unassigned_f;
        std::sort(pool.begin(), pool.end());
        std::vector<FChoice> choices;
        std::vector<CandidateSummary> summaries;
        for (int k : pool) {
            choices.push_back(summarize_f(ctx.inserter, sol, k, scale));
            summaries.push_back(choices.back().summary);
        }
        const std::size_t pick =
            regret ? select_regret(summaries, ctx.regret_literal) : select_greedy(summaries);
        ctx.inserter.apply_f(sol, pool[pick], choices[pick].best);
    }
}

struct EChoice {
    CandidateSummary summary;
    EPlan best;
};

EChoice summarize_e(const Inserter& ins, const Solution& sol, const PooledEOrder& e, const Scale& scale) {
    EChoice out;
    out.summary.entity = e.order;
    for (EPlan& plan : ins.plans(sol, e.order, e.remaining)) {
        const double d = scale(plan.delta);
        if (d < out.summary.best) {
            out.summary.second = out.summary.best;
            out.summary.best = d;
            out.best = std::move(plan);
        } else if (d < out.summary.second) {
            out.summary.second = d;
        }
    }
    if (!out.best.valid()) {
        throw Infeasible("no admissible visit plan for typeE order " + std::to_string(e.order));
    }
    return out;
}

void insert_e_random(RepairContext& ctx, Solution& sol) {
    std::vector<PooledEOrder> pool = sol.unassigned_e;
    std::sort(pool.begin(), pool.end());
    ctx.rng.shuffle(std::span<PooledEOrder>(pool));
    for (const PooledEOrder& e : pool) {
        ctx.inserter.apply_e(sol, ctx.inserter.random_e(sol, e.order, e.remaining, ctx.rng));
    }
}

void insert_e_ranked(RepairContext& ctx, Solution& sol, const Scale& scale, bool regret) {
    while (!sol.unassigned_e.empty()) {
        std::vector<PooledEOrder> pool = sol.unassigned_e;
        std::sort(pool.begin(), pool.end());
        std::vector<EChoice> choices;
        std::vector<CandidateSummary> summaries;
        for (const PooledEOrder& e : pool) {
            choices.push_back(summarize_e(ctx.inserter, sol, e, scale));
            summaries.push_back(choices.back().summary);
        }
        const std::size_t pick =
            regret ? select_regret(summaries, ctx.regret_literal) : select_greedy(summaries);
        ctx.inserter.apply_e(sol, ctx.inserter.refine(sol, std::move(choices[pick].best)));
    }
}

}  // namespace

void repair(RepairOp op, RepairContext& ctx, Solution& sol) {
    const Scale plain = make_scale(ctx, false);
    const Scale scale = make_scale(ctx, is_noisy(op));
    switch (op) {
        case RepairOp::FRGI:
        case RepairOp::FNRGI: insert_f_sequential(ctx, sol, scale); break;
        case RepairOp::FGI:
        case RepairOp::FNGI: insert_f_ranked(ctx, sol, scale, false); break;
        case RepairOp::FSGI:
        case RepairOp::FNSGI: insert_f_ranked(ctx, sol, scale, true); break;
        case RepairOp::EARI: insert_e_random(ctx, sol); break;
        case RepairOp::EAGI:
        case RepairOp::ENAGI: insert_e_ranked(ctx, sol, scale, false); break;
        case RepairOp::EASGI:
        case RepairOp::ENASGI: insert_e_ranked(ctx, sol, scale, true); break;
    }
    const bool f_family = std::find(std::begin(kFRepairOps), std::end(kFRepairOps), op) != std::end(kFRepairOps);
    if (f_family) {
        insert_e_ranked(ctx, sol, plain, false);
    } else {
        insert_f_ranked(ctx, sol, plain, false);
    }
}

}  // namespace tug
