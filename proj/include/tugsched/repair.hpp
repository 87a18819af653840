#pragma once

// Insertion operators. Each empties the pools it targets; typeF operators
// finish any pooled typeE demand with greedy plans and typeE operators
// finish pooled typeF orders with greedy insertion, so every output is
// complete.

#include <functional>
#include <span>
#include <string_view>

#include "tugsched/insertion.hpp"
#include "tugsched/model.hpp"
#include "tugsched/rng.hpp"

namespace tug {

enum class RepairOp { FRGI, FGI, FSGI, FNRGI, FNGI, FNSGI, EARI, EAGI, EASGI, ENAGI, ENASGI };

inline constexpr RepairOp kFRepairOps[] = {RepairOp::FRGI,  RepairOp::FGI,  RepairOp::FSGI,
                                           RepairOp::FNRGI, RepairOp::FNGI, RepairOp::FNSGI};
inline constexpr RepairOp kERepairOps[] = {RepairOp::EARI, RepairOp::EAGI, RepairOp::EASGI, RepairOp::ENAGI,
                                           RepairOp::ENASGI};

std::string_view to_string(RepairOp op);
bool is_noisy(RepairOp op);
/// The same operator without noise; identity for noiseless operators.
RepairOp noiseless_twin(RepairOp op);

struct RepairContext {
    const Inserter& inserter;
    Rng& rng;
    /// Factor applied to every candidate delta by the noisy operators.
    /// Defaults to a uniform draw in [0, 1) from `rng`.
    std::function<double()> noise;
    /// Insert the entity with the smallest regret first instead of the largest.
    bool regret_literal = false;

    RepairContext(const Inserter& ins, Rng& r) : inserter(ins), rng(r), noise([&r] { return r.uniform(); }) {}
};

/// Best and second-best candidate delta of one pooled entity.
struct CandidateSummary {
    int entity = 0;
    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();

    /// second - best, or infinity with fewer than two candidates.
    double regret() const;
};

/// Index of the entity with the smallest best delta; ties to the first.
std::size_t select_greedy(std::span<const CandidateSummary> c);

/// Index of the entity with the largest regret (smallest when `literal`);
/// ties go to the smaller best delta, then to the first.
std::size_t select_regret(std::span<const CandidateSummary> c, bool literal);

void repair(RepairOp op, RepairContext& ctx, Solution& sol);

}  // namespace tug
