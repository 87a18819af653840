#pragma once

// Roulette-wheel operator selection with segment-wise weight adaptation.

#include <ostream>
#include <string>
#include <vector>

#include "tugsched/rng.hpp"

namespace tug {

enum class Outcome { GlobalBest, BetterUnexplored, AcceptedWorse, None };

const char* to_string(Outcome o);

struct RewardTiers {
    double global_best = 1.5;
    double better_unexplored = 1.2;
    double accepted_worse = 0.8;
    double none = 0.6;

    double operator[](Outcome o) const;
};

struct OperatorStats {
    std::string name;
    double weight = 1.0;
    double score = 0.0;
    int uses = 0;
};

struct WeightRecord {
    int segment = 0;
    std::string bank;
    std::string op;
    double weight = 0.0;
    int uses = 0;
    double score = 0.0;
};

class OperatorBank {
public:
    OperatorBank() = default;
    OperatorBank(std::string name, const std::vector<std::string>& ops);

    const std::string& name() const { return name_; }
    std::size_t size() const { return ops_.size(); }
    const OperatorStats& operator[](std::size_t i) const { return ops_[i]; }
    OperatorStats& operator[](std::size_t i) { return ops_[i]; }

    /// w_j / sum(w).
    std::vector<double> probabilities() const;

    /// Index whose cumulative-probability interval contains u in [0, 1).
    std::size_t select(double u) const;
    std::size_t select(Rng& rng) const { return select(rng.uniform()); }

    void reward(std::size_t op, Outcome outcome, const RewardTiers& tiers);

    /// w = b*w + (1-b)*score/uses for used operators; then scores and uses
    /// reset. Appends one record per operator to `log` when given.
    void end_segment(double reaction, int segment = 0, std::vector<WeightRecord>* log = nullptr);

private:
    std::string name_;
    std::vector<OperatorStats> ops_;
};

void write_weights_csv(std::ostream& out, const std::vector<WeightRecord>& records);

}  // namespace tug
