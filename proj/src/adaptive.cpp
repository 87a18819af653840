#include "tugsched/adaptive.hpp"

#include <numeric>

#include "tugsched/error.hpp"

namespace tug {

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::GlobalBest: return "global_best";
        case Outcome::BetterUnexplored: return "better_unexplored";
        case Outcome::AcceptedWorse: return "accepted_worse";
        case Outcome::None: return "none";
    }
    return "?";
}

double RewardTiers::operator[](Outcome o) const {
    switch (o) {
        case Outcome::GlobalBest: return global_best;
        case Outcome::BetterUnexplored: return better_unexplored;
        case Outcome::AcceptedWorse: return accepted_worse;
        case Outcome::None: return none;
    }
    return 0.0;
}

OperatorBank::OperatorBank(std::string name, const std::vector<std::string>& ops) : name_(std::move(name)) {
    for (const std::string& op : ops) {
        ops_.push_back(OperatorStats{op});
    }
}

std::vector<double> OperatorBank::probabilities() const {
    if (ops_.empty()) {
        throw EmptyBank("operator bank '" + name_ + "' is empty");
    }
    double total = 0.0;
    for (const OperatorStats& s : ops_) {
        total += s.weight;
    }
    std::vector<double> p;
    for (const OperatorStats& s : ops_) {
        p.push_back(s.weight / total);
    }
    return p;
}

std::size_t OperatorBank::select(double u) const {
    if (ops_.empty()) {
        throw EmptyBank("operator bank '" + name_ + "' is empty");
    }
    double total = 0.0;
    for (const OperatorStats& s : ops_) {
        total += s.weight;
    }
    const double target = u * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        acc += ops_[i].weight;
        if (target < acc) {
            return i;
        }
    }
    return ops_.size() - 1;
}

void OperatorBank::reward(std::size_t op, Outcome outcome, const RewardTiers& tiers) {
    ops_[op].score += tiers[outcome];
    ++ops_[op].uses;
}

void OperatorBank::end_segment(double reaction, int segment, std::vector<WeightRecord>* log) {
    for (OperatorStats& s : ops_) {
        if (s.uses > 0) {
            s.weight = reaction * s.weight + (1.0 - reaction) * s.score / s.uses;
        }
        if (log != nullptr) {
            log->push_back({segment, name_, s.name, s.weight, s.uses, s.score});
        }
        s.score = 0.0;
        s.uses = 0;
    }
}

void write_weights_csv(std::ostream& out, const std::vector<WeightRecord>& records) {
    out << "segment,bank,operator,weight,uses,score\n";
    for (const WeightRecord& r : records) {
        out << r.segment << ',' << r.bank << ',' << r.op << ',' << r.weight << ',' << r.uses << ',' << r.score
            << '\n';
    }
}

}  // namespace tug
