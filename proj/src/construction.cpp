#include "tugsched/construction.hpp"

#include <algorithm>

namespace tug {

void greedy_insert_f(const Inserter& ins, Solution& sol, int order) {
    ins.apply_f(sol, order, ins.best_f(sol, order));
}

void greedy_insert_e(const Inserter& ins, Solution& sol, int order) {
    auto it = std::find_if(sol.unassigned_e.begin(), sol.unassigned_e.end(),
                           [order](const PooledEOrder& e) { return e.order == order; });
    if (it == sol.unassigned_e.end()) {
        return;
    }
    ins.apply_e(sol, ins.best_e(sol, order, it->remaining));
}

Solution construct(const Instance& inst, const Penalties& pen) {
    Solution sol = empty_solution(inst);
    const Inserter ins(inst, pen);
    for (int k = 0; k < inst.f_count(); ++k) {
        greedy_insert_f(ins, sol, k);
    }
    for (int h = 0; h < inst.e_count(); ++h) {
        greedy_insert_e(ins, sol, h);
    }
    return sol;
}

}  // namespace tug
