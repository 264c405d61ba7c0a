// Sensor placement with two sensor kinds: each (site, kind) covers some
// targets, sites have integer installation costs, and the budget is fixed.

#include <iostream>

#include "ksub/ksub.hpp"

int main() {
    using namespace ksub;

    CoveragePayload payload;
    for (const char *target : {"t1", "t2", "t3", "t4", "t5"})
        payload.elements.push_back({target, 1.0});
    payload.covers = {
        {ItemId{1}, Dimension{1}, {"t1", "t2"}}, {ItemId{1}, Dimension{2}, {"t1"}},
        {ItemId{2}, Dimension{1}, {"t2"}},       {ItemId{2}, Dimension{2}, {"t2", "t3"}},
        {ItemId{3}, Dimension{1}, {"t4"}},       {ItemId{3}, Dimension{2}, {"t3", "t4", "t5"}},
        {ItemId{4}, Dimension{1}, {"t5"}},       {ItemId{4}, Dimension{2}, {"t1", "t5"}},
    };
    CoverageOracle f(4, 2, payload);
    Instance inst(2, {1, 2, 3, 1}, 4);

    EvalCounter greedy_calls;
    SolveReport greedy = knapsack_greedy(f, inst, greedy_calls);
    EvalCounter exact_calls;
    SolveReport best = exact_bruteforce(f, inst, exact_calls);
    greedy.set_optimum(best.value);

    std::cout << "greedy  " << greedy.solution << " value " << greedy.value << " cost " << cost(greedy.solution, inst)
              << " evaluations " << greedy.evaluations << " (bound " << count_bound(inst.n(), inst.k()) << ")\n";
    std::cout << "optimum " << best.solution << " value " << best.value << "\n";
    std::cout << "ratio   " << *greedy.ratio << "\n";
}
