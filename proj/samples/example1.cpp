// Walks the 5x6 example system: maximum solution, candidate sets, one
// candidate lower bound, then a solver run on a small nonlinear objective.

#include <iostream>

#include "freaco/freaco.hpp"

int main() {
  using namespace freaco;
  const Problem p = make_problem("example1", example1_instance(), kExample1Objective);
  const MaxSolution xbar = compute_max_solution(p.instance);
  const CandidateSets sets = compute_candidate_sets(p.instance, xbar);

  std::cout << "xbar      " << xbar.xbar.transpose() << '\n';
  for (std::size_t i = 0; i < sets.rows(); ++i) {
    std::cout << "J(" << i + 1 << ")     ";
    for (auto j : sets.jbar[i]) std::cout << ' ' << j + 1;
    std::cout << '\n';
  }
  std::cout << "|E|       " << path_space_size(sets) << '\n';

  const auto e = FrePath::from_one_based({5, 1, 6, 5, 1});
  std::cout << "x(e)      " << path_to_candidate(e, p.instance.b(), p.instance.cols()).transpose() << '\n';

  SolverConfig cfg;
  cfg.seed = 42;
  const RunResult r = run(p, cfg);
  std::cout << "best f    " << r.best.f << "\nbest x    " << r.best.x.transpose() << "\nevals     " << r.eval_count
            << '\n';
}
