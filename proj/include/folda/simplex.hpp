#ifndef FOLDA_SIMPLEX_HPP
#define FOLDA_SIMPLEX_HPP

#include <cstdint>
#include <vector>

#include "folda/rational.hpp"

namespace folda {

// Equality-form linear program: min c^T x subject to A x = b, x >= 0.
// Inputs are integers (incidence entries, token counts, costs in 1/10000
// units); the solution is exact.
struct LpProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> a;  // row-major rows x cols
  std::vector<std::int64_t> b;
  std::vector<std::int64_t> c;

  std::int64_t& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
  std::int64_t at(std::size_t r, std::size_t col) const { return a[r * cols + col]; }
};

enum class LpStatus : std::uint8_t { optimal, infeasible, unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::infeasible;
  Rat objective;
  std::vector<Rat> x;
};

// Two-phase primal simplex with exact arithmetic (integer pivoting; the
// tableau is kept as integers over a common denominator). Pivots use the
// largest-improvement rule and switch to Bland's rule after a run of
// degenerate pivots, so the solve always terminates. An int64 tableau is
// tried first and the solve is repeated with arbitrary-precision integers
// if any entry outgrows the guard bound.
LpOutcome solve_exact_lp(const LpProblem& lp);

}  // namespace folda

#endif
