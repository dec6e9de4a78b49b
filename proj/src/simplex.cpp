#include "folda/simplex.hpp"

#include <cstdlib>
#include <stdexcept>

namespace folda {
namespace {

struct NeedsBigInts {};  // int64 guard tripped, retry with cpp_int

template <class I>
struct Arith;

template <>
struct Arith<std::int64_t> {
  // Bound so that a*b - c*d stays inside int64.
  static constexpr std::int64_t kGuard = std::int64_t(1) << 30;
  static void check(std::int64_t v) {
    if (v > kGuard || v < -kGuard) throw NeedsBigInts{};
  }
  static std::int64_t pivot_cell(std::int64_t cur, std::int64_t piv, std::int64_t in_col,
                                 std::int64_t in_row, std::int64_t den) {
    std::int64_t num = cur * piv - in_col * in_row;
    if (num % den != 0) throw NeedsBigInts{};  // lost exactness, use big ints
    return num / den;
  }
  static bool ratio_less(std::int64_t rhs1, std::int64_t col1, std::int64_t rhs2,
                         std::int64_t col2) {
    return static_cast<__int128>(rhs1) * col2 < static_cast<__int128>(rhs2) * col1;
  }
};

template <>
struct Arith<BigInt> {
  static void check(const BigInt&) {}
  static BigInt pivot_cell(const BigInt& cur, const BigInt& piv, const BigInt& in_col,
                           const BigInt& in_row, const BigInt& den) {
    BigInt num = cur * piv - in_col * in_row;
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw std::logic_error("integer pivoting lost exactness");
    return q;
  }
  static bool ratio_less(const BigInt& rhs1, const BigInt& col1, const BigInt& rhs2,
                         const BigInt& col2) {
    return rhs1 * col2 < rhs2 * col1;
  }
};

// Tableau layout: m constraint rows, then the phase-2 objective row, then
// the phase-1 objective row. Columns: n structural, m artificial, rhs.
// True tableau = cells / den with den > 0.
template <class I>
class Tableau {
 public:
  explicit Tableau(const LpProblem& lp)
      : m_(lp.rows), n_(lp.cols), width_(n_ + m_ + 1), cells_((m_ + 2) * width_, I(0)) {
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      const std::int64_t sign = lp.b[r] < 0 ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) cell(r, j) = I(sign * lp.at(r, j));
      cell(r, n_ + r) = I(1);
      cell(r, rhs()) = I(sign * lp.b[r]);
      basis_[r] = n_ + r;
    }
    for (std::size_t j = 0; j < n_; ++j) cell(obj_row(), j) = I(lp.c[j]);
    // Phase-1 objective: minimize the artificial sum; expressed through the
    // artificial basis its reduced-cost row is minus the column sums.
    for (std::size_t j = 0; j <= rhs(); ++j) {
      I s(0);
      for (std::size_t r = 0; r < m_; ++r) s += cell(r, j);
      cell(w_row(), j) = -s;
    }
    for (std::size_t r = 0; r < m_; ++r) cell(w_row(), n_ + r) = I(0);
  }

  LpOutcome solve() {
    run_phase(w_row(), /*allow_artificial=*/false);
    if (cell(w_row(), rhs()) != 0) return LpOutcome{LpStatus::infeasible, Rat(0), {}};
    drive_out_artificials();
    bool bounded = run_phase(obj_row(), /*allow_artificial=*/false);
    if (!bounded) return LpOutcome{LpStatus::unbounded, Rat(0), {}};

    LpOutcome out;
    out.status = LpStatus::optimal;
    out.objective = -make_rat(cell(obj_row(), rhs()));
    out.x.assign(n_, Rat(0));
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) out.x[basis_[r]] = make_rat(cell(r, rhs()));
    }
    return out;
  }

 private:
  std::size_t rhs() const { return width_ - 1; }
  std::size_t obj_row() const { return m_; }
  std::size_t w_row() const { return m_ + 1; }
  I& cell(std::size_t r, std::size_t j) { return cells_[r * width_ + j]; }
  const I& cell(std::size_t r, std::size_t j) const { return cells_[r * width_ + j]; }

  Rat make_rat(const I& v) const { return Rat(BigInt(v), BigInt(den_)); }

  // Returns false if the objective is unbounded below.
  bool run_phase(std::size_t zrow, bool allow_artificial) {
    const std::size_t limit = 2000 + 200 * (m_ + n_);
    std::size_t degenerate_streak = 0;
    bool bland = false;
    for (std::size_t iter = 0; iter < limit; ++iter) {
      std::size_t col = width_;  // entering
      for (std::size_t j = 0; j < n_ + (allow_artificial ? m_ : 0); ++j) {
        if (cell(zrow, j) >= 0) continue;
        if (bland) {
          col = j;
          break;
        }
        if (col == width_ || cell(zrow, j) < cell(zrow, col)) col = j;
      }
      if (col == width_) return true;  // optimal for this phase

      std::size_t row = m_;  // leaving
      for (std::size_t r = 0; r < m_; ++r) {
        if (cell(r, col) <= 0) continue;
        if (row == m_ ||
            Arith<I>::ratio_less(cell(r, rhs()), cell(r, col), cell(row, rhs()), cell(row, col)) ||
            (!Arith<I>::ratio_less(cell(row, rhs()), cell(row, col), cell(r, rhs()),
                                   cell(r, col)) &&
             basis_[r] < basis_[row])) {
          row = r;
        }
      }
      if (row == m_) return false;  // unbounded direction

      if (cell(row, rhs()) == 0) {
        if (++degenerate_streak > 2 * (m_ + n_) + 8) bland = true;
      } else {
        degenerate_streak = 0;
      }
      pivot(row, col);
    }
    throw std::logic_error("simplex iteration limit exceeded");
  }

  void pivot(std::size_t prow, std::size_t pcol) {
    const I piv = cell(prow, pcol);
    for (std::size_t r = 0; r < m_ + 2; ++r) {
      if (r == prow) continue;
      const I factor = cell(r, pcol);
      for (std::size_t j = 0; j < width_; ++j) {
        cell(r, j) = Arith<I>::pivot_cell(cell(r, j), piv, factor, cell(prow, j), den_);
        Arith<I>::check(cell(r, j));
      }
    }
    den_ = piv;
    basis_[prow] = pcol;
  }

  // Pivots zero-valued basic artificials onto structural columns where
  // possible; rows with no structural support are redundant and stay inert.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n_) continue;
      std::size_t col = width_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (cell(r, j) != 0) {
          col = j;
          break;
        }
      }
      if (col == width_) continue;
      if (cell(r, col) < 0) {
        for (std::size_t j = 0; j < width_; ++j) cell(r, j) = -cell(r, j);
      }
      pivot(r, col);
    }
  }

  std::size_t m_, n_, width_;
  std::vector<I> cells_;
  std::vector<std::size_t> basis_;
  I den_{1};
};

}  // namespace

LpOutcome solve_exact_lp(const LpProblem& lp) {
  if (lp.a.size() != lp.rows * lp.cols || lp.b.size() != lp.rows || lp.c.size() != lp.cols)
    throw std::invalid_argument("lp dimensions inconsistent");
  try {
    return Tableau<std::int64_t>(lp).solve();
  } catch (const NeedsBigInts&) {
    return Tableau<BigInt>(lp).solve();
  }
}

}  // namespace folda
