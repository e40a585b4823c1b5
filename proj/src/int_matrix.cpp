#include "fermat/int_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace fermat {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Floor division (cpp_int's operator/ truncates toward zero).
Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (q * b != a && ((a < 0) != (b < 0))) --q;
  return q;
}

// Nearest-integer quotient; remainder lands in (-|b|/2, |b|/2].
Int round_div(const Int& a, const Int& b) {
  Int q = floor_div(a, b);
  Int r = a - q * b;  // 0 <= r < |b|
  if (2 * r > abs_int(b)) q += (b > 0 ? 1 : -1);
  return q;
}

// w holds the working matrix, possibly augmented on the right with an
// identity block that accumulates the row transform. Pivot decisions
// look only at the first `logical` columns; row operations span the
// full width.

void row_axpy(IntMatrix& w, std::size_t dst, std::size_t src, const Int& c) {
  const std::size_t width = w.cols();
  for (std::size_t k = 0; k < width; ++k) {
    if (w(src, k) != 0) w(dst, k) += c * w(src, k);
  }
}

void negate_row(IntMatrix& w, std::size_t r) {
  for (std::size_t k = 0; k < w.cols(); ++k) {
    if (w(r, k) != 0) w(r, k) = -w(r, k);
  }
}

// Subtract the pivot-row multiple from every other listed row. The rows
// are independent of each other, which is what makes the loop parallel.
void reduce_rows_below(IntMatrix& w, std::size_t piv, std::size_t col,
                       std::size_t row_begin, Exec exec) {
  const long n = static_cast<long>(w.rows());
  const long lo = static_cast<long>(row_begin);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = lo; i < n; ++i) {
      const auto r = static_cast<std::size_t>(i);
      if (r == piv || w(r, col) == 0) continue;
      Int q = round_div(w(r, col), w(piv, col));
      if (q != 0) row_axpy(w, r, piv, -q);
    }
  } else {
    for (long i = lo; i < n; ++i) {
      const auto r = static_cast<std::size_t>(i);
      if (r == piv || w(r, col) == 0) continue;
      Int q = round_div(w(r, col), w(piv, col));
      if (q != 0) row_axpy(w, r, piv, -q);
    }
  }
}

void reduce_rows_above(IntMatrix& w, std::size_t piv, std::size_t col, Exec exec) {
  const long n = static_cast<long>(piv);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(i);
      if (w(r, col) == 0) continue;
      Int q = floor_div(w(r, col), w(piv, col));
      if (q != 0) row_axpy(w, r, piv, -q);
    }
  } else {
    for (long i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(i);
      if (w(r, col) == 0) continue;
      Int q = floor_div(w(r, col), w(piv, col));
      if (q != 0) row_axpy(w, r, piv, -q);
    }
  }
}

// Integer row echelon over the first `logical` columns. Returns the
// pivot columns in order. Canonical HNF shape: positive pivots, entries
// above a pivot reduced into [0, pivot).
std::vector<std::size_t> echelonize(IntMatrix& w, std::size_t logical, Exec exec) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < logical && r < w.rows(); ++col) {
    while (true) {
      // Smallest nonzero entry in the column at or below r.
      std::size_t best = w.rows();
      for (std::size_t i = r; i < w.rows(); ++i) {
        if (w(i, col) == 0) continue;
        if (best == w.rows() ||
            abs_int(w(i, col)) < abs_int(w(best, col))) {
          best = i;
        }
      }
      if (best == w.rows()) break;  // column already clear
      if (best != r) w.swap_rows(r, best);
      bool lone = true;
      for (std::size_t i = r + 1; i < w.rows(); ++i) {
        if (w(i, col) != 0) {
          lone = false;
          break;
        }
      }
      if (lone) break;
      reduce_rows_below(w, r, col, r + 1, exec);
      // Remainders may now undercut the pivot; loop until the column
      // below r is clear.
    }
    if (r < w.rows() && w(r, col) != 0) {
      if (w(r, col) < 0) negate_row(w, r);
      reduce_rows_above(w, r, col, exec);
      pivots.push_back(col);
      ++r;
    }
  }
  return pivots;
}

void apply_col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Int& c) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m(i, src) != 0) m(i, dst) += c * m(i, src);
  }
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged initializer");
    for (const auto& x : r) data_.push_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::vector<Int> IntMatrix::row(std::size_t r) const {
  return {data_.begin() + static_cast<long>(r * cols_),
          data_.begin() + static_cast<long>((r + 1) * cols_)};
}

void IntMatrix::set_row(std::size_t r, const std::vector<Int>& v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  std::copy(v.begin(), v.end(), data_.begin() + static_cast<long>(r * cols_));
}

void IntMatrix::swap_rows(std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t k = 0; k < cols_; ++k)
    std::swap((*this)(r1, k), (*this)(r2, k));
}

void IntMatrix::swap_cols(std::size_t c1, std::size_t c2) {
  if (c1 == c2) return;
  for (std::size_t i = 0; i < rows_; ++i)
    std::swap((*this)(i, c1), (*this)(i, c2));
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b, Exec exec) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mul: shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  const long n = static_cast<long>(a.rows());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(i);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(r, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) {
          if (b(k, j) != 0) c(r, j) += a(r, k) * b(k, j);
        }
      }
    }
  } else {
    for (long i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(i);
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(r, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) {
          if (b(k, j) != 0) c(r, j) += a(r, k) * b(k, j);
        }
      }
    }
  }
  return c;
}

IntMatrix add(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("add: shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

IntMatrix sub(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("sub: shape mismatch");
  IntMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom) {
  if (top.cols() != bottom.cols())
    throw std::invalid_argument("stack: column mismatch");
  IntMatrix c(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) c(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j)
      c(top.rows() + i, j) = bottom(i, j);
  return c;
}

std::vector<Int> mul_row(const std::vector<Int>& v, const IntMatrix& m) {
  if (v.size() != m.rows()) throw std::invalid_argument("mul_row: shape mismatch");
  std::vector<Int> out(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0) out[j] += v[i] * m(i, j);
    }
  }
  return out;
}

HnfResult hnf(const IntMatrix& m, Exec exec) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix w(rows, cols + rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) w(i, j) = m(i, j);
    w(i, cols + i) = 1;
  }
  auto pivots = echelonize(w, cols, exec);
  HnfResult out;
  out.h = IntMatrix(rows, cols);
  out.u = IntMatrix(rows, rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) out.h(i, j) = w(i, j);
    for (std::size_t j = 0; j < rows; ++j) out.u(i, j) = w(i, cols + j);
  }
  out.pivots = std::move(pivots);
  return out;
}

IntMatrix hnf_basis(const IntMatrix& m, Exec exec) {
  IntMatrix w = m;
  auto pivots = echelonize(w, w.cols(), exec);
  IntMatrix basis(pivots.size(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) basis(i, j) = w(i, j);
  return basis;
}

std::size_t rank(const IntMatrix& m, Exec exec) {
  IntMatrix w = m;
  return echelonize(w, w.cols(), exec).size();
}

IntMatrix kernel_basis(const IntMatrix& m, Exec exec) {
  HnfResult res = hnf(m, exec);
  const std::size_t rk = res.pivots.size();
  IntMatrix ker(m.rows() - rk, m.rows());
  for (std::size_t i = rk; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j) ker(i - rk, j) = res.u(i, j);
  // Canonicalize so callers get a deterministic basis.
  return hnf_basis(ker, exec);
}

std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& basis,
                                                 const std::vector<Int>& target) {
  if (target.size() != basis.cols())
    throw std::invalid_argument("solve_in_lattice: dimension mismatch");
  HnfResult res = hnf(basis, Exec::Serial);
  if (res.pivots.size() != basis.rows())
    throw std::invalid_argument("solve_in_lattice: basis rows dependent");
  std::vector<Int> t = target;
  std::vector<Int> y(basis.rows());
  for (std::size_t r = 0; r < res.pivots.size(); ++r) {
    const std::size_t p = res.pivots[r];
    if (t[p] % res.h(r, p) != 0) return std::nullopt;
    y[r] = t[p] / res.h(r, p);
    if (y[r] != 0) {
      for (std::size_t j = 0; j < t.size(); ++j) {
        if (res.h(r, j) != 0) t[j] -= y[r] * res.h(r, j);
      }
    }
  }
  for (const Int& x : t)
    if (x != 0) return std::nullopt;
  std::vector<Int> c(basis.rows());
  for (std::size_t j = 0; j < basis.rows(); ++j) {
    for (std::size_t r = 0; r < basis.rows(); ++r) {
      if (y[r] != 0 && res.u(r, j) != 0) c[j] += y[r] * res.u(r, j);
    }
  }
  return c;
}

bool is_unimodular(const IntMatrix& m) {
  if (m.rows() != m.cols()) return false;
  return hnf_basis(m, Exec::Serial).is_identity();
}

namespace {

// Clears column t below the pivot, then row t to its right, promoting
// smaller remainders into the pivot slot until both are clean.
void snf_clear_cross(IntMatrix& s, IntMatrix& u, IntMatrix& v, std::size_t t,
                     Exec exec) {
  while (true) {
    // Column below the pivot.
    while (true) {
      const long n = static_cast<long>(s.rows());
      if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = static_cast<long>(t) + 1; i < n; ++i) {
          const auto r = static_cast<std::size_t>(i);
          if (s(r, t) == 0) continue;
          Int q = round_div(s(r, t), s(t, t));
          if (q != 0) {
            row_axpy(s, r, t, -q);
            row_axpy(u, r, t, -q);
          }
        }
      } else {
        for (long i = static_cast<long>(t) + 1; i < n; ++i) {
          const auto r = static_cast<std::size_t>(i);
          if (s(r, t) == 0) continue;
          Int q = round_div(s(r, t), s(t, t));
          if (q != 0) {
            row_axpy(s, r, t, -q);
            row_axpy(u, r, t, -q);
          }
        }
      }
      std::size_t best = s.rows();
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        if (s(i, t) != 0 &&
            (best == s.rows() || abs_int(s(i, t)) < abs_int(s(best, t)))) {
          best = i;
        }
      }
      if (best == s.rows()) break;
      // A remainder undercut the pivot; promote it and reduce again.
      s.swap_rows(t, best);
      u.swap_rows(t, best);
    }
    // Row to the right of the pivot.
    for (std::size_t j = t + 1; j < s.cols(); ++j) {
      if (s(t, j) == 0) continue;
      Int q = round_div(s(t, j), s(t, t));
      if (q != 0) {
        apply_col_axpy(s, j, t, -q);
        apply_col_axpy(v, j, t, -q);
      }
    }
    std::size_t best = s.cols();
    for (std::size_t j = t + 1; j < s.cols(); ++j) {
      if (s(t, j) != 0 &&
          (best == s.cols() || abs_int(s(t, j)) < abs_int(s(t, best)))) {
        best = j;
      }
    }
    if (best == s.cols()) return;  // both arms clean
    s.swap_cols(t, best);
    v.swap_cols(t, best);
    // The swapped-in column may be dirty below t; go around again.
  }
}

}  // namespace

SnfResult snf(const IntMatrix& m, Exec exec) {
  SnfResult out;
  out.s = m;
  out.u = IntMatrix::identity(m.rows());
  out.v = IntMatrix::identity(m.cols());
  IntMatrix& s = out.s;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;

  const std::size_t bound = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < bound; ++t) {
    bool step_done = false;
    while (!step_done) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t pi = m.rows(), pj = m.cols();
      for (std::size_t i = t; i < m.rows(); ++i) {
        for (std::size_t j = t; j < m.cols(); ++j) {
          if (s(i, j) == 0) continue;
          if (pi == m.rows() || abs_int(s(i, j)) < abs_int(s(pi, pj))) {
            pi = i;
            pj = j;
          }
        }
      }
      if (pi == m.rows()) return out;  // trailing block is zero
      if (pi != t) {
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
      }
      if (pj != t) {
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
      }

      snf_clear_cross(s, u, v, t, exec);

      // The pivot must divide the whole trailing block; if not, pull
      // the offending row up and redo. Each redo shrinks |pivot|.
      step_done = true;
      for (std::size_t i = t + 1; i < m.rows() && step_done; ++i) {
        for (std::size_t j = t + 1; j < m.cols(); ++j) {
          if (s(i, j) % s(t, t) != 0) {
            row_axpy(s, t, i, Int(1));
            row_axpy(u, t, i, Int(1));
            step_done = false;
            break;
          }
        }
      }
    }
    if (s(t, t) < 0) {
      negate_row(s, t);
      negate_row(u, t);
    }
  }
  return out;
}

}  // namespace fermat
