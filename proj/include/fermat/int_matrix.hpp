#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace fermat {

// All arithmetic in this library is exact over Z.
using Int = boost::multiprecision::cpp_int;

// Elimination kernels come in two flavors: Serial is the reference
// implementation, Parallel distributes the independent per-row updates
// with OpenMP. Both perform the same operations in the same order, so
// results are bit-identical.
enum class Exec { Serial, Parallel };

// Dense integer matrix, row-major. Vectors are rows and multiply
// matrices from the left throughout the library.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Int& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  bool operator==(const IntMatrix& other) const = default;

  bool is_zero() const;
  bool is_identity() const;

  std::vector<Int> row(std::size_t r) const;
  void set_row(std::size_t r, const std::vector<Int>& v);
  void swap_rows(std::size_t r1, std::size_t r2);
  void swap_cols(std::size_t c1, std::size_t c2);

  IntMatrix transposed() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

struct HnfResult {
  IntMatrix h;                      // row-style Hermite normal form
  IntMatrix u;                      // unimodular, u * m == h
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

struct SnfResult {
  IntMatrix s;  // diagonal, d1 | d2 | ..., entries nonnegative
  IntMatrix u;  // unimodular row transform
  IntMatrix v;  // unimodular column transform, u * m * v == s
};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b, Exec exec = Exec::Parallel);
IntMatrix add(const IntMatrix& a, const IntMatrix& b);
IntMatrix sub(const IntMatrix& a, const IntMatrix& b);
IntMatrix stack(const IntMatrix& top, const IntMatrix& bottom);
std::vector<Int> mul_row(const std::vector<Int>& v, const IntMatrix& m);

// Row-style HNF: echelon with positive pivots; entries above each pivot
// reduced into [0, pivot). Zero rows sink to the bottom.
HnfResult hnf(const IntMatrix& m, Exec exec = Exec::Parallel);

// Canonical basis of the row lattice of m: nonzero rows of its HNF.
IntMatrix hnf_basis(const IntMatrix& m, Exec exec = Exec::Parallel);

SnfResult snf(const IntMatrix& m, Exec exec = Exec::Parallel);

std::size_t rank(const IntMatrix& m, Exec exec = Exec::Parallel);

// Z-basis of { x : x * m == 0 }, as rows in HNF. The lattice is
// saturated: it comes from rows of the unimodular HNF transform, so any
// integer kernel vector is an integer combination of the basis.
IntMatrix kernel_basis(const IntMatrix& m, Exec exec = Exec::Parallel);

// Coefficients c with c * basis == target, or nullopt when target is
// not in the row lattice. Rows of basis must be linearly independent.
std::optional<std::vector<Int>> solve_in_lattice(const IntMatrix& basis,
                                                 const std::vector<Int>& target);

// True when m is square and invertible over Z (HNF equals the identity).
bool is_unimodular(const IntMatrix& m);

}  // namespace fermat
