#include "fermat/int_matrix.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace fermat;

namespace {

bool hnf_shape_ok(const HnfResult& res) {
  // Echelon, positive pivots, entries above each pivot in [0, pivot).
  std::size_t prev = 0;
  bool first = true;
  for (std::size_t r = 0; r < res.pivots.size(); ++r) {
    std::size_t p = res.pivots[r];
    if (!first && p <= prev) return false;
    first = false;
    prev = p;
    if (res.h(r, p) <= 0) return false;
    for (std::size_t c = 0; c < p; ++c)
      if (res.h(r, c) != 0) return false;
    for (std::size_t i = 0; i < r; ++i)
      if (res.h(i, p) < 0 || res.h(i, p) >= res.h(r, p)) return false;
  }
  for (std::size_t r = res.pivots.size(); r < res.h.rows(); ++r)
    for (std::size_t c = 0; c < res.h.cols(); ++c)
      if (res.h(r, c) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("hnf of the identity is the identity") {
  IntMatrix id = IntMatrix::identity(2);
  HnfResult res = hnf(id);
  CHECK(res.h == id);
  CHECK(res.u == id);
}

TEST_CASE("hnf of a diagonal matrix in normal form is itself") {
  IntMatrix m{{2, 0}, {0, 3}};
  HnfResult res = hnf(m);
  CHECK(res.h == m);
  CHECK(res.u == IntMatrix::identity(2));
}

TEST_CASE("hnf undoes a unimodular scramble") {
  // Oracle: scrambling by elementary unimodular row operations does not
  // change the row lattice, so the HNF must come back unchanged.
  IntMatrix h0{{2, 1, 3, 0, 5},
               {0, 3, 2, 1, 4},
               {0, 0, 4, 3, 2},
               {0, 0, 0, 5, 1},
               {0, 0, 0, 0, 7}};
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    IntMatrix scrambled = test::unimodular_scramble(h0, 30, rng);
    HnfResult res = hnf(scrambled);
    CHECK(res.h == h0);
    CHECK(mul(res.u, scrambled) == res.h);
  }
}

TEST_CASE("hnf reconstruction and shape on random matrices") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = 1 + static_cast<std::size_t>(rng() % 7);
    std::size_t cols = 1 + static_cast<std::size_t>(rng() % 7);
    IntMatrix m = test::random_matrix(rows, cols, 9, rng);
    HnfResult res = hnf(m);
    CHECK(mul(res.u, m) == res.h);
    CHECK(is_unimodular(res.u));
    CHECK(hnf_shape_ok(res));
  }
}

TEST_CASE("serial and parallel kernels are bit-identical") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    IntMatrix m = test::random_matrix(8, 6, 12, rng);
    HnfResult a = hnf(m, Exec::Serial);
    HnfResult b = hnf(m, Exec::Parallel);
    CHECK(a.h == b.h);
    CHECK(a.u == b.u);
    SnfResult sa = snf(m, Exec::Serial);
    SnfResult sb = snf(m, Exec::Parallel);
    CHECK(sa.s == sb.s);
    CHECK(sa.u == sb.u);
    CHECK(sa.v == sb.v);
    CHECK(mul(m, IntMatrix::identity(6), Exec::Serial) ==
          mul(m, IntMatrix::identity(6), Exec::Parallel));
  }
}

TEST_CASE("snf of diag(2,3) is diag(1,6)") {
  SnfResult res = snf(IntMatrix{{2, 0}, {0, 3}});
  CHECK(res.s == IntMatrix{{1, 0}, {0, 6}});
  CHECK(mul(mul(res.u, IntMatrix{{2, 0}, {0, 3}}), res.v) == res.s);
}

TEST_CASE("snf of the zero matrix is zero") {
  IntMatrix z(3, 2);
  SnfResult res = snf(z);
  CHECK(res.s == z);
  CHECK(is_unimodular(res.u));
  CHECK(is_unimodular(res.v));
}

TEST_CASE("snf reconstruction and divisibility chain on random matrices") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t rows = 1 + static_cast<std::size_t>(rng() % 6);
    std::size_t cols = 1 + static_cast<std::size_t>(rng() % 6);
    IntMatrix m = test::random_matrix(rows, cols, 15, rng);
    SnfResult res = snf(m);
    CHECK(mul(mul(res.u, m), res.v) == res.s);
    CHECK(is_unimodular(res.u));
    CHECK(is_unimodular(res.v));
    for (std::size_t i = 0; i < std::min(rows, cols); ++i) {
      CHECK(res.s(i, i) >= 0);
      for (std::size_t j = 0; j < cols; ++j)
        if (j != i) CHECK(res.s(i, j) == 0);
      if (i + 1 < std::min(rows, cols) && res.s(i, i) != 0 &&
          res.s(i + 1, i + 1) != 0) {
        CHECK(res.s(i + 1, i + 1) % res.s(i, i) == 0);
      }
      if (res.s(i, i) == 0 && i + 1 < std::min(rows, cols))
        CHECK(res.s(i + 1, i + 1) == 0);
    }
  }
}

TEST_CASE("kernel of a column of ones") {
  IntMatrix m{{1}, {1}};
  IntMatrix k = kernel_basis(m);
  CHECK(k == IntMatrix{{1, -1}});
}

TEST_CASE("kernel of an invertible matrix is empty") {
  IntMatrix m{{2, 1}, {1, 1}};
  CHECK(kernel_basis(m).rows() == 0);
}

TEST_CASE("kernel rows annihilate, ranks add up, lattice is saturated") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t rows = 2 + static_cast<std::size_t>(rng() % 5);
    std::size_t cols = 1 + static_cast<std::size_t>(rng() % 4);
    IntMatrix m = test::random_matrix(rows, cols, 7, rng);
    IntMatrix k = kernel_basis(m);
    CHECK(k.rows() + rank(m) == rows);
    if (k.rows() > 0) {
      CHECK(mul(k, m).is_zero());
      // Saturation: stacking any integer kernel vector on top of the
      // basis must not create an elementary divisor > 1.
      std::vector<Int> combo(rows);
      for (std::size_t r = 0; r < k.rows(); ++r) {
        Int c = static_cast<int>(rng() % 7) - 3;
        for (std::size_t j = 0; j < rows; ++j) combo[j] += c * k(r, j);
      }
      IntMatrix stacked(k.rows() + 1, rows);
      for (std::size_t r = 0; r < k.rows(); ++r)
        for (std::size_t j = 0; j < rows; ++j) stacked(r, j) = k(r, j);
      for (std::size_t j = 0; j < rows; ++j) stacked(k.rows(), j) = combo[j];
      SnfResult s = snf(stacked);
      for (std::size_t i = 0; i < std::min(stacked.rows(), stacked.cols()); ++i)
        CHECK(s.s(i, i) <= 1);
    }
  }
}

TEST_CASE("solve_in_lattice against the identity basis") {
  IntMatrix id = IntMatrix::identity(3);
  std::vector<Int> target{5, -7, 2};
  auto c = solve_in_lattice(id, target);
  REQUIRE(c.has_value());
  CHECK(*c == target);
}

TEST_CASE("solve_in_lattice detects the parity obstruction") {
  IntMatrix basis{{2, 0}, {0, 2}};
  CHECK_FALSE(solve_in_lattice(basis, {1, 1}).has_value());
  auto c = solve_in_lattice(basis, {4, -6});
  REQUIRE(c.has_value());
  CHECK(*c == std::vector<Int>{2, -3});
}

TEST_CASE("solve_in_lattice round-trips random combinations") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 25; ++trial) {
    IntMatrix basis = test::random_matrix(3, 5, 6, rng);
    if (rank(basis) != 3) continue;
    std::vector<Int> coeff{static_cast<int>(rng() % 9) - 4,
                           static_cast<int>(rng() % 9) - 4,
                           static_cast<int>(rng() % 9) - 4};
    std::vector<Int> target = mul_row(coeff, basis);
    auto c = solve_in_lattice(basis, target);
    REQUIRE(c.has_value());
    CHECK(*c == coeff);
  }
}

TEST_CASE("solve_in_lattice rejects dimension mismatch") {
  IntMatrix basis{{1, 0}, {0, 1}};
  CHECK_THROWS_AS(solve_in_lattice(basis, {1, 2, 3}), std::invalid_argument);
}
