#include "fermat/manin.hpp"

#include "paper_reduction.hpp"

#include <doctest.h>

using namespace fermat;
using namespace fermat::manin;

TEST_CASE("coset enumeration sizes and order") {
  CHECK(enumerate_cosets(1).size() == 6);
  CHECK(enumerate_cosets(2).size() == 24);
  CHECK(enumerate_cosets(3).size() == 54);
  auto labels = enumerate_cosets(3);
  for (std::size_t a = 0; a < labels.size(); ++a)
    CHECK(coset_index(labels[a], 3) == a);
  CHECK(labels[0] == CosetLabel{0, 0, 0});  // k outer, then i, then j
  CHECK(labels[1] == CosetLabel{0, 1, 0});
  CHECK(labels[9] == CosetLabel{0, 0, 1});
}

TEST_CASE("closed-form sigma and tau images") {
  const int n = 5;
  CHECK(sigma_tau_images({2, 3, 1}, n).first == CosetLabel{1, 3, 4});
  CHECK(sigma_tau_images({2, 3, 0}, n).second == CosetLabel{2, 3, 2});
  CHECK(sigma_tau_images({2, 3, 4}, n).second == CosetLabel{3, 2, 5});
  // Wrap-around.
  CHECK(sigma_tau_images({0, 0, 1}, n).first == CosetLabel{n - 1, 0, 4});

  // Against the generic matrix route, all cosets, two levels.
  const auto& cs = psl2::constants();
  for (int m : {1, 4}) {
    for (const auto& lab : enumerate_cosets(m)) {
      psl2::ProjMatrix rep = psl2::coset_representative(lab);
      auto [ls, lt] = sigma_tau_images(lab, m);
      CHECK(psl2::coset_label(psl2::mul(rep, cs.sigma), m) == ls);
      CHECK(psl2::coset_label(psl2::mul(rep, cs.tau), m) == lt);
    }
  }
}

TEST_CASE("relation matrix shape and row supports") {
  const int n = 3;
  IntMatrix rel = relation_matrix(n);
  REQUIRE(rel.rows() == 12 * 9);
  REQUIRE(rel.cols() == 6 * 9);
  const std::size_t m = 6 * 9;
  for (std::size_t r = 0; r < rel.rows(); ++r) {
    std::size_t support = 0;
    bool all_ones = true;
    for (std::size_t c = 0; c < rel.cols(); ++c) {
      if (rel(r, c) != 0) {
        ++support;
        all_ones = all_ones && rel(r, c) == 1;
      }
    }
    CHECK(all_ones);  // a sigma- or tau-fixed coset would make a 2 here
    CHECK(support == (r < m ? 2 : 3));
  }
}

TEST_CASE("Phi(3) relation lattice: 44 unit divisors, 10 zeros") {
  SnfResult res = snf(relation_matrix(3));
  int ones = 0, zeros = 0;
  for (std::size_t i = 0; i < res.s.cols(); ++i) {
    if (res.s(i, i) == 1) ++ones;
    if (res.s(i, i) == 0) ++zeros;
    CHECK(res.s(i, i) <= 1);
  }
  CHECK(ones == 44);
  CHECK(zeros == 10);
}

TEST_CASE("symbol space has rank n^2+1") {
  for (int n = 1; n <= 6; ++n) {
    SymbolSpace space(n);
    CHECK(space.rank() == static_cast<std::size_t>(n) * n + 1);
  }
}

TEST_CASE("basis elements reduce to unit vectors") {
  SymbolSpace space(3);
  // y[1,0] is the first basis element.
  ReducedCoords c = space.reduce(CosetLabel{1, 0, 2});
  CHECK(c == space.unit(0));
}

TEST_CASE("alpha_5 cosets reduce to -y[i,j]") {
  for (int n : {2, 3, 4}) {
    SymbolSpace space(n);
    for (int i = 1; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        ReducedCoords c = space.reduce(CosetLabel{i, j, 5});
        ReducedCoords expect = space.zero();
        expect.v[static_cast<std::size_t>(i - 1) * n + j] = -1;
        CHECK(c == expect);
      }
    }
  }
}

TEST_CASE("x[0,0] reduction chain for n = 2") {
  SymbolSpace space(2);
  // x[0,0] = x[1,0] + y[1,0] - y[0,1] after eliminating y[0,0].
  ReducedCoords c = space.reduce(CosetLabel{0, 0, 0});
  ReducedCoords expect = space.zero();
  // Basis order for n=2: y[1,0], y[1,1], x[1,0], x[1,1], y[0,1].
  expect.v[0] = 1;
  expect.v[2] = 1;
  expect.v[4] = -1;
  CHECK(c == expect);

  // The difference e_c - expansion lies in the relation lattice.
  IntMatrix rel_lattice = hnf_basis(relation_matrix(2));
  std::vector<Int> diff(24);
  diff[coset_index({0, 0, 0}, 2)] = 1;
  for (std::size_t b = 0; b < space.rank(); ++b)
    diff[coset_index(basis_coset(space.basis()[b]), 2)] -= c.v[b];
  CHECK(solve_in_lattice(rel_lattice, diff).has_value());
}

TEST_CASE("reduction map kills every relation row") {
  for (int n = 1; n <= 5; ++n) {
    SymbolSpace space(n);
    CHECK(mul(relation_matrix(n), space.reduction()).is_zero());
  }
}

TEST_CASE("reduction agrees with the replayed elimination from first principles") {
  for (int n = 1; n <= 6; ++n) {
    SymbolSpace space(n);
    test::PaperReduction oracle(n);
    for (const auto& lab : space.cosets()) {
      CHECK(space.reduce(lab).v == oracle.reduce(lab));
    }
  }
}

TEST_CASE("the x,y relation holds in reduced coordinates") {
  for (int n : {2, 3, 5}) {
    SymbolSpace space(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        SymbolVector lhs;
        lhs.n = n;
        lhs.add({i, j, 0}, 1);
        lhs.add({i, j, 2}, 1);
        lhs.add({(i + 1) % n, j, 0}, -1);
        lhs.add({(i + 1) % n, (j + n - 1) % n, 2}, -1);
        CHECK(space.reduce(lhs).is_zero());
      }
    }
  }
}

TEST_CASE("cusp classes for the standard bases") {
  const int n = 5;
  CHECK(cusp_class(2, 4, CuspBase::Zero, n) == CuspClass{CuspBase::Zero, 2});
  CHECK(cusp_class(2, 4, CuspBase::Infinity, n) ==
        CuspClass{CuspBase::Infinity, 4});
  CHECK(cusp_class(2, 4, CuspBase::One, n) == CuspClass{CuspBase::One, 1});
  for (int k = 0; k < n; ++k) {
    CHECK(cusp_class(k, 0, CuspBase::One, n) ==
          cusp_class(0, k, CuspBase::One, n));
  }
}

TEST_CASE("general cusp classification") {
  const int n = 3;
  CHECK(classify_cusp(psl2::cusp_zero(), n) == CuspClass{CuspBase::Zero, 0});
  CHECK(classify_cusp(psl2::cusp_infinity(), n) ==
        CuspClass{CuspBase::Infinity, 0});
  // A.1 = 3 lands in the class of A.1, forced to (one, 1).
  CHECK(classify_cusp(psl2::make_cusp(3, 1), n) == CuspClass{CuspBase::One, 1});

  // Agreement with cusp_class on all A^i B^j endpoints.
  const auto& cs = psl2::constants();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      psl2::ProjMatrix m = psl2::mul(psl2::pow(cs.A, i), psl2::pow(cs.B, j));
      CHECK(classify_cusp(psl2::apply(m, psl2::cusp_zero()), n) ==
            cusp_class(i, j, CuspBase::Zero, n));
      CHECK(classify_cusp(psl2::apply(m, psl2::cusp_one()), n) ==
            cusp_class(i, j, CuspBase::One, n));
      CHECK(classify_cusp(psl2::apply(m, psl2::cusp_infinity()), n) ==
            cusp_class(i, j, CuspBase::Infinity, n));
    }
  }
}

TEST_CASE("boundary of generators") {
  const int n = 4;
  SymbolVector x00;
  x00.n = n;
  x00.add({0, 0, 0}, 1);
  CuspDivisor d = boundary(x00);
  CuspDivisor expect;
  expect.n = n;
  expect.add({CuspBase::Infinity, 0}, 1);
  expect.add({CuspBase::Zero, 0}, -1);
  CHECK(d == expect);

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      SymbolVector y;
      y.n = n;
      y.add({i, j, 2}, 1);
      CuspDivisor dy = boundary(y);
      CuspDivisor ey;
      ey.n = n;
      ey.add({CuspBase::Zero, i}, 1);
      ey.add({CuspBase::One, (i + j) % n}, -1);
      CHECK(dy == ey);
    }
  }
}

TEST_CASE("cusp counts and boundary ranks") {
  CHECK(cusp_set(1).size() == 3);
  CHECK(cusp_set(3).size() == 9);
  SymbolSpace space(3);
  IntMatrix d = boundary_matrix(space);
  CHECK(rank(d) == 8);                      // 3n - 1
  CHECK(kernel_basis(d).rows() == 2);       // (n-1)(n-2)
}

TEST_CASE("boundary vanishes on relation rows") {
  const int n = 3;
  for (const auto& lab : enumerate_cosets(n)) {
    auto [ls, lt] = sigma_tau_images(lab, n);
    auto [lts, ltt] = sigma_tau_images(lt, n);
    SymbolVector sigma_row, tau_row;
    sigma_row.n = tau_row.n = n;
    sigma_row.add(lab, 1);
    sigma_row.add(ls, 1);
    tau_row.add(lab, 1);
    tau_row.add(lt, 1);
    tau_row.add(ltt, 1);
    CHECK(boundary(sigma_row).is_zero());
    CHECK(boundary(tau_row).is_zero());
  }
}
