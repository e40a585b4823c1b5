#pragma once

#include "fermat/int_matrix.hpp"

#include <array>
#include <compare>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace fermat::psl2 {

struct NotInGamma2 : std::invalid_argument {
  NotInGamma2() : std::invalid_argument("matrix is not in Gamma(2)") {}
};

// Element of PSL2(Z): integer 2x2 matrix of determinant one, with the
// sign fixed so the first nonzero entry of (a, b, c, d) is positive.
// That kills the M / -M ambiguity once and for all.
class ProjMatrix {
public:
  ProjMatrix() : a_(1), b_(0), c_(0), d_(1) {}
  ProjMatrix(Int a, Int b, Int c, Int d);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Int& d() const { return d_; }

  bool is_identity() const {
    return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1;
  }

  auto tie() const { return std::tie(a_, b_, c_, d_); }
  bool operator==(const ProjMatrix& o) const { return tie() == o.tie(); }
  bool operator<(const ProjMatrix& o) const { return tie() < o.tie(); }

private:
  Int a_, b_, c_, d_;
};

ProjMatrix mul(const ProjMatrix& x, const ProjMatrix& y);
ProjMatrix inv(const ProjMatrix& x);
ProjMatrix pow(const ProjMatrix& x, long e);

// The fixed matrices everything else is built from: the Gamma(2)
// generators A, B, the Manin relation matrices sigma, tau, J, and the
// six coset representatives alpha_0..alpha_5 of Gamma(2) in PSL2(Z).
struct Constants {
  ProjMatrix A, B, sigma, tau, J;
  std::array<ProjMatrix, 6> alpha;
};
const Constants& constants();

enum class Gamma2Gen { A, B };

struct Gamma2Letter {
  Gamma2Gen gen;
  Int exp;  // nonzero
  bool operator==(const Gamma2Letter&) const = default;
};

// Reduced word in the free generators A, B of Gamma(2): adjacent
// letters differ and exponents are nonzero.
using Gamma2Word = std::vector<Gamma2Letter>;

// True iff the mod-2 reduction of m is the identity of SL2(Z/2).
bool gamma2_membership(const ProjMatrix& m);

// Decomposes m in the free group <A, B>; throws NotInGamma2 otherwise.
// evaluate(gamma2_word(m)) == m.
Gamma2Word gamma2_word(const ProjMatrix& m);
ProjMatrix evaluate(const Gamma2Word& word);

// Exponent sums (sum of A-exponents, sum of B-exponents); well-defined
// because Gamma(2) is free on A and B in PSL2(Z).
std::pair<Int, Int> abelianization(const ProjMatrix& m);

// Phi(n) = <A^n, B^n, commutator subgroup of Gamma(2)>.
bool phi_membership(const ProjMatrix& m, int n);

// Name of the right coset Phi(n) * A^i B^j alpha_k.
struct CosetLabel {
  int i = 0;
  int j = 0;
  int k = 0;
  auto operator<=>(const CosetLabel&) const = default;
};

CosetLabel coset_label(const ProjMatrix& m, int n);
ProjMatrix coset_representative(const CosetLabel& label);

// Point of P^1(Q) as a reduced fraction p/q; infinity is 1/0.
struct Cusp {
  Int p, q;
  bool operator==(const Cusp&) const = default;
};

Cusp make_cusp(Int p, Int q);
inline Cusp cusp_zero() { return {0, 1}; }
inline Cusp cusp_one() { return {1, 1}; }
inline Cusp cusp_infinity() { return {1, 0}; }

// Exact fractional-linear action on P^1(Q).
Cusp apply(const ProjMatrix& m, const Cusp& c);

}  // namespace fermat::psl2
