#pragma once

#include "fermat/int_matrix.hpp"
#include "fermat/manin.hpp"

#include <map>
#include <utility>

namespace fermat::homology {

using manin::ReducedCoords;
using manin::SymbolSpace;
using manin::SymbolVector;

// Element of Z[mu_n x mu_n]: integer combination of e0^p e1^q with
// exponents mod n.
class GroupRingElement {
public:
  explicit GroupRingElement(int n) : n_(n) {}

  static GroupRingElement zero(int n) { return GroupRingElement(n); }
  static GroupRingElement one(int n) { return monomial(n, 0, 0); }
  static GroupRingElement monomial(int n, long p, long q);
  static GroupRingElement e0(int n) { return monomial(n, 1, 0); }
  static GroupRingElement e1(int n) { return monomial(n, 0, 1); }

  int n() const { return n_; }
  const std::map<std::pair<int, int>, Int>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  void add_term(long p, long q, const Int& v);

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement operator*(const Int& s) const;
  GroupRingElement operator-() const;
  bool operator==(const GroupRingElement&) const = default;

private:
  int n_;
  std::map<std::pair<int, int>, Int> c_;  // no zero coefficients stored
};

// Sum of the first `count` powers of g: 1 + g + ... + g^(count-1).
GroupRingElement power_sum(const GroupRingElement& g, int count);

// Element of the relative homology as a Z[mu_n x mu_n]-combination of
// the generating paths gamma and gammabar.
struct GeometricSymbol {
  GroupRingElement gamma_part;
  GroupRingElement gammabar_part;
};

GeometricSymbol gamma_generator(int n);      // gamma
GeometricSymbol gammabar_generator(int n);   // gammabar
GeometricSymbol apply_ring(const GroupRingElement& r, const GeometricSymbol& g);

// Dictionary: e0^p e1^q gamma -> x[p, -q], e0^p e1^q gammabar -> y[p, -q],
// extended linearly, then reduced onto the free basis.
SymbolVector geometric_to_symbols(const GeometricSymbol& g);
ReducedCoords geometric_to_coords(const SymbolSpace& space, const GeometricSymbol& g);

enum class Gen { E0, E1, E0E1, Phi };

// Action on the symbol space by left multiplication (A for e0, B^-1
// for e1, B^-1 A for e0e1, tau for phi), reduced onto the free basis.
// (n^2+1) x (n^2+1), columns are images.
IntMatrix action_on_symbols(const SymbolSpace& space, Gen gen);

// Applies a columns-are-images action matrix to a coordinate row.
ReducedCoords apply_action(const IntMatrix& action, const ReducedCoords& v);

// gamma_{i,j} = y[i,0] - y[i+1,n-1] + y[i+1,j] - y[i,j+1], reduced.
// Requires 1 <= i <= n-2 and 0 <= j <= n-1; j = n-1 gives zero.
ReducedCoords gamma_cycle(const SymbolSpace& space, long i, long j);

struct HomologyData {
  int n = 0;
  IntMatrix kernel;       // rows: Z-basis of ker(boundary)
  IntMatrix s_basis;      // rows: s_{i,j} = e0^i e1^j (1-e0)(1-e1) gamma
  IntMatrix gamma_basis;  // rows: gamma_{i,j}
  // Index ranges for both bases: i = 1..n-2 outer, j = 0..n-2 inner.
};

// Computes the homology bases and checks they all span ker(boundary)
// with unimodular changes of basis. For n <= 2 everything is empty.
HomologyData homology(const SymbolSpace& space);

// Action in the s-basis, (n-1)(n-2) square, columns are images.
IntMatrix action_on_homology(const SymbolSpace& space, const HomologyData& data,
                             Gen gen);

// The same e0/e1 matrices derived purely inside the group ring from the
// annihilator relations, no symbol-space solve. Must agree with
// action_on_homology exactly.
std::pair<IntMatrix, IntMatrix> closed_form_action(int n);

// Rows: e0^i e1^j g for i = 0..n-2, j = 0..n-3, where g is the
// generator e0^((n-1)/2) e1^((n-1)/2) (1-e0)(1-e1) gamma for odd n and
// (1-e0^(n-1))(1-e1^(n-1)) gamma for even n.
IntMatrix lim_basis(const SymbolSpace& space);

struct AnnihilatorReport {
  bool e0_power_sum_zero = false;
  bool e1_power_sum_zero = false;
  bool e0e1_power_sum_zero = false;
  bool all() const {
    return e0_power_sum_zero && e1_power_sum_zero && e0e1_power_sum_zero;
  }
};

// Verifies that 1 + g + ... + g^(n-1) acts as zero on homology for
// g in {e0, e1, e0e1}.
AnnihilatorReport annihilator_check(const SymbolSpace& space,
                                    const HomologyData& data);

}  // namespace fermat::homology
