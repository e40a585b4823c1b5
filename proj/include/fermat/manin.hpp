#pragma once

#include "fermat/int_matrix.hpp"
#include "fermat/psl2.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fermat::manin {

using psl2::CosetLabel;

// Integer combination of Manin symbols over the 6n^2 cosets of Phi(n).
struct SymbolVector {
  int n = 0;
  std::map<CosetLabel, Int> coeffs;  // no zero coefficients stored

  void add(const CosetLabel& c, const Int& v);
};

// Coordinates in the canonical free basis of rank n^2 + 1:
//   y[i,j] for 1 <= i <= n-1, 0 <= j <= n-1   (i outer, j inner)
//   x[n-1,j] for 0 <= j <= n-1
//   y[0,n-1]
struct ReducedCoords {
  int n = 0;
  std::vector<Int> v;  // length n^2 + 1

  bool is_zero() const;
  bool operator==(const ReducedCoords&) const = default;
};

ReducedCoords add(const ReducedCoords& a, const ReducedCoords& b);
ReducedCoords sub(const ReducedCoords& a, const ReducedCoords& b);

struct BasisLabel {
  char kind;  // 'x' or 'y'
  int i, j;
  auto operator<=>(const BasisLabel&) const = default;
};

std::vector<BasisLabel> basis_labels(int n);
CosetLabel basis_coset(const BasisLabel& b);  // x -> alpha_0, y -> alpha_2
std::string to_string(const BasisLabel& b);

// All 6n^2 coset labels, k outer, then i, then j.
std::vector<CosetLabel> enumerate_cosets(int n);
std::size_t coset_index(const CosetLabel& c, int n);

// Labels of (A^i B^j alpha_k) sigma and (A^i B^j alpha_k) tau, via the
// closed-form right-multiplication tables.
std::pair<CosetLabel, CosetLabel> sigma_tau_images(const CosetLabel& c, int n);

// The sigma rows [a] + [a sigma] followed by the tau rows
// [a] + [a tau] + [a tau^2], one per coset: 12n^2 x 6n^2.
IntMatrix relation_matrix(int n);

// The Manin symbol space for Phi(n), presented on the canonical free
// basis. Immutable after construction; safe to share across threads.
class SymbolSpace {
public:
  explicit SymbolSpace(int n, Exec exec = Exec::Parallel);

  int n() const { return n_; }
  std::size_t rank() const { return basis_.size(); }  // n^2 + 1

  const std::vector<CosetLabel>& cosets() const { return cosets_; }
  const std::vector<BasisLabel>& basis() const { return basis_; }

  // 6n^2 x (n^2+1); row c = coordinates of coset c in the free basis.
  const IntMatrix& reduction() const { return reduction_; }

  ReducedCoords reduce(const CosetLabel& c) const;
  ReducedCoords reduce(const SymbolVector& v) const;
  ReducedCoords zero() const;
  ReducedCoords unit(std::size_t basis_pos) const;

private:
  int n_;
  std::vector<CosetLabel> cosets_;
  std::vector<BasisLabel> basis_;
  IntMatrix reduction_;
};

enum class CuspBase { Zero, One, Infinity };

// Cusp of X_Phi(n): the cusp of X(2) below it plus an index mod n.
struct CuspClass {
  CuspBase base;
  int index;
  auto operator<=>(const CuspClass&) const = default;
};

std::string to_string(const CuspClass& c);

struct CuspDivisor {
  int n = 0;
  std::map<CuspClass, Int> coeffs;

  void add(const CuspClass& c, const Int& v);
  bool is_zero() const { return coeffs.empty(); }
  bool operator==(const CuspDivisor&) const = default;
};

// The 3n cusp classes, bases in order (zero, one, infinity), index inner.
std::vector<CuspClass> cusp_set(int n);
std::size_t cusp_class_index(const CuspClass& c, int n);

// Class of A^i B^j . (base point): B stabilizes 0, A stabilizes
// infinity, and A^k.1 ~ B^k.1 collapses the diagonal for base 1.
CuspClass cusp_class(long i, long j, CuspBase base, int n);

// Class of an arbitrary point of P^1(Q), via the coset label of a
// matrix carrying infinity to it. Agrees with cusp_class on all
// A^i B^j . {0, 1, infinity}.
CuspClass classify_cusp(const psl2::Cusp& c, int n);

// Boundary (a) -> class(a.infinity) - class(a.0), extended linearly.
// Endpoints are computed by exact fractional-linear action.
CuspDivisor boundary(const SymbolVector& v);
CuspDivisor boundary(const SymbolSpace& space, const ReducedCoords& v);

// (n^2+1) x 3n matrix of the boundary on the free basis; apply to row
// vectors from the left.
IntMatrix boundary_matrix(const SymbolSpace& space);

}  // namespace fermat::manin
