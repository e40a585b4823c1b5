#include "fermat/homology.hpp"

#include <stdexcept>

namespace fermat::homology {

namespace {

int mod_pos(long x, int n) {
  long r = x % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

}  // namespace

GroupRingElement GroupRingElement::monomial(int n, long p, long q) {
  GroupRingElement out(n);
  out.c_.emplace(std::make_pair(mod_pos(p, n), mod_pos(q, n)), 1);
  return out;
}

void GroupRingElement::add_term(long p, long q, const Int& v) {
  if (v == 0) return;
  auto key = std::make_pair(mod_pos(p, n_), mod_pos(q, n_));
  auto it = c_.find(key);
  if (it == c_.end()) {
    c_.emplace(key, v);
  } else {
    it->second += v;
    if (it->second == 0) c_.erase(it);
  }
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
  if (n_ != o.n_) throw std::invalid_argument("group ring: ambient mismatch");
  GroupRingElement out = *this;
  for (const auto& [pq, v] : o.c_) out.add_term(pq.first, pq.second, v);
  return out;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
  return *this + (-o);
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
  if (n_ != o.n_) throw std::invalid_argument("group ring: ambient mismatch");
  GroupRingElement out(n_);
  for (const auto& [pq1, v1] : c_)
    for (const auto& [pq2, v2] : o.c_)
      out.add_term(static_cast<long>(pq1.first) + pq2.first,
                   static_cast<long>(pq1.second) + pq2.second, v1 * v2);
  return out;
}

GroupRingElement GroupRingElement::operator*(const Int& s) const {
  GroupRingElement out(n_);
  if (s == 0) return out;
  for (const auto& [pq, v] : c_) out.add_term(pq.first, pq.second, v * s);
  return out;
}

GroupRingElement GroupRingElement::operator-() const { return *this * Int(-1); }

GroupRingElement power_sum(const GroupRingElement& g, int count) {
  GroupRingElement acc = GroupRingElement::zero(g.n());
  GroupRingElement p = GroupRingElement::one(g.n());
  for (int i = 0; i < count; ++i) {
    acc = acc + p;
    p = p * g;
  }
  return acc;
}

GeometricSymbol gamma_generator(int n) {
  return {GroupRingElement::one(n), GroupRingElement::zero(n)};
}

GeometricSymbol gammabar_generator(int n) {
  return {GroupRingElement::zero(n), GroupRingElement::one(n)};
}

GeometricSymbol apply_ring(const GroupRingElement& r, const GeometricSymbol& g) {
  return {r * g.gamma_part, r * g.gammabar_part};
}

SymbolVector geometric_to_symbols(const GeometricSymbol& g) {
  const int n = g.gamma_part.n();
  SymbolVector out;
  out.n = n;
  // e0 matches A and e1 matches B^-1, hence the sign flip on the
  // B-exponent: e0^p e1^q gamma -> [A^p B^-q] and likewise for
  // gammabar -> [A^p B^-q tau].
  for (const auto& [pq, v] : g.gamma_part.terms())
    out.add({pq.first, mod_pos(-pq.second, n), 0}, v);
  for (const auto& [pq, v] : g.gammabar_part.terms())
    out.add({pq.first, mod_pos(-pq.second, n), 2}, v);
  return out;
}

ReducedCoords geometric_to_coords(const SymbolSpace& space,
                                  const GeometricSymbol& g) {
  return space.reduce(geometric_to_symbols(g));
}

namespace {

psl2::ProjMatrix generator_matrix(Gen gen) {
  const auto& cs = psl2::constants();
  switch (gen) {
    case Gen::E0:
      return cs.A;
    case Gen::E1:
      return psl2::inv(cs.B);
    case Gen::E0E1:
      return psl2::mul(psl2::inv(cs.B), cs.A);
    case Gen::Phi:
      return cs.tau;
  }
  throw std::invalid_argument("generator_matrix: bad generator");
}

}  // namespace

IntMatrix action_on_symbols(const SymbolSpace& space, Gen gen) {
  const psl2::ProjMatrix g = generator_matrix(gen);
  const std::size_t rk = space.rank();
  IntMatrix out(rk, rk);
  for (std::size_t b = 0; b < rk; ++b) {
    psl2::ProjMatrix rep =
        psl2::coset_representative(manin::basis_coset(space.basis()[b]));
    manin::CosetLabel image = psl2::coset_label(psl2::mul(g, rep), space.n());
    ReducedCoords coords = space.reduce(image);
    for (std::size_t r = 0; r < rk; ++r) out(r, b) = coords.v[r];
  }
  return out;
}

ReducedCoords apply_action(const IntMatrix& action, const ReducedCoords& v) {
  ReducedCoords out{v.n, std::vector<Int>(v.v.size())};
  for (std::size_t c = 0; c < action.cols(); ++c) {
    if (v.v[c] == 0) continue;
    for (std::size_t r = 0; r < action.rows(); ++r) {
      if (action(r, c) != 0) out.v[r] += action(r, c) * v.v[c];
    }
  }
  return out;
}

ReducedCoords gamma_cycle(const SymbolSpace& space, long i, long j) {
  const int n = space.n();
  if (i < 1 || i > n - 2 || j < 0 || j > n - 1)
    throw std::out_of_range("gamma_cycle: index out of range");
  SymbolVector sv;
  sv.n = n;
  sv.add({mod_pos(i, n), 0, 2}, 1);
  sv.add({mod_pos(i + 1, n), n - 1, 2}, -1);
  sv.add({mod_pos(i + 1, n), mod_pos(j, n), 2}, 1);
  sv.add({mod_pos(i, n), mod_pos(j + 1, n), 2}, -1);
  return space.reduce(sv);
}

HomologyData homology(const SymbolSpace& space) {
  const int n = space.n();
  HomologyData data;
  data.n = n;
  IntMatrix d = boundary_matrix(space);
  data.kernel = kernel_basis(d);

  const std::size_t hrank = n >= 3 ? static_cast<std::size_t>(n - 1) * (n - 2) : 0;
  if (data.kernel.rows() != hrank)
    throw std::logic_error("homology: kernel rank disagrees with the genus");

  data.s_basis = IntMatrix(hrank, space.rank());
  data.gamma_basis = IntMatrix(hrank, space.rank());
  if (n < 3) return data;

  const GroupRingElement corner =
      (GroupRingElement::one(n) - GroupRingElement::e0(n)) *
      (GroupRingElement::one(n) - GroupRingElement::e1(n));
  std::size_t r = 0;
  for (int i = 1; i <= n - 2; ++i) {
    for (int j = 0; j <= n - 2; ++j, ++r) {
      GroupRingElement coeff = GroupRingElement::monomial(n, i, j) * corner;
      ReducedCoords s =
          geometric_to_coords(space, apply_ring(coeff, gamma_generator(n)));
      data.s_basis.set_row(r, s.v);
      data.gamma_basis.set_row(r, gamma_cycle(space, i, j).v);
    }
  }

  // Both bases must span ker(boundary) with unimodular transitions.
  for (const IntMatrix* basis : {&data.s_basis, &data.gamma_basis}) {
    IntMatrix transition(hrank, hrank);
    for (std::size_t row = 0; row < hrank; ++row) {
      auto c = solve_in_lattice(data.kernel, basis->row(row));
      if (!c) throw std::logic_error("homology: basis row outside ker(boundary)");
      transition.set_row(row, *c);
    }
    if (!is_unimodular(transition))
      throw std::logic_error("homology: change of basis is not unimodular");
  }
  return data;
}

IntMatrix action_on_homology(const SymbolSpace& space, const HomologyData& data,
                             Gen gen) {
  const std::size_t hrank = data.s_basis.rows();
  IntMatrix out(hrank, hrank);
  if (hrank == 0) return out;
  IntMatrix symbol_action = action_on_symbols(space, gen);
  for (std::size_t b = 0; b < hrank; ++b) {
    ReducedCoords v{data.n, data.s_basis.row(b)};
    ReducedCoords image = apply_action(symbol_action, v);
    auto c = solve_in_lattice(data.s_basis, image.v);
    if (!c)
      throw std::logic_error("action_on_homology: image escapes the s-basis");
    for (std::size_t r = 0; r < hrank; ++r) out(r, b) = (*c)[r];
  }
  return out;
}

namespace {

// Dense coefficient grid over the n x n monomials e0^p e1^q.
struct Grid {
  int n;
  std::vector<Int> c;
  explicit Grid(int n_) : n(n_), c(static_cast<std::size_t>(n_) * n_) {}
  Int& at(int p, int q) { return c[static_cast<std::size_t>(p) * n + q]; }
};

// Applies the two telescoping annihilators: e0^(n-1) terms rewrite to
// minus the lower e0 powers, then e1^(n-1) terms likewise. Afterwards
// the support lies in [0, n-2] x [0, n-2].
void reduce_exponents(Grid& g) {
  const int n = g.n;
  for (int q = 0; q < n; ++q) {
    Int v = g.at(n - 1, q);
    if (v == 0) continue;
    g.at(n - 1, q) = 0;
    for (int i = 0; i <= n - 2; ++i) g.at(i, q) -= v;
  }
  for (int p = 0; p <= n - 2; ++p) {
    Int v = g.at(p, n - 1);
    if (v == 0) continue;
    g.at(p, n - 1) = 0;
    for (int j = 0; j <= n - 2; ++j) g.at(p, j) -= v;
  }
}

}  // namespace

std::pair<IntMatrix, IntMatrix> closed_form_action(int n) {
  if (n < 3) throw std::invalid_argument("closed_form_action: n must be >= 3");
  const std::size_t hrank = static_cast<std::size_t>(n - 1) * (n - 2);
  auto bidx = [n](int a, int b) {
    return static_cast<std::size_t>(a - 1) * (n - 1) + b;
  };

  // The diagonal annihilator e0^j (1 + e0e1 + ... + (e0e1)^(n-1)) s = 0
  // for j = 0..n-2, reduced by the telescoping rules, pins down the
  // e0^0-column monomials in terms of the basis monomials.
  IntMatrix sys(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1));
  IntMatrix rhs(static_cast<std::size_t>(n - 1), hrank);
  for (int j = 0; j <= n - 2; ++j) {
    Grid g(n);
    for (int i = 0; i < n; ++i) g.at(mod_pos(i + j, n), i) += 1;
    reduce_exponents(g);
    for (int b = 0; b <= n - 2; ++b) sys(j, b) = g.at(0, b);
    for (int a = 1; a <= n - 2; ++a)
      for (int b = 0; b <= n - 2; ++b) rhs(j, bidx(a, b)) = -g.at(a, b);
  }
  IntMatrix sys_t = sys.transposed();
  if (rank(sys_t, Exec::Serial) != static_cast<std::size_t>(n - 1))
    throw std::logic_error("closed_form_action: singular system");

  // zero_col(b) = coordinates of the monomial e1^b over the basis.
  IntMatrix zero_col(static_cast<std::size_t>(n - 1), hrank);
  for (std::size_t m = 0; m < hrank; ++m) {
    std::vector<Int> target(static_cast<std::size_t>(n - 1));
    for (int j = 0; j <= n - 2; ++j) target[j] = rhs(j, m);
    auto c = solve_in_lattice(sys_t, target);
    if (!c) throw std::logic_error("closed_form_action: inconsistent system");
    for (int b = 0; b <= n - 2; ++b) zero_col(b, m) = (*c)[b];
  }

  auto reduce_monomial = [&](int p, int q) {
    Grid g(n);
    g.at(p, q) = 1;
    reduce_exponents(g);
    std::vector<Int> out(hrank);
    for (int a = 1; a <= n - 2; ++a)
      for (int b = 0; b <= n - 2; ++b) out[bidx(a, b)] = g.at(a, b);
    for (int b = 0; b <= n - 2; ++b) {
      const Int& v = g.at(0, b);
      if (v == 0) continue;
      for (std::size_t m = 0; m < hrank; ++m) {
        if (zero_col(b, m) != 0) out[m] += v * zero_col(b, m);
      }
    }
    return out;
  };

  IntMatrix e0(hrank, hrank), e1(hrank, hrank);
  for (int a = 1; a <= n - 2; ++a) {
    for (int b = 0; b <= n - 2; ++b) {
      std::vector<Int> img0 = reduce_monomial(mod_pos(a + 1, n), b);
      std::vector<Int> img1 = reduce_monomial(a, mod_pos(b + 1, n));
      for (std::size_t r = 0; r < hrank; ++r) {
        e0(r, bidx(a, b)) = img0[r];
        e1(r, bidx(a, b)) = img1[r];
      }
    }
  }
  return {e0, e1};
}

IntMatrix lim_basis(const SymbolSpace& space) {
  const int n = space.n();
  if (n < 3) return IntMatrix(0, space.rank());
  GroupRingElement g = GroupRingElement::zero(n);
  if (n % 2 == 1) {
    g = GroupRingElement::monomial(n, (n - 1) / 2, (n - 1) / 2) *
        ((GroupRingElement::one(n) - GroupRingElement::e0(n)) *
         (GroupRingElement::one(n) - GroupRingElement::e1(n)));
  } else {
    g = (GroupRingElement::one(n) - GroupRingElement::monomial(n, n - 1, 0)) *
        (GroupRingElement::one(n) - GroupRingElement::monomial(n, 0, n - 1));
  }
  IntMatrix out(static_cast<std::size_t>(n - 1) * (n - 2), space.rank());
  std::size_t r = 0;
  for (int i = 0; i <= n - 2; ++i) {
    for (int j = 0; j <= n - 3; ++j, ++r) {
      GroupRingElement coeff = GroupRingElement::monomial(n, i, j) * g;
      out.set_row(r, geometric_to_coords(
                         space, apply_ring(coeff, gamma_generator(n)))
                         .v);
    }
  }
  return out;
}

AnnihilatorReport annihilator_check(const SymbolSpace& space,
                                    const HomologyData& data) {
  const int n = space.n();
  AnnihilatorReport report;
  auto sum_is_zero = [&](Gen gen) {
    IntMatrix m = action_on_homology(space, data, gen);
    IntMatrix acc(m.rows(), m.cols());
    IntMatrix p = IntMatrix::identity(m.rows());
    for (int i = 0; i < n; ++i) {
      acc = add(acc, p);
      p = mul(p, m);
    }
    return acc.is_zero();
  };
  report.e0_power_sum_zero = sum_is_zero(Gen::E0);
  report.e1_power_sum_zero = sum_is_zero(Gen::E1);
  report.e0e1_power_sum_zero = sum_is_zero(Gen::E0E1);
  return report;
}

}  // namespace fermat::homology
