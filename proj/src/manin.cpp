#include "fermat/manin.hpp"

#include <algorithm>
#include <stdexcept>

namespace fermat::manin {

namespace {

int mod_pos(long x, int n) {
  long r = x % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

CosetLabel normalized(int i, int j, int k, int n) {
  return {mod_pos(i, n), mod_pos(j, n), k};
}

// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
std::tuple<Int, Int, Int> xgcd(Int a, Int b) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    a -= q * b;
    std::swap(a, b);
    x0 -= q * x1;
    std::swap(x0, x1);
    y0 -= q * y1;
    std::swap(y0, y1);
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  return {a, x0, y0};
}

}  // namespace

void SymbolVector::add(const CosetLabel& c, const Int& v) {
  if (v == 0) return;
  auto it = coeffs.find(c);
  if (it == coeffs.end()) {
    coeffs.emplace(c, v);
  } else {
    it->second += v;
    if (it->second == 0) coeffs.erase(it);
  }
}

bool ReducedCoords::is_zero() const {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

ReducedCoords add(const ReducedCoords& a, const ReducedCoords& b) {
  if (a.n != b.n) throw std::invalid_argument("add: ambient mismatch");
  ReducedCoords out = a;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += b.v[i];
  return out;
}

ReducedCoords sub(const ReducedCoords& a, const ReducedCoords& b) {
  if (a.n != b.n) throw std::invalid_argument("sub: ambient mismatch");
  ReducedCoords out = a;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] -= b.v[i];
  return out;
}

std::vector<BasisLabel> basis_labels(int n) {
  std::vector<BasisLabel> out;
  out.reserve(static_cast<std::size_t>(n) * n + 1);
  for (int i = 1; i <= n - 1; ++i)
    for (int j = 0; j <= n - 1; ++j) out.push_back({'y', i, j});
  for (int j = 0; j <= n - 1; ++j) out.push_back({'x', n - 1, j});
  out.push_back({'y', 0, n - 1});
  return out;
}

CosetLabel basis_coset(const BasisLabel& b) {
  // x[i,j] = [A^i B^j], y[i,j] = [A^i B^j tau] and tau = alpha_2.
  return {b.i, b.j, b.kind == 'x' ? 0 : 2};
}

std::string to_string(const BasisLabel& b) {
  return std::string(1, b.kind) + "[" + std::to_string(b.i) + "," +
         std::to_string(b.j) + "]";
}

std::vector<CosetLabel> enumerate_cosets(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_cosets: n must be positive");
  std::vector<CosetLabel> out;
  out.reserve(6 * static_cast<std::size_t>(n) * n);
  for (int k = 0; k < 6; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.push_back({i, j, k});
  return out;
}

std::size_t coset_index(const CosetLabel& c, int n) {
  return (static_cast<std::size_t>(c.k) * n + c.i) * n + c.j;
}

std::pair<CosetLabel, CosetLabel> sigma_tau_images(const CosetLabel& c, int n) {
  const int i = c.i, j = c.j;
  CosetLabel s, t;
  switch (c.k) {
    // alpha_0 sigma = alpha_3            alpha_0 tau = alpha_2
    // alpha_1 sigma = A^-1 J alpha_4     alpha_1 tau = A^-1
    // alpha_2 sigma = alpha_5            alpha_2 tau = A alpha_1
    // alpha_3 sigma = J                  alpha_3 tau = A^-1 alpha_4
    // alpha_4 sigma = A alpha_1          alpha_4 tau = A B^-1 alpha_5 J
    // alpha_5 sigma = J alpha_2          alpha_5 tau = B alpha_3 J
    case 0:
      s = normalized(i, j, 3, n);
      t = normalized(i, j, 2, n);
      break;
    case 1:
      s = normalized(i - 1, j, 4, n);
      t = normalized(i - 1, j, 0, n);
      break;
    case 2:
      s = normalized(i, j, 5, n);
      t = normalized(i + 1, j, 1, n);
      break;
    case 3:
      s = normalized(i, j, 0, n);
      t = normalized(i - 1, j, 4, n);
      break;
    case 4:
      s = normalized(i + 1, j, 1, n);
      t = normalized(i + 1, j - 1, 5, n);
      break;
    case 5:
      s = normalized(i, j, 2, n);
      t = normalized(i, j + 1, 3, n);
      break;
    default:
      throw std::invalid_argument("sigma_tau_images: bad k");
  }
  return {s, t};
}

IntMatrix relation_matrix(int n) {
  auto labels = enumerate_cosets(n);
  const std::size_t m = labels.size();  // 6n^2
  IntMatrix rel(2 * m, m);
  for (std::size_t a = 0; a < m; ++a) {
    auto [as, at] = sigma_tau_images(labels[a], n);
    rel(a, a) += 1;
    rel(a, coset_index(as, n)) += 1;
    auto [ats, att] = sigma_tau_images(at, n);
    rel(m + a, a) += 1;
    rel(m + a, coset_index(at, n)) += 1;
    rel(m + a, coset_index(att, n)) += 1;
  }
  return rel;
}

SymbolSpace::SymbolSpace(int n, Exec exec) : n_(n) {
  if (n < 1) throw std::invalid_argument("SymbolSpace: n must be positive");
  cosets_ = enumerate_cosets(n);
  basis_ = basis_labels(n);
  const std::size_t ncosets = cosets_.size();       // 6n^2
  const std::size_t nbasis = basis_.size();         // n^2+1
  const std::size_t nfree = ncosets - nbasis;       // 5n^2-1

  // Column order: non-basis cosets first (enumeration order), then the
  // basis cosets in canonical basis order. With that ordering the HNF
  // pivots must land exactly on the non-basis columns, all equal to 1,
  // or the quotient would not be free of rank n^2+1.
  std::vector<long> basis_pos(ncosets, -1);
  for (std::size_t b = 0; b < nbasis; ++b)
    basis_pos[coset_index(basis_coset(basis_[b]), n)] = static_cast<long>(b);
  std::vector<std::size_t> pcol(ncosets);
  std::size_t next = 0;
  for (std::size_t c = 0; c < ncosets; ++c) {
    if (basis_pos[c] < 0) pcol[c] = next++;
  }
  for (std::size_t c = 0; c < ncosets; ++c) {
    if (basis_pos[c] >= 0) pcol[c] = nfree + static_cast<std::size_t>(basis_pos[c]);
  }

  // Assemble the relation rows, skipping duplicates: each sigma orbit
  // {a, as} contributes one row, each tau orbit {a, at, att} one row.
  std::vector<std::array<std::size_t, 3>> rows;
  rows.reserve(5 * static_cast<std::size_t>(n) * n);
  for (std::size_t a = 0; a < ncosets; ++a) {
    auto [as, at] = sigma_tau_images(cosets_[a], n);
    std::size_t ia = a;
    std::size_t is = coset_index(as, n);
    if (is == ia)
      throw std::logic_error("SymbolSpace: sigma-fixed coset encountered");
    if (ia < is) rows.push_back({ia, is, ia});  // third slot unused marker
    auto [ats, att] = sigma_tau_images(at, n);
    std::size_t it = coset_index(at, n);
    std::size_t itt = coset_index(att, n);
    if (it == ia || itt == ia || it == itt)
      throw std::logic_error("SymbolSpace: tau-fixed coset encountered");
    if (ia < it && ia < itt) rows.push_back({ia, it, itt});
  }

  IntMatrix work(rows.size(), ncosets);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& e = rows[r];
    if (e[2] == e[0]) {  // sigma row
      work(r, pcol[e[0]]) += 1;
      work(r, pcol[e[1]]) += 1;
    } else {
      work(r, pcol[e[0]]) += 1;
      work(r, pcol[e[1]]) += 1;
      work(r, pcol[e[2]]) += 1;
    }
  }

  IntMatrix h = hnf_basis(work, exec);
  if (h.rows() != nfree)
    throw std::logic_error("SymbolSpace: relation lattice has unexpected rank");
  for (std::size_t r = 0; r < nfree; ++r) {
    if (h(r, r) != 1)
      throw std::logic_error("SymbolSpace: torsion detected in the quotient");
    for (std::size_t c = 0; c < nfree; ++c) {
      if (c != r && h(r, c) != 0)
        throw std::logic_error("SymbolSpace: pivot outside the non-basis block");
    }
  }

  // Row r reads e_r + tail = 0 in the quotient, so the non-basis coset
  // in column r reduces to minus the tail.
  reduction_ = IntMatrix(ncosets, nbasis);
  for (std::size_t c = 0; c < ncosets; ++c) {
    if (basis_pos[c] >= 0) {
      reduction_(c, static_cast<std::size_t>(basis_pos[c])) = 1;
    } else {
      const std::size_t r = pcol[c];
      for (std::size_t b = 0; b < nbasis; ++b)
        reduction_(c, b) = -h(r, nfree + b);
    }
  }
}

ReducedCoords SymbolSpace::reduce(const CosetLabel& c) const {
  ReducedCoords out = zero();
  const std::size_t idx = coset_index(normalized(c.i, c.j, c.k, n_), n_);
  for (std::size_t b = 0; b < basis_.size(); ++b) out.v[b] = reduction_(idx, b);
  return out;
}

ReducedCoords SymbolSpace::reduce(const SymbolVector& sv) const {
  if (sv.n != n_) throw std::invalid_argument("reduce: ambient mismatch");
  ReducedCoords out = zero();
  for (const auto& [label, coeff] : sv.coeffs) {
    const std::size_t idx = coset_index(normalized(label.i, label.j, label.k, n_), n_);
    for (std::size_t b = 0; b < basis_.size(); ++b) {
      if (reduction_(idx, b) != 0) out.v[b] += coeff * reduction_(idx, b);
    }
  }
  return out;
}

ReducedCoords SymbolSpace::zero() const {
  return {n_, std::vector<Int>(basis_.size())};
}

ReducedCoords SymbolSpace::unit(std::size_t basis_pos) const {
  ReducedCoords out = zero();
  out.v.at(basis_pos) = 1;
  return out;
}

std::string to_string(const CuspClass& c) {
  const char* base = c.base == CuspBase::Zero
                         ? "zero"
                         : (c.base == CuspBase::One ? "one" : "infinity");
  return "(" + std::string(base) + "," + std::to_string(c.index) + ")";
}

void CuspDivisor::add(const CuspClass& c, const Int& v) {
  if (v == 0) return;
  auto it = coeffs.find(c);
  if (it == coeffs.end()) {
    coeffs.emplace(c, v);
  } else {
    it->second += v;
    if (it->second == 0) coeffs.erase(it);
  }
}

std::vector<CuspClass> cusp_set(int n) {
  if (n < 1) throw std::invalid_argument("cusp_set: n must be positive");
  std::vector<CuspClass> out;
  out.reserve(3 * static_cast<std::size_t>(n));
  for (CuspBase base : {CuspBase::Zero, CuspBase::One, CuspBase::Infinity})
    for (int i = 0; i < n; ++i) out.push_back({base, i});
  return out;
}

std::size_t cusp_class_index(const CuspClass& c, int n) {
  std::size_t block = c.base == CuspBase::Zero ? 0 : (c.base == CuspBase::One ? 1 : 2);
  return block * static_cast<std::size_t>(n) + static_cast<std::size_t>(c.index);
}

CuspClass cusp_class(long i, long j, CuspBase base, int n) {
  if (n < 1) throw std::invalid_argument("cusp_class: n must be positive");
  switch (base) {
    case CuspBase::Zero:
      return {CuspBase::Zero, mod_pos(i, n)};
    case CuspBase::One:
      return {CuspBase::One, mod_pos(i + j, n)};
    case CuspBase::Infinity:
      return {CuspBase::Infinity, mod_pos(j, n)};
  }
  throw std::invalid_argument("cusp_class: bad base");
}

CuspClass classify_cusp(const psl2::Cusp& c, int n) {
  // A matrix with first column (p, q) carries infinity to p/q; its
  // coset label then pins the class. alpha_k . infinity lands on
  // infinity (k = 0, 4), 0 (k = 2, 3), 1 (k = 5) or -1 = A^-1 . 1
  // (k = 1), which shifts the index by the A-exponent.
  auto [g, x, y] = xgcd(c.p, c.q);
  if (g != 1) throw std::invalid_argument("classify_cusp: fraction not reduced");
  psl2::ProjMatrix m(c.p, -y, c.q, x);
  CosetLabel label = psl2::coset_label(m, n);
  switch (label.k) {
    case 0:
    case 4:
      return {CuspBase::Infinity, label.j};
    case 2:
    case 3:
      return {CuspBase::Zero, label.i};
    case 5:
      return {CuspBase::One, mod_pos(static_cast<long>(label.i) + label.j, n)};
    case 1:
      return {CuspBase::One, mod_pos(static_cast<long>(label.i) + label.j - 1, n)};
    default:
      throw std::logic_error("classify_cusp: bad coset label");
  }
}

CuspDivisor boundary(const SymbolVector& v) {
  CuspDivisor out;
  out.n = v.n;
  for (const auto& [label, coeff] : v.coeffs) {
    psl2::ProjMatrix m = psl2::coset_representative(label);
    out.add(classify_cusp(psl2::apply(m, psl2::cusp_infinity()), v.n), coeff);
    out.add(classify_cusp(psl2::apply(m, psl2::cusp_zero()), v.n), -coeff);
  }
  return out;
}

CuspDivisor boundary(const SymbolSpace& space, const ReducedCoords& v) {
  if (v.n != space.n()) throw std::invalid_argument("boundary: ambient mismatch");
  SymbolVector sv;
  sv.n = space.n();
  for (std::size_t b = 0; b < space.basis().size(); ++b)
    sv.add(basis_coset(space.basis()[b]), v.v[b]);
  return boundary(sv);
}

IntMatrix boundary_matrix(const SymbolSpace& space) {
  const int n = space.n();
  IntMatrix d(space.rank(), 3 * static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < space.basis().size(); ++b) {
    SymbolVector sv;
    sv.n = n;
    sv.add(basis_coset(space.basis()[b]), 1);
    for (const auto& [cls, coeff] : boundary(sv).coeffs)
      d(b, cusp_class_index(cls, n)) = coeff;
  }
  return d;
}

}  // namespace fermat::manin
