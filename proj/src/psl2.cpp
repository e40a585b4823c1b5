#include "fermat/psl2.hpp"

#include <map>

namespace fermat::psl2 {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

int mod_pos(const Int& x, int n) {
  Int r = x % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

// mod-2 fingerprint of a matrix: 4 bits abcd.
int mod2_key(const Int& a, const Int& b, const Int& c, const Int& d) {
  auto bit = [](const Int& x) { return static_cast<int>(abs_int(x) % 2); };
  return bit(a) << 3 | bit(b) << 2 | bit(c) << 1 | bit(d);
}

// alpha_k index by mod-2 image; the six images exhaust SL2(Z/2).
const std::array<int, 16>& alpha_table() {
  static const std::array<int, 16> table = [] {
    std::array<int, 16> t{};
    t.fill(-1);
    const auto& cs = constants();
    for (int k = 0; k < 6; ++k) {
      const ProjMatrix& m = cs.alpha[k];
      int key = mod2_key(m.a(), m.b(), m.c(), m.d());
      if (t[key] != -1) throw std::logic_error("alpha mod-2 images collide");
      t[key] = k;
    }
    return t;
  }();
  return table;
}

}  // namespace

ProjMatrix::ProjMatrix(Int a, Int b, Int c, Int d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (a_ * d_ - b_ * c_ != 1)
    throw std::invalid_argument("ProjMatrix: determinant must be 1");
  const Int* first = &a_;
  if (a_ == 0) first = b_ != 0 ? &b_ : (c_ != 0 ? &c_ : &d_);
  if (*first < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
    d_ = -d_;
  }
}

ProjMatrix mul(const ProjMatrix& x, const ProjMatrix& y) {
  return ProjMatrix(x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(),
                    x.c() * y.a() + x.d() * y.c(), x.c() * y.b() + x.d() * y.d());
}

ProjMatrix inv(const ProjMatrix& x) {
  return ProjMatrix(x.d(), -x.b(), -x.c(), x.a());
}

ProjMatrix pow(const ProjMatrix& x, long e) {
  ProjMatrix base = e < 0 ? inv(x) : x;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e)
                          : static_cast<unsigned long>(e);
  ProjMatrix acc;
  while (k) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

const Constants& constants() {
  static const Constants cs = [] {
    Constants c{};
    c.A = ProjMatrix(1, 2, 0, 1);
    c.B = ProjMatrix(1, 0, 2, 1);
    c.sigma = ProjMatrix(0, 1, -1, 0);
    c.tau = ProjMatrix(0, -1, 1, -1);
    c.J = ProjMatrix(-1, 0, 0, -1);  // normalizes to the identity
    c.alpha[0] = ProjMatrix(1, 0, 0, 1);
    c.alpha[1] = ProjMatrix(1, 1, -1, 0);
    c.alpha[2] = ProjMatrix(0, -1, 1, -1);
    c.alpha[3] = ProjMatrix(0, 1, -1, 0);
    c.alpha[4] = ProjMatrix(1, 1, 0, 1);
    c.alpha[5] = ProjMatrix(1, 0, 1, 1);
    return c;
  }();
  return cs;
}

bool gamma2_membership(const ProjMatrix& m) {
  return abs_int(m.a()) % 2 == 1 && abs_int(m.d()) % 2 == 1 &&
         m.b() % 2 == 0 && m.c() % 2 == 0;
}

namespace {

// Nearest-integer quotient of a / (2c), used to strip one generator
// power off the front of a Gamma(2) word.
Int strip_exponent(const Int& a, const Int& c) {
  Int twoc = 2 * c;
  Int q = a / twoc;  // truncated
  Int r = a - q * twoc;
  // Choose the representative with |r| minimal; parity rules out ties.
  if (2 * abs_int(r) > abs_int(twoc)) q += (a < 0) == (twoc < 0) ? 1 : -1;
  return q;
}

}  // namespace

Gamma2Word gamma2_word(const ProjMatrix& m) {
  if (!gamma2_membership(m)) throw NotInGamma2();
  Gamma2Word word;
  Int a = m.a(), b = m.b(), c = m.c(), d = m.d();
  while (c != 0) {
    if (abs_int(a) > abs_int(c)) {
      // Strip A^q from the left: A^-q * M.
      Int q = strip_exponent(a, c);
      a -= 2 * q * c;
      b -= 2 * q * d;
      word.push_back({Gamma2Gen::A, q});
    } else {
      // |c| > |a| (parity forbids equality); strip B^q.
      Int q = strip_exponent(c, a);
      c -= 2 * q * a;
      d -= 2 * q * b;
      word.push_back({Gamma2Gen::B, q});
    }
  }
  // Left with +-[[1, b], [0, 1]] = A^(b/2) in PSL2.
  if (a < 0) {
    b = -b;
  }
  if (b != 0) word.push_back({Gamma2Gen::A, b / 2});
  // Each strip alternates generators except possibly the final A-power
  // after an A-strip; merge to keep the word reduced.
  Gamma2Word reduced;
  for (const auto& letter : word) {
    if (!reduced.empty() && reduced.back().gen == letter.gen) {
      reduced.back().exp += letter.exp;
      if (reduced.back().exp == 0) reduced.pop_back();
    } else {
      reduced.push_back(letter);
    }
  }
  return reduced;
}

ProjMatrix evaluate(const Gamma2Word& word) {
  // A^e = [[1, 2e], [0, 1]] and B^e = [[1, 0], [2e, 1]] in closed form.
  ProjMatrix acc;
  for (const auto& letter : word) {
    ProjMatrix p = letter.gen == Gamma2Gen::A
                       ? ProjMatrix(1, 2 * letter.exp, 0, 1)
                       : ProjMatrix(1, 0, 2 * letter.exp, 1);
    acc = mul(acc, p);
  }
  return acc;
}

std::pair<Int, Int> abelianization(const ProjMatrix& m) {
  Int p = 0, q = 0;
  for (const auto& letter : gamma2_word(m)) {
    (letter.gen == Gamma2Gen::A ? p : q) += letter.exp;
  }
  return {p, q};
}

bool phi_membership(const ProjMatrix& m, int n) {
  if (n < 1) throw std::invalid_argument("phi_membership: n must be positive");
  if (!gamma2_membership(m)) return false;
  auto [p, q] = abelianization(m);
  return p % n == 0 && q % n == 0;
}

CosetLabel coset_label(const ProjMatrix& m, int n) {
  if (n < 1) throw std::invalid_argument("coset_label: n must be positive");
  int k = alpha_table()[mod2_key(m.a(), m.b(), m.c(), m.d())];
  ProjMatrix residual = mul(m, inv(constants().alpha[k]));
  auto [p, q] = abelianization(residual);
  return {mod_pos(p, n), mod_pos(q, n), k};
}

ProjMatrix coset_representative(const CosetLabel& label) {
  const auto& cs = constants();
  return mul(mul(pow(cs.A, label.i), pow(cs.B, label.j)), cs.alpha[label.k]);
}

Cusp make_cusp(Int p, Int q) {
  if (p == 0 && q == 0) throw std::invalid_argument("cusp 0/0");
  Int g = gcd(p, q);
  p /= g;
  q /= g;
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return {std::move(p), std::move(q)};
}

Cusp apply(const ProjMatrix& m, const Cusp& c) {
  return make_cusp(m.a() * c.p + m.b() * c.q, m.c() * c.p + m.d() * c.q);
}

}  // namespace fermat::psl2
