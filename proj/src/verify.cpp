#include "fermat/verify.hpp"

#include "fermat/homology.hpp"
#include "fermat/int_matrix.hpp"
#include "fermat/manin.hpp"
#include "fermat/psl2.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace fermat::verify {

namespace {

using homology::Gen;
using manin::CosetLabel;
using manin::SymbolSpace;
using manin::SymbolVector;
using psl2::ProjMatrix;

struct Collector {
  int n;
  std::vector<CheckResult> results;

  void record(const std::string& name, bool pass, const std::string& detail = "") {
    results.push_back({name, n, pass, pass ? "" : detail});
  }
};

ProjMatrix random_gamma2_word(std::mt19937_64& rng, int max_letters) {
  const auto& cs = psl2::constants();
  std::uniform_int_distribution<int> len_dist(1, max_letters);
  std::uniform_int_distribution<int> exp_dist(-3, 3);
  std::uniform_int_distribution<int> gen_dist(0, 1);
  ProjMatrix m;
  int prev = -1;
  const int len = len_dist(rng);
  for (int i = 0; i < len; ++i) {
    int g = gen_dist(rng);
    if (g == prev) g = 1 - g;
    prev = g;
    int e = exp_dist(rng);
    while (e == 0) e = exp_dist(rng);
    m = psl2::mul(m, psl2::pow(g == 0 ? cs.A : cs.B, e));
  }
  return m;
}

ProjMatrix random_phi_element(std::mt19937_64& rng, int n, int factors) {
  const auto& cs = psl2::constants();
  std::uniform_int_distribution<int> kind_dist(0, 3);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  ProjMatrix m;
  for (int i = 0; i < factors; ++i) {
    ProjMatrix piece;
    switch (kind_dist(rng)) {
      case 0:
        piece = psl2::pow(cs.A, n);
        break;
      case 1:
        piece = psl2::pow(cs.B, n);
        break;
      default: {
        // Commutator of two short random Gamma(2) words.
        ProjMatrix x = random_gamma2_word(rng, 2);
        ProjMatrix y = random_gamma2_word(rng, 2);
        piece = psl2::mul(psl2::mul(x, y), psl2::mul(psl2::inv(x), psl2::inv(y)));
        break;
      }
    }
    if (sign_dist(rng)) piece = psl2::inv(piece);
    m = psl2::mul(m, piece);
  }
  return m;
}

void check_psl2(Collector& col, int n, const Options& opts) {
  std::mt19937_64 rng(opts.seed + static_cast<unsigned>(n));
  bool roundtrip = true;
  for (int s = 0; s < opts.word_samples && roundtrip; ++s) {
    ProjMatrix m = random_gamma2_word(rng, 20);
    roundtrip = psl2::evaluate(psl2::gamma2_word(m)) == m;
  }
  col.record("psl2-word-roundtrip", roundtrip, "word failed to round-trip");

  bool invariant = true;
  ProjMatrix probe = psl2::mul(psl2::pow(psl2::constants().A, 1),
                               psl2::constants().alpha[4]);
  CosetLabel base = psl2::coset_label(probe, n);
  for (int s = 0; s < opts.translation_samples && invariant; ++s) {
    ProjMatrix g = random_phi_element(rng, n, 3);
    invariant = psl2::coset_label(psl2::mul(g, probe), n) == base;
  }
  col.record("coset-label-phi-invariant", invariant,
             "label moved under a Phi(n) left translation");

  auto labels = manin::enumerate_cosets(n);
  bool distinct = true;
  for (std::size_t a = 0; a < labels.size() && distinct; ++a) {
    CosetLabel lab =
        psl2::coset_label(psl2::coset_representative(labels[a]), n);
    distinct = lab == labels[a];
  }
  col.record("coset-labels-distinct", distinct,
             "A^i B^j alpha_k does not label back to (i,j,k)");
}

void check_relations(Collector& col, int n, const SymbolSpace& space,
                     const Options& opts) {
  auto labels = space.cosets();

  bool tables_match = true;
  const auto& cs = psl2::constants();
  for (const auto& lab : labels) {
    ProjMatrix rep = psl2::coset_representative(lab);
    auto [ls, lt] = manin::sigma_tau_images(lab, n);
    if (psl2::coset_label(psl2::mul(rep, cs.sigma), n) != ls ||
        psl2::coset_label(psl2::mul(rep, cs.tau), n) != lt) {
      tables_match = false;
      break;
    }
  }
  col.record("sigma-tau-closed-forms", tables_match,
             "closed-form image differs from the matrix product");

  bool no_fixed = true;
  for (const auto& lab : labels) {
    auto [ls, lt] = manin::sigma_tau_images(lab, n);
    if (ls == lab || lt == lab) {
      no_fixed = false;
      break;
    }
  }
  col.record("no-sigma-tau-fixed-cosets", no_fixed, "fixed coset found");

  IntMatrix rel = manin::relation_matrix(n);
  if (opts.corrupt_relation_entry) rel(0, 0) += 1;
  IntMatrix product = mul(rel, space.reduction());
  col.record("relations-reduce-to-zero", product.is_zero(),
             "a relation row has nonzero reduced coordinates");

  bool xy = true;
  for (int i = 0; i < n && xy; ++i) {
    for (int j = 0; j < n && xy; ++j) {
      SymbolVector lhs;
      lhs.n = n;
      lhs.add({i, j, 0}, 1);
      lhs.add({i, j, 2}, 1);
      lhs.add({(i + 1) % n, j, 0}, -1);
      lhs.add({(i + 1) % n, (j + n - 1) % n, 2}, -1);
      xy = space.reduce(lhs).is_zero();
    }
  }
  col.record("xy-relation", xy, "x[i,j]+y[i,j] != x[i+1,j]+y[i+1,j-1]");
}

void check_cusps(Collector& col, int n, const SymbolSpace& space) {
  col.record("cusp-count", manin::cusp_set(n).size() == 3 * static_cast<std::size_t>(n),
             "cusp_set size is not 3n");

  const auto& cs = psl2::constants();
  bool agree = true;
  for (int i = 0; i < n && agree; ++i) {
    for (int j = 0; j < n && agree; ++j) {
      ProjMatrix m = psl2::mul(psl2::pow(cs.A, i), psl2::pow(cs.B, j));
      agree =
          manin::classify_cusp(psl2::apply(m, psl2::cusp_zero()), n) ==
              manin::cusp_class(i, j, manin::CuspBase::Zero, n) &&
          manin::classify_cusp(psl2::apply(m, psl2::cusp_one()), n) ==
              manin::cusp_class(i, j, manin::CuspBase::One, n) &&
          manin::classify_cusp(psl2::apply(m, psl2::cusp_infinity()), n) ==
              manin::cusp_class(i, j, manin::CuspBase::Infinity, n);
    }
  }
  col.record("cusp-classify-agrees", agree,
             "classify_cusp disagrees with cusp_class on A^i B^j endpoints");

  bool diagonal = true;
  for (int k = 0; k < n && diagonal; ++k) {
    auto via_a = manin::classify_cusp(
        psl2::apply(psl2::pow(cs.A, k), psl2::cusp_one()), n);
    auto via_b = manin::classify_cusp(
        psl2::apply(psl2::pow(cs.B, k), psl2::cusp_one()), n);
    diagonal = via_a == via_b && via_a == manin::CuspClass{manin::CuspBase::One,
                                                           k % n};
  }
  col.record("cusp-a-b-diagonal", diagonal, "A^k.1 and B^k.1 classes differ");

  auto labels = space.cosets();
  bool rel_boundary = true;
  for (std::size_t a = 0; a < labels.size() && rel_boundary; ++a) {
    auto [as, at] = manin::sigma_tau_images(labels[a], n);
    auto [ats, att] = manin::sigma_tau_images(at, n);
    SymbolVector sigma_row, tau_row;
    sigma_row.n = tau_row.n = n;
    sigma_row.add(labels[a], 1);
    sigma_row.add(as, 1);
    tau_row.add(labels[a], 1);
    tau_row.add(at, 1);
    tau_row.add(att, 1);
    rel_boundary = manin::boundary(sigma_row).is_zero() &&
                   manin::boundary(tau_row).is_zero();
  }
  col.record("relation-rows-bound-to-zero", rel_boundary,
             "a relation row has nonzero boundary");

  IntMatrix d = manin::boundary_matrix(space);
  std::size_t image_rank = rank(d);
  std::size_t kernel_rank = d.rows() - image_rank;
  const std::size_t expected_kernel =
      n >= 3 ? static_cast<std::size_t>(n - 1) * (n - 2) : 0;
  col.record("boundary-image-rank", image_rank == 3 * static_cast<std::size_t>(n) - 1,
             "rank of the boundary image is not 3n-1");
  col.record("boundary-kernel-rank", kernel_rank == expected_kernel,
             "kernel rank is not (n-1)(n-2)");
}

void check_homology(Collector& col, int n, const SymbolSpace& space,
                    const homology::HomologyData& data) {
  IntMatrix d = manin::boundary_matrix(space);

  bool cycles = true;
  bool last_trivial = true;
  for (int i = 1; i <= n - 2; ++i) {
    for (int j = 0; j <= n - 1; ++j) {
      auto g = homology::gamma_cycle(space, i, j);
      if (!manin::boundary(space, g).is_zero()) cycles = false;
      if (j == n - 1 && !g.is_zero()) last_trivial = false;
    }
  }
  col.record("gamma-cycles-closed", cycles, "some gamma_{i,j} has a boundary");
  col.record("gamma-last-column-trivial", last_trivial,
             "gamma_{i,n-1} is not zero");

  // homology() already enforced unimodular transitions for the s- and
  // gamma-bases; do the same for the Lim basis.
  bool lim_ok = true;
  IntMatrix lim = homology::lim_basis(space);
  if (lim.rows() != data.kernel.rows()) {
    lim_ok = false;
  } else if (lim.rows() > 0) {
    IntMatrix transition(lim.rows(), lim.rows());
    for (std::size_t r = 0; r < lim.rows() && lim_ok; ++r) {
      auto c = solve_in_lattice(data.kernel, lim.row(r));
      if (!c) {
        lim_ok = false;
      } else {
        transition.set_row(r, *c);
      }
    }
    if (lim_ok) lim_ok = is_unimodular(transition);
  }
  col.record("lim-basis-unimodular", lim_ok,
             "Lim basis does not span ker(boundary) unimodularly");

  col.record("annihilators-act-as-zero",
             homology::annihilator_check(space, data).all(),
             "a power-sum annihilator is nonzero on homology");

  if (n >= 3) {
    auto [cf_e0, cf_e1] = homology::closed_form_action(n);
    bool equal =
        cf_e0 == homology::action_on_homology(space, data, Gen::E0) &&
        cf_e1 == homology::action_on_homology(space, data, Gen::E1);
    col.record("closed-form-matches-solve", equal,
               "group-ring route disagrees with the kernel-solve route");
  }
}

void check_group_structure(Collector& col, int n, const SymbolSpace& space,
                           const homology::HomologyData& data) {
  IntMatrix me0 = homology::action_on_symbols(space, Gen::E0);
  IntMatrix me1 = homology::action_on_symbols(space, Gen::E1);
  IntMatrix me0e1 = homology::action_on_symbols(space, Gen::E0E1);
  IntMatrix mphi = homology::action_on_symbols(space, Gen::Phi);

  col.record("e0-e1-commute-on-symbols",
             mul(me0, me1) == mul(me1, me0) && mul(me0, me1) == me0e1,
             "e0, e1 fail to commute into e0e1");

  auto matpow = [](const IntMatrix& m, int e) {
    IntMatrix acc = IntMatrix::identity(m.rows());
    for (int i = 0; i < e; ++i) acc = mul(acc, m);
    return acc;
  };
  col.record("e0-e1-order-n-on-symbols",
             matpow(me0, n).is_identity() && matpow(me1, n).is_identity(),
             "e0^n or e1^n is not the identity on symbols");
  col.record("phi-order-3", matpow(mphi, 3).is_identity(),
             "phi^3 is not the identity on symbols");
  col.record("phi-intertwines-e0-e1", mul(mphi, me0) == mul(me1, mphi),
             "phi e0 != e1 phi on symbols");
  // tau B^-1 = A^-1 B tau, i.e. phi e1 = (e0 e1)^-1 phi.
  col.record("phi-intertwines-e1-monodromy",
             mul(me0e1, mul(mphi, me1)) == mphi,
             "phi e1 != (e0e1)^-1 phi on symbols");

  IntMatrix h0 = homology::action_on_homology(space, data, Gen::E0);
  IntMatrix h1 = homology::action_on_homology(space, data, Gen::E1);
  IntMatrix h01 = homology::action_on_homology(space, data, Gen::E0E1);
  col.record("homology-action-orders",
             matpow(h0, n).is_identity() && matpow(h1, n).is_identity() &&
                 matpow(h01, n).is_identity(),
             "an action matrix does not have order dividing n on homology");
  col.record("homology-action-commutes", mul(h0, h1) == h01 && mul(h1, h0) == h01,
             "homology actions fail to commute into e0e1");
  bool unimod = data.kernel.rows() == 0 ||
                (is_unimodular(h0) && is_unimodular(h1) && is_unimodular(h01));
  col.record("homology-action-unimodular", unimod,
             "an action matrix is not invertible over Z");
}

void check_geometric_dictionary(Collector& col, int n, const SymbolSpace& space) {
  using homology::GroupRingElement;

  // Theorem generators must map bijectively onto the free basis:
  //   e0^i e1^j gammabar (1 <= i <= n-1, 0 <= j <= n-1) -> y[i, -j]
  //   e0^(n-1) e1^j gamma -> x[n-1, -j]
  //   e1 gammabar -> y[0, n-1]
  bool basis_map = true;
  std::vector<bool> hit(space.rank(), false);
  auto expect_unit = [&](const homology::GeometricSymbol& g) {
    auto coords = homology::geometric_to_coords(space, g);
    std::size_t nonzero = 0, pos = 0;
    for (std::size_t b = 0; b < coords.v.size(); ++b) {
      if (coords.v[b] != 0) {
        ++nonzero;
        pos = b;
      }
    }
    if (nonzero != 1 || coords.v[pos] != 1 || hit[pos]) return false;
    hit[pos] = true;
    return true;
  };
  for (int i = 1; i <= n - 1 && basis_map; ++i)
    for (int j = 0; j <= n - 1 && basis_map; ++j)
      basis_map = expect_unit(homology::apply_ring(
          GroupRingElement::monomial(n, i, j), homology::gammabar_generator(n)));
  for (int j = 0; j <= n - 1 && basis_map; ++j)
    basis_map = expect_unit(homology::apply_ring(
        GroupRingElement::monomial(n, n - 1, j), homology::gamma_generator(n)));
  if (basis_map)
    basis_map = expect_unit(homology::apply_ring(GroupRingElement::e1(n),
                                                 homology::gammabar_generator(n)));
  if (basis_map)
    basis_map = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  col.record("generators-map-to-free-basis", basis_map,
             "a theorem generator missed its basis vector");

  // e0 gamma + e0e1 gammabar - gamma - gammabar reduces to zero.
  homology::GeometricSymbol rel{
      GroupRingElement::e0(n) - GroupRingElement::one(n),
      GroupRingElement::e0(n) * GroupRingElement::e1(n) -
          GroupRingElement::one(n)};
  col.record("patching-relation-vanishes",
             homology::geometric_to_coords(space, rel).is_zero(),
             "the gamma/gammabar relation does not reduce to zero");
}

}  // namespace

std::vector<CheckResult> run_level(int n, const Options& opts) {
  Collector col{n, {}};
  try {
    check_psl2(col, n, opts);
    SymbolSpace space(n);
    col.record("free-of-rank-n2-plus-1", true);
    check_relations(col, n, space, opts);
    check_cusps(col, n, space);
    homology::HomologyData data = homology::homology(space);
    col.record("homology-bases-unimodular", true);
    check_homology(col, n, space, data);
    check_group_structure(col, n, space, data);
    check_geometric_dictionary(col, n, space);
  } catch (const std::exception& e) {
    col.record("level-completed", false, e.what());
  }
  return col.results;
}

std::vector<CheckResult> run(const Options& opts) {
  std::vector<std::vector<CheckResult>> per_level(
      static_cast<std::size_t>(std::max(opts.n_max, 0)));
  const long levels = opts.n_max;
#pragma omp parallel for schedule(dynamic, 1)
  for (long n = 1; n <= levels; ++n) {
    per_level[static_cast<std::size_t>(n - 1)] = run_level(static_cast<int>(n), opts);
  }
  std::vector<CheckResult> all;
  for (auto& block : per_level)
    for (auto& r : block) all.push_back(std::move(r));
  return all;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.pass; });
}

}  // namespace fermat::verify
