#include "treg/selftest.hpp"

#include <chrono>
#include <numbers>
#include <sstream>

#include "treg/cauchy.hpp"
#include "treg/fan_names.hpp"
#include "treg/quat13.hpp"
#include "treg/random.hpp"

namespace treg {
namespace {

using quat13::KIndex;
using R = Rational;
using E = Element<R>;
using P = PolyMap<R>;

const AlgebraSpec& H() { return AlgebraSpec::quaternions(); }

using Clock = std::chrono::steady_clock;

struct Stopwatch {
  Clock::time_point start = Clock::now();
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }
};

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void fail(const std::string& msg) {
    pass = false;
    if (!detail.str().empty()) detail << "; ";
    detail << msg;
  }
  void require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
  }
  void note(const std::string& msg) {
    if (!detail.str().empty()) detail << "; ";
    detail << msg;
  }
};

CriterionResult finish(int id, std::string name, Check& c, const Stopwatch& sw,
                       double limit_seconds = 0) {
  CriterionResult r{id, std::move(name), c.pass, c.detail.str(), sw.seconds()};
  if (limit_seconds > 0 && r.seconds > limit_seconds) {
    r.pass = false;
    r.detail += (r.detail.empty() ? "" : "; ") + std::string("over time limit");
  }
  if (r.pass && r.detail.empty()) r.detail = "ok";
  return r;
}

// ---- criterion 1: algebra laws ------------------------------------------------

CriterionResult c1_algebra_laws() {
  Stopwatch sw;
  Check c;
  std::vector<const AlgebraSpec*> algebras{&AlgebraSpec::complex(),
                                           &AlgebraSpec::quaternions(),
                                           &AlgebraSpec::octonions()};
  for (int n = 1; n <= 5; ++n) algebras.push_back(&AlgebraSpec::clifford(n));
  std::uint64_t seed = 12001;
  for (const AlgebraSpec* alg : algebras) {
    if (antiautomorphism_witness<R>(*alg))
      c.fail(alg->name() + ": conj(ab) != conj(b)conj(a)");
    if (involution_witness<R>(*alg)) c.fail(alg->name() + ": conj not involutive");
    if (alternativity_witness<R>(*alg, 200, seed++))
      c.fail(alg->name() + ": alternativity violated");
  }
  std::ostringstream n;
  n << algebras.size() << " algebras x 200 exact pairs";
  c.note(n.str());
  return finish(1, "algebra laws (antiautomorphism, involution, alternativity)", c,
                sw, 10.0);
}

// ---- criterion 2: hypercomplex subspace theorem -------------------------------

void check_subspace(Check& c, const HypercomplexBasis<R>& basis, const char* label,
                    std::uint64_t seed) {
  const auto completed = complete_basis(basis);
  RandomSource rnd(seed);
  for (int it = 0; it < 100; ++it) {
    const E x = rnd.span_element(basis.vectors);
    const E y = rnd.span_element(basis.vectors);
    const R ip = inner_product_in(completed, x, y);
    if (!(trace(mul(x, conj(y))) == E::scalar(*basis.algebra, R(2) * ip)) ||
        !(trace(mul(y, conj(x))) == E::scalar(*basis.algebra, R(2) * ip))) {
      c.fail(std::string(label) + ": t(xy^c) != 2<x,y>");
      return;
    }
    const R n2 = inner_product_in(completed, x, x);
    if (!(norm_form(x) == E::scalar(*basis.algebra, n2))) {
      c.fail(std::string(label) + ": n(x) != |x|^2");
      return;
    }
    if (!is_real(x) && !in_quadratic_cone(x)) {
      c.fail(std::string(label) + ": nonreal sample outside the quadratic cone");
      return;
    }
  }
}

CriterionResult c2_subspace_theorem() {
  Stopwatch sw;
  Check c;
  check_subspace(c, make_paravectors<R>(4), "paravectors Cl(0,4)", 22001);
  std::vector<E> hv, ov;
  for (int s = 0; s < 4; ++s) hv.push_back(E::unit(H(), s));
  check_subspace(c, make_basis(std::move(hv)), "H", 22002);
  const AlgebraSpec& O = AlgebraSpec::octonions();
  for (int s = 0; s < 8; ++s) ov.push_back(E::unit(O, s));
  check_subspace(c, make_basis(std::move(ov)), "O", 22003);
  check_subspace(c, make_vh<R>(5, 5), "V_5 in Cl(0,5)", 22004);
  c.note("4 subspaces x 100 exact pairs");
  return finish(2, "trace form / norm form on hypercomplex subspaces", c, sw);
}

// ---- criterion 3: hat-extension lemma ------------------------------------------

CriterionResult c3_hat_lemma() {
  Stopwatch sw;
  Check c;
  std::vector<E> hv{E::one(H()), E::unit(H(), 1), E::unit(H(), 2)};
  const auto m2 = hat_extension(make_basis(std::move(hv)));
  c.require(m2.ok() && m2.hat == E::unit(H(), 3), "m=2 (H): expected v_hat = k");
  const auto m6 = hat_extension(make_paravectors<R>(6));
  c.require(m6.ok() && m6.extended->count() == 8, "m=6 (Cl(0,6)): expected dim 8");
  for (int m : {3, 4, 5}) {
    const auto r = hat_extension(make_paravectors<R>(m));
    if (r.ok()) {
      c.fail("m=" + std::to_string(m) + ": unexpectedly extendable");
      continue;
    }
    const BasisCheck expect =
        (m == 5) ? BasisCheck::pair_trace_nonzero : BasisCheck::trace_nonzero;
    c.require(r.violation->cond == expect,
              "m=" + std::to_string(m) + ": wrong violated condition " +
                  to_string(r.violation->cond));
  }
  return finish(3, "hat-extension lemma (m = 2,6 extend; 3,4,5 fail correctly)", c, sw);
}

// ---- criterion 4: symbolic regularity of the basis family ----------------------

CriterionResult c4_tk_symbolic() {
  Stopwatch sw;
  Check c;
  const TFan<R> fan = quat13::fan13<R>();
  int count = 0;
  for (int k = 0; k <= 8; ++k)
    for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
      ++count;
      if (!symbolic_cr_residual(fan, quat13::tk(k1, k2)).empty())
        c.fail("nonzero symbolic residual at (" + std::to_string(k1) + "," +
               std::to_string(k2) + ")");
    }
  c.note(std::to_string(count) + " polynomials, full circle-parameter proof");
  return finish(4, "symbolic proof of (1,3)-regularity for |k| <= 8", c, sw, 60.0);
}

// ---- criterion 5: lemma bridge ---------------------------------------------------

std::vector<E> eight_circle_points() {
  std::vector<E> out;
  for (auto [num, den] : std::vector<std::pair<long, long>>{
           {0, 1}, {1, 2}, {-1, 3}, {2, 1}, {-2, 3}, {3, 4}, {1, 5}, {-3, 2}})
    out.push_back(quat13::circle_point(rational(num, den)));
  return out;
}

CriterionResult c5_lemma_bridge() {
  Stopwatch sw;
  Check c;
  const auto points = eight_circle_points();
  int restr = 0, diffs = 0;
  for (const E& J : points) {
    for (int k = 0; k <= 6; ++k)
      for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
        ++restr;
        if (!quat13::restriction_identity(k1, k2, J))
          c.fail("(T_k)_J != P^J_k J^{k2} at (" + std::to_string(k1) + "," +
                 std::to_string(k2) + ")");
        const P phi = quat13::fueter_poly(k1, k2, J);
        for (int h0 = 0; h0 <= 4; ++h0)
          for (int h1 = 0; h0 + h1 <= 4; ++h1)
            for (int h2 = 0; h0 + h1 + h2 <= 4; ++h2) {
              ++diffs;
              const P lhs = apply_delta<R>({h0, h1, h2}, phi);
              const P rhs =
                  left_mul(quat13::jpow(J, -h2), apply_nabla<R>({h0, h1, h2}, phi));
              if (!(lhs == rhs)) {
                c.fail("delta != J^{-h2} nabla at k=(" + std::to_string(k1) + "," +
                       std::to_string(k2) + "), h=(" + std::to_string(h0) + "," +
                       std::to_string(h1) + "," + std::to_string(h2) + ")");
                h0 = h1 = h2 = 5;
              }
            }
      }
  }
  c.note(std::to_string(restr) + " restriction identities, " + std::to_string(diffs) +
         " operator identities");
  return finish(5, "lemma bridge: restrictions and delta = J^{-h2} nabla", c, sw);
}

// ---- criterion 6: basis expansion and kernels -----------------------------------

int monomial_index(const MultiIndex& e, std::map<MultiIndex, int>& index) {
  auto it = index.find(e);
  if (it == index.end()) it = index.emplace(e, static_cast<int>(index.size())).first;
  return it->second;
}

/// Rank test: columns are coefficient vectors of right-multiples tk(k)*e_a.
bool tk_columns_independent(const std::vector<KIndex>& indices) {
  std::map<MultiIndex, int> monomials;
  std::vector<std::map<int, R>> cols;
  for (const auto& [k1, k2] : indices) {
    const P t = quat13::tk(k1, k2);
    for (int a = 0; a < 4; ++a) {
      const P col = right_mul(t, E::unit(H(), a));
      std::map<int, R> sparse;
      for (const auto& [e, coeff] : col.terms()) {
        const int row = monomial_index(e, monomials);
        for (int s = 0; s < 4; ++s)
          if (sgn(coeff.coeff(s)) != 0) sparse[4 * row + s] = coeff.coeff(s);
      }
      cols.push_back(std::move(sparse));
    }
  }
  const int rows = 4 * static_cast<int>(monomials.size());
  using Mat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
  Mat m = Mat::Zero(rows, static_cast<int>(cols.size()));
  for (int cidx = 0; cidx < static_cast<int>(cols.size()); ++cidx)
    for (const auto& [r, v] : cols[static_cast<size_t>(cidx)]) m(r, cidx) = v;
  Eigen::FullPivLU<Mat> lu(m);
  return lu.rank() == static_cast<int>(cols.size());
}

CriterionResult c6_basis_expansion() {
  Stopwatch sw;
  Check c;
  RandomSource rnd(62001);
  for (int k = 0; k <= 6; ++k) {
    P combo = P::zero(4, H());
    std::map<KIndex, E> chosen;
    for (const auto& ki : quat13::indices_of_degree(k)) {
      const E coeff = rnd.element<R>(H());
      chosen.insert_or_assign(ki, coeff);
      combo = add(combo, right_mul(quat13::tk(ki.first, ki.second), coeff));
    }
    const auto r = quat13::expand_homogeneous(combo, k);
    if (!r.exact) {
      c.fail("degree " + std::to_string(k) + ": reconstruction residual");
      continue;
    }
    for (const auto& [ki, coeff] : chosen)
      if (!(r.coeffs.at(ki) == coeff)) c.fail("degree " + std::to_string(k) +
                                              ": coefficient mismatch");
    if (!tk_columns_independent(quat13::indices_of_degree(k)))
      c.fail("degree " + std::to_string(k) + ": dependent basis columns");
  }
  for (const auto& [a, b] : std::vector<std::pair<R, R>>{
           {R(0), R(0)}, {R(1), R(0)}, {rational(-1, 2), R(2)}}) {
    P combo = P::zero(4, H());
    RandomSource rnd2(62002);
    for (int k = 0; k <= 5; ++k)
      for (const auto& ki : quat13::indices_of_degree(k))
        combo = add(combo,
                    right_mul(quat13::tk(ki.first, ki.second), rnd2.element<R>(H(), 3, 3)));
    if (!quat13::series_expand(combo, a, b, 5).exact)
      c.fail("series expansion not exact at center (" + to_string(a) + "," +
             to_string(b) + ")");
  }
  c.note("round-trips k <= 6, kernels trivial, 3 series centers");
  return finish(6, "basis expansion round-trip, linear independence, series", c, sw);
}

// ---- criterion 7: negative controls and fan equivalences ------------------------

P identity_map() {
  P f(4, H());
  f.add_term({1, 0, 0, 0}, E::one(H()));
  f.add_term({0, 1, 0, 0}, E::unit(H(), 1));
  f.add_term({0, 0, 1, 0}, E::unit(H(), 2));
  f.add_term({0, 0, 0, 1}, E::unit(H(), 3));
  return f;
}

CriterionResult c7_negative_controls() {
  Stopwatch sw;
  Check c;
  const TFan<R> f3 = build_fan<R>("H:(3)");
  const auto fueter_grid = torus_grid(f3, 1);
  for (auto [k1, k2] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 1}}) {
    const auto rep = check_regular(f3, quat13::tk(k1, k2), fueter_grid);
    c.require(rep.verdict == RegularityVerdict::counterexample,
              "T_(" + std::to_string(k1) + "," + std::to_string(k2) +
                  ") unexpectedly Fueter-regular");
  }
  const TFan<R> f03 = build_fan<R>("H:(0,3)");
  const auto sphere_grid = torus_grid(f03, 3);
  for (int k = 1; k <= 2; ++k)
    for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
      const auto rep = check_regular(f03, quat13::tk(k1, k2), sphere_grid);
      c.require(rep.verdict == RegularityVerdict::counterexample,
                "T_(" + std::to_string(k1) + "," + std::to_string(k2) +
                    ") unexpectedly slice-regular");
    }

  // 30-polynomial corpus for the fan equivalences
  std::vector<P> corpus;
  for (int k = 0; k <= 4; ++k)
    for (const auto& [k1, k2] : quat13::indices_of_degree(k))
      corpus.push_back(quat13::tk(k1, k2));  // 15
  for (int l = 1; l <= 3; ++l) {            // 3 Fueter variables
    P f(4, H());
    MultiIndex e(4, 0);
    e[static_cast<size_t>(l)] = 1;
    f.add_term(e, E::one(H()));
    f.add_term({1, 0, 0, 0}, E::unit(H(), l, R(-1)));
    corpus.push_back(std::move(f));
  }
  corpus.push_back(scale(add(product(corpus[15], corpus[16]),
                             product(corpus[16], corpus[15])),
                         rational(1, 2)));      // symmetrized Fueter product
  corpus.push_back(P::constant(4, E::unit(H(), 3)));  // constant k
  corpus.push_back(identity_map());
  corpus.push_back(product(identity_map(), identity_map()));  // x^2
  for (int v = 2; v <= 3; ++v)
    corpus.push_back(P::coordinate(4, v, H()));
  RandomSource rnd(72001);
  while (corpus.size() < 30) corpus.push_back(rnd.polymap<R>(H(), 4, 3, 5));

  const TFan<R> f23 = build_fan<R>("H:(2,3)");
  const TFan<R> f123 = build_fan<R>("H:(1,2,3)");
  const TFan<R> f0123 = build_fan<R>("H:(0,1,2,3)");
  const TFan<R> f13 = build_fan<R>("H:(1,3)");
  const TFan<R> f013 = build_fan<R>("H:(0,1,3)");
  auto regular = [](const TFan<R>& fan, const P& f) {
    return check_regular(fan, f, torus_grid(fan, 3)).verdict !=
           RegularityVerdict::counterexample;
  };
  int idx = 0;
  for (const P& f : corpus) {
    const bool fueter = regular(f3, f);
    c.require(regular(f23, f) == fueter, "corpus[" + std::to_string(idx) + "]: (2,3) != (3)");
    c.require(regular(f123, f) == fueter,
              "corpus[" + std::to_string(idx) + "]: (1,2,3) != (3)");
    c.require(regular(f0123, f) == fueter,
              "corpus[" + std::to_string(idx) + "]: (0,1,2,3) != (3)");
    c.require(regular(f013, f) == regular(f13, f),
              "corpus[" + std::to_string(idx) + "]: (0,1,3) != (1,3)");
    ++idx;
  }
  c.note("corpus of " + std::to_string(corpus.size()) + " polynomials");
  return finish(7, "negative controls and fan equivalences", c, sw);
}

// ---- criterion 8: representation formulas ----------------------------------------

CriterionResult c8_representation() {
  Stopwatch sw;
  Check c;
  RandomSource rnd(82001);
  int tuples = 0;
  for (int it = 0; it < 20; ++it) {
    const E I = quat13::circle_point(rnd.rational(5, 4));
    const E J = quat13::circle_point(rnd.rational(5, 4));
    E K = quat13::circle_point(rnd.rational(5, 4));
    while (K == J) K = quat13::circle_point(rnd.rational(7, 5));
    const E z = add(E::scalar(H(), rnd.rational()), E::unit(H(), 1, rnd.rational()));
    const R beta = rnd.rational(5, 3);
    ++tuples;
    for (int k = 0; k <= 5; ++k)
      for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
        auto f = [&](const E& x) {
          return evaluate(quat13::tk(k1, k2),
                          {x.coeff(0), x.coeff(1), x.coeff(2), x.coeff(3)});
        };
        const E direct = f(add(z, scale(I, beta)));
        if (!(quat13::represent_general(f, I, J, K, z, beta) == direct)) {
          c.fail("general formula mismatch at |k|=" + std::to_string(k));
          k = 6;
          break;
        }
        if (!(quat13::represent_two_point(f, I, J, z, beta) == direct)) {
          c.fail("two-point formula mismatch at |k|=" + std::to_string(k));
          k = 6;
          break;
        }
      }
  }
  // I = J identity for arbitrary evaluators (not a T-function)
  auto arb = [](const E& x) {
    return add(E::scalar(H(), x.coeff(2) * x.coeff(2) * x.coeff(3)),
               mul(x, E::unit(H(), 1, x.coeff(0))));
  };
  const E J = quat13::circle_point(rational(2, 7));
  const E K = quat13::circle_point(rational(-1, 4));
  const E z = add(E::scalar(H(), R(1)), E::unit(H(), 1, rational(-1, 2)));
  c.require(quat13::represent_general(arb, J, J, K, z, rational(5, 3)) ==
                arb(add(z, scale(J, rational(5, 3)))),
            "I = J identity failed for an arbitrary evaluator");
  c.note(std::to_string(tuples) + " exact tuples x |k| <= 5");
  return finish(8, "representation formulas (general and two-point)", c, sw);
}

// ---- criterion 9: stems ------------------------------------------------------------

CriterionResult c9_stems() {
  Stopwatch sw;
  Check c;
  const E J1 = quat13::circle_point(rational(1, 2));
  const E J2 = quat13::circle_point(rational(-3, 7));
  RandomSource rnd(92001);
  for (int k = 0; k <= 6; ++k)
    for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
      const auto a = quat13::extract_stem(quat13::tk(k1, k2), J1);
      const auto b = quat13::extract_stem(quat13::tk(k1, k2), J2);
      const std::string tag = "(" + std::to_string(k1) + "," + std::to_string(k2) + ")";
      c.require(flip_var_sign(a.F0, 2) == a.F0, tag + ": F0 not even");
      c.require(flip_var_sign(a.F1, 2) == neg(a.F1), tag + ": F1 not odd");
      c.require(quat13::stem_system_holds(a), tag + ": coupled system fails");
      c.require(apply_laplacian(a.F0).empty() && apply_laplacian(a.F1).empty(),
                tag + ": components not harmonic");
      c.require(a.F0 == b.F0 && a.F1 == b.F1, tag + ": stem depends on J");
      for (int it = 0; it < 5; ++it) {
        const E Jr = quat13::circle_point(rnd.rational(4, 3));
        const R x0 = rnd.rational(), x1 = rnd.rational(), beta = rnd.rational();
        const E via = quat13::stem_value(a, x0, x1, beta, Jr);
        const E direct = evaluate(quat13::tk(k1, k2),
                                  {x0, x1, beta * Jr.coeff(2), beta * Jr.coeff(3)});
        if (!(via == direct)) {
          c.fail(tag + ": induce(extract) != identity");
          break;
        }
      }
    }
  c.note("all |k| <= 6, two exact J's, 5 sample points each");
  return finish(9, "stem extraction: parity, system, harmonicity, J-independence", c,
                sw);
}

// ---- criterion 10: A_k/B_k ----------------------------------------------------------

CriterionResult c10_akbk() {
  Stopwatch sw;
  Check c;
  const AlgebraSpec& C = AlgebraSpec::complex();
  for (int k = 0; k <= 8; ++k)
    for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
      const std::string tag = "(" + std::to_string(k1) + "," + std::to_string(k2) + ")";
      if (!quat13::akbk_identity(k1, k2)) {
        c.fail(tag + ": decomposition identity fails");
        continue;
      }
      const auto ab = quat13::akbk(k1, k2);
      PolyMap<R> b2(3, C);
      b2.add_term({0, 0, 2}, Element<R>::one(C));
      if (!is_homogeneous(substitute_real(ab.A, 2, b2), k))
        c.fail(tag + ": A homogeneity fails");
      PolyMap<R> beta_mon(3, C);
      beta_mon.add_term({0, 0, 1}, Element<R>::one(C));
      if (!is_homogeneous(product(beta_mon, substitute_real(ab.B, 2, b2)), k))
        c.fail(tag + ": beta B homogeneity fails");
    }
  RandomSource rnd(102001);
  int pairs = 0;
  while (pairs < 50) {
    const R beta = rnd.rational(5, 3);
    const E Ja = quat13::circle_point(rnd.rational(4, 3));
    const E Jb = quat13::circle_point(rnd.rational(4, 3));
    const R x0 = rnd.rational(), x1 = rnd.rational();
    ++pairs;
    for (int k = 1; k <= 5 && pairs; ++k)
      for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
        const R m1 = quat13::tk_squared_modulus(
            k1, k2, {x0, x1, beta * Ja.coeff(2), beta * Ja.coeff(3)});
        const R m2 = quat13::tk_squared_modulus(
            k1, k2, {x0, x1, beta * Jb.coeff(2), beta * Jb.coeff(3)});
        if (!(m1 == m2)) {
          c.fail("modulus differs along an orbit at |k|=" + std::to_string(k));
          k = 6;
          break;
        }
      }
  }
  c.note("identities |k| <= 8; 50 orbit pairs");
  return finish(10, "A_k/B_k decomposition, homogeneity, modulus invariance", c, sw);
}

// ---- criterion 11: Cauchy integral ----------------------------------------------------

CriterionResult c11_cauchy() {
  Stopwatch sw;
  Check c;
  using cauchy::DElem;
  const DElem J = DElem::unit(H(), 2);
  const DElem y0 = DElem::zero(H());

  auto one = [](const DElem&) { return DElem::one(AlgebraSpec::quaternions()); };
  const auto base = cauchy::cauchy_reconstruct(one, J, y0, 1.0, y0, 16);
  const double const_err = coeff_norm(sub(base, DElem::one(H())));
  c.require(const_err < 1e-10, "constant reconstruction error " + std::to_string(const_err));

  RandomSource rnd(112001);
  std::vector<PolyMap<double>> combos;
  for (int i = 0; i < 3; ++i) {
    P combo = P::zero(4, H());
    for (int k = 0; k <= 4; ++k)
      for (const auto& ki : quat13::indices_of_degree(k))
        combo = add(combo, right_mul(quat13::tk(ki.first, ki.second),
                                     rnd.element<R>(H(), 2, 2)));
    combos.push_back(convert_scalar<double>(combo));
  }
  std::mt19937_64 rng(112002);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<DElem> points;
  while (points.size() < 10) {
    DElem x = add(add(scale(DElem::one(H()), u(rng)), scale(DElem::unit(H(), 1), u(rng))),
                  scale(J, u(rng)));
    if (cauchy::modulus(x) <= 0.7) points.push_back(std::move(x));
  }
  double worst32 = 0;
  for (const auto& fd : combos) {
    auto f = [&](const DElem& x) {
      return evaluate(fd, {x.coeff(0), x.coeff(1), x.coeff(2), x.coeff(3)});
    };
    for (const DElem& x : points) {
      const DElem direct = f(x);
      const double scale_ref = std::max(1e-30, coeff_norm(direct));
      double prev = 1e300;
      double err32 = 0;
      for (int order : {8, 16, 32}) {
        const double err =
            coeff_norm(sub(cauchy::cauchy_reconstruct(f, J, y0, 1.0, x, order), direct)) /
            scale_ref;
        if (prev <= 1e-10) {
          // already at the floor; no strict-decrease requirement
        } else if (err >= prev) {
          c.fail("error not strictly decreasing at order " + std::to_string(order));
        }
        prev = err;
        if (order == 32) err32 = err;
      }
      worst32 = std::max(worst32, err32);
    }
  }
  c.require(worst32 <= 1e-7, "relative error at order 32: " + std::to_string(worst32));
  std::ostringstream n;
  n << "worst rel err at order 32 = " << worst32;
  c.note(n.str());
  return finish(11, "Cauchy integral quadrature (orders 8/16/32)", c, sw, 30.0);
}

// ---- criterion 12: identity principle ---------------------------------------------------

CriterionResult c12_identity_principle() {
  Stopwatch sw;
  Check c;
  const E J0 = quat13::circle_point(rational(1, 2));
  const auto tp = quat13::circle_torus_point(J0);
  const TFan<R> fan = quat13::fan13<R>();

  // restriction-to-slice matrix on regular polynomials of degree <= 4
  std::map<MultiIndex, int> monomials;
  std::vector<std::map<int, R>> cols;
  for (int k = 0; k <= 4; ++k)
    for (const auto& [k1, k2] : quat13::indices_of_degree(k))
      for (int a = 0; a < 4; ++a) {
        const P col = restrict_to_slice(fan, tp, right_mul(quat13::tk(k1, k2),
                                                           E::unit(H(), a)));
        std::map<int, R> sparse;
        for (const auto& [e, coeff] : col.terms()) {
          const int row = monomial_index(e, monomials);
          for (int s = 0; s < 4; ++s)
            if (sgn(coeff.coeff(s)) != 0) sparse[4 * row + s] = coeff.coeff(s);
        }
        cols.push_back(std::move(sparse));
      }
  using Mat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
  Mat m = Mat::Zero(4 * static_cast<int>(monomials.size()),
                    static_cast<int>(cols.size()));
  for (int cidx = 0; cidx < static_cast<int>(cols.size()); ++cidx)
    for (const auto& [r, v] : cols[static_cast<size_t>(cidx)]) m(r, cidx) = v;
  Eigen::FullPivLU<Mat> lu(m);
  c.require(lu.rank() == static_cast<int>(cols.size()),
            "restriction kernel dimension " +
                std::to_string(static_cast<long>(cols.size()) - lu.rank()));

  RandomSource rnd(122001);
  P f = P::zero(4, H());
  for (int k = 0; k <= 4; ++k)
    for (const auto& ki : quat13::indices_of_degree(k))
      f = add(f, right_mul(quat13::tk(ki.first, ki.second), rnd.element<R>(H(), 3, 3)));
  c.require(quat13::identity_test(f, f, J0).equal, "identical maps reported different");
  const auto pert =
      quat13::identity_test(f, add(f, right_mul(quat13::tk(1, 2), E::unit(H(), 2))), J0);
  c.require(!pert.equal && pert.witness && *pert.witness == KIndex{1, 2},
            "perturbation not flagged with its index");
  c.note("kernel of the 4x35 x 60 restriction matrix is trivial");
  return finish(12, "identity principle: trivial slice kernel, perturbation flagged",
                c, sw);
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite() {
  return {c1_algebra_laws(),     c2_subspace_theorem(), c3_hat_lemma(),
          c4_tk_symbolic(),      c5_lemma_bridge(),     c6_basis_expansion(),
          c7_negative_controls(), c8_representation(),  c9_stems(),
          c10_akbk(),            c11_cauchy(),          c12_identity_principle()};
}

std::vector<CriterionResult> run_float_selftest(double tol) {
  std::vector<CriterionResult> out;
  {
    Stopwatch sw;
    Check c;
    std::mt19937_64 rng(31001);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const AlgebraSpec& h = H();
    for (int it = 0; it < 200; ++it) {
      typename Element<double>::Coeffs a(4), b(4);
      for (int s = 0; s < 4; ++s) {
        a[s] = u(rng);
        b[s] = u(rng);
      }
      const Element<double> x(h, a), y(h, b);
      const auto lhs = conj(mul(x, y));
      const auto rhs = mul(conj(y), conj(x));
      if (coeff_norm(sub(lhs, rhs)) > tol * std::max(1.0, coeff_norm(lhs)))
        c.fail("float antiautomorphism residual above tol");
    }
    std::ostringstream n;
    n << "200 float64 pairs, tol=" << tol;
    c.note(n.str());
    out.push_back(finish(101, "float64 element laws", c, sw));
  }
  {
    Stopwatch sw;
    Check c;
    const TFan<double> fan = build_fan<double>("H:(1,3)");
    std::mt19937_64 rng(31002);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int it = 0; it < 50; ++it) {
      typename Element<double>::Coeffs a(4);
      for (int s = 0; s < 4; ++s) a[s] = u(rng);
      const Element<double> x(H(), a);
      const auto p = decompose(fan, x);
      if (coeff_norm(sub(recompose(fan, p), x)) > tol * std::max(1.0, coeff_norm(x)))
        c.fail("decompose/recompose drift above tol");
    }
    std::ostringstream n;
    n << "50 float64 round trips, tol=" << tol;
    c.note(n.str());
    out.push_back(finish(102, "float64 slice decomposition", c, sw));
  }
  out.push_back(c11_cauchy());
  return out;
}

}  // namespace treg
