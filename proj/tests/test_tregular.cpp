#include "doctest.h"
#include "support.hpp"

#include "treg/fan_names.hpp"
#include "treg/quat13.hpp"

using namespace treg;
using R = Rational;
using E = Element<R>;
using P = PolyMap<R>;

namespace {

const AlgebraSpec& H() { return AlgebraSpec::quaternions(); }

E qe(long a, long b, long c, long d) {
  typename E::Coeffs v(4);
  v << R(a), R(b), R(c), R(d);
  return E(H(), std::move(v));
}

P identity_map() {
  P f(4, H());
  f.add_term({1, 0, 0, 0}, E::one(H()));
  f.add_term({0, 1, 0, 0}, qe(0, 1, 0, 0));
  f.add_term({0, 0, 1, 0}, qe(0, 0, 1, 0));
  f.add_term({0, 0, 0, 1}, qe(0, 0, 0, 1));
  return f;
}

// Fueter variables x_l - e_l x_0 and a symmetrized degree-2 product; all of
// them lie in the kernel of the (3)-fan operator.
std::vector<P> fueter_regular_corpus() {
  std::vector<P> out;
  for (int l = 1; l <= 3; ++l) {
    P f(4, H());
    MultiIndex e(4, 0);
    e[static_cast<size_t>(l)] = 1;
    f.add_term(e, E::one(H()));
    f.add_term({1, 0, 0, 0}, E::unit(H(), l, R(-1)));
    out.push_back(std::move(f));
  }
  out.push_back(scale(add(product(out[0], out[1]), product(out[1], out[0])),
                      rational(1, 2)));
  out.push_back(P::constant(4, qe(1, -2, 3, 5)));
  return out;
}

}  // namespace

TEST_CASE("tk maps are certified symbolically on the (1,3) fan") {
  const TFan<R> fan = build_fan<R>("H:(1,3)");
  const auto grid = torus_grid(fan, 8);
  CHECK(grid.size() == 8);
  const auto rep = check_regular(fan, quat13::tk(1, 1), grid);
  CHECK(rep.verdict == RegularityVerdict::regular_symbolic);
  CHECK(rep.symbolic_supported);
  CHECK(rep.samples.size() == 8);
  for (const auto& s : rep.samples) CHECK(s.zero);
}

TEST_CASE("identity map is not (1,3)-regular: residual -1") {
  const TFan<R> fan = build_fan<R>("H:(1,3)");
  const auto rep = check_regular(fan, identity_map(), torus_grid(fan, 3));
  REQUIRE(rep.verdict == RegularityVerdict::counterexample);
  REQUIRE(rep.counterexample >= 0);
  const auto& bad = rep.samples[static_cast<size_t>(rep.counterexample)];
  CHECK(bad.residual == P::constant(3, qe(-1, 0, 0, 0)));
}

TEST_CASE("Fueter negative controls on the (3) fan") {
  const TFan<R> fan = build_fan<R>("H:(3)");
  const auto grid = torus_grid(fan, 1);
  for (auto [k1, k2] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 1}}) {
    const auto rep = check_regular(fan, quat13::tk(k1, k2), grid);
    CHECK(rep.verdict == RegularityVerdict::counterexample);
  }
  // but the pure zeta powers are Fueter-regular
  for (auto [k1, k2] : {std::pair{1, 0}, std::pair{2, 0}}) {
    const auto rep = check_regular(fan, quat13::tk(k1, k2), grid);
    CHECK(rep.verdict == RegularityVerdict::regular_symbolic);
  }
}

TEST_CASE("slice-regularity negative controls on the (0,3) fan") {
  const TFan<R> fan = build_fan<R>("H:(0,3)");
  CHECK_FALSE(symbolic_certifiable(fan));
  const auto grid = torus_grid(fan, 3);
  for (int k = 1; k <= 2; ++k)
    for (const auto& [k1, k2] : quat13::indices_of_degree(k)) {
      const auto rep = check_regular(fan, quat13::tk(k1, k2), grid);
      CHECK(rep.verdict == RegularityVerdict::counterexample);
    }
  // and a genuinely slice-regular map: x^2
  P x2 = product(identity_map(), identity_map());
  const auto rep = check_regular(fan, x2, grid);
  CHECK(rep.verdict == RegularityVerdict::regular_on_samples);
}

TEST_CASE("symbolic residual matches per-point residuals after clearing denominators") {
  const TFan<R> fan = build_fan<R>("H:(1,3)");
  RandomSource rnd(53);
  for (int it = 0; it < 6; ++it) {
    const P f = rnd.polymap<R>(H(), 4, 4, 6);
    const P sym = symbolic_cr_residual(fan, f);
    int hom = 0;
    for (const auto& [e, c] : f.terms()) hom = std::max(hom, e[2] + e[3]);
    for (const R& t : {rational(0), rational(1, 2), rational(-3, 4)}) {
      P tsub(4, H());
      tsub.add_term({0, 0, 0, 0}, E::scalar(H(), t));
      const P at_t = substitute_real(sym, 3, tsub);
      const E J = quat13::circle_point(t);
      const P pt = apply_cr(fan, quat13::circle_torus_point(J),
                            restrict_to_slice(fan, quat13::circle_torus_point(J), f));
      R denpow(1);
      const R s = R(1) + t * t;
      for (int i = 0; i <= hom; ++i) denpow *= s;
      // lift the 3-variable pointwise residual into the 4-variable ring
      P lifted(4, H());
      for (const auto& [e, c] : pt.terms()) lifted.add_term({e[0], e[1], e[2], 0}, c);
      CHECK(at_t == scale(lifted, denpow));
    }
  }
}

TEST_CASE("fan equivalences on a shared corpus") {
  std::vector<P> corpus;
  for (int k = 0; k <= 3; ++k)
    for (const auto& [k1, k2] : quat13::indices_of_degree(k))
      corpus.push_back(quat13::tk(k1, k2));
  for (const P& f : fueter_regular_corpus()) corpus.push_back(f);
  corpus.push_back(identity_map());
  RandomSource rnd(61);
  for (int it = 0; it < 5; ++it) corpus.push_back(rnd.polymap<R>(H(), 4, 3, 5));

  const TFan<R> f3 = build_fan<R>("H:(3)");
  const TFan<R> f23 = build_fan<R>("H:(2,3)");
  const TFan<R> f123 = build_fan<R>("H:(1,2,3)");
  const TFan<R> f0123 = build_fan<R>("H:(0,1,2,3)");
  const TFan<R> f13 = build_fan<R>("H:(1,3)");
  const TFan<R> f013 = build_fan<R>("H:(0,1,3)");
  CHECK(symbolic_certifiable(f23));
  CHECK(symbolic_certifiable(f013));

  auto regular = [](const TFan<R>& fan, const P& f) {
    const auto rep = check_regular(fan, f, torus_grid(fan, 3));
    return rep.verdict != RegularityVerdict::counterexample;
  };
  for (const P& f : corpus) {
    const bool fueter = regular(f3, f);
    CHECK(regular(f23, f) == fueter);
    CHECK(regular(f123, f) == fueter);
    CHECK(regular(f0123, f) == fueter);
    const bool r13 = regular(f13, f);
    CHECK(regular(f013, f) == r13);
  }
}

TEST_CASE("slice preservation checks") {
  const TFan<R> fan = build_fan<R>("H:(1,3)");
  const auto grid = torus_grid(fan, 5);
  CHECK(check_slice_preserving(fan, quat13::tk(2, 0), grid).preserving);
  CHECK(check_slice_preserving(fan, quat13::tk(0, 2), grid).preserving);
  const auto bad = check_slice_preserving(fan, P::constant(4, qe(0, 0, 0, 1)), grid);
  CHECK_FALSE(bad.preserving);
  REQUIRE_FALSE(bad.violations.empty());
  CHECK(bad.violations[0].coefficient == qe(0, 0, 0, 1));
  // T_(0,1) restricts to x_0 + beta J, which stays inside span(1, J)
  CHECK(check_slice_preserving(fan, quat13::tk(0, 1), grid).preserving);
  // T_(1,1) leaves the slice: at x_0 = beta = 1, x_1 = 0, J = j its value is -k
  CHECK_FALSE(check_slice_preserving(fan, quat13::tk(1, 1), grid).preserving);
}

TEST_CASE("stem parity verification") {
  StemFunction<R> stem;
  stem.tau = 1;
  stem.mirror_vars = 2;
  P f0(3, H());
  f0.add_term({1, 0, 0}, E::one(H()));  // x_0, even in beta
  P f1(3, H());
  f1.add_term({0, 0, 1}, E::one(H()));  // beta, odd
  stem.components = {f0, f1};
  CHECK_FALSE(verify_stem_parity(stem).has_value());

  P f1bad(3, H());
  f1bad.add_term({0, 0, 2}, E::one(H()));  // beta^2 in the odd slot
  StemFunction<R> bad{1, 2, {f0, f1bad}};
  auto v = verify_stem_parity(bad);
  REQUIRE(v.has_value());
  CHECK(v->K == 1);
  CHECK(v->h == 1);
}

TEST_CASE("induced function of the basic stem is x0 + J beta") {
  const TFan<R> fan = build_fan<R>("H:(1,3)");
  StemFunction<R> stem;
  stem.tau = 1;
  stem.mirror_vars = 2;
  P f0(3, H());
  f0.add_term({1, 0, 0}, E::one(H()));
  P f1(3, H());
  f1.add_term({0, 0, 1}, E::one(H()));
  stem.components = {f0, f1};
  StemEvaluator<R> eval(fan, stem);
  RandomSource rnd(71);
  for (const auto& J : torus_grid(fan, 4)) {
    SlicePoint<R> p{qe(rnd.integer(-4, 4), rnd.integer(-4, 4), 0, 0),
                    {R(rnd.integer(0, 4))},
                    J};
    const E x = recompose(fan, p);
    // x_0 plus the imaginary block of x
    const E expect = add(E::scalar(H(), x.coeff(0)),
                         add(E::unit(H(), 2, x.coeff(2)), E::unit(H(), 3, x.coeff(3))));
    CHECK(eval(p) == expect);
  }
}

TEST_CASE("tau = 2 stems: nested left products") {
  const TFan<R> fan = build_fan<R>("H:(0,1,3)");
  StemFunction<R> stem;
  stem.tau = 2;
  stem.mirror_vars = 1;
  const P zero = P::zero(3, H());
  P f12(3, H());
  f12.add_term({0, 1, 1}, E::one(H()));  // beta_1 beta_2
  stem.components = {zero, zero, zero, f12};
  StemEvaluator<R> eval(fan, stem);
  for (const auto& J : torus_grid(fan, 3)) {
    SlicePoint<R> p{qe(2, 0, 0, 0), {R(3), R(5)}, J};
    const E j1 = torus_element(fan, J, 1);
    const E j2 = torus_element(fan, J, 2);
    CHECK(eval(p) == mul(j1, mul(j2, E::scalar(H(), R(15)))));
  }
}

TEST_CASE("nested products honor the displayed nesting in octonions") {
  std::vector<Element<R>> ov;
  const AlgebraSpec& O = AlgebraSpec::octonions();
  for (int s = 0; s < 8; ++s) ov.push_back(Element<R>::unit(O, s));
  const TFan<R> fan(make_basis(std::move(ov)), {0, 1, 2, 7}, "O:(0,1,2,7)");
  StemFunction<R> stem;
  stem.tau = 3;
  stem.mirror_vars = 1;
  const P zero = P::zero(4, O);
  std::vector<P> comps(8, zero);
  comps[7] = P::constant(4, Element<R>::unit(O, 4));  // F_{123} = l
  stem.components = comps;
  const auto grid = torus_grid(fan, 2);
  for (const auto& J : grid) {
    SlicePoint<R> p{Element<R>::scalar(O, R(1)), {R(1), R(1), R(1)}, J};
    const E j1 = torus_element(fan, J, 1);
    const E j2 = torus_element(fan, J, 2);
    const E j3 = torus_element(fan, J, 3);
    const E nested = mul(j1, mul(j2, mul(j3, Element<R>::unit(O, 4))));
    CHECK(induce_value(fan, stem, p) == nested);
  }
}

TEST_CASE("representative invariance detects parity violations") {
  const TFan<R> fan = build_fan<R>("H:(1,3)");
  RandomSource rnd(83);
  // valid stems: even/odd split of a random slice map
  for (int it = 0; it < 3; ++it) {
    const P g = rnd.polymap<R>(H(), 3, 4, 5);
    const P even = scale(add(g, flip_var_sign(g, 2)), rational(1, 2));
    const P odd = scale(sub(g, flip_var_sign(g, 2)), rational(1, 2));
    StemFunction<R> stem{1, 2, {even, odd}};
    CHECK_FALSE(verify_stem_parity(stem).has_value());
    for (const auto& J : torus_grid(fan, 2)) {
      SlicePoint<R> p{qe(rnd.integer(-3, 3), rnd.integer(-3, 3), 0, 0),
                      {R(rnd.integer(1, 4))},
                      J};
      CHECK(representative_invariance(fan, stem, p, 1));
    }
  }
  // parity violation: even component in the odd slot is detected
  P f1bad(3, H());
  f1bad.add_term({0, 0, 2}, E::one(H()));
  StemFunction<R> bad{1, 2, {P::zero(3, H()), f1bad}};
  SlicePoint<R> p{qe(1, 0, 0, 0), {R(2)}, canonical_torus_point(fan)};
  CHECK_FALSE(representative_invariance(fan, bad, p, 1));
  CHECK_THROWS_AS((void)StemEvaluator<R>(fan, bad), std::invalid_argument);
}

TEST_CASE("tau = 0 fans: every map is induced by its own stem") {
  const TFan<R> fan = build_fan<R>("H:(3)");
  RandomSource rnd(97);
  const P f = rnd.polymap<R>(H(), 4, 3, 6);
  StemFunction<R> stem{0, 4, {f}};
  CHECK_FALSE(verify_stem_parity(stem).has_value());
  for (int it = 0; it < 5; ++it) {
    const E x = rnd.element<R>(H());
    SlicePoint<R> p{x, {}, {}};
    CHECK(induce_value(fan, stem, p) ==
          evaluate(f, {x.coeff(0), x.coeff(1), x.coeff(2), x.coeff(3)}));
  }
}
