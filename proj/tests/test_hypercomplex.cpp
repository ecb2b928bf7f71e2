#include "doctest.h"
#include "support.hpp"

#include "treg/hypercomplex.hpp"

using namespace treg;
using R = Rational;
using E = Element<R>;

namespace {
std::vector<E> h_basis() {
  const AlgebraSpec& h = AlgebraSpec::quaternions();
  return {E::one(h), E::unit(h, 1), E::unit(h, 2), E::unit(h, 3)};
}
}  // namespace

TEST_CASE("verify_basis accepts the quaternion basis") {
  CHECK_FALSE(verify_basis(h_basis()).has_value());
}

TEST_CASE("verify_basis reports the violated condition") {
  const AlgebraSpec& h = AlgebraSpec::quaternions();
  // repeated vector: t(v_1 v_2^c) = 2
  auto bad = verify_basis<R>({E::one(h), E::unit(h, 1), E::unit(h, 1)});
  REQUIRE(bad.has_value());
  CHECK(bad->cond == BasisCheck::pair_trace_nonzero);
  CHECK(bad->s == 1);
  CHECK(bad->t == 2);

  const AlgebraSpec& cl = AlgebraSpec::clifford(3);
  // e_{123} is not in the sphere (its trace is 2 e_{123})
  auto bad2 = verify_basis<R>({E::one(cl), E::unit(cl, 0b001), E::unit(cl, 0b111)});
  REQUIRE(bad2.has_value());
  CHECK(bad2->cond == BasisCheck::trace_nonzero);
  CHECK(bad2->s == 2);

  auto bad3 = verify_basis<R>({E::unit(cl, 0b001)});
  REQUIRE(bad3.has_value());
  CHECK(bad3->cond == BasisCheck::too_short);
}

TEST_CASE("hat extension: m = 2 succeeds with v_hat = ij = k") {
  const AlgebraSpec& h = AlgebraSpec::quaternions();
  auto basis = make_basis<R>({E::one(h), E::unit(h, 1), E::unit(h, 2)});
  auto out = hat_extension(basis);
  REQUIRE(out.ok());
  CHECK(out.hat == E::unit(h, 3));
  CHECK(out.extended->count() == 4);
  CHECK_FALSE(verify_basis(out.extended->vectors).has_value());
}

TEST_CASE("hat extension: m = 3,4,5 fail with the right condition") {
  // m = 3: v_hat is conj-invariant, so its trace is nonzero
  auto p3 = make_paravectors<R>(3);
  auto r3 = hat_extension(p3);
  REQUIRE_FALSE(r3.ok());
  CHECK(r3.violation->cond == BasisCheck::trace_nonzero);
  CHECK(r3.violation->s == 4);

  auto p4 = make_paravectors<R>(4);
  auto r4 = hat_extension(p4);
  REQUIRE_FALSE(r4.ok());
  CHECK(r4.violation->cond == BasisCheck::trace_nonzero);

  // m = 5: v_hat is in the sphere but commutes with each v_l
  auto p5 = make_paravectors<R>(5);
  auto r5 = hat_extension(p5);
  REQUIRE_FALSE(r5.ok());
  CHECK(r5.violation->cond == BasisCheck::pair_trace_nonzero);
  CHECK(r5.violation->t == 6);
}

TEST_CASE("hat extension: m = 6 gives a verified basis of dimension 8") {
  auto p6 = make_paravectors<R>(6);
  auto r6 = hat_extension(p6);
  REQUIRE(r6.ok());
  CHECK(r6.extended->count() == 8);
  const AlgebraSpec& cl = AlgebraSpec::clifford(6);
  CHECK(r6.hat == E::unit(cl, 0b111111));
  // oracle: e_1 ... e_6 by explicit sorting
  auto prod = oracle::blade_mul({1, 2, 3, 4, 5, 6}, {});
  CHECK(prod.sign == 1);
}

TEST_CASE("hat extension refuses nonassociative algebras") {
  const AlgebraSpec& o = AlgebraSpec::octonions();
  std::vector<E> v{E::one(o), E::unit(o, 1), E::unit(o, 2)};
  CHECK_THROWS_AS((void)hat_extension(make_basis(std::move(v))), std::domain_error);
}

TEST_CASE("paravector and V_h bases") {
  CHECK(make_paravectors<R>(2).count() == 3);
  CHECK(make_paravectors<R>(1).count() == 2);
  CHECK(make_paravectors<R>(5).count() == 6);

  CHECK(make_vh<R>(5, 5).count() == 2);      // (1, e_{12345})
  CHECK(make_vh<R>(5, 1).count() == 6);      // paravectors
  CHECK(make_vh<R>(6, 5).count() == 7);      // C(6,5) + 1
  CHECK_THROWS_AS((void)make_vh<R>(6, 3), std::invalid_argument);  // 3 != 1 mod 4
  CHECK_THROWS_AS((void)make_vh<R>(2, 5), std::invalid_argument);
}

TEST_CASE("h_of_n formula") {
  CHECK(h_of_n(8) == 5);
  CHECK(h_of_n(1) == 1);
  CHECK(h_of_n(14) == 9);
  CHECK(h_of_n(6) == 5);
}

TEST_CASE("trace form equals twice the Euclidean inner product on subspaces") {
  RandomSource rnd(41);
  auto check_subspace = [&](const HypercomplexBasis<R>& basis) {
    auto completed = complete_basis(basis);
    for (int it = 0; it < 20; ++it) {
      const E x = rnd.span_element(basis.vectors);
      const E y = rnd.span_element(basis.vectors);
      const R ip = inner_product_in(completed, x, y);
      CHECK(trace(mul(x, conj(y))) == E::scalar(*basis.algebra, R(2) * ip));
      CHECK(trace(mul(y, conj(x))) == E::scalar(*basis.algebra, R(2) * ip));
      const R nx = inner_product_in(completed, x, x);
      CHECK(norm_form(x) == E::scalar(*basis.algebra, nx));
      CHECK(norm_form(conj(x)) == E::scalar(*basis.algebra, nx));
      if (!is_real(x)) CHECK(in_quadratic_cone(x));
    }
  };
  check_subspace(make_paravectors<R>(4));
  check_subspace(make_vh<R>(5, 5));
  const AlgebraSpec& h = AlgebraSpec::quaternions();
  check_subspace(make_basis(h_basis()));
  const AlgebraSpec& o = AlgebraSpec::octonions();
  std::vector<E> ov;
  for (int s = 0; s < 8; ++s) ov.push_back(E::unit(o, s));
  check_subspace(make_basis(std::move(ov)));
}

TEST_CASE("hat extension agrees with re-verification") {
  for (int m = 2; m <= 6; ++m) {
    auto out = hat_extension(make_paravectors<R>(m));
    CHECK(out.ok() == (m % 4 == 2));
  }
}
