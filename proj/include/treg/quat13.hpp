#pragma once

#include <functional>
#include <mutex>
#include <utility>

#include "treg/tregular.hpp"

namespace treg::quat13 {

using RElem = Element<Rational>;
using RPoly = PolyMap<Rational>;
using KIndex = std::pair<int, int>;

inline const AlgebraSpec& H() { return AlgebraSpec::quaternions(); }

inline RElem qelem(Rational a, Rational b, Rational c, Rational d) {
  typename RElem::Coeffs v(4);
  v << std::move(a), std::move(b), std::move(c), std::move(d);
  return RElem(H(), std::move(v));
}

/// The fan C in H over the standard basis, steps (1,3); slice variables are
/// (x_0, x_1, beta) and the torus is the circle in span(j,k).
template <class S = Rational>
TFan<S> fan13() {
  std::vector<Element<S>> v;
  for (int s = 0; s < 4; ++s) v.push_back(Element<S>::unit(H(), s));
  return TFan<S>(make_basis(std::move(v)), {1, 3}, "H:(1,3)");
}

/// Circle point (j (1-t^2) + k (2t)) / (1+t^2); exact for rational t.
inline RElem circle_point(const Rational& t) {
  const Rational den = Rational(1) + t * t;
  return qelem(0, 0, (Rational(1) - t * t) / den, Rational(2) * t / den);
}

inline TorusPoint<Rational> circle_torus_point(const RElem& J) {
  TorusPoint<Rational> tp;
  Eigen::Matrix<Rational, Eigen::Dynamic, 1> blk(2);
  blk << J.coeff(2), J.coeff(3);
  tp.blocks.push_back(std::move(blk));
  return tp;
}

/// J^k for a circle point (J^2 = -1), any integer k.
inline RElem jpow(const RElem& J, int k) {
  const int r = ((k % 4) + 4) % 4;
  switch (r) {
    case 0: return RElem::one(H());
    case 1: return J;
    case 2: return neg(RElem::one(H()));
    default: return neg(J);
  }
}

inline Rational factorial(int n) {
  Rational f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Multi-indices (k_1,k_2) with k_1+k_2 = k, k_1 descending.
inline std::vector<KIndex> indices_of_degree(int k) {
  std::vector<KIndex> out;
  for (int k1 = k; k1 >= 0; --k1) out.push_back({k1, k - k1});
  return out;
}

namespace detail {

inline RPoly linear_right_factor(int k2) {
  // x_1 - (-1)^{k2} i x_0 over the four ambient variables
  RPoly p(4, H());
  p.add_term({0, 1, 0, 0}, RElem::one(H()));
  const Rational sign = (k2 % 2 == 0) ? Rational(-1) : Rational(1);
  p.add_term({1, 0, 0, 0}, qelem(0, sign, 0, 0));
  return p;
}

inline RPoly imaginary_right_factor() {
  // x_0 + j x_2 + k x_3
  RPoly p(4, H());
  p.add_term({1, 0, 0, 0}, RElem::one(H()));
  p.add_term({0, 0, 1, 0}, qelem(0, 0, 1, 0));
  p.add_term({0, 0, 0, 1}, qelem(0, 0, 0, 1));
  return p;
}

}  // namespace detail

/// The homogeneous basis polynomial of multi-index (k_1,k_2):
///   |k| P_k = k_1 P_{(k_1-1,k_2)} (x_1 - (-1)^{k_2} i x_0)
///           + k_2 P_{(k_1,k_2-1)} (x_0 + j x_2 + k x_3),
/// with P_(0,0) = 1 and zero for negative indices. Memoized; exact.
inline RPoly tk(int k1, int k2) {
  if (k1 < 0 || k2 < 0) return RPoly::zero(4, H());
  static std::mutex mu;
  static std::map<KIndex, RPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::function<const RPoly&(int, int)> get = [&](int a, int b) -> const RPoly& {
    auto it = cache.find({a, b});
    if (it != cache.end()) return it->second;
    RPoly p = RPoly::zero(4, H());
    if (a == 0 && b == 0) {
      p = RPoly::constant(4, RElem::one(H()));
    } else {
      if (a > 0)
        p = add(p, scale(product(get(a - 1, b), detail::linear_right_factor(b)),
                         Rational(a)));
      if (b > 0)
        p = add(p, scale(product(get(a, b - 1), detail::imaginary_right_factor()),
                         Rational(b)));
      p = scale(p, rational(1, a + b));
    }
    return cache.emplace(KIndex{a, b}, std::move(p)).first->second;
  };
  return get(k1, k2);
}

/// Per-slice basis polynomial over (x_0, x_1, beta):
///   |k| Q_k = k_1 Q_{(k_1-1,k_2)} z1 + k_2 Q_{(k_1,k_2-1)} z2
/// with the slice variables z1 = x_1 - i x_0 and z2 = beta - J x_0.
inline RPoly fueter_poly(int k1, int k2, const RElem& J) {
  if (k1 < 0 || k2 < 0) return RPoly::zero(3, H());
  RPoly z1(3, H());
  z1.add_term({0, 1, 0}, RElem::one(H()));
  z1.add_term({1, 0, 0}, qelem(0, -1, 0, 0));
  RPoly z2(3, H());
  z2.add_term({0, 0, 1}, RElem::one(H()));
  z2.add_term({1, 0, 0}, neg(J));
  std::map<KIndex, RPoly> memo;
  std::function<const RPoly&(int, int)> get = [&](int a, int b) -> const RPoly& {
    auto it = memo.find({a, b});
    if (it != memo.end()) return it->second;
    RPoly p = RPoly::zero(3, H());
    if (a == 0 && b == 0) {
      p = RPoly::constant(3, RElem::one(H()));
    } else {
      if (a > 0) p = add(p, scale(product(get(a - 1, b), z1), Rational(a)));
      if (b > 0) p = add(p, scale(product(get(a, b - 1), z2), Rational(b)));
      p = scale(p, rational(1, a + b));
    }
    return memo.emplace(KIndex{a, b}, std::move(p)).first->second;
  };
  return get(k1, k2);
}

/// Bridge between the ambient and per-slice families: the restriction of
/// tk(k) to the J-slice equals fueter_poly(k, J) * J^{k_2}.
inline bool restriction_identity(int k1, int k2, const RElem& J) {
  const RPoly lhs = restrict_to_slice(fan13<Rational>(), circle_torus_point(J), tk(k1, k2));
  const RPoly rhs = right_mul(fueter_poly(k1, k2, J), jpow(J, k2));
  return lhs == rhs;
}

struct ExpandResult {
  std::map<KIndex, RElem> coeffs;
  bool exact = false;
  RPoly residual = RPoly::zero(4, H());
};

/// Expansion of a k-homogeneous map in the degree-k basis family:
/// c_k = (1/k!) delta^{(0,k)} P (0). The reconstruction residual is returned;
/// it vanishes exactly when P lies in the span (i.e. P is (1,3)-regular).
inline ExpandResult expand_homogeneous(const RPoly& P, int k) {
  if (!is_homogeneous(P, k))
    throw std::invalid_argument("expand_homogeneous: map is not k-homogeneous");
  ExpandResult out;
  RPoly recon = RPoly::zero(4, H());
  for (const KIndex& ki : indices_of_degree(k)) {
    const RPoly d = apply_delta<Rational>({0, ki.first, ki.second}, P);
    RElem c = evaluate(d, {Rational(0), Rational(0), Rational(0), Rational(0)});
    c = scale(c, Rational(Rational(1) / (factorial(ki.first) * factorial(ki.second))));
    out.coeffs.insert_or_assign(ki, c);
    recon = add(recon, right_mul(tk(ki.first, ki.second), c));
  }
  out.residual = sub(P, recon);
  out.exact = out.residual.empty();
  return out;
}

struct SeriesResult {
  std::map<KIndex, RElem> coeffs;  // over all |k| <= maxdeg
  bool exact = false;
  RPoly residual = RPoly::zero(4, H());
};

/// Taylor-style expansion at a mirror point z0 = a + b i:
/// f(x) = sum_k T_k(x - z0) c_k with c_k = (1/k!) delta^{(0,k)} f (z0).
/// Exact reconstruction for (1,3)-regular polynomial input of degree <=
/// maxdeg; a nonzero residual flags input outside the regular class.
inline SeriesResult series_expand(const RPoly& f, const Rational& a, const Rational& b,
                                  int maxdeg) {
  if (f.nvars() != 4) throw std::invalid_argument("series_expand: ambient maps only");
  SeriesResult out;
  // g(x) := f(x + z0)
  RPoly x0_shift(4, H());
  x0_shift.add_term({1, 0, 0, 0}, RElem::one(H()));
  x0_shift.add_term({0, 0, 0, 0}, RElem::scalar(H(), a));
  RPoly x1_shift(4, H());
  x1_shift.add_term({0, 1, 0, 0}, RElem::one(H()));
  x1_shift.add_term({0, 0, 0, 0}, RElem::scalar(H(), b));
  RPoly g = substitute_real(substitute_real(f, 0, x0_shift), 1, x1_shift);

  RPoly x0_unshift = sub(RPoly::coordinate(4, 0, H()),
                         RPoly::constant(4, RElem::scalar(H(), a)));
  RPoly x1_unshift = sub(RPoly::coordinate(4, 1, H()),
                         RPoly::constant(4, RElem::scalar(H(), b)));
  RPoly recon = RPoly::zero(4, H());
  const std::vector<Rational> origin{Rational(0), Rational(0), Rational(0), Rational(0)};
  for (int k = 0; k <= maxdeg; ++k) {
    for (const KIndex& ki : indices_of_degree(k)) {
      const RPoly d = apply_delta<Rational>({0, ki.first, ki.second}, g);
      RElem c = evaluate(d, origin);
      c = scale(c, Rational(Rational(1) / (factorial(ki.first) * factorial(ki.second))));
      out.coeffs.insert_or_assign(ki, c);
      // T_k(x - z0) c_k
      RPoly shifted = substitute_real(substitute_real(tk(ki.first, ki.second), 0, x0_unshift),
                                      1, x1_unshift);
      recon = add(recon, right_mul(shifted, c));
    }
  }
  out.residual = sub(f, recon);
  out.exact = out.residual.empty();
  return out;
}

/// Complex-coefficient pair with T_k(x) = A_k(z, g) + (j x_2 + k x_3) B_k(z, g)
/// after g := x_2^2 + x_3^2; maps over variables (x_0, x_1, g).
struct AkBk {
  int k1 = 0;
  int k2 = 0;
  PolyMap<Rational> A = PolyMap<Rational>::zero(3, AlgebraSpec::complex());
  PolyMap<Rational> B = PolyMap<Rational>::zero(3, AlgebraSpec::complex());
};

/// Recursion from the structure of tk:
///  |k| A_k = k_1 A_{(k_1-1,k_2)} (x_1 - (-1)^{k_2} i x_0) + k_2 A_{(k_1,k_2-1)} x_0
///          - k_2 conj(B_{(k_1,k_2-1)}) g
///  |k| B_k = k_1 B_{(k_1-1,k_2)} (x_1 - (-1)^{k_2} i x_0) + k_2 conj(A_{(k_1,k_2-1)})
///          + k_2 B_{(k_1,k_2-1)} x_0
inline AkBk akbk(int k1, int k2) {
  const AlgebraSpec& C = AlgebraSpec::complex();
  using CPoly = PolyMap<Rational>;
  auto czero = [&] { return CPoly::zero(3, C); };
  if (k1 < 0 || k2 < 0) return AkBk{k1, k2, czero(), czero()};

  auto conj_poly = [&](const CPoly& p) {
    CPoly out(3, C);
    for (const auto& [e, c] : p.terms()) out.add_term(e, conj(c));
    return out;
  };
  auto lin = [&](int b) {
    CPoly p(3, C);
    p.add_term({0, 1, 0}, Element<Rational>::one(C));
    p.add_term({1, 0, 0},
               Element<Rational>::unit(C, 1, (b % 2 == 0) ? Rational(-1) : Rational(1)));
    return p;
  };
  const CPoly x0 = CPoly::coordinate(3, 0, C);
  const CPoly gamma = CPoly::coordinate(3, 2, C);

  static std::mutex mu;
  static std::map<KIndex, std::pair<CPoly, CPoly>> cache;
  std::lock_guard<std::mutex> lock(mu);
  std::function<const std::pair<CPoly, CPoly>&(int, int)> get =
      [&](int a, int b) -> const std::pair<CPoly, CPoly>& {
    auto it = cache.find({a, b});
    if (it != cache.end()) return it->second;
    std::pair<CPoly, CPoly> p{czero(), czero()};
    if (a == 0 && b == 0) {
      p.first = CPoly::constant(3, Element<Rational>::one(C));
    } else {
      if (a > 0) {
        const auto& prev = get(a - 1, b);
        p.first = add(p.first, scale(product(prev.first, lin(b)), Rational(a)));
        p.second = add(p.second, scale(product(prev.second, lin(b)), Rational(a)));
      }
      if (b > 0) {
        const auto& prev = get(a, b - 1);
        p.first = add(p.first, scale(sub(product(prev.first, x0),
                                         product(conj_poly(prev.second), gamma)),
                                     Rational(b)));
        p.second = add(p.second, scale(add(conj_poly(prev.first), product(prev.second, x0)),
                                       Rational(b)));
      }
      p.first = scale(p.first, rational(1, a + b));
      p.second = scale(p.second, rational(1, a + b));
    }
    return cache.emplace(KIndex{a, b}, std::move(p)).first->second;
  };
  const auto& pr = get(k1, k2);
  return AkBk{k1, k2, pr.first, pr.second};
}

/// Embeds a complex-coefficient map over (x_0,x_1,g) into H over the four
/// ambient variables, substituting g := x_2^2 + x_3^2.
inline RPoly akbk_to_ambient(const PolyMap<Rational>& p) {
  const RPoly in_h = embed_algebra(p, H(), {0, 1});
  // inflate (x0,x1,g) -> (x0,x1,g,unused) then substitute
  RPoly wide(4, H());
  for (const auto& [e, c] : in_h.terms()) wide.add_term({e[0], e[1], e[2], 0}, c);
  RPoly g(4, H());
  g.add_term({0, 0, 2, 0}, RElem::one(H()));
  g.add_term({0, 0, 0, 2}, RElem::one(H()));
  return substitute_real(wide, 2, g);
}

/// The decomposition identity for one multi-index, checked exactly.
inline bool akbk_identity(int k1, int k2) {
  const AkBk ab = akbk(k1, k2);
  RPoly lin(4, H());
  lin.add_term({0, 0, 1, 0}, qelem(0, 0, 1, 0));
  lin.add_term({0, 0, 0, 1}, qelem(0, 0, 0, 1));
  const RPoly rhs = add(akbk_to_ambient(ab.A), product(lin, akbk_to_ambient(ab.B)));
  return tk(k1, k2) == rhs;
}

/// Squared modulus n(T_k(x)) as a rational; the orbit-invariance statement
/// compares it across points sharing (x_0, x_1, x_2^2+x_3^2).
inline Rational tk_squared_modulus(int k1, int k2, const std::vector<Rational>& x) {
  const RElem v = evaluate(tk(k1, k2), x);
  return real_part(norm_form(v));
}

using QuatEvaluator = std::function<RElem(const RElem&)>;

/// General two-slice reconstruction:
///   (J-K)^{-1} (J f(z+bJ) - K f(z+bK)) + I (J-K)^{-1} (f(z+bJ) - f(z+bK)).
inline RElem represent_general(const QuatEvaluator& f, const RElem& I, const RElem& J,
                               const RElem& K, const RElem& z, const Rational& beta) {
  const RElem diff = sub(J, K);
  if (is_zero(diff)) throw std::domain_error("represent_general: J and K must differ");
  const RElem inv = cone_inverse(diff);
  const RElem q1 = f(add(z, scale(J, beta)));
  const RElem q2 = f(add(z, scale(K, beta)));
  return add(mul(inv, sub(mul(J, q1), mul(K, q2))), mul(I, mul(inv, sub(q1, q2))));
}

/// Mirror-pair reconstruction: (1-IJ)/2 f(z+bJ) + (1+IJ)/2 f(z-bJ).
inline RElem represent_two_point(const QuatEvaluator& f, const RElem& I, const RElem& J,
                                 const RElem& z, const Rational& beta) {
  const RElem one = RElem::one(H());
  const Rational half(1, 2);
  const RElem wm = scale(sub(one, mul(I, J)), half);
  const RElem wp = scale(add(one, mul(I, J)), half);
  return add(mul(wm, f(add(z, scale(J, beta)))), mul(wp, f(sub(z, scale(J, beta)))));
}

/// Even/odd stem components over (x_0, x_1, beta):
///   F0 = (f_J(z+bJ) + f_J(z-bJ)) / 2,  F1 = J (f_J(z-bJ) - f_J(z+bJ)) / 2.
struct StemPair {
  RPoly F0 = RPoly::zero(3, H());
  RPoly F1 = RPoly::zero(3, H());
};

inline StemPair extract_stem(const RPoly& f, const RElem& J) {
  const RPoly fj = restrict_to_slice(fan13<Rational>(), circle_torus_point(J), f);
  const RPoly flipped = flip_var_sign(fj, 2);
  const Rational half(1, 2);
  StemPair out;
  out.F0 = scale(add(fj, flipped), half);
  out.F1 = left_mul(J, scale(sub(flipped, fj), half));
  return out;
}

inline RElem stem_value(const StemPair& stem, const Rational& x0, const Rational& x1,
                        const Rational& beta, const RElem& J) {
  const std::vector<Rational> c{x0, x1, beta};
  return add(evaluate(stem.F0, c), mul(J, evaluate(stem.F1, c)));
}

/// Coupled first-order system satisfied by stems of (1,3)-regular maps:
/// (d0 + i d1) F0 - dbeta F1 = 0 and dbeta F0 + (d0 - i d1) F1 = 0.
inline bool stem_system_holds(const StemPair& stem) {
  const RElem i = RElem::unit(H(), 1);
  const RPoly a = sub(add(derivative(stem.F0, 0), left_mul(i, derivative(stem.F0, 1))),
                      derivative(stem.F1, 2));
  const RPoly b = add(derivative(stem.F0, 2),
                      sub(derivative(stem.F1, 0), left_mul(i, derivative(stem.F1, 1))));
  return a.empty() && b.empty();
}

/// Sufficient slice-preservation conditions on an expansion table:
/// c in C when k_2 = 0; c in R when k_1 = 0 != k_2 or k_1 != 0 != k_2 even;
/// c = 0 when k_1 != 0 and k_2 odd.
inline bool classify_slice_preserving(const std::map<KIndex, RElem>& coeffs) {
  for (const auto& [ki, c] : coeffs) {
    const auto [k1, k2] = ki;
    const bool in_c = scalar_is_zero(c.coeff(2)) && scalar_is_zero(c.coeff(3));
    const bool in_r = in_c && scalar_is_zero(c.coeff(1));
    const bool zero = in_r && scalar_is_zero(c.coeff(0));
    if (k2 == 0) {
      if (!in_c) return false;
    } else if (k1 == 0) {
      if (!in_r) return false;
    } else if (k2 % 2 == 0) {
      if (!in_r) return false;
    } else {
      if (!zero) return false;
    }
  }
  return true;
}

struct IdentityResult {
  bool equal = false;
  bool slices_equal = false;
  std::optional<KIndex> witness;  // first differing expansion coefficient
};

/// Polynomial identity principle: equal J0-slices force equal expansion
/// coefficients, hence equal maps, for (1,3)-regular inputs.
inline IdentityResult identity_test(const RPoly& f, const RPoly& g, const RElem& J0) {
  IdentityResult out;
  const auto tp = circle_torus_point(J0);
  const TFan<Rational> fan = fan13<Rational>();
  out.slices_equal =
      restrict_to_slice(fan, tp, f) == restrict_to_slice(fan, tp, g);
  const RPoly diff = sub(f, g);
  const std::vector<Rational> origin{Rational(0), Rational(0), Rational(0), Rational(0)};
  for (int k = 0; k <= diff.max_degree() && !out.witness; ++k)
    for (const KIndex& ki : indices_of_degree(k)) {
      const RElem c =
          evaluate(apply_delta<Rational>({0, ki.first, ki.second}, diff), origin);
      if (!is_zero(c)) {
        out.witness = ki;
        break;
      }
    }
  out.equal = out.slices_equal && !out.witness;
  return out;
}

}  // namespace treg::quat13
