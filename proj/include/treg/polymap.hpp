#pragma once

#include <functional>
#include <map>
#include <vector>

#include "treg/fan.hpp"

namespace treg {

/// Exponent vector over the real coordinates in play.
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& e) {
  int d = 0;
  for (int k : e) d += k;
  return d;
}

/// Polynomial map R^nvars -> A, stored as a sorted sparse exponent table.
/// Convention: f(x) = sum_e x^e * c_e with the algebra coefficient on the
/// right of the real monomial; zero coefficients are never stored.
template <class S>
class PolyMap {
 public:
  using Terms = std::map<MultiIndex, Element<S>>;

  PolyMap(int nvars, const AlgebraSpec& alg) : nvars_(nvars), alg_(&alg) {
    if (nvars < 0) throw std::invalid_argument("PolyMap: negative variable count");
  }

  static PolyMap zero(int nvars, const AlgebraSpec& alg) { return PolyMap(nvars, alg); }

  static PolyMap constant(int nvars, Element<S> c) {
    PolyMap f(nvars, c.algebra());
    f.add_term(MultiIndex(static_cast<size_t>(nvars), 0), std::move(c));
    return f;
  }

  static PolyMap monomial(int nvars, MultiIndex e, Element<S> c) {
    PolyMap f(nvars, c.algebra());
    f.add_term(std::move(e), std::move(c));
    return f;
  }

  /// The coordinate function x_var (times the identity).
  static PolyMap coordinate(int nvars, int var, const AlgebraSpec& alg) {
    MultiIndex e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(var)] = 1;
    return monomial(nvars, std::move(e), Element<S>::one(alg));
  }

  int nvars() const { return nvars_; }
  const AlgebraSpec& algebra() const { return *alg_; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  void add_term(MultiIndex e, Element<S> c) {
    if (static_cast<int>(e.size()) != nvars_)
      throw std::invalid_argument("PolyMap: exponent length != nvars");
    for (int k : e)
      if (k < 0) throw std::invalid_argument("PolyMap: negative exponent");
    detail::require_same(*alg_, c.algebra());
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!element_exact_zero(c)) terms_.emplace(std::move(e), std::move(c));
      return;
    }
    it->second = add(it->second, c);
    if (element_exact_zero(it->second)) terms_.erase(it);
  }

  int max_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  int degree_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[static_cast<size_t>(var)]);
    return d;
  }

 private:
  static bool element_exact_zero(const Element<S>& c) {
    for (int s = 0; s < c.dim(); ++s)
      if (!scalar_is_exact_zero(c.coeff(s))) return false;
    return true;
  }

  int nvars_;
  const AlgebraSpec* alg_;
  Terms terms_;
};

template <class S>
bool operator==(const PolyMap<S>& f, const PolyMap<S>& g) {
  if (f.nvars() != g.nvars() || &f.algebra() != &g.algebra()) return false;
  if (f.term_count() != g.term_count()) return false;
  auto it = f.terms().begin();
  auto jt = g.terms().begin();
  for (; it != f.terms().end(); ++it, ++jt)
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  return true;
}

template <class S>
bool operator!=(const PolyMap<S>& f, const PolyMap<S>& g) {
  return !(f == g);
}

namespace detail {
template <class S>
void require_compatible(const PolyMap<S>& f, const PolyMap<S>& g) {
  if (f.nvars() != g.nvars())
    throw std::invalid_argument("PolyMap: variable-count mismatch");
  require_same(f.algebra(), g.algebra());
}
}  // namespace detail

template <class S>
PolyMap<S> add(const PolyMap<S>& f, const PolyMap<S>& g) {
  detail::require_compatible(f, g);
  PolyMap<S> out = f;
  for (const auto& [e, c] : g.terms()) out.add_term(e, c);
  return out;
}

template <class S>
PolyMap<S> neg(const PolyMap<S>& f) {
  PolyMap<S> out(f.nvars(), f.algebra());
  for (const auto& [e, c] : f.terms()) out.add_term(e, neg(c));
  return out;
}

template <class S>
PolyMap<S> sub(const PolyMap<S>& f, const PolyMap<S>& g) {
  return add(f, neg(g));
}

template <class S>
PolyMap<S> scale(const PolyMap<S>& f, const S& k) {
  PolyMap<S> out(f.nvars(), f.algebra());
  for (const auto& [e, c] : f.terms()) out.add_term(e, scale(c, k));
  return out;
}

/// Pointwise left multiplication by a constant: x -> a * f(x).
template <class S>
PolyMap<S> left_mul(const Element<S>& a, const PolyMap<S>& f) {
  PolyMap<S> out(f.nvars(), f.algebra());
  for (const auto& [e, c] : f.terms()) out.add_term(e, mul(a, c));
  return out;
}

/// Pointwise right multiplication by a constant: x -> f(x) * a.
template <class S>
PolyMap<S> right_mul(const PolyMap<S>& f, const Element<S>& a) {
  PolyMap<S> out(f.nvars(), f.algebra());
  for (const auto& [e, c] : f.terms()) out.add_term(e, mul(c, a));
  return out;
}

/// Pointwise product x -> f(x) g(x). Real monomials are central, so the
/// coefficient of x^{e+e'} is c_e d_{e'} with f's coefficient on the left.
template <class S>
PolyMap<S> product(const PolyMap<S>& f, const PolyMap<S>& g) {
  detail::require_compatible(f, g);
  PolyMap<S> out(f.nvars(), f.algebra());
  for (const auto& [e, c] : f.terms())
    for (const auto& [e2, c2] : g.terms()) {
      MultiIndex sum = e;
      for (size_t i = 0; i < sum.size(); ++i) sum[i] += e2[i];
      out.add_term(std::move(sum), mul(c, c2));
    }
  return out;
}

/// Left-to-right product of several factors; the association that all
/// constructions in nonassociative algebras use.
template <class S>
PolyMap<S> product_left_to_right(const std::vector<PolyMap<S>>& factors) {
  if (factors.empty()) throw std::invalid_argument("product_left_to_right: no factors");
  PolyMap<S> out = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) out = product(out, factors[i]);
  return out;
}

template <class S>
PolyMap<S> operator+(const PolyMap<S>& f, const PolyMap<S>& g) { return add(f, g); }
template <class S>
PolyMap<S> operator-(const PolyMap<S>& f, const PolyMap<S>& g) { return sub(f, g); }
template <class S>
PolyMap<S> operator-(const PolyMap<S>& f) { return neg(f); }
template <class S>
PolyMap<S> operator*(const PolyMap<S>& f, const PolyMap<S>& g) { return product(f, g); }

template <class S>
PolyMap<S> pow(const PolyMap<S>& f, int k) {
  if (k < 0) throw std::invalid_argument("pow: negative exponent");
  PolyMap<S> out = PolyMap<S>::constant(f.nvars(), Element<S>::one(f.algebra()));
  for (int i = 0; i < k; ++i) out = product(out, f);
  return out;
}

template <class S>
Element<S> evaluate(const PolyMap<S>& f, const std::vector<S>& x) {
  if (static_cast<int>(x.size()) != f.nvars())
    throw std::invalid_argument("evaluate: coordinate count mismatch");
  Element<S> acc = Element<S>::zero(f.algebra());
  for (const auto& [e, c] : f.terms()) {
    S m(1);
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) m *= x[i];
    acc = add(acc, scale(c, m));
  }
  return acc;
}

template <class S>
PolyMap<S> derivative(const PolyMap<S>& f, int var) {
  PolyMap<S> out(f.nvars(), f.algebra());
  for (const auto& [e, c] : f.terms()) {
    const int k = e[static_cast<size_t>(var)];
    if (k == 0) continue;
    MultiIndex e2 = e;
    e2[static_cast<size_t>(var)] -= 1;
    out.add_term(std::move(e2), scale(c, S(k)));
  }
  return out;
}

/// Substitution x_var := r(x) for a replacement with real (identity-line)
/// coefficients; centrality of the real replacement keeps the result
/// well-defined over noncommutative coefficients.
template <class S>
PolyMap<S> substitute_real(const PolyMap<S>& f, int var, const PolyMap<S>& r) {
  if (r.nvars() != f.nvars())
    throw std::invalid_argument("substitute_real: variable-count mismatch");
  for (const auto& [e, c] : r.terms())
    if (!is_real(c)) throw std::invalid_argument("substitute_real: replacement not real");
  const int dmax = f.degree_in(var);
  std::vector<PolyMap<S>> rpow{PolyMap<S>::constant(f.nvars(), Element<S>::one(f.algebra()))};
  for (int k = 1; k <= dmax; ++k) rpow.push_back(product(rpow.back(), r));
  PolyMap<S> out(f.nvars(), f.algebra());
  for (const auto& [e, c] : f.terms()) {
    const int k = e[static_cast<size_t>(var)];
    MultiIndex rest = e;
    rest[static_cast<size_t>(var)] = 0;
    PolyMap<S> term = PolyMap<S>::monomial(f.nvars(), std::move(rest), c);
    // real powers are central; multiply on the left
    out = add(out, product(rpow[static_cast<size_t>(k)], term));
  }
  return out;
}

template <class S>
PolyMap<S> flip_var_sign(const PolyMap<S>& f, int var) {
  PolyMap<S> out(f.nvars(), f.algebra());
  for (const auto& [e, c] : f.terms()) {
    if (e[static_cast<size_t>(var)] % 2 == 0)
      out.add_term(e, c);
    else
      out.add_term(e, neg(c));
  }
  return out;
}

template <class S>
PolyMap<S> homogeneous_component(const PolyMap<S>& f, int k) {
  PolyMap<S> out(f.nvars(), f.algebra());
  for (const auto& [e, c] : f.terms())
    if (total_degree(e) == k) out.add_term(e, c);
  return out;
}

template <class S>
bool is_homogeneous(const PolyMap<S>& f, int k) {
  for (const auto& [e, c] : f.terms())
    if (total_degree(e) != k) return false;
  return true;
}

/// Zero test: table emptiness on the exact backend, max coefficient norm
/// below tolerance on the float backend.
template <class S>
bool is_zero(const PolyMap<S>& f, double tol = kDefaultTol) {
  if (ScalarInfo<S>::is_exact) return f.empty();
  for (const auto& [e, c] : f.terms())
    if (coeff_norm(c) > tol) return false;
  return true;
}

template <class S>
double coeff_norm(const PolyMap<S>& f) {
  double best = 0;
  for (const auto& [e, c] : f.terms()) best = std::max(best, coeff_norm(c));
  return best;
}

/// Scalar-backend conversion (exact -> float64 for quadrature paths).
template <class To, class From>
PolyMap<To> convert_scalar(const PolyMap<From>& f) {
  PolyMap<To> out(f.nvars(), f.algebra());
  for (const auto& [e, c] : f.terms()) {
    typename Element<To>::Coeffs cc(c.dim());
    for (int s = 0; s < c.dim(); ++s) cc[s] = To(to_double(c.coeff(s)));
    out.add_term(e, Element<To>(f.algebra(), std::move(cc)));
  }
  return out;
}

/// Coefficient-wise algebra embedding through a basis index map (e.g. C into
/// the complex line of H).
template <class S>
PolyMap<S> embed_algebra(const PolyMap<S>& f, const AlgebraSpec& target,
                         const std::vector<int>& index_map) {
  PolyMap<S> out(f.nvars(), target);
  for (const auto& [e, c] : f.terms()) {
    Element<S> t = Element<S>::zero(target);
    for (int s = 0; s < c.dim(); ++s) {
      typename Element<S>::Coeffs cc = t.coeffs();
      cc[index_map.at(static_cast<size_t>(s))] += c.coeff(s);
      t = Element<S>(target, std::move(cc));
    }
    out.add_term(e, std::move(t));
  }
  return out;
}

/// Restriction of an ambient map (fan-basis coordinates x_0..x_n) to the
/// slice of J: substitute x_l := beta_h * (J_h)_l blockwise. Result variables
/// are (x_0..x_{t_0}, beta_1..beta_tau).
template <class S>
PolyMap<S> restrict_to_slice(const TFan<S>& fan, const TorusPoint<S>& J,
                             const PolyMap<S>& f) {
  if (f.nvars() != fan.n() + 1)
    throw std::invalid_argument("restrict_to_slice: map is not over the fan's ambient space");
  if (J.tau() != fan.tau())
    throw std::invalid_argument("restrict_to_slice: torus point does not match fan");
  const int sv = fan.slice_vars();
  PolyMap<S> out(sv, f.algebra());
  for (const auto& [e, c] : f.terms()) {
    MultiIndex se(static_cast<size_t>(sv), 0);
    S factor(1);
    for (int s = 0; s <= fan.t0(); ++s) se[static_cast<size_t>(s)] = e[static_cast<size_t>(s)];
    for (int h = 1; h <= fan.tau(); ++h) {
      const int b = fan.block_begin(h);
      int bexp = 0;
      for (int s = b; s <= fan.block_end(h); ++s) {
        const int k = e[static_cast<size_t>(s)];
        bexp += k;
        const S& coord = J.blocks[static_cast<size_t>(h) - 1][s - b];
        for (int i = 0; i < k; ++i) factor *= coord;
      }
      se[static_cast<size_t>(fan.t0() + h)] = bexp;
    }
    out.add_term(std::move(se), scale(c, factor));
  }
  return out;
}

/// J-Cauchy-Riemann operator on slice maps:
/// d/dx_0 + v_1 d/dx_1 + ... + v_{t_0} d/dx_{t_0} + J_1 d/dbeta_1 + ... (left
/// multiplication by the basis elements).
template <class S>
PolyMap<S> apply_cr(const TFan<S>& fan, const TorusPoint<S>& J, const PolyMap<S>& f) {
  if (f.nvars() != fan.slice_vars())
    throw std::invalid_argument("apply_cr: map is not over the slice variables");
  PolyMap<S> out = derivative(f, 0);
  for (int s = 1; s <= fan.t0(); ++s)
    out = add(out, left_mul(fan.v(s), derivative(f, s)));
  for (int h = 1; h <= fan.tau(); ++h)
    out = add(out, left_mul(torus_element(fan, J, h), derivative(f, fan.t0() + h)));
  return out;
}

/// Conjugate operator: d/dx_0 - v_1 d/dx_1 - ... - J_tau d/dbeta_tau.
template <class S>
PolyMap<S> apply_conj_cr(const TFan<S>& fan, const TorusPoint<S>& J, const PolyMap<S>& f) {
  if (f.nvars() != fan.slice_vars())
    throw std::invalid_argument("apply_conj_cr: map is not over the slice variables");
  PolyMap<S> out = derivative(f, 0);
  for (int s = 1; s <= fan.t0(); ++s)
    out = sub(out, left_mul(fan.v(s), derivative(f, s)));
  for (int h = 1; h <= fan.tau(); ++h)
    out = sub(out, left_mul(torus_element(fan, J, h), derivative(f, fan.t0() + h)));
  return out;
}

/// Slice Laplacian: the sum of the second partials in all slice variables.
template <class S>
PolyMap<S> apply_laplacian(const PolyMap<S>& f) {
  PolyMap<S> out(f.nvars(), f.algebra());
  for (int v = 0; v < f.nvars(); ++v) out = add(out, derivative(derivative(f, v), v));
  return out;
}

/// Plain partial-derivative composition d0^{h0} d1^{h1} dbeta^{h2} on
/// three-variable slice maps (x_0, x_1, beta).
template <class S>
PolyMap<S> apply_nabla(const std::array<int, 3>& h, const PolyMap<S>& f) {
  if (f.nvars() != 3)
    throw std::invalid_argument("apply_nabla: three-variable slice maps only");
  PolyMap<S> out = f;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < h[static_cast<size_t>(i)]; ++k) out = derivative(out, i);
  return out;
}

/// d0^{h0} d1^{h1} (d0^2+d1^2)^t               for h2 = 2t,
/// d0^{h0} d1^{h1} (d0^2+d1^2)^t (d0 + i d1)   for h2 = 2t+1,
/// with i = basis vector 1 acting by left multiplication. Differentiates only
/// in the first two variables, so it applies to ambient and slice maps alike.
template <class S>
PolyMap<S> apply_delta(const std::array<int, 3>& h, const PolyMap<S>& f) {
  if (f.nvars() < 2) throw std::invalid_argument("apply_delta: need at least two variables");
  PolyMap<S> out = f;
  for (int k = 0; k < h[0]; ++k) out = derivative(out, 0);
  for (int k = 0; k < h[1]; ++k) out = derivative(out, 1);
  const int t = h[2] / 2;
  for (int k = 0; k < t; ++k)
    out = add(derivative(derivative(out, 0), 0), derivative(derivative(out, 1), 1));
  if (h[2] % 2 == 1) {
    const Element<S> i = Element<S>::unit(f.algebra(), 1);
    out = add(derivative(out, 0), left_mul(i, derivative(out, 1)));
  }
  return out;
}

/// Central-difference residual of the J-Cauchy-Riemann operator for a
/// black-box slice evaluator. Default step: cbrt(machine eps) * max(1,|x|).
inline Element<double> numeric_cr(const TFan<double>& fan, const TorusPoint<double>& J,
                                  const std::function<Element<double>(const std::vector<double>&)>& f,
                                  const std::vector<double>& x, double step = 0.0) {
  if (static_cast<int>(x.size()) != fan.slice_vars())
    throw std::invalid_argument("numeric_cr: coordinate count mismatch");
  double nx = 0;
  for (double v : x) nx += v * v;
  nx = std::sqrt(nx);
  const double hstep =
      step > 0 ? step : std::cbrt(std::numeric_limits<double>::epsilon()) * std::max(1.0, nx);
  auto partial = [&](int var) {
    std::vector<double> xp = x, xm = x;
    xp[static_cast<size_t>(var)] += hstep;
    xm[static_cast<size_t>(var)] -= hstep;
    return scale(sub(f(xp), f(xm)), 0.5 / hstep);
  };
  Element<double> out = partial(0);
  for (int s = 1; s <= fan.t0(); ++s) out = add(out, mul(fan.v(s), partial(s)));
  for (int h = 1; h <= fan.tau(); ++h)
    out = add(out, mul(torus_element(fan, J, h), partial(fan.t0() + h)));
  return out;
}

}  // namespace treg
