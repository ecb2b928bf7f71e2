#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "treg/scalar.hpp"

namespace treg {

/// Product of two basis vectors: sign * basis[index]. All supported algebras
/// have monomial products, so a single signed index suffices; sign == 0
/// encodes the zero product.
struct BasisProduct {
  std::int32_t index = 0;
  std::int8_t sign = 0;
};

/// A finite-dimensional alternative real *-algebra presented by a structure
/// table on a distinguished ordered basis. Basis vector 0 is the
/// multiplicative identity and the *-involution acts on basis vectors by the
/// signs in conj_signs. Instances are immutable and shareable across threads.
class AlgebraSpec {
 public:
  AlgebraSpec(std::string name, std::vector<std::string> labels,
              std::vector<BasisProduct> table, std::vector<std::int8_t> conj_signs,
              bool associative);

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::string& label(int s) const { return labels_.at(static_cast<size_t>(s)); }
  const std::vector<std::string>& labels() const { return labels_; }
  BasisProduct product(int s, int t) const {
    return table_[static_cast<size_t>(s) * dim_ + static_cast<size_t>(t)];
  }
  int conj_sign(int s) const { return conj_signs_.at(static_cast<size_t>(s)); }
  bool associative() const { return associative_; }

  static const AlgebraSpec& complex();
  static const AlgebraSpec& quaternions();
  static const AlgebraSpec& octonions();
  static const AlgebraSpec& clifford(int n);  // Cl(0,n)

  /// Registry lookup by name ("C", "H", "O", "Cl0n"); nullptr when unknown.
  static const AlgebraSpec* find(const std::string& name);

 private:
  std::string name_;
  int dim_;
  std::vector<std::string> labels_;
  std::vector<BasisProduct> table_;
  std::vector<std::int8_t> conj_signs_;
  bool associative_;
};

struct AlgebraId {
  enum Kind { Complex, Quaternions, Octonions, Clifford0n } kind = Quaternions;
  int n = 0;  // Clifford0n only
};

inline const AlgebraSpec& make_algebra(AlgebraId id) {
  switch (id.kind) {
    case AlgebraId::Complex: return AlgebraSpec::complex();
    case AlgebraId::Quaternions: return AlgebraSpec::quaternions();
    case AlgebraId::Octonions: return AlgebraSpec::octonions();
    case AlgebraId::Clifford0n: return AlgebraSpec::clifford(id.n);
  }
  throw std::invalid_argument("make_algebra: unknown preset");
}

/// Algebra element as a coefficient vector over the distinguished basis.
template <class S>
class Element {
 public:
  using Coeffs = Eigen::Matrix<S, Eigen::Dynamic, 1>;

  explicit Element(const AlgebraSpec& alg)
      : alg_(&alg), c_(Coeffs::Zero(alg.dim())) {}

  Element(const AlgebraSpec& alg, Coeffs c) : alg_(&alg), c_(std::move(c)) {
    if (c_.size() != alg.dim())
      throw std::invalid_argument("Element: coefficient count != algebra dim");
  }

  static Element zero(const AlgebraSpec& alg) { return Element(alg); }

  static Element one(const AlgebraSpec& alg) { return unit(alg, 0); }

  static Element unit(const AlgebraSpec& alg, int index, S scale = S(1)) {
    Element e(alg);
    e.c_[index] = std::move(scale);
    return e;
  }

  static Element scalar(const AlgebraSpec& alg, S value) {
    return unit(alg, 0, std::move(value));
  }

  const AlgebraSpec& algebra() const { return *alg_; }
  const Coeffs& coeffs() const { return c_; }
  const S& coeff(int s) const { return c_[s]; }
  void set_coeff(int s, S v) { c_[s] = std::move(v); }
  int dim() const { return alg_->dim(); }

 private:
  const AlgebraSpec* alg_;
  Coeffs c_;
};

namespace detail {
inline void require_same(const AlgebraSpec& a, const AlgebraSpec& b) {
  if (&a != &b) throw std::invalid_argument("algebra mismatch: " + a.name() + " vs " + b.name());
}
}  // namespace detail

template <class S>
bool operator==(const Element<S>& a, const Element<S>& b) {
  if (&a.algebra() != &b.algebra()) return false;
  for (int s = 0; s < a.dim(); ++s)
    if (!(a.coeff(s) == b.coeff(s))) return false;
  return true;
}

template <class S>
bool operator!=(const Element<S>& a, const Element<S>& b) {
  return !(a == b);
}

template <class S>
Element<S> add(const Element<S>& a, const Element<S>& b) {
  detail::require_same(a.algebra(), b.algebra());
  return Element<S>(a.algebra(), a.coeffs() + b.coeffs());
}

template <class S>
Element<S> sub(const Element<S>& a, const Element<S>& b) {
  detail::require_same(a.algebra(), b.algebra());
  return Element<S>(a.algebra(), a.coeffs() - b.coeffs());
}

template <class S>
Element<S> neg(const Element<S>& a) {
  return Element<S>(a.algebra(), (-a.coeffs()).eval());
}

template <class S>
Element<S> scale(const Element<S>& a, const S& k) {
  typename Element<S>::Coeffs c = a.coeffs();
  for (int s = 0; s < c.size(); ++s) c[s] = c[s] * k;
  return Element<S>(a.algebra(), std::move(c));
}

/// Bilinear product through the structure table.
template <class S>
Element<S> mul(const Element<S>& a, const Element<S>& b) {
  detail::require_same(a.algebra(), b.algebra());
  const AlgebraSpec& alg = a.algebra();
  const int d = alg.dim();
  typename Element<S>::Coeffs c = Element<S>::Coeffs::Zero(d);
  for (int s = 0; s < d; ++s) {
    if (scalar_is_exact_zero(a.coeff(s))) continue;
    for (int t = 0; t < d; ++t) {
      if (scalar_is_exact_zero(b.coeff(t))) continue;
      const BasisProduct p = alg.product(s, t);
      if (p.sign == 0) continue;
      S term = a.coeff(s) * b.coeff(t);
      if (p.sign < 0)
        c[p.index] -= term;
      else
        c[p.index] += term;
    }
  }
  return Element<S>(alg, std::move(c));
}

/// The *-involution.
template <class S>
Element<S> conj(const Element<S>& a) {
  typename Element<S>::Coeffs c = a.coeffs();
  for (int s = 0; s < c.size(); ++s)
    if (a.algebra().conj_sign(s) < 0) c[s] = -c[s];
  return Element<S>(a.algebra(), std::move(c));
}

/// t(x) = x + conj(x).
template <class S>
Element<S> trace(const Element<S>& a) {
  return add(a, conj(a));
}

/// n(x) = x * conj(x).
template <class S>
Element<S> norm_form(const Element<S>& a) {
  return mul(a, conj(a));
}

template <class S>
Element<S> operator+(const Element<S>& a, const Element<S>& b) { return add(a, b); }
template <class S>
Element<S> operator-(const Element<S>& a, const Element<S>& b) { return sub(a, b); }
template <class S>
Element<S> operator-(const Element<S>& a) { return neg(a); }
template <class S>
Element<S> operator*(const Element<S>& a, const Element<S>& b) { return mul(a, b); }
template <class S>
Element<S> operator*(const S& k, const Element<S>& a) { return scale(a, k); }
template <class S>
Element<S> operator*(const Element<S>& a, const S& k) { return scale(a, k); }

template <class S>
double coeff_norm(const Element<S>& a) {
  double acc = 0;
  for (int s = 0; s < a.dim(); ++s) {
    const double v = to_double(a.coeff(s));
    acc += v * v;
  }
  return std::sqrt(acc);
}

template <class S>
bool is_zero(const Element<S>& a, double tol = kDefaultTol) {
  const double scale = ScalarInfo<S>::is_exact ? 1.0 : coeff_norm(a);
  for (int s = 0; s < a.dim(); ++s)
    if (!scalar_is_zero(a.coeff(s), tol, scale)) return false;
  return true;
}

/// True when all non-identity coefficients vanish (tolerance 1e-12*|x| on the
/// float backend).
template <class S>
bool is_real(const Element<S>& a, double tol = kDefaultTol) {
  const double scale = ScalarInfo<S>::is_exact ? 1.0 : coeff_norm(a);
  for (int s = 1; s < a.dim(); ++s)
    if (!scalar_is_zero(a.coeff(s), tol, scale)) return false;
  return true;
}

template <class S>
const S& real_part(const Element<S>& a) {
  return a.coeff(0);
}

/// Membership in the quadratic cone: reals, plus nonreal x with real trace,
/// real norm and 4 n(x) > t(x)^2.
template <class S>
bool in_quadratic_cone(const Element<S>& a, double tol = kDefaultTol) {
  if (is_real(a, tol)) return true;
  const Element<S> t = trace(a);
  const Element<S> n = norm_form(a);
  if (!is_real(t, tol) || !is_real(n, tol)) return false;
  const S& t0 = real_part(t);
  const S& n0 = real_part(n);
  return S(4) * n0 > t0 * t0;
}

/// Membership in S_A: t(x) = 0 and n(x) = 1.
template <class S>
bool in_sphere(const Element<S>& a, double tol = kDefaultTol) {
  const Element<S> t = trace(a);
  if (!is_zero(t, tol)) return false;
  const Element<S> n = norm_form(a);
  const Element<S> one = Element<S>::one(a.algebra());
  if (ScalarInfo<S>::is_exact) return n == one;
  return is_zero(sub(n, one), tol);
}

/// Inverse within the quadratic cone: n(x)^{-1} conj(x).
template <class S>
Element<S> cone_inverse(const Element<S>& a, double tol = kDefaultTol) {
  if (is_zero(a, tol)) throw std::domain_error("cone_inverse: zero element");
  if (!in_quadratic_cone(a, tol))
    throw std::domain_error("cone_inverse: element outside quadratic cone");
  const Element<S> n = norm_form(a);
  const S& n0 = real_part(n);
  if (scalar_is_zero(n0, tol)) throw std::domain_error("cone_inverse: null norm");
  return scale(conj(a), S(S(1) / n0));
}

}  // namespace treg
