#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treg/algebra.hpp"

namespace treg {

enum class BasisCheck {
  ok,
  empty,
  mixed_algebras,
  too_short,          // m >= 1 required
  first_not_one,      // v_0 must be the identity
  trace_nonzero,      // t(v_s) != 0
  norm_not_one,       // n(v_s) != 1
  pair_trace_nonzero, // t(v_s v_t^c) != 0
  not_anticommuting   // v_s v_t != -v_t v_s
};

struct BasisViolation {
  BasisCheck cond = BasisCheck::ok;
  int s = -1;
  int t = -1;
};

inline std::string to_string(BasisCheck c) {
  switch (c) {
    case BasisCheck::ok: return "ok";
    case BasisCheck::empty: return "empty";
    case BasisCheck::mixed_algebras: return "mixed-algebras";
    case BasisCheck::too_short: return "too-short";
    case BasisCheck::first_not_one: return "first-not-one";
    case BasisCheck::trace_nonzero: return "trace-nonzero";
    case BasisCheck::norm_not_one: return "norm-not-one";
    case BasisCheck::pair_trace_nonzero: return "pair-trace-nonzero";
    case BasisCheck::not_anticommuting: return "not-anticommuting";
  }
  return "?";
}

/// Ordered basis (v_0,...,v_m), v_0 = 1, of a hypercomplex subspace.
template <class S>
struct HypercomplexBasis {
  const AlgebraSpec* algebra = nullptr;
  std::vector<Element<S>> vectors;
  bool verified = false;

  int m() const { return static_cast<int>(vectors.size()) - 1; }
  int count() const { return static_cast<int>(vectors.size()); }
};

/// Checks the defining conditions in order: v_0 = 1; every v_s (s >= 1) is in
/// the sphere (t = 0, n = 1); pairwise trace-orthogonality t(v_s v_t^c) = 0;
/// pairwise anticommutation. Violations are reported, not thrown.
template <class S>
std::optional<BasisViolation> verify_basis(const std::vector<Element<S>>& v,
                                           double tol = kDefaultTol) {
  if (v.empty()) return BasisViolation{BasisCheck::empty};
  const AlgebraSpec& alg = v[0].algebra();
  for (const Element<S>& e : v)
    if (&e.algebra() != &alg) return BasisViolation{BasisCheck::mixed_algebras};
  if (v.size() < 2) return BasisViolation{BasisCheck::too_short};
  if (!(is_zero(sub(v[0], Element<S>::one(alg)), tol)))
    return BasisViolation{BasisCheck::first_not_one, 0};
  const int m = static_cast<int>(v.size()) - 1;
  for (int s = 1; s <= m; ++s) {
    if (!is_zero(trace(v[s]), tol)) return BasisViolation{BasisCheck::trace_nonzero, s};
    const Element<S> n = norm_form(v[s]);
    if (!is_zero(sub(n, Element<S>::one(alg)), tol))
      return BasisViolation{BasisCheck::norm_not_one, s};
  }
  for (int s = 1; s <= m; ++s)
    for (int t = s + 1; t <= m; ++t) {
      if (!is_zero(trace(mul(v[s], conj(v[t]))), tol))
        return BasisViolation{BasisCheck::pair_trace_nonzero, s, t};
      if (!is_zero(add(mul(v[s], v[t]), mul(v[t], v[s])), tol))
        return BasisViolation{BasisCheck::not_anticommuting, s, t};
    }
  return std::nullopt;
}

template <class S>
HypercomplexBasis<S> make_basis(std::vector<Element<S>> v, double tol = kDefaultTol) {
  if (auto bad = verify_basis(v, tol))
    throw std::invalid_argument("make_basis: violation " + to_string(bad->cond) +
                                " at (" + std::to_string(bad->s) + "," +
                                std::to_string(bad->t) + ")");
  HypercomplexBasis<S> b;
  b.algebra = &v[0].algebra();
  b.vectors = std::move(v);
  b.verified = true;
  return b;
}

template <class S>
struct HatOutcome {
  std::optional<HypercomplexBasis<S>> extended;
  std::optional<BasisViolation> violation;  // set when not extendable
  Element<S> hat;                           // the product v_1...v_m either way

  bool ok() const { return extended.has_value(); }
};

/// Appends v_hat = v_1 * ... * v_m (left-to-right) and re-verifies; this
/// succeeds exactly when m = 2 mod 4. Associative algebras only.
template <class S>
HatOutcome<S> hat_extension(const HypercomplexBasis<S>& basis, double tol = kDefaultTol) {
  if (!basis.algebra->associative())
    throw std::domain_error("hat_extension: unsupported for nonassociative algebras");
  if (!basis.verified || basis.m() < 1)
    throw std::invalid_argument("hat_extension: basis must be verified");
  Element<S> hat = basis.vectors[1];
  for (int s = 2; s <= basis.m(); ++s) hat = mul(hat, basis.vectors[s]);
  std::vector<Element<S>> ext = basis.vectors;
  ext.push_back(hat);
  HatOutcome<S> out{std::nullopt, std::nullopt, hat};
  if (auto bad = verify_basis(ext, tol)) {
    out.violation = bad;
  } else {
    HypercomplexBasis<S> b;
    b.algebra = basis.algebra;
    b.vectors = std::move(ext);
    b.verified = true;
    out.extended = std::move(b);
  }
  return out;
}

/// Paravector basis (1, e_1, ..., e_n) of Cl(0,n).
template <class S>
HypercomplexBasis<S> make_paravectors(int n) {
  const AlgebraSpec& alg = AlgebraSpec::clifford(n);
  std::vector<Element<S>> v;
  v.push_back(Element<S>::one(alg));
  for (int g = 0; g < n; ++g) v.push_back(Element<S>::unit(alg, 1 << g));
  return make_basis(std::move(v));
}

/// Basis (1, all grade-h blades) of V_h inside Cl(0,n); requires h = 1 mod 4.
/// Blades are ordered by increasing bitmask, matching the ambient basis order.
template <class S>
HypercomplexBasis<S> make_vh(int n, int h) {
  if (h < 1 || h > n) throw std::invalid_argument("make_vh: need 1 <= h <= n");
  if (h % 4 != 1) throw std::invalid_argument("make_vh: h must be 1 mod 4");
  const AlgebraSpec& alg = AlgebraSpec::clifford(n);
  std::vector<Element<S>> v;
  v.push_back(Element<S>::one(alg));
  for (int mask = 1; mask < alg.dim(); ++mask)
    if (__builtin_popcount(static_cast<unsigned>(mask)) == h)
      v.push_back(Element<S>::unit(alg, mask));
  return make_basis(std::move(v));
}

/// Grade choice h(n) = 4*floor((n+2)/8) + 1 giving exponential dim V_{h(n)}.
inline int h_of_n(int n) {
  if (n < 1) throw std::invalid_argument("h_of_n: n must be >= 1");
  return 4 * ((n + 2) / 8) + 1;
}

/// Canonical completion of a preset basis to a basis of the whole algebra:
/// the basis vectors followed by the remaining ambient basis directions not in
/// their span (full blade basis for Cl(0,n); the basis itself for H, O).
template <class S>
std::vector<Element<S>> complete_basis(const HypercomplexBasis<S>& basis) {
  const AlgebraSpec& alg = *basis.algebra;
  const int d = alg.dim();
  std::vector<Element<S>> full = basis.vectors;
  using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  Mat m(d, d);
  auto fill = [&](int col, const Element<S>& e) {
    for (int r = 0; r < d; ++r) m(r, col) = e.coeff(r);
  };
  int cols = 0;
  for (const Element<S>& e : full) fill(cols++, e);
  for (int s = 0; s < d && cols < d; ++s) {
    fill(cols, Element<S>::unit(alg, s));
    Eigen::FullPivLU<Mat> lu(m.leftCols(cols + 1));
    if (lu.rank() == cols + 1) {
      full.push_back(Element<S>::unit(alg, s));
      ++cols;
    }
  }
  if (cols != d) throw std::logic_error("complete_basis: completion failed");
  return full;
}

/// Coordinates of x with respect to an ordered list of elements; nullopt when
/// x is outside the span.
template <class S>
std::optional<Eigen::Matrix<S, Eigen::Dynamic, 1>> coordinates_in(
    const std::vector<Element<S>>& basis, const Element<S>& x, double tol = kDefaultTol) {
  const AlgebraSpec& alg = x.algebra();
  const int d = alg.dim();
  const int k = static_cast<int>(basis.size());
  using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  Mat m(d, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < d; ++r) m(r, c) = basis[static_cast<size_t>(c)].coeff(r);
  Eigen::FullPivLU<Mat> lu(m);
  Vec sol = lu.solve(x.coeffs());
  Vec resid = m * sol - x.coeffs();
  double scale = ScalarInfo<S>::is_exact ? 1.0 : std::max(1.0, coeff_norm(x));
  for (int r = 0; r < d; ++r)
    if (!scalar_is_zero(resid[r], tol, scale)) return std::nullopt;
  return sol;
}

/// Euclidean inner product of x,y in the coordinates of a completed basis.
template <class S>
S inner_product_in(const std::vector<Element<S>>& completed, const Element<S>& x,
                   const Element<S>& y) {
  auto cx = coordinates_in(completed, x);
  auto cy = coordinates_in(completed, y);
  if (!cx || !cy)
    throw std::invalid_argument("inner_product_in: element outside basis span");
  return cx->dot(*cy);
}

}  // namespace treg
