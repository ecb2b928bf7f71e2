#pragma once

#include <array>
#include <limits>
#include <string>
#include <vector>

#include "treg/polymap.hpp"

namespace treg {

enum class RegularityVerdict { regular_on_samples, regular_symbolic, counterexample };

inline std::string to_string(RegularityVerdict v) {
  switch (v) {
    case RegularityVerdict::regular_on_samples: return "regular_on_samples";
    case RegularityVerdict::regular_symbolic: return "regular_on_samples+symbolic";
    case RegularityVerdict::counterexample: return "counterexample";
  }
  return "?";
}

template <class S>
struct SampleCheck {
  TorusPoint<S> J;
  PolyMap<S> residual;
  bool zero = false;
  double residual_norm = 0;
};

template <class S>
struct RegularityReport {
  std::string fan_name;
  RegularityVerdict verdict = RegularityVerdict::counterexample;
  bool symbolic_supported = false;
  bool symbolic_zero = false;
  std::vector<SampleCheck<S>> samples;
  int counterexample = -1;  // index into samples
  double tol = kDefaultTol;
};

/// A full symbolic certificate exists when every torus block is a 0-sphere
/// (finite) or a circle (rational parametrization); higher-dimensional
/// spheres are only sampled.
template <class S>
bool symbolic_certifiable(const TFan<S>& fan) {
  for (int h = 1; h <= fan.tau(); ++h)
    if (fan.block_size(h) > 2) return false;
  return true;
}

/// Residual polynomial over (x_0..x_{t_0}, beta_1..beta_tau, t_1..t_c), one
/// parameter per circle block with J = (v_a (1-t^2) + v_b (2t)) / (1+t^2) and
/// denominators cleared. The map is T-regular iff this vanishes identically;
/// sign flips on finite blocks and the missed parametrization point give the
/// same slices, so they are covered. Throws when a block has dimension > 2.
template <class S>
PolyMap<S> symbolic_cr_residual(const TFan<S>& fan, const PolyMap<S>& f) {
  if (!symbolic_certifiable(fan))
    throw std::domain_error("symbolic_cr_residual: torus block of dimension > 2");
  if (f.nvars() != fan.n() + 1)
    throw std::invalid_argument("symbolic_cr_residual: map is not over the fan's ambient space");
  const AlgebraSpec& alg = f.algebra();
  const int sv = fan.slice_vars();
  std::vector<int> circle_blocks;  // h values with 2-dim blocks
  std::vector<int> tvar_of_block(static_cast<size_t>(fan.tau()) + 1, -1);
  for (int h = 1; h <= fan.tau(); ++h)
    if (fan.block_size(h) == 2) {
      tvar_of_block[static_cast<size_t>(h)] = sv + static_cast<int>(circle_blocks.size());
      circle_blocks.push_back(h);
    }
  const int nv = sv + static_cast<int>(circle_blocks.size());

  auto tpoly = [&](int tv, long c0, long c1, long c2) {
    // c0 + c1 t + c2 t^2 in extended variables, real coefficients
    PolyMap<S> p(nv, alg);
    for (int k = 0; k <= 2; ++k) {
      const long cs[3] = {c0, c1, c2};
      if (cs[k] == 0) continue;
      MultiIndex e(static_cast<size_t>(nv), 0);
      e[static_cast<size_t>(tv)] = k;
      p.add_term(std::move(e), Element<S>::scalar(alg, S(cs[k])));
    }
    return p;
  };

  // Per circle block: top degree of the block variables across f's monomials.
  std::vector<int> hom_deg(static_cast<size_t>(fan.tau()) + 1, 0);
  for (const auto& [e, c] : f.terms())
    for (int h : circle_blocks) {
      int d = 0;
      for (int s = fan.block_begin(h); s <= fan.block_end(h); ++s)
        d += e[static_cast<size_t>(s)];
      hom_deg[static_cast<size_t>(h)] = std::max(hom_deg[static_cast<size_t>(h)], d);
    }

  // Homogenized symbolic restriction: x_a^p x_b^q -> beta^{p+q} u^p w^q s^{D-p-q}
  // with u = 1-t^2, w = 2t, s = 1+t^2.
  PolyMap<S> restr(nv, alg);
  for (const auto& [e, c] : f.terms()) {
    MultiIndex se(static_cast<size_t>(nv), 0);
    for (int s = 0; s <= fan.t0(); ++s) se[static_cast<size_t>(s)] = e[static_cast<size_t>(s)];
    PolyMap<S> factor = PolyMap<S>::monomial(nv, se, c);
    for (int h = 1; h <= fan.tau(); ++h) {
      const int b = fan.block_begin(h);
      if (fan.block_size(h) == 1) {
        MultiIndex be(static_cast<size_t>(nv), 0);
        be[static_cast<size_t>(fan.t0() + h)] = e[static_cast<size_t>(b)];
        factor = product(PolyMap<S>::monomial(nv, std::move(be), Element<S>::one(alg)), factor);
      } else {
        const int tv = tvar_of_block[static_cast<size_t>(h)];
        const int p = e[static_cast<size_t>(b)], q = e[static_cast<size_t>(b) + 1];
        MultiIndex be(static_cast<size_t>(nv), 0);
        be[static_cast<size_t>(fan.t0() + h)] = p + q;
        PolyMap<S> blockf = PolyMap<S>::monomial(nv, std::move(be), Element<S>::one(alg));
        blockf = product(blockf, pow(tpoly(tv, 1, 0, -1), p)); // u^p
        blockf = product(blockf, pow(tpoly(tv, 0, 2, 0), q));  // w^q
        blockf = product(blockf,
                         pow(tpoly(tv, 1, 0, 1), hom_deg[static_cast<size_t>(h)] - p - q));
        factor = product(blockf, factor);
      }
    }
    restr = add(restr, factor);
  }

  // Residual, cleared of all denominators:
  //   (prod_h s_h) (d0 + sum v_l dl) restr + sum_h Jnum_h (prod_{h'!=h} s_{h'}) dbeta_h restr
  auto s_product = [&](int skip_h) {
    PolyMap<S> p = PolyMap<S>::constant(nv, Element<S>::one(alg));
    for (int h : circle_blocks) {
      if (h == skip_h) continue;
      p = product(p, tpoly(tvar_of_block[static_cast<size_t>(h)], 1, 0, 1));
    }
    return p;
  };

  PolyMap<S> mirror_part = derivative(restr, 0);
  for (int s = 1; s <= fan.t0(); ++s)
    mirror_part = add(mirror_part, left_mul(fan.v(s), derivative(restr, s)));
  PolyMap<S> out = product(s_product(-1), mirror_part);
  for (int h = 1; h <= fan.tau(); ++h) {
    const PolyMap<S> dbeta = derivative(restr, fan.t0() + h);
    if (fan.block_size(h) == 1) {
      out = add(out, product(s_product(-1), left_mul(fan.v(fan.block_begin(h)), dbeta)));
    } else {
      const int tv = tvar_of_block[static_cast<size_t>(h)];
      const int b = fan.block_begin(h);
      PolyMap<S> jnum = add(product(tpoly(tv, 1, 0, -1),
                                    PolyMap<S>::constant(nv, fan.v(b))),
                            product(tpoly(tv, 0, 2, 0),
                                    PolyMap<S>::constant(nv, fan.v(b + 1))));
      out = add(out, product(jnum, product(s_product(h), dbeta)));
    }
  }
  return out;
}

struct CheckOptions {
  bool try_symbolic = true;
  double tol = kDefaultTol;
};

/// Per torus sample: restrict, apply the J-Cauchy-Riemann operator, and test
/// the residual for zero (exactly under rational scalars). A nonzero exact
/// residual is a disproof; all-zero samples certify on the sample set only,
/// upgraded to a proof when the symbolic certificate applies.
template <class S>
RegularityReport<S> check_regular(const TFan<S>& fan, const PolyMap<S>& f,
                                  const std::vector<TorusPoint<S>>& points,
                                  CheckOptions opts = {}) {
  RegularityReport<S> rep;
  rep.fan_name = fan.name();
  rep.tol = opts.tol;
  bool all_zero = true;
  for (const TorusPoint<S>& J : points) {
    SampleCheck<S> sc{J, apply_cr(fan, J, restrict_to_slice(fan, J, f))};
    sc.zero = is_zero(sc.residual, opts.tol);
    sc.residual_norm = coeff_norm(sc.residual);
    rep.samples.push_back(std::move(sc));
    if (!rep.samples.back().zero && all_zero) {
      all_zero = false;
      rep.counterexample = static_cast<int>(rep.samples.size()) - 1;
    }
  }
  if (!all_zero) {
    rep.verdict = RegularityVerdict::counterexample;
    return rep;
  }
  rep.symbolic_supported = opts.try_symbolic && symbolic_certifiable(fan);
  if (rep.symbolic_supported) {
    rep.symbolic_zero = is_zero(symbolic_cr_residual(fan, f), opts.tol);
    rep.verdict = rep.symbolic_zero ? RegularityVerdict::regular_symbolic
                                    : RegularityVerdict::counterexample;
  } else {
    rep.verdict = RegularityVerdict::regular_on_samples;
  }
  return rep;
}

template <class S>
struct PreserveViolation {
  int sample = -1;
  MultiIndex monomial;
  Element<S> coefficient;
};

template <class S>
struct PreserveReport {
  bool preserving = true;
  std::vector<PreserveViolation<S>> violations;
};

/// f is T-slice preserving when every restricted coefficient lies in the span
/// of the slice basis (1, v_1..v_{t_0}, J_1..J_tau); monomials are linearly
/// independent functions, so coefficient containment is equivalent.
template <class S>
PreserveReport<S> check_slice_preserving(const TFan<S>& fan, const PolyMap<S>& f,
                                         const std::vector<TorusPoint<S>>& points,
                                         double tol = kDefaultTol) {
  PreserveReport<S> rep;
  int idx = 0;
  for (const TorusPoint<S>& J : points) {
    std::vector<Element<S>> gens;
    for (int s = 0; s <= fan.t0(); ++s) gens.push_back(fan.v(s));
    for (int h = 1; h <= fan.tau(); ++h) gens.push_back(torus_element(fan, J, h));
    const PolyMap<S> fj = restrict_to_slice(fan, J, f);
    for (const auto& [e, c] : fj.terms()) {
      if (!coordinates_in(gens, c, tol)) {
        rep.preserving = false;
        rep.violations.push_back(PreserveViolation<S>{idx, e, c});
        break;
      }
    }
    ++idx;
  }
  return rep;
}

/// Component family F_K over (x_0..x_{t_0}, beta_1..beta_tau), K a bitmask
/// over the tau block indices. Reflection parity: F_K even in beta_h for
/// h not in K, odd for h in K.
template <class S>
struct StemFunction {
  int tau = 0;
  int mirror_vars = 0;  // t_0 + 1
  std::vector<PolyMap<S>> components;  // size 2^tau, bitmask order

  int nvars() const { return mirror_vars + tau; }
};

struct StemParityViolation {
  unsigned K = 0;
  int h = 0;  // 1-based block index
};

template <class S>
std::optional<StemParityViolation> verify_stem_parity(const StemFunction<S>& stem) {
  for (unsigned K = 0; K < stem.components.size(); ++K) {
    const PolyMap<S>& F = stem.components[K];
    for (int h = 1; h <= stem.tau; ++h) {
      const bool odd = (K >> (h - 1)) & 1u;
      const int var = stem.mirror_vars + h - 1;
      for (const auto& [e, c] : F.terms()) {
        const bool e_odd = e[static_cast<size_t>(var)] % 2 == 1;
        if (e_odd != odd) return StemParityViolation{K, h};
      }
    }
  }
  return std::nullopt;
}

/// Value of the induced function at x = mirror + sum beta_h J_h:
/// F_empty + sum_K J_{k_1}(J_{k_2}(...(J_{k_p} F_K))) with the displayed
/// nesting (safe in nonassociative algebras). No parity validation here;
/// StemEvaluator is the validating entry point.
template <class S>
Element<S> induce_value(const TFan<S>& fan, const StemFunction<S>& stem,
                        const SlicePoint<S>& p) {
  std::vector<S> coords;
  auto mc = fan_coordinates(fan, p.mirror);
  for (int s = 0; s <= fan.t0(); ++s) coords.push_back(mc[s]);
  for (int h = 1; h <= fan.tau(); ++h) coords.push_back(p.beta[static_cast<size_t>(h) - 1]);
  Element<S> acc = Element<S>::zero(*fan.basis().algebra);
  for (unsigned K = 0; K < stem.components.size(); ++K) {
    if (stem.components[K].empty()) continue;
    Element<S> w = evaluate(stem.components[K], coords);
    for (int h = fan.tau(); h >= 1; --h)
      if ((K >> (h - 1)) & 1u) w = mul(torus_element(fan, p.torus, h), w);
    acc = add(acc, w);
  }
  return acc;
}

template <class S>
class StemEvaluator {
 public:
  StemEvaluator(const TFan<S>& fan, StemFunction<S> stem)
      : fan_(&fan), stem_(std::move(stem)) {
    if (stem_.tau != fan.tau() || stem_.mirror_vars != fan.t0() + 1)
      throw std::invalid_argument("StemEvaluator: stem shape does not match fan");
    if (stem_.components.size() != (size_t{1} << stem_.tau))
      throw std::invalid_argument("StemEvaluator: component count != 2^tau");
    if (verify_stem_parity(stem_))
      throw std::invalid_argument("StemEvaluator: invalid stem (parity violation)");
  }

  const StemFunction<S>& stem() const { return stem_; }

  Element<S> operator()(const SlicePoint<S>& p) const {
    return induce_value(*fan_, stem_, p);
  }

 private:
  const TFan<S>* fan_;
  StemFunction<S> stem_;
};

/// Induced values agree across representatives (beta_h, J_h) and
/// (-beta_h, -J_h) of the same point exactly when the stem has the right
/// reflection parities.
template <class S>
bool representative_invariance(const TFan<S>& fan, const StemFunction<S>& stem,
                               const SlicePoint<S>& p, int h, double tol = kDefaultTol) {
  SlicePoint<S> q = p;
  q.beta[static_cast<size_t>(h) - 1] = -q.beta[static_cast<size_t>(h) - 1];
  auto& blk = q.torus.blocks[static_cast<size_t>(h) - 1];
  blk = -blk;
  return is_zero(sub(induce_value(fan, stem, p), induce_value(fan, stem, q)), tol);
}

}  // namespace treg
