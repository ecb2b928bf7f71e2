#pragma once

#include <random>

#include "treg/polymap.hpp"

namespace treg {

/// Seeded generators for property tests and the self-test suite. Rationals
/// are kept small so products of many factors stay fast.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng_);
  }

  Rational rational(long max_num = 9, long max_den = 9) {
    const long num = integer(-max_num, max_num);
    const long den = integer(1, max_den);
    return treg::rational(num, den);
  }

  Rational nonzero_rational(long max_num = 9, long max_den = 9) {
    Rational q = rational(max_num, max_den);
    while (sgn(q) == 0) q = rational(max_num, max_den);
    return q;
  }

  template <class S>
  S scalar(long max_num = 9, long max_den = 9) {
    const long num = integer(-max_num, max_num);
    const long den = integer(1, max_den);
    return ScalarInfo<S>::from_ratio(num, den);
  }

  template <class S>
  Element<S> element(const AlgebraSpec& alg, long max_num = 9, long max_den = 9) {
    typename Element<S>::Coeffs c(alg.dim());
    for (int s = 0; s < alg.dim(); ++s) c[s] = scalar<S>(max_num, max_den);
    return Element<S>(alg, std::move(c));
  }

  /// Random element of the span of a basis-vector list.
  template <class S>
  Element<S> span_element(const std::vector<Element<S>>& basis, long max_num = 9,
                          long max_den = 9) {
    Element<S> acc = Element<S>::zero(basis.at(0).algebra());
    for (const Element<S>& v : basis) acc = add(acc, scale(v, scalar<S>(max_num, max_den)));
    return acc;
  }

  template <class S>
  PolyMap<S> polymap(const AlgebraSpec& alg, int nvars, int max_degree, int terms,
                     long max_num = 4, long max_den = 4) {
    PolyMap<S> f(nvars, alg);
    for (int t = 0; t < terms; ++t) {
      MultiIndex e(static_cast<size_t>(nvars), 0);
      int budget = static_cast<int>(integer(0, max_degree));
      for (int v = 0; v < nvars && budget > 0; ++v) {
        const int k = static_cast<int>(integer(0, budget));
        e[static_cast<size_t>(v)] = k;
        budget -= k;
      }
      f.add_term(std::move(e), element<S>(alg, max_num, max_den));
    }
    return f;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// First alternativity violation x(xy) != (xx)y or (xy)y != x(yy) over random
/// exact pairs; nullopt when every sampled pair passes.
template <class S>
std::optional<std::pair<Element<S>, Element<S>>> alternativity_witness(
    const AlgebraSpec& alg, int samples, std::uint64_t seed) {
  RandomSource rnd(seed);
  for (int it = 0; it < samples; ++it) {
    const Element<S> x = rnd.element<S>(alg);
    const Element<S> y = rnd.element<S>(alg);
    const bool left = mul(x, mul(x, y)) == mul(mul(x, x), y);
    const bool right = mul(mul(x, y), y) == mul(x, mul(y, y));
    if (!left || !right) return std::make_pair(x, y);
  }
  return std::nullopt;
}

/// First antiautomorphism violation conj(ab) != conj(b) conj(a) over all basis
/// pairs (exhaustive; exact).
template <class S>
std::optional<std::pair<int, int>> antiautomorphism_witness(const AlgebraSpec& alg) {
  for (int s = 0; s < alg.dim(); ++s)
    for (int t = 0; t < alg.dim(); ++t) {
      const Element<S> a = Element<S>::unit(alg, s);
      const Element<S> b = Element<S>::unit(alg, t);
      if (!(conj(mul(a, b)) == mul(conj(b), conj(a)))) return std::make_pair(s, t);
    }
  return std::nullopt;
}

/// First basis vector with conj(conj(v)) != v.
template <class S>
std::optional<int> involution_witness(const AlgebraSpec& alg) {
  for (int s = 0; s < alg.dim(); ++s) {
    const Element<S> a = Element<S>::unit(alg, s);
    if (!(conj(conj(a)) == a)) return s;
  }
  return std::nullopt;
}

}  // namespace treg
