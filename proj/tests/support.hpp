#pragma once

// Test-only oracles, independent of the AlgebraSpec structure tables.

#include <algorithm>
#include <vector>

#include "treg/random.hpp"

namespace oracle {

using treg::AlgebraSpec;
using treg::Element;
using treg::Rational;

struct SignedBlade {
  int sign = 1;
  std::vector<int> gens;  // ascending, distinct
};

/// Product of Clifford blades by explicit generator-list manipulation:
/// concatenate, bubble-sort with a -1 per transposition, cancel adjacent
/// equal generators with a -1 each.
inline SignedBlade blade_mul(const std::vector<int>& a, const std::vector<int>& b) {
  SignedBlade out;
  out.gens = a;
  out.gens.insert(out.gens.end(), b.begin(), b.end());
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t i = 0; i + 1 < out.gens.size(); ++i) {
      if (out.gens[i] > out.gens[i + 1]) {
        std::swap(out.gens[i], out.gens[i + 1]);
        out.sign = -out.sign;
        moved = true;
      } else if (out.gens[i] == out.gens[i + 1]) {
        out.gens.erase(out.gens.begin() + static_cast<long>(i),
                       out.gens.begin() + static_cast<long>(i) + 2);
        out.sign = -out.sign;  // e_s^2 = -1
        moved = true;
        break;
      }
    }
  }
  return out;
}

/// Conjugation oracle: conj(e_{s_1..s_g}) = (-e_{s_g}) ... (-e_{s_1}); the
/// reversal resorts with g(g-1)/2 transpositions, so the sign is
/// (-1)^g (-1)^{g(g-1)/2}.
inline int blade_conj_sign(int grade) {
  const int swaps = grade * (grade - 1) / 2;
  return ((grade + swaps) % 2 == 0) ? 1 : -1;
}

inline std::vector<int> gens_of_mask(unsigned mask) {
  std::vector<int> g;
  for (int s = 0; s < 31; ++s)
    if (mask & (1u << s)) g.push_back(s + 1);
  return g;
}

inline unsigned mask_of_gens(const std::vector<int>& gens) {
  unsigned m = 0;
  for (int g : gens) m |= 1u << (g - 1);
  return m;
}

/// Independent product of two Clifford-algebra elements via the blade oracle.
inline Element<Rational> clifford_mul(const Element<Rational>& a,
                                      const Element<Rational>& b) {
  const AlgebraSpec& alg = a.algebra();
  Element<Rational> acc = Element<Rational>::zero(alg);
  for (int s = 0; s < alg.dim(); ++s) {
    if (sgn(a.coeff(s)) == 0) continue;
    for (int t = 0; t < alg.dim(); ++t) {
      if (sgn(b.coeff(t)) == 0) continue;
      SignedBlade p = blade_mul(gens_of_mask(static_cast<unsigned>(s)),
                                gens_of_mask(static_cast<unsigned>(t)));
      Rational term = a.coeff(s) * b.coeff(t) * p.sign;
      acc = add(acc, Element<Rational>::unit(alg, static_cast<int>(mask_of_gens(p.gens)),
                                             term));
    }
  }
  return acc;
}

inline Element<Rational> clifford_conj(const Element<Rational>& a) {
  const AlgebraSpec& alg = a.algebra();
  Element<Rational> acc = Element<Rational>::zero(alg);
  for (int s = 0; s < alg.dim(); ++s) {
    if (sgn(a.coeff(s)) == 0) continue;
    const int grade = __builtin_popcount(static_cast<unsigned>(s));
    acc = add(acc, Element<Rational>::unit(alg, s, a.coeff(s) * blade_conj_sign(grade)));
  }
  return acc;
}

}  // namespace oracle
