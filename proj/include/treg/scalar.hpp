#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace treg {

/// Exact scalar backend. All identity checks in the library are run over
/// this type; float64 is reserved for quadrature and finite differences.
using Rational = mpq_class;

/// Default relative tolerance for float64 reality/zero tests.
inline constexpr double kDefaultTol = 1e-12;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("parse_rational: malformed value '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("parse_rational: zero denominator");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& v) { return v.get_str(); }

inline double to_double(const Rational& v) { return v.get_d(); }
inline double to_double(double v) { return v; }

/// Square root within the scalar field. For rationals this succeeds only on
/// perfect squares (numerator and denominator both integer squares).
inline std::optional<Rational> exact_sqrt(const Rational& v) {
  if (v < 0) return std::nullopt;
  const mpz_class num = v.get_num(), den = v.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

inline std::optional<double> exact_sqrt(double v) {
  if (v < 0) return std::nullopt;
  return std::sqrt(v);
}

/// Zero test: exact for rationals; |v| <= tol*scale for float64.
inline bool scalar_is_zero(const Rational& v, double /*tol*/ = kDefaultTol,
                           double /*scale*/ = 1.0) {
  return sgn(v) == 0;
}
inline bool scalar_is_zero(double v, double tol = kDefaultTol, double scale = 1.0) {
  return std::abs(v) <= tol * scale;
}

/// Structural zero test, safe to use for sparsity skips.
inline bool scalar_is_exact_zero(const Rational& v) { return sgn(v) == 0; }
inline bool scalar_is_exact_zero(double v) { return v == 0.0; }

template <class S>
struct ScalarInfo;

template <>
struct ScalarInfo<Rational> {
  static constexpr bool is_exact = true;
  static const char* backend_name() { return "rational"; }
  static Rational from_long(long v) { return Rational(v); }
  static Rational from_ratio(long p, long q) { return rational(p, q); }
};

template <>
struct ScalarInfo<double> {
  static constexpr bool is_exact = false;
  static const char* backend_name() { return "float64"; }
  static double from_long(long v) { return static_cast<double>(v); }
  static double from_ratio(long p, long q) {
    return static_cast<double>(p) / static_cast<double>(q);
  }
};

}  // namespace treg

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Literal = mpq_class;
  using Nested = mpq_class;

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
};

}  // namespace Eigen
