#pragma once

#include <functional>
#include <numbers>

#include "treg/fan.hpp"
#include "treg/quadrature.hpp"

namespace treg::cauchy {

using DElem = Element<double>;

inline const AlgebraSpec& H() { return AlgebraSpec::quaternions(); }

inline double modulus(const DElem& q) { return std::sqrt(to_double(real_part(norm_form(q)))); }

/// conj(y-x) / (4 pi |y-x|^3).
inline DElem cauchy_kernel(const DElem& y, const DElem& x) {
  const DElem d = sub(y, x);
  const double r = modulus(d);
  if (r == 0.0) throw std::domain_error("cauchy_kernel: coincident points");
  return scale(conj(d), 1.0 / (4.0 * std::numbers::pi * r * r * r));
}

/// Product quadrature on the sphere of radius R about y0 inside the slice
/// span(1, i, J): Gauss-Legendre in the polar cosine times a uniform
/// periodic rule in azimuth (order x 2*order nodes). Weights are surface-area
/// weights summing to 4 pi R^2.
struct QuadratureGrid {
  DElem center = DElem::zero(AlgebraSpec::quaternions());
  double radius = 0;
  int order = 0;
  std::vector<DElem> points;
  std::vector<DElem> normals;  // outward unit normals as algebra elements
  std::vector<double> weights;
};

inline QuadratureGrid make_grid(const DElem& J, const DElem& y0, double R, int order) {
  if (order < 2) throw std::invalid_argument("make_grid: order must be >= 2");
  if (R <= 0) throw std::invalid_argument("make_grid: radius must be positive");
  const DElem e0 = DElem::one(H());
  const DElem e1 = DElem::unit(H(), 1);
  const GaussLegendre gl = gauss_legendre(order);
  const int m = 2 * order;
  QuadratureGrid grid;
  grid.center = y0;
  grid.radius = R;
  grid.order = order;
  const double wphi = 2.0 * std::numbers::pi / m;
  for (int a = 0; a < order; ++a) {
    const double c = gl.nodes[a];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int b = 0; b < m; ++b) {
      const double phi = wphi * b;
      DElem n = add(add(scale(e0, s * std::cos(phi)), scale(e1, s * std::sin(phi))),
                    scale(J, c));
      grid.points.push_back(add(y0, scale(n, R)));
      grid.normals.push_back(std::move(n));
      grid.weights.push_back(R * R * gl.weights[a] * wphi);
    }
  }
  return grid;
}

namespace detail {

/// Fixed-order pairwise reduction for run-to-run reproducibility.
inline DElem pairwise_sum(std::vector<DElem>& terms, size_t lo, size_t hi) {
  if (hi - lo == 1) return terms[lo];
  const size_t mid = lo + (hi - lo) / 2;
  return add(pairwise_sum(terms, lo, mid), pairwise_sum(terms, mid, hi));
}

}  // namespace detail

using SliceEvaluator = std::function<DElem(const DElem&)>;

struct Reconstruction {
  DElem value = DElem::zero(AlgebraSpec::quaternions());
  bool ill_conditioned = false;  // x within 0.05 R of the sphere
};

/// Surface-integral reconstruction of f at x inside the slice ball:
/// sum over nodes of kernel(y, x) * normal(y) * f(y) * weight, products
/// associated left to right.
inline Reconstruction reconstruct(const SliceEvaluator& f, const DElem& J,
                                  const DElem& y0, double R, const DElem& x,
                                  int order) {
  const double dist = modulus(sub(x, y0));
  if (dist >= R)
    throw std::domain_error("cauchy reconstruct: point outside the open ball");
  // slice membership: x - y0 must lie in span(1, i, J)
  std::vector<DElem> gens{DElem::one(H()), DElem::unit(H(), 1), J};
  if (!coordinates_in(gens, sub(x, y0), 1e-9))
    throw std::domain_error("cauchy reconstruct: point outside the slice");
  Reconstruction out;
  out.ill_conditioned = dist > 0.95 * R;
  const QuadratureGrid grid = make_grid(J, y0, R, order);
  std::vector<DElem> terms;
  terms.reserve(grid.points.size());
  for (size_t i = 0; i < grid.points.size(); ++i) {
    DElem t = mul(mul(cauchy_kernel(grid.points[i], x), grid.normals[i]),
                  f(grid.points[i]));
    terms.push_back(scale(t, grid.weights[i]));
  }
  out.value = detail::pairwise_sum(terms, 0, terms.size());
  return out;
}

inline DElem cauchy_reconstruct(const SliceEvaluator& f, const DElem& J, const DElem& y0,
                                double R, const DElem& x, int order) {
  return reconstruct(f, J, y0, R, x, order).value;
}

}  // namespace treg::cauchy
