#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "treg/hypercomplex.hpp"

namespace treg {

/// Step list T = (t_0,...,t_tau) over a hypercomplex basis of dimension n+1,
/// selecting the nested subspaces Span(v_0..v_{t_h}). Block h (1 <= h <= tau)
/// covers basis slots t_{h-1}+1 .. t_h.
template <class S>
class TFan {
 public:
  TFan(HypercomplexBasis<S> basis, std::vector<int> steps, std::string name = "")
      : basis_(std::move(basis)), steps_(std::move(steps)), name_(std::move(name)) {
    if (!basis_.verified) throw std::invalid_argument("TFan: basis not verified");
    const int n = basis_.m();
    if (steps_.empty()) throw std::invalid_argument("TFan: empty step list");
    int prev = -1;
    for (int t : steps_) {
      if (t <= prev) throw std::invalid_argument("TFan: steps must strictly increase");
      prev = t;
    }
    if (steps_.front() < 0 || steps_.back() != n)
      throw std::invalid_argument("TFan: steps must satisfy 0 <= t_0 < ... < t_tau = n");
  }

  const HypercomplexBasis<S>& basis() const { return basis_; }
  const std::vector<int>& steps() const { return steps_; }
  const std::string& name() const { return name_; }

  int n() const { return basis_.m(); }
  int tau() const { return static_cast<int>(steps_.size()) - 1; }
  int t0() const { return steps_.front(); }
  int mirror_dim() const { return t0() + 1; }
  int torus_dim() const { return n() - t0() - tau(); }
  int slice_vars() const { return t0() + 1 + tau(); }

  int block_begin(int h) const { return steps_[static_cast<size_t>(h) - 1] + 1; }
  int block_end(int h) const { return steps_[static_cast<size_t>(h)]; }  // inclusive
  int block_size(int h) const { return block_end(h) - block_begin(h) + 1; }

  const Element<S>& v(int s) const { return basis_.vectors[static_cast<size_t>(s)]; }

 private:
  HypercomplexBasis<S> basis_;
  std::vector<int> steps_;
  std::string name_;
};

/// A torus point: one unit vector per block, stored as its coordinates over
/// the block's basis slots. J(h) rebuilds the algebra element.
template <class S>
struct TorusPoint {
  std::vector<Eigen::Matrix<S, Eigen::Dynamic, 1>> blocks;

  int tau() const { return static_cast<int>(blocks.size()); }
};

template <class S>
Element<S> torus_element(const TFan<S>& fan, const TorusPoint<S>& J, int h) {
  Element<S> e = Element<S>::zero(*fan.basis().algebra);
  const auto& blk = J.blocks[static_cast<size_t>(h) - 1];
  for (int idx = 0; idx < blk.size(); ++idx)
    e = add(e, scale(fan.v(fan.block_begin(h) + idx), blk[idx]));
  return e;
}

template <class S>
bool torus_point_valid(const TFan<S>& fan, const TorusPoint<S>& J,
                       double tol = kDefaultTol) {
  if (J.tau() != fan.tau()) return false;
  for (int h = 1; h <= fan.tau(); ++h) {
    if (J.blocks[static_cast<size_t>(h) - 1].size() != fan.block_size(h)) return false;
    if (!in_sphere(torus_element(fan, J, h), tol)) return false;
  }
  return true;
}

/// Canonical block representative: the first block basis vector.
template <class S>
TorusPoint<S> canonical_torus_point(const TFan<S>& fan) {
  TorusPoint<S> J;
  for (int h = 1; h <= fan.tau(); ++h) {
    Eigen::Matrix<S, Eigen::Dynamic, 1> blk =
        Eigen::Matrix<S, Eigen::Dynamic, 1>::Zero(fan.block_size(h));
    blk[0] = S(1);
    J.blocks.push_back(std::move(blk));
  }
  return J;
}

/// x = mirror + beta_1 J_1 + ... + beta_tau J_tau.
template <class S>
struct SlicePoint {
  Element<S> mirror;
  std::vector<S> beta;
  TorusPoint<S> torus;
};

template <class S>
Element<S> recompose(const TFan<S>& fan, const SlicePoint<S>& p) {
  Element<S> x = p.mirror;
  for (int h = 1; h <= fan.tau(); ++h)
    x = add(x, scale(torus_element(fan, p.torus, h), p.beta[static_cast<size_t>(h) - 1]));
  return x;
}

/// Coordinates of x over the fan's basis vectors; throws when x lies outside
/// Span(v_0..v_n).
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, 1> fan_coordinates(const TFan<S>& fan,
                                                    const Element<S>& x,
                                                    double tol = kDefaultTol) {
  auto c = coordinates_in(fan.basis().vectors, x, tol);
  if (!c) throw std::invalid_argument("fan: element outside the basis span");
  return *c;
}

/// Canonical decomposition: beta_h >= 0 and J_h = x^h / beta_h when the block
/// part is nonzero, J_h the first block vector otherwise. On the rational
/// backend each block norm must be a perfect square.
template <class S>
SlicePoint<S> decompose(const TFan<S>& fan, const Element<S>& x,
                        double tol = kDefaultTol) {
  using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  const Vec c = fan_coordinates(fan, x, tol);
  SlicePoint<S> out{Element<S>::zero(*fan.basis().algebra), {}, {}};
  Element<S> mirror = Element<S>::zero(*fan.basis().algebra);
  for (int s = 0; s <= fan.t0(); ++s) mirror = add(mirror, scale(fan.v(s), c[s]));
  out.mirror = std::move(mirror);
  for (int h = 1; h <= fan.tau(); ++h) {
    const int b = fan.block_begin(h), e = fan.block_end(h);
    S norm2(0);
    for (int s = b; s <= e; ++s) norm2 += c[s] * c[s];
    if (scalar_is_zero(norm2, tol)) {
      out.beta.push_back(S(0));
      Vec blk = Vec::Zero(fan.block_size(h));
      blk[0] = S(1);
      out.torus.blocks.push_back(std::move(blk));
      continue;
    }
    auto beta = exact_sqrt(norm2);
    if (!beta)
      throw std::domain_error("decompose: block norm is not a perfect square (exact backend)");
    Vec blk(fan.block_size(h));
    for (int s = b; s <= e; ++s) blk[s - b] = c[s] / *beta;
    out.beta.push_back(*beta);
    out.torus.blocks.push_back(std::move(blk));
  }
  return out;
}

/// The symmetric completion of {x}: all recompositions of (mirror, beta) over
/// the full torus.
template <class S>
struct Orbit {
  Element<S> mirror;
  std::vector<S> beta;  // canonical, nonnegative
};

template <class S>
Orbit<S> symmetric_orbit(const TFan<S>& fan, const Element<S>& x,
                         double tol = kDefaultTol) {
  SlicePoint<S> p = decompose(fan, x, tol);
  return Orbit<S>{std::move(p.mirror), std::move(p.beta)};
}

template <class S>
bool orbit_contains(const TFan<S>& fan, const Orbit<S>& orbit, const Element<S>& y,
                    double tol = kDefaultTol) {
  try {
    const SlicePoint<S> p = decompose(fan, y, tol);
    if (!is_zero(sub(p.mirror, orbit.mirror), tol)) return false;
    for (int h = 0; h < fan.tau(); ++h) {
      const S diff = p.beta[static_cast<size_t>(h)] - orbit.beta[static_cast<size_t>(h)];
      if (!scalar_is_zero(diff, tol)) return false;
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

/// Membership of x in the slice Span(v_0..v_{t_0}, J_1..J_tau).
template <class S>
bool slice_membership(const TFan<S>& fan, const TorusPoint<S>& J, const Element<S>& x,
                      double tol = kDefaultTol) {
  std::vector<Element<S>> gens;
  for (int s = 0; s <= fan.t0(); ++s) gens.push_back(fan.v(s));
  for (int h = 1; h <= fan.tau(); ++h) gens.push_back(torus_element(fan, J, h));
  return coordinates_in(gens, x, tol).has_value();
}

namespace detail {

/// Rational points on the unit sphere S^{b-1} by stereographic projection of
/// parameter tuples u: first coordinate (1-|u|^2)/(1+|u|^2), then
/// 2u_i/(1+|u|^2). Exact sphere membership for exact parameters.
template <class S>
Eigen::Matrix<S, Eigen::Dynamic, 1> stereographic(const std::vector<S>& u) {
  const int b = static_cast<int>(u.size()) + 1;
  S s2(0);
  for (const S& t : u) s2 += t * t;
  const S den = S(1) + s2;
  Eigen::Matrix<S, Eigen::Dynamic, 1> p(b);
  p[0] = (S(1) - s2) / den;
  for (int i = 1; i < b; ++i) p[i] = S(2) * u[static_cast<size_t>(i) - 1] / den;
  return p;
}

/// Parameter ladder for one axis of a density-D grid: (2m - (D-1)) / (D+1).
template <class S>
std::vector<S> grid_axis(int density) {
  std::vector<S> out;
  for (int m = 0; m < density; ++m)
    out.push_back(ScalarInfo<S>::from_ratio(2 * m - (density - 1), density + 1));
  return out;
}

}  // namespace detail

/// Exact grid over the torus: stereographic rational points per block, full
/// cartesian product across blocks. One-dimensional blocks contribute the
/// single representative +v (sign flips give the same slice).
template <class S>
std::vector<TorusPoint<S>> torus_grid(const TFan<S>& fan, int density) {
  if (density < 1) throw std::invalid_argument("torus_grid: density must be >= 1");
  using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
  std::vector<std::vector<Vec>> per_block;
  for (int h = 1; h <= fan.tau(); ++h) {
    const int b = fan.block_size(h);
    std::vector<Vec> pts;
    if (b == 1) {
      Vec p(1);
      p[0] = S(1);
      pts.push_back(std::move(p));
    } else {
      const std::vector<S> axis = detail::grid_axis<S>(density);
      std::vector<std::vector<S>> tuples{{}};
      for (int i = 0; i < b - 1; ++i) {
        std::vector<std::vector<S>> next;
        for (const auto& tup : tuples)
          for (const S& t : axis) {
            auto ext = tup;
            ext.push_back(t);
            next.push_back(std::move(ext));
          }
        tuples = std::move(next);
      }
      for (const auto& tup : tuples) pts.push_back(detail::stereographic<S>(tup));
    }
    per_block.push_back(std::move(pts));
  }
  std::vector<TorusPoint<S>> out{TorusPoint<S>{}};
  for (const auto& pts : per_block) {
    std::vector<TorusPoint<S>> next;
    for (const auto& base : out)
      for (const auto& p : pts) {
        TorusPoint<S> j = base;
        j.blocks.push_back(p);
        next.push_back(std::move(j));
      }
    out = std::move(next);
  }
  if (fan.tau() == 0) out.assign(1, TorusPoint<S>{});
  return out;
}

/// Seeded float64 sampling: per block, a normalized Gaussian vector.
inline std::vector<TorusPoint<double>> torus_random(const TFan<double>& fan,
                                                    std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<TorusPoint<double>> out;
  for (int i = 0; i < count; ++i) {
    TorusPoint<double> J;
    for (int h = 1; h <= fan.tau(); ++h) {
      Eigen::VectorXd blk(fan.block_size(h));
      double n2 = 0;
      do {
        for (int s = 0; s < blk.size(); ++s) blk[s] = gauss(rng);
        n2 = blk.squaredNorm();
      } while (n2 < 1e-12);
      blk /= std::sqrt(n2);
      J.blocks.push_back(std::move(blk));
    }
    out.push_back(std::move(J));
  }
  return out;
}

}  // namespace treg
