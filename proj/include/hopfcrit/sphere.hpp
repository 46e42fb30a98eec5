#pragma once

// Numerical geometry on round unit spheres: stereographic charts, tangent
// frames, uniform sampling, and finite-difference differentials of maps
// between spheres.
//
// Differentials are always reported against an orthonormal basis of the
// domain tangent space, with rows in ambient codomain coordinates.  For a
// map S^a -> S^b that gives a (b+1) x a matrix; its singular values are
// basis-independent, and for an isometry they are all 1.

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfcrit/linalg.hpp"
#include "hopfcrit/random.hpp"

namespace hopfcrit {

struct chart_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Point on the unit sphere of its ambient space (|x| = 1 up to 1e-12).
struct SpherePoint {
  std::vector<double> x;

  int ambient_dim() const { return static_cast<int>(x.size()); }
};

inline SpherePoint normalized_sphere_point(std::vector<double> v) {
  double n = 0.0;
  for (double c : v) n += c * c;
  n = std::sqrt(n);
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::domain_error("cannot normalize a zero or non-finite vector onto the sphere");
  for (double& c : v) c /= n;
  return SpherePoint{std::move(v)};
}

/// Uniform point on S^{dim-1} inside R^dim (Gaussian direction method).
inline SpherePoint random_unit(int ambient_dim, Rng& rng) {
  if (ambient_dim < 1) throw std::invalid_argument("ambient dimension must be positive");
  while (true) {
    std::vector<double> v(static_cast<std::size_t>(ambient_dim));
    double n = 0.0;
    for (double& c : v) {
      c = rng.normal();
      n += c * c;
    }
    if (n > 1e-12) {
      n = std::sqrt(n);
      for (double& c : v) c /= n;
      return SpherePoint{std::move(v)};
    }
  }
}

/// Angle between unit vectors, computed from the chord so it stays
/// accurate for nearby points.
inline double geodesic_distance(const SpherePoint& p, const SpherePoint& q) {
  if (p.ambient_dim() != q.ambient_dim())
    throw std::invalid_argument("geodesic_distance: ambient dimension mismatch");
  double d2 = 0.0;
  for (int i = 0; i < p.ambient_dim(); ++i) {
    const double d = p.x[i] - q.x[i];
    d2 += d * d;
  }
  const double half = std::min(1.0, std::sqrt(d2) / 2.0);
  return 2.0 * std::asin(half);
}

/// Stereographic chart of S^{d-1} projecting from the pole
/// (0,...,0, pole_sign).  The projection is conformal; chart coordinate
/// directions at u push forward to orthogonal tangent vectors of common
/// length conformal_factor(u) = 2/(1+|u|^2).
struct Chart {
  int ambient_dim = 0;
  double pole_sign = 1.0;

  std::vector<double> forward(const SpherePoint& p) const {
    require_dim(p);
    const int d = ambient_dim;
    const double denom = 1.0 - pole_sign * p.x[static_cast<std::size_t>(d - 1)];
    if (!(denom > 1e-12))
      throw chart_error("point lies at or numerically at the projection pole of this chart");
    std::vector<double> u(static_cast<std::size_t>(d - 1));
    for (int i = 0; i < d - 1; ++i) u[static_cast<std::size_t>(i)] = p.x[static_cast<std::size_t>(i)] / denom;
    return u;
  }

  SpherePoint backward(const std::vector<double>& u) const {
    if (static_cast<int>(u.size()) != ambient_dim - 1)
      throw std::invalid_argument("chart coordinate has wrong dimension");
    double u2 = 0.0;
    for (double c : u) u2 += c * c;
    std::vector<double> x(static_cast<std::size_t>(ambient_dim));
    const double denom = 1.0 + u2;
    for (int i = 0; i < ambient_dim - 1; ++i) x[static_cast<std::size_t>(i)] = 2.0 * u[static_cast<std::size_t>(i)] / denom;
    x[static_cast<std::size_t>(ambient_dim - 1)] = pole_sign * (u2 - 1.0) / denom;
    return SpherePoint{std::move(x)};
  }

  double conformal_factor(const std::vector<double>& u) const {
    double u2 = 0.0;
    for (double c : u) u2 += c * c;
    return 2.0 / (1.0 + u2);
  }

 private:
  void require_dim(const SpherePoint& p) const {
    if (p.ambient_dim() != ambient_dim)
      throw std::invalid_argument("chart ambient dimension mismatch");
  }
};

/// Chart whose projection pole is the pole farther from p, so p sits in
/// the region where the chart is well conditioned (|u| <= 1, factor in
/// [1,2]).
inline Chart select_chart(const SpherePoint& p) {
  const double last = p.x.empty() ? 0.0 : p.x.back();
  return Chart{p.ambient_dim(), last > 0.0 ? -1.0 : 1.0};
}

/// Orthonormal basis of the tangent space at p, via the Householder
/// reflection exchanging p with a signed last basis vector.  Returns
/// ambient_dim-1 ambient vectors.
inline std::vector<std::vector<double>> tangent_frame(const SpherePoint& p) {
  const int d = p.ambient_dim();
  if (d < 2) throw std::invalid_argument("tangent frame needs ambient dimension >= 2");
  const double s = p.x[static_cast<std::size_t>(d - 1)] >= 0.0 ? 1.0 : -1.0;
  std::vector<double> v = p.x;
  v[static_cast<std::size_t>(d - 1)] += s;
  double v2 = 0.0;
  for (double c : v) v2 += c * c;
  std::vector<std::vector<double>> frame;
  frame.reserve(static_cast<std::size_t>(d - 1));
  for (int j = 0; j < d - 1; ++j) {
    std::vector<double> col(static_cast<std::size_t>(d), 0.0);
    const double f = 2.0 * v[static_cast<std::size_t>(j)] / v2;
    for (int i = 0; i < d; ++i) col[static_cast<std::size_t>(i)] = -f * v[static_cast<std::size_t>(i)];
    col[static_cast<std::size_t>(j)] += 1.0;
    frame.push_back(std::move(col));
  }
  return frame;
}

/// Differential of a sphere map at a base point, orthonormal domain frame
/// against ambient codomain rows, with the singular values cached.
struct TangentMap {
  SpherePoint base;
  Matrix m;
  std::vector<double> sigma;
};

inline int rank_with_tol(const TangentMap& map, double rel_tol, double abs_floor = 1e-12) {
  return rank_from_singular_values(map.sigma, rel_tol, abs_floor);
}

/// Central-difference differential of f: S^{d-1} -> R^k (unit-sphere
/// valued in practice).  Differencing happens in the far-pole chart and is
/// rescaled by the conformal factor, so columns correspond to orthonormal
/// tangent directions at p.
template <typename F>
TangentMap jacobian_fd(F&& f, const SpherePoint& p, double step = 1e-5) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  const Chart chart = select_chart(p);
  const std::vector<double> u0 = chart.forward(p);
  const double lambda = chart.conformal_factor(u0);
  const int dom = static_cast<int>(u0.size());

  TangentMap out;
  out.base = p;
  std::vector<double> u = u0;
  for (int j = 0; j < dom; ++j) {
    u[static_cast<std::size_t>(j)] = u0[static_cast<std::size_t>(j)] + step;
    const std::vector<double> hi = f(chart.backward(u).x);
    u[static_cast<std::size_t>(j)] = u0[static_cast<std::size_t>(j)] - step;
    const std::vector<double> lo = f(chart.backward(u).x);
    u[static_cast<std::size_t>(j)] = u0[static_cast<std::size_t>(j)];
    if (hi.size() != lo.size()) throw std::logic_error("map codomain dimension is not constant");
    if (j == 0) out.m = Matrix(static_cast<int>(hi.size()), dom);
    for (int i = 0; i < out.m.rows; ++i)
      out.m.at(i, j) = (hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]) / (2.0 * step * lambda);
  }
  out.sigma = svd_singular_values(out.m);
  return out;
}

}  // namespace hopfcrit
