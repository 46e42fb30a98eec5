#pragma once

// The three Hopf fibrations S^3 -> S^2, S^7 -> S^4, S^15 -> S^8 and their
// smoothed suspensions S^{2n+1-ish}... precisely: for n in {2,4,8} the
// fibration h: S^{2n-1} -> S^n is
//
//   h(a, b) = (2 a conj(b), |a|^2 - |b|^2),   a, b in the algebra of dim n,
//
// a map of constant stretch 2 on horizontal directions.  Its suspension is
// smoothed near the poles by the flat bump psi(r) = exp(1 - 1/r^2), giving
//
//   H(x, t) = (psi(|x|) h(x/|x|), t) / sqrt(psi(|x|)^2 + t^2)
//
// from S^{2n} to S^{n+1}, smooth everywhere, with the equator restriction
// equal to h and both poles mapped to poles.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfcrit/algebra.hpp"
#include "hopfcrit/linalg.hpp"
#include "hopfcrit/random.hpp"
#include "hopfcrit/sphere.hpp"

namespace hopfcrit {

inline void require_hopf_n(int n) {
  if (n != 2 && n != 4 && n != 8)
    throw std::invalid_argument("fibration dimension n must be 2, 4 or 8, got " + std::to_string(n));
}

namespace detail {

inline void require_unit(const std::vector<double>& v, const char* what) {
  double n2 = 0.0;
  for (double c : v) n2 += c * c;
  if (std::abs(n2 - 1.0) > 2e-6)
    throw std::domain_error(std::string(what) + " must lie on the unit sphere");
}

inline AlgebraElement pack(int dim, const double* src) {
  AlgebraElement e(dim);
  for (int i = 0; i < dim; ++i) e.coeff[static_cast<std::size_t>(i)] = src[i];
  return e;
}

}  // namespace detail

/// h(a,b) = (2 a conj(b), |a|^2 - |b|^2): maps S^{2n-1} into S^n.
/// p holds (a, b) as 2n coordinates; the result has n+1.
inline std::vector<double> hopf_eval(int n, const std::vector<double>& p) {
  require_hopf_n(n);
  if (static_cast<int>(p.size()) != 2 * n)
    throw std::invalid_argument("hopf_eval expects 2n coordinates");
  detail::require_unit(p, "hopf_eval input");
  const AlgebraElement a = detail::pack(n, p.data());
  const AlgebraElement b = detail::pack(n, p.data() + n);
  const AlgebraElement top = scale(2.0, mul(a, conj(b)));
  std::vector<double> out(static_cast<std::size_t>(n + 1));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = top.coeff[static_cast<std::size_t>(i)];
  out[static_cast<std::size_t>(n)] = norm_sq(a) - norm_sq(b);
  return out;
}

struct HopfMap {
  int n;
  std::vector<double> operator()(const std::vector<double>& p) const { return hopf_eval(n, p); }
};

/// Radial profile exp(1 - 1/r^2) on [0, 1]: psi(0) = 0 with all
/// derivatives vanishing there, psi(1) = 1.  Underflows to exact 0 below
/// r ~ 0.037, which is the correct limit behaviour, not an error.
inline double psi(double r) {
  if (r > 1.0 && r <= 1.0 + 1e-9) r = 1.0;
  if (r < 0.0 || r > 1.0) throw std::domain_error("psi expects a radius in [0, 1]");
  if (r == 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / (r * r));
}

/// d(psi)/dr = psi(r) * 2 / r^3, continued by 0 at r = 0.
inline double psi_derivative(double r) {
  if (r > 1.0 && r <= 1.0 + 1e-9) r = 1.0;
  if (r < 0.0 || r > 1.0) throw std::domain_error("psi expects a radius in [0, 1]");
  if (r == 0.0) return 0.0;
  return psi(r) * 2.0 / (r * r * r);
}

struct BumpProfile {
  double operator()(double r) const { return psi(r); }
  double derivative(double r) const { return psi_derivative(r); }
};

/// Smoothed suspension H(x, t) of the Hopf map; x has 2n coordinates,
/// (x, t) on S^{2n}, result on S^{n+1} as n+2 coordinates.
inline std::vector<double> suspension_eval(int n, const std::vector<double>& x, double t) {
  require_hopf_n(n);
  if (static_cast<int>(x.size()) != 2 * n)
    throw std::invalid_argument("suspension_eval expects 2n equatorial coordinates");
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  if (std::abs(r2 + t * t - 1.0) > 2e-6)
    throw std::domain_error("suspension_eval input must lie on the unit sphere");
  const double r = std::min(1.0, std::sqrt(r2));

  std::vector<double> out(static_cast<std::size_t>(n + 2), 0.0);
  const double w = r > 0.0 ? psi(r) : 0.0;
  if (w == 0.0) {
    // Inside the flat zone the map is constant along x; only the
    // suspension coordinate survives.
    out[static_cast<std::size_t>(n + 1)] = t >= 0.0 ? 1.0 : -1.0;
    return out;
  }
  std::vector<double> dir(x);
  for (double& c : dir) c /= r;
  const std::vector<double> h = hopf_eval(n, dir);
  const double denom = std::sqrt(w * w + t * t);
  for (int i = 0; i < n + 1; ++i) out[static_cast<std::size_t>(i)] = w * h[static_cast<std::size_t>(i)] / denom;
  out[static_cast<std::size_t>(n + 1)] = t / denom;
  return out;
}

struct SuspensionMap {
  int n;

  /// Evaluates on the joined coordinates (x, t) in R^{2n+1}.
  std::vector<double> operator()(const std::vector<double>& xt) const {
    if (static_cast<int>(xt.size()) != 2 * n + 1)
      throw std::invalid_argument("suspension expects 2n+1 ambient coordinates");
    std::vector<double> x(xt.begin(), xt.end() - 1);
    return suspension_eval(n, x, xt.back());
  }

  SpherePoint north_pole() const {
    std::vector<double> x(static_cast<std::size_t>(2 * n + 1), 0.0);
    x.back() = 1.0;
    return SpherePoint{std::move(x)};
  }

  SpherePoint south_pole() const {
    std::vector<double> x(static_cast<std::size_t>(2 * n + 1), 0.0);
    x.back() = -1.0;
    return SpherePoint{std::move(x)};
  }
};

/// Point of the fiber h^{-1}(y, s) indexed by a unit algebra parameter u:
///
///   (a, b) = (alpha u, conj(y) u / (2 alpha)),  alpha = sqrt((1+s)/2).
///
/// Correct because u (conj(u) y) = |u|^2 y holds in every alternative
/// algebra, octonions included.  The chart degenerates at s = -1 (there
/// the fiber is the locus a = 0), so targets numerically at the south
/// pole are rejected.
inline std::vector<double> fiber_point(int n, const std::vector<double>& y, double s,
                                       const std::vector<double>& u) {
  require_hopf_n(n);
  if (static_cast<int>(y.size()) != n || static_cast<int>(u.size()) != n)
    throw std::invalid_argument("fiber_point expects n-dimensional y and u");
  std::vector<double> target(y);
  target.push_back(s);
  detail::require_unit(target, "fiber target");
  detail::require_unit(u, "fiber parameter");
  if (s < -1.0 + 1e-6)
    throw std::domain_error("fiber chart is singular at the south-pole target");

  const double alpha = std::sqrt((1.0 + s) / 2.0);
  const AlgebraElement uu = detail::pack(n, u.data());
  const AlgebraElement yy = detail::pack(n, y.data());
  const AlgebraElement a = scale(alpha, uu);
  const AlgebraElement b = scale(1.0 / (2.0 * alpha), mul(conj(yy), uu));
  std::vector<double> p(static_cast<std::size_t>(2 * n));
  for (int i = 0; i < n; ++i) {
    p[static_cast<std::size_t>(i)] = a.coeff[static_cast<std::size_t>(i)];
    p[static_cast<std::size_t>(n + i)] = b.coeff[static_cast<std::size_t>(i)];
  }
  return p;
}

/// Random sample of one fiber plus its measured geometry: worst projection
/// mismatch under h, and the spectrum of the centered sample matrix.  The
/// fiber sits inside an n-dimensional linear subspace of R^{2n}, so the
/// centered spectrum has at most n active values.
struct FiberSample {
  SpherePoint target;
  std::vector<SpherePoint> points;
  double max_projection_error = 0.0;
  std::vector<double> sigma;
  int linear_rank = 0;
};

inline FiberSample fiber_sample(int n, const SpherePoint& target, int count, Rng& rng) {
  require_hopf_n(n);
  if (target.ambient_dim() != n + 1)
    throw std::invalid_argument("fiber target must lie in R^{n+1}");
  if (count < 2) throw std::invalid_argument("fiber_sample needs at least 2 points");

  FiberSample fs;
  fs.target = target;
  const std::vector<double> y(target.x.begin(), target.x.end() - 1);
  const double s = target.x.back();

  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const SpherePoint u = random_unit(n, rng);
    std::vector<double> p = fiber_point(n, y, s, u.x);
    const std::vector<double> img = hopf_eval(n, p);
    double err = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double d = img[static_cast<std::size_t>(i)] - target.x[static_cast<std::size_t>(i)];
      err += d * d;
    }
    fs.max_projection_error = std::max(fs.max_projection_error, std::sqrt(err));
    rows.push_back(p);
    fs.points.push_back(SpherePoint{std::move(p)});
  }

  std::vector<double> mean(static_cast<std::size_t>(2 * n), 0.0);
  for (const auto& r : rows)
    for (int i = 0; i < 2 * n; ++i) mean[static_cast<std::size_t>(i)] += r[static_cast<std::size_t>(i)];
  for (double& c : mean) c /= static_cast<double>(count);
  Matrix centered(count, 2 * n);
  for (int k = 0; k < count; ++k)
    for (int i = 0; i < 2 * n; ++i)
      centered.at(k, i) = rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)];
  fs.sigma = svd_singular_values(centered);
  fs.linear_rank = rank_from_singular_values(fs.sigma, 1e-9);
  return fs;
}

/// Exact differential of h at p, orthonormal tangent frame against the
/// n+1 ambient codomain coordinates:
///
///   dh(u, v) = (2 (u conj(b) + a conj(v)), 2 (<a,u> - <b,v>)).
///
/// The spectrum is (2, ..., 2, 0, ..., 0) with exactly n twos: h scales
/// every horizontal direction by 2 and kills the n-1 fiber directions.
inline TangentMap hopf_jacobian_analytic(int n, const SpherePoint& p) {
  require_hopf_n(n);
  if (p.ambient_dim() != 2 * n)
    throw std::invalid_argument("hopf_jacobian_analytic expects a point of S^{2n-1}");
  detail::require_unit(p.x, "hopf_jacobian_analytic input");
  const AlgebraElement a = detail::pack(n, p.x.data());
  const AlgebraElement b = detail::pack(n, p.x.data() + n);

  const std::vector<std::vector<double>> frame = tangent_frame(p);
  TangentMap out;
  out.base = p;
  out.m = Matrix(n + 1, static_cast<int>(frame.size()));
  for (std::size_t j = 0; j < frame.size(); ++j) {
    const AlgebraElement u = detail::pack(n, frame[j].data());
    const AlgebraElement v = detail::pack(n, frame[j].data() + n);
    const AlgebraElement top = scale(2.0, add(mul(u, conj(b)), mul(a, conj(v))));
    double au = 0.0, bv = 0.0;
    for (int i = 0; i < n; ++i) {
      au += a.coeff[static_cast<std::size_t>(i)] * u.coeff[static_cast<std::size_t>(i)];
      bv += b.coeff[static_cast<std::size_t>(i)] * v.coeff[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < n; ++i) out.m.at(i, static_cast<int>(j)) = top.coeff[static_cast<std::size_t>(i)];
    out.m.at(n, static_cast<int>(j)) = 2.0 * (au - bv);
  }
  out.sigma = svd_singular_values(out.m);
  return out;
}

}  // namespace hopfcrit
