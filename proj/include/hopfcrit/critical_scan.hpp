#pragma once

// Critical-point search for the smoothed suspension H: S^{2n} -> S^{n+1}.
//
// A point is critical when the differential drops below full rank n+1,
// detected on the finite-difference Jacobian via rank_with_tol.  The
// search has to cope with an awkward numerical fact: the bump profile is
// so flat that H is *constant to double precision* on small caps around
// the two poles (psi underflows), so inside those caps the Jacobian is
// exactly zero and no descent direction exists.  The scan therefore runs
// in two stages:
//
//   1. gradient descent on sigma_{n+1} from stratified random starts,
//      which walks candidates into the flat caps;
//   2. once a candidate sits in a zero cap, the cap itself is measured:
//      bisection along great circles locates its boundary, a hyperplane
//      fit recovers the boundary circle's plane, and the cap's center is
//      read off as the unit normal.  The fit is certified (plane residual
//      and radius spread), so an asymmetric degeneracy would be reported
//      as unconverged rather than silently "centered".
//
// Stage 2 localizes the true critical point to ~1e-9 even though no
// pointwise derivative information survives near the poles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hopfcrit/hopf.hpp"
#include "hopfcrit/parallel.hpp"
#include "hopfcrit/random.hpp"
#include "hopfcrit/sphere.hpp"

namespace hopfcrit {

/// Largest sigma_1 at which a probe counts as lying in a flat cap; equals
/// the absolute floor used by rank_with_tol.
inline constexpr double kFlatCapSigma = 1e-12;

struct ScanConfig {
  int n = 2;
  int grid_levels = 32;      // latitude strata over t in (-1, 1)
  int dirs_per_level = 256;  // random equatorial directions per stratum
  int keep_per_level = 2;    // candidates refined per stratum
  std::uint64_t seed = 1;
  double fd_step = 1e-5;
  double crit_rel_tol = 1e-6;    // rank tolerance flagging criticality
  double refine_tol = 1e-10;     // descent step floor
  double merge_distance = 1e-3;  // geodesic dedup radius
  int max_refine_iters = 60;
  int max_threads = 0;  // 0: HOPF_CRITICAL_THREADS or hardware
};

struct ScanCandidate {
  SpherePoint point;
  double sigma_max = 0.0;
  double sigma_crit = 0.0;  // sigma_{n+1}
  bool critical = false;
  bool converged = false;
  std::string method;  // "descent" or "plateau-center"
  int iterations = 0;
  double pole_distance = 0.0;   // geodesic to the nearest suspension pole
  double plateau_radius = 0.0;  // fitted cap radius when plateau-centered
};

struct ScanResult {
  int n = 0;
  std::vector<ScanCandidate> critical_points;
  int coarse_samples = 0;
  int refined = 0;
  int plateau_clusters = 0;
  double min_offpole_sigma_crit = std::numeric_limits<double>::infinity();
  double min_offpole_ratio = std::numeric_limits<double>::infinity();
  std::vector<std::string> warnings;
};

namespace detail {

struct SigmaProbe {
  double sigma_max = 0.0;
  double sigma_crit = 0.0;
  bool critical = false;
};

inline SigmaProbe probe_suspension(const SuspensionMap& H, const SpherePoint& q, double step,
                                   double crit_rel_tol) {
  const TangentMap tm = jacobian_fd(H, q, step);
  SigmaProbe p;
  p.sigma_max = tm.sigma.front();
  p.sigma_crit = tm.sigma[static_cast<std::size_t>(H.n)];
  p.critical = rank_with_tol(tm, crit_rel_tol) < H.n + 1;
  return p;
}

inline SpherePoint rotate_toward(const SpherePoint& p, const std::vector<double>& dir, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  std::vector<double> q(p.x.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = c * p.x[i] + s * dir[i];
  return normalized_sphere_point(std::move(q));
}

inline std::vector<double> random_tangent(const SpherePoint& p, Rng& rng) {
  const int d = p.ambient_dim();
  while (true) {
    std::vector<double> v(static_cast<std::size_t>(d));
    for (double& c : v) c = rng.normal();
    double dot = 0.0;
    for (int i = 0; i < d; ++i) dot += v[static_cast<std::size_t>(i)] * p.x[static_cast<std::size_t>(i)];
    double n2 = 0.0;
    for (int i = 0; i < d; ++i) {
      v[static_cast<std::size_t>(i)] -= dot * p.x[static_cast<std::size_t>(i)];
      n2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    }
    if (n2 > 1e-8) {
      const double inv = 1.0 / std::sqrt(n2);
      for (double& c : v) c *= inv;
      return v;
    }
  }
}

inline double pole_distance(const SpherePoint& p) {
  const double t = std::clamp(std::abs(p.x.back()), -1.0, 1.0);
  return std::acos(t);
}

struct DescentOutcome {
  SpherePoint point;
  SigmaProbe probe;
  bool in_flat_cap = false;
  int iterations = 0;
};

inline DescentOutcome descend_sigma(const SuspensionMap& H, const SpherePoint& start,
                                    const ScanConfig& cfg) {
  DescentOutcome out{start, probe_suspension(H, start, cfg.fd_step, cfg.crit_rel_tol), false, 0};
  double eta = 0.05;
  for (int iter = 0; iter < cfg.max_refine_iters; ++iter) {
    out.iterations = iter;
    if (out.probe.sigma_max < kFlatCapSigma) {
      out.in_flat_cap = true;
      return out;
    }
    const auto frame = tangent_frame(out.point);
    std::vector<double> g(frame.size());
    const double delta = 1e-5;
    double gn2 = 0.0;
    for (std::size_t j = 0; j < frame.size(); ++j) {
      const double hi = probe_suspension(H, rotate_toward(out.point, frame[j], delta), cfg.fd_step,
                                         cfg.crit_rel_tol)
                            .sigma_crit;
      const double lo = probe_suspension(H, rotate_toward(out.point, frame[j], -delta), cfg.fd_step,
                                         cfg.crit_rel_tol)
                            .sigma_crit;
      g[j] = (hi - lo) / (2.0 * delta);
      gn2 += g[j] * g[j];
    }
    const double gn = std::sqrt(gn2);
    if (gn == 0.0) break;
    std::vector<double> dir(out.point.x.size(), 0.0);
    for (std::size_t j = 0; j < frame.size(); ++j)
      for (std::size_t i = 0; i < dir.size(); ++i) dir[i] -= (g[j] / gn) * frame[j][i];

    eta = std::min(0.5, std::max(eta * 2.0, 1e-8));
    bool improved = false;
    while (eta >= cfg.refine_tol) {
      const SpherePoint q = rotate_toward(out.point, dir, eta);
      const SigmaProbe pq = probe_suspension(H, q, cfg.fd_step, cfg.crit_rel_tol);
      if (pq.sigma_crit < out.probe.sigma_crit) {
        out.point = q;
        out.probe = pq;
        improved = true;
        break;
      }
      eta /= 3.0;
    }
    if (!improved) break;
  }
  out.in_flat_cap = out.probe.sigma_max < kFlatCapSigma;
  return out;
}

struct CapFit {
  SpherePoint center;
  double radius = 0.0;
  double plane_residual = 0.0;
  double radius_spread = 0.0;
  bool ok = false;
};

// Measures the flat cap containing seed.  Boundary points are located by
// bisection on "sigma_1 <= kFlatCapSigma" along great circles; their
// affine hyperplane has the cap's center as unit normal.  The fit refuses
// to certify anything that is not a round cap.
inline CapFit fit_flat_cap(const SuspensionMap& H, const SpherePoint& seed, const ScanConfig& cfg,
                           Rng& rng) {
  CapFit fit;
  auto inside = [&](const SpherePoint& q) {
    return probe_suspension(H, q, cfg.fd_step, cfg.crit_rel_tol).sigma_max <= kFlatCapSigma;
  };
  if (!inside(seed)) return fit;

  const int kDirs = 64;
  const int d = seed.ambient_dim();
  std::vector<std::vector<double>> boundary;
  boundary.reserve(kDirs);
  for (int k = 0; k < kDirs; ++k) {
    const std::vector<double> v = random_tangent(seed, rng);
    double lo = 0.0, hi = 1e-3;
    bool found = false;
    while (hi < 2.8) {
      if (inside(rotate_toward(seed, v, hi))) {
        lo = hi;
        hi *= 2.0;
      } else {
        found = true;
        break;
      }
    }
    if (!found) return fit;  // no exit: not a cap
    for (int it = 0; it < 60 && (hi - lo) > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (inside(rotate_toward(seed, v, mid)) ? lo : hi) = mid;
    }
    boundary.push_back(rotate_toward(seed, v, 0.5 * (lo + hi)).x);
  }

  std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
  for (const auto& q : boundary)
    for (int i = 0; i < d; ++i) mean[static_cast<std::size_t>(i)] += q[static_cast<std::size_t>(i)];
  for (double& c : mean) c /= kDirs;
  Matrix b(kDirs, d);
  for (int r = 0; r < kDirs; ++r)
    for (int i = 0; i < d; ++i)
      b.at(r, i) = boundary[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)];
  const SvdResult sv = svd(b);

  std::vector<double> w(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = sv.v.at(i, d - 1);
  double orient = 0.0;
  for (int i = 0; i < d; ++i) orient += w[static_cast<std::size_t>(i)] * mean[static_cast<std::size_t>(i)];
  if (orient < 0.0)
    for (double& c : w) c = -c;
  fit.center = normalized_sphere_point(w);

  for (const auto& q : boundary) {
    double dev = 0.0;
    for (int i = 0; i < d; ++i)
      dev += (q[static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)]) * fit.center.x[static_cast<std::size_t>(i)];
    fit.plane_residual = std::max(fit.plane_residual, std::abs(dev));
  }
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0, rsum = 0.0;
  for (const auto& q : boundary) {
    const double th = geodesic_distance(fit.center, SpherePoint{q});
    rmin = std::min(rmin, th);
    rmax = std::max(rmax, th);
    rsum += th;
  }
  fit.radius = rsum / kDirs;
  fit.radius_spread = rmax - rmin;
  fit.ok = fit.plane_residual < 1e-7 && fit.radius_spread < 1e-6 && inside(fit.center);
  return fit;
}

inline bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}

}  // namespace detail

/// Full search.  Deterministic for a fixed config regardless of thread
/// count: random streams are indexed by work item, refinement is keyed to
/// canonically ordered clusters, and reductions run serially.
inline ScanResult critical_scan(const ScanConfig& cfg) {
  require_hopf_n(cfg.n);
  if (cfg.grid_levels < 1 || cfg.dirs_per_level < 1)
    throw std::invalid_argument("scan grid must have at least one cell");
  if (cfg.keep_per_level < 1) throw std::invalid_argument("keep_per_level must be positive");
  if (!(cfg.fd_step > 0.0) || !(cfg.crit_rel_tol > 0.0))
    throw std::invalid_argument("scan tolerances must be positive");

  ScanResult res;
  res.n = cfg.n;
  if (cfg.grid_levels < 8)
    res.warnings.push_back("grid density " + std::to_string(cfg.grid_levels) +
                           " is below the supported minimum of 8; critical points may be missed");

  const SuspensionMap H{cfg.n};
  const int threads = resolve_thread_count(cfg.max_threads);
  const int L = cfg.grid_levels, D = cfg.dirs_per_level;
  const std::size_t total = static_cast<std::size_t>(L) * static_cast<std::size_t>(D);
  res.coarse_samples = static_cast<int>(total);

  struct Coarse {
    SpherePoint p;
    detail::SigmaProbe probe;
    double ratio = 0.0;
  };
  std::vector<Coarse> coarse(total);
  parallel_for(total, threads, [&](std::size_t idx) {
    const int level = static_cast<int>(idx) / D;
    const double t = -1.0 + 2.0 * (level + 0.5) / L;
    Rng rng(mix_seed(cfg.seed, idx));
    const SpherePoint dir = random_unit(2 * cfg.n, rng);
    std::vector<double> x(static_cast<std::size_t>(2 * cfg.n + 1));
    const double r = std::sqrt(std::max(0.0, 1.0 - t * t));
    for (int i = 0; i < 2 * cfg.n; ++i) x[static_cast<std::size_t>(i)] = r * dir.x[static_cast<std::size_t>(i)];
    x.back() = t;
    Coarse c;
    c.p = normalized_sphere_point(std::move(x));
    c.probe = detail::probe_suspension(H, c.p, cfg.fd_step, cfg.crit_rel_tol);
    c.ratio = c.probe.sigma_max > 0.0 ? c.probe.sigma_crit / c.probe.sigma_max : 0.0;
    coarse[idx] = std::move(c);
  });

  for (const Coarse& c : coarse) {
    if (std::abs(c.p.x.back()) <= 0.99) {
      res.min_offpole_sigma_crit = std::min(res.min_offpole_sigma_crit, c.probe.sigma_crit);
      if (c.probe.sigma_max > 0.0) res.min_offpole_ratio = std::min(res.min_offpole_ratio, c.ratio);
    }
  }

  // best starts per stratum, by criticality ratio
  std::vector<std::size_t> starts;
  for (int level = 0; level < L; ++level) {
    std::vector<std::size_t> ids(static_cast<std::size_t>(D));
    for (int k = 0; k < D; ++k) ids[static_cast<std::size_t>(k)] = static_cast<std::size_t>(level) * D + k;
    std::stable_sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
      if (coarse[a].ratio != coarse[b].ratio) return coarse[a].ratio < coarse[b].ratio;
      return coarse[a].probe.sigma_crit < coarse[b].probe.sigma_crit;
    });
    for (int k = 0; k < std::min(cfg.keep_per_level, D); ++k) starts.push_back(ids[static_cast<std::size_t>(k)]);
  }
  res.refined = static_cast<int>(starts.size());

  std::vector<detail::DescentOutcome> refined(starts.size());
  parallel_for(starts.size(), threads, [&](std::size_t i) {
    refined[i] = detail::descend_sigma(H, coarse[starts[i]].p, cfg);
  });

  // cluster flat-cap arrivals; one certified fit per cluster
  std::vector<ScanCandidate> found;
  std::vector<std::size_t> cap_members;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    if (refined[i].in_flat_cap)
      cap_members.push_back(i);
    else {
      ScanCandidate c;
      c.point = refined[i].point;
      c.sigma_max = refined[i].probe.sigma_max;
      c.sigma_crit = refined[i].probe.sigma_crit;
      c.critical = refined[i].probe.critical;
      c.converged = false;  // descent stalled without reaching a flat cap
      c.method = "descent";
      c.iterations = refined[i].iterations;
      c.pole_distance = detail::pole_distance(refined[i].point);
      if (c.critical) found.push_back(std::move(c));
    }
  }
  std::stable_sort(cap_members.begin(), cap_members.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = refined[a].point.x;
    const auto& pb = refined[b].point.x;
    if (pa.back() != pb.back()) return pa.back() > pb.back();
    return detail::lex_less(pa, pb);
  });

  std::vector<std::vector<std::size_t>> clusters;
  for (std::size_t id : cap_members) {
    bool placed = false;
    for (auto& cl : clusters) {
      if (geodesic_distance(refined[cl.front()].point, refined[id].point) < 0.5) {
        cl.push_back(id);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({id});
  }
  res.plateau_clusters = static_cast<int>(clusters.size());

  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    Rng rng(mix_seed(cfg.seed, 0xCAB00Full + ci));
    const detail::DescentOutcome& rep = refined[clusters[ci].front()];
    const detail::CapFit fit = detail::fit_flat_cap(H, rep.point, cfg, rng);
    ScanCandidate c;
    c.method = "plateau-center";
    c.iterations = rep.iterations;
    if (fit.ok) {
      c.point = fit.center;
      const detail::SigmaProbe pr = detail::probe_suspension(H, fit.center, cfg.fd_step, cfg.crit_rel_tol);
      c.sigma_max = pr.sigma_max;
      c.sigma_crit = pr.sigma_crit;
      c.critical = pr.critical;
      c.converged = true;
      c.plateau_radius = fit.radius;
    } else {
      c.point = rep.point;
      c.sigma_max = rep.probe.sigma_max;
      c.sigma_crit = rep.probe.sigma_crit;
      c.critical = rep.probe.critical;
      c.converged = false;
    }
    c.pole_distance = detail::pole_distance(c.point);
    found.push_back(std::move(c));
  }

  // dedup by geodesic distance, preferring converged candidates
  std::stable_sort(found.begin(), found.end(), [](const ScanCandidate& a, const ScanCandidate& b) {
    if (a.converged != b.converged) return a.converged;
    return a.sigma_crit < b.sigma_crit;
  });
  for (const ScanCandidate& c : found) {
    bool dup = false;
    for (const ScanCandidate& kept : res.critical_points)
      if (geodesic_distance(c.point, kept.point) < cfg.merge_distance) {
        dup = true;
        break;
      }
    if (!dup) res.critical_points.push_back(c);
  }
  std::stable_sort(res.critical_points.begin(), res.critical_points.end(),
                   [](const ScanCandidate& a, const ScanCandidate& b) {
                     if (a.point.x.back() != b.point.x.back()) return a.point.x.back() > b.point.x.back();
                     return detail::lex_less(a.point.x, b.point.x);
                   });
  return res;
}

/// Regression sweep for the submersion margin away from the poles: the
/// minimum of sigma_{n+1} over random points with |t| <= t_cap, plus
/// deterministic probes pinned to the extreme rings |t| = t_cap where the
/// minimum actually lives.
struct SweepResult {
  int n = 0;
  int samples = 0;
  double t_cap = 0.99;
  double min_sigma_crit = std::numeric_limits<double>::infinity();
  double min_ratio = std::numeric_limits<double>::infinity();
  int rank_deficient = 0;
};

inline SweepResult offpole_sigma_sweep(int n, int samples, double t_cap, std::uint64_t seed,
                                       int max_threads = 0, double fd_step = 1e-5) {
  require_hopf_n(n);
  if (samples < 1) throw std::invalid_argument("sweep needs at least one sample");
  if (!(t_cap > 0.0 && t_cap < 1.0)) throw std::invalid_argument("t_cap must be inside (0, 1)");

  const SuspensionMap H{n};
  const int threads = resolve_thread_count(max_threads);
  const int ring = 4 * n + 4;  // deterministic probes on both extreme rings
  const std::size_t total = static_cast<std::size_t>(samples) + static_cast<std::size_t>(ring);

  std::vector<double> crit(total), ratio(total);
  std::vector<int> deficient(total, 0);
  parallel_for(total, threads, [&](std::size_t idx) {
    SpherePoint q;
    if (idx < static_cast<std::size_t>(ring)) {
      const int axis = static_cast<int>(idx) % (2 * n);
      const double t = (static_cast<int>(idx) < ring / 2 ? 1.0 : -1.0) * t_cap;
      std::vector<double> x(static_cast<std::size_t>(2 * n + 1), 0.0);
      x[static_cast<std::size_t>(axis)] = std::sqrt(1.0 - t * t);
      x.back() = t;
      q = normalized_sphere_point(std::move(x));
    } else {
      Rng rng(mix_seed(seed, idx));
      while (true) {
        q = random_unit(2 * n + 1, rng);
        if (std::abs(q.x.back()) <= t_cap) break;
      }
    }
    const TangentMap tm = jacobian_fd(H, q, fd_step);
    crit[idx] = tm.sigma[static_cast<std::size_t>(n)];
    ratio[idx] = tm.sigma.front() > 0.0 ? crit[idx] / tm.sigma.front() : 0.0;
    deficient[idx] = rank_with_tol(tm, 1e-6) < n + 1 ? 1 : 0;
  });

  SweepResult res;
  res.n = n;
  res.samples = static_cast<int>(total);
  res.t_cap = t_cap;
  for (std::size_t i = 0; i < total; ++i) {
    res.min_sigma_crit = std::min(res.min_sigma_crit, crit[i]);
    res.min_ratio = std::min(res.min_ratio, ratio[i]);
    res.rank_deficient += deficient[i];
  }
  return res;
}

}  // namespace hopfcrit
