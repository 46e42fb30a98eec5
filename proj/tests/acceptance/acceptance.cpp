// Acceptance gate: ten self-contained criteria, one verdict line each.
// Every tolerance is pinned here as a named constant; a criterion either
// meets its stated bar or the binary exits nonzero.  No criterion depends
// on the outcome of another.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hopfcrit/algebra.hpp"
#include "hopfcrit/critical_scan.hpp"
#include "hopfcrit/fiber_sum.hpp"
#include "hopfcrit/homology.hpp"
#include "hopfcrit/hopf.hpp"
#include "hopfcrit/linalg.hpp"
#include "hopfcrit/random.hpp"
#include "hopfcrit/sphere.hpp"
#include "hopfcrit/thresholds.hpp"

namespace {

using namespace hopfcrit;

constexpr std::uint64_t kSeed = 20260822;

// pinned acceptance tolerances
constexpr double kPoleTol = 1e-6;           // critical points must sit this close to a pole
constexpr double kSigmaTwoTol = 1e-8;       // |sigma - 2| on the analytic differential
constexpr double kSpectrumZeroTol = 1e-12;  // tail of the analytic spectrum
constexpr double kFiberProjTol = 1e-10;     // fiber points must map to the target this well
constexpr double kFiberGapTol = 1e-9;       // sigma_{n+1}/sigma_1 of the fiber point matrix
constexpr double kAlgebraTol = 1e-12;       // relative residual of the algebra laws
constexpr int kSweepSamples = 100000;       // off-pole samples per dimension
constexpr double kSweepTCap = 0.99;         // |t| range certified by the sweep

const int kDims[] = {2, 4, 8};

// --------------------------------------------------------------- criterion 1

bool graph_assembly_formula(std::string& detail) {
  std::int64_t graphs = 0;
  bool ok = true;
  std::set<std::pair<int, int>> ec_seen;
  for_each_connected_multigraph(6, 7, [&](const FiberSumGraph& g) {
    ++graphs;
    const AssemblyResult r = assemble(g, 2);
    const std::int64_t expect =
        2 * static_cast<std::int64_t>(g.edge_count()) - 2 * g.cycle_rank() + 2;
    ok &= r.critical_count == expect;
    ok &= r.critical_count == 2 * g.vertices;
    ok &= r.phi_formula_value == expect;
    ec_seen.insert({g.edge_count(), g.cycle_rank()});
  });

  // each (e, c) that occurred must agree with its homological lower bound
  for (const auto& [e, c] : ec_seen) {
    if (c == 1) continue;  // outside the bound's covered range
    for (int n : kDims) {
      const LowerBoundReport lb = lower_bound(phi_domain_descriptor(e, c, n), n);
      ok &= lb.covered && *lb.bound == 2 * static_cast<std::int64_t>(e) - 2 * c + 2;
    }
  }

  std::ostringstream os;
  os << graphs << " connected multigraphs with <= 6 edges, " << ec_seen.size()
     << " (e, c) classes";
  detail = os.str();
  return ok && graphs == 48722 && ec_seen.size() == 28;
}

// --------------------------------------------------------------- criterion 2

bool suspension_critical_set(std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (int n : kDims) {
    const PhiVerdict v = phi_verdict(0, 0, n);
    ok &= v.value.has_value() && *v.value == 2;

    ScanConfig cfg;
    cfg.n = n;
    cfg.seed = kSeed;
    const ScanResult res = critical_scan(cfg);
    ok &= res.critical_points.size() == 2;
    double worst = 0.0;
    for (const ScanCandidate& c : res.critical_points) {
      worst = std::max(worst, c.pole_distance);
      ok &= c.pole_distance <= kPoleTol;
      ok &= c.converged && c.critical;
    }
    os << "n=" << n << ": " << res.critical_points.size()
       << " points, worst pole distance " << worst << "; ";
  }
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------- criterion 3

bool offpole_sigma_floor_holds(std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (int n : kDims) {
    const SweepResult s = offpole_sigma_sweep(n, kSweepSamples, kSweepTCap, kSeed);
    ok &= s.min_sigma_crit > offpole_sigma_floor(n);
    ok &= s.min_ratio > offpole_ratio_floor(n);
    os << "n=" << n << ": min sigma " << s.min_sigma_crit << " (floor "
       << offpole_sigma_floor(n) << "), min ratio " << s.min_ratio << "; ";
  }
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------- criterion 4

bool submersion_spectrum(std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (int n : kDims) {
    Rng rng(mix_seed(kSeed, static_cast<std::uint64_t>(n)));
    double worst = 0.0, worst_tail = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const SpherePoint p = random_unit(2 * n, rng);
      const TangentMap tm = hopf_jacobian_analytic(n, p);
      for (int i = 0; i < n; ++i)
        worst = std::max(worst, std::abs(tm.sigma[static_cast<std::size_t>(i)] - 2.0));
      for (std::size_t i = static_cast<std::size_t>(n); i < tm.sigma.size(); ++i)
        worst_tail = std::max(worst_tail, tm.sigma[i]);
    }
    ok &= worst <= kSigmaTwoTol && worst_tail <= kSpectrumZeroTol;
    os << "n=" << n << ": max |sigma - 2| = " << worst << "; ";
  }
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------- criterion 5

bool fiber_geometry(std::string& detail) {
  bool ok = true;
  std::ostringstream os;
  for (int n : kDims) {
    Rng rng(mix_seed(kSeed, 0xF1B0ull + static_cast<std::uint64_t>(n)));
    double worst_proj = 0.0, worst_gap = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const double s = -0.95 + 1.95 * rng.uniform01();
      const SpherePoint ydir = random_unit(n, rng);
      std::vector<double> tx(ydir.x);
      const double r = std::sqrt(std::max(0.0, 1.0 - s * s));
      for (double& c : tx) c *= r;
      tx.push_back(s);
      const FiberSample fs = fiber_sample(n, normalized_sphere_point(std::move(tx)), 200, rng);
      worst_proj = std::max(worst_proj, fs.max_projection_error);
      ok &= fs.linear_rank == n;
      if (fs.sigma.front() > 0.0)
        worst_gap = std::max(worst_gap,
                             fs.sigma[static_cast<std::size_t>(n)] / fs.sigma.front());
    }
    ok &= worst_proj <= kFiberProjTol && worst_gap <= kFiberGapTol;
    os << "n=" << n << ": worst projection " << worst_proj << ", worst gap " << worst_gap
       << "; ";
  }
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------- criterion 6

bool gysin_grid(std::string& detail) {
  bool ok = true;
  int cells = 0;
  for (int n : kDims)
    for (std::int64_t c = 0; c <= 6; ++c)
      for (std::int64_t b = 1; b <= 10; ++b) {
        const GysinResult g = gysin_unknown_rank(c, b, n);
        const std::int64_t expect = 2 * c + b - 2;
        ok &= g.rank == expect;
        ok &= g.feasible == (expect >= 0);
        ok &= g.sequence == std::vector<std::int64_t>{0, c, expect, b + c - 1, 1, 0};
        ++cells;
      }
  // the certificate: the single impossible cell, in every dimension
  for (int n : kDims) {
    const GysinResult g = gysin_unknown_rank(0, 1, n);
    ok &= !g.feasible && g.rank == -1;
  }
  std::ostringstream os;
  os << cells << " grid cells, unknown always 2c + b - 2, sole infeasible cell (c, b) = (0, 1)";
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------- criterion 7

bool puncture_linearity(std::string& detail) {
  bool ok = true;
  // the twice-punctured sphere that carries a suspension block contributes
  // exactly one boundary rank, in every admissible dimension
  for (int n : kDims) {
    const ManifoldDescriptor s = parse_descriptor("S" + std::to_string(n + 1));
    ok &= puncture_betti(s, 2) == 1;
    for (std::int64_t k = 1; k <= 10; ++k) ok &= puncture_betti(s, k) == k - 1;
  }
  int pairs = 0;
  for (int n : kDims)
    for (std::int64_t e = 0; e <= 4; ++e)
      for (std::int64_t c = 0; c <= 4; ++c) {
        const ManifoldDescriptor d = phi_domain_descriptor(e, c, n);
        const std::int64_t base = betti(d)[static_cast<std::size_t>(d.dim - 1)];
        for (std::int64_t k = 1; k <= 50; ++k)
          ok &= puncture_betti(d, k) == base + k - 1;
        const ManifoldDescriptor t = phi_target_descriptor(c, n);
        const std::int64_t tbase = betti(t)[static_cast<std::size_t>(t.dim - 1)];
        for (std::int64_t k = 1; k <= 10; ++k)
          ok &= puncture_betti(t, k) == tbase + k - 1;
        ++pairs;
      }
  std::ostringstream os;
  os << "S^(n+1) twice punctured has rank 1; " << pairs
     << " descriptor pairs stay linear in the puncture count";
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------- criterion 8

bool algebra_laws(std::string& detail) {
  bool ok = true;
  double worst = 0.0;
  for (int dim : kDims) {
    Rng rng(mix_seed(kSeed, 0xA16ull + static_cast<std::uint64_t>(dim)));
    for (int k = 0; k < 100000; ++k) {
      AlgebraElement a{dim}, b{dim};
      for (int i = 0; i < dim; ++i) {
        a.coeff[static_cast<std::size_t>(i)] = rng.normal();
        b.coeff[static_cast<std::size_t>(i)] = rng.normal();
      }
      const double scale = norm(a) * norm(b);
      if (scale <= 0.0) continue;
      worst = std::max(worst, std::abs(norm(mul(a, b)) - scale) / scale);
      const double left = norm(sub(mul(a, mul(a, b)), mul(mul(a, a), b)));
      const double right = norm(sub(mul(mul(b, a), a), mul(b, mul(a, a))));
      worst = std::max(worst, left / (norm_sq(a) * norm(b)));
      worst = std::max(worst, right / (norm_sq(a) * norm(b)));
    }
  }
  ok &= worst <= kAlgebraTol;

  // octonion basis associators: exactly 168 of the 343 unit triples fail
  // to associate, always by a defect of norm 2; quaternions never fail
  int nonassoc = 0;
  bool norms_ok = true;
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j)
      for (int k = 1; k <= 7; ++k) {
        AlgebraElement ei{8}, ej{8}, ek{8};
        ei.coeff[static_cast<std::size_t>(i)] = 1.0;
        ej.coeff[static_cast<std::size_t>(j)] = 1.0;
        ek.coeff[static_cast<std::size_t>(k)] = 1.0;
        const double a = norm(sub(mul(mul(ei, ej), ek), mul(ei, mul(ej, ek))));
        if (a > 1.0) ++nonassoc;
        norms_ok &= std::abs(a) <= kAlgebraTol || std::abs(a - 2.0) <= kAlgebraTol;
      }
  ok &= norms_ok && nonassoc == 168;

  int quat_nonassoc = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k) {
        AlgebraElement ei{4}, ej{4}, ek{4};
        ei.coeff[static_cast<std::size_t>(i)] = 1.0;
        ej.coeff[static_cast<std::size_t>(j)] = 1.0;
        ek.coeff[static_cast<std::size_t>(k)] = 1.0;
        if (norm(sub(mul(mul(ei, ej), ek), mul(ei, mul(ej, ek)))) > kAlgebraTol) ++quat_nonassoc;
      }
  ok &= quat_nonassoc == 0;

  std::ostringstream os;
  os << "worst law residual " << worst
     << " over 100000 pairs per dimension; 168/343 octonion unit triples non-associative, 0/27 quaternion";
  detail = os.str();
  return ok;
}

// --------------------------------------------------------------- criterion 9

bool verdict_regimes(std::string& detail) {
  bool ok = true;
  int cells = 0;
  for (int n : kDims)
    for (std::int64_t e = 0; e <= 6; ++e)
      for (std::int64_t c = 0; c <= 6; ++c) {
        const PhiVerdict v = phi_verdict(e, c, n);
        ++cells;
        if (e == 0 && c == 1) {
          ok &= v.kind == PhiKind::FibrationZero && v.value.has_value() && *v.value == 0;
        } else if (c == 1) {
          ok &= v.kind == PhiKind::UpperBoundOnly && v.value.has_value() && *v.value == 2 * e;
          ok &= v.construction_count.has_value() && *v.construction_count == 2 * e;
          ok &= !v.lower_bound_value.has_value();
        } else if (e < c) {
          ok &= v.kind == PhiKind::Unknown && !v.value.has_value();
        } else {
          ok &= v.kind == PhiKind::Exact && v.value.has_value() &&
                *v.value == 2 * e - 2 * c + 2;
          ok &= v.construction_count.has_value() && *v.construction_count == *v.value;
          ok &= v.lower_bound_value.has_value() && *v.lower_bound_value == *v.value;
        }
        ok &= v.consistent;
      }
  std::ostringstream os;
  os << cells << " (n, e, c) cells across the four regimes, all cross-checks consistent";
  detail = os.str();
  return ok;
}

// -------------------------------------------------------------- criterion 10

bool descriptor_corpus(std::string& detail) {
  const char* good[50] = {
      "S4", "S8", "S16", "Sigma4", "Sigma8", "Sigma16",
      "S2xS2", "S4xS4", "S8xS8", "S1xS3", "S1xS7", "S1xS15",
      "2*S2xS2", "3*S4xS4", "17*S8xS8", "S2xS2 # S2xS2", "S2xS2 # S1xS3",
      "Sigma8 # S4xS4", "Sigma8 # 2*S4xS4 # 3*S1xS7", "S4 # S4 # S4",
      "Sigma4 # Sigma4", "Sigma16 # S8xS8 # S1xS15", "S2xS6", "S3xS5",
      "S2xS6 # S4xS4", "2*S3xS5 # S4xS4", " S4xS4 ", "S4xS4#S4xS4",
      "  2  *  S2xS2  #  S1xS3  ", "S1xS1", "S1xS1 # S1xS1", "S2xS3",
      "S2xS3 # S1xS4", "10*S1xS7", "1*Sigma8", "4*Sigma4 # S2xS2",
      "S5xS5 # S1xS9", "S6xS6", "S7xS7 # 2*S1xS13", "S10",
      "Sigma8#S4xS4#S1xS7", "2*S2xS2 # 2*S1xS3 # Sigma4",
      "S1xS2", "S1xS2 # S1xS2", "9*S4xS4 # 9*S1xS7", "S12xS12",
      "S3xS3 # S1xS5", "S2xS4", "S2xS4 # S3xS3", "1000*S2xS2",
  };
  bool ok = true;
  for (const char* text : good) {
    try {
      const ManifoldDescriptor d = parse_descriptor(text);
      ok &= d == parse_descriptor(to_string(d));
      const auto b = betti(d);
      ok &= b.front() == 1 && b.back() == 1;
    } catch (const std::exception&) {
      ok = false;
    }
  }

  const char* bad[] = {"", "S", "Sigma", "S0", "Sigma1", "S1", "S4 # S6", "S4x",
                       "3S4", "0*S4", "S4 S4", "Q5", "S4 #", "S4xS", "# S4"};
  int caught = 0;
  for (const char* text : bad) {
    try {
      (void)parse_descriptor(text);
    } catch (const parse_error&) {
      ++caught;
    }
  }
  ok &= caught == static_cast<int>(sizeof(bad) / sizeof(bad[0]));

  std::ostringstream os;
  os << "50 expressions round-trip through the normal form, " << caught
     << " malformed ones rejected with positions";
  detail = os.str();
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*run)(std::string&);
  };
  const Criterion criteria[] = {
      {"graph-assembly-count-formula", graph_assembly_formula},
      {"suspension-critical-set", suspension_critical_set},
      {"off-pole-sigma-floor", offpole_sigma_floor_holds},
      {"submersion-spectrum", submersion_spectrum},
      {"fiber-geometry", fiber_geometry},
      {"euler-segment-grid", gysin_grid},
      {"puncture-linearity", puncture_linearity},
      {"algebra-laws", algebra_laws},
      {"verdict-regimes", verdict_regimes},
      {"descriptor-corpus", descriptor_corpus},
  };

  const int total = static_cast<int>(sizeof(criteria) / sizeof(criteria[0]));
  int passed = 0;
  for (int i = 0; i < total; ++i) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = criteria[i].run(detail);
    } catch (const std::exception& e) {
      detail = std::string("unexpected exception: ") + e.what();
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%2d/%d] %s  %-30s  (%.2f s)  %s\n", i + 1, total, ok ? "PASS" : "FAIL",
                criteria[i].name, wall, detail.c_str());
    std::fflush(stdout);
    if (ok) ++passed;
  }
  std::printf("%d/%d acceptance criteria passed\n", passed, total);
  return passed == total ? 0 : 1;
}
