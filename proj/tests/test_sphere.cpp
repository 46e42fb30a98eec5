#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "hopfcrit/sphere.hpp"

using namespace hopfcrit;

namespace {

double chord(const SpherePoint& p, const SpherePoint& q) {
  double d2 = 0.0;
  for (int i = 0; i < p.ambient_dim(); ++i) {
    const double d = p.x[static_cast<std::size_t>(i)] - q.x[static_cast<std::size_t>(i)];
    d2 += d * d;
  }
  return std::sqrt(d2);
}

}  // namespace

TEST_CASE("random_unit is deterministic per seed and lands on the sphere") {
  Rng a(mix_seed(5, 3)), b(mix_seed(5, 3)), c(mix_seed(5, 4));
  for (int dim : {2, 3, 5, 9, 17}) {
    const SpherePoint p = random_unit(dim, a);
    const SpherePoint q = random_unit(dim, b);
    const SpherePoint r = random_unit(dim, c);
    double n = 0.0, dev = 0.0, far = 0.0;
    for (int i = 0; i < dim; ++i) {
      n += p.x[static_cast<std::size_t>(i)] * p.x[static_cast<std::size_t>(i)];
      dev = std::max(dev, std::abs(p.x[static_cast<std::size_t>(i)] - q.x[static_cast<std::size_t>(i)]));
      far = std::max(far, std::abs(p.x[static_cast<std::size_t>(i)] - r.x[static_cast<std::size_t>(i)]));
    }
    CHECK(std::abs(n - 1.0) < 1e-14);
    CHECK(dev == 0.0);
    CHECK(far > 1e-6);
  }
}

TEST_CASE("sampling is unbiased: the empirical mean stays near the origin") {
  for (int dim : {4, 9, 16}) {
    Rng rng(mix_seed(6, static_cast<std::uint64_t>(dim)));
    std::vector<double> mean(static_cast<std::size_t>(dim), 0.0);
    constexpr int kSamples = 100000;
    for (int k = 0; k < kSamples; ++k) {
      const SpherePoint p = random_unit(dim, rng);
      for (int i = 0; i < dim; ++i) mean[static_cast<std::size_t>(i)] += p.x[static_cast<std::size_t>(i)];
    }
    double norm_sq = 0.0;
    for (double& c : mean) {
      c /= kSamples;
      norm_sq += c * c;
    }
    // a biased generator parks the mean at O(1); an unbiased one keeps it
    // at O(1/sqrt(samples)) ~ 3e-3
    CHECK(std::sqrt(norm_sq) < 0.02);
  }
}

TEST_CASE("geodesic distance on landmark pairs") {
  const SpherePoint ex{{1.0, 0.0, 0.0}};
  const SpherePoint ey{{0.0, 1.0, 0.0}};
  const SpherePoint mex{{-1.0, 0.0, 0.0}};
  CHECK(geodesic_distance(ex, ex) == 0.0);
  CHECK(geodesic_distance(ex, ey) == Catch::Approx(std::numbers::pi / 2).margin(1e-14));
  CHECK(geodesic_distance(ex, mex) == Catch::Approx(std::numbers::pi).margin(1e-14));
}

TEST_CASE("chart round trip away from the projection pole") {
  Rng rng(mix_seed(6, 0));
  for (int dim : {3, 5, 9, 17}) {
    for (int rep = 0; rep < 200; ++rep) {
      const SpherePoint p = random_unit(dim, rng);
      const Chart chart = select_chart(p);
      const std::vector<double> u = chart.forward(p);
      CHECK(chord(chart.backward(u), p) < 1e-12);
      // far-pole selection keeps the chart well conditioned
      double u2 = 0.0;
      for (double v : u) u2 += v * v;
      CHECK(u2 <= 1.0 + 1e-12);
      const double lam = chart.conformal_factor(u);
      CHECK(lam >= 1.0 - 1e-12);
      CHECK(lam <= 2.0 + 1e-12);
    }
  }
}

TEST_CASE("chart rejects its own pole") {
  const Chart north{3, 1.0};
  CHECK_THROWS_AS(north.forward(SpherePoint{{0.0, 0.0, 1.0}}), chart_error);
  CHECK_NOTHROW(north.forward(SpherePoint{{0.0, 0.0, -1.0}}));
}

TEST_CASE("tangent frame is orthonormal and tangent") {
  Rng rng(mix_seed(7, 0));
  for (int dim : {2, 3, 5, 9, 17}) {
    for (int rep = 0; rep < 50; ++rep) {
      const SpherePoint p = random_unit(dim, rng);
      const auto frame = tangent_frame(p);
      REQUIRE(static_cast<int>(frame.size()) == dim - 1);
      for (std::size_t a = 0; a < frame.size(); ++a) {
        double dp = 0.0;
        for (int i = 0; i < dim; ++i) dp += frame[a][static_cast<std::size_t>(i)] * p.x[static_cast<std::size_t>(i)];
        CHECK(std::abs(dp) < 1e-12);
        for (std::size_t b = a; b < frame.size(); ++b) {
          double g = 0.0;
          for (int i = 0; i < dim; ++i) g += frame[a][static_cast<std::size_t>(i)] * frame[b][static_cast<std::size_t>(i)];
          CHECK(std::abs(g - (a == b ? 1.0 : 0.0)) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("finite-difference differential of reference maps") {
  Rng rng(mix_seed(8, 0));

  SECTION("identity map has unit singular values") {
    for (int dim : {3, 5, 9}) {
      const SpherePoint p = random_unit(dim, rng);
      const TangentMap tm = jacobian_fd([](const std::vector<double>& x) { return x; }, p);
      REQUIRE(static_cast<int>(tm.sigma.size()) == dim - 1);
      for (double s : tm.sigma) CHECK(s == Catch::Approx(1.0).margin(1e-8));
      CHECK(rank_with_tol(tm, 1e-6) == dim - 1);
    }
  }

  SECTION("antipodal map is an isometry too") {
    const SpherePoint p = random_unit(5, rng);
    const TangentMap tm = jacobian_fd(
        [](const std::vector<double>& x) {
          std::vector<double> y(x);
          for (double& v : y) v = -v;
          return y;
        },
        p);
    for (double s : tm.sigma) CHECK(s == Catch::Approx(1.0).margin(1e-8));
  }

  SECTION("constant map has rank zero") {
    const SpherePoint p = random_unit(7, rng);
    const TangentMap tm = jacobian_fd(
        [](const std::vector<double>& x) { return std::vector<double>(x.size(), 0.25); }, p);
    CHECK(rank_with_tol(tm, 1e-6) == 0);
    CHECK(tm.sigma[0] < 1e-11);
  }

  SECTION("squashing a factor halves one stretch") {
    // map fixing the first two coordinates and scaling the third
    const SpherePoint p = normalized_sphere_point({0.6, 0.8, 0.0});
    const TangentMap tm = jacobian_fd(
        [](const std::vector<double>& x) {
          return std::vector<double>{x[0], x[1], 0.5 * x[2]};
        },
        p);
    REQUIRE(tm.sigma.size() == 2);
    CHECK(tm.sigma[0] == Catch::Approx(1.0).margin(1e-8));
    CHECK(tm.sigma[1] == Catch::Approx(0.5).margin(1e-8));
  }
}

TEST_CASE("input validation in geometry helpers") {
  Rng rng(1);
  CHECK_THROWS_AS(normalized_sphere_point({0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(random_unit(0, rng), std::invalid_argument);
  const SpherePoint p{{1.0, 0.0}};
  const SpherePoint q{{1.0, 0.0, 0.0}};
  CHECK_THROWS_AS(geodesic_distance(p, q), std::invalid_argument);
  CHECK_THROWS_AS(jacobian_fd([](const std::vector<double>& x) { return x; }, p, 0.0),
                  std::invalid_argument);
}
