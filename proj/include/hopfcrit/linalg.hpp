#pragma once

// Dense little-matrix helpers and a one-sided Jacobi SVD.  Everything here
// targets the small, sometimes very tall matrices produced by finite
// differencing (at most a few hundred rows, ~32 columns).  Jacobi works on
// column inner products only, so it keeps full relative accuracy on the
// tiny singular values this project cares about, which is why it is used
// instead of a bidiagonalization scheme.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfcrit {

struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;  // row-major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {
    if (r < 0 || c < 0) throw std::invalid_argument("negative matrix shape");
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.cols, m.rows);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
  return t;
}

inline Matrix matmul(const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("matmul shape mismatch");
  Matrix r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const double v = x.at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

inline double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

/// Thin SVD, a = u * diag(sigma) * v^T with sigma descending, u of shape
/// rows x k, v of shape cols x k, k = min(rows, cols).  Both factors have
/// orthonormal columns even when a is rank deficient.
struct SvdResult {
  Matrix u;
  std::vector<double> sigma;
  Matrix v;
};

namespace detail {

inline double col_dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

// Plane rotations on column pairs until every pair is orthogonal to
// working precision.  v, when present, accumulates the right factor.
inline void jacobi_orthogonalize(std::vector<std::vector<double>>& col,
                                 std::vector<std::vector<double>>* v) {
  const int n = static_cast<int>(col.size());
  const double tol2 = 1e-30;  // squared relative off-diagonal threshold
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double app = col_dot(col[p], col[p]);
        const double aqq = col_dot(col[q], col[q]);
        const double apq = col_dot(col[p], col[q]);
        if (app == 0.0 || aqq == 0.0) continue;
        if (apq * apq <= tol2 * app * aqq) continue;
        const double tau = (aqq - app) / (2.0 * apq);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        auto rotate = [&](std::vector<double>& cp, std::vector<double>& cq) {
          for (std::size_t i = 0; i < cp.size(); ++i) {
            const double xp = cp[i], xq = cq[i];
            cp[i] = c * xp - s * xq;
            cq[i] = s * xp + c * xq;
          }
        };
        rotate(col[p], col[q]);
        if (v) rotate((*v)[p], (*v)[q]);
        rotated = true;
      }
    }
    if (!rotated) break;
  }
}

inline void check_finite(const Matrix& m) {
  for (double v : m.a)
    if (!std::isfinite(v)) throw std::domain_error("svd input has non-finite entries");
}

}  // namespace detail

/// Singular values only (descending).  Cheaper than svd(): no factor
/// accumulation, and the caller often only needs the spectrum.
inline std::vector<double> svd_singular_values(const Matrix& input) {
  detail::check_finite(input);
  const Matrix* m = &input;
  Matrix t;
  if (input.rows < input.cols) {
    t = transpose(input);
    m = &t;
  }
  std::vector<std::vector<double>> col(m->cols, std::vector<double>(m->rows));
  for (int c = 0; c < m->cols; ++c)
    for (int r = 0; r < m->rows; ++r) col[c][r] = m->at(r, c);
  detail::jacobi_orthogonalize(col, nullptr);
  std::vector<double> sigma(col.size());
  for (std::size_t j = 0; j < col.size(); ++j) sigma[j] = std::sqrt(detail::col_dot(col[j], col[j]));
  std::sort(sigma.begin(), sigma.end(), std::greater<double>());
  return sigma;
}

inline SvdResult svd(const Matrix& input) {
  detail::check_finite(input);
  const bool flipped = input.rows < input.cols;
  const Matrix work_src = flipped ? transpose(input) : input;
  const int m = work_src.rows, n = work_src.cols;

  std::vector<std::vector<double>> col(n, std::vector<double>(m));
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < m; ++r) col[c][r] = work_src.at(r, c);
  std::vector<std::vector<double>> vcol(n, std::vector<double>(n, 0.0));
  for (int c = 0; c < n; ++c) vcol[c][c] = 1.0;

  detail::jacobi_orthogonalize(col, &vcol);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> len(n);
  for (int j = 0; j < n; ++j) len[j] = std::sqrt(detail::col_dot(col[j], col[j]));
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return len[x] > len[y]; });

  Matrix u(m, n), v(n, n);
  std::vector<double> sigma(n);
  for (int j = 0; j < n; ++j) {
    const int src = order[j];
    sigma[j] = len[src];
    for (int i = 0; i < n; ++i) v.at(i, j) = vcol[src][i];
    if (sigma[j] > 0.0)
      for (int i = 0; i < m; ++i) u.at(i, j) = col[src][i] / sigma[j];
  }

  // Columns with zero singular value carry no direction of their own;
  // complete u to an orthonormal frame so the factor contract still holds.
  for (int j = 0; j < n; ++j) {
    if (sigma[j] > 0.0) continue;
    for (int seed = 0; seed < m; ++seed) {
      std::vector<double> cand(m, 0.0);
      cand[seed] = 1.0;
      for (int k = 0; k < n; ++k) {
        if (k == j || (sigma[k] == 0.0 && k > j)) continue;
        double dot = 0.0;
        for (int i = 0; i < m; ++i) dot += cand[i] * u.at(i, k);
        for (int i = 0; i < m; ++i) cand[i] -= dot * u.at(i, k);
      }
      double nn = 0.0;
      for (double x : cand) nn += x * x;
      if (nn > 0.25) {
        nn = std::sqrt(nn);
        for (int i = 0; i < m; ++i) u.at(i, j) = cand[i] / nn;
        break;
      }
    }
  }

  SvdResult r;
  r.sigma = std::move(sigma);
  if (flipped) {
    r.u = std::move(v);
    r.v = std::move(u);
  } else {
    r.u = std::move(u);
    r.v = std::move(v);
  }
  return r;
}

/// Numerical rank of a spectrum sorted descending.  Values below the
/// absolute floor count as zero outright (a matrix whose largest singular
/// value is sub-floor has rank 0); otherwise entries are measured against
/// rel_tol * sigma_max.
inline int rank_from_singular_values(const std::vector<double>& sigma, double rel_tol,
                                     double abs_floor = 1e-12) {
  if (sigma.empty() || !(sigma.front() >= abs_floor)) return 0;
  int r = 0;
  for (double s : sigma)
    if (s > rel_tol * sigma.front()) ++r;
  return r;
}

}  // namespace hopfcrit
