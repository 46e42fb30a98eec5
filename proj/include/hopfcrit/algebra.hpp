#pragma once

// Normed division algebras R, C, H, O realized by Cayley-Dickson doubling
// over double coordinates.  The doubling convention used throughout is
//
//   (a,b) * (c,d) = (a*c - conj(d)*b, d*a + b*conj(c)),
//   conj((a,b))   = (conj(a), -b),
//
// which makes e1*e2 = e3 in the quaternions.  Supported dimensions are
// 1, 2, 4 and 8; octonions are the largest algebra in which the norm is
// still multiplicative, and several geometric routines downstream rely
// on exactly that.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hopfcrit {

inline constexpr int kMaxAlgebraDim = 8;

inline bool is_supported_algebra_dim(int dim) {
  return dim == 1 || dim == 2 || dim == 4 || dim == 8;
}

namespace detail {

inline void require_algebra_dim(int dim) {
  if (!is_supported_algebra_dim(dim))
    throw std::invalid_argument("algebra dimension must be 1, 2, 4 or 8, got " +
                                std::to_string(dim));
}

// Conjugation negates every coordinate except the real part.  This is the
// closed form of the recursive rule conj((a,b)) = (conj(a), -b).
inline void cd_conj(int dim, const double* x, double* out) {
  out[0] = x[0];
  for (int i = 1; i < dim; ++i) out[i] = -x[i];
}

// Recursive doubling product.  dim <= 8, so fixed-size scratch on the
// stack is enough and no allocation happens on any path.
inline void cd_mul(int dim, const double* x, const double* y, double* out) {
  if (dim == 1) {
    out[0] = x[0] * y[0];
    return;
  }
  const int h = dim / 2;
  const double* a = x;
  const double* b = x + h;
  const double* c = y;
  const double* d = y + h;
  double cj[4], t1[4], t2[4];
  // low half: a*c - conj(d)*b
  cd_conj(h, d, cj);
  cd_mul(h, a, c, t1);
  cd_mul(h, cj, b, t2);
  for (int i = 0; i < h; ++i) out[i] = t1[i] - t2[i];
  // high half: d*a + b*conj(c)
  cd_conj(h, c, cj);
  cd_mul(h, d, a, t1);
  cd_mul(h, b, cj, t2);
  for (int i = 0; i < h; ++i) out[h + i] = t1[i] + t2[i];
}

}  // namespace detail

/// Element of R, C, H or O.  Coordinates are listed against the standard
/// basis e0..e{dim-1} with e0 the unit; unused slots stay zero.
struct AlgebraElement {
  int dim = 1;
  std::array<double, kMaxAlgebraDim> coeff{};

  AlgebraElement() = default;
  explicit AlgebraElement(int d) : dim(d) { detail::require_algebra_dim(d); }

  static AlgebraElement zero(int dim) { return AlgebraElement(dim); }

  static AlgebraElement one(int dim) {
    AlgebraElement e(dim);
    e.coeff[0] = 1.0;
    return e;
  }

  /// Basis vector e_i, 0 <= i < dim.
  static AlgebraElement basis(int dim, int i) {
    AlgebraElement e(dim);
    if (i < 0 || i >= dim)
      throw std::out_of_range("basis index " + std::to_string(i) +
                              " out of range for dimension " + std::to_string(dim));
    e.coeff[static_cast<std::size_t>(i)] = 1.0;
    return e;
  }

  double& operator[](std::size_t i) { return coeff[i]; }
  double operator[](std::size_t i) const { return coeff[i]; }

  double real() const { return coeff[0]; }
};

namespace detail {
inline void require_same_dim(const AlgebraElement& x, const AlgebraElement& y) {
  if (x.dim != y.dim)
    throw std::invalid_argument("algebra dimension mismatch: " +
                                std::to_string(x.dim) + " vs " + std::to_string(y.dim));
}
}  // namespace detail

inline AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  detail::require_same_dim(x, y);
  AlgebraElement r(x.dim);
  for (int i = 0; i < x.dim; ++i) r.coeff[i] = x.coeff[i] + y.coeff[i];
  return r;
}

inline AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) {
  detail::require_same_dim(x, y);
  AlgebraElement r(x.dim);
  for (int i = 0; i < x.dim; ++i) r.coeff[i] = x.coeff[i] - y.coeff[i];
  return r;
}

inline AlgebraElement scale(double s, const AlgebraElement& x) {
  AlgebraElement r(x.dim);
  for (int i = 0; i < x.dim; ++i) r.coeff[i] = s * x.coeff[i];
  return r;
}

inline AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) {
  detail::require_same_dim(x, y);
  AlgebraElement r(x.dim);
  detail::cd_mul(x.dim, x.coeff.data(), y.coeff.data(), r.coeff.data());
  return r;
}

inline AlgebraElement conj(const AlgebraElement& x) {
  AlgebraElement r(x.dim);
  detail::cd_conj(x.dim, x.coeff.data(), r.coeff.data());
  return r;
}

inline double norm_sq(const AlgebraElement& x) {
  double s = 0.0;
  for (int i = 0; i < x.dim; ++i) s += x.coeff[i] * x.coeff[i];
  return s;
}

inline double norm(const AlgebraElement& x) { return std::sqrt(norm_sq(x)); }

/// Two-sided inverse conj(x)/|x|^2.  Throws for (numerically) zero input.
inline AlgebraElement inv(const AlgebraElement& x) {
  const double n2 = norm_sq(x);
  if (!(n2 > 0.0))
    throw std::domain_error("cannot invert a zero algebra element");
  return scale(1.0 / n2, conj(x));
}

inline AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) { return mul(x, y); }
inline AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) { return add(x, y); }
inline AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) { return sub(x, y); }

/// Structure constants: e_i * e_j = sign[i][j] * e_{index[i][j]}.
/// Products of basis vectors are always signed basis vectors, which the
/// constructor re-derives from the doubling product and checks.
struct BasisTable {
  int dim = 1;
  std::array<std::array<std::int8_t, kMaxAlgebraDim>, kMaxAlgebraDim> sign{};
  std::array<std::array<std::uint8_t, kMaxAlgebraDim>, kMaxAlgebraDim> index{};
};

inline BasisTable basis_table(int dim) {
  detail::require_algebra_dim(dim);
  BasisTable t;
  t.dim = dim;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const AlgebraElement p = mul(AlgebraElement::basis(dim, i), AlgebraElement::basis(dim, j));
      int hits = 0;
      for (int k = 0; k < dim; ++k) {
        if (p.coeff[k] == 0.0) continue;
        ++hits;
        if (p.coeff[k] != 1.0 && p.coeff[k] != -1.0)
          throw std::logic_error("basis product is not a signed basis vector");
        t.sign[i][j] = static_cast<std::int8_t>(p.coeff[k] > 0 ? 1 : -1);
        t.index[i][j] = static_cast<std::uint8_t>(k);
      }
      if (hits != 1) throw std::logic_error("basis product is not a signed basis vector");
    }
  }
  return t;
}

}  // namespace hopfcrit
