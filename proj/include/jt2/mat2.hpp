// Copyright 2026 jt2 contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace jt2 {

using cplx = std::complex<double>;
using Real3x3 = std::array<std::array<double, 3>, 3>;

/** Shared numeric tolerances. All defaults are overridable per call site. */
struct Tolerances {
  double tol_herm = 1e-12;   // hermiticity defect, relative to max entry
  double tol_pd = 1e-12;     // eigenvalue floor for positivity checks
  double tol_eq = 1e-9;      // matrix equality, relative to operand scale
  double tol_class = 1e-6;   // classifier decision threshold
};

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Domain errors: bad input handed to a function (CLI exit code 1).
struct DomainError : Error {
  using Error::Error;
};

// Contract errors: a black box or sampled object violates a mathematical
// law it promised to satisfy (CLI exit code 2).
struct ContractError : Error {
  using Error::Error;
};

struct InvalidArgument : DomainError {
  using DomainError::DomainError;
};
struct NotHermitian : DomainError {
  using DomainError::DomainError;
};
struct NotPositiveDefinite : DomainError {
  using DomainError::DomainError;
};
struct NotPSD : DomainError {
  using DomainError::DomainError;
};
struct NotEffect : DomainError {
  using DomainError::DomainError;
};
struct Singular : DomainError {
  using DomainError::DomainError;
};

namespace detail {
inline std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}
}  // namespace detail

/** Dense complex 2x2 matrix, row-major. */
struct Mat2 {
  std::array<cplx, 4> e{};

  Mat2() = default;
  Mat2(cplx a, cplx b, cplx c, cplx d) : e{a, b, c, d} {}

  cplx& operator()(int i, int j) { return e[2 * i + j]; }
  const cplx& operator()(int i, int j) const { return e[2 * i + j]; }

  static Mat2 zero() { return Mat2{}; }
  static Mat2 identity() { return Mat2{1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(cplx a, cplx d) { return Mat2{a, 0.0, 0.0, d}; }
};

inline Mat2 operator+(const Mat2& x, const Mat2& y) {
  return Mat2{x.e[0] + y.e[0], x.e[1] + y.e[1], x.e[2] + y.e[2], x.e[3] + y.e[3]};
}

inline Mat2 operator-(const Mat2& x, const Mat2& y) {
  return Mat2{x.e[0] - y.e[0], x.e[1] - y.e[1], x.e[2] - y.e[2], x.e[3] - y.e[3]};
}

inline Mat2 operator*(cplx s, const Mat2& x) {
  return Mat2{s * x.e[0], s * x.e[1], s * x.e[2], s * x.e[3]};
}

inline Mat2 operator*(double s, const Mat2& x) { return cplx(s, 0.0) * x; }

inline Mat2 operator-(const Mat2& x) { return -1.0 * x; }

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
  return Mat2{x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3],
              x.e[2] * y.e[0] + x.e[3] * y.e[2], x.e[2] * y.e[1] + x.e[3] * y.e[3]};
}

inline cplx trace(const Mat2& x) { return x.e[0] + x.e[3]; }

inline cplx det(const Mat2& x) { return x.e[0] * x.e[3] - x.e[1] * x.e[2]; }

inline Mat2 transpose(const Mat2& x) { return Mat2{x.e[0], x.e[2], x.e[1], x.e[3]}; }

inline Mat2 conjugate(const Mat2& x) {
  return Mat2{std::conj(x.e[0]), std::conj(x.e[1]), std::conj(x.e[2]), std::conj(x.e[3])};
}

inline Mat2 adjoint(const Mat2& x) {
  return Mat2{std::conj(x.e[0]), std::conj(x.e[2]), std::conj(x.e[1]), std::conj(x.e[3])};
}

// Adjugate; for 2x2 matrices this coincides with (tr x) I - x.
inline Mat2 adjugate(const Mat2& x) { return Mat2{x.e[3], -x.e[1], -x.e[2], x.e[0]}; }

inline double max_abs(const Mat2& x) {
  double m = 0.0;
  for (const auto& z : x.e) m = std::max(m, std::abs(z));
  return m;
}

inline double frob_norm(const Mat2& x) {
  double s = 0.0;
  for (const auto& z : x.e) s += std::norm(z);
  return std::sqrt(s);
}

// Entrywise distance scaled by the larger operand (floored at 1).
inline double rel_diff(const Mat2& x, const Mat2& y) {
  const double scale = std::max(1.0, std::max(max_abs(x), max_abs(y)));
  return max_abs(x - y) / scale;
}

inline bool approx_equal(const Mat2& x, const Mat2& y, double tol) {
  return rel_diff(x, y) <= tol;
}

inline Mat2 inverse(const Mat2& x, double tol = 0.0) {
  const cplx d = det(x);
  if (std::abs(d) <= tol || d == cplx(0.0, 0.0)) {
    throw Singular("inverse: matrix is singular (|det| = " +
                   detail::fmt_double(std::abs(d)) + ")");
  }
  return (1.0 / d) * adjugate(x);
}

// Pauli basis. sigma_y follows the convention [[0, i], [-i, 0]]; together
// with sigma_x, sigma_z it satisfies sigma_x sigma_y = -i sigma_z.
inline const Mat2& sigma0() {
  static const Mat2 m = Mat2::identity();
  return m;
}
inline const Mat2& sigma_x() {
  static const Mat2 m{0.0, 1.0, 1.0, 0.0};
  return m;
}
inline const Mat2& sigma_y() {
  static const Mat2 m{0.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 0.0};
  return m;
}
inline const Mat2& sigma_z() {
  static const Mat2 m{1.0, 0.0, 0.0, -1.0};
  return m;
}

/**
 * Real coordinates of a hermitian matrix in the basis
 * {sigma0, sigma_x, sigma_y, sigma_z}, orthonormal under (1/2) Tr XY.
 */
struct PauliCoords {
  double a0 = 0.0;
  double ax = 0.0;
  double ay = 0.0;
  double az = 0.0;

  double operator[](int i) const {
    switch (i) {
      case 0: return a0;
      case 1: return ax;
      case 2: return ay;
      default: return az;
    }
  }
  double& operator[](int i) {
    switch (i) {
      case 0: return a0;
      case 1: return ax;
      case 2: return ay;
      default: return az;
    }
  }

  double dot(const PauliCoords& o) const {
    return a0 * o.a0 + ax * o.ax + ay * o.ay + az * o.az;
  }
  double norm() const { return std::sqrt(dot(*this)); }
  double traceless_norm() const { return std::sqrt(ax * ax + ay * ay + az * az); }
};

/**
 * Hermitian 2x2 matrix. The checked constructor accepts a raw matrix whose
 * hermiticity defect is within tol_herm (relative to the max entry, floored
 * at 1) and stores the symmetrization (m + m*)/2.
 */
class Herm2 {
 public:
  explicit Herm2(const Mat2& m, double tol_herm = Tolerances{}.tol_herm) {
    double defect = 0.0;
    defect = std::max(defect, std::abs(m.e[0] - std::conj(m.e[0])));
    defect = std::max(defect, std::abs(m.e[3] - std::conj(m.e[3])));
    defect = std::max(defect, std::abs(m.e[1] - std::conj(m.e[2])));
    const double scale = std::max(1.0, max_abs(m));
    if (!(defect <= tol_herm * scale)) {
      throw NotHermitian("Herm2: hermiticity defect " + detail::fmt_double(defect) +
                         " exceeds tolerance " + detail::fmt_double(tol_herm * scale));
    }
    m_ = symmetrize(m);
  }

  // Symmetrizes without a tolerance check. For internal construction sites
  // where hermiticity holds by algebra and only rounding needs cleaning.
  static Herm2 symmetrized(const Mat2& m) { return Herm2(symmetrize(m), Unchecked{}); }

  const Mat2& mat() const { return m_; }

  friend Herm2 operator+(const Herm2& x, const Herm2& y) {
    return Herm2(x.m_ + y.m_, Unchecked{});
  }
  friend Herm2 operator-(const Herm2& x, const Herm2& y) {
    return Herm2(x.m_ - y.m_, Unchecked{});
  }
  friend Herm2 operator*(double s, const Herm2& x) { return Herm2(s * x.m_, Unchecked{}); }
  friend Herm2 operator-(const Herm2& x) { return Herm2(-x.m_, Unchecked{}); }

 private:
  struct Unchecked {};
  Herm2(const Mat2& m, Unchecked) : m_(m) {}

  static Mat2 symmetrize(const Mat2& m) {
    Mat2 r;
    r.e[0] = cplx(m.e[0].real(), 0.0);
    r.e[3] = cplx(m.e[3].real(), 0.0);
    const cplx off = 0.5 * (m.e[1] + std::conj(m.e[2]));
    r.e[1] = off;
    r.e[2] = std::conj(off);
    return r;
  }

  Mat2 m_;
};

inline PauliCoords pauli_decompose(const Herm2& h) {
  const Mat2& m = h.mat();
  PauliCoords c;
  c.a0 = 0.5 * (m.e[0].real() + m.e[3].real());
  c.az = 0.5 * (m.e[0].real() - m.e[3].real());
  c.ax = m.e[1].real();
  c.ay = m.e[1].imag();
  return c;
}

inline Herm2 pauli_recompose(const PauliCoords& c) {
  Mat2 m;
  m.e[0] = cplx(c.a0 + c.az, 0.0);
  m.e[3] = cplx(c.a0 - c.az, 0.0);
  m.e[1] = cplx(c.ax, c.ay);
  m.e[2] = std::conj(m.e[1]);
  return Herm2::symmetrized(m);
}

// Hilbert-Schmidt style inner product (1/2) Tr XY; real for hermitian X, Y
// and equal to the dot product of Pauli coordinates.
inline double hs_inner(const Herm2& x, const Herm2& y) {
  return 0.5 * trace(x.mat() * y.mat()).real();
}

inline double hs_norm(const Herm2& x) { return std::sqrt(std::max(0.0, hs_inner(x, x))); }

inline double trace_re(const Herm2& x) { return trace(x.mat()).real(); }

namespace detail {
// Eigenvalues of a hermitian 2x2 matrix, descending. The smaller one is
// recovered from the determinant to avoid cancellation near singularity.
inline void eigvals(const Herm2& h, double& lambda1, double& lambda2) {
  const PauliCoords c = pauli_decompose(h);
  const double r = c.traceless_norm();
  const double d = det(h.mat()).real();
  if (c.a0 >= 0.0) {
    lambda1 = c.a0 + r;
    lambda2 = (lambda1 > 0.0) ? d / lambda1 : c.a0 - r;
  } else {
    lambda2 = c.a0 - r;
    lambda1 = (lambda2 < 0.0) ? d / lambda2 : c.a0 + r;
  }
}
}  // namespace detail

// Largest eigenvalue magnitude (operator norm for hermitian input).
inline double spec_norm(const Herm2& h) {
  const PauliCoords c = pauli_decompose(h);
  return std::abs(c.a0) + c.traceless_norm();
}

/** Spectral decomposition of a hermitian 2x2 matrix. */
struct Eig2 {
  double lambda1 = 0.0;  // larger eigenvalue
  double lambda2 = 0.0;
  Mat2 u;                // unitary; columns are eigenvectors for lambda1, lambda2
};

namespace detail {
// Multiplies a column by a unimodular phase so that its first component of
// magnitude above 1e-12 becomes real and nonnegative.
inline void gauge_fix_column(cplx& v0, cplx& v1) {
  const cplx lead = (std::abs(v0) > 1e-12) ? v0 : v1;
  const double mag = std::abs(lead);
  if (mag == 0.0) return;
  const cplx phase = std::conj(lead) / mag;
  v0 *= phase;
  v1 *= phase;
}
}  // namespace detail

/**
 * Closed-form spectral decomposition. Eigenvalues are ordered descending,
 * columns are gauge fixed (first component of magnitude above 1e-12 made
 * real nonnegative). Spectra with |lambda1 - lambda2| <= tol_pd return
 * u = I.
 */
inline Eig2 eig2(const Herm2& h, double tol_pd = Tolerances{}.tol_pd) {
  Eig2 out;
  detail::eigvals(h, out.lambda1, out.lambda2);
  const PauliCoords c = pauli_decompose(h);
  const double r = c.traceless_norm();
  if (2.0 * r <= tol_pd) {
    out.u = Mat2::identity();
    return out;
  }
  const cplx b = h.mat().e[1];
  cplx v0, v1;
  if (c.az >= 0.0) {
    v0 = cplx(r + c.az, 0.0);
    v1 = std::conj(b);
  } else {
    v0 = b;
    v1 = cplx(r - c.az, 0.0);
  }
  const double n = std::sqrt(std::norm(v0) + std::norm(v1));
  v0 /= n;
  v1 /= n;
  detail::gauge_fix_column(v0, v1);
  cplx w0 = -std::conj(v1);
  cplx w1 = std::conj(v0);
  detail::gauge_fix_column(w0, w1);
  out.u = Mat2{v0, w0, v1, w1};
  return out;
}

/** Traceless hermitian 2x2 matrix (exact projection on construction). */
class Traceless2 {
 public:
  explicit Traceless2(const Herm2& h) : h_(project(h)) {}

  const Herm2& herm() const { return h_; }
  const Mat2& mat() const { return h_.mat(); }

 private:
  static Herm2 project(const Herm2& h) {
    PauliCoords c = pauli_decompose(h);
    c.a0 = 0.0;
    return pauli_recompose(c);
  }

  Herm2 h_;
};

/** Positive definite 2x2 matrix: both eigenvalues strictly above tol_pd. */
class PD2 {
 public:
  explicit PD2(const Herm2& h, double tol_pd = Tolerances{}.tol_pd) : h_(h) {
    double l1 = 0.0, l2 = 0.0;
    detail::eigvals(h, l1, l2);
    if (!(l2 > tol_pd)) {
      throw NotPositiveDefinite("PD2: smallest eigenvalue " + detail::fmt_double(l2) +
                                " is not above " + detail::fmt_double(tol_pd));
    }
  }

  const Herm2& herm() const { return h_; }
  const Mat2& mat() const { return h_.mat(); }

 private:
  Herm2 h_;
};

/** Effect: hermitian with spectrum inside [0, 1] up to tol_pd slack. */
class Effect2 {
 public:
  explicit Effect2(const Herm2& h, double tol_pd = Tolerances{}.tol_pd) : h_(h) {
    double l1 = 0.0, l2 = 0.0;
    detail::eigvals(h, l1, l2);
    if (!(l2 >= -tol_pd && l1 <= 1.0 + tol_pd)) {
      throw NotEffect("Effect2: spectrum [" + detail::fmt_double(l2) + ", " +
                      detail::fmt_double(l1) + "] is not within [0, 1]");
    }
  }

  const Herm2& herm() const { return h_; }
  const Mat2& mat() const { return h_.mat(); }

 private:
  Herm2 h_;
};

/**
 * Matrix exponential of a hermitian matrix, in closed form: with
 * h = a0 I + v . sigma and r = |v|,
 * exp(h) = e^{a0} (cosh(r) I + (sinh(r)/r) v . sigma).
 * For traceless h of unit norm this reduces to cosh(1) I + sinh(1) h.
 */
inline PD2 mexp(const Herm2& h) {
  const PauliCoords c = pauli_decompose(h);
  const double r = c.traceless_norm();
  const double scale = std::exp(c.a0);
  const double ch = std::cosh(r);
  const double sc = (r < 1e-8) ? (1.0 + r * r / 6.0) : (std::sinh(r) / r);
  PauliCoords out;
  out.a0 = scale * ch;
  out.ax = scale * sc * c.ax;
  out.ay = scale * sc * c.ay;
  out.az = scale * sc * c.az;
  return PD2(pauli_recompose(out));
}

/** Principal logarithm of a positive definite matrix (closed form). */
inline Herm2 mlog(const PD2& p) {
  const PauliCoords c = pauli_decompose(p.herm());
  const double r = c.traceless_norm();
  const double dp = det(p.mat()).real();
  const double lambda1 = c.a0 + r;
  const double lambda2 = dp / lambda1;
  PauliCoords out;
  out.a0 = 0.5 * std::log(dp);
  double factor;
  if (r <= 1e-15 * c.a0) {
    factor = 1.0 / c.a0;
  } else {
    factor = 0.5 * std::log1p(2.0 * r / lambda2) / r;
  }
  out.ax = factor * c.ax;
  out.ay = factor * c.ay;
  out.az = factor * c.az;
  return pauli_recompose(out);
}

namespace detail {
// Square root of a positive semidefinite hermitian matrix. An eigenvalue at
// or below tol_pd counts as exactly zero, matching the determinant
// convention used elsewhere: a singular input carries rounding noise of
// order 1e-17 in its smallest eigenvalue, and taking its literal square
// root would inflate that noise to order 1e-9 in the result.
inline Herm2 msqrt_psd(const Herm2& h, double tol_pd) {
  const PauliCoords c = pauli_decompose(h);
  const double r = c.traceless_norm();
  double l1 = 0.0, l2 = 0.0;
  eigvals(h, l1, l2);
  if (l2 < -tol_pd) {
    throw NotPSD("msqrt: smallest eigenvalue " + fmt_double(l2) + " is negative");
  }
  l2 = std::max(l2, 0.0);
  l1 = std::max(l1, 0.0);
  const double s1 = (l1 <= tol_pd) ? 0.0 : std::sqrt(l1);
  const double s2 = (l2 <= tol_pd) ? 0.0 : std::sqrt(l2);
  if (s1 + s2 == 0.0) return Herm2::symmetrized(Mat2::zero());
  PauliCoords out;
  out.a0 = 0.5 * (s1 + s2);
  const double factor = (r == 0.0) ? 0.0 : 1.0 / (s1 + s2);
  out.ax = factor * c.ax;
  out.ay = factor * c.ay;
  out.az = factor * c.az;
  return pauli_recompose(out);
}
}  // namespace detail

inline PD2 msqrt(const PD2& p) { return PD2(detail::msqrt_psd(p.herm(), 0.0)); }

inline Effect2 msqrt(const Effect2& a, double tol_pd = Tolerances{}.tol_pd) {
  return Effect2(detail::msqrt_psd(a.herm(), tol_pd), tol_pd);
}

}  // namespace jt2
