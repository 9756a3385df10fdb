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

#include "jt2/canonical.hpp"
#include "jt2/mat2.hpp"

namespace jt2 {

struct NotRotation : DomainError {
  using DomainError::DomainError;
};

inline Herm2 conjugate_herm(const Mat2& u, const Herm2& h) {
  return Herm2::symmetrized(u * h.mat() * adjoint(u));
}

/** Element of SU(2): unitary with determinant 1. */
class SpinU {
 public:
  explicit SpinU(const Unitary2& u, double tol = Tolerances{}.tol_eq) : u_(u) {
    const double defect = std::abs(det(u.mat()) - cplx(1.0, 0.0));
    if (!(defect <= tol)) {
      throw NotUnitary("SpinU: determinant deviates from 1 by " +
                       detail::fmt_double(defect));
    }
  }

  const Mat2& mat() const { return u_.mat(); }
  const Unitary2& unitary() const { return u_; }

  /**
   * Resolves the +-u ambiguity: the first entry of
   * (Re u00, Im u00, Re u01, Im u01) with magnitude above 1e-8 is made
   * positive. Some entry always qualifies since |u00|^2 + |u01|^2 = 1.
   */
  SpinU gauge_fixed() const {
    const Mat2& m = u_.mat();
    const double probes[4] = {m.e[0].real(), m.e[0].imag(), m.e[1].real(),
                              m.e[1].imag()};
    for (double p : probes) {
      if (std::abs(p) > 1e-8) {
        if (p < 0.0) return SpinU(Unitary2(-m, 1e-6));
        return *this;
      }
    }
    return *this;
  }

 private:
  Unitary2 u_;
};

/** Rotation matrix in SO(3), validated on construction. */
struct Rot3 {
  Real3x3 m{};

  Rot3() { m = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

  explicit Rot3(const Real3x3& r, double tol = Tolerances{}.tol_eq) : m(r) {
    double defect = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double dot = 0.0;
        for (int k = 0; k < 3; ++k) dot += r[k][i] * r[k][j];
        defect = std::max(defect, std::abs(dot - (i == j ? 1.0 : 0.0)));
      }
    }
    if (!(defect <= tol)) {
      throw NotRotation("Rot3: columns are not orthonormal (defect " +
                        detail::fmt_double(defect) + ")");
    }
    const double d = det3(r);
    if (!(std::abs(d - 1.0) <= tol)) {
      throw NotRotation("Rot3: determinant " + detail::fmt_double(d) + " is not 1");
    }
  }

  static double det3(const Real3x3& r) {
    return r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) -
           r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0]) +
           r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
  }

  std::array<double, 3> apply(const std::array<double, 3>& v) const {
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i)
      out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return out;
  }

  friend Rot3 operator*(const Rot3& a, const Rot3& b) {
    Rot3 out;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k) s += a.m[i][k] * b.m[k][j];
        out.m[i][j] = s;
      }
    }
    return out;
  }
};

/**
 * Covering homomorphism: column k of the result holds the traceless Pauli
 * coordinates of u sigma_k u*, i.e. R_jk = (1/2) Tr(sigma_j u sigma_k u*).
 * Conjugation by u acts on coordinate vectors as this rotation.
 */
inline Rot3 su2_to_so3(const SpinU& u) {
  const Mat2 sigmas[3] = {sigma_x(), sigma_y(), sigma_z()};
  Real3x3 r{};
  for (int k = 0; k < 3; ++k) {
    const PauliCoords c =
        pauli_decompose(conjugate_herm(u.mat(), Herm2::symmetrized(sigmas[k])));
    r[0][k] = c.ax;
    r[1][k] = c.ay;
    r[2][k] = c.az;
  }
  return Rot3(r, 1e-9);
}

/**
 * Lift through the double cover. The quaternion is extracted with the
 * four-branch rule (trace when dominant, otherwise the largest diagonal
 * entry), which stays well conditioned for rotation angles near pi, and the
 * sign ambiguity is resolved by SpinU::gauge_fixed.
 */
inline SpinU so3_to_su2(const Rot3& rot) {
  const Real3x3& r = rot.m;
  const double t = r[0][0] + r[1][1] + r[2][2];
  double w, x, y, z;
  if (t >= r[0][0] && t >= r[1][1] && t >= r[2][2]) {
    const double s = 2.0 * std::sqrt(std::max(0.0, 1.0 + t));
    w = 0.25 * s;
    x = (r[2][1] - r[1][2]) / s;
    y = (r[0][2] - r[2][0]) / s;
    z = (r[1][0] - r[0][1]) / s;
  } else if (r[0][0] >= r[1][1] && r[0][0] >= r[2][2]) {
    const double s = 2.0 * std::sqrt(std::max(0.0, 1.0 + r[0][0] - r[1][1] - r[2][2]));
    x = 0.25 * s;
    w = (r[2][1] - r[1][2]) / s;
    y = (r[0][1] + r[1][0]) / s;
    z = (r[0][2] + r[2][0]) / s;
  } else if (r[1][1] >= r[2][2]) {
    const double s = 2.0 * std::sqrt(std::max(0.0, 1.0 - r[0][0] + r[1][1] - r[2][2]));
    y = 0.25 * s;
    w = (r[0][2] - r[2][0]) / s;
    x = (r[0][1] + r[1][0]) / s;
    z = (r[1][2] + r[2][1]) / s;
  } else {
    const double s = 2.0 * std::sqrt(std::max(0.0, 1.0 - r[0][0] - r[1][1] + r[2][2]));
    z = 0.25 * s;
    w = (r[1][0] - r[0][1]) / s;
    x = (r[0][2] + r[2][0]) / s;
    y = (r[1][2] + r[2][1]) / s;
  }
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  const Mat2 u{cplx(w, z), cplx(-y, x), cplx(y, x), cplx(w, -z)};
  return SpinU(Unitary2(u)).gauge_fixed();
}

}  // namespace jt2
