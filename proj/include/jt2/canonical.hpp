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

#include <string>
#include <variant>
#include <vector>

#include "jt2/mat2.hpp"

namespace jt2 {

struct NotUnitary : DomainError {
  using DomainError::DomainError;
};

/** Unitary 2x2 matrix, validated on construction. */
class Unitary2 {
 public:
  explicit Unitary2(const Mat2& m, double tol = Tolerances{}.tol_eq) : m_(m) {
    const double defect = max_abs(m * adjoint(m) - Mat2::identity());
    if (!(defect <= tol)) {
      throw NotUnitary("Unitary2: u u* deviates from I by " + detail::fmt_double(defect));
    }
  }

  const Mat2& mat() const { return m_; }

 private:
  Mat2 m_;
};

/**
 * Canonical endomorphism families of the positive definite cone.
 *
 *   B1(u, c):      A |-> (det A)^c  u A u*
 *   B2(v, d):      A |-> (det A)^d  v A^{-1} v*
 *   B3(w, c1, c2): A |-> w diag((det A)^{c1}, (det A)^{c2}) w*
 *
 * B3 is kept normalized with c1 >= c2 (columns of w permuted along with the
 * exponents, which leaves the map unchanged).
 */
struct B1 {
  Unitary2 u;
  double c;
  B1(Unitary2 u_, double c_) : u(u_), c(c_) {}
};

struct B2 {
  Unitary2 v;
  double d;
  B2(Unitary2 v_, double d_) : v(v_), d(d_) {}
};

struct B3 {
  Unitary2 w;
  double c1;
  double c2;
  B3(Unitary2 w_, double c1_, double c2_) : w(w_), c1(c1_), c2(c2_) {
    if (c1 < c2) {
      std::swap(c1, c2);
      const Mat2& m = w.mat();
      w = Unitary2(Mat2{m.e[1], m.e[0], m.e[3], m.e[2]}, 1e-6);
    }
  }
};

using JTEForm = std::variant<B1, B2, B3>;

inline std::string tag_name(const JTEForm& e) {
  switch (e.index()) {
    case 0: return "b1";
    case 1: return "b2";
    default: return "b3";
  }
}

inline double det_re(const PD2& a) { return det(a.mat()).real(); }

/** Evaluates a canonical form at a point of the cone. */
inline PD2 apply(const JTEForm& e, const PD2& a) {
  const double d = det_re(a);
  return std::visit(
      [&](const auto& f) -> PD2 {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, B1>) {
          const Mat2 m = f.u.mat() * a.mat() * adjoint(f.u.mat());
          return PD2(Herm2::symmetrized(std::pow(d, f.c) * m));
        } else if constexpr (std::is_same_v<T, B2>) {
          const Mat2 inv = inverse(a.mat());
          const Mat2 m = f.v.mat() * inv * adjoint(f.v.mat());
          return PD2(Herm2::symmetrized(std::pow(d, f.d) * m));
        } else {
          const Mat2 diag = Mat2::diag(std::pow(d, f.c1), std::pow(d, f.c2));
          return PD2(Herm2::symmetrized(f.w.mat() * diag * adjoint(f.w.mat())));
        }
      },
      e);
}

/** Jordan triple product (a, b) |-> a b a on the cone. */
inline PD2 jordan_triple(const PD2& a, const PD2& b) {
  return PD2(Herm2::symmetrized(a.mat() * b.mat() * a.mat()));
}

// Exponent k such that det(apply(e, A)) = (det A)^k.
inline double det_transport(const JTEForm& e) {
  return std::visit(
      [](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, B1>) {
          return 2.0 * f.c + 1.0;
        } else if constexpr (std::is_same_v<T, B2>) {
          return 2.0 * f.d - 1.0;
        } else {
          return f.c1 + f.c2;
        }
      },
      e);
}

namespace detail {
inline Unitary2 umul(const Unitary2& x, const Unitary2& y) {
  return Unitary2(x.mat() * y.mat(), 1e-6);
}
}  // namespace detail

/**
 * Composition closure: compose(e2, e1) is the canonical form of the map
 * A |-> apply(e2, apply(e1, A)). The exponent algebra follows from the
 * determinant transport of the inner form.
 */
inline JTEForm compose(const JTEForm& e2, const JTEForm& e1) {
  const double k1 = det_transport(e1);
  if (const auto* outer3 = std::get_if<B3>(&e2)) {
    return B3(outer3->w, k1 * outer3->c1, k1 * outer3->c2);
  }
  return std::visit(
      [&](const auto& f2, const auto& f1) -> JTEForm {
        using T2 = std::decay_t<decltype(f2)>;
        using T1 = std::decay_t<decltype(f1)>;
        if constexpr (std::is_same_v<T2, B1> && std::is_same_v<T1, B1>) {
          return B1(detail::umul(f2.u, f1.u), f1.c + f2.c * k1);
        } else if constexpr (std::is_same_v<T2, B1> && std::is_same_v<T1, B2>) {
          return B2(detail::umul(f2.u, f1.v), f1.d + f2.c * k1);
        } else if constexpr (std::is_same_v<T2, B1> && std::is_same_v<T1, B3>) {
          return B3(detail::umul(f2.u, f1.w), f1.c1 + f2.c * k1, f1.c2 + f2.c * k1);
        } else if constexpr (std::is_same_v<T2, B2> && std::is_same_v<T1, B1>) {
          return B2(detail::umul(f2.v, f1.u), f2.d * k1 - f1.c);
        } else if constexpr (std::is_same_v<T2, B2> && std::is_same_v<T1, B2>) {
          return B1(detail::umul(f2.v, f1.v), f2.d * k1 - f1.d);
        } else if constexpr (std::is_same_v<T2, B2> && std::is_same_v<T1, B3>) {
          return B3(detail::umul(f2.v, f1.w), f2.d * k1 - f1.c1, f2.d * k1 - f1.c2);
        } else {
          throw InvalidArgument("compose: unreachable");
        }
      },
      e2, e1);
}

/**
 * Distance between unitaries modulo a global unimodular phase:
 * min over |zeta| = 1 of max-entry |u1 - zeta u2|.
 */
inline double unitary_phase_distance(const Mat2& u1, const Mat2& u2) {
  int k = 0;
  double best = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (std::abs(u2.e[i]) > best) {
      best = std::abs(u2.e[i]);
      k = i;
    }
  }
  if (best == 0.0) return max_abs(u1 - u2);
  cplx zeta = u1.e[k] / u2.e[k];
  const double mag = std::abs(zeta);
  zeta = (mag == 0.0) ? cplx(1.0, 0.0) : zeta / mag;
  return max_abs(u1 - zeta * u2);
}

// Distance between one column of two unitaries modulo a per-column phase.
inline double column_phase_distance(const Mat2& u1, const Mat2& u2, int col) {
  const cplx a0 = u1(0, col), a1 = u1(1, col);
  const cplx b0 = u2(0, col), b1 = u2(1, col);
  const bool anchor_top = std::abs(b0) >= std::abs(b1);
  const cplx anchor_b = anchor_top ? b0 : b1;
  const cplx anchor_a = anchor_top ? a0 : a1;
  if (std::abs(anchor_b) == 0.0) {
    return std::max(std::abs(a0 - b0), std::abs(a1 - b1));
  }
  cplx zeta = anchor_a / anchor_b;
  const double mag = std::abs(zeta);
  zeta = (mag == 0.0) ? cplx(1.0, 0.0) : zeta / mag;
  return std::max(std::abs(a0 - zeta * b0), std::abs(a1 - zeta * b1));
}

/**
 * Fixed probe set for pointwise map comparison: exp(+-sigma/2) along each
 * axis plus two scalar points. The scalar points separate determinant
 * exponents; the axis points separate the unitary actions.
 */
inline const std::vector<PD2>& canonical_probes() {
  static const std::vector<PD2> probes = [] {
    std::vector<PD2> v;
    const double e = std::exp(1.0);
    auto axis = [](const Mat2& sigma, double s) {
      return mexp(Herm2::symmetrized(s * sigma));
    };
    v.push_back(axis(sigma_x(), 0.5));
    v.push_back(axis(sigma_x(), -0.5));
    v.push_back(axis(sigma_y(), 0.5));
    v.push_back(axis(sigma_y(), -0.5));
    v.push_back(axis(sigma_z(), 0.5));
    v.push_back(axis(sigma_z(), -0.5));
    v.push_back(PD2(Herm2::symmetrized(e * Mat2::identity())));
    v.push_back(PD2(Herm2::symmetrized((1.0 / e) * Mat2::identity())));
    return v;
  }();
  return probes;
}

namespace detail {
inline bool probewise_equal(const JTEForm& e1, const JTEForm& e2, double tol) {
  for (const PD2& a : canonical_probes()) {
    if (rel_diff(jt2::apply(e1, a).mat(), jt2::apply(e2, a).mat()) > tol) return false;
  }
  return true;
}
}  // namespace detail

/**
 * Structural equality of canonical forms up to unitary gauge. Same-tag
 * pairs compare exponents and unitaries modulo phase (B3 modulo per-column
 * phases and the normalization permutation; with equal exponents B3 is the
 * scalar family and the basis is immaterial). Cross-tag pairs fall back to
 * pointwise comparison on the fixed probe set.
 */
inline bool gauge_equal(const JTEForm& e1, const JTEForm& e2,
                        double tol = Tolerances{}.tol_class) {
  if (e1.index() != e2.index()) return detail::probewise_equal(e1, e2, tol);
  if (const auto* f1 = std::get_if<B1>(&e1)) {
    const auto& f2 = std::get<B1>(e2);
    return std::abs(f1->c - f2.c) <= tol &&
           unitary_phase_distance(f1->u.mat(), f2.u.mat()) <= tol;
  }
  if (const auto* f1 = std::get_if<B2>(&e1)) {
    const auto& f2 = std::get<B2>(e2);
    return std::abs(f1->d - f2.d) <= tol &&
           unitary_phase_distance(f1->v.mat(), f2.v.mat()) <= tol;
  }
  const auto& f1 = std::get<B3>(e1);
  const auto& f2 = std::get<B3>(e2);
  if (std::abs(f1.c1 - f2.c1) > tol || std::abs(f1.c2 - f2.c2) > tol) return false;
  if (std::abs(f1.c1 - f1.c2) <= tol) return true;  // scalar family
  return column_phase_distance(f1.w.mat(), f2.w.mat(), 0) <= tol &&
         column_phase_distance(f1.w.mat(), f2.w.mat(), 1) <= tol;
}

/**
 * Surjectivity criterion. B1 is an automorphism unless c = -1/2 (there the
 * image has unit determinant), B2 unless d = 1/2, and B3 never is: its
 * image is a commuting family.
 */
inline bool is_automorphism(const JTEForm& e) {
  return std::visit(
      [](const auto& f) -> bool {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, B1>) {
          return f.c != -0.5;
        } else if constexpr (std::is_same_v<T, B2>) {
          return f.d != 0.5;
        } else {
          return false;
        }
      },
      e);
}

// The unitary of the transpose identity A^tr = (det A) u A^{-1} u*.
inline Unitary2 transpose_unitary() {
  return Unitary2(Mat2{0.0, 1.0, -1.0, 0.0});
}

// The transpose map as a canonical form.
inline JTEForm transpose_form() { return B2(transpose_unitary(), 1.0); }

inline PD2 transpose_pd(const PD2& a) {
  return PD2(Herm2::symmetrized(transpose(a.mat())));
}

}  // namespace jt2
