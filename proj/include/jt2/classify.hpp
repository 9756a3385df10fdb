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

#include <cstdint>
#include <sstream>
#include <string>

#include "jt2/linearize.hpp"
#include "jt2/spin.hpp"

namespace jt2 {

struct NotJTE : ContractError {
  double residual;
  explicit NotJTE(double r)
      : ContractError("candidate violates the triple product law: residual " +
                      detail::fmt_double(r)),
        residual(r) {}
};

struct NotLinear : ContractError {
  double residual;
  explicit NotLinear(double r)
      : ContractError("candidate is not log-linear: residual " + detail::fmt_double(r)),
        residual(r) {}
};

struct ScaleNotOne : ContractError {
  double p;
  explicit ScaleNotOne(double p_)
      : ContractError("traceless block is " + detail::fmt_double(p_) +
                      " times an isometry; only scale 1 closes the triple product law"),
        p(p_) {}
};

struct NotIsometry : ContractError {
  double defect;
  explicit NotIsometry(double d)
      : ContractError("traceless block is not a scalar multiple of an isometry "
                      "(defect " +
                      detail::fmt_double(d) + ")"),
        defect(d) {}
};

enum class Branch {
  non_scalar_fi,  // f(I) has a nonzero traceless part -> diagonal family
  zero_block,     // f(I) scalar and the traceless block vanishes -> scalar family
  rotation,       // det M > 0 -> conjugation family
  reflection,     // det M < 0 -> inverse-conjugation family
};

inline const char* branch_name(Branch b) {
  switch (b) {
    case Branch::non_scalar_fi: return "non-scalar f(I)";
    case Branch::zero_block: return "vanishing traceless block";
    case Branch::rotation: return "rotation (det M > 0)";
    default: return "reflection (det M < 0)";
  }
}

struct ClassifyDiagnostics {
  double v = 0.0;       // (1/2) Tr f(I)
  Real3x3 M{};          // traceless block of F
  double p = 0.0;       // mean column norm of M
  int detM_sign = 0;    // sign of det M; 0 in the degenerate branches
  double residual = 0.0;  // max of final pointwise verification + consistency
  Branch branch = Branch::zero_block;
  double jte_residual = 0.0;
  double linearity_residual = 0.0;
};

struct ClassifyResult {
  JTEForm form;
  ClassifyDiagnostics diagnostics;
};

namespace detail {
inline int classify_jte_trials() { return 32; }
inline int classify_lin_trials() { return 24; }
inline int classify_verify_trials() { return 50; }
}  // namespace detail

/**
 * Recovers the canonical form of a black-box endomorphism of the cone.
 *
 * The route: confirm the triple product law by sampling, extract the linear
 * map F = log . phi . exp, confirm log-linearity, then branch on the shape
 * of F. A non-scalar f(I) forces the diagonal family (basis and exponents
 * read off the spectral decomposition of f(I)); otherwise the traceless
 * block M is either negligible (scalar family) or must be an isometry of
 * scale 1, whose determinant sign separates conjugation from
 * inverse-conjugation, lifted through the double cover.
 */
inline ClassifyResult classify_jte(const BlackBoxJTE& phi, const Tolerances& tol = {},
                                   std::uint64_t seed = kDefaultSeed) {
  ClassifyDiagnostics diag;
  diag.jte_residual = check_jte(phi, detail::classify_jte_trials(), seed);
  if (diag.jte_residual > tol.tol_class) throw NotJTE(diag.jte_residual);

  const LinMapH2 F = extract_f(phi);
  diag.linearity_residual =
      check_linearity(phi, F, detail::classify_lin_trials(), seed + 1);
  if (diag.linearity_residual > tol.tol_class) throw NotLinear(diag.linearity_residual);

  diag.v = F.f[0][0];
  diag.M = F.traceless_block();
  double col_norm[3];
  for (int j = 0; j < 3; ++j) {
    col_norm[j] = std::sqrt(diag.M[0][j] * diag.M[0][j] + diag.M[1][j] * diag.M[1][j] +
                            diag.M[2][j] * diag.M[2][j]);
  }
  diag.p = (col_norm[0] + col_norm[1] + col_norm[2]) / 3.0;

  const double fi_traceless =
      std::sqrt(F.f[1][0] * F.f[1][0] + F.f[2][0] * F.f[2][0] + F.f[3][0] * F.f[3][0]);

  double consistency = 0.0;
  const JTEForm form = [&]() -> JTEForm {
    if (fi_traceless > tol.tol_class * std::max(1.0, std::abs(diag.v))) {
      // f(I) is not scalar: the image commutes with it, so the map is
      // diagonal in the eigenbasis of f(I) and the exponents are half its
      // eigenvalues.
      diag.branch = Branch::non_scalar_fi;
      diag.detM_sign = 0;
      const Herm2 fi = pauli_recompose(F.column(0));
      const Eig2 eig = eig2(fi);
      const Unitary2 w(eig.u);
      for (int j = 1; j < 4; ++j) {
        const Mat2 d = adjoint(w.mat()) * pauli_recompose(F.column(j)).mat() * w.mat();
        consistency = std::max(consistency, std::abs(d.e[1]));
      }
      return B3(w, 0.5 * eig.lambda1, 0.5 * eig.lambda2);
    }
    if (std::max({col_norm[0], col_norm[1], col_norm[2]}) <= tol.tol_class) {
      diag.branch = Branch::zero_block;
      diag.detM_sign = 0;
      return B3(Unitary2(Mat2::identity()), 0.5 * diag.v, 0.5 * diag.v);
    }
    double iso_defect = 0.0;
    const double p2 = diag.p * diag.p;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double dot = 0.0;
        for (int k = 0; k < 3; ++k) dot += diag.M[k][i] * diag.M[k][j];
        iso_defect = std::max(iso_defect, std::abs(dot - (i == j ? p2 : 0.0)));
      }
    }
    if (iso_defect > tol.tol_class) throw NotIsometry(iso_defect);
    if (std::abs(diag.p - 1.0) > tol.tol_class) throw ScaleNotOne(diag.p);

    Real3x3 r{};
    const double detM = Rot3::det3(diag.M);
    diag.detM_sign = (detM >= 0.0) ? 1 : -1;
    const double flip = (diag.detM_sign > 0) ? 1.0 : -1.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i][j] = flip * diag.M[i][j] / diag.p;
    const SpinU u = so3_to_su2(Rot3(r, 10.0 * tol.tol_class));
    if (diag.detM_sign > 0) {
      diag.branch = Branch::rotation;
      return B1(u.unitary(), 0.5 * (diag.v - 1.0));
    }
    diag.branch = Branch::reflection;
    return B2(u.unitary(), 0.5 * (diag.v + 1.0));
  }();

  // Fresh pointwise verification of the recovered form.
  Rng rng(seed + 2);
  double verify = 0.0;
  for (int i = 0; i < detail::classify_verify_trials(); ++i) {
    const PD2 a = random_pd(rng);
    verify = std::max(
        verify, detail::resid(detail::eval_checked(phi, a).mat(), jt2::apply(form, a).mat()));
  }
  diag.residual = std::max(verify, consistency);
  if (diag.residual > tol.tol_class) throw NotJTE(diag.residual);
  return ClassifyResult{form, diag};
}

inline std::string pretty(const Mat2& m) {
  auto entry = [](const cplx& z) {
    std::ostringstream os;
    os.precision(12);
    os << z.real();
    if (z.imag() != 0.0) {
      os << (z.imag() < 0.0 ? " - " : " + ") << std::abs(z.imag()) << "i";
    }
    return os.str();
  };
  return "[[" + entry(m.e[0]) + ", " + entry(m.e[1]) + "], [" + entry(m.e[2]) + ", " +
         entry(m.e[3]) + "]]";
}

/** Human-readable account of a classification. */
inline std::string explain(const ClassifyResult& res) {
  std::ostringstream os;
  os.precision(12);
  os << "branch: " << branch_name(res.diagnostics.branch) << "\n";
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, B1>) {
          os << "form: b1, A |-> (det A)^c u A u*\n";
          os << "  c = " << f.c << "\n";
          os << "  u = " << pretty(f.u.mat()) << "\n";
        } else if constexpr (std::is_same_v<T, B2>) {
          os << "form: b2, A |-> (det A)^d v A^{-1} v*\n";
          os << "  d = " << f.d << "\n";
          os << "  v = " << pretty(f.v.mat()) << "\n";
        } else {
          os << "form: b3, A |-> w diag((det A)^c1, (det A)^c2) w*\n";
          os << "  c1 = " << f.c1 << ", c2 = " << f.c2 << "\n";
          os << "  w = " << pretty(f.w.mat()) << "\n";
        }
        os << "automorphism: " << (is_automorphism(res.form) ? "yes" : "no") << "\n";
      },
      res.form);
  os << "v = " << res.diagnostics.v << ", p = " << res.diagnostics.p
     << ", det sign = " << res.diagnostics.detM_sign << "\n";
  os << "residuals: triple-law " << res.diagnostics.jte_residual << ", linearity "
     << res.diagnostics.linearity_residual << ", verification "
     << res.diagnostics.residual << "\n";
  return os.str();
}

}  // namespace jt2
