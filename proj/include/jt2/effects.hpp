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

#include <optional>
#include <utility>

#include "jt2/classify.hpp"
#include "jt2/linearize.hpp"
#include "jt2/mat2.hpp"
#include "jt2/sampling.hpp"

namespace jt2 {

struct NotDominated : DomainError {
  using DomainError::DomainError;
};
struct SingularBase : DomainError {
  using DomainError::DomainError;
};
struct NotHomogeneous : ContractError {
  using ContractError::ContractError;
};
struct NotProjectionAtI : ContractError {
  using ContractError::ContractError;
};
struct NotEffectValued : ContractError {
  using ContractError::ContractError;
};

struct NotSeqEndo : ContractError {
  double residual;
  explicit NotSeqEndo(const std::string& msg, double r = 0.0)
      : ContractError(msg), residual(r) {}
};

/** Sequential product a o b = sqrt(a) b sqrt(a) on effects. */
inline Effect2 seq_product(const Effect2& a, const Effect2& b,
                           double tol_pd = Tolerances{}.tol_pd) {
  const Mat2 s = detail::msqrt_psd(a.herm(), tol_pd).mat();
  return Effect2(Herm2::symmetrized(s * b.mat() * s), tol_pd);
}

/** Operator order: a <= b up to tol_pd slack on the smallest eigenvalue. */
inline bool order_leq(const Effect2& a, const Effect2& b,
                      double tol_pd = Tolerances{}.tol_pd) {
  double l1 = 0.0, l2 = 0.0;
  detail::eigvals(b.herm() - a.herm(), l1, l2);
  return l2 >= -tol_pd;
}

/**
 * Solves a = b o c for c given a <= b with b invertible:
 * c = b^{-1/2} a b^{-1/2}.
 */
inline Effect2 seq_factor(const Effect2& a, const Effect2& b,
                          double tol_pd = Tolerances{}.tol_pd) {
  if (!order_leq(a, b, tol_pd)) {
    throw NotDominated("seq_factor: a is not dominated by b");
  }
  double l1 = 0.0, l2 = 0.0;
  detail::eigvals(b.herm(), l1, l2);
  if (!(l2 > tol_pd)) {
    throw SingularBase("seq_factor: base effect is singular (min eigenvalue " +
                       detail::fmt_double(l2) + ")");
  }
  const Mat2 inv_sqrt = inverse(detail::msqrt_psd(b.herm(), tol_pd).mat());
  return Effect2(Herm2::symmetrized(inv_sqrt * a.mat() * inv_sqrt), 1e3 * tol_pd);
}

/**
 * (commute, sequentially commute) for a pair of effects. The two booleans
 * agree for effects: the sequential product is commutative on a pair
 * exactly when the operators commute.
 */
inline std::pair<bool, bool> commute_iff_seq_commute(const Effect2& a, const Effect2& b,
                                                     double tol_eq = Tolerances{}.tol_eq) {
  const Mat2 comm = a.mat() * b.mat() - b.mat() * a.mat();
  const Mat2 seq_diff = seq_product(a, b).mat() - seq_product(b, a).mat();
  return {frob_norm(comm) <= tol_eq, frob_norm(seq_diff) <= tol_eq};
}

/**
 * Canonical sequential endomorphism families of the effect algebra, with
 * 0^0 = 1 throughout:
 *
 *   Zero:               A |-> 0
 *   D1(u, c >= 0):      A |-> (det A)^c u A u*
 *   D2(v):              A |-> v adj(A) v*
 *   D3(v, d > 1):       A |-> (det A)^d v A^{-1} v* for invertible A, else 0
 *   D4(w, c1, c2 >= 0): A |-> w diag((det A)^{c1}, (det A)^{c2}) w*
 *   RankOneImage(w, c >= 0): A |-> w diag((det A)^c, 0) w*
 *
 * Zero and RankOneImage arise from the reduction of a non-unital map to a
 * unital one; reports flag them as reduction-derived. D4 is normalized
 * with c1 >= c2, like the diagonal family on the cone.
 *
 * A determinant at or below tol_pd counts as exactly zero in every family.
 * A fractional power would otherwise turn the rounding noise in the
 * determinant of a singular input (itself far below tol_pd) into an output
 * error of order noise^c, which is large enough to fail honest forms
 * against the sampled morphism law.
 */
struct ZeroForm {};

struct D1 {
  Unitary2 u;
  double c;
  D1(Unitary2 u_, double c_) : u(u_), c(c_) {
    if (c < 0.0) throw InvalidArgument("D1: exponent must be nonnegative");
  }
};

struct D2 {
  Unitary2 v;
  explicit D2(Unitary2 v_) : v(v_) {}
};

struct D3 {
  Unitary2 v;
  double d;
  D3(Unitary2 v_, double d_) : v(v_), d(d_) {
    if (!(d > 1.0)) throw InvalidArgument("D3: exponent must exceed 1");
  }
};

struct D4 {
  Unitary2 w;
  double c1;
  double c2;
  D4(Unitary2 w_, double c1_, double c2_) : w(w_), c1(c1_), c2(c2_) {
    if (c1 < 0.0 || c2 < 0.0) throw InvalidArgument("D4: exponents must be nonnegative");
    if (c1 < c2) {
      std::swap(c1, c2);
      const Mat2& m = w.mat();
      w = Unitary2(Mat2{m.e[1], m.e[0], m.e[3], m.e[2]}, 1e-6);
    }
  }
};

struct RankOneImage {
  Unitary2 w;
  double c;
  RankOneImage(Unitary2 w_, double c_) : w(w_), c(c_) {
    if (c < 0.0) throw InvalidArgument("RankOneImage: exponent must be nonnegative");
  }
};

using SeqForm = std::variant<ZeroForm, D1, D2, D3, D4, RankOneImage>;

inline std::string tag_name(const SeqForm& s) {
  switch (s.index()) {
    case 0: return "zero";
    case 1: return "d1";
    case 2: return "d2";
    case 3: return "d3";
    case 4: return "d4";
    default: return "rank1";
  }
}

namespace detail {
inline double det_clamped(const Effect2& a) {
  return std::max(0.0, det(a.mat()).real());
}
}  // namespace detail

/** Evaluates a canonical sequential form at an effect. */
inline Effect2 apply_seq(const SeqForm& s, const Effect2& a,
                         double tol_pd = Tolerances{}.tol_pd) {
  const double raw = detail::det_clamped(a);
  const double d = (raw <= tol_pd) ? 0.0 : raw;
  return std::visit(
      [&](const auto& f) -> Effect2 {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ZeroForm>) {
          return Effect2(Herm2::symmetrized(Mat2::zero()));
        } else if constexpr (std::is_same_v<T, D1>) {
          const Mat2 m = f.u.mat() * a.mat() * adjoint(f.u.mat());
          return Effect2(Herm2::symmetrized(std::pow(d, f.c) * m), tol_pd);
        } else if constexpr (std::is_same_v<T, D2>) {
          const Mat2 m = f.v.mat() * adjugate(a.mat()) * adjoint(f.v.mat());
          return Effect2(Herm2::symmetrized(m), tol_pd);
        } else if constexpr (std::is_same_v<T, D3>) {
          if (d <= tol_pd) return Effect2(Herm2::symmetrized(Mat2::zero()));
          const Mat2 m = f.v.mat() * inverse(a.mat()) * adjoint(f.v.mat());
          return Effect2(Herm2::symmetrized(std::pow(d, f.d) * m), tol_pd);
        } else if constexpr (std::is_same_v<T, D4>) {
          const Mat2 diag = Mat2::diag(std::pow(d, f.c1), std::pow(d, f.c2));
          return Effect2(Herm2::symmetrized(f.w.mat() * diag * adjoint(f.w.mat())),
                         tol_pd);
        } else {
          const Mat2 diag = Mat2::diag(std::pow(d, f.c), 0.0);
          return Effect2(Herm2::symmetrized(f.w.mat() * diag * adjoint(f.w.mat())),
                         tol_pd);
        }
      },
      s);
}

/** Opaque sequential endomorphism candidate; the callable must be pure. */
struct BlackBoxSeq {
  std::function<Effect2(const Effect2&)> eval;
};

inline BlackBoxSeq make_blackbox(const SeqForm& s) {
  return BlackBoxSeq{[s](const Effect2& a) { return apply_seq(s, a); }};
}

namespace detail {
inline Effect2 seq_eval_checked(const BlackBoxSeq& phi, const Effect2& a) {
  try {
    return phi.eval(a);
  } catch (const NotEffect& err) {
    throw NotSeqEndo(std::string("black box output is not an effect: ") + err.what());
  } catch (const NotHermitian& err) {
    throw NotSeqEndo(std::string("black box output is not hermitian: ") + err.what());
  }
}
}  // namespace detail

/**
 * Max deviation of phi(a o b) from phi(a) o phi(b) over random effect
 * pairs; one pair in five involves a singular effect so the boundary
 * behavior is sampled too.
 */
inline double check_seq_endo(const BlackBoxSeq& phi, int trials,
                             std::uint64_t seed = kDefaultSeed) {
  if (trials < 1) throw InvalidArgument("check_seq_endo: trials must be positive");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Effect2 a =
        (i % 5 == 4) ? random_singular_effect(rng) : random_invertible_effect(rng);
    const Effect2 b = random_effect(rng);
    const Effect2 lhs = detail::seq_eval_checked(phi, seq_product(a, b));
    const Effect2 rhs =
        seq_product(detail::seq_eval_checked(phi, a), detail::seq_eval_checked(phi, b));
    worst = std::max(worst, detail::resid(lhs.mat(), rhs.mat()));
  }
  return worst;
}

/**
 * Extends a unital, degree-c homogeneous endomorphism of the effect
 * algebra to the whole cone: A |-> |A|^c phi(A / |A|) with the operator
 * norm. Homogeneity phi(lambda A) = lambda^c phi(A) is verified by
 * sampling lambda in (0, 1] before the closure is handed out.
 */
inline BlackBoxJTE extend_to_cone(const BlackBoxSeq& phi, double c,
                                  double tol_class = Tolerances{}.tol_class,
                                  std::uint64_t seed = kDefaultSeed) {
  const Effect2 identity_eff(Herm2::symmetrized(Mat2::identity()));
  const double unital_defect =
      detail::resid(detail::seq_eval_checked(phi, identity_eff).mat(), Mat2::identity());
  if (unital_defect > tol_class) {
    throw NotHomogeneous("extend_to_cone: candidate is not unital (defect " +
                         detail::fmt_double(unital_defect) + ")");
  }
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 16; ++i) {
    const Effect2 a = random_invertible_effect(rng, 0.2);
    const double lambda = rng.uniform(0.1, 1.0);
    const Effect2 scaled(Herm2::symmetrized(lambda * a.mat()));
    const Mat2 got = detail::seq_eval_checked(phi, scaled).mat();
    const Mat2 want = std::pow(lambda, c) * detail::seq_eval_checked(phi, a).mat();
    worst = std::max(worst, detail::resid(got, want));
  }
  if (worst > tol_class) {
    throw NotHomogeneous("extend_to_cone: homogeneity residual " +
                         detail::fmt_double(worst) + " exceeds tolerance");
  }
  return BlackBoxJTE{[phi, c](const PD2& a) {
    const double n = spec_norm(a.herm());
    const Effect2 unit(Herm2::symmetrized((1.0 / n) * a.mat()));
    const Effect2 img = detail::seq_eval_checked(phi, unit);
    return PD2(Herm2::symmetrized(std::pow(n, c) * img.mat()));
  }};
}

// Homogeneity degree of the cone extension, when one exists. D4 with
// distinct exponents is unital but not homogeneous; the non-unital forms
// have no positive-definite-valued extension.
inline std::optional<double> extension_exponent(const SeqForm& s) {
  return std::visit(
      [](const auto& f) -> std::optional<double> {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, D1>) {
          return 2.0 * f.c + 1.0;
        } else if constexpr (std::is_same_v<T, D2>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, D3>) {
          return 2.0 * f.d - 1.0;
        } else if constexpr (std::is_same_v<T, D4>) {
          if (f.c1 == f.c2) return 2.0 * f.c1;
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      s);
}

/** Fixed probe effects: six invertible points and three singular ones. */
inline const std::vector<Effect2>& seq_probes() {
  static const std::vector<Effect2> probes = [] {
    std::vector<Effect2> v;
    auto push = [&](const Mat2& m) { v.push_back(Effect2(Herm2::symmetrized(m))); };
    push(Mat2::identity());
    push(0.5 * Mat2::identity());
    push(Mat2::diag(0.9, 0.4));
    push(0.5 * (Mat2::identity() + 0.8 * sigma_x()));
    push(0.5 * (Mat2::identity() + 0.8 * sigma_y()));
    push(Mat2::diag(0.85, 0.35));
    push(Mat2::diag(0.7, 0.0));
    push(0.5 * (Mat2::identity() + sigma_x()));
    push(0.35 * (Mat2::identity() + sigma_y()));
    return v;
  }();
  return probes;
}

namespace detail {
inline bool seq_probewise_equal(const SeqForm& s1, const SeqForm& s2, double tol) {
  for (const Effect2& a : seq_probes()) {
    if (resid(apply_seq(s1, a).mat(), apply_seq(s2, a).mat()) > tol) return false;
  }
  return true;
}
}  // namespace detail

/** Gauge equality of sequential forms, mirroring the cone-side rules. */
inline bool seq_gauge_equal(const SeqForm& s1, const SeqForm& s2,
                            double tol = Tolerances{}.tol_class) {
  if (s1.index() != s2.index()) return detail::seq_probewise_equal(s1, s2, tol);
  if (std::holds_alternative<ZeroForm>(s1)) return true;
  if (const auto* f1 = std::get_if<D1>(&s1)) {
    const auto& f2 = std::get<D1>(s2);
    return std::abs(f1->c - f2.c) <= tol &&
           unitary_phase_distance(f1->u.mat(), f2.u.mat()) <= tol;
  }
  if (const auto* f1 = std::get_if<D2>(&s1)) {
    const auto& f2 = std::get<D2>(s2);
    return unitary_phase_distance(f1->v.mat(), f2.v.mat()) <= tol;
  }
  if (const auto* f1 = std::get_if<D3>(&s1)) {
    const auto& f2 = std::get<D3>(s2);
    return std::abs(f1->d - f2.d) <= tol &&
           unitary_phase_distance(f1->v.mat(), f2.v.mat()) <= tol;
  }
  if (const auto* f1 = std::get_if<D4>(&s1)) {
    const auto& f2 = std::get<D4>(s2);
    if (std::abs(f1->c1 - f2.c1) > tol || std::abs(f1->c2 - f2.c2) > tol) return false;
    if (std::abs(f1->c1 - f1->c2) <= tol) return true;
    return column_phase_distance(f1->w.mat(), f2.w.mat(), 0) <= tol &&
           column_phase_distance(f1->w.mat(), f2.w.mat(), 1) <= tol;
  }
  const auto& f1 = std::get<RankOneImage>(s1);
  const auto& f2 = std::get<RankOneImage>(s2);
  return std::abs(f1.c - f2.c) <= tol &&
         column_phase_distance(f1.w.mat(), f2.w.mat(), 0) <= tol;
}

struct SeqClassifyDiagnostics {
  double seq_residual = 0.0;    // sampled morphism law deviation
  double q_defect = 0.0;        // idempotency defect of phi(I)
  int q_rank = 0;               // rank of phi(I)
  double residual = 0.0;        // final pointwise verification
  std::optional<ClassifyDiagnostics> inner;  // cone-side diagnostics, if reached
};

struct SeqClassifyResult {
  SeqForm form;
  SeqClassifyDiagnostics diagnostics;
};

namespace detail {
// log . phi . exp evaluated at K <= 0, where exp(K) is an invertible effect.
inline Herm2 seq_g(const BlackBoxSeq& phi, const Herm2& k) {
  const Effect2 arg(mexp(k).herm());
  const Effect2 out = seq_eval_checked(phi, arg);
  try {
    return mlog(PD2(out.herm()));
  } catch (const NotPositiveDefinite&) {
    throw NotSeqEndo("classify_seq: image of an invertible effect is singular");
  }
}

// Reconstructs the linear map f with the shift trick: for any hermitian h,
// f(h) = g(h - lambda I) + lambda f(I) with lambda = max(0, lambda_max(h)) + 1,
// which keeps the argument of g inside the invertible effects.
inline LinMapH2 seq_extract_f(const BlackBoxSeq& phi) {
  const Herm2 id = Herm2::symmetrized(Mat2::identity());
  const Herm2 fI = -1.0 * seq_g(phi, -1.0 * id);
  const Mat2 sigmas[3] = {sigma_x(), sigma_y(), sigma_z()};
  LinMapH2 F;
  const PauliCoords c0 = pauli_decompose(fI);
  for (int i = 0; i < 4; ++i) F.f[i][0] = c0[i];
  for (int j = 0; j < 3; ++j) {
    const Herm2 h = Herm2::symmetrized(sigmas[j]);
    double l1 = 0.0, l2 = 0.0;
    eigvals(h, l1, l2);
    const double lambda = std::max(0.0, l1) + 1.0;
    const Herm2 fh = seq_g(phi, h - lambda * id) + lambda * fI;
    const PauliCoords c = pauli_decompose(fh);
    for (int i = 0; i < 4; ++i) F.f[i][j + 1] = c[i];
  }
  return F;
}

struct UnitalOutcome {
  SeqForm form;
  ClassifyResult inner;
};

// Classifies a unital sequential endomorphism by reconstructing f, running
// the cone classifier on its exact log-linear closure, and mapping the
// resulting family back with the effect-side exponent constraints.
inline UnitalOutcome classify_unital(const BlackBoxSeq& phi, const Tolerances& tol,
                                     std::uint64_t seed) {
  const LinMapH2 F = seq_extract_f(phi);
  const ClassifyResult inner = classify_jte(loglinear_blackbox(F), tol, seed);
  const SeqForm form = std::visit(
      [&](const auto& f) -> SeqForm {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, B1>) {
          if (f.c < -tol.tol_class) {
            throw NotEffectValued("classify_seq: conjugation exponent " +
                                  fmt_double(f.c) + " is negative");
          }
          return D1(f.u, std::max(f.c, 0.0));
        } else if constexpr (std::is_same_v<T, B2>) {
          if (std::abs(f.d - 1.0) <= tol.tol_class) return D2(f.v);
          if (f.d > 1.0) return D3(f.v, f.d);
          throw NotEffectValued("classify_seq: inverse-conjugation exponent " +
                                fmt_double(f.d) + " is below 1");
        } else {
          if (std::min(f.c1, f.c2) < -tol.tol_class) {
            throw NotEffectValued("classify_seq: diagonal exponent " +
                                  fmt_double(std::min(f.c1, f.c2)) + " is negative");
          }
          return D4(f.w, std::max(f.c1, 0.0), std::max(f.c2, 0.0));
        }
      },
      inner.form);
  return UnitalOutcome{form, inner};
}
}  // namespace detail

/**
 * Recovers the canonical form of a black-box endomorphism of the effect
 * algebra. phi(I) is an idempotent; its rank selects between the zero map,
 * the rank-one-image reduction psi(A) = phi(A) + (I - phi(I)), and the
 * unital route through the cone classifier. Every branch ends with a fresh
 * pointwise verification that includes singular effects, which exercises
 * the boundary-zero clause of D3.
 */
inline SeqClassifyResult classify_seq(const BlackBoxSeq& phi, const Tolerances& tol = {},
                                      std::uint64_t seed = kDefaultSeed) {
  SeqClassifyDiagnostics diag;
  diag.seq_residual = check_seq_endo(phi, 32, seed);
  if (diag.seq_residual > tol.tol_class) {
    throw NotSeqEndo("candidate violates the sequential product law: residual " +
                         detail::fmt_double(diag.seq_residual),
                     diag.seq_residual);
  }

  const Effect2 identity_eff(Herm2::symmetrized(Mat2::identity()));
  const Effect2 q = detail::seq_eval_checked(phi, identity_eff);
  diag.q_defect = frob_norm(q.mat() * q.mat() - q.mat());
  if (diag.q_defect > tol.tol_class) {
    throw NotProjectionAtI("phi(I) is not idempotent (defect " +
                           detail::fmt_double(diag.q_defect) + ")");
  }
  double ql1 = 0.0, ql2 = 0.0;
  detail::eigvals(q.herm(), ql1, ql2);
  diag.q_rank = (ql1 > 0.5 ? 1 : 0) + (ql2 > 0.5 ? 1 : 0);

  SeqForm form = ZeroForm{};
  if (diag.q_rank == 0) {
    form = ZeroForm{};
  } else if (diag.q_rank == 1) {
    // Reduce to a unital map and pull the exponent back to the range of
    // phi(I). The eigenbasis of phi(I) itself is used for the reported
    // form; the reduced classification only contributes the exponent.
    const Herm2 complement = Herm2::symmetrized(Mat2::identity()) - q.herm();
    const BlackBoxSeq psi{[phi, complement](const Effect2& a) {
      return Effect2(phi.eval(a).herm() + complement);
    }};
    const detail::UnitalOutcome outcome = detail::classify_unital(psi, tol, seed + 3);
    diag.inner = outcome.inner.diagnostics;
    const auto* d4 = std::get_if<D4>(&outcome.form);
    if (d4 == nullptr) {
      throw NotSeqEndo("rank-one reduction did not land in the diagonal family");
    }
    const Eig2 qe = eig2(q.herm());
    const Unitary2 wq(qe.u);
    double c;
    if (std::abs(d4->c1 - d4->c2) <= tol.tol_class) {
      c = 0.5 * (d4->c1 + d4->c2);
    } else {
      // Pick the exponent whose column aligns with the range of phi(I).
      const cplx q0 = qe.u(0, 0), q1 = qe.u(1, 0);
      const Mat2& wm = d4->w.mat();
      const cplx w0 = wm(0, 0) * std::conj(q0) + wm(1, 0) * std::conj(q1);
      c = (std::abs(w0) > 0.5) ? d4->c1 : d4->c2;
    }
    form = RankOneImage(wq, std::max(c, 0.0));
  } else {
    const detail::UnitalOutcome outcome = detail::classify_unital(phi, tol, seed + 3);
    diag.inner = outcome.inner.diagnostics;
    form = outcome.form;
  }

  // Fresh verification, singular points included.
  Rng rng(seed + 7);
  double verify = 0.0;
  for (const Effect2& a : seq_probes()) {
    verify = std::max(verify, detail::resid(detail::seq_eval_checked(phi, a).mat(),
                                            apply_seq(form, a).mat()));
  }
  for (int i = 0; i < 24; ++i) {
    const Effect2 a =
        (i % 4 == 3) ? random_singular_effect(rng) : random_effect(rng);
    verify = std::max(verify, detail::resid(detail::seq_eval_checked(phi, a).mat(),
                                            apply_seq(form, a).mat()));
  }
  diag.residual = verify;
  if (verify > tol.tol_class) {
    throw NotSeqEndo("recovered form does not reproduce the candidate: residual " +
                         detail::fmt_double(verify),
                     verify);
  }
  return SeqClassifyResult{form, diag};
}

/** Human-readable account of a sequential classification. */
inline std::string explain(const SeqClassifyResult& res) {
  std::ostringstream os;
  os.precision(12);
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ZeroForm>) {
          os << "form: zero, A |-> 0 (reduction-derived, non-unital)\n";
        } else if constexpr (std::is_same_v<T, D1>) {
          os << "form: d1, A |-> (det A)^c u A u*\n";
          os << "  c = " << f.c << "\n  u = " << pretty(f.u.mat()) << "\n";
        } else if constexpr (std::is_same_v<T, D2>) {
          os << "form: d2, A |-> v adj(A) v*\n";
          os << "  v = " << pretty(f.v.mat()) << "\n";
        } else if constexpr (std::is_same_v<T, D3>) {
          os << "form: d3, A |-> (det A)^d v A^{-1} v* (0 on singular A)\n";
          os << "  d = " << f.d << "\n  v = " << pretty(f.v.mat()) << "\n";
        } else if constexpr (std::is_same_v<T, D4>) {
          os << "form: d4, A |-> w diag((det A)^c1, (det A)^c2) w*\n";
          os << "  c1 = " << f.c1 << ", c2 = " << f.c2 << "\n";
          os << "  w = " << pretty(f.w.mat()) << "\n";
        } else {
          os << "form: rank1, A |-> w diag((det A)^c, 0) w* "
                "(reduction-derived, non-unital)\n";
          os << "  c = " << f.c << "\n  w = " << pretty(f.w.mat()) << "\n";
        }
      },
      res.form);
  os << "phi(I): rank " << res.diagnostics.q_rank << ", idempotency defect "
     << res.diagnostics.q_defect << "\n";
  os << "residuals: sequential-law " << res.diagnostics.seq_residual
     << ", verification " << res.diagnostics.residual << "\n";
  if (res.diagnostics.inner) {
    os << "reduced cone branch: " << branch_name(res.diagnostics.inner->branch) << "\n";
  }
  return os.str();
}

}  // namespace jt2
