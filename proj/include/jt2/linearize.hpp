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
#include <cstdint>
#include <functional>

#include "jt2/canonical.hpp"
#include "jt2/mat2.hpp"
#include "jt2/sampling.hpp"

namespace jt2 {

inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ull;

struct NotPositiveOutput : ContractError {
  using ContractError::ContractError;
};

/**
 * Opaque endomorphism candidate of the positive cone. The callable must be
 * pure: everything downstream samples it and assumes repeated evaluation
 * gives identical output.
 */
struct BlackBoxJTE {
  std::function<PD2(const PD2&)> eval;
};

inline BlackBoxJTE make_blackbox(const JTEForm& e) {
  return BlackBoxJTE{[e](const PD2& a) { return jt2::apply(e, a); }};
}

namespace detail {
inline PD2 eval_checked(const BlackBoxJTE& phi, const PD2& a) {
  try {
    return phi.eval(a);
  } catch (const NotPositiveDefinite& err) {
    throw NotPositiveOutput(std::string("black box output is not positive definite: ") +
                            err.what());
  } catch (const NotHermitian& err) {
    throw NotPositiveOutput(std::string("black box output is not hermitian: ") +
                            err.what());
  }
}

// Relative deviation with a +1 regularizer in the denominator, so that
// near-zero references degrade to an absolute comparison.
inline double resid(const Mat2& got, const Mat2& want) {
  return frob_norm(got - want) / (1.0 + frob_norm(want));
}
}  // namespace detail

/**
 * Linear map on hermitian 2x2 matrices, stored as its 4x4 real matrix in
 * the Pauli basis. Column j holds the coordinates of f(sigma_j).
 */
struct LinMapH2 {
  std::array<std::array<double, 4>, 4> f{};

  static LinMapH2 identity() {
    LinMapH2 m;
    for (int i = 0; i < 4; ++i) m.f[i][i] = 1.0;
    return m;
  }

  PauliCoords apply(const PauliCoords& c) const {
    PauliCoords out;
    for (int i = 0; i < 4; ++i) {
      double s = 0.0;
      for (int j = 0; j < 4; ++j) s += f[i][j] * c[j];
      out[i] = s;
    }
    return out;
  }

  Herm2 apply_herm(const Herm2& h) const {
    return pauli_recompose(apply(pauli_decompose(h)));
  }

  PauliCoords column(int j) const {
    PauliCoords c;
    for (int i = 0; i < 4; ++i) c[i] = f[i][j];
    return c;
  }

  // Row 0: the functional h |-> (1/2) Tr f(h) in Pauli coordinates.
  std::array<double, 4> f0_row() const { return f[0]; }

  // Restriction to the traceless subspace (rows and columns x, y, z).
  Real3x3 traceless_block() const {
    Real3x3 m{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m[i][j] = f[i + 1][j + 1];
    return m;
  }
};

// The exact log-linear closure of F: A |-> exp(F(log A)).
inline BlackBoxJTE loglinear_blackbox(const LinMapH2& F) {
  return BlackBoxJTE{[F](const PD2& a) { return mexp(F.apply_herm(mlog(a))); }};
}

/**
 * Samples the candidate map at exp(sigma_j) and reads off the matrix of
 * f = log . phi . exp in the Pauli basis. A fixed probe is evaluated twice
 * first; unequal outputs mean the callable is not a function and the
 * sampling that follows would be meaningless.
 */
inline LinMapH2 extract_f(const BlackBoxJTE& phi) {
  const PD2 probe = mexp(Herm2::symmetrized(0.25 * sigma_x() + 0.125 * sigma_z()));
  const PD2 once = detail::eval_checked(phi, probe);
  const PD2 twice = detail::eval_checked(phi, probe);
  if (max_abs(once.mat() - twice.mat()) != 0.0) {
    throw InvalidArgument("extract_f: black box is not deterministic");
  }
  const Mat2 sigmas[4] = {sigma0(), sigma_x(), sigma_y(), sigma_z()};
  LinMapH2 F;
  for (int j = 0; j < 4; ++j) {
    const PD2 image = detail::eval_checked(phi, mexp(Herm2::symmetrized(sigmas[j])));
    const PauliCoords col = pauli_decompose(mlog(image));
    for (int i = 0; i < 4; ++i) F.f[i][j] = col[i];
  }
  return F;
}

/**
 * Max deviation of log(phi(exp h)) from F h over random h with hs-norm at
 * most 2, relative with a +1 regularizer. Zero (up to rounding) exactly
 * when phi is the log-linear closure of F on that ball.
 */
inline double check_linearity(const BlackBoxJTE& phi, const LinMapH2& F, int trials,
                              std::uint64_t seed = kDefaultSeed) {
  if (trials < 1) throw InvalidArgument("check_linearity: trials must be positive");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    PauliCoords c;
    double n2 = 0.0;
    for (int k = 0; k < 4; ++k) {
      c[k] = rng.normal();
      n2 += c[k] * c[k];
    }
    const double radius = rng.uniform(0.0, 2.0);
    const double scale = (n2 > 0.0) ? radius / std::sqrt(n2) : 0.0;
    for (int k = 0; k < 4; ++k) c[k] *= scale;
    const Herm2 h = pauli_recompose(c);
    const Herm2 got = mlog(detail::eval_checked(phi, mexp(h)));
    const Herm2 want = F.apply_herm(h);
    worst = std::max(worst, detail::resid(got.mat(), want.mat()));
  }
  return worst;
}

/**
 * Max deviation of phi(aba) from phi(a) phi(b) phi(a) over random positive
 * definite pairs with spectra in [e^-2, e^2].
 */
inline double check_jte(const BlackBoxJTE& phi, int trials,
                        std::uint64_t seed = kDefaultSeed) {
  if (trials < 1) throw InvalidArgument("check_jte: trials must be positive");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const PD2 a = random_pd(rng);
    const PD2 b = random_pd(rng);
    const PD2 lhs = detail::eval_checked(phi, jordan_triple(a, b));
    const PD2 fa = detail::eval_checked(phi, a);
    const PD2 fb = detail::eval_checked(phi, b);
    const PD2 rhs = jordan_triple(fa, fb);
    worst = std::max(worst, detail::resid(lhs.mat(), rhs.mat()));
  }
  return worst;
}

/**
 * Max commutator norm of (F h1, F h2) over random commuting hermitian
 * pairs. A linear map induced by a genuine endomorphism of the cone
 * preserves commutativity, so this stays at rounding level for them.
 */
inline double commutativity_residual(const LinMapH2& F, int trials,
                                     std::uint64_t seed = kDefaultSeed) {
  if (trials < 1) throw InvalidArgument("commutativity_residual: trials must be positive");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Mat2 u = random_su2(rng);
    auto in_basis = [&](double l1, double l2) {
      return Herm2::symmetrized(u * Mat2::diag(l1, l2) * adjoint(u));
    };
    const Herm2 h1 = in_basis(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const Herm2 h2 = in_basis(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    const Mat2 x = F.apply_herm(h1).mat();
    const Mat2 y = F.apply_herm(h2).mat();
    const double c = frob_norm(x * y - y * x);
    worst = std::max(worst, c / (1.0 + frob_norm(x) * frob_norm(y)));
  }
  return worst;
}

/** Extraction plus the standard residual battery, bundled. */
struct LinearizeReport {
  LinMapH2 F;
  double linearity_residual = 0.0;
  double commutativity_residual = 0.0;
  double jte_residual = 0.0;
};

inline LinearizeReport linearize_report(const BlackBoxJTE& phi, int trials = 64,
                                        std::uint64_t seed = kDefaultSeed) {
  LinearizeReport rep;
  rep.F = extract_f(phi);
  rep.linearity_residual = check_linearity(phi, rep.F, trials, seed);
  rep.commutativity_residual = commutativity_residual(rep.F, trials, seed + 1);
  rep.jte_residual = check_jte(phi, trials, seed + 2);
  return rep;
}

}  // namespace jt2
