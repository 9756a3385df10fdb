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
#include <random>

#include "jt2/mat2.hpp"

namespace jt2 {

/**
 * Deterministic random source: MT19937-64 (output sequence fixed by the
 * C++ standard) with hand-rolled variate mappings, so identical seeds give
 * identical streams on every platform. std::*_distribution is avoided on
 * purpose; its output is implementation defined.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform in [0, 1) with 53 random mantissa bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; kept stateless across calls for reproducibility.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

 private:
  std::mt19937_64 eng_;
};

// Haar-distributed element of SU(2) via a uniform unit quaternion
// (w, x, y, z) |-> w I + i (x sigma_x + y sigma_y + z sigma_z).
inline Mat2 random_su2(Rng& rng) {
  double q[4];
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& v : q) {
      v = rng.normal();
      n2 += v * v;
    }
  } while (n2 < 1e-12);
  const double inv = 1.0 / std::sqrt(n2);
  const double w = q[0] * inv, x = q[1] * inv, y = q[2] * inv, z = q[3] * inv;
  return Mat2{cplx(w, z), cplx(-y, x), cplx(y, x), cplx(w, -z)};
}

// Generic unitary: SU(2) element times a random global phase.
inline Mat2 random_unitary(Rng& rng) {
  const double theta = rng.uniform(0.0, 6.283185307179586477);
  return cplx(std::cos(theta), std::sin(theta)) * random_su2(rng);
}

// Random hermitian matrix with Pauli coordinates uniform in [-s, s].
inline Herm2 random_herm(Rng& rng, double s = 1.0) {
  PauliCoords c;
  c.a0 = rng.uniform(-s, s);
  c.ax = rng.uniform(-s, s);
  c.ay = rng.uniform(-s, s);
  c.az = rng.uniform(-s, s);
  return pauli_recompose(c);
}

inline Traceless2 random_traceless_unit(Rng& rng) {
  double v[3];
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (double& x : v) {
      x = rng.normal();
      n2 += x * x;
    }
  } while (n2 < 1e-12);
  const double inv = 1.0 / std::sqrt(n2);
  PauliCoords c;
  c.ax = v[0] * inv;
  c.ay = v[1] * inv;
  c.az = v[2] * inv;
  return Traceless2(pauli_recompose(c));
}

// Positive definite matrix with eigenvalues log-uniform in [lo, hi],
// conjugated by a Haar unitary.
inline PD2 random_pd(Rng& rng, double lo = std::exp(-2.0), double hi = std::exp(2.0)) {
  const double l1 = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  const double l2 = std::exp(rng.uniform(std::log(lo), std::log(hi)));
  const Mat2 u = random_su2(rng);
  const Mat2 m = u * Mat2::diag(l1, l2) * adjoint(u);
  return PD2(Herm2::symmetrized(m));
}

// Effect with eigenvalues uniform in [lo, hi] inside [0, 1].
inline Effect2 random_effect(Rng& rng, double lo = 0.0, double hi = 1.0) {
  const double l1 = rng.uniform(lo, hi);
  const double l2 = rng.uniform(lo, hi);
  const Mat2 u = random_su2(rng);
  const Mat2 m = u * Mat2::diag(l1, l2) * adjoint(u);
  return Effect2(Herm2::symmetrized(m));
}

inline Effect2 random_invertible_effect(Rng& rng, double lo = 0.05) {
  return random_effect(rng, lo, 1.0);
}

// Rank-one effect t P for a random projection P and t in (0, 1].
inline Effect2 random_singular_effect(Rng& rng) {
  const double t = rng.uniform(0.05, 1.0);
  const Mat2 u = random_su2(rng);
  const Mat2 m = u * Mat2::diag(t, 0.0) * adjoint(u);
  return Effect2(Herm2::symmetrized(m));
}

}  // namespace jt2
