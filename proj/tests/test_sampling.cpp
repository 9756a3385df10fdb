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

#include <catch2/catch_amalgamated.hpp>
#include <jt2/mat2.hpp>
#include <jt2/sampling.hpp>

using namespace jt2;

TEST_CASE("rng streams are reproducible per seed") {
  Rng a(1234);
  Rng b(1234);
  for (int i = 0; i < 100; ++i) {
    CHECK(a.uniform() == b.uniform());
  }
  Rng c(1235);
  Rng d(1234);
  bool all_equal = true;
  for (int i = 0; i < 16; ++i) {
    all_equal = all_equal && (c.uniform() == d.uniform());
  }
  CHECK_FALSE(all_equal);
}

TEST_CASE("uniform values stay inside the requested interval") {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.uniform(-2.0, 3.0);
    CHECK(v >= -2.0);
    CHECK(v < 3.0);
  }
}

TEST_CASE("normal samples have plausible moments") {
  Rng rng(42);
  double sum = 0.0, sum2 = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.05);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("random_su2 is special unitary") {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const Mat2 u = random_su2(rng);
    CHECK(rel_diff(u * adjoint(u), sigma0()) < 1e-14);
    CHECK(std::abs(det(u) - cplx(1.0, 0.0)) < 1e-14);
  }
}

TEST_CASE("random_unitary covers nontrivial determinant phases") {
  Rng rng(11);
  bool saw_offunit_det = false;
  for (int i = 0; i < 100; ++i) {
    const Mat2 u = random_unitary(rng);
    CHECK(rel_diff(u * adjoint(u), sigma0()) < 1e-13);
    CHECK(std::abs(std::abs(det(u)) - 1.0) < 1e-13);
    if (std::abs(det(u) - cplx(1.0, 0.0)) > 0.1) saw_offunit_det = true;
  }
  CHECK(saw_offunit_det);
}

TEST_CASE("random_pd spectra stay in the configured band") {
  Rng rng(13);
  for (int i = 0; i < 300; ++i) {
    const PD2 p = random_pd(rng);
    double l1 = 0.0, l2 = 0.0;
    detail::eigvals(p.herm(), l1, l2);
    CHECK(l2 >= std::exp(-2.0) * (1.0 - 1e-12));
    CHECK(l1 <= std::exp(2.0) * (1.0 + 1e-12));
  }
  const PD2 narrow = random_pd(rng, 0.5, 0.6);
  double l1 = 0.0, l2 = 0.0;
  detail::eigvals(narrow.herm(), l1, l2);
  CHECK(l2 >= 0.5 * (1.0 - 1e-12));
  CHECK(l1 <= 0.6 * (1.0 + 1e-12));
}

TEST_CASE("random_traceless_unit has zero trace and unit hs norm") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    const Traceless2 w = random_traceless_unit(rng);
    CHECK(std::abs(trace_re(w.herm())) < 1e-15);
    CHECK(std::abs(hs_norm(w.herm()) - 1.0) < 1e-14);
  }
}

TEST_CASE("random effects are effects") {
  Rng rng(19);
  for (int i = 0; i < 200; ++i) {
    const Effect2 a = random_effect(rng);
    double l1 = 0.0, l2 = 0.0;
    detail::eigvals(a.herm(), l1, l2);
    CHECK(l2 >= -1e-15);
    CHECK(l1 <= 1.0 + 1e-15);
  }
}

TEST_CASE("random_invertible_effect keeps a spectral floor") {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    const Effect2 a = random_invertible_effect(rng);
    double l1 = 0.0, l2 = 0.0;
    detail::eigvals(a.herm(), l1, l2);
    CHECK(l2 >= 0.05 * (1.0 - 1e-12));
  }
}

TEST_CASE("random_singular_effect is rank one") {
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const Effect2 a = random_singular_effect(rng);
    CHECK(std::abs(det(a.mat())) < 1e-14);
    CHECK(trace_re(a.herm()) >= 0.05 * (1.0 - 1e-12));
  }
}
