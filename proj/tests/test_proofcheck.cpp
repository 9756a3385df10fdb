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
#include <jt2/proofcheck.hpp>

using namespace jt2;

TEST_CASE("sandwich product matches its closed form") {
  Rng rng(601);
  for (int i = 0; i < 200; ++i) {
    const double s = rng.uniform(1e-3, 3.0);
    const double t = rng.uniform(1e-3, 3.0);
    CHECK(rel_diff(sandwich_product(s, t).mat(), sandwich_closed_form(s, t).mat()) <
          1e-12);
  }
}

TEST_CASE("sandwich arguments are validated") {
  CHECK_THROWS_AS(sandwich_product(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(sandwich_product(1.0, -2.0), InvalidArgument);
  CHECK_THROWS_AS(sandwich_product(41.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(n_aux(1.0, 40.5), InvalidArgument);
  CHECK_NOTHROW(n_aux(40.0, 40.0));
}

TEST_CASE("sandwich decomposition is a polar form") {
  const SandwichDecomp dec = sandwich_decompose(0.8, 1.7);
  CHECK(std::abs(hs_norm(dec.w.herm()) - 1.0) < 1e-14);
  CHECK(std::abs(trace_re(dec.w.herm())) < 1e-15);
  CHECK(std::abs(dec.r - std::acosh(std::cosh(0.8) * std::cosh(1.7))) < 1e-15);
  const PD2 rebuilt = mexp(Herm2::symmetrized(dec.r * dec.w.mat()));
  CHECK(rel_diff(rebuilt.mat(), dec.product.mat()) < 1e-12);
}

TEST_CASE("sandwich determinant is one") {
  Rng rng(603);
  for (int i = 0; i < 100; ++i) {
    const double s = rng.uniform(1e-3, 3.0);
    const double t = rng.uniform(1e-3, 3.0);
    CHECK(std::abs(det(sandwich_product(s, t).mat()) - cplx(1.0, 0.0)) < 1e-11);
  }
}

TEST_CASE("n_aux is symmetric and matches its golden value") {
  CHECK(n_aux(1.0, 1.0) == kNAt11Golden);
  Rng rng(607);
  for (int i = 0; i < 100; ++i) {
    const double s = rng.uniform(1e-3, 10.0);
    const double t = rng.uniform(1e-3, 10.0);
    CHECK(n_aux(s, t) == n_aux(t, s));
  }
}

TEST_CASE("the independence determinant matches its golden value") {
  CHECK(std::abs(gh_independence_det() - kGhDetGolden) < 1e-12);
  // Nonzero is the mathematical content; the pinned digits guard the
  // floating-point pipeline.
  CHECK(std::abs(gh_independence_det()) > 0.05);
}

TEST_CASE("n tail approaches minus log 2") {
  const double log2 = std::log(2.0);
  auto tail = [](double t) {
    return n_aux(t, t) * std::cosh(t) * std::cosh(t) - 2.0 * t;
  };
  CHECK(std::abs(tail(5.0) - (-0.69305623756816697)) < 1e-12);
  CHECK(std::abs(tail(10.0) - (-0.69314717643763743)) < 1e-12);
  CHECK(std::abs(tail(20.0) - kNAsymptoticAt20Golden) < 1e-12);
  CHECK(std::abs(tail(20.0) + log2) < 1e-10);
}

TEST_CASE("claim2 traces agree for the identity map") {
  const LinMapH2 F = LinMapH2::identity();
  Rng rng(609);
  for (int i = 0; i < 100; ++i) {
    const double s = rng.uniform(1e-3, 3.0);
    const double t = rng.uniform(1e-3, 3.0);
    const auto [l, m] = claim2_traces(F, s, t);
    CHECK(std::abs(l - m) < 1e-10 * std::max(1.0, std::abs(m)));
    CHECK(l >= 1.0);
  }
}

TEST_CASE("claim2 traces agree for an isometric block with a twist") {
  // A rotated traceless block with unit scale keeps the two traces equal.
  LinMapH2 F = LinMapH2::identity();
  const double th = 0.6;
  F.f[1][1] = std::cos(th);
  F.f[1][3] = -std::sin(th);
  F.f[3][1] = std::sin(th);
  F.f[3][3] = std::cos(th);
  const auto [l, m] = claim2_traces(F, 0.9, 1.4);
  CHECK(std::abs(l - m) < 1e-10 * std::abs(m));
}

TEST_CASE("claim2 traces separate a non-isometric block") {
  LinMapH2 F = LinMapH2::identity();
  F.f[1][1] = 1.5;
  const auto [l, m] = claim2_traces(F, 1.0, 1.0);
  CHECK(std::abs(l - m) > 1e-3);
}

TEST_CASE("acosh_ratio matches its frozen samples") {
  CHECK(std::abs(acosh_ratio(10.0) - 1.9306852823562362) < 1e-12);
  CHECK(std::abs(acosh_ratio(20.0) - 1.9653426409720027) < 1e-12);
  CHECK(std::abs(acosh_ratio(40.0) - 1.9826713204860014) < 1e-12);
  // Small arguments sit far from the limit; the tail checks would be
  // meaningless there.
  CHECK(std::abs(acosh_ratio(0.1) - 2.0) > 0.5);
}

TEST_CASE("sqrt_limit_expr is one on the unit parameters") {
  // Identically 1 in exact arithmetic; the float pipeline may sit one ulp
  // off at small t.
  for (double t : {10.0, 20.0, 40.0}) {
    CHECK(std::abs(sqrt_limit_expr(t, 1.0, 1.0, 0.0) - 1.0) <= 1e-15);
  }
  // General parameters approach a as t grows.
  CHECK(std::abs(sqrt_limit_expr(40.0, 1.3, 0.7, 0.2) - 1.3) < 1e-3);
}

TEST_CASE("limit_checks passes with the documented thresholds") {
  const LimitReport rep = limit_checks();
  CHECK(rep.pass);
  CHECK(rep.acosh_monotone);
  CHECK(rep.acosh_deviation <= kAcoshLimitThreshold);
  CHECK(rep.acosh_deviation > 1e-3);
  CHECK(rep.sqrt_deviation <= kSqrtLimitThreshold);
  CHECK(kAcoshLimitThreshold == 2e-2);
  CHECK(kSqrtLimitThreshold == 1e-3);
}

TEST_CASE("the identity suite holds") {
  const IdentitySuiteReport rep = run_identity_suite(400, 2024);
  CHECK(rep.pass);
  CHECK(rep.outcomes.size() == 13);
  for (const IdentityOutcome& o : rep.outcomes) {
    INFO(o.name << " residual " << o.residual << " threshold " << o.threshold);
    CHECK(o.pass);
    CHECK(o.residual <= o.threshold);
  }
  CHECK(std::abs(rep.gh_det - kGhDetGolden) < 1e-12);
}

TEST_CASE("acosh_guarded clamps rounding below one") {
  CHECK(acosh_guarded(1.0 - 1e-16) == 0.0);
  CHECK(acosh_guarded(1.0) == 0.0);
  CHECK(std::abs(acosh_guarded(std::cosh(2.0)) - 2.0) < 1e-14);
}
