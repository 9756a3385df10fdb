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
#include <jt2/classify.hpp>

using namespace jt2;

TEST_CASE("classify recovers a conjugation form") {
  Rng rng(401);
  const JTEForm original = B1(Unitary2(random_unitary(rng)), 0.65);
  const ClassifyResult res = classify_jte(make_blackbox(original));
  CHECK(tag_name(res.form) == "b1");
  CHECK(gauge_equal(res.form, original, 1e-8));
  CHECK(res.diagnostics.branch == Branch::rotation);
  CHECK(res.diagnostics.detM_sign == 1);
  CHECK(std::abs(res.diagnostics.v - 2.3) < 1e-10);
  CHECK(std::abs(res.diagnostics.p - 1.0) < 1e-10);
  CHECK(res.diagnostics.residual < 1e-10);
}

TEST_CASE("classify recovers an inverse-conjugation form") {
  Rng rng(403);
  const JTEForm original = B2(Unitary2(random_unitary(rng)), -0.8);
  const ClassifyResult res = classify_jte(make_blackbox(original));
  CHECK(tag_name(res.form) == "b2");
  CHECK(gauge_equal(res.form, original, 1e-8));
  CHECK(res.diagnostics.branch == Branch::reflection);
  CHECK(res.diagnostics.detM_sign == -1);
  CHECK(std::abs(res.diagnostics.v - (-2.6)) < 1e-10);
}

TEST_CASE("classify recovers a diagonal form") {
  Rng rng(405);
  const JTEForm original = B3(Unitary2(random_unitary(rng)), 1.2, -0.4);
  const ClassifyResult res = classify_jte(make_blackbox(original));
  CHECK(tag_name(res.form) == "b3");
  CHECK(gauge_equal(res.form, original, 1e-8));
  CHECK(res.diagnostics.branch == Branch::non_scalar_fi);
  const B3& f = std::get<B3>(res.form);
  CHECK(std::abs(f.c1 - 1.2) < 1e-10);
  CHECK(std::abs(f.c2 - (-0.4)) < 1e-10);
}

TEST_CASE("classify handles the scalar family") {
  // Equal exponents make f(I) scalar and the traceless block vanish.
  Rng rng(407);
  const JTEForm original = B3(Unitary2(random_unitary(rng)), 0.45, 0.45);
  const ClassifyResult res = classify_jte(make_blackbox(original));
  CHECK(res.diagnostics.branch == Branch::zero_block);
  const B3& f = std::get<B3>(res.form);
  CHECK(std::abs(f.c1 - 0.45) < 1e-10);
  CHECK(std::abs(f.c2 - 0.45) < 1e-10);
  CHECK(gauge_equal(res.form, original, 1e-8));
}

TEST_CASE("classify of the identity map") {
  const ClassifyResult res = classify_jte(make_blackbox(B1(Unitary2(Mat2::identity()), 0.0)));
  CHECK(tag_name(res.form) == "b1");
  const B1& f = std::get<B1>(res.form);
  CHECK(std::abs(f.c) < 1e-12);
  CHECK(std::abs(res.diagnostics.v - 1.0) < 1e-12);
  CHECK(unitary_phase_distance(f.u.mat(), Mat2::identity()) < 1e-9);
}

TEST_CASE("classify of the transpose map") {
  const ClassifyResult res = classify_jte(make_blackbox(transpose_form()));
  CHECK(tag_name(res.form) == "b2");
  CHECK(res.diagnostics.detM_sign == -1);
  const B2& f = std::get<B2>(res.form);
  CHECK(std::abs(f.d - 1.0) < 1e-10);
}

TEST_CASE("negative exponents classify cleanly") {
  Rng rng(409);
  const JTEForm original = B1(Unitary2(random_su2(rng)), -1.3);
  const ClassifyResult res = classify_jte(make_blackbox(original));
  CHECK(gauge_equal(res.form, original, 1e-8));
  CHECK_FALSE(is_automorphism(B1(Unitary2(Mat2::identity()), -0.5)));
}

TEST_CASE("squaring violates the triple product law") {
  const BlackBoxJTE phi{[](const PD2& a) {
    return PD2(Herm2::symmetrized(a.mat() * a.mat()));
  }};
  CHECK_THROWS_AS(classify_jte(phi), NotJTE);
  try {
    classify_jte(phi);
  } catch (const NotJTE& e) {
    CHECK(e.residual > 0.01);
  }
}

TEST_CASE("an affine shift violates the triple product law") {
  const BlackBoxJTE phi{[](const PD2& a) {
    return PD2(Herm2::symmetrized(a.mat() + Mat2::identity()));
  }};
  CHECK_THROWS_AS(classify_jte(phi), NotJTE);
}

TEST_CASE("a log-quadratic box is rejected") {
  // The quadratic term grows with the argument, so the triple products
  // amplify it and the first sampling gate already rejects.
  const BlackBoxJTE phi{[](const PD2& a) {
    const Herm2 l = mlog(a);
    return mexp(Herm2::symmetrized(0.3 * (l.mat() * l.mat()) + l.mat()));
  }};
  CHECK_THROWS_AS(classify_jte(phi), NotJTE);
}

TEST_CASE("rejection exceptions carry their diagnostics") {
  const NotJTE a(0.25);
  CHECK(a.residual == 0.25);
  CHECK(std::string(a.what()).find("triple product law") != std::string::npos);
  const NotLinear b(0.125);
  CHECK(b.residual == 0.125);
  CHECK(std::string(b.what()).find("log-linear") != std::string::npos);
  const ScaleNotOne c(2.0);
  CHECK(c.p == 2.0);
  const NotIsometry d(0.5);
  CHECK(d.defect == 0.5);
}

TEST_CASE("a uniform off-unit scaling of the block is rejected") {
  // The log-linear closure of F = diag(1, (1 + delta) I3) has an exactly
  // isometric traceless block of scale 1 + delta. At delta = 1e-3 the
  // sampled triple-law residual is near 4.4e-4, so a 7e-4 tolerance passes
  // the entry gates and the scale gate is the one that fires.
  LinMapH2 F = LinMapH2::identity();
  for (int i = 1; i < 4; ++i) F.f[i][i] = 1.0 + 1e-3;
  Tolerances tol;
  tol.tol_class = 7e-4;
  try {
    classify_jte(loglinear_blackbox(F), tol);
    FAIL("expected ScaleNotOne");
  } catch (const ScaleNotOne& e) {
    CHECK(std::abs(e.p - 1.001) < 1e-9);
  }
}

TEST_CASE("an anisotropic block is rejected as a non-isometry") {
  // Stretching a single axis by 1e-3 gives an isometry defect near 1.3e-3
  // while the sampled triple-law residual stays near 4.8e-4.
  LinMapH2 F = LinMapH2::identity();
  F.f[1][1] = 1.0 + 1e-3;
  Tolerances tol;
  tol.tol_class = 7e-4;
  CHECK_THROWS_AS(classify_jte(loglinear_blackbox(F), tol), NotIsometry);
}

TEST_CASE("classification is deterministic in the seed") {
  Rng rng(411);
  const JTEForm original = B2(Unitary2(random_unitary(rng)), 0.3);
  const ClassifyResult a = classify_jte(make_blackbox(original), {}, 42);
  const ClassifyResult b = classify_jte(make_blackbox(original), {}, 42);
  CHECK(rel_diff(std::get<B2>(a.form).v.mat(), std::get<B2>(b.form).v.mat()) == 0.0);
  CHECK(std::get<B2>(a.form).d == std::get<B2>(b.form).d);
  CHECK(a.diagnostics.jte_residual == b.diagnostics.jte_residual);
}

TEST_CASE("explain mentions the branch and the residuals") {
  const ClassifyResult res = classify_jte(make_blackbox(B1(Unitary2(Mat2::identity()), 0.5)));
  const std::string text = explain(res);
  CHECK(text.find("branch: rotation") != std::string::npos);
  CHECK(text.find("form: b1") != std::string::npos);
  CHECK(text.find("residuals:") != std::string::npos);
  CHECK(text.find("automorphism: yes") != std::string::npos);
}
