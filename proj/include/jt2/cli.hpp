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

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "jt2/classify.hpp"
#include "jt2/effects.hpp"
#include "jt2/formspec.hpp"
#include "jt2/proofcheck.hpp"

namespace jt2 {

// Exit codes: 0 pass, 1 usage/IO/domain error, 2 mathematical-contract
// violation.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitContract = 2;

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline double parse_env_double(const char* name, const char* text) {
  char* end = nullptr;
  const double x = std::strtod(text, &end);
  if (end == text || *end != '\0' || !std::isfinite(x) || x <= 0.0) {
    throw InvalidArgument(std::string(name) + " must be a positive number, got \"" +
                          text + "\"");
  }
  return x;
}

// Flags beat environment variables beat defaults.
inline Tolerances resolve_tolerances(const std::optional<double>& flag_class,
                                     const std::optional<double>& flag_eq) {
  Tolerances tol{};
  if (const char* s = std::getenv("JT_TOL_CLASS")) {
    tol.tol_class = parse_env_double("JT_TOL_CLASS", s);
  }
  if (const char* s = std::getenv("JT_TOL_EQ")) {
    tol.tol_eq = parse_env_double("JT_TOL_EQ", s);
  }
  if (flag_class) tol.tol_class = *flag_class;
  if (flag_eq) tol.tol_eq = *flag_eq;
  return tol;
}

inline BlackBoxJTE corrupt_box(const BlackBoxJTE& inner) {
  return BlackBoxJTE{[inner](const PD2& a) {
    const PD2 x = inner.eval(a);
    return PD2(Herm2::symmetrized(x.mat() * x.mat()));
  }};
}

inline BlackBoxSeq corrupt_box(const BlackBoxSeq& inner) {
  return BlackBoxSeq{[inner](const Effect2& a) {
    const Effect2 x = inner.eval(a);
    return Effect2(Herm2::symmetrized(x.mat() * x.mat()));
  }};
}

inline std::string json_real3x3(const Real3x3& m) {
  std::string s = "[";
  for (int i = 0; i < 3; ++i) {
    s += (i ? ", [" : "[");
    for (int j = 0; j < 3; ++j) {
      if (j) s += ", ";
      s += fmt17(m[i][j]);
    }
    s += "]";
  }
  return s + "]";
}

inline std::string json_classify(const ClassifyResult& res) {
  const ClassifyDiagnostics& d = res.diagnostics;
  std::string s = "{\"form\": " + emit_form(res.form);
  s += ", \"branch\": \"" + std::string(branch_name(d.branch)) + "\"";
  s += ", \"v\": " + fmt17(d.v);
  s += ", \"p\": " + fmt17(d.p);
  s += ", \"det_m_sign\": " + std::to_string(d.detM_sign);
  s += ", \"m\": " + json_real3x3(d.M);
  s += ", \"residual\": " + fmt17(d.residual);
  s += ", \"jte_residual\": " + fmt17(d.jte_residual);
  s += ", \"linearity_residual\": " + fmt17(d.linearity_residual);
  return s + "}";
}

inline std::string json_classify(const SeqClassifyResult& res) {
  const SeqClassifyDiagnostics& d = res.diagnostics;
  std::string s = "{\"form\": " + emit_form(res.form);
  s += ", \"q_rank\": " + std::to_string(d.q_rank);
  s += ", \"q_defect\": " + fmt17(d.q_defect);
  s += ", \"seq_residual\": " + fmt17(d.seq_residual);
  s += ", \"residual\": " + fmt17(d.residual);
  if (d.inner) {
    s += ", \"reduced_branch\": \"" + std::string(branch_name(d.inner->branch)) + "\"";
  }
  return s + "}";
}

}  // namespace detail

/**
 * Runs the command-line frontend on an argument list (program name not
 * included). All output goes to the given streams; nothing is read from
 * stdin. Identical invocations produce identical output bytes.
 */
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"canonical forms of the 2x2 positive definite cone and effect algebra"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<double> flag_tol_class, flag_tol_eq;
  app.add_option("--tol-class", flag_tol_class,
                 "classifier decision threshold (beats JT_TOL_CLASS)");
  app.add_option("--tol-eq", flag_tol_eq, "equality threshold (beats JT_TOL_EQ)");

  std::string input_path, matrix_path, gen_form;
  std::uint64_t seed = kDefaultSeed;
  int verify_trials = 200;
  int ident_trials = 1000;
  bool as_json = false, corrupt = false;

  CLI::App* classify = app.add_subcommand("classify", "recover the canonical form of a spec");
  classify->add_option("--input", input_path, "FormSpecFile path")->required();
  classify->add_flag("--json", as_json, "machine-readable output");
  classify->add_option("--seed", seed, "sampling seed");

  CLI::App* verify = app.add_subcommand("verify", "check the morphism law by sampling");
  verify->add_option("--input", input_path, "FormSpecFile path")->required();
  verify->add_option("--trials", verify_trials, "sample count");
  verify->add_flag("--corrupt", corrupt, "square the output of every evaluation");
  verify->add_flag("--json", as_json, "machine-readable output");
  verify->add_option("--seed", seed, "sampling seed");

  CLI::App* identities = app.add_subcommand("identities", "run the identity suite");
  identities->add_option("--trials", ident_trials, "sample count per identity");
  identities->add_flag("--json", as_json, "machine-readable output");
  identities->add_option("--seed", seed, "sampling seed");

  CLI::App* gen = app.add_subcommand("gen", "generate a random canonical form spec");
  gen->add_option("--form", gen_form, "b1|b2|b3|d1|d2|d3|d4|zero|rank1")->required();
  gen->add_option("--seed", seed, "generator seed");

  CLI::App* apply_cmd = app.add_subcommand("apply", "evaluate a spec at a matrix");
  apply_cmd->add_option("--input", input_path, "FormSpecFile path")->required();
  apply_cmd->add_option("--matrix", matrix_path, "MatrixJSON path")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const Tolerances tol = detail::resolve_tolerances(flag_tol_class, flag_tol_eq);

    if (classify->parsed()) {
      const ParsedSpec spec = parse_spec_text(detail::read_file(input_path));
      if (spec.is_jte()) {
        const ClassifyResult res = classify_jte(to_blackbox_jte(spec.jte), tol, seed);
        out << (as_json ? detail::json_classify(res) + "\n" : explain(res));
      } else {
        const SeqClassifyResult res = classify_seq(to_blackbox_seq(spec.seq), tol, seed);
        out << (as_json ? detail::json_classify(res) + "\n" : explain(res));
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      const ParsedSpec spec = parse_spec_text(detail::read_file(input_path));
      std::string law;
      double residual = 0.0;
      if (spec.is_jte()) {
        BlackBoxJTE box = to_blackbox_jte(spec.jte);
        if (corrupt) box = detail::corrupt_box(box);
        law = "jordan triple product";
        residual = check_jte(box, verify_trials, seed);
      } else {
        BlackBoxSeq box = to_blackbox_seq(spec.seq);
        if (corrupt) box = detail::corrupt_box(box);
        law = "sequential product";
        residual = check_seq_endo(box, verify_trials, seed);
      }
      const bool ok = residual <= tol.tol_class;
      if (as_json) {
        out << "{\"law\": \"" << law << "\", \"trials\": " << verify_trials
            << ", \"residual\": " << fmt17(residual)
            << ", \"tolerance\": " << fmt17(tol.tol_class)
            << ", \"pass\": " << (ok ? "true" : "false") << "}\n";
      } else {
        out << law << " law over " << verify_trials << " trials: residual " << fmt17(residual)
            << " (tolerance " << fmt17(tol.tol_class) << ") "
            << (ok ? "PASS" : "FAIL") << "\n";
      }
      return ok ? kExitOk : kExitContract;
    }

    if (identities->parsed()) {
      const IdentitySuiteReport rep = run_identity_suite(ident_trials, seed);
      if (as_json) {
        out << "{\"gh_det\": " << fmt17(rep.gh_det) << ", \"pass\": "
            << (rep.pass ? "true" : "false") << ", \"identities\": [";
        for (std::size_t i = 0; i < rep.outcomes.size(); ++i) {
          const IdentityOutcome& o = rep.outcomes[i];
          if (i) out << ", ";
          out << "{\"name\": \"" << o.name << "\", \"residual\": " << fmt17(o.residual)
              << ", \"threshold\": " << fmt17(o.threshold)
              << ", \"pass\": " << (o.pass ? "true" : "false") << "}";
        }
        out << "]}\n";
      } else {
        for (const IdentityOutcome& o : rep.outcomes) {
          out << (o.pass ? "PASS" : "FAIL") << "  " << o.name << "  residual "
              << fmt17(o.residual) << " (threshold " << fmt17(o.threshold) << ")\n";
        }
        out << "gh_det = " << fmt17(rep.gh_det) << "\n";
        out << (rep.pass ? "all identities hold\n" : "identity suite FAILED\n");
      }
      return rep.pass ? kExitOk : kExitContract;
    }

    if (gen->parsed()) {
      Rng rng(seed);
      std::string spec;
      if (gen_form == "b1") {
        spec = emit_form(JTEForm(B1(Unitary2(random_unitary(rng)), rng.uniform(-2.0, 2.0))));
      } else if (gen_form == "b2") {
        spec = emit_form(JTEForm(B2(Unitary2(random_unitary(rng)), rng.uniform(-2.0, 2.0))));
      } else if (gen_form == "b3") {
        spec = emit_form(JTEForm(
            B3(Unitary2(random_unitary(rng)), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))));
      } else if (gen_form == "d1") {
        spec = emit_form(SeqForm(D1(Unitary2(random_unitary(rng)), rng.uniform(0.0, 2.0))));
      } else if (gen_form == "d2") {
        spec = emit_form(SeqForm(D2(Unitary2(random_unitary(rng)))));
      } else if (gen_form == "d3") {
        spec = emit_form(SeqForm(D3(Unitary2(random_unitary(rng)), 1.0 + rng.uniform(0.05, 1.0))));
      } else if (gen_form == "d4") {
        spec = emit_form(SeqForm(
            D4(Unitary2(random_unitary(rng)), rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0))));
      } else if (gen_form == "zero") {
        spec = emit_form(SeqForm(ZeroForm{}));
      } else if (gen_form == "rank1") {
        spec = emit_form(SeqForm(RankOneImage(Unitary2(random_unitary(rng)), rng.uniform(0.0, 2.0))));
      } else {
        throw InvalidArgument("unknown form tag \"" + gen_form + "\"");
      }
      out << spec << "\n";
      return kExitOk;
    }

    if (apply_cmd->parsed()) {
      const ParsedSpec spec = parse_spec_text(detail::read_file(input_path));
      const Mat2 m = parse_matrix_text(detail::read_file(matrix_path));
      Mat2 result;
      if (spec.is_jte()) {
        PD2 x{Herm2(m)};
        for (auto it = spec.jte.rbegin(); it != spec.jte.rend(); ++it) x = jt2::apply(*it, x);
        result = x.mat();
      } else {
        Effect2 x{Herm2(m)};
        for (auto it = spec.seq.rbegin(); it != spec.seq.rend(); ++it) x = apply_seq(*it, x);
        result = x.mat();
      }
      out << emit_matrix(result) << "\n";
      return kExitOk;
    }
  } catch (const ContractError& e) {
    err << "contract violation: " << e.what() << "\n";
    return kExitContract;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitDomain;
}

}  // namespace jt2
