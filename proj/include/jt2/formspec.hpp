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

#include <cstdio>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jt2/canonical.hpp"
#include "jt2/effects.hpp"

namespace jt2 {

struct SchemaError : DomainError {
  using DomainError::DomainError;
};

// Numbers are serialized with 17 significant digits, enough to round-trip
// any double. Emission is hand-rolled so the byte output is deterministic:
// fixed key order, fixed spacing, printf formatting.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/** {"re": [[..]], "im": [[..]]}, row-major 2x2. */
inline std::string emit_matrix(const Mat2& m) {
  auto part = [&](bool re) {
    std::string s = "[[";
    s += fmt17(re ? m.e[0].real() : m.e[0].imag());
    s += ", ";
    s += fmt17(re ? m.e[1].real() : m.e[1].imag());
    s += "], [";
    s += fmt17(re ? m.e[2].real() : m.e[2].imag());
    s += ", ";
    s += fmt17(re ? m.e[3].real() : m.e[3].imag());
    s += "]]";
    return s;
  };
  return "{\"re\": " + part(true) + ", \"im\": " + part(false) + "}";
}

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw SchemaError(std::string("missing field \"") + key + "\"");
  }
  return *it;
}

inline double require_number(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = require_field(j, key);
  if (!v.is_number()) {
    throw SchemaError(std::string("field \"") + key + "\" must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw SchemaError(std::string("field \"") + key + "\" must be finite");
  }
  return x;
}

inline std::string require_string(const nlohmann::json& j, const char* key) {
  const nlohmann::json& v = require_field(j, key);
  if (!v.is_string()) {
    throw SchemaError(std::string("field \"") + key + "\" must be a string");
  }
  return v.get<std::string>();
}

inline void read_grid(const nlohmann::json& v, const char* key, double out[4]) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_array() || !v[1].is_array() ||
      v[0].size() != 2 || v[1].size() != 2) {
    throw SchemaError(std::string("\"") + key + "\" must be a 2x2 array");
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const nlohmann::json& cell = v[i][j];
      if (!cell.is_number()) {
        throw SchemaError(std::string("\"") + key + "\" entries must be numbers");
      }
      const double x = cell.get<double>();
      if (!std::isfinite(x)) {
        throw SchemaError(std::string("\"") + key + "\" entries must be finite");
      }
      out[2 * i + j] = x;
    }
  }
}

}  // namespace detail

inline Mat2 parse_matrix(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("matrix must be an object with \"re\" and \"im\"");
  double re[4], im[4];
  detail::read_grid(detail::require_field(j, "re"), "re", re);
  detail::read_grid(detail::require_field(j, "im"), "im", im);
  Mat2 m;
  for (int k = 0; k < 4; ++k) m.e[k] = cplx(re[k], im[k]);
  return m;
}

inline Mat2 parse_matrix_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw SchemaError(std::string("matrix is not valid JSON: ") + err.what());
  }
  return parse_matrix(j);
}

/**
 * Parsed form specification: a finite composition of same-kind canonical
 * forms, listed outer to inner (the last entry is applied first). A plain
 * form parses as a one-element chain.
 */
struct ParsedSpec {
  std::vector<JTEForm> jte;
  std::vector<SeqForm> seq;

  bool is_jte() const { return !jte.empty(); }
};

namespace detail {

inline Unitary2 parse_unitary(const nlohmann::json& j) {
  return Unitary2(parse_matrix(require_field(j, "unitary")));
}

inline JTEForm parse_jte_form(const nlohmann::json& j) {
  const std::string form = require_string(j, "form");
  const nlohmann::json& params = require_field(j, "params");
  if (form == "b1") return B1(parse_unitary(j), require_number(params, "c"));
  if (form == "b2") return B2(parse_unitary(j), require_number(params, "d"));
  if (form == "b3") {
    return B3(parse_unitary(j), require_number(params, "c1"), require_number(params, "c2"));
  }
  throw SchemaError("unknown jte form \"" + form + "\"");
}

inline SeqForm parse_seq_form(const nlohmann::json& j) {
  const std::string form = require_string(j, "form");
  if (form == "zero") return ZeroForm{};
  const nlohmann::json& params = require_field(j, "params");
  if (form == "d1") return D1(parse_unitary(j), require_number(params, "c"));
  if (form == "d2") return D2(parse_unitary(j));
  if (form == "d3") return D3(parse_unitary(j), require_number(params, "d"));
  if (form == "d4") {
    return D4(parse_unitary(j), require_number(params, "c1"), require_number(params, "c2"));
  }
  if (form == "rank1") return RankOneImage(parse_unitary(j), require_number(params, "c"));
  throw SchemaError("unknown seq form \"" + form + "\"");
}

inline void parse_spec_into(const nlohmann::json& j, ParsedSpec& out) {
  if (!j.is_object()) throw SchemaError("form spec must be a JSON object");
  const std::string kind = require_string(j, "kind");
  if (kind == "jte") {
    if (!out.seq.empty()) throw SchemaError("compose mixes jte and seq forms");
    out.jte.push_back(parse_jte_form(j));
  } else if (kind == "seq") {
    if (!out.jte.empty()) throw SchemaError("compose mixes jte and seq forms");
    out.seq.push_back(parse_seq_form(j));
  } else if (kind == "compose") {
    const nlohmann::json& of = require_field(j, "of");
    if (!of.is_array() || of.empty()) {
      throw SchemaError("\"of\" must be a nonempty array of form specs");
    }
    for (const nlohmann::json& item : of) parse_spec_into(item, out);
  } else {
    throw SchemaError("unknown kind \"" + kind + "\"");
  }
}

}  // namespace detail

inline ParsedSpec parse_spec_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw SchemaError(std::string("spec is not valid JSON: ") + err.what());
  }
  ParsedSpec out;
  detail::parse_spec_into(j, out);
  return out;
}

/** D2 params object is emitted empty to keep one uniform shape. */
inline std::string emit_form(const JTEForm& e) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, B1>) {
          return "{\"kind\": \"jte\", \"form\": \"b1\", \"unitary\": " +
                 emit_matrix(f.u.mat()) + ", \"params\": {\"c\": " + fmt17(f.c) + "}}";
        } else if constexpr (std::is_same_v<T, B2>) {
          return "{\"kind\": \"jte\", \"form\": \"b2\", \"unitary\": " +
                 emit_matrix(f.v.mat()) + ", \"params\": {\"d\": " + fmt17(f.d) + "}}";
        } else {
          return "{\"kind\": \"jte\", \"form\": \"b3\", \"unitary\": " +
                 emit_matrix(f.w.mat()) + ", \"params\": {\"c1\": " + fmt17(f.c1) +
                 ", \"c2\": " + fmt17(f.c2) + "}}";
        }
      },
      e);
}

inline std::string emit_form(const SeqForm& s) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ZeroForm>) {
          return "{\"kind\": \"seq\", \"form\": \"zero\"}";
        } else if constexpr (std::is_same_v<T, D1>) {
          return "{\"kind\": \"seq\", \"form\": \"d1\", \"unitary\": " +
                 emit_matrix(f.u.mat()) + ", \"params\": {\"c\": " + fmt17(f.c) + "}}";
        } else if constexpr (std::is_same_v<T, D2>) {
          return "{\"kind\": \"seq\", \"form\": \"d2\", \"unitary\": " +
                 emit_matrix(f.v.mat()) + ", \"params\": {}}";
        } else if constexpr (std::is_same_v<T, D3>) {
          return "{\"kind\": \"seq\", \"form\": \"d3\", \"unitary\": " +
                 emit_matrix(f.v.mat()) + ", \"params\": {\"d\": " + fmt17(f.d) + "}}";
        } else if constexpr (std::is_same_v<T, D4>) {
          return "{\"kind\": \"seq\", \"form\": \"d4\", \"unitary\": " +
                 emit_matrix(f.w.mat()) + ", \"params\": {\"c1\": " + fmt17(f.c1) +
                 ", \"c2\": " + fmt17(f.c2) + "}}";
        } else {
          return "{\"kind\": \"seq\", \"form\": \"rank1\", \"unitary\": " +
                 emit_matrix(f.w.mat()) + ", \"params\": {\"c\": " + fmt17(f.c) + "}}";
        }
      },
      s);
}

/** Pointwise evaluation of the (composed) spec as a cone black box. */
inline BlackBoxJTE to_blackbox_jte(std::vector<JTEForm> chain) {
  if (chain.empty()) throw InvalidArgument("to_blackbox_jte: empty chain");
  return BlackBoxJTE{[chain = std::move(chain)](const PD2& a) {
    PD2 x = a;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) x = jt2::apply(*it, x);
    return x;
  }};
}

inline BlackBoxSeq to_blackbox_seq(std::vector<SeqForm> chain) {
  if (chain.empty()) throw InvalidArgument("to_blackbox_seq: empty chain");
  return BlackBoxSeq{[chain = std::move(chain)](const Effect2& a) {
    Effect2 x = a;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) x = apply_seq(*it, x);
    return x;
  }};
}

}  // namespace jt2
