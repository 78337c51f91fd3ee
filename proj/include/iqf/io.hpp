#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "iqf/affine.hpp"
#include "iqf/explorer.hpp"
#include "iqf/forms.hpp"
#include "iqf/lemmas.hpp"
#include "iqf/normalization.hpp"
#include "iqf/rationality.hpp"

namespace iqf::io {

using json = nlohmann::ordered_json;

/// Malformed or mistyped input; the CLI maps this to exit status 2.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json to_json(const Scalar& s) { return s.str(); }

inline Scalar scalar_from(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const DomainError& e) {
      throw SchemaError(where + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw SchemaError(where + ": expected a scalar string or integer");
}

inline json to_json(const Vec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline Vec vec_from(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array");
  std::vector<Scalar> xs;
  for (std::size_t i = 0; i < j.size(); ++i) xs.push_back(scalar_from(j[i], where + "[" + std::to_string(i) + "]"));
  Vec out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = xs[i];
  return out;
}

inline json to_json(const Mat& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline Mat mat_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw SchemaError(where + ": rows must be nonempty arrays");
  Mat out(j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw SchemaError(where + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      out(i, c) = scalar_from(j[i][c], where + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
    }
  }
  return out;
}

inline json to_json(const AffineMap& m) { return {{"g", to_json(m.linear_part())}, {"v", to_json(m.translation_part())}}; }

inline AffineMap affine_from(const json& j) {
  if (!j.is_object() || !j.contains("g") || !j.contains("v")) throw SchemaError("affine map needs \"g\" and \"v\"");
  try {
    return AffineMap(mat_from(j["g"], "g"), vec_from(j["v"], "v"));
  } catch (const DomainError& e) {
    throw SchemaError(std::string("affine map: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Form specification {"d": 2, "A": [[...]], "xi": [...], "L": [...]}

struct FormSpec {
  long d = 1;
  Mat a;
  Vec xi;
  std::optional<Vec> l;
  std::vector<std::pair<double, std::optional<double>>> targets;  // optional explicit targets

  InhomogeneousForm form() const { return InhomogeneousForm(a, xi); }
  std::optional<LinearForm> linear() const { return l ? std::optional<LinearForm>(LinearForm(*l)) : std::nullopt; }
};

inline void check_field(const Scalar& s, long d, const std::string& where) {
  if (!s.is_rational() && s.field() != d) {
    throw SchemaError(where + ": value " + s.str() + " is outside Q(sqrt(" + std::to_string(d) + "))");
  }
}

inline FormSpec form_spec_from(const json& j) {
  if (!j.is_object()) throw SchemaError("form spec must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "d" && key != "A" && key != "xi" && key != "L" && key != "targets") {
      throw SchemaError("unknown key \"" + key + "\" in form spec");
    }
  }
  FormSpec spec;
  if (j.contains("d")) {
    if (!j["d"].is_number_integer()) throw SchemaError("d must be an integer");
    spec.d = j["d"].get<long>();
    if (!is_squarefree(spec.d)) throw SchemaError("d must be squarefree and >= 1");
  }
  if (!j.contains("A")) throw SchemaError("form spec needs \"A\"");
  spec.a = mat_from(j["A"], "A");
  const std::size_t n = spec.a.rows();
  if (spec.a.cols() != n) throw SchemaError("A must be square");
  if (!spec.a.is_symmetric()) throw SchemaError("A must be symmetric");
  spec.xi = j.contains("xi") ? vec_from(j["xi"], "xi") : Vec(n);
  if (spec.xi.size() != n) throw SchemaError("xi must have " + std::to_string(n) + " entries");
  if (j.contains("L") && !j["L"].is_null()) {
    spec.l = vec_from(j["L"], "L");
    if (spec.l->size() != n) throw SchemaError("L must have " + std::to_string(n) + " entries");
  }
  for (const auto& x : spec.a.entries()) check_field(x, spec.d, "A");
  for (const auto& x : spec.xi) check_field(x, spec.d, "xi");
  if (spec.l)
    for (const auto& x : *spec.l) check_field(x, spec.d, "L");
  if (j.contains("targets")) {
    if (!j["targets"].is_array()) throw SchemaError("targets must be an array");
    for (const auto& t : j["targets"]) {
      if (t.is_number()) {
        spec.targets.emplace_back(t.get<double>(), std::nullopt);
      } else if (t.is_array() && t.size() == 2 && t[0].is_number() && t[1].is_number()) {
        spec.targets.emplace_back(t[0].get<double>(), t[1].get<double>());
      } else {
        throw SchemaError("each target is a number or a [a, b] pair");
      }
    }
  }
  return spec;
}

inline json to_json(const FormSpec& s) {
  json out{{"d", s.d}, {"A", to_json(s.a)}, {"xi", to_json(s.xi)}};
  if (s.l) out["L"] = to_json(*s.l);
  return out;
}

inline FormSpec form_spec_of(const PairSystem& p) {
  long d = 1;
  auto scan = [&](const Scalar& x) {
    if (!x.is_rational()) d = x.field();
  };
  for (const auto& x : p.q.gram().entries()) scan(x);
  for (const auto& x : p.xi) scan(x);
  for (const auto& x : p.l.coeffs()) scan(x);
  return FormSpec{d, p.q.gram(), p.xi, p.l.coeffs(), {}};
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const NormalizationCertificate& c) {
  return {{"lambda", to_json(c.lambda)}, {"mu", to_json(c.mu)},       {"g", to_json(c.map.linear_part())},
          {"v", to_json(c.map.translation_part())}, {"alpha", to_json(c.alpha)}, {"detg", to_json(c.detg)}};
}

inline NormalizationCertificate certificate_from(const json& j) {
  for (const char* key : {"lambda", "mu", "g", "v", "alpha", "detg"}) {
    if (!j.contains(key)) throw SchemaError(std::string("certificate needs \"") + key + "\"");
  }
  NormalizationCertificate c{scalar_from(j["lambda"], "lambda"), scalar_from(j["mu"], "mu"), affine_from(j),
                             scalar_from(j["alpha"], "alpha"), scalar_from(j["detg"], "detg")};
  if (c.detg != c.map.det()) throw SchemaError("certificate detg does not match det(g)");
  return c;
}

inline json residual_json(const PairResidual& r) {
  json form = json::array(), lin = json::array();
  for (const auto& c : r.form) form.push_back(to_json(c));
  for (const auto& c : r.linear) lin.push_back(to_json(c));
  return {{"form", form}, {"linear", lin}, {"all_zero", r.is_zero()}};
}

inline json to_json(const HypothesisReport& r) {
  json out{{"nondegenerate", r.nondegenerate},     {"indefinite", r.indefinite},
           {"tangent", r.tangent},                 {"q_irrational", r.q_irrational},
           {"xi_irrational", r.xi_irrational},     {"form_irrational", r.form_irrational},
           {"combo_condition", r.combo_condition}, {"all_pass", r.all_pass()}};
  out["witness"] = r.witness ? json{{"a", to_json(r.witness->a)}, {"b", to_json(r.witness->b)}} : json(nullptr);
  return out;
}

inline json to_json(const std::vector<CheckItem>& items) {
  json list = json::array();
  std::size_t failed = 0;
  for (const auto& i : items) {
    list.push_back({{"group", i.group}, {"item", i.item}, {"passed", i.passed}, {"detail", i.detail}});
    if (!i.passed) ++failed;
  }
  return {{"total", items.size()}, {"failed", failed}, {"all_pass", failed == 0}, {"items", list}};
}

// ---------------------------------------------------------------------------
// Search output

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline const char* csv_header() { return "target_a,target_b,R,x1,x2,x3,err_q,err_l,visited,mode\n"; }

inline std::string csv_row(double a, const std::optional<double>& b, long radius, const SearchResult& r) {
  std::ostringstream os;
  os << fmt(a) << ',' << (b ? fmt(*b) : std::string()) << ',' << radius << ',';
  if (r.found()) {
    os << r.best_x[0] << ',' << r.best_x[1] << ',' << r.best_x[2] << ',' << fmt(r.err_q) << ',' << fmt(r.err_l);
  } else {
    os << ",,,inf,inf";
  }
  os << ',' << r.visited << ',' << mode_name(r.mode_used) << '\n';
  return os.str();
}

inline std::string to_csv(const DensityTable& t) {
  std::string out = csv_header();
  for (const auto& row : t.rows) out += csv_row(row.target_a, row.target_b, row.radius, row.result);
  return out;
}

inline json row_json(double a, const std::optional<double>& b, long radius, const SearchResult& r) {
  json out{{"target_a", a}, {"target_b", b ? json(*b) : json(nullptr)}, {"R", radius}};
  if (r.found()) {
    out["x"] = {r.best_x[0], r.best_x[1], r.best_x[2]};
    out["err_q"] = r.err_q;
    out["err_l"] = r.err_l;
    out["value_q"] = to_json(*r.value_q);
    out["value_l"] = r.value_l ? to_json(*r.value_l) : json(nullptr);
  } else {
    out["x"] = nullptr;
    out["err_q"] = nullptr;
    out["err_l"] = nullptr;
  }
  out["visited"] = r.visited;
  out["mode"] = mode_name(r.mode_used);
  return out;
}

inline json to_json(const DensityTable& t) {
  json rows = json::array();
  for (const auto& row : t.rows) rows.push_back(row_json(row.target_a, row.target_b, row.radius, row.result));
  return {{"warnings", t.warnings}, {"rows", rows}};
}

// ---------------------------------------------------------------------------
// Files

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

/// Writes to a sibling temporary file and renames it over `path`.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto " + path);
  }
}

}  // namespace iqf::io
