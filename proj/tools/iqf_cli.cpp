// iqf: command-line front end for the inhomogeneous quadratic form toolkit.

#include <array>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "iqf/explorer.hpp"
#include "iqf/io.hpp"
#include "iqf/lemmas.hpp"
#include "iqf/lie.hpp"
#include "iqf/normalization.hpp"
#include "iqf/rationality.hpp"
#include "iqf/stabilizers.hpp"

namespace {

using iqf::io::json;
using iqf::io::SchemaError;

struct Options {
  std::string input;
  std::string output;
  std::string radius = "50";
  double epsilon = 0.5;
  std::string grid;
  std::string t_grid;
  long height_bound = 2;
  unsigned threads = 1;
  std::string mode = "slab";
  std::string seed;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw SchemaError("bad number '" + s + "' in " + what);
  }
}

long to_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw SchemaError("bad integer '" + s + "' in " + what);
  }
}

// "min:max:step"
std::vector<double> parse_range(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw SchemaError(what + " must look like min:max:step");
  try {
    return iqf::grid_values(to_number(parts[0], what), to_number(parts[1], what), to_number(parts[2], what));
  } catch (const iqf::DomainError& e) {
    throw SchemaError(what + ": " + e.what());
  }
}

void emit(const Options& o, const std::string& content) {
  if (o.output.empty()) {
    std::cout << content;
  } else {
    iqf::io::write_atomic(o.output, content);
  }
}

bool wants_csv(const Options& o) { return o.output.empty() || o.output.ends_with(".csv"); }

iqf::io::FormSpec load_spec(const Options& o) {
  if (o.input.empty()) throw SchemaError("--input is required for this command");
  return iqf::io::form_spec_from(iqf::io::read_json(o.input));
}

void require_ternary(const iqf::io::FormSpec& s) {
  if (s.a.rows() != 3) throw SchemaError("this command needs a 3x3 form");
}

iqf::LinearForm require_linear(const iqf::io::FormSpec& s) {
  if (!s.l) throw SchemaError("this command needs a linear form \"L\"");
  return iqf::LinearForm(*s.l);
}

int cmd_normalize(const Options& o) {
  const auto spec = load_spec(o);
  require_ternary(spec);
  const iqf::QuadraticForm q(spec.a);
  json out;
  if (spec.l) {
    const iqf::LinearForm l(*spec.l);
    const auto cert = iqf::normalize_pair(q, spec.xi, l);
    const auto f = spec.form();
    out["kind"] = "pair";
    out["certificate"] = iqf::io::to_json(cert);
    out["residual"] = iqf::io::residual_json(iqf::pair_residual(cert, f, l));
    out["alpha_is_mu_L_xi"] = cert.alpha == cert.mu * l(spec.xi);
    const auto unit = iqf::unit_det_certificate(cert, f, l);
    out["unit_det_certificate"] = unit ? iqf::io::to_json(*unit) : json(nullptr);
  } else {
    const auto cert = iqf::normalize_single(q, spec.xi);
    bool zero = true;
    for (const auto& c : iqf::single_residual(cert, spec.form())) zero = zero && c.is_zero();
    out["kind"] = "single";
    out["certificate"] = {{"lambda", iqf::io::to_json(cert.lambda)}, {"g", iqf::io::to_json(cert.map.linear_part())},
                          {"v", iqf::io::to_json(cert.map.translation_part())}};
    out["residual_zero"] = zero;
  }
  emit(o, out.dump(2) + "\n");
  return 0;
}

int cmd_check(const Options& o) {
  const auto spec = load_spec(o);
  require_ternary(spec);
  const auto rep = iqf::check_hypotheses(iqf::QuadraticForm(spec.a), spec.xi, require_linear(spec));
  emit(o, iqf::io::to_json(rep).dump(2) + "\n");
  return 0;
}

std::vector<iqf::Scalar> t_values(const Options& o) {
  if (o.t_grid.empty()) return iqf::default_t_grid();
  // exact: "0.1" must mean 1/10, not the nearest double
  const auto parts = split(o.t_grid, ':');
  if (parts.size() != 3) throw SchemaError("--t-grid must look like min:max:step");
  std::array<iqf::Scalar, 3> v;
  for (std::size_t i = 0; i < 3; ++i) {
    try {
      v[i] = iqf::Scalar::parse(parts[i]);
    } catch (const iqf::DomainError&) {
      throw SchemaError("bad number '" + parts[i] + "' in --t-grid");
    }
    if (!v[i].is_rational()) throw SchemaError("--t-grid values must be rational");
  }
  if (v[2].sign() <= 0 || v[1] < v[0]) throw SchemaError("--t-grid needs step > 0 and max >= min");
  std::vector<iqf::Scalar> out;
  for (iqf::Scalar t = v[0]; !(v[1] < t); t += v[2]) out.push_back(t);
  return out;
}

int cmd_stabilizer(const Options& o) {
  const auto spec = load_spec(o);
  require_ternary(spec);
  const iqf::QuadraticForm q(spec.a);
  const auto f = spec.form();
  const auto ts = t_values(o);
  json out;
  json elements = json::array();
  if (spec.l) {
    const iqf::LinearForm l(*spec.l);
    const auto cert = iqf::normalize_pair(q, spec.xi, l);
    out["kind"] = "pair";
    out["alpha"] = iqf::io::to_json(cert.alpha);
    for (const auto& t : ts) {
      const auto m = iqf::conjugated_flow(cert, t);
      json e = iqf::io::to_json(m);
      e["t"] = iqf::io::to_json(t);
      e["preserves"] = iqf::preserves_pair(m, f, l);
      elements.push_back(std::move(e));
    }
  } else {
    // two unipotent one-parameter subgroups generating SO(Q_xi)°, conjugated
    // from SO(2,1) by the single-form certificate
    const auto cert = iqf::normalize_single(q, spec.xi);
    out["kind"] = "single";
    const std::pair<const char*, iqf::Mat> gens[] = {{"h(1,1,0)", iqf::lie::h(1, 1, 0).matrix()},
                                                     {"h(1,0,1)", iqf::lie::h(1, 0, 1).matrix()}};
    for (const auto& [name, n] : gens) {
      for (const auto& t : ts) {
        const iqf::Mat u = iqf::Mat::identity(3) + t * n + (t * t / iqf::Scalar(2)) * (n * n);
        const auto m = cert.map * iqf::AffineMap::linear(u) * iqf::inverse(cert.map);
        json e = iqf::io::to_json(m);
        e["generator"] = name;
        e["t"] = iqf::io::to_json(t);
        e["preserves"] = iqf::preserves_pair(m, f);
        elements.push_back(std::move(e));
      }
    }
  }
  out["elements"] = elements;
  emit(o, out.dump(2) + "\n");
  return 0;
}

int cmd_verify(const Options& o) {
  const auto items = iqf::lemma_suite();
  const json report = iqf::io::to_json(items);
  emit(o, report.dump(2) + "\n");
  return report["all_pass"].get<bool>() ? 0 : 1;
}

std::vector<long> parse_radii(const std::string& text) {
  std::vector<long> out;
  for (const auto& part : split(text, ',')) {
    const long r = to_long(part, "--radius");
    if (r < 1) throw SchemaError("--radius values must be >= 1");
    out.push_back(r);
  }
  if (out.empty()) throw SchemaError("--radius is empty");
  return out;
}

iqf::Point3 parse_seed(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw SchemaError("--seed must be x1,x2,x3");
  return {to_long(parts[0], "--seed"), to_long(parts[1], "--seed"), to_long(parts[2], "--seed")};
}

int cmd_explore(const Options& o) {
  const auto spec = load_spec(o);
  require_ternary(spec);
  const auto f = spec.form();
  const auto l = spec.linear();
  if (!(o.epsilon > 0)) throw SchemaError("--epsilon must be positive");
  const auto radii = parse_radii(o.radius);

  std::vector<std::pair<double, std::optional<double>>> targets;
  if (!o.grid.empty()) {
    const auto parts = split(o.grid, ',');
    if (parts.empty() || parts.size() > 2) throw SchemaError("--grid must be amin:amax:astep[,bmin:bmax:bstep]");
    const auto as = parse_range(parts[0], "--grid");
    if (l) {
      if (parts.size() != 2) throw SchemaError("--grid needs a b-range when L is given");
      const auto bs = parse_range(parts[1], "--grid");
      for (double a : as)
        for (double b : bs) targets.emplace_back(a, b);
    } else {
      if (parts.size() != 1) throw SchemaError("--grid takes only an a-range without L");
      for (double a : as) targets.emplace_back(a, std::nullopt);
    }
  } else {
    targets = spec.targets;
    if (targets.empty()) throw SchemaError("no targets: pass --grid or list \"targets\" in the input");
  }
  for (const auto& t : targets) {
    if (t.second.has_value() != l.has_value()) throw SchemaError("target arity does not match the presence of L");
  }

  iqf::DensityTable table;
  if (o.mode == "slab") {
    table = iqf::density_table(f, l, targets, o.epsilon, radii, o.threads);
  } else {
    if (!l) throw SchemaError("orbit mode needs a linear form");
    const auto cert = iqf::normalize_pair(iqf::QuadraticForm(spec.a), spec.xi, *l);
    const auto ts = t_values(o);
    table = iqf::density_table(f, l, targets, o.epsilon, radii, o.threads);
    for (auto& row : table.rows) {
      iqf::SearchTask task{f, l, row.target_a, row.target_b, o.epsilon, row.radius, iqf::SearchMode::orbit_round, 1};
      std::optional<iqf::Point3> seed;
      if (!o.seed.empty()) seed = parse_seed(o.seed);
      else if (row.result.found()) seed = row.result.best_x;
      if (seed) row.result = iqf::orbit_round(task, *seed, cert, ts);
    }
  }
  for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
  emit(o, wants_csv(o) ? iqf::io::to_csv(table) : iqf::io::to_json(table).dump(2) + "\n");
  return 0;
}

int cmd_reduce(const Options& o) {
  const auto spec = load_spec(o);
  const auto red = iqf::reduce_dimension(spec.form(), o.height_bound);
  json steps = json::array();
  for (const auto& s : red.steps) {
    const auto p = iqf::QuadraticPolynomial::from(s.restricted);
    steps.push_back({{"from_dim", s.from_dim},
                     {"normal", s.normal},
                     {"basis", iqf::io::to_json(s.basis)},
                     {"A", iqf::io::to_json(s.restricted.gram())},
                     {"xi", iqf::io::to_json(s.restricted.shift())},
                     {"offset", iqf::io::to_json(s.offset)},
                     {"nondegenerate", iqf::is_nondegenerate(iqf::QuadraticForm(s.restricted.gram()))},
                     {"indefinite", iqf::is_indefinite(iqf::QuadraticForm(s.restricted.gram()))},
                     {"irrational", iqf::is_irrational_polynomial(p)}});
  }
  iqf::io::FormSpec result{spec.d, red.form.gram(), red.form.shift(), std::nullopt, {}};
  json out{{"steps", steps},
           {"form", iqf::io::to_json(result)},
           {"embedding", iqf::io::to_json(red.embedding)},
           {"offset", iqf::io::to_json(red.offset)}};
  emit(o, out.dump(2) + "\n");
  return 0;
}

int fail(const std::string& code, const std::string& message, int status) {
  json env{{"error", {{"code", code}, {"message", message}}}, {"exit_code", status}};
  std::cout << env.dump() << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for inhomogeneous quadratic forms and linear forms on affine lattices"};
  app.require_subcommand(1);
  Options o;

  auto add_io = [&](CLI::App* sub, bool input) {
    if (input) sub->add_option("--input", o.input, "JSON form specification")->required();
    sub->add_option("--output", o.output, "output file (default: stdout)");
  };
  auto* normalize = app.add_subcommand("normalize", "reduce a pair (or single form) to its normal form");
  add_io(normalize, true);
  auto* check = app.add_subcommand("check-hypotheses", "tangency and irrationality report for a pair");
  add_io(check, true);
  auto* stab = app.add_subcommand("stabilizer", "sample the stabilizer flow of a pair or form");
  add_io(stab, true);
  stab->add_option("--t-grid", o.t_grid, "flow parameters min:max:step");
  auto* verify = app.add_subcommand("verify-lemmas", "run the exact Lie-algebra and stabilizer checks");
  add_io(verify, false);
  auto* explore = app.add_subcommand("explore", "search lattice points approximating target values");
  add_io(explore, true);
  explore->add_option("--radius", o.radius, "box radius, or comma-separated radii");
  explore->add_option("--epsilon", o.epsilon, "slab half-width for |L - b|");
  explore->add_option("--grid", o.grid, "targets amin:amax:astep[,bmin:bmax:bstep]");
  explore->add_option("--t-grid", o.t_grid, "orbit flow parameters min:max:step");
  explore->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
  explore->add_option("--mode", o.mode, "slab or orbit")->check(CLI::IsMember({"slab", "orbit"}));
  explore->add_option("--seed", o.seed, "orbit seed x1,x2,x3 (default: slab winner)");
  auto* reduce = app.add_subcommand("reduce", "restrict an n-ary form to a good ternary sublattice");
  add_io(reduce, true);
  reduce->add_option("--height-bound", o.height_bound, "max |entry| of hyperplane normals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what(), 2);
  }

  try {
    if (*normalize) return cmd_normalize(o);
    if (*check) return cmd_check(o);
    if (*stab) return cmd_stabilizer(o);
    if (*verify) return cmd_verify(o);
    if (*explore) return cmd_explore(o);
    if (*reduce) return cmd_reduce(o);
  } catch (const SchemaError& e) {
    return fail("schema", e.what(), 2);
  } catch (const iqf::io::IoError& e) {
    return fail("io", e.what(), 2);
  } catch (const iqf::DomainError& e) {
    return fail(e.code(), e.what(), 1);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), 1);
  }
  return fail("usage", "no command", 2);
}
