#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lieshear/lieshear.hpp"

namespace {

using namespace lieshear;
using Json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kUsage = 1, kJacobi = 2, kInvalid = 3, kCap = 4 };

// ---------------------------------------------------------------- input

struct Input {
  std::string source;
  std::string text;
  std::string digest;
  LieAlgebra algebra;
};

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

std::string read_source(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read algebra file '" + path + "'", 0);
  return {std::istreambuf_iterator<char>(in), {}};
}

/// Options shared by every subcommand.
struct Common {
  std::string file;
  std::string inline_algebra;
  std::vector<std::string> sets;
  bool json = false;

  std::map<std::string, Rational> values;

  void resolve_sets() {
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0) throw ParseError("--set expects name=value, got '" + s + "'", 0);
      values[s.substr(0, eq)] = rational_from_string(s.substr(eq + 1));
    }
  }

  Input load() {
    resolve_sets();
    Input in;
    if (!inline_algebra.empty()) {
      in.source = "<inline>";
      in.text = inline_algebra;
    } else if (!file.empty()) {
      in.source = file;
      in.text = read_source(file);
    } else {
      throw ParseError("no algebra given (pass a file, '-' or --algebra)", 0);
    }
    in.digest = fnv1a64(in.text);
    in.algebra = AlgebraDocument::parse(in.text).build(values);
    return in;
  }

  std::string lit(const std::string& text) const { return substitute_parameters(text, values); }
  KForm form(const std::string& text, int dim, std::optional<int> degree = {}) const {
    return parse_form(lit(text), dim, degree);
  }
  Vector vector(const std::string& text, int dim) const { return parse_vector(lit(text), dim); }
};

/// "a,b;c,d" with rows separated by ';'.
Matrix parse_matrix(const std::string& text, int n, const char* what) {
  std::vector<std::vector<Rational>> rows(1);
  std::string cell;
  const auto flush = [&] {
    const auto first = cell.find_first_not_of(" \t");
    if (first == std::string::npos) throw ParseError(std::string("empty entry in ") + what, 0);
    const auto last = cell.find_last_not_of(" \t");
    rows.back().push_back(rational_from_string(cell.substr(first, last - first + 1)));
    cell.clear();
  };
  for (char ch : text) {
    if (ch == ',') flush();
    else if (ch == ';') {
      flush();
      rows.emplace_back();
    } else cell += ch;
  }
  flush();
  if (static_cast<int>(rows.size()) != n)
    throw DimensionError(std::string(what) + " needs " + std::to_string(n) + " rows");
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      throw DimensionError(std::string(what) + " row " + std::to_string(i + 1) + " needs " + std::to_string(n) +
                           " entries");
    for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

// ---------------------------------------------------------------- json helpers

Json rational_json(const Rational& r) { return to_string(r); }

Json algebra_json(const LieAlgebra& g) {
  if (g.dim() <= 9) return print_salamon(g);
  return algebra_to_json(g);
}

Json vectors_json(const std::vector<Vector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(format_vector(v));
  return a;
}

Json covectors_json(const Subspace& s) {
  Json a = Json::array();
  for (const auto& v : s.basis()) a.push_back(format_form(KForm::covector(v)));
  return a;
}

Json subspace_json(const Subspace& s) { return vectors_json(s.basis()); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(rational_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json shear_data_json(const ShearData& d) {
  Json j{{"x", format_vector(d.x)}, {"alpha", format_form(d.alpha)}, {"f0", format_form(d.f0)},
         {"a", rational_json(d.a)}};
  if (d.eta_g) j["eta_g"] = format_form(*d.eta_g);
  return j;
}

Json shear_report_json(const ShearReport& r) {
  Json conditions = Json::array();
  for (const auto& c : r.conditions)
    conditions.push_back(
        {{"name", c.name}, {"passed", c.passed}, {"required", c.required}, {"residual", format_form(c.residual)}});
  return {{"valid", r.valid},
          {"conditions", std::move(conditions)},
          {"decomposition", {{"eta", format_form(r.decomposition.eta_str)}, {"f", format_form(r.decomposition.f_str)}}},
          {"f_eff", format_form(r.f_eff)},
          {"eta_prime", format_form(r.eta_prime)},
          {"eta_0", format_form(r.eta_0)},
          {"eta_tilde", format_form(r.eta_tilde)},
          {"f_prime", format_form(r.f_prime)},
          {"f_tilde", format_form(r.f_tilde)},
          {"nu", format_form(r.nu)}};
}

Json checks_json(const std::vector<Check>& checks) {
  Json a = Json::array();
  for (const auto& c : checks) {
    Json item{{"name", c.name}, {"passed", c.passed}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    a.push_back(std::move(item));
  }
  return a;
}

Json series_json(const SeriesReport& s) {
  Json lcs = Json::array();
  for (const auto& x : s.lower_central) lcs.push_back(x.dim());
  Json der = Json::array();
  for (const auto& x : s.derived) der.push_back(x.dim());
  Json j{{"abelian", s.abelian},
         {"nilpotent", s.nilpotent},
         {"solvable", s.solvable},
         {"lower_central_dims", std::move(lcs)},
         {"derived_dims", std::move(der)}};
  j["step"] = s.step ? Json(*s.step) : Json(nullptr);
  j["derived_length"] = s.derived_length ? Json(*s.derived_length) : Json(nullptr);
  return j;
}

// ---------------------------------------------------------------- text rendering

bool use_colour() {
  const char* no = std::getenv("NO_COLOR");
  return isatty(STDOUT_FILENO) && (no == nullptr || *no == '\0');
}

std::string scalar_text(const Json& v, bool colour) {
  if (v.is_boolean()) {
    const bool b = v.get<bool>();
    if (!colour) return b ? "yes" : "no";
    return b ? "\033[32myes\033[0m" : "\033[31mno\033[0m";
  }
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

void render_text(std::ostream& os, const Json& v, int indent, bool colour) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      if (is_scalar(value)) {
        os << pad << key << ": " << scalar_text(value, colour) << "\n";
      } else if (value.empty()) {
        os << pad << key << ": " << (value.is_array() ? "(none)" : "{}") << "\n";
      } else {
        os << pad << key << ":\n";
        render_text(os, value, indent + 2, colour);
      }
    }
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (is_scalar(item)) {
        os << pad << "- " << scalar_text(item, colour) << "\n";
      } else {
        std::ostringstream inner;
        render_text(inner, item, indent + 2, colour);
        std::string block = inner.str();
        block.replace(static_cast<std::size_t>(indent), 2, "- ");
        os << block;
      }
    }
  } else {
    os << pad << scalar_text(v, colour) << "\n";
  }
}

// ---------------------------------------------------------------- commands

struct Report {
  Json result = Json::object();
  int exit = kOk;
};

struct ShearFlags {
  std::string x;
  std::string alpha;
  std::string f0 = "0";
  std::string a = "-1";
  std::string eta_g;

  ShearData build(const Common& c, int n) const {
    ShearData d;
    d.x = c.vector(x, n);
    d.alpha = c.form(alpha, n, 1);
    d.f0 = f0 == "0" ? KForm(n, 2) : c.form(f0, n, 2);
    d.a = rational_from_string(c.lit(a));
    if (!eta_g.empty()) d.eta_g = c.form(eta_g, n, 1);
    return d;
  }
};

void add_shear_flags(CLI::App* cmd, ShearFlags& f) {
  cmd->add_option("--x", f.x, "generator X of the ideal, e.g. E4 or \"E1 - 1/2*E3\"")->required();
  cmd->add_option("--alpha", f.alpha, "1-form with alpha(X) = 1")->required();
  cmd->add_option("--f0", f.f0, "deformation 2-form F0 (default 0)");
  cmd->add_option("--a", f.a, "nonzero transfer constant (default -1)");
}

Report cmd_algebra_check(const Input& in) {
  Report r;
  const LieAlgebra& g = in.algebra;
  const auto jac = jacobi_check(g);
  Json defects = Json::array();
  for (const auto& d : jac.defects)
    defects.push_back({{"generator", d.generator}, {"dd", format_form(d.dd)}});
  r.result["dim"] = g.dim();
  r.result["jacobi"] = {{"passed", jac.passed}, {"defects", std::move(defects)}};
  if (!jac.passed) {
    r.exit = kJacobi;
    return r;
  }
  const auto c = classify(g);
  r.result["series"] = series_json(c.series);
  r.result["classification"] = {{"derived_dim", c.derived_dim},
                                {"almost_abelian", c.almost_abelian},
                                {"almost_abelian_witnesses", covectors_json(almost_abelian_witnesses(g))}};
  return r;
}

Report cmd_shear(const Common& c, const Input& in, const ShearFlags& f, bool validate_only) {
  Report r;
  const ShearData d = f.build(c, in.algebra.dim());
  const ShearReport report = validate_shear(in.algebra, d);
  r.result["data"] = shear_data_json(d);
  r.result["report"] = shear_report_json(report);
  if (!report.valid) {
    r.exit = kInvalid;
    return r;
  }
  if (!validate_only) r.result["algebra"] = algebra_json(construct_shear(in.algebra, d));
  return r;
}

Report cmd_twist(const Common& c, const Input& in, const std::string& alpha_text, const std::string& f_text) {
  Report r;
  const int n = in.algebra.dim();
  const KForm alpha = alpha_text.empty() ? default_twist_alpha(in.algebra) : c.form(alpha_text, n, 1);
  const KForm f = c.form(f_text, n, 2);
  const TwistResult t = apply_twist(in.algebra, alpha, f);
  Json levels = Json::array();
  for (const auto& v : t.filtration.levels) levels.push_back(covectors_json(v));
  r.result["alpha"] = format_form(alpha);
  r.result["f"] = format_form(f);
  r.result["filtration"] = {{"step", t.filtration.step}, {"levels", std::move(levels)}};
  r.result["admissible_v1"] = covectors_json(t.admissible_v1);
  r.result["shear_data"] = shear_data_json(t.data);
  r.result["algebra"] = algebra_json(t.algebra);
  return r;
}

Report cmd_form_ds(const Common& c, const Input& in, const ShearFlags& f, const std::string& form_text) {
  Report r;
  const int n = in.algebra.dim();
  const ShearData d = f.build(c, n);
  const KForm sigma = c.form(form_text, n);
  const bool valid = validate_shear(in.algebra, d).valid;
  r.result["data"] = shear_data_json(d);
  r.result["shear_valid"] = valid;
  r.result["form"] = format_form(sigma);
  r.result["d"] = format_form(d_extend(in.algebra, sigma));
  r.result["x_contract"] = format_form(interior(d.x, sigma));
  r.result["d_s"] = format_form(ds_form(in.algebra, d, sigma));
  if (!valid) r.exit = kInvalid;
  return r;
}

struct StructureFlags {
  std::string type;
  std::string omega;
  std::string rho_minus;
  std::string psi;
  std::string phi;
  std::string metric;
  std::string j;
};

Report cmd_check_structure(const Common& c, const Input& in, const StructureFlags& f) {
  Report r;
  const int n = in.algebra.dim();
  const auto kind = parse_kind(f.type);
  if (!kind) throw ParseError("unknown structure type '" + f.type + "'", 0);
  StructureSpec spec;
  spec.kind = *kind;
  const bool needs_omega = *kind == StructureKind::symplectic || *kind == StructureKind::kahler ||
                           *kind == StructureKind::half_flat;
  if (!f.omega.empty()) spec.forms["omega"] = c.form(f.omega, n, 2);
  else if (needs_omega && n % 2 == 0) spec.forms["omega"] = standard_symplectic_form(n);
  if (!f.rho_minus.empty()) spec.forms["rho_minus"] = c.form(f.rho_minus, n, 3);
  if (!f.psi.empty()) spec.forms["psi"] = c.form(f.psi, n, 4);
  if (!f.phi.empty()) spec.forms["phi"] = c.form(f.phi, n, 3);
  if (*kind == StructureKind::kahler) {
    spec.metric = f.metric.empty() ? Metric::flat(n) : Metric{parse_matrix(c.lit(f.metric), n, "--metric")};
    spec.complex_structure =
        f.j.empty() ? ComplexStructure::standard(n) : ComplexStructure{parse_matrix(c.lit(f.j), n, "--j")};
  }
  const StructureReport report = check_structure(in.algebra, spec);
  Json forms = Json::object();
  for (const auto& [name, form] : spec.forms) forms[name] = format_form(form);
  r.result["type"] = report.kind;
  r.result["forms"] = std::move(forms);
  if (spec.metric) r.result["metric"] = matrix_json(spec.metric->gram);
  if (spec.complex_structure) r.result["j"] = matrix_json(spec.complex_structure->j);
  r.result["passed"] = report.passed;
  r.result["checks"] = checks_json(report.checks);
  if (!report.flags.empty()) r.result["flags"] = checks_json(report.flags);
  return r;
}

struct SearchFlags {
  std::string coefficients = "-1,0,1";
  std::vector<std::string> support;
  std::vector<std::string> preserve;
  int max_terms = 1;
  std::uint64_t cap = 1'000'000;
};

Report cmd_search(const Common& c, const Input& in, const ShearFlags& sf, const SearchFlags& f) {
  Report r;
  const int n = in.algebra.dim();
  const ShearData d = sf.build(c, n);
  SearchSpec spec;
  spec.base = in.algebra;
  spec.x = d.x;
  spec.alpha = d.alpha;
  spec.a = d.a;
  spec.max_terms = f.max_terms;
  spec.cap = f.cap;
  spec.coefficients.clear();
  std::stringstream list(c.lit(f.coefficients));
  for (std::string item; std::getline(list, item, ',');) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) throw ParseError("empty entry in --coefficients", 0);
    spec.coefficients.push_back(rational_from_string(item.substr(first, item.find_last_not_of(" \t") - first + 1)));
  }
  // the identity shear is always part of the search space
  if (std::find(spec.coefficients.begin(), spec.coefficients.end(), Rational(0)) == spec.coefficients.end())
    spec.coefficients.push_back(0);
  if (!f.support.empty()) {
    std::vector<KForm> support;
    for (const auto& s : f.support) support.push_back(c.form(s, n, 2));
    spec.support = std::move(support);
  }
  for (const auto& s : f.preserve) spec.preserve.push_back(c.form(s, n));

  std::vector<Rational> used = spec.coefficients;
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  Json coeffs = Json::array();
  for (const auto& q : used) coeffs.push_back(rational_json(q));
  Json support = Json::array();
  for (const auto& s : spec.support ? *spec.support : default_support(spec.x)) support.push_back(format_form(s));
  Json preserve = Json::array();
  for (const auto& s : spec.preserve) preserve.push_back(format_form(s));
  r.result["x"] = format_vector(spec.x);
  r.result["alpha"] = format_form(spec.alpha);
  r.result["a"] = rational_json(spec.a);
  r.result["coefficients"] = std::move(coeffs);
  r.result["support"] = std::move(support);
  r.result["max_terms"] = spec.max_terms;
  r.result["preserve"] = std::move(preserve);
  r.result["candidates"] = search_space_size(spec).get_str();

  const auto hits = enumerate_F0(spec);
  Json out = Json::array();
  for (const auto& h : hits) out.push_back({{"f0", format_form(h.f0)}, {"algebra", algebra_json(h.algebra)}});
  r.result["hit_count"] = hits.size();
  r.result["hits"] = std::move(out);
  return r;
}

Report cmd_shear_lines(const Input& in) {
  Report r;
  const auto report = find_shear_lines(in.algebra);
  Json lines = Json::array();
  for (const auto& line : report.lines) {
    Json eig = Json::array();
    for (const auto& e : line.eigenvalues) eig.push_back(rational_json(e));
    lines.push_back({{"eigenvalues", std::move(eig)}, {"basis", subspace_json(line.eigenspace)}});
  }
  r.result["derived"] = subspace_json(report.derived);
  r.result["last_term"] = subspace_json(report.last_term);
  r.result["acting"] = vectors_json(report.acting);
  r.result["convention"] = "eigenvalues are lambda_j with [A_j, X] = lambda_j X";
  r.result["lines"] = std::move(lines);
  r.result["non_rational_roots"] = report.non_rational_roots;
  r.result["irrational_real_roots"] = report.irrational_real_roots;
  return r;
}

// ---------------------------------------------------------------- errors

struct Failure {
  int exit;
  const char* kind;
};

Failure classify_error(const std::exception& err) {
  if (dynamic_cast<const SearchCapError*>(&err)) return {kCap, "search-cap"};
  if (dynamic_cast<const JacobiError*>(&err)) return {kJacobi, "jacobi"};
  if (dynamic_cast<const InvalidShearError*>(&err)) return {kInvalid, "invalid-shear"};
  if (dynamic_cast<const PreconditionError*>(&err)) return {kInvalid, "precondition"};
  if (dynamic_cast<const ParseError*>(&err)) return {kUsage, "parse"};
  if (dynamic_cast<const DimensionError*>(&err)) return {kUsage, "dimension"};
  return {kUsage, "error"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact shear and twist constructions on Lie algebras given by structure equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "lieshear 0.1.0");

  Common common;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", common.file, "algebra file (Salamon string or JSON document), '-' for stdin");
    cmd->add_option("--algebra", common.inline_algebra, "algebra given inline instead of a file");
    cmd->add_option("--set", common.sets, "parameter substitution name=value (repeatable)");
    cmd->add_flag("--json", common.json, "print the report as JSON");
  };

  auto* algebra_check = app.add_subcommand("algebra-check", "Jacobi identity, series and classification");
  add_common(algebra_check);

  ShearFlags shear_flags;
  bool validate_only = false;
  auto* shear = app.add_subcommand("shear", "validate and apply a shear");
  add_common(shear);
  add_shear_flags(shear, shear_flags);
  shear->add_option("--eta-g", shear_flags.eta_g, "closed 1-form with dF0 = eta_g ^ F0 (informational)");
  shear->add_flag("--validate-only", validate_only, "print the condition table only");

  std::string twist_alpha;
  std::string twist_f;
  auto* twist = app.add_subcommand("twist", "twist of a nilpotent algebra");
  add_common(twist);
  twist->add_option("--alpha", twist_alpha, "1-form in V_0 \\ V_1 (default: last basis covector outside V_1)");
  twist->add_option("--f", twist_f, "2-form F in Lambda^2 V_1")->required();

  ShearFlags ds_flags;
  std::string ds_form_text;
  auto* form_ds = app.add_subcommand("form-ds", "transferred differential d_S of a form");
  add_common(form_ds);
  add_shear_flags(form_ds, ds_flags);
  form_ds->add_option("--form", ds_form_text, "form literal")->required();

  StructureFlags structure_flags;
  auto* check = app.add_subcommand("check-structure", "check a geometric structure on the algebra");
  add_common(check);
  check->add_option("--type", structure_flags.type, "symplectic | kahler | half-flat | g2-cocal | g2-phi")->required();
  check->add_option("--omega", structure_flags.omega, "2-form (default e12 + e34 + ...)");
  check->add_option("--rho-minus", structure_flags.rho_minus, "3-form for half-flat");
  check->add_option("--psi", structure_flags.psi, "4-form for g2-cocal");
  check->add_option("--phi", structure_flags.phi, "3-form for g2-phi");
  check->add_option("--metric", structure_flags.metric, "Gram matrix \"a,b;c,d\" (kahler, default identity)");
  check->add_option("--j", structure_flags.j, "matrix with J(i,j) = e_i(J E_j) (kahler, default standard)");

  ShearFlags search_shear;
  SearchFlags search_flags;
  auto* search = app.add_subcommand("search", "enumerate deformation forms F0 giving valid shears");
  add_common(search);
  search->add_option("--x", search_shear.x, "generator X of the ideal")->required();
  search->add_option("--alpha", search_shear.alpha, "1-form with alpha(X) = 1")->required();
  search->add_option("--a", search_shear.a, "nonzero transfer constant (default -1)");
  search->add_option("--coefficients", search_flags.coefficients, "comma separated coefficient set (default -1,0,1)");
  search->add_option("--support", search_flags.support, "allowed 2-form (repeatable, default Lambda^2 Ann(X))");
  search->add_option("--max-terms", search_flags.max_terms, "maximum number of nonzero terms (default 1)");
  search->add_option("--preserve", search_flags.preserve, "closed form that must stay closed (repeatable)");
  search->add_option("--cap", search_flags.cap, "refuse search spaces larger than this (default 1000000)");

  auto* lines = app.add_subcommand("shear-lines", "rational one-dimensional ideals in the last lower central term");
  add_common(lines);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  CLI::App* active = app.get_subcommands().front();
  Json report;
  report["command"] = active->get_name();
  Json args = Json::array();
  for (int i = 2; i < argc; ++i) args.push_back(argv[i]);
  report["arguments"] = std::move(args);

  int exit = kOk;
  try {
    const Input in = common.load();
    report["input"] = {{"source", in.source}, {"digest", in.digest}, {"algebra", algebra_json(in.algebra)}};
    if (!common.values.empty()) {
      Json subs = Json::object();
      for (const auto& [k, v] : common.values) subs[k] = rational_json(v);
      report["input"]["set"] = std::move(subs);
    }
    // Every command except algebra-check needs a Lie algebra to begin with.
    if (active != algebra_check) detail::require_jacobi(in.algebra, active->get_name().c_str());

    Report r;
    if (active == algebra_check) r = cmd_algebra_check(in);
    else if (active == shear) r = cmd_shear(common, in, shear_flags, validate_only);
    else if (active == twist) r = cmd_twist(common, in, twist_alpha, twist_f);
    else if (active == form_ds) r = cmd_form_ds(common, in, ds_flags, ds_form_text);
    else if (active == check) r = cmd_check_structure(common, in, structure_flags);
    else if (active == search) r = cmd_search(common, in, search_shear, search_flags);
    else r = cmd_shear_lines(in);
    report["result"] = std::move(r.result);
    exit = r.exit;
  } catch (const InvalidShearError& err) {
    report["result"] = {{"report", shear_report_json(err.report())}};
    report["error"] = {{"kind", "invalid-shear"}, {"message", err.what()}};
    exit = kInvalid;
  } catch (const std::exception& err) {
    const Failure f = classify_error(err);
    report["error"] = {{"kind", f.kind}, {"message", err.what()}};
    if (const auto* cap = dynamic_cast<const SearchCapError*>(&err)) report["error"]["candidates"] = cap->candidates();
    exit = f.exit;
  }
  report["exit_status"] = exit;

  if (common.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    const bool colour = use_colour();
    render_text(std::cout, report, 0, colour);
    if (report.contains("error")) std::cerr << "lieshear: " << report["error"]["message"].get<std::string>() << "\n";
  }
  return exit;
}
