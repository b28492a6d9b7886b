#include "amoeba/document.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "amoeba/errors.hpp"

namespace amoeba {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorKind::ParseError, "cli", what); }

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  double parse() {
    const double v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    if (!std::isfinite(v)) fail("value is not finite");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    parse_fail("generator expression '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool keyword(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }

  double expr() {
    double v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = factor();
    for (;;) {
      if (eat('*')) {
        v *= factor();
      } else if (eat('/')) {
        const double d = factor();
        if (d == 0.0) fail("division by zero");
        v /= d;
      } else {
        return v;
      }
    }
  }
  double factor() {
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    return primary();
  }
  double primary() {
    skip();
    if (eat('(')) {
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (keyword("pi")) return std::numbers::pi;
    if (keyword("sqrt")) {
      if (!eat('(')) fail("sqrt needs '('");
      const double v = expr();
      if (!eat(')')) fail("missing ')'");
      if (v < 0) fail("sqrt of a negative number");
      return std::sqrt(v);
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    if (start == pos_) fail("expected a number, pi, sqrt(...) or '('");
    const std::string lit(s_.substr(start, pos_ - start));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(lit, &used);
    } catch (const std::exception&) {
      fail("bad number '" + lit + "'");
    }
    if (used != lit.size()) fail("bad number '" + lit + "'");
    return v;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

BigInt parse_integer(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<unsigned long long>()));
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    BigInt v;
    if (v.set_str(j.get<std::string>(), 10) != 0) parse_fail(where + ": not an integer string");
    return v;
  }
  parse_fail(where + ": expected an integer");
}

json integer_json(const BigInt& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

json vector_json(const RealVector& v) { return json(v); }

json int_vector_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

void require_finite(const json& j, const std::string& path) {
  if (j.is_number_float() && !std::isfinite(j.get<double>()))
    throw Error(ErrorKind::InvalidInput, "cli", "non-finite number at " + path);
  if (j.is_array() || j.is_object())
    for (auto it = j.begin(); it != j.end(); ++it)
      require_finite(*it, path + "/" + (j.is_object() ? it.key() : std::string("*")));
}

}  // namespace

double evaluate_exact_form(std::string_view text) { return ExprParser(text).parse(); }

std::vector<RealVector> InputDocument::generator_values() const {
  std::vector<RealVector> g;
  for (const auto& row : generators) {
    RealVector r;
    for (const auto& e : row) r.push_back(e.value);
    g.push_back(std::move(r));
  }
  return g;
}

ExponentialSum InputDocument::to_sum() const { return ExponentialSum(generator_values(), terms); }

LatticeIso InputDocument::build_iso() const {
  return amoeba::build_iso(to_sum().exponent_matrix(), generator_values(), gamma_basis);
}

bool InputDocument::operator==(const InputDocument& o) const {
  if (name != o.name || n != o.n || generators != o.generators || terms.size() != o.terms.size()) return false;
  if (gamma_basis.has_value() != o.gamma_basis.has_value()) return false;
  if (gamma_basis && !(*gamma_basis == *o.gamma_basis)) return false;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (!(terms[i].exponent == o.terms[i].exponent) || terms[i].coeff != o.terms[i].coeff) return false;
  return true;
}

InputDocument parse_input(const json& j) {
  if (!j.is_object()) parse_fail("input document must be a JSON object");
  if (!j.contains("schema") || j["schema"] != std::string(kInputSchema))
    parse_fail("missing or unsupported schema (expected " + std::string(kInputSchema) + ")");
  InputDocument doc;
  doc.name = j.value("name", "");
  if (!j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0)
    parse_fail("'n' must be a positive integer");
  doc.n = j["n"].get<std::size_t>();

  if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
    parse_fail("'generators' must be a nonempty array of rows");
  for (const auto& row : j["generators"]) {
    if (!row.is_array() || row.size() != doc.n) parse_fail("each generator row needs exactly n entries");
    std::vector<GeneratorEntry> entries;
    for (const auto& e : row) {
      if (e.is_number()) entries.push_back(GeneratorEntry{"", e.get<double>()});
      else if (e.is_string()) entries.push_back(GeneratorEntry{e.get<std::string>(), evaluate_exact_form(e.get<std::string>())});
      else parse_fail("generator entries must be numbers or expression strings");
    }
    doc.generators.push_back(std::move(entries));
  }
  const std::size_t m = doc.generators.size();

  if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
    parse_fail("'terms' must be a nonempty array");
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exponent") || !t.contains("coeff")) parse_fail("term needs exponent and coeff");
    const auto& e = t["exponent"];
    if (!e.is_array() || e.size() != m) parse_fail("term exponent length must equal the generator count");
    Term term;
    for (const auto& x : e) term.exponent.push_back(parse_integer(x, "exponent"));
    const auto& c = t["coeff"];
    if (c.is_number()) term.coeff = Complex(c.get<double>(), 0.0);
    else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number())
      term.coeff = Complex(c[0].get<double>(), c[1].get<double>());
    else parse_fail("coeff must be a number or [re, im]");
    if (term.coeff == Complex(0.0, 0.0)) parse_fail("zero coefficient (zero terms are not part of the spectrum)");
    doc.terms.push_back(std::move(term));
  }

  if (j.contains("gamma_basis") && !j["gamma_basis"].is_null()) {
    const auto& b = j["gamma_basis"];
    if (!b.is_array()) parse_fail("'gamma_basis' must be an array of rows");
    std::vector<IntVector> rows;
    for (const auto& row : b) {
      if (!row.is_array() || row.size() != m) parse_fail("gamma_basis rows must have one entry per generator");
      IntVector r;
      for (const auto& x : row) r.push_back(parse_integer(x, "gamma_basis"));
      rows.push_back(std::move(r));
    }
    doc.gamma_basis = IntMatrix::from_rows(rows, m);
  }

  try {
    (void)doc.to_sum();
  } catch (const Error& e) {
    parse_fail(e.what());
  }
  return doc;
}

InputDocument load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open input file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    parse_fail("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_input(j);
}

json to_json(const InputDocument& doc) {
  json j;
  j["schema"] = kInputSchema;
  if (!doc.name.empty()) j["name"] = doc.name;
  j["n"] = doc.n;
  json gens = json::array();
  for (const auto& row : doc.generators) {
    json r = json::array();
    for (const auto& e : row) {
      if (e.text.empty()) r.push_back(e.value);
      else r.push_back(e.text);
    }
    gens.push_back(std::move(r));
  }
  j["generators"] = std::move(gens);
  if (doc.gamma_basis) {
    json b = json::array();
    for (const auto& row : doc.gamma_basis->row_list()) b.push_back(int_vector_json(row));
    j["gamma_basis"] = std::move(b);
  }
  json terms = json::array();
  for (const auto& t : doc.terms)
    terms.push_back(json{{"exponent", int_vector_json(t.exponent)}, {"coeff", {t.coeff.real(), t.coeff.imag()}}});
  j["terms"] = std::move(terms);
  return j;
}

std::string bounds_line(const AmoebaReport& r) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu ≤ ρ≈%zu ≤ %zu < %.4f", r.card_vertices, r.rho_estimate,
                r.card_lambda, r.upsilon);
  return buf;
}

json report_to_json(const AmoebaReport& r, const InputDocument& input, const LatticeIso& iso, const Provenance& p) {
  check_bound_chain(r);
  json j;
  j["schema"] = kReportSchema;
  j["input"] = {{"name", input.name}, {"n", input.n}, {"generator_count", input.generators.size()},
                {"term_count", input.terms.size()}};
  j["dim"] = r.dim;
  j["rank"] = r.rank;

  json basis = json::array();
  for (const auto& row : iso.basis().row_list()) basis.push_back(int_vector_json(row));
  j["gamma_basis"] = std::move(basis);
  j["omega"] = iso.omega();

  json laurent = json::array();
  for (std::size_t i = 0; i < r.gamma_points.size(); ++i)
    laurent.push_back(json{{"k", int_vector_json(r.gamma_points[i])},
                           {"coeff", {input.terms[i].coeff.real(), input.terms[i].coeff.imag()}}});
  j["laurent_polynomial"] = std::move(laurent);

  j["vertex_indices"] = r.vertex_indices;
  j["card_vertices"] = r.card_vertices;
  json lg = json::array();
  for (const auto& k : r.lambda.points_gamma) lg.push_back(int_vector_json(k));
  j["lambda_gamma"] = std::move(lg);
  j["lambda_spectrum"] = r.lambda.points_spectrum;
  j["card_lambda"] = r.card_lambda;
  j["upsilon"] = r.upsilon;
  j["rho_estimate"] = r.rho_estimate;
  j["sparse"] = r.sparse;
  j["solid_observed"] = r.solid_observed;
  j["lattice_points_of_newton_polytope"] =
      r.newton_integer_points ? json(*r.newton_integer_points) : json(nullptr);
  j["bounds"] = bounds_line(r);

  const ComponentReport& c = r.components;
  json list = json::array();
  for (const auto& comp : c.components)
    list.push_back(json{{"sample", vector_json(comp.sample)},
                        {"order_gamma", int_vector_json(comp.order_gamma)},
                        {"order_spectrum", vector_json(comp.order_spectrum)},
                        {"extent_lo", vector_json(comp.extent_lo)},
                        {"extent_hi", vector_json(comp.extent_hi)},
                        {"centroid", vector_json(comp.centroid)},
                        {"sample_count", comp.sample_count},
                        {"certified_samples", comp.certified_samples},
                        {"pieces", comp.pieces}});
  j["components"] = {{"rho_estimate", c.rho_estimate},
                     {"scan_box", {{"lo", c.scan_box.lo}, {"hi", c.scan_box.hi}}},
                     {"resolution", c.resolution},
                     {"theta_grid", c.theta_grid},
                     {"amoeba_samples", c.amoeba_samples},
                     {"unresolved_samples", c.unresolved_samples},
                     {"list", std::move(list)}};

  j["provenance"] = {{"tool_version", p.tool_version},
                     {"kernel_isa", p.kernel_isa},
                     {"threads", p.threads},
                     {"resolution", p.scan.resolution},
                     {"theta_grid", p.scan.membership.theta_grid},
                     {"membership_threshold", p.scan.membership.threshold},
                     {"quadrature_grid", p.scan.order.grid},
                     {"gradient_step", p.scan.order.step},
                     {"order_residual_tolerance", p.scan.order.max_residual},
                     {"vertex_tolerance", {{"accept", 1e-7}, {"ambiguous", 1e-9}}},
                     {"box", p.scan.box ? "explicit" : "auto"}};
  require_finite(j, "");
  return j;
}

}  // namespace amoeba
