#include "spec_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "primform/error.hpp"

namespace primform::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::InvalidSpec, field + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object() || !obj.contains(key)) fail(field, "missing \"" + key + "\"");
  return obj.at(key);
}

std::string string_field(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

Rational rational_field(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  std::string text = string_field(v, field);
  try {
    return parse_rational(text);
  } catch (const Error&) {
    fail(field, "not an exact rational: \"" + text + "\"");
  }
}

int exponent_field(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "exponent must be an integer");
  return v.get<int>();
}

Monomial exponent_map(const json& v, const std::set<std::string>& allowed, const std::string& field) {
  if (!v.is_object()) fail(field, "expected an object of exponents");
  Monomial m;
  for (const auto& [name, e] : v.items()) {
    if (!allowed.count(name)) fail(field + "." + name, "undeclared symbol");
    m = m * Monomial::of(sym(name), exponent_field(e, field + "." + name));
  }
  return m;
}

LaurentPoly term_list(const json& v, const std::set<std::string>& variables, const std::set<std::string>& params,
                      const std::string& field) {
  if (!v.is_array() || v.empty()) fail(field, "expected a non-empty array of terms");
  LaurentPoly out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string f = field + "[" + std::to_string(i) + "]";
    const json& t = v[i];
    Rational c = rational_field(require(t, "coefficient", f), f + ".coefficient");
    Monomial m = t.contains("exponents") ? exponent_map(t["exponents"], variables, f + ".exponents") : Monomial();
    if (t.contains("parameters")) m = m * exponent_map(t["parameters"], params, f + ".parameters");
    out += LaurentPoly::term(c, m);
  }
  return out;
}

}  // namespace

LoadedSpec parse_spec(const json& doc) {
  if (!doc.is_object()) fail("spec", "expected a JSON object");
  std::string name = doc.contains("name") ? string_field(doc["name"], "name") : "spec";
  std::string kind_text = string_field(require(doc, "kind", "spec"), "kind");
  LGKind kind;
  if (kind_text == "polynomial") {
    kind = LGKind::Polynomial;
  } else if (kind_text == "laurent") {
    kind = LGKind::Laurent;
  } else {
    fail("kind", "expected \"polynomial\" or \"laurent\"");
  }

  const json& vars = require(doc, "variables", "spec");
  if (!vars.is_array() || vars.empty()) fail("variables", "expected a non-empty array");
  std::vector<VariableSpec> variables;
  std::set<std::string> var_names;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::string f = "variables[" + std::to_string(i) + "]";
    std::string v = string_field(require(vars[i], "name", f), f + ".name");
    Rational w = vars[i].contains("weight") ? rational_field(vars[i]["weight"], f + ".weight") : Rational(0);
    if (!var_names.insert(v).second) fail(f + ".name", "duplicate variable " + v);
    variables.push_back({v, w});
  }

  std::vector<std::string> params;
  std::set<std::string> param_names;
  if (doc.contains("parameters")) {
    const json& p = doc["parameters"];
    if (!p.is_array()) fail("parameters", "expected an array of names");
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::string s = string_field(p[i], "parameters[" + std::to_string(i) + "]");
      if (var_names.count(s) || !param_names.insert(s).second) {
        fail("parameters[" + std::to_string(i) + "]", "duplicate symbol " + s);
      }
      params.push_back(s);
    }
  }

  LaurentPoly f = term_list(require(doc, "superpotential", "spec"), var_names, param_names, "superpotential");

  std::vector<DeformationEntry> basis;
  if (doc.contains("basis")) {
    const json& b = doc["basis"];
    if (!b.is_array()) fail("basis", "expected an array");
    for (std::size_t i = 0; i < b.size(); ++i) {
      std::string fld = "basis[" + std::to_string(i) + "]";
      DeformationEntry e;
      e.monomial = b[i].contains("exponents") ? exponent_map(b[i]["exponents"], var_names, fld + ".exponents")
                                              : Monomial();
      std::string mode = b[i].contains("mode") ? string_field(b[i]["mode"], fld + ".mode") : "additive";
      if (mode == "additive") {
        e.mode = DeformationMode::Additive;
      } else if (mode == "exponential") {
        e.mode = DeformationMode::Exponential;
      } else {
        fail(fld + ".mode", "expected \"additive\" or \"exponential\"");
      }
      basis.push_back(e);
    }
  }

  LoadedSpec out{make_lg_system(name, kind, variables, params, f, basis), std::nullopt};
  if (doc.contains("primitive_form")) {
    const json& pf = doc["primitive_form"];
    std::string volume = string_field(require(pf, "volume", "primitive_form"), "primitive_form.volume");
    const std::string& z = variables.front().name;
    std::string expected = kind == LGKind::Laurent ? "d" + z + "/" + z : "d" + z;
    if (volume != expected) fail("primitive_form.volume", "expected \"" + expected + "\" for this kind");
    out.phi = term_list(require(pf, "terms", "primitive_form"), var_names, param_names, "primitive_form.terms");
  }
  return out;
}

LoadedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidSpec, path + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidSpec, path + ": " + e.what());
  }
  try {
    return parse_spec(doc);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvalidSpec) throw Error(ErrorKind::InvalidSpec, path + ": " + e.message());
    throw;
  }
}

std::optional<LoadedSpec> load_builtin(const std::string& name) {
  auto lg = builtin_system(name);
  if (!lg) return std::nullopt;
  return LoadedSpec{*lg, std::nullopt};
}

}  // namespace primform::cli
