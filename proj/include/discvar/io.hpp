#pragma once

// JSON documents read and written by the command-line tool.

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "discvar/discriminant.hpp"
#include "discvar/error.hpp"
#include "discvar/oracle.hpp"
#include "discvar/parser.hpp"
#include "discvar/system.hpp"

namespace discvar::io {

using json = nlohmann::ordered_json;

/// Malformed input file. The message carries the path and, when known, the
/// line.
class InputError : public Error {
 public:
  explicit InputError(const std::string& msg) : Error(msg) {}
};

struct Document {
  std::string path;
  std::string text;
  json value;
};

inline std::size_t line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Line of the first occurrence of a string literal, 0 if not found.
inline std::size_t line_of_literal(const std::string& text, const std::string& literal) {
  auto pos = text.find(json(literal).dump());
  return pos == std::string::npos ? 0 : line_of_offset(text, pos);
}

inline Document parse_document(const std::string& text, const std::string& path) {
  Document d{path, text, {}};
  try {
    d.value = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(path + ":" + std::to_string(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1)) +
                     ": invalid JSON: " + e.what());
  }
  if (!d.value.is_object()) throw InputError(path + ": top level must be an object");
  return d;
}

inline Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path);
}

inline std::vector<std::string> string_list(const Document& d, const char* key, bool required = true) {
  if (!d.value.contains(key)) {
    if (required) throw InputError(d.path + ": missing field '" + std::string(key) + "'");
    return {};
  }
  const auto& v = d.value.at(key);
  if (!v.is_array()) throw InputError(d.path + ": field '" + std::string(key) + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw InputError(d.path + ": field '" + std::string(key) + "' must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline Polynomial parse_field_polynomial(const Document& d, const std::string& field, std::size_t i,
                                         const std::string& text, const VariableContext& ctx) {
  try {
    return parse_polynomial(text, ctx);
  } catch (const Error& e) {
    std::size_t line = line_of_literal(d.text, text);
    throw InputError(d.path + (line ? ":" + std::to_string(line) : std::string()) + ": " + field + "[" +
                     std::to_string(i) + "]: " + e.what());
  }
}

/// Parameters, unknowns, equations and inequations of a parametric system.
struct SystemFile {
  std::string label;
  std::vector<std::string> parameters, unknowns, equations, inequations;
};

inline bool is_system_document(const Document& d) { return d.value.contains("equations"); }
inline bool is_result_document(const Document& d) { return d.value.contains("components"); }

inline SystemFile system_file(const Document& d) {
  SystemFile s;
  if (d.value.contains("label")) s.label = d.value.at("label").get<std::string>();
  s.parameters = string_list(d, "parameters");
  s.unknowns = string_list(d, "unknowns");
  s.equations = string_list(d, "equations");
  s.inequations = string_list(d, "inequations", false);
  if (s.equations.size() != s.unknowns.size())
    throw InputError(d.path + ": " + std::to_string(s.equations.size()) + " equations for " +
                     std::to_string(s.unknowns.size()) +
                     " unknowns; only square systems (as many equations as unknowns) are supported");
  return s;
}

inline ParametricSystem to_system(const SystemFile& s, const Document& d) {
  VariableContext ctx;
  try {
    ctx = VariableContext(s.parameters, s.unknowns);
  } catch (const Error& e) {
    throw InputError(d.path + ": " + e.what());
  }
  std::vector<Polynomial> eqs, ineqs;
  for (std::size_t i = 0; i < s.equations.size(); ++i)
    eqs.push_back(parse_field_polynomial(d, "equations", i, s.equations[i], ctx));
  for (std::size_t i = 0; i < s.inequations.size(); ++i)
    ineqs.push_back(parse_field_polynomial(d, "inequations", i, s.inequations[i], ctx));
  try {
    return ParametricSystem(ctx, std::move(eqs), std::move(ineqs));
  } catch (const Error& e) {
    throw InputError(d.path + ": " + e.what());
  }
}

inline ParametricSystem read_system(const std::string& path) {
  Document d = read_document(path);
  return to_system(system_file(d), d);
}

inline json to_json(const SystemFile& s) {
  json j;
  if (!s.label.empty()) j["label"] = s.label;
  j["parameters"] = s.parameters;
  j["unknowns"] = s.unknowns;
  j["equations"] = s.equations;
  j["inequations"] = s.inequations;
  return j;
}

inline json to_json(const GroebnerStats& s, bool with_time) {
  json j;
  j["pairs_created"] = s.pairs_created;
  j["pairs_reduced"] = s.pairs_reduced;
  j["zero_reductions"] = s.zero_reductions;
  j["product_criterion"] = s.product_criterion;
  j["chain_criterion"] = s.chain_criterion;
  j["max_degree"] = s.max_degree;
  j["basis_size"] = s.basis_size;
  j["max_coeff_bits"] = s.max_coeff_bits;
  if (with_time) j["seconds"] = s.seconds;
  return j;
}

inline json to_json(const DegreeReport& r) {
  json j;
  j["d"] = r.d;
  j["d_prime"] = r.d_prime;
  j["delta"] = r.delta;
  j["delta_formula"] = r.delta_formula;
  j["delta_prime"] = r.delta_prime;
  j["bezout"] = r.bezout;
  j["bound_inf"] = r.bound_inf;
  j["bound_ineq"] = r.bound_ineq;
  j["bound_crit"] = r.bound_crit;
  j["bound_total"] = r.bound_total;
  j["bound_total_formula"] = r.bound_total_formula;
  return j;
}

inline std::vector<std::string> generator_strings(const Ideal& I) {
  std::vector<std::string> out;
  for (const auto& g : I.generators()) out.push_back(g.to_string());
  return out;
}

/// Result document. Timings are only written when `with_time` is set so
/// that repeated runs produce identical files.
inline json to_json(const DiscriminantResult& r, const std::string& label, bool with_time) {
  json j;
  if (!label.empty()) j["label"] = label;
  j["parameters"] = r.variety.ambient().names();
  j["mode"] = r.mode == Mode::deterministic ? "deterministic" : "probabilistic";
  j["seed"] = r.seed;
  if (r.choice) {
    j["linear_form"] = {{"gamma", r.choice->gamma}, {"lattice_bound", r.choice->lattice_bound}};
  }
  j["generically_simple"] = r.generically_simple;
  j["whole_space"] = r.variety.is_whole_space();
  json comps = json::array();
  for (const auto& c : r.variety.components()) {
    json e;
    e["source"] = to_string(c.source);
    e["generators"] = generator_strings(c.ideal);
    comps.push_back(e);
  }
  j["components"] = comps;
  j["degree_report"] = to_json(r.degrees);
  json pipes = json::array();
  for (const auto& p : r.pipelines) {
    json e;
    e["name"] = p.name;
    e["source"] = to_string(p.source);
    e["discarded"] = p.discarded;
    e["generators"] = generator_strings(p.component);
    if (with_time) e["seconds"] = p.seconds;
    e["stats"] = to_json(p.stats, with_time);
    pipes.push_back(e);
  }
  j["pipelines"] = pipes;
  return j;
}

/// The union of components stored in a result document.
inline VarietyUnion read_result(const Document& d) {
  auto params = string_list(d, "parameters");
  VariableContext amb;
  try {
    amb = VariableContext(params, {});
  } catch (const Error& e) {
    throw InputError(d.path + ": " + e.what());
  }
  VarietyUnion u(amb);
  const auto& comps = d.value.at("components");
  if (!comps.is_array()) throw InputError(d.path + ": 'components' must be an array");
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto& c = comps[k];
    Source s = Source::user;
    try {
      if (c.contains("source")) s = source_from_string(c.at("source").get<std::string>());
    } catch (const Error& e) {
      throw InputError(d.path + ": components[" + std::to_string(k) + "]: " + e.what());
    }
    Ideal I(amb);
    if (!c.contains("generators") || !c.at("generators").is_array())
      throw InputError(d.path + ": components[" + std::to_string(k) + "] needs a 'generators' array");
    std::size_t i = 0;
    for (const auto& g : c.at("generators"))
      I.add(parse_field_polynomial(d, "components[" + std::to_string(k) + "].generators", i++, g.get<std::string>(),
                                   amb));
    u.add(s, I);
  }
  return u;
}

/// Ideal to eliminate from: {"variables": [...], "generators": [...], "keep": [...]}.
struct IdealFile {
  VariableContext ctx;
  Ideal ideal;
  std::vector<std::string> keep;
};

inline IdealFile read_ideal(const Document& d) {
  IdealFile f;
  auto vars = string_list(d, "variables");
  try {
    f.ctx = VariableContext(vars);
  } catch (const Error& e) {
    throw InputError(d.path + ": " + e.what());
  }
  f.ideal = Ideal(f.ctx);
  auto gens = string_list(d, "generators");
  for (std::size_t i = 0; i < gens.size(); ++i) f.ideal.add(parse_field_polynomial(d, "generators", i, gens[i], f.ctx));
  f.keep = string_list(d, "keep");
  for (const auto& k : f.keep)
    if (!f.ctx.contains(k)) throw InputError(d.path + ": keep: unknown variable '" + k + "'");
  return f;
}

inline json to_json(const CrossValidationReport& r, bool with_time) {
  json j;
  j["seed"] = r.seed;
  j["count"] = r.cases.size();
  j["equal"] = r.count(OracleCase::Status::equal);
  j["mismatch"] = r.count(OracleCase::Status::mismatch);
  j["skipped"] = r.count(OracleCase::Status::skipped);
  json cases = json::array();
  for (const auto& c : r.cases) {
    json e;
    e["index"] = c.index;
    e["status"] = to_string(c.status);
    e["parameters"] = c.parameters;
    e["unknowns"] = c.unknowns;
    e["generators"] = c.generators;
    if (!c.groebner_result.empty()) e["groebner"] = c.groebner_result;
    if (!c.oracle_result.empty()) e["oracle"] = c.oracle_result;
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (with_time) e["seconds"] = c.seconds;
    cases.push_back(e);
  }
  j["cases"] = cases;
  return j;
}

}  // namespace discvar::io
