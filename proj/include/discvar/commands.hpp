#pragma once

// Command implementations behind the `discvar` executable. Each returns the
// document to print and the process exit code, so they can be tested
// without spawning a process.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "discvar/discriminant.hpp"
#include "discvar/io.hpp"
#include "discvar/oracle.hpp"
#include "discvar/sturm.hpp"

namespace discvar::cli {

enum ExitCode : int { ok = 0, input_error = 1, not_simple_or_unequal = 2, resource_limit = 3 };

struct GlobalOptions {
  std::optional<std::string> input;
  std::optional<std::string> output;
  Mode mode = Mode::deterministic;
  std::uint64_t seed = 0;
  bool stats = false;
  std::size_t max_pairs = 0;
  std::size_t max_coeff_bits = 0;
  double timeout_seconds = 0;
};

struct CommandResult {
  int exit_code = ok;
  std::string output;       // JSON document for --output / stdout
  std::string diagnostics;  // human-readable text for stderr
};

inline GroebnerLimits limits_from(const GlobalOptions& o) {
  GroebnerLimits l = GroebnerLimits::with_timeout(o.timeout_seconds);
  l.max_pairs = o.max_pairs;
  l.max_coeff_bits = o.max_coeff_bits;
  return l;
}

inline std::string dump(const io::json& j) { return j.dump(2) + "\n"; }

inline const std::string& require_input(const GlobalOptions& o) {
  if (!o.input) throw io::InputError("missing --input PATH");
  return *o.input;
}

/// Maps exceptions onto exit codes.
template <class F>
CommandResult guarded(F&& body) {
  try {
    return body();
  } catch (const ResourceLimit& e) {
    return CommandResult{resource_limit, {}, std::string("resource limit: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return CommandResult{input_error, {}, std::string("error: ") + e.what() + "\n"};
  } catch (const io::json::exception& e) {
    return CommandResult{input_error, {}, std::string("error: malformed document: ") + e.what() + "\n"};
  }
}

inline std::string summary(const DiscriminantResult& r) {
  std::ostringstream os;
  for (const auto& p : r.pipelines)
    os << p.name << ": " << (p.discarded ? "empty" : p.component.to_string()) << "  [" << p.seconds << " s, "
       << p.stats.pairs_reduced << " pairs, basis " << p.stats.basis_size << ", max " << p.stats.max_coeff_bits
       << " bits]\n";
  os << "bound_total " << r.degrees.bound_total << ", generically simple: " << (r.generically_simple ? "yes" : "no")
     << "\n";
  return os.str();
}

inline DiscriminantOptions discriminant_options(const GlobalOptions& o) {
  DiscriminantOptions d;
  d.mode = o.mode;
  d.seed = o.seed;
  d.limits = limits_from(o);
  return d;
}

inline CommandResult cmd_compute(const GlobalOptions& o) {
  return guarded([&] {
    io::Document doc = io::read_document(require_input(o));
    io::SystemFile sf = io::system_file(doc);
    ParametricSystem sys = io::to_system(sf, doc);
    DiscriminantResult r = minimal_discriminant_variety(sys, discriminant_options(o));
    CommandResult out;
    out.output = dump(io::to_json(r, sf.label, o.stats));
    if (o.stats) out.diagnostics = summary(r);
    if (!r.generically_simple) {
      out.exit_code = not_simple_or_unequal;
      out.diagnostics += "system is not generically simple: the discriminant variety is the whole parameter space\n";
    }
    return out;
  });
}

/// Real-point annotation for a witness component: certified only when some
/// generator is univariate.
inline std::string real_annotation(const Ideal& I) {
  bool univariate_with_roots = false;
  for (const auto& g : I.generators()) {
    if (g.support().size() != 1) continue;
    if (count_real_roots(g) == 0) return "no real points";
    univariate_with_roots = true;
  }
  if (univariate_with_roots && I.size() == 1) return "has real points";
  return "unknown over R";
}

// Variety stored in a result document, or computed from a system document.
inline VarietyUnion load_variety(const std::string& path, const GlobalOptions& o) {
  io::Document d = io::read_document(path);
  if (io::is_result_document(d)) return io::read_result(d);
  if (io::is_system_document(d)) {
    ParametricSystem sys = io::to_system(io::system_file(d), d);
    return minimal_discriminant_variety(sys, discriminant_options(o)).variety;
  }
  throw io::InputError(path + ": neither a system nor a result document");
}

// b rewritten over a's ambient; both must name the same parameters.
inline VarietyUnion align(const VarietyUnion& a, const VarietyUnion& b) {
  auto an = a.ambient().names(), bn = b.ambient().names();
  std::sort(an.begin(), an.end());
  std::sort(bn.begin(), bn.end());
  if (an != bn) throw AmbientMismatch();
  VarietyUnion out(a.ambient());
  for (const auto& c : b.components()) out.add(c.source, c.ideal.embed(a.ambient()));
  return out;
}

inline CommandResult cmd_compare(const GlobalOptions& o, const std::string& a_path, const std::string& b_path,
                                 bool real_hint) {
  return guarded([&] {
    VarietyUnion A = load_variety(a_path, o);
    VarietyUnion B = align(A, load_variety(b_path, o));
    Comparison c = variety_equal(A, B, limits_from(o));
    io::json j;
    j["verdict"] = to_string(c.verdict);
    io::json ws = io::json::array();
    for (const auto& w : c.witnesses) {
      io::json e;
      e["side"] = std::string(1, w.side);
      e["source"] = to_string(w.component.source);
      e["component"] = io::generator_strings(w.component.ideal);
      e["nonvanishing_generator"] = w.generator.to_string();
      if (real_hint) e["real"] = real_annotation(w.component.ideal);
      ws.push_back(e);
    }
    j["witnesses"] = ws;
    CommandResult out;
    out.output = dump(j);
    out.exit_code = c.verdict == Verdict::equal ? ok : not_simple_or_unequal;
    return out;
  });
}

inline CommandResult cmd_eliminate(const GlobalOptions& o) {
  return guarded([&] {
    io::Document d = io::read_document(require_input(o));
    io::IdealFile f = io::read_ideal(d);
    Ideal E = eliminate(EliminationTask{f.ideal, f.keep}, limits_from(o));
    io::json j;
    j["variables"] = E.context().names();
    j["generators"] = io::generator_strings(E);
    j["stats"] = io::to_json(E.stats(), o.stats);
    CommandResult out;
    out.output = dump(j);
    return out;
  });
}

inline CommandResult cmd_degree_bound(const GlobalOptions& o) {
  return guarded([&] {
    ParametricSystem sys = io::read_system(require_input(o));
    CommandResult out;
    out.output = dump(io::to_json(degree_report(sys)));
    return out;
  });
}

/// "t=4", "s=1/2,t=-1" or several such strings.
inline std::map<std::string, Rational> parse_point(const std::vector<std::string>& items) {
  std::map<std::string, Rational> pt;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      auto eq = part.find('=');
      if (eq == std::string::npos) throw io::InputError("point entry '" + part + "' is not NAME=VALUE");
      std::string name = part.substr(0, eq);
      try {
        pt[name] = Rational::parse(part.substr(eq + 1));
      } catch (const Error& e) {
        throw io::InputError("point entry '" + part + "': " + e.what());
      }
    }
  }
  return pt;
}

struct FiberCount {
  std::optional<std::size_t> complex;  // nullopt: infinitely many
  std::optional<std::size_t> real;     // only for one unknown
};

/// Solutions of the system specialized at `point` (every parameter set),
/// outside the inequations: complex count with multiplicity, plus the real
/// count when there is a single unknown.
inline FiberCount fiber_count(const ParametricSystem& sys, const std::map<std::string, Rational>& point,
                              const GroebnerLimits& limits = {}) {
  const auto& ctx = sys.context();
  for (const auto& [name, v] : point)
    if (!ctx.contains(name) || ctx.role(ctx.index_of(name)) != Role::parameter)
      throw io::InputError("point assigns '" + name + "', which is not a parameter");
  for (const auto& p : sys.parameters())
    if (!point.count(p)) throw io::InputError("point does not assign parameter '" + p + "'");
  VariableContext fiber = ctx.restricted_to(sys.unknowns());
  auto specialize_poly = [&](Polynomial f) {
    for (const auto& [name, v] : point) f = f.substitute(ctx.index_of(name), v);
    return f.embed(fiber);
  };
  Ideal J(fiber);
  for (const auto& f : sys.equations()) J.add(specialize_poly(f));
  Polynomial g = specialize_poly(inequation_product(sys));
  FiberCount out;
  if (g.is_zero()) {
    out.complex = 0;
    if (sys.unknowns().size() == 1) out.real = 0;
    return out;
  }
  if (!g.is_constant()) J = saturate(J, g, limits);
  out.complex = quotient_dimension(J, sys.unknowns(), limits);
  if (!out.complex) throw PositiveDimensionalFiber();
  if (sys.unknowns().size() == 1) {
    Ideal G = buchberger(J, MonomialOrder::grevlex(1), limits);
    if (G.has_unit()) out.real = 0;
    else if (G.is_zero()) out.real.reset();
    else out.real = count_real_roots(G.generators().front());
  }
  return out;
}

inline CommandResult cmd_fiber_count(const GlobalOptions& o, const std::vector<std::string>& point) {
  return guarded([&] {
    ParametricSystem sys = io::read_system(require_input(o));
    auto pt = parse_point(point);
    io::json j;
    io::json jp = io::json::object();
    for (const auto& [k, v] : pt) jp[k] = v.to_string();
    j["point"] = jp;
    try {
      FiberCount fc = fiber_count(sys, pt, limits_from(o));
      j["complex"] = *fc.complex;
      if (fc.real) j["real"] = *fc.real;
      else {
        j["real"] = nullptr;
        j["note"] = "real root counting needs exactly one unknown";
      }
    } catch (const PositiveDimensionalFiber&) {
      j["complex"] = "INFINITE";
      j["real"] = nullptr;
      j["note"] = "fiber is positive dimensional";
    }
    CommandResult out;
    out.output = dump(j);
    return out;
  });
}

inline CommandResult cmd_cross_validate(const GlobalOptions& o, std::size_t count) {
  return guarded([&] {
    GroebnerLimits l;
    l.max_pairs = o.max_pairs;
    l.max_coeff_bits = o.max_coeff_bits;
    // --timeout-seconds applies to each instance here
    CrossValidationReport r =
        cross_validate(count, o.seed, OracleConfig{}, l, o.timeout_seconds > 0 ? o.timeout_seconds : 60);
    CommandResult out;
    out.output = dump(io::to_json(r, o.stats));
    std::ostringstream os;
    os << r.count(OracleCase::Status::equal) << "/" << r.cases.size() << " EQUAL, "
       << r.count(OracleCase::Status::skipped) << " skipped, " << r.count(OracleCase::Status::mismatch)
       << " mismatches\n";
    for (const auto& c : r.cases)
      if (c.status == OracleCase::Status::mismatch) os << "counterexample #" << c.index << ": " << c.detail << "\n";
    out.diagnostics = os.str();
    out.exit_code = r.ok() ? ok : not_simple_or_unequal;
    return out;
  });
}

}  // namespace discvar::cli
