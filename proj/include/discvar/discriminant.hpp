#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "discvar/gcd.hpp"
#include "discvar/groebner.hpp"
#include "discvar/idealops.hpp"
#include "discvar/system.hpp"

namespace discvar {

/// Degrees entering the bound d_1...d_n (1 + delta + delta').
struct DegreeReport {
  std::vector<unsigned long> d;
  std::vector<unsigned long> d_prime;
  unsigned long delta = 0;        // degree used for the Jacobian determinant
  unsigned long delta_formula = 0;  // max(0, sum d_i - n)
  unsigned long delta_prime = 0;
  unsigned long long bezout = 1;  // d_1 ... d_n
  unsigned long long bound_inf = 0;
  unsigned long long bound_ineq = 0;
  unsigned long long bound_crit = 0;
  unsigned long long bound_total = 0;
  // d_1...d_n (1 + delta_formula + delta'), the bound with the a priori delta
  unsigned long long bound_total_formula = 0;
};

inline DegreeReport degree_report(const ParametricSystem& sys, const Polynomial& jacobian) {
  DegreeReport r;
  long sum = 0;
  for (const auto& f : sys.equations()) {
    r.d.push_back(f.total_degree().value());
    sum += static_cast<long>(r.d.back());
    r.bezout *= r.d.back();
  }
  for (const auto& g : sys.inequations()) {
    r.d_prime.push_back(g.total_degree().value());
    r.delta_prime += r.d_prime.back();
  }
  long formula = sum - static_cast<long>(sys.equations().size());
  r.delta_formula = formula > 0 ? static_cast<unsigned long>(formula) : 0;
  auto jd = jacobian.total_degree();
  unsigned long actual = jd.is_minus_infinity() ? 0 : jd.value();
  r.delta = std::min(r.delta_formula, actual);
  r.bound_inf = r.bezout;
  r.bound_ineq = r.bezout * r.delta_prime;
  r.bound_crit = r.bezout * r.delta;
  r.bound_total = r.bound_inf + r.bound_ineq + r.bound_crit;
  r.bound_total_formula = r.bezout * (1 + r.delta_formula + r.delta_prime);
  return r;
}

inline DegreeReport degree_report(const ParametricSystem& sys) {
  return degree_report(sys, jacobian_determinant(sys));
}

/// Everything derived from the system before the eliminations: the extended
/// context with the homogenizer, the Rabinowitsch variable and the slack
/// variable, and the polynomials expressed over it.
struct ReductionArtifacts {
  VariableContext ext;
  std::string homogenizer;  // X0
  std::string rabinowitsch;  // Z
  std::string slack;         // X_{n+1}
  Polynomial g_S;            // product of inequations (ext context)
  Polynomial j_S;            // Jacobian determinant (ext context)
  Polynomial g_S_h;          // homogenization of g_S
  std::vector<Polynomial> equations;     // f_i (ext context)
  std::vector<Polynomial> homogenized;   // f_i^h (ext context)
};

inline ReductionArtifacts build_artifacts(const ParametricSystem& sys) {
  const auto& ctx = sys.context();
  ReductionArtifacts a;
  const std::size_t n = sys.unknown_indices().size();
  a.homogenizer = ctx.fresh_name("X0");
  VariableContext e1 = ctx.with_auxiliary(a.homogenizer);
  a.rabinowitsch = e1.fresh_name("Z");
  VariableContext e2 = e1.with_auxiliary(a.rabinowitsch);
  a.slack = e2.fresh_name("X" + std::to_string(n + 1));
  a.ext = e2.with_auxiliary(a.slack);

  std::vector<std::size_t> xs;
  for (const auto& u : ctx.unknowns()) xs.push_back(a.ext.index_of(u));
  const std::size_t h = a.ext.index_of(a.homogenizer);
  for (const auto& f : sys.equations()) {
    a.equations.push_back(f.embed(a.ext));
    a.homogenized.push_back(homogenize(a.equations.back(), h, xs));
  }
  a.g_S = inequation_product(sys).embed(a.ext);
  a.g_S_h = homogenize(a.g_S, h, xs);
  a.j_S = jacobian_determinant(sys).embed(a.ext);
  return a;
}

namespace detail {

inline Polynomial var(const ReductionArtifacts& a, const std::string& name) {
  return Polynomial::variable(a.ext, name);
}
inline Polynomial one(const ReductionArtifacts& a) { return Polynomial::constant(a.ext, Rational(1)); }

inline std::vector<std::string> with(std::vector<std::string> v, const std::string& extra) {
  v.push_back(extra);
  return v;
}

}  // namespace detail

/// <f_1^h, ..., f_n^h, Z X0 g_S^h - 1, X_i - 1>, keeping parameters and X0.
/// `i` is 1-based.
inline EliminationTask build_inf_ideal(const ParametricSystem& sys, std::size_t i, const ReductionArtifacts& a) {
  const auto xs = sys.unknowns();
  if (i < 1 || i > xs.size()) throw Error("unknown index out of range");
  Ideal I(a.ext, a.homogenized);
  I.add(detail::var(a, a.rabinowitsch) * detail::var(a, a.homogenizer) * a.g_S_h - detail::one(a));
  I.add(detail::var(a, xs[i - 1]) - detail::one(a));
  return EliminationTask{std::move(I), detail::with(sys.parameters(), a.homogenizer)};
}

/// <f_1, ..., f_n, g_S - X_{n+1}, Z X_{n+1} - 1>, keeping parameters and X_{n+1}.
inline EliminationTask build_ineq_ideal(const ParametricSystem& sys, const ReductionArtifacts& a) {
  Ideal I(a.ext, a.equations);
  I.add(a.g_S - detail::var(a, a.slack));
  I.add(detail::var(a, a.rabinowitsch) * detail::var(a, a.slack) - detail::one(a));
  return EliminationTask{std::move(I), detail::with(sys.parameters(), a.slack)};
}

/// <f_1, ..., f_n, j_S, Z g_S - 1>, keeping parameters.
inline EliminationTask build_crit_ideal(const ParametricSystem& sys, const ReductionArtifacts& a) {
  Ideal I(a.ext, a.equations);
  I.add(a.j_S);
  I.add(detail::var(a, a.rabinowitsch) * a.g_S - detail::one(a));
  return EliminationTask{std::move(I), sys.parameters()};
}

/// Random linear form coefficients for the single-elimination variant.
struct ProbabilisticChoice {
  std::vector<unsigned long long> gamma;
  unsigned long long lattice_bound = 0;  // D = 3 d_1 ... d_n
  std::uint64_t seed = 0;
};

/// Draws gamma uniformly from {0, ..., D-1}^n with a seeded mt19937_64,
/// redrawing while gamma is the zero vector.
inline ProbabilisticChoice draw_choice(const ParametricSystem& sys, std::uint64_t seed) {
  ProbabilisticChoice c;
  c.seed = seed;
  unsigned long long prod = 1;
  for (const auto& f : sys.equations()) prod *= f.total_degree().value();
  c.lattice_bound = 3 * prod;
  const std::size_t n = sys.equations().size();
  std::mt19937_64 rng(seed);
  auto uniform = [&](unsigned long long bound) {
    // rejection sampling keeps the draw identical across standard libraries
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return x % bound;
  };
  bool nonzero = false;
  while (!nonzero && c.lattice_bound > 1) {
    c.gamma.assign(n, 0);
    for (auto& g : c.gamma) {
      g = uniform(c.lattice_bound);
      nonzero |= g != 0;
    }
  }
  if (!nonzero) throw DegenerateForm();
  return c;
}

/// <f_1^h, ..., f_n^h, Z X0 g_S^h - 1, gamma . X - 1>, keeping parameters and X0.
inline EliminationTask build_probabilistic_inf_ideal(const ParametricSystem& sys, const ReductionArtifacts& a,
                                                     const ProbabilisticChoice& choice) {
  const auto xs = sys.unknowns();
  if (choice.gamma.size() != xs.size()) throw Error("linear form has the wrong length");
  Polynomial L(a.ext);
  for (std::size_t k = 0; k < xs.size(); ++k)
    L += detail::var(a, xs[k]) * Rational(Integer(std::to_string(choice.gamma[k])));
  if (L.is_zero()) throw DegenerateForm();
  Ideal I(a.ext, a.homogenized);
  I.add(detail::var(a, a.rabinowitsch) * detail::var(a, a.homogenizer) * a.g_S_h - detail::one(a));
  I.add(L - detail::one(a));
  return EliminationTask{std::move(I), detail::with(sys.parameters(), a.homogenizer)};
}

enum class Mode { deterministic, probabilistic };

/// Result of one elimination pipeline, before assembly.
struct PipelineRecord {
  Source source = Source::crit;
  std::size_t index = 0;  // 1-based unknown index for inf pipelines, else 0
  std::string name;       // "inf_1", "ineq", "crit", "inf_prob"
  Ideal raw;              // elimination ideal after specialization (parameter space)
  Ideal component;        // post-processed generators
  bool discarded = false; // unit ideal: empty variety
  GroebnerStats stats;
  double seconds = 0.0;
};

/// A pipeline hit a resource limit.
class ComponentFailed : public ResourceLimit {
 public:
  ComponentFailed(const std::string& component, const ResourceLimit& cause)
      : ResourceLimit(cause.kind(), cause.partial_stats()),
        component_(component),
        message_("component " + component + ": " + cause.what()) {}
  const std::string& component() const noexcept { return component_; }
  const char* what() const noexcept override { return message_.c_str(); }

 private:
  std::string component_;
  std::string message_;
};

/// Each generator replaced by its normalized squarefree part; unit ideals
/// collapse to <1>.
inline Ideal postprocess(const Ideal& I) {
  if (I.has_unit()) return Ideal(I.context(), {Polynomial::constant(I.context(), Rational(1))});
  Ideal out(I.context());
  for (const auto& g : I.generators()) out.add(squarefree_part(g));
  return out;
}

struct DiscriminantOptions {
  Mode mode = Mode::deterministic;
  std::uint64_t seed = 0;
  GroebnerLimits limits;
  bool parallel = false;
};

struct DiscriminantResult {
  VarietyUnion variety;
  DegreeReport degrees;
  bool generically_simple = true;
  Mode mode = Mode::deterministic;
  std::uint64_t seed = 0;
  std::optional<ProbabilisticChoice> choice;
  std::vector<PipelineRecord> pipelines;
};

/// Runs one elimination task and the specialization that follows it.
inline PipelineRecord run_pipeline(const ParametricSystem& sys, Source source, std::size_t index,
                                   std::string name, const EliminationTask& task,
                                   const std::optional<std::string>& specialize_var, const GroebnerLimits& limits) {
  PipelineRecord rec;
  rec.source = source;
  rec.index = index;
  rec.name = std::move(name);
  auto t0 = std::chrono::steady_clock::now();
  Ideal E;
  try {
    E = eliminate(task, limits);
  } catch (const ResourceLimit& e) {
    throw ComponentFailed(rec.name, e);
  }
  rec.stats = E.stats();
  if (specialize_var) E = specialize(E, *specialize_var, Rational(0));
  rec.raw = E.embed(sys.context().parameter_space());
  rec.component = postprocess(rec.raw);
  rec.discarded = rec.component.has_unit();
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

/// Minimal discriminant variety of a generically simple square system as
/// the union of the n + 2 elimination varieties (or 1 + 2 in probabilistic
/// mode). When the union is the whole parameter space, the system is not
/// generically simple and `generically_simple` is false.
inline DiscriminantResult minimal_discriminant_variety(const ParametricSystem& sys,
                                                       const DiscriminantOptions& opt = {}) {
  DiscriminantResult res;
  res.mode = opt.mode;
  res.seed = opt.seed;
  const ReductionArtifacts art = build_artifacts(sys);
  res.degrees = degree_report(sys, jacobian_determinant(sys));

  std::vector<std::function<PipelineRecord()>> jobs;
  const auto xs = sys.unknowns();
  if (opt.mode == Mode::deterministic) {
    for (std::size_t i = 1; i <= xs.size(); ++i)
      jobs.push_back([&, i] {
        return run_pipeline(sys, Source::inf, i, "inf_" + std::to_string(i), build_inf_ideal(sys, i, art),
                            art.homogenizer, opt.limits);
      });
  } else {
    res.choice = draw_choice(sys, opt.seed);
    jobs.push_back([&] {
      return run_pipeline(sys, Source::inf, 0, "inf_prob", build_probabilistic_inf_ideal(sys, art, *res.choice),
                          art.homogenizer, opt.limits);
    });
  }
  jobs.push_back([&] {
    return run_pipeline(sys, Source::ineq, 0, "ineq", build_ineq_ideal(sys, art), art.slack, opt.limits);
  });
  jobs.push_back([&] {
    return run_pipeline(sys, Source::crit, 0, "crit", build_crit_ideal(sys, art), std::nullopt, opt.limits);
  });

  if (opt.parallel) {
    std::vector<std::future<PipelineRecord>> futures;
    for (auto& j : jobs) futures.push_back(std::async(std::launch::async, j));
    for (auto& f : futures) res.pipelines.push_back(f.get());
  } else {
    for (auto& j : jobs) res.pipelines.push_back(j());
  }

  res.variety = VarietyUnion(sys.context().parameter_space());
  for (const auto& rec : res.pipelines) {
    if (rec.discarded) continue;
    bool duplicate = false;
    for (const auto& c : res.variety.components())
      if (c.ideal.generators() == rec.component.generators()) duplicate = true;
    if (!duplicate) res.variety.add(rec.source, rec.component);
  }
  if (res.variety.is_whole_space()) {
    res.generically_simple = false;
    VarietyUnion whole(res.variety.ambient());
    for (const auto& c : res.variety.components())
      if (c.ideal.is_zero()) {
        whole.add(c.source, c.ideal);
        break;
      }
    res.variety = std::move(whole);
  }
  return res;
}

/// V_inf computed with a single random linear form.
inline VarietyUnion probabilistic_inf(const ParametricSystem& sys, const ReductionArtifacts& art,
                                      const ProbabilisticChoice& choice, const GroebnerLimits& limits = {}) {
  auto rec = run_pipeline(sys, Source::inf, 0, "inf_prob", build_probabilistic_inf_ideal(sys, art, choice),
                          art.homogenizer, limits);
  VarietyUnion u(sys.context().parameter_space());
  if (!rec.discarded) u.add(Source::inf, rec.component);
  return u;
}

/// Deterministic V_inf: union of the n inf pipelines.
inline VarietyUnion deterministic_inf(const ParametricSystem& sys, const ReductionArtifacts& art,
                                      const GroebnerLimits& limits = {}) {
  VarietyUnion u(sys.context().parameter_space());
  for (std::size_t i = 1; i <= sys.unknowns().size(); ++i) {
    auto rec = run_pipeline(sys, Source::inf, i, "inf_" + std::to_string(i), build_inf_ideal(sys, i, art),
                            art.homogenizer, limits);
    if (!rec.discarded) u.add(Source::inf, rec.component);
  }
  return u;
}

}  // namespace discvar
