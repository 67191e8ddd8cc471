// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails or overruns its budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "discvar/commands.hpp"
#include "discvar/io.hpp"
#include "support.hpp"

using namespace discvar;

namespace {

std::string sys(const std::string& name) { return std::string(DISCVAR_SYSTEMS_DIR) + "/" + name; }

VarietyUnion principal(const VariableContext& amb, const std::vector<std::string>& gens) {
  VarietyUnion u(amb);
  for (const auto& g : gens) u.add(Source::user, Ideal(amb, {parse_polynomial(g, amb)}));
  return u;
}

// Empty string on success, else what went wrong.
using Check = std::function<std::string()>;

int failures = 0;

void criterion(int id, const std::string& title, double budget, const Check& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string problem;
  try {
    problem = body();
  } catch (const std::exception& e) {
    problem = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (problem.empty() && secs > budget) problem = "over budget";
  if (!problem.empty()) ++failures;
  char line[512];
  std::snprintf(line, sizeof line, "criterion %d: %s  %-58s %9.2f s (budget %.0f s)", id,
                problem.empty() ? "PASS" : "FAIL", title.c_str(), secs, budget);
  std::cout << line;
  if (!problem.empty()) std::cout << "  " << problem;
  std::cout << std::endl;
}

std::string expect_equal(const VarietyUnion& got, const VarietyUnion& want, const std::string& what) {
  auto cmp = variety_equal(got, want);
  if (cmp.verdict == Verdict::equal) return {};
  std::string msg = what + ": " + to_string(cmp.verdict);
  for (const auto& w : cmp.witnesses) msg += std::string(" [") + w.side + " " + w.component.ideal.to_string() + "]";
  return msg;
}

const std::vector<std::string> kParamSextics{
    "y^6+60*y^4+768*y^2-4096+3*x^2*y^4-312*x^2*y^2+768*x^2+3*x^4*y^2+60*x^4+x^6",
    "x^6+48*x^4+768*x^2+4096+3*x^4*y^2-336*x^2*y^2+768*y^2+3*x^2*y^4+48*y^4+y^6"};

struct TableRow {
  const char* file;
  std::vector<std::string> expected;
};

const std::vector<TableRow> kTable{
    {"k1.json", {"z", "z - 3", "z - 9"}},
    {"l1.json", {"z + 9", "z", "z - 3", "z - 9"}},
    {"k4.json", {"x + 4", "x - 4", "x^2 - 8", "x^2 + 2"}},
    {"k5.json", {"x + 4", "x - 4", "x^2 - 8", "x^2 + 2"}},
    {"l4.json", {"x + 4", "x - 4", "x^2 - 8", "x"}},
    {"l5.json", {"x + 4", "x - 4", "x^2 - 8", "x"}},
};

std::vector<ParametricSystem> micro_systems() {
  return {ParametricSystem::parse({"t"}, {"x"}, {"x^2 - t"}), ParametricSystem::parse({"t"}, {"x"}, {"t*x - 1"}),
          ParametricSystem::parse({"t"}, {"x"}, {"x - t"}), ParametricSystem::parse({"t"}, {"x"}, {"x^2 - t"}, {"x"})};
}

// Principal components within their bound; total degree within bound_total.
std::string check_degrees(const ParametricSystem& s, const std::string& name) {
  auto res = minimal_discriminant_variety(s);
  unsigned long total = 0;
  for (const auto& p : res.pipelines) {
    if (p.discarded || p.component.size() != 1) continue;
    const auto deg = p.component.generators()[0].total_degree().value();
    const auto bound = p.source == Source::inf    ? res.degrees.bound_inf
                       : p.source == Source::ineq ? res.degrees.bound_ineq
                                                  : res.degrees.bound_crit;
    if (deg > bound) return name + ": " + p.name + " degree " + std::to_string(deg) + " > " + std::to_string(bound);
  }
  for (const auto& c : res.variety.components())
    if (c.ideal.size() == 1) total += c.ideal.generators()[0].total_degree().value();
  if (total > res.degrees.bound_total) return name + ": total degree over bound";
  return {};
}

}  // namespace

int main() {
  std::cout << "discvar acceptance run" << std::endl;

  criterion(1, "Enneper parametric surface", 600, [] {
    auto res = minimal_discriminant_variety(io::read_system(sys("enneper_param.json")));
    return expect_equal(res.variety, principal(res.variety.ambient(), kParamSextics), "enneper_param");
  });

  criterion(2, "Enneper implicit equation", 3600, [] {
    auto res = minimal_discriminant_variety(io::read_system(sys("enneper_implicit.json")));
    auto want = kParamSextics;
    for (const char* l : {"x - y", "y", "x + y", "x"}) want.push_back(l);
    return expect_equal(res.variety, principal(res.variety.ambient(), want), "enneper_implicit");
  });

  criterion(3, "Table 1 small systems (K1, L1, K4, K5, L4, L5)", 6 * 60, [] {
    for (const auto& row : kTable) {
      const auto t0 = std::chrono::steady_clock::now();
      auto res = minimal_discriminant_variety(io::read_system(sys(row.file)));
      if (std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > 60)
        return std::string(row.file) + ": over 60 s";
      auto err = expect_equal(res.variety, principal(res.variety.ambient(), row.expected), row.file);
      if (!err.empty()) return err;
    }
    return std::string();
  });

  criterion(4, "hand-derived micro-systems", 4, [] {
    auto sources = [](const DiscriminantResult& r) {
      std::string s;
      for (const auto& c : r.variety.components()) s += to_string(c.source) + c.ideal.to_string() + ";";
      return s;
    };
    auto systems = micro_systems();
    const std::vector<std::string> want{"crit<t>;", "inf<t>;", "", "ineq<t>;"};
    for (std::size_t k = 0; k < systems.size(); ++k) {
      const auto t0 = std::chrono::steady_clock::now();
      auto res = minimal_discriminant_variety(systems[k]);
      if (std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > 1)
        return "system " + std::to_string(k + 1) + " over 1 s";
      if (sources(res) != want[k]) return "system " + std::to_string(k + 1) + ": got " + sources(res);
      if (k == 3)
        for (const auto& p : res.pipelines)
          if (p.name == "crit" && !p.discarded) return std::string("V_crit not empty");
    }
    return std::string();
  });

  criterion(5, "component degrees within the degree bounds", 600, [] {
    std::vector<std::pair<std::string, ParametricSystem>> all;
    all.emplace_back("enneper_param", io::read_system(sys("enneper_param.json")));
    all.emplace_back("enneper_implicit", io::read_system(sys("enneper_implicit.json")));
    for (const auto& row : kTable) all.emplace_back(row.file, io::read_system(sys(row.file)));
    for (auto& s : micro_systems()) all.emplace_back("micro", s);
    for (const auto& [name, s] : all) {
      auto err = check_degrees(s, name);
      if (!err.empty()) return err;
    }
    auto enn = minimal_discriminant_variety(all.front().second);
    unsigned long total = 0;
    for (const auto& c : enn.variety.components()) total += c.ideal.generators()[0].total_degree().value();
    if (total != 12 || enn.degrees.bound_total_formula != 108)
      return "Enneper total " + std::to_string(total) + " vs bound " + std::to_string(enn.degrees.bound_total_formula);
    return std::string();
  });

  criterion(6, "probabilistic V_inf inside deterministic V_inf", 1200, [] {
    std::vector<ParametricSystem> all{io::read_system(sys("enneper_param.json"))};
    for (auto& s : micro_systems()) all.push_back(s);
    for (const auto& s : all) {
      auto art = build_artifacts(s);
      VarietyUnion det = deterministic_inf(s, art);
      int equal = 0;
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto v = variety_equal(probabilistic_inf(s, art, draw_choice(s, seed)), det).verdict;
        if (v != Verdict::equal && v != Verdict::a_strict_subset)
          return "seed " + std::to_string(seed) + ": not contained";
        equal += v == Verdict::equal;
      }
      if (equal == 0) return std::string("no seed reached equality");
    }
    return std::string();
  });

  criterion(7, "Groebner elimination agrees with the Macaulay oracle", 300, [] {
    auto rep = cross_validate(25, 1);
    const auto eq = rep.count(OracleCase::Status::equal), mm = rep.count(OracleCase::Status::mismatch);
    if (mm) return std::to_string(mm) + " mismatches";
    if (eq < 15) return "only " + std::to_string(eq) + " cases within limits";
    return std::string();
  });

  criterion(8, "duplicated equation: exit 2 and whole space", 1, [] {
    cli::GlobalOptions o;
    o.input = sys("duplicated.json");
    auto r = cli::cmd_compute(o);
    if (r.exit_code != cli::not_simple_or_unequal) return "exit code " + std::to_string(r.exit_code);
    auto j = io::json::parse(r.output);
    if (!j.at("whole_space").get<bool>() || j.at("generically_simple").get<bool>())
      return std::string("not reported as whole space");
    return std::string();
  });

  criterion(9, "saturation and split identities, ring and order laws", 300, [] {
    VariableContext c({"t"}, {"X0", "X1"});
    const Polynomial x0 = Polynomial::variable(c, "X0");
    std::mt19937_64 rng(2024);
    auto one = [](const Ideal& I) {
      VarietyUnion u(I.context());
      u.add(Source::user, I);
      return u;
    };
    for (int k = 0; k < 50; ++k) {
      Ideal J = test::random_homogeneous_ideal(rng, c);
      const std::string xi = k % 2 ? "X0" : "X1";
      Ideal a = eliminate(EliminationTask{saturate(J, Polynomial::variable(c, xi)), {"t"}});
      Ideal b = eliminate(EliminationTask{specialize(J, xi, Rational(1)), {"t"}});
      if (variety_equal(one(a), one(b)).verdict != Verdict::equal) return "basics fails on " + J.to_string();
    }
    for (int k = 0; k < 50; ++k) {
      Ideal J = test::random_homogeneous_ideal(rng, c);
      Ideal plus = J;
      plus.add(x0);
      VarietyUnion u(c);
      u.add(Source::user, plus);
      u.add(Source::user, saturate(J, x0));
      if (variety_equal(one(J), u).verdict != Verdict::equal) return "split fails on " + J.to_string();
    }
    VariableContext r({"a", "b"}, {"x", "y"});
    for (int k = 0; k < 1000; ++k) {
      const bool rational = k % 2;
      Polynomial p = test::random_polynomial(rng, r, 3, 4, rational), q = test::random_polynomial(rng, r, 3, 4, rational),
                 s = test::random_polynomial(rng, r, 3, 4, rational);
      if (p + q != q + p || p * q != q * p || (p + q) + s != p + (q + s) || (p * q) * s != p * (q * s) ||
          p * (q + s) != p * q + p * s || p - p != Polynomial(r) || p * Polynomial::constant(r, Rational(1)) != p)
        return "ring law fails at case " + std::to_string(k);
    }
    const MonomialOrder orders[] = {MonomialOrder::lex(4), MonomialOrder::grevlex(4),
                                    MonomialOrder::elimination(4, {2, 3}, {0, 1})};
    auto mono = [&] {
      Monomial m(4);
      for (std::size_t v = 0; v < 4; ++v) m[v] = static_cast<Monomial::exponent_type>(rng() % 4);
      return m;
    };
    for (int k = 0; k < 1000; ++k) {
      Monomial a = mono(), b = mono(), w = mono();
      for (const auto& o : orders) {
        const bool ab = o.less(a, b), ba = o.less(b, a);
        if (a == b ? (ab || ba) : ab == ba) return "order not total at case " + std::to_string(k);
        if (ab != o.less(a * w, b * w)) return "order not multiplicative at case " + std::to_string(k);
        if (!w.is_one() && !o.less(a, a * w)) return "order not a well-order at case " + std::to_string(k);
      }
    }
    return std::string();
  });

  std::cout << (failures ? std::to_string(failures) + " criteria failed" : std::string("all criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
