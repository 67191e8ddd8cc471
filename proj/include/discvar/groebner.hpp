#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "discvar/context.hpp"
#include "discvar/error.hpp"
#include "discvar/gcd.hpp"
#include "discvar/monomial.hpp"
#include "discvar/order.hpp"
#include "discvar/polynomial.hpp"
#include "discvar/rational.hpp"

namespace discvar {

/// Counters reported by every Groebner basis computation.
struct GroebnerStats {
  std::size_t pairs_created = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t product_criterion = 0;
  std::size_t chain_criterion = 0;
  unsigned long max_degree = 0;
  std::size_t basis_size = 0;
  std::size_t max_coeff_bits = 0;
  double seconds = 0.0;

  GroebnerStats& operator+=(const GroebnerStats& o) {
    pairs_created += o.pairs_created;
    pairs_reduced += o.pairs_reduced;
    zero_reductions += o.zero_reductions;
    product_criterion += o.product_criterion;
    chain_criterion += o.chain_criterion;
    max_degree = std::max(max_degree, o.max_degree);
    basis_size = std::max(basis_size, o.basis_size);
    max_coeff_bits = std::max(max_coeff_bits, o.max_coeff_bits);
    seconds += o.seconds;
    return *this;
  }
};

enum class PairSelection { normal, sugar };

/// Resource limits; zero means unlimited.
struct GroebnerLimits {
  std::size_t max_pairs = 0;
  std::size_t max_coeff_bits = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  PairSelection selection = PairSelection::normal;
  // Run non-graded orders on the homogenized ideal (see buchberger()).
  bool homogenize = true;
  // Let eliminate() answer two-generator ideals with a monic member by
  // linear algebra over the quotient (see monic_pair_elimination()).
  bool monic_pair_shortcut = true;

  static GroebnerLimits with_timeout(double seconds) {
    GroebnerLimits l;
    if (seconds > 0)
      l.deadline = std::chrono::steady_clock::now() +
                   std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                       std::chrono::duration<double>(seconds));
    return l;
  }
};

/// A Groebner computation hit a configured limit. Never a wrong answer.
class ResourceLimit : public Error {
 public:
  enum class Kind { timeout, pair_limit, coefficient_limit };

  ResourceLimit(Kind k, GroebnerStats partial)
      : Error(describe(k, partial)), kind_(k), stats_(partial) {}
  Kind kind() const noexcept { return kind_; }
  const GroebnerStats& partial_stats() const noexcept { return stats_; }

 private:
  static std::string describe(Kind k, const GroebnerStats& s) {
    std::string what = k == Kind::timeout       ? "Timeout"
                       : k == Kind::pair_limit ? "pair limit exceeded"
                                               : "MemoryLimit: coefficient size limit exceeded";
    return what + " after " + std::to_string(s.pairs_reduced) + " pairs (basis size " +
           std::to_string(s.basis_size) + ")";
  }
  Kind kind_;
  GroebnerStats stats_;
};

/// Finite list of generators in one context. When `basis_order()` is set the
/// generators form the reduced (monic, inter-reduced) Groebner basis under it.
class Ideal {
 public:
  Ideal() = default;
  explicit Ideal(VariableContext ctx) : ctx_(std::move(ctx)) {}
  Ideal(VariableContext ctx, std::vector<Polynomial> gens) : ctx_(std::move(ctx)) {
    for (auto& g : gens) add(std::move(g));
  }

  static Ideal basis(VariableContext ctx, std::vector<Polynomial> gens, MonomialOrder ord,
                     GroebnerStats stats = {}) {
    Ideal i(std::move(ctx), std::move(gens));
    i.order_ = std::move(ord);
    i.stats_ = stats;
    return i;
  }

  /// Appends a generator; zero and duplicate generators are dropped.
  void add(Polynomial p) {
    if (!(p.context() == ctx_)) throw ContextMismatch();
    order_.reset();
    if (p.is_zero()) return;
    if (std::find(gens_.begin(), gens_.end(), p) != gens_.end()) return;
    gens_.push_back(std::move(p));
  }

  const VariableContext& context() const noexcept { return ctx_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }
  const std::optional<MonomialOrder>& basis_order() const noexcept { return order_; }
  const GroebnerStats& stats() const noexcept { return stats_; }
  void set_stats(const GroebnerStats& s) { stats_ = s; }

  std::size_t size() const noexcept { return gens_.size(); }
  /// The zero ideal (empty generator list): its variety is the whole space.
  bool is_zero() const noexcept { return gens_.empty(); }
  /// Contains a nonzero constant generator.
  bool has_unit() const {
    return std::any_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_constant(); });
  }

  Ideal embed(const VariableContext& target) const {
    Ideal r(target);
    for (const auto& g : gens_) r.add(g.embed(target));
    return r;
  }

  std::string to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
    return s + ">";
  }

 private:
  VariableContext ctx_;
  std::vector<Polynomial> gens_;
  std::optional<MonomialOrder> order_;
  GroebnerStats stats_;
};

/// Ideal plus the ordered set of variables to keep.
struct EliminationTask {
  Ideal ideal;
  std::vector<std::string> keep;
};

namespace detail::gb {

using Coeff = mpz_class;

// Monomial layout: [order key (n)] [exponents (n)], all int32, so that
// multiplication is elementwise addition and comparison is lexicographic on
// the key prefix.
struct Ring {
  std::size_t n = 0;
  MonomialOrder order = MonomialOrder::grevlex(0);

  Ring(std::size_t nvars, MonomialOrder ord) : n(nvars), order(std::move(ord)) {}
  std::size_t width() const { return 2 * n; }

  int compare(const std::int32_t* a, const std::int32_t* b) const {
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
  bool divides(const std::int32_t* a, const std::int32_t* b) const {
    for (std::size_t i = n; i < 2 * n; ++i)
      if (a[i] > b[i]) return false;
    return true;
  }
  bool same(const std::int32_t* a, const std::int32_t* b) const {
    for (std::size_t i = n; i < 2 * n; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }
  std::uint64_t mask(const std::int32_t* a) const {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (a[n + i]) m |= std::uint64_t{1} << (i % 64);
    return m;
  }
  unsigned long degree(const std::int32_t* a) const {
    unsigned long d = 0;
    for (std::size_t i = 0; i < n; ++i) d += static_cast<unsigned long>(a[n + i]);
    return d;
  }
  void encode_from_exps(std::int32_t* a) const { order.encode(a + n, a); }
  void quotient(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const {
    for (std::size_t i = 0; i < 2 * n; ++i) out[i] = a[i] - b[i];
  }
  void lcm(const std::int32_t* a, const std::int32_t* b, std::int32_t* out) const {
    for (std::size_t i = 0; i < n; ++i) out[n + i] = std::max(a[n + i], b[n + i]);
    encode_from_exps(out);
  }
  bool coprime(const std::int32_t* a, const std::int32_t* b) const {
    for (std::size_t i = n; i < 2 * n; ++i)
      if (a[i] && b[i]) return false;
    return true;
  }
};

// Integer polynomial, terms strictly decreasing under the ring order.
struct Poly {
  std::vector<std::int32_t> mons;
  std::vector<Coeff> coefs;
  unsigned long sugar = 0;

  std::size_t size() const { return coefs.size(); }
  bool empty() const { return coefs.empty(); }
  const std::int32_t* mon(std::size_t i, std::size_t w) const { return mons.data() + i * w; }
};

inline std::size_t max_bits(const Poly& p) {
  std::size_t b = 0;
  for (const auto& c : p.coefs) b = std::max(b, bit_size(c));
  return b;
}

inline void make_primitive(Poly& p) {
  if (p.empty()) return;
  Coeff g = 0;
  for (const auto& c : p.coefs) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (p.coefs.front() < 0) g = -g;
  if (g != 1)
    for (auto& c : p.coefs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// Integer multiple of p (tracked in `scale`: result = scale * p).
inline Poly from_polynomial(const Ring& R, const Polynomial& p, mpq_class* scale = nullptr) {
  const std::size_t w = R.width();
  Integer den = 1;
  for (const auto& [m, c] : p.terms()) den = lcm(den, c.denominator());
  std::vector<std::pair<std::vector<std::int32_t>, Coeff>> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::int32_t> mono(w);
    for (std::size_t i = 0; i < R.n; ++i) mono[R.n + i] = static_cast<std::int32_t>(m[i]);
    R.encode_from_exps(mono.data());
    terms.emplace_back(std::move(mono), c.numerator() * (den / c.denominator()));
  }
  std::sort(terms.begin(), terms.end(),
            [&](const auto& a, const auto& b) { return R.compare(a.first.data(), b.first.data()) > 0; });
  Poly out;
  out.mons.reserve(terms.size() * w);
  for (auto& [m, c] : terms) {
    out.mons.insert(out.mons.end(), m.begin(), m.end());
    out.coefs.push_back(std::move(c));
  }
  if (scale) *scale = mpq_class(den);
  if (!out.empty()) out.sugar = R.degree(out.mon(0, w));
  for (std::size_t i = 1; i < out.size(); ++i) out.sugar = std::max(out.sugar, R.degree(out.mon(i, w)));
  return out;
}

inline Polynomial to_polynomial(const Ring& R, const Poly& p, const VariableContext& ctx) {
  const std::size_t w = R.width();
  Polynomial::Terms terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Monomial m(R.n);
    const auto* a = p.mon(i, w);
    for (std::size_t k = 0; k < R.n; ++k) m[k] = static_cast<Monomial::exponent_type>(a[R.n + k]);
    terms.emplace(std::move(m), Rational(p.coefs[i]));
  }
  return Polynomial(ctx, std::move(terms));
}

// a * f[fh..] - b * (m * g[gh..]).
inline Poly combine(const Ring& R, const Poly& f, std::size_t fh, const Coeff& a, const std::int32_t* m,
                    const Poly& g, std::size_t gh, const Coeff& b) {
  const std::size_t w = R.width();
  Poly out;
  out.mons.reserve((f.size() - fh + g.size() - gh) * w);
  out.coefs.reserve(f.size() - fh + g.size() - gh);
  std::vector<std::int32_t> prod(w);
  std::size_t i = fh, j = gh;
  bool have_prod = false;
  Coeff tmp;
  auto load = [&]() {
    if (j < g.size()) {
      const auto* gm = g.mon(j, w);
      for (std::size_t k = 0; k < w; ++k) prod[k] = gm[k] + m[k];
      have_prod = true;
    } else {
      have_prod = false;
    }
  };
  load();
  while (i < f.size() || have_prod) {
    int c;
    if (i >= f.size()) c = -1;
    else if (!have_prod) c = 1;
    else c = R.compare(f.mon(i, w), prod.data());
    if (c > 0) {
      const auto* fm = f.mon(i, w);
      out.mons.insert(out.mons.end(), fm, fm + w);
      out.coefs.emplace_back(a * f.coefs[i]);
      ++i;
    } else if (c < 0) {
      out.mons.insert(out.mons.end(), prod.begin(), prod.end());
      out.coefs.emplace_back(-(b * g.coefs[j]));
      ++j;
      load();
    } else {
      tmp = a * f.coefs[i];
      mpz_submul(tmp.get_mpz_t(), b.get_mpz_t(), g.coefs[j].get_mpz_t());
      if (tmp != 0) {
        out.mons.insert(out.mons.end(), prod.begin(), prod.end());
        out.coefs.push_back(tmp);
      }
      ++i;
      ++j;
      load();
    }
  }
  return out;
}

class Engine {
 public:
  Engine(Ring ring, GroebnerLimits limits) : R_(std::move(ring)), limits_(limits), w_(R_.width()) {}

  const Ring& ring() const { return R_; }

  // Adds reducers without computing pairs (for normal forms against a known basis).
  void load_basis(std::vector<Poly> polys) {
    for (auto& p : polys) {
      if (p.empty()) continue;
      polys_.push_back(std::move(p));
      std::size_t k = polys_.size() - 1;
      masks_.push_back(R_.mask(polys_[k].mon(0, w_)));
      active_.push_back(k);
    }
  }

  // Full reduction of f modulo the active basis. When `scale` is given it
  // is updated so that (result) = scale' * (input) modulo the ideal, where
  // scale' = scale * (accumulated factor).
  Poly reduce(Poly f, mpq_class* scale = nullptr) {
    Poly r;
    std::size_t steps = 0;
    std::size_t fh = 0;
    while (fh < f.size()) {
      const auto* lead = f.mon(fh, w_);
      auto div = find_reducer(lead);
      if (!div) {
        r.mons.insert(r.mons.end(), lead, lead + w_);
        r.coefs.push_back(std::move(f.coefs[fh]));
        ++fh;
        continue;
      }
      const Poly& g = polys_[*div];
      std::vector<std::int32_t> m(w_);
      R_.quotient(lead, g.mon(0, w_), m.data());
      Coeff l = gcd(f.coefs[fh], g.coefs[0]);
      Coeff a = g.coefs[0] / l;
      Coeff b = f.coefs[fh] / l;
      if (a < 0) {
        a = -a;
        b = -b;
      }
      unsigned long sug = std::max(f.sugar, g.sugar + R_.degree(m.data()));
      Poly nf = combine(R_, f, fh + 1, a, m.data(), g, 1, b);
      nf.sugar = sug;
      if (a != 1) {
        for (auto& c : r.coefs) c *= a;
        if (scale) *scale *= a;
      }
      f = std::move(nf);
      fh = 0;
      if (++steps % 32 == 0) {
        check_deadline();
        shrink(r, f, scale);
      }
    }
    r.sugar = f.sugar;
    make_primitive_tracked(r, scale);
    return r;
  }

  // Buchberger with Gebauer-Moeller pair management. Returns false if the
  // ideal turned out to be the unit ideal.
  bool run(std::vector<Poly> input) {
    // Insert smallest leading terms first, each reduced by what came before.
    std::sort(input.begin(), input.end(), [&](const Poly& a, const Poly& b) {
      if (a.empty() != b.empty()) return b.empty();
      if (a.empty()) return false;
      return R_.compare(a.mon(0, w_), b.mon(0, w_)) < 0;
    });
    for (auto& f : input) {
      if (f.empty()) continue;
      make_primitive(f);
      Poly h = reduce(std::move(f));
      if (h.empty()) continue;
      if (is_constant(h)) return unit();
      insert(std::move(h));
    }
    while (!pairs_.empty()) {
      check_deadline();
      if (limits_.max_pairs && stats_.pairs_reduced >= limits_.max_pairs)
        throw ResourceLimit(ResourceLimit::Kind::pair_limit, finish_stats());
      std::size_t best = select();
      Pair p = std::move(pairs_[best]);
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      ++stats_.pairs_reduced;
      stats_.max_degree = std::max(stats_.max_degree, p.degree);
      Poly s = spoly(p);
      Poly h = reduce(std::move(s));
      if (h.empty()) {
        ++stats_.zero_reductions;
        continue;
      }
      if (is_constant(h)) return unit();
      std::size_t bits = max_bits(h);
      stats_.max_coeff_bits = std::max(stats_.max_coeff_bits, bits);
      if (limits_.max_coeff_bits && bits > limits_.max_coeff_bits)
        throw ResourceLimit(ResourceLimit::Kind::coefficient_limit, finish_stats());
      insert(std::move(h));
    }
    return true;
  }

  // Reduced basis: inter-reduced active elements sorted by increasing
  // leading monomial.
  std::vector<Poly> reduced_basis() {
    std::vector<std::size_t> act = active_;
    std::sort(act.begin(), act.end(), [&](std::size_t a, std::size_t b) {
      return R_.compare(polys_[a].mon(0, w_), polys_[b].mon(0, w_)) < 0;
    });
    std::vector<Poly> out;
    for (std::size_t k : act) {
      const Poly& g = polys_[k];
      // Tail reduction only: the leading monomial is minimal-irreducible.
      Poly tail;
      tail.mons.assign(g.mons.begin() + static_cast<std::ptrdiff_t>(w_), g.mons.end());
      tail.coefs.assign(g.coefs.begin() + 1, g.coefs.end());
      mpq_class scale = 1;
      Poly rt = reduce_excluding(std::move(tail), k, &scale);
      // rt = scale * tail modulo the others (scale is an integer here), so
      // scale * g reduces to scale * lt + rt.
      Poly res;
      const auto* lm = g.mon(0, w_);
      res.mons.insert(res.mons.end(), lm, lm + w_);
      res.coefs.push_back(g.coefs[0] * scale.get_num());
      res.mons.insert(res.mons.end(), rt.mons.begin(), rt.mons.end());
      for (auto& c : rt.coefs) res.coefs.push_back(std::move(c));
      make_primitive(res);
      out.push_back(std::move(res));
    }
    return out;
  }

  GroebnerStats finish_stats() {
    stats_.basis_size = active_.size();
    return stats_;
  }

  bool unit_ideal() const { return unit_; }

 private:
  struct Pair {
    std::size_t i, j;
    std::vector<std::int32_t> lcm;
    unsigned long degree;
    unsigned long sugar;
  };

  bool is_constant(const Poly& h) const { return h.size() == 1 && R_.degree(h.mon(0, w_)) == 0; }

  bool unit() {
    unit_ = true;
    polys_.clear();
    masks_.clear();
    active_.clear();
    pairs_.clear();
    Poly one;
    one.mons.assign(w_, 0);
    one.coefs.push_back(1);
    polys_.push_back(std::move(one));
    masks_.push_back(0);
    active_.push_back(0);
    return false;
  }

  void check_deadline() {
    if (limits_.deadline && std::chrono::steady_clock::now() > *limits_.deadline)
      throw ResourceLimit(ResourceLimit::Kind::timeout, finish_stats());
  }

  void make_primitive_tracked(Poly& r, mpq_class* scale) {
    if (r.empty()) return;
    Coeff g = 0;
    for (const auto& c : r.coefs) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
      if (g == 1) break;
    }
    if (g != 1) {
      for (auto& c : r.coefs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
      if (scale) *scale /= g;
    }
  }

  // Divide the common content of r and f out of both.
  void shrink(Poly& r, Poly& f, mpq_class* scale) {
    Coeff g = 0;
    for (const auto* p : {&r, &f})
      for (const auto& c : p->coefs) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) return;
      }
    if (g == 0) return;
    for (auto* p : {&r, &f})
      for (auto& c : p->coefs) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    if (scale) *scale /= g;
  }

  std::optional<std::size_t> find_reducer(const std::int32_t* t, std::size_t exclude = SIZE_MAX) const {
    const std::uint64_t tm = R_.mask(t);
    std::optional<std::size_t> best;
    for (std::size_t idx = 0; idx < active_.size(); ++idx) {
      std::size_t k = active_[idx];
      if (k == exclude) continue;
      if ((masks_[idx] & ~tm) != 0) continue;
      if (!R_.divides(polys_[k].mon(0, w_), t)) continue;
      if (!best || polys_[k].size() < polys_[*best].size()) best = k;
    }
    return best;
  }

  Poly reduce_excluding(Poly f, std::size_t exclude, mpq_class* scale) {
    Poly r;
    std::size_t fh = 0;
    while (fh < f.size()) {
      const auto* lead = f.mon(fh, w_);
      auto div = find_reducer(lead, exclude);
      if (!div) {
        r.mons.insert(r.mons.end(), lead, lead + w_);
        r.coefs.push_back(std::move(f.coefs[fh]));
        ++fh;
        continue;
      }
      const Poly& g = polys_[*div];
      std::vector<std::int32_t> m(w_);
      R_.quotient(lead, g.mon(0, w_), m.data());
      Coeff l = gcd(f.coefs[fh], g.coefs[0]);
      Coeff a = g.coefs[0] / l;
      Coeff b = f.coefs[fh] / l;
      if (a < 0) {
        a = -a;
        b = -b;
      }
      Poly nf = combine(R_, f, fh + 1, a, m.data(), g, 1, b);
      if (a != 1) {
        for (auto& c : r.coefs) c *= a;
        *scale *= a;
      }
      f = std::move(nf);
      fh = 0;
    }
    return r;
  }

  Poly spoly(const Pair& p) {
    const Poly& f = polys_[p.i];
    const Poly& g = polys_[p.j];
    std::vector<std::int32_t> mf(w_), mg(w_);
    R_.quotient(p.lcm.data(), f.mon(0, w_), mf.data());
    R_.quotient(p.lcm.data(), g.mon(0, w_), mg.data());
    Coeff l = gcd(f.coefs[0], g.coefs[0]);
    Coeff a = g.coefs[0] / l;
    Coeff b = f.coefs[0] / l;
    // a * mf * f - b * mg * g, leading terms cancel.
    Poly shifted;
    shifted.mons.reserve(f.mons.size());
    for (std::size_t t = 1; t < f.size(); ++t) {
      const auto* fm = f.mon(t, w_);
      for (std::size_t k = 0; k < w_; ++k) shifted.mons.push_back(fm[k] + mf[k]);
      shifted.coefs.push_back(f.coefs[t]);
    }
    Poly s = combine(R_, shifted, 0, a, mg.data(), g, 1, b);
    s.sugar = p.sugar;
    make_primitive(s);
    return s;
  }

  std::size_t select() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      bool better;
      if (limits_.selection == PairSelection::sugar && a.sugar != b.sugar) better = a.sugar < b.sugar;
      else if (a.degree != b.degree) better = a.degree < b.degree;
      else if (a.j != b.j) better = a.j < b.j;
      else better = a.i < b.i;
      if (better) best = k;
    }
    return best;
  }

  void insert(Poly h) {
    polys_.push_back(std::move(h));
    const std::size_t k = polys_.size() - 1;
    const auto* hl = polys_[k].mon(0, w_);
    const unsigned long hdeg = R_.degree(hl);

    struct Cand {
      std::size_t g;
      std::vector<std::int32_t> lcm;
      bool coprime;
      bool keep = false;
    };
    std::vector<Cand> C;
    C.reserve(active_.size());
    for (std::size_t g : active_) {
      Cand c{g, std::vector<std::int32_t>(w_), R_.coprime(polys_[g].mon(0, w_), hl)};
      R_.lcm(polys_[g].mon(0, w_), hl, c.lcm.data());
      C.push_back(std::move(c));
    }
    stats_.pairs_created += C.size();
    std::vector<std::size_t> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      bool keep = C[a].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (R_.divides(C[b].lcm.data(), C[a].lcm.data())) keep = false;
        for (std::size_t b : D) {
          if (!keep) break;
          if (R_.divides(C[b].lcm.data(), C[a].lcm.data())) keep = false;
        }
      }
      if (keep) D.push_back(a);
      else ++stats_.chain_criterion;
    }
    std::vector<Pair> fresh;
    for (std::size_t a : D) {
      if (C[a].coprime) {
        ++stats_.product_criterion;
        continue;
      }
      const Poly& g = polys_[C[a].g];
      unsigned long d = R_.degree(C[a].lcm.data());
      unsigned long sug = std::max(g.sugar + d - R_.degree(g.mon(0, w_)), polys_[k].sugar + d - hdeg);
      fresh.push_back(Pair{C[a].g, k, std::move(C[a].lcm), d, sug});
    }
    std::vector<Pair> kept;
    kept.reserve(pairs_.size() + fresh.size());
    std::vector<std::int32_t> tmp(w_);
    for (auto& p : pairs_) {
      bool drop = false;
      if (R_.divides(hl, p.lcm.data())) {
        R_.lcm(polys_[p.i].mon(0, w_), hl, tmp.data());
        bool eq_i = R_.same(tmp.data(), p.lcm.data());
        R_.lcm(polys_[p.j].mon(0, w_), hl, tmp.data());
        bool eq_j = R_.same(tmp.data(), p.lcm.data());
        drop = !eq_i && !eq_j;
      }
      if (drop) ++stats_.chain_criterion;
      else kept.push_back(std::move(p));
    }
    for (auto& p : fresh) kept.push_back(std::move(p));
    pairs_ = std::move(kept);

    std::vector<std::size_t> act;
    std::vector<std::uint64_t> msk;
    for (std::size_t idx = 0; idx < active_.size(); ++idx) {
      std::size_t g = active_[idx];
      if (R_.divides(hl, polys_[g].mon(0, w_))) continue;
      act.push_back(g);
      msk.push_back(masks_[idx]);
    }
    act.push_back(k);
    msk.push_back(R_.mask(hl));
    active_ = std::move(act);
    masks_ = std::move(msk);
    stats_.basis_size = std::max(stats_.basis_size, active_.size());
  }

  Ring R_;
  GroebnerLimits limits_;
  std::size_t w_;
  std::deque<Poly> polys_;
  std::vector<std::size_t> active_;
  std::vector<std::uint64_t> masks_;
  std::vector<Pair> pairs_;
  GroebnerStats stats_;
  bool unit_ = false;
};

}  // namespace detail::gb

namespace detail::gb {

inline bool graded(const MonomialOrder& ord) {
  return ord.kind() == OrderKind::grevlex || (ord.blocks().size() == 1 && ord.nvars() <= 1);
}

inline bool all_homogeneous(const Ideal& I) {
  std::vector<std::size_t> all(I.context().size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return std::all_of(I.generators().begin(), I.generators().end(),
                     [&](const Polynomial& g) { return g.is_homogeneous_in(all); });
}

// Minimal, inter-reduced form of a Groebner basis under R's order.
inline std::vector<Poly> reduce_known_basis(const Ring& R, std::vector<Poly> G) {
  const std::size_t w = R.width();
  for (auto& g : G) make_primitive(g);
  std::sort(G.begin(), G.end(), [&](const Poly& a, const Poly& b) {
    int c = R.compare(a.mon(0, w), b.mon(0, w));
    return c != 0 ? c < 0 : a.size() < b.size();
  });
  std::vector<Poly> minimal;
  for (auto& g : G) {
    bool redundant = false;
    for (const auto& m : minimal)
      if (R.divides(m.mon(0, w), g.mon(0, w))) {
        redundant = true;
        break;
      }
    if (!redundant) minimal.push_back(std::move(g));
  }
  Engine E(R, GroebnerLimits{});
  E.load_basis(std::move(minimal));
  return E.reduced_basis();
}

}  // namespace detail::gb

/// Reduced Groebner basis of `I` under `ord` (Buchberger, normal selection,
/// product and chain criteria). The zero ideal is returned with the order
/// attached and no generators.
///
/// For orders that are not graded and inhomogeneous input, the generators
/// are homogenized by a fresh variable H and the basis is computed under
/// "ord, then H" and dehomogenized; normal selection then runs degree by
/// degree, which avoids the tail-degree blowup of direct block-order runs.
inline Ideal buchberger(const Ideal& I, const MonomialOrder& ord, const GroebnerLimits& limits = {}) {
  using namespace detail::gb;
  if (ord.nvars() != I.context().size()) throw ContextMismatch();
  auto t0 = std::chrono::steady_clock::now();
  const auto& ctx = I.context();
  std::vector<Poly> basis;
  GroebnerStats st;
  Ring R(ctx.size(), ord);
  if (limits.homogenize && !graded(ord) && !all_homogeneous(I) && !I.has_unit()) {
    const std::size_t n = ctx.size();
    std::vector<OrderBlock> blocks = ord.blocks();
    blocks.push_back(OrderBlock{{n}, InnerOrder::lex});
    Ring RH(n + 1, MonomialOrder::block(n + 1, std::move(blocks)));
    VariableContext hctx = ctx.with_auxiliary(ctx.fresh_name("H"));
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    Engine E(RH, limits);
    std::vector<Poly> input;
    for (const auto& g : I.generators()) {
      Polynomial gh(hctx);
      const unsigned long d = g.total_degree().value();
      for (const auto& [m, c] : g.terms()) {
        Monomial t(n + 1);
        for (std::size_t i = 0; i < n; ++i) t[i] = m[i];
        t[n] = static_cast<Monomial::exponent_type>(d - m.degree());
        gh.add_term(t, c);
      }
      input.push_back(from_polynomial(RH, gh));
    }
    E.run(std::move(input));
    st = E.finish_stats();
    std::vector<Poly> dehom;
    for (const auto& p : E.reduced_basis()) {
      Polynomial q = to_polynomial(RH, p, hctx).substitute(n, Rational(1)).embed(ctx);
      if (q.is_zero()) continue;
      dehom.push_back(from_polynomial(R, q));
    }
    basis = reduce_known_basis(R, std::move(dehom));
  } else {
    Engine E(R, limits);
    std::vector<Poly> input;
    for (const auto& g : I.generators()) input.push_back(from_polynomial(R, g));
    E.run(std::move(input));
    basis = E.reduced_basis();
    st = E.finish_stats();
  }
  std::vector<Polynomial> gens;
  for (const auto& p : basis) gens.push_back(to_polynomial(R, p, ctx).monic(ord));
  if (std::any_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.is_constant(); }))
    gens = {Polynomial::constant(ctx, Rational(1))};
  st.basis_size = gens.size();
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return Ideal::basis(ctx, std::move(gens), ord, st);
}

/// Remainder of p modulo the Groebner basis G (exact, unique for reduced G).
inline Polynomial normal_form(const Polynomial& p, const Ideal& G) {
  using namespace detail::gb;
  if (!G.basis_order()) throw MissingOrder();
  if (!(p.context() == G.context())) throw ContextMismatch();
  if (p.is_zero()) return p;
  Ring R(G.context().size(), *G.basis_order());
  Engine E(R, GroebnerLimits{});
  std::vector<Poly> basis;
  for (const auto& g : G.generators()) {
    Poly q = from_polynomial(R, g);
    make_primitive(q);
    basis.push_back(std::move(q));
  }
  E.load_basis(std::move(basis));
  mpq_class scale = 1;
  Poly f = from_polynomial(R, p, &scale);
  Poly r = E.reduce(std::move(f), &scale);
  Polynomial out = to_polynomial(R, r, G.context());
  out *= Rational(mpq_class(1 / scale));
  return out;
}

namespace detail::gb {

inline void check_deadline(const GroebnerLimits& limits) {
  if (limits.deadline && std::chrono::steady_clock::now() > *limits.deadline)
    throw ResourceLimit(ResourceLimit::Kind::timeout, GroebnerStats{});
}

// Fraction-free Gaussian elimination; every division is exact.
inline Polynomial bareiss_determinant(std::vector<std::vector<Polynomial>> a, const VariableContext& ctx,
                                      const GroebnerLimits& limits) {
  const std::size_t n = a.size();
  Polynomial prev = Polynomial::constant(ctx, Rational(1));
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k].is_zero()) ++p;
    if (p == n) return Polynomial(ctx);
    if (p != k) {
      std::swap(a[p], a[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      check_deadline(limits);
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = detail::exact_quotient(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev);
    }
    prev = a[k][k];
  }
  if (n == 0) return prev;
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

// Generator of {r : M v = r e_1 solvable} when det M != 0. By Cramer that
// means det M | r adj(M)_(k,1) for every k, so it is det M over
// gcd(det M, adj(M) e_1).
inline std::optional<Polynomial> first_column_generator(const std::vector<std::vector<Polynomial>>& M,
                                                        const VariableContext& ctx, const GroebnerLimits& limits) {
  const std::size_t n = M.size();
  check_deadline(limits);
  Polynomial det = bareiss_determinant(M, ctx, limits);
  if (det.is_zero()) return std::nullopt;
  Polynomial g = det;
  for (std::size_t k = 0; k < n && !g.is_constant(); ++k) {
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) row.push_back(M[i][j]);
      minor.push_back(std::move(row));
    }
    g = gcd(g, bareiss_determinant(std::move(minor), ctx, limits));
  }
  return detail::exact_quotient(det, g);
}

// Several eliminated variables: <G0, h> with G0 as many generators as
// active variables, whose top forms in those variables have constant
// coefficients and meet only at the origin. When the block-order basis of
// G0 has all its leading terms in the eliminated variables, the quotient is
// free over Q[keep] on the standard monomials and the argument above
// applies to multiplication by h.
inline std::optional<Polynomial> free_quotient_generator(const std::vector<Polynomial>& rest,
                                                         const std::vector<std::size_t>& active,
                                                         const VariableContext& ctx, const GroebnerLimits& limits) {
  constexpr std::size_t kMaxRank = 64;
  const std::size_t nv = ctx.size();
  std::vector<bool> is_active(nv, false);
  for (auto v : active) is_active[v] = true;
  std::vector<std::size_t> others;
  for (std::size_t v = 0; v < nv; ++v)
    if (!is_active[v]) others.push_back(v);
  auto elim_degree = [&](const Monomial& m) {
    unsigned long d = 0;
    for (auto v : active) d += m[v];
    return d;
  };
  auto only_active = [&](const Monomial& m) {
    return std::all_of(others.begin(), others.end(), [&](std::size_t v) { return m[v] == 0; });
  };
  const auto grevlex = MonomialOrder::grevlex(nv);
  const auto block = MonomialOrder::elimination(nv, active, others);

  for (std::size_t h = 0; h < rest.size(); ++h) {
    std::vector<Polynomial> G0;
    for (std::size_t k = 0; k < rest.size(); ++k)
      if (k != h) G0.push_back(rest[k]);
    if (G0.size() != active.size()) continue;
    bool ok = true;
    std::vector<Polynomial> tops;
    unsigned long bezout = 1;
    for (const auto& g : G0) {
      unsigned long D = 0;
      for (const auto& [m, c] : g.terms()) D = std::max(D, elim_degree(m));
      Polynomial t(ctx);
      for (const auto& [m, c] : g.terms())
        if (elim_degree(m) == D) {
          ok &= only_active(m);
          t.add_term(m, c);
        }
      ok &= D > 0;
      bezout *= D;
      tops.push_back(std::move(t));
    }
    if (!ok || bezout > kMaxRank) continue;
    auto pure_power_bounds = [&](const Ideal& G, const MonomialOrder& ord) {
      std::vector<Monomial::exponent_type> box(nv, 0);
      for (const auto& g : G.generators()) {
        const Monomial m = g.leading_term(ord).first;
        for (auto v : active)
          if (m[v] == m.degree() && m[v] > 0 && (box[v] == 0 || m[v] < box[v])) box[v] = m[v];
      }
      return box;
    };
    Ideal T = buchberger(Ideal(ctx, tops), grevlex, limits);
    auto tbox = pure_power_bounds(T, grevlex);
    if (std::any_of(active.begin(), active.end(), [&](std::size_t v) { return tbox[v] == 0; })) continue;

    Ideal G = buchberger(Ideal(ctx, G0), block, limits);
    std::vector<Monomial> leads;
    for (const auto& g : G.generators()) leads.push_back(g.leading_term(block).first);
    if (!std::all_of(leads.begin(), leads.end(), only_active)) continue;
    auto box = pure_power_bounds(G, block);
    if (std::any_of(active.begin(), active.end(), [&](std::size_t v) { return box[v] == 0; })) continue;

    // standard monomials, 1 first
    std::vector<Monomial> basis;
    Monomial m(nv);
    auto rec = [&](auto&& self, std::size_t a) -> void {
      if (a == active.size()) {
        if (std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); }))
          basis.push_back(m);
        return;
      }
      for (Monomial::exponent_type e = 0; e < box[active[a]]; ++e) {
        m[active[a]] = e;
        self(self, a + 1);
      }
      m[active[a]] = 0;
    };
    rec(rec, 0);
    if (basis.empty()) return Polynomial::constant(ctx, Rational(1));
    if (basis.size() != bezout) continue;

    const std::size_t n = basis.size();
    std::vector<std::vector<Polynomial>> M(n, std::vector<Polynomial>(n, Polynomial(ctx)));
    for (std::size_t j = 0; j < n; ++j) {
      check_deadline(limits);
      const Polynomial r = normal_form(rest[h].mul_monomial(basis[j], Rational(1)), G);
      for (const auto& [t, c] : r.terms()) {
        Monomial e(nv), k(nv);
        for (std::size_t v = 0; v < nv; ++v) (is_active[v] ? e : k)[v] = t[v];
        const auto i = static_cast<std::size_t>(std::find(basis.begin(), basis.end(), e) - basis.begin());
        M[i][j].add_term(k, c);
      }
    }
    if (auto p = first_column_generator(M, ctx, limits)) return p;
  }
  return std::nullopt;
}

// Elimination without Buchberger for a few shapes of ideal. First,
// generators c*v + q with v eliminated, c a nonzero constant and q free of
// v are used to substitute v away, which keeps the elimination ideal
// unchanged. Rabinowitsch generators become a final saturation. If what is
// left is <f1, f2> with a single eliminated variable z and f1 of constant
// leading coefficient in z, then A = Q[keep][z]/<f1> is free with basis
// 1, z, ..., z^(n-1) and r lies in the ideal iff M v = r e_1 has a solution
// over Q[keep], M the matrix of multiplication by f2; see
// first_column_generator(). free_quotient_generator() does the same with
// several eliminated variables. Returns nullopt when the ideal has none of
// these shapes or det M = 0.
inline std::optional<std::vector<Polynomial>> monic_pair_elimination(const Ideal& I, std::vector<std::size_t> elim,
                                                                     const GroebnerLimits& limits = {}) {
  const auto& ctx = I.context();
  std::vector<Polynomial> gens = I.generators();
  auto constant_coefficient = [](const Univariate& u, std::size_t e) -> std::optional<Rational> {
    if (u.size() <= e || !u[e].is_constant() || u[e].is_zero()) return std::nullopt;
    return u[e].constant_term();
  };
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t k = 0; k < gens.size() && !progress; ++k)
      for (auto it = elim.begin(); it != elim.end() && !progress; ++it) {
        auto u = to_univariate(gens[k], *it);
        if (udeg(u) != 1) continue;
        auto c = constant_coefficient(u, 1);
        if (!c) continue;
        Polynomial q = u[0] * (Rational(-1) / *c);
        const std::size_t v = *it;
        gens.erase(gens.begin() + static_cast<long>(k));
        for (auto& g : gens) g = g.substitute(v, q);
        elim.erase(it);
        progress = true;
      }
  }
  std::vector<Polynomial> rest;
  for (auto& g : gens)
    if (!g.is_zero() && std::find(rest.begin(), rest.end(), g) == rest.end()) rest.push_back(std::move(g));

  // Z*q + c with Z used nowhere else and q, c free of eliminated variables
  // (c a nonzero constant): since q lies in Q[keep], eliminating Z first
  // and saturating at the end give the same ideal.
  std::vector<Polynomial> saturate_by;
  for (std::size_t k = 0; k < rest.size();) {
    bool peeled = false;
    for (auto z : elim) {
      auto u = to_univariate(rest[k], z);
      if (udeg(u) != 1 || !u[0].is_constant() || u[0].is_zero()) continue;
      if (std::any_of(elim.begin(), elim.end(), [&](std::size_t v) { return u[1].degree_in(v).value() > 0; })) continue;
      bool elsewhere = false;
      for (std::size_t j = 0; j < rest.size(); ++j) elsewhere |= j != k && rest[j].degree_in(z).value() > 0;
      if (elsewhere) continue;
      saturate_by.push_back(u[1]);
      rest.erase(rest.begin() + static_cast<long>(k));
      peeled = true;
      break;
    }
    if (!peeled) ++k;
  }
  auto saturated = [&](Polynomial p) {
    for (const auto& q : saturate_by)
      for (Polynomial g = gcd(p, q); !g.is_constant(); g = gcd(p, q)) p = detail::exact_quotient(p, g);
    return std::vector<Polynomial>{p};
  };

  std::vector<std::size_t> active;
  for (auto v : elim)
    if (std::any_of(rest.begin(), rest.end(), [&](const Polynomial& g) { return g.degree_in(v).value() > 0; }))
      active.push_back(v);
  if (active.empty()) {
    if (saturate_by.empty() || rest.empty()) return rest;
    return std::nullopt;
  }
  if (active.size() > 1) {
    if (auto p = free_quotient_generator(rest, active, ctx, limits)) return saturated(*p);
    return std::nullopt;
  }
  if (rest.size() > 2) return std::nullopt;
  const std::size_t z = active.front();

  // f1: the generator with constant leading coefficient in z of least degree.
  std::optional<std::size_t> pick;
  for (std::size_t k = 0; k < rest.size(); ++k) {
    auto u = to_univariate(rest[k], z);
    if (udeg(u) < 1 || !constant_coefficient(u, u.size() - 1)) continue;
    if (!pick || udeg(u) < udeg(to_univariate(rest[*pick], z))) pick = k;
  }
  if (!pick) return std::nullopt;
  if (rest.size() == 1) return std::vector<Polynomial>{};  // A is free of rank >= 1 over Q[keep]
  const Univariate f1 = to_univariate(rest[*pick], z);
  const Rational lead = f1.back().constant_term();
  const std::size_t n = f1.size() - 1;

  auto reduce = [&](Univariate u) {
    trim(u);
    while (udeg(u) >= static_cast<long>(n)) {
      const std::size_t shift = u.size() - 1 - n;
      Polynomial c = u.back() * (Rational(1) / lead);
      for (std::size_t i = 0; i <= n; ++i) u[i + shift] -= c * f1[i];
      trim(u);
    }
    u.resize(n, Polynomial(ctx));
    return u;
  };
  std::vector<std::vector<Polynomial>> M(n, std::vector<Polynomial>(n, Polynomial(ctx)));
  Univariate column = reduce(to_univariate(rest[1 - *pick], z));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) M[i][j] = column[i];
    if (j + 1 < n) {
      column.insert(column.begin(), Polynomial(ctx));
      column = reduce(std::move(column));
    }
  }
  if (auto p = first_column_generator(M, ctx, limits)) return saturated(*p);
  return std::nullopt;
}

}  // namespace detail::gb

/// Generators of <I> intersected with Q[keep], via a block order with the
/// eliminated variables first. The result lives in the context restricted
/// to `keep` and is the reduced basis there under grevlex.
inline Ideal eliminate(const EliminationTask& task, const GroebnerLimits& limits = {}) {
  const auto& ctx = task.ideal.context();
  std::vector<std::size_t> keep_idx;
  std::vector<bool> kept(ctx.size(), false);
  for (const auto& n : task.keep) {
    auto i = ctx.index_of(n);
    if (kept[i]) throw Error("duplicate variable in keep list: " + n);
    kept[i] = true;
    keep_idx.push_back(i);
  }
  std::vector<std::size_t> elim_idx;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (!kept[i]) elim_idx.push_back(i);
  auto ord = MonomialOrder::elimination(ctx.size(), elim_idx, keep_idx);
  VariableContext narrow = ctx.restricted_to(task.keep);
  if (limits.monic_pair_shortcut) {
    if (auto gens = detail::gb::monic_pair_elimination(task.ideal, elim_idx, limits)) {
      std::vector<Polynomial> narrowed;
      for (const auto& g : *gens) narrowed.push_back(g.embed(narrow));
      return buchberger(Ideal(narrow, std::move(narrowed)), MonomialOrder::grevlex(narrow.size()), limits);
    }
  }
  Ideal G = buchberger(task.ideal, ord, limits);
  std::vector<Polynomial> gens;
  for (const auto& g : G.generators())
    if (g.supported_on(keep_idx)) gens.push_back(g.embed(narrow));
  GroebnerStats st = G.stats();
  Ideal out = buchberger(Ideal(narrow, std::move(gens)), MonomialOrder::grevlex(narrow.size()), limits);
  st += out.stats();
  st.basis_size = out.size();
  out.set_stats(st);
  return out;
}

/// Number of standard monomials of <I> under grevlex on `vars`, i.e. the
/// number of solutions counted with multiplicity; nullopt when infinite.
/// The generators must only involve `vars`.
inline std::optional<std::size_t> quotient_dimension(const Ideal& I, const std::vector<std::string>& vars,
                                                     const GroebnerLimits& limits = {}) {
  VariableContext sub = I.context().restricted_to(vars);
  Ideal J = I.embed(sub);
  const std::size_t n = sub.size();
  auto ord = MonomialOrder::grevlex(n);
  Ideal G = buchberger(J, ord, limits);
  if (G.has_unit()) return 0;
  if (G.is_zero()) {
    if (n == 0) return 1;
    return std::nullopt;
  }
  std::vector<Monomial> leads;
  for (const auto& g : G.generators()) leads.push_back(g.leading_term(ord).first);
  std::vector<Monomial::exponent_type> box(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    for (const auto& m : leads) {
      bool pure = m[v] > 0;
      for (std::size_t k = 0; k < n && pure; ++k)
        if (k != v && m[k]) pure = false;
      if (pure && (box[v] == 0 || m[v] < box[v])) box[v] = m[v];
    }
    if (box[v] == 0) return std::nullopt;
  }
  if (n == 0) return 1;
  std::size_t count = 0;
  Monomial cur(n);
  while (true) {
    bool standard = true;
    for (const auto& m : leads)
      if (m.divides(cur)) {
        standard = false;
        break;
      }
    if (standard) ++count;
    std::size_t v = 0;
    while (v < n) {
      if (++cur[v] < box[v]) break;
      cur[v] = 0;
      ++v;
    }
    if (v == n) break;
  }
  return count;
}

}  // namespace discvar
