#pragma once

// Randomized verification suites over one diagram, and the report format
// shared by the CLI and the acceptance tests.
//
// Report:
//   CONFIG source=<src> depth=<D> seed=<S> samples=<K> rng=mt19937_64
//   SUITE <name> PASS|FAIL checks=<n> [counterexample=<text>]
//   RESULT PASS|FAIL

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aftail/af_tower.hpp"
#include "aftail/cylinder.hpp"
#include "aftail/diagram.hpp"
#include "aftail/diagram_io.hpp"
#include "aftail/expectation.hpp"
#include "aftail/groupoid.hpp"
#include "aftail/path_space.hpp"
#include "aftail/random.hpp"

namespace aftail {

struct VerifyConfig {
  std::string source;                // built-in name or diagram file path
  std::optional<std::size_t> depth;  // defaults: built-in default, or the file's depth
  std::uint64_t seed = 7;
  std::size_t samples = 20;
  std::vector<std::string> suites;  // empty runs every suite
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::size_t checks = 0;
  std::optional<std::string> counterexample;
  bool resource_failure = false;
};

struct VerifyReport {
  std::string source;
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::vector<SuiteResult> results;
  std::optional<std::string> resource_error;  // the path space itself exceeded the cap

  [[nodiscard]] bool passed() const {
    if (resource_error) return false;
    return std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.passed; });
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"validation", "combinatorics", "cylinder", "expectation",
                                              "matrix_units", "tower", "groupoid"};
  return names;
}

inline std::string format_report(const VerifyReport& r) {
  std::ostringstream out;
  out << "CONFIG source=" << r.source << " depth=" << r.depth << " seed=" << r.seed << " samples=" << r.samples
      << " rng=" << kRngName << '\n';
  if (r.resource_error) out << "RESOURCE " << *r.resource_error << '\n';
  for (const auto& s : r.results) {
    out << "SUITE " << s.name << (s.passed ? " PASS" : " FAIL") << " checks=" << s.checks;
    if (s.counterexample) out << (s.resource_failure ? " resource=" : " counterexample=") << *s.counterexample;
    out << '\n';
  }
  out << "RESULT " << (r.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

struct LoadedDiagram {
  BratteliDiagram diagram;
  std::string label;
  bool pascal = false;
};

// Resolves a built-in name or reads a diagram file; `depth` truncates files
// and sizes built-ins.
inline LoadedDiagram load_source(const std::string& source, std::optional<std::size_t> depth) {
  if (is_builtin(source)) {
    std::size_t d = depth.value_or(builtin_registry().at(source).default_depth);
    return {builtin_diagram(source, d), source, source == "pascal" || source == "gicar"};
  }
  BratteliDiagram d = load_diagram_file(source);
  if (depth) {
    if (*depth > d.depth()) {
      throw DomainError("requested depth " + std::to_string(*depth) + " exceeds the file's " +
                        std::to_string(d.depth()) + " levels");
    }
    d = d.truncated(*depth);
  }
  return {std::move(d), source, false};
}

namespace detail {

struct SuiteFailure {
  std::string what;
};

class Checker {
 public:
  template <class Describe>
  void expect(bool ok, Describe&& describe) {
    ++checks_;
    if (!ok) throw SuiteFailure{std::string(describe())};
  }
  [[nodiscard]] std::size_t checks() const { return checks_; }

 private:
  std::size_t checks_ = 0;
};

struct SuiteContext {
  SpacePtr space;
  std::size_t samples;
  Rng rng;
  bool pascal;
};

inline std::string lv(std::size_t n) { return std::to_string(n); }

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Unit (γ,δ) pairs of level n with a common range, in row-major path order.
inline std::vector<std::pair<std::size_t, std::size_t>> unit_pairs(const PathSpace& sp, std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t g = 0; g < sp.size(n); ++g) {
    for (std::size_t d : sp.block_members(n, sp.terminal(n, g))) out.emplace_back(g, d);
  }
  return out;
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// ---------------------------------------------------------------------------

inline void combinatorics_suite(SuiteContext& ctx, Checker& c) {
  const auto& sp = *ctx.space;
  const auto& d = sp.diagram();
  std::size_t top = std::min<std::size_t>(5, sp.depth());
  auto counts = path_counts(d, top);
  for (std::size_t n = 0; n <= top; ++n) {
    auto paths = enumerate_paths(d, n);
    std::uint64_t total = 0;
    for (auto x : counts[n]) total += x;
    c.expect(paths.size() == total, [&] { return "|Omega_" + lv(n) + "| != sum of #v"; });
    c.expect(paths.size() == sp.size(n), [&] { return "index size mismatch at level " + lv(n); });
    c.expect(std::is_sorted(paths.begin(), paths.end()) &&
                 std::adjacent_find(paths.begin(), paths.end()) == paths.end(),
             [&] { return "enumeration at level " + lv(n) + " not strictly canonical"; });
    for (std::size_t i = 0; i < paths.size(); ++i) {
      c.expect(sp.path(n, i) == paths[i], [&] { return "index order differs at " + to_string(paths[i]); });
    }
    for (std::size_t v = 0; v < d.vertex_count(n); ++v) {
      std::vector<FinitePath> ending;
      for (const auto& p : paths) {
        if (p.range() == Vertex{n, v}) ending.push_back(p);
      }
      c.expect(ending.size() == counts[n][v] && sp.count(n, v) == counts[n][v],
               [&] { return "#" + to_string(Vertex{n, v}) + " recursion disagrees with enumeration"; });
      auto segs = enumerate_segments(d, Vertex{0, 0}, Vertex{n, v});
      bool same = segs.size() == ending.size();
      for (std::size_t k = 0; same && k < segs.size(); ++k) same = FinitePath(segs[k].edges()) == ending[k];
      c.expect(same, [&] { return "segments from root to " + to_string(Vertex{n, v}) + " differ from paths"; });
    }
  }
  for (std::size_t n = 0; n < sp.depth(); ++n) {
    for (std::size_t v = 0; v < d.vertex_count(n); ++v) {
      c.expect(!edges_from(d, Vertex{n, v}).empty(), [&] { return "no edges from " + to_string(Vertex{n, v}); });
    }
  }
  for (std::size_t n = 0; n <= sp.depth(); ++n) {
    auto dims = dimension_vector(ctx.space, n);
    std::size_t sq = 0;
    for (auto b : dims.block_sizes) sq += b * b;
    c.expect(dims.total == sq, [&] { return "dimension total wrong at level " + lv(n); });
  }
  if (ctx.pascal) {
    for (std::size_t n = 0; n <= std::min<std::size_t>(6, sp.depth()); ++n) {
      auto dims = dimension_vector(ctx.space, n);
      c.expect(dims.total == binomial(2 * n, n), [&] { return "dim A_" + lv(n) + " != C(2n,n)"; });
      for (std::size_t k = 0; k <= n; ++k) {
        c.expect(dims.block_sizes[k] == binomial(n, k), [&] { return "#(" + lv(n) + "," + lv(k) + ") != C(n,k)"; });
      }
    }
  }
}

inline void cylinder_suite(SuiteContext& ctx, Checker& c) {
  const SpacePtr& sp = ctx.space;
  std::size_t top = std::min<std::size_t>(4, sp->depth());
  CylinderFunction one = constant(sp, Scalar(1));
  for (std::size_t n = 0; n <= top; ++n) {
    CylinderFunction sum = constant(sp, Scalar());
    for (std::size_t v = 0; v < sp->vertex_count(n); ++v) sum = sum + indicator_vertex(sp, Vertex{n, v});
    c.expect(sum == one, [&] { return "vertex indicators of level " + lv(n) + " do not sum to 1"; });
    for (std::size_t g = 0; g < sp->size(n); ++g) {
      FinitePath gamma = sp->path(n, g);
      CylinderFunction ig = indicator_path(sp, gamma);
      c.expect(ig * ig == ig, [&] { return "I_gamma not idempotent: " + to_string(gamma); });
      for (std::size_t v = 0; v < sp->vertex_count(n); ++v) {
        CylinderFunction expected = gamma.range() == Vertex{n, v} ? ig : constant(sp, Scalar());
        c.expect(ig * indicator_vertex(sp, Vertex{n, v}) == expected,
                 [&] { return "I_gamma I^v rule fails: gamma=" + to_string(gamma) + " v=" + lv(v); });
      }
    }
    if (n < sp->depth()) {
      CylinderFunction edges = constant(sp, Scalar());
      for (std::size_t v = 0; v < sp->vertex_count(n); ++v) {
        for (const Edge& e : edges_from(sp->diagram(), Vertex{n, v})) edges = edges + indicator_edge(sp, e);
      }
      c.expect(edges == one, [&] { return "edge indicators of level " + lv(n) + " do not sum to 1"; });
      for (std::size_t g = 0; g < sp->size(n + 1); ++g) {
        FinitePath gamma = sp->path(n + 1, g);
        c.expect(indicator_path(sp, gamma) ==
                     indicator_path(sp, gamma.prefix(n)) * indicator_edge(sp, gamma[n]),
                 [&] { return "I_gamma != I_gamma' * edge indicator for " + to_string(gamma); });
      }
    }
  }
  for (std::size_t s = 0; s < ctx.samples; ++s) {
    CylinderFunction f = random_cylinder(sp, uniform(ctx.rng, 0, top), ctx.rng);
    CylinderFunction g = random_cylinder(sp, uniform(ctx.rng, 0, top), ctx.rng);
    CylinderFunction h = random_cylinder(sp, uniform(ctx.rng, 0, top), ctx.rng);
    auto show = [&] { return " f=" + to_string(f) + " g=" + to_string(g); };
    c.expect((f * g) * h == f * (g * h), [&] { return "mul not associative" + show(); });
    c.expect(f * g == g * f, [&] { return "mul not commutative" + show(); });
    c.expect(f * (g + h) == f * g + f * h, [&] { return "mul not distributive" + show(); });
    c.expect(f + g == g + f, [&] { return "add not commutative" + show(); });
    c.expect(conjugate(conjugate(f)) == f, [&] { return "conjugate not involutive" + show(); });
    c.expect(conjugate(f * g) == conjugate(f) * conjugate(g), [&] { return "conjugate not multiplicative" + show(); });
    c.expect(one * f == f, [&] { return "1 is not a unit" + show(); });
    c.expect(refine(f + g, top).table() == (refine(f, top) + refine(g, top)).table() &&
                 refine(f * g, top).table() == (refine(f, top) * refine(g, top)).table(),
             [&] { return "refine does not commute with pointwise operations" + show(); });
    CylinderFunction rebuilt = constant(sp, Scalar());
    for (std::size_t i = 0; i < sp->size(f.level()); ++i) {
      FinitePath gamma = sp->path(f.level(), i);
      rebuilt = rebuilt + scalar_mul(eval(f, gamma), indicator_path(sp, gamma));
    }
    c.expect(rebuilt == f, [&] { return "f != sum eval(f,gamma) I_gamma" + show(); });
    std::size_t n = uniform(ctx.rng, 0, top);
    CylinderFunction inv = random_invariant(sp, n, uniform(ctx.rng, 0, top), ctx.rng);
    for (std::size_t k = 0; k <= n; ++k) {
      c.expect(is_invariant(inv, k), [&] { return "R_" + lv(n) + "-invariant function not R_" + lv(k) + "-invariant"; });
    }
    std::size_t widest = 0;
    for (std::size_t v = 0; v < sp->vertex_count(n); ++v) widest = std::max(widest, sp->count(n, v));
    Rational k2(static_cast<std::int64_t>(widest * widest));
    c.expect(sup_norm_sq(e0n(f, n)) <= k2 * sup_norm_sq(f), [&] { return "sup-norm bound fails" + show(); });
  }
}

inline void expectation_suite(SuiteContext& ctx, Checker& c) {
  const SpacePtr& sp = ctx.space;
  std::size_t n_top = std::min<std::size_t>(3, sp->depth());
  std::size_t m_top = std::min<std::size_t>(4, sp->depth());
  CylinderFunction one = constant(sp, Scalar(1));

  for (std::size_t n = 0; n <= std::min<std::size_t>(4, sp->depth()); ++n) {
    for (std::size_t g = 0; g < sp->size(n); ++g) {
      FinitePath gamma = sp->path(n, g);
      c.expect(en_of_indicator(sp, gamma) == en(indicator_path(sp, gamma), n),
               [&] { return "E_n(I_gamma) != I^r(gamma)/#r(gamma) for gamma=" + to_string(gamma); });
    }
  }
  for (std::size_t n = 0; n <= m_top; ++n) {
    c.expect(en(one, n) == one, [&] { return "E_" + lv(n) + " not unital"; });
    std::vector<Scalar> sizes(sp->size(n));
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      sizes[i] = Scalar(static_cast<std::int64_t>(sp->count(n, sp->terminal(n, i))));
    }
    c.expect(e0n(one, n) == CylinderFunction(sp, n, sizes), [&] { return "E0_" + lv(n) + "(1) != #s(alpha_n)"; });
    if (n + 1 <= m_top) {
      for (std::size_t g = 0; g < sp->size(n + 1); ++g) {
        FinitePath gamma = sp->path(n + 1, g);
        FinitePath parent = gamma.prefix(n);
        Vertex rp = parent.range();
        CylinderFunction edge = indicator_edge(sp, gamma[n]);
        Scalar w(Rational(1, static_cast<std::int64_t>(sp->count(rp.level, rp.index))));
        c.expect(en(indicator_path(sp, parent) * edge, n) == scalar_mul(w, edge),
                 [&] { return "E_n(I_gamma' edge-indicator) rule fails for " + to_string(gamma); });
      }
    }
  }

  for (std::size_t n = 0; n <= n_top; ++n) {
    for (std::size_t m = n; m <= m_top; ++m) {
      for (std::size_t s = 0; s < ctx.samples; ++s) {
        CylinderFunction f = random_cylinder(sp, m, ctx.rng);
        CylinderFunction g = random_cylinder(sp, uniform(ctx.rng, 0, m), ctx.rng);
        Scalar a = random_scalar(ctx.rng);
        auto show = [&] { return " n=" + lv(n) + " m=" + lv(m) + " f=" + to_string(f); };
        CylinderFunction ef = en(f, n);
        c.expect(is_invariant(ef, n), [&] { return "E_n(f) not R_n-invariant" + show(); });
        c.expect(en(ef, n) == ef, [&] { return "E_n not idempotent" + show(); });
        c.expect(en(scalar_mul(a, f) + g, n) == scalar_mul(a, ef) + en(g, n), [&] { return "E_n not linear" + show(); });
        CylinderFunction left = random_invariant(sp, n, uniform(ctx.rng, 0, m), ctx.rng);
        CylinderFunction right = random_invariant(sp, n, uniform(ctx.rng, 0, m), ctx.rng);
        c.expect(en(left * f * right, n) == left * ef * right, [&] { return "module property fails" + show(); });
        CylinderFunction em = en(f, m);
        c.expect(en(em, n) == em && en(ef, m) == em, [&] { return "E_n E_m = E_m E_n = E_m fails" + show(); });
        c.expect(star_identity_check(f, n, m), [&] { return "star identity fails" + show(); });
        c.expect(quasi_basis_apply(f, n) == f, [&] { return "quasi-basis identity fails" + show(); });
        CylinderFunction pos = random_nonnegative_cylinder(sp, m, ctx.rng);
        CylinderFunction epos = en(pos, n);
        bool nonneg = std::all_of(epos.table().begin(), epos.table().end(),
                                  [](const Scalar& x) { return x.is_real() && x.re.sign() >= 0; });
        c.expect(nonneg, [&] { return "E_n not positive on " + to_string(pos); });
      }
    }
  }
}

inline void matrix_units_suite(SuiteContext& ctx, Checker& c) {
  const SpacePtr& sp = ctx.space;
  std::size_t n_top = std::min<std::size_t>(3, sp->depth());
  for (std::size_t n = 0; n <= n_top; ++n) {
    auto pairs = unit_pairs(*sp, n);
    std::vector<std::size_t> slot(sp->size(n) * sp->size(n), pairs.size());
    std::vector<AfElement> units;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      slot[pairs[k].first * sp->size(n) + pairs[k].second] = k;
      units.push_back(matrix_unit_at(sp, n, pairs[k].first, pairs[k].second));
    }
    auto name = [&](std::size_t k) {
      return "e^" + lv(n) + "_{" + to_string(sp->path(n, pairs[k].first)) + "," +
             to_string(sp->path(n, pairs[k].second)) + "}";
    };
    AfElement zero = AfElement::zero(sp, n);

    AfElement sum = zero;
    AfElement generated = zero;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [g, d] = pairs[k];
      if (g == d) sum = sum + units[k];
      auto r = static_cast<std::int64_t>(sp->count(n, sp->terminal(n, g)));
      generated = generated + Scalar(Rational(1, r)) * units[k];
      std::size_t transposed = slot[d * sp->size(n) + g];
      c.expect(adjoint(units[k]) == units[transposed], [&] { return "adjoint law fails for " + name(k); });
      AfElement diag_unit = units[k] * units[transposed];
      c.expect(diag_unit == represent_cylinder(indicator_path(sp, sp->path(n, g))) && !diag_unit.is_zero(),
               [&] { return name(k) + " times its adjoint is not I_gamma"; });
    }
    c.expect(sum == AfElement::identity(sp, n), [&] { return "diagonal units of level " + lv(n) + " do not sum to 1"; });
    c.expect(generated == jones_projection(sp, n, n), [&] { return "e_" + lv(n) + " != sum #r^-1 e_{gamma,delta}"; });

    for (std::size_t a = 0; a < pairs.size(); ++a) {
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        AfElement product = units[a] * units[b];
        bool linked = pairs[a].second == pairs[b].first;
        const AfElement& expected = linked ? units[slot[pairs[a].first * sp->size(n) + pairs[b].second]] : zero;
        c.expect(product == expected, [&] { return name(a) + " * " + name(b) + " breaks the product rule"; });
      }
    }

    for (std::size_t m : {n, std::min(n + 1, sp->depth())}) {
      for (std::size_t g = 0; g < sp->size(n); ++g) {
        for (std::size_t d = 0; d < sp->size(n); ++d) {
          AfElement word = toeplitz_word(sp, sp->path(n, g), sp->path(n, d), m);
          bool same = sp->terminal(n, g) == sp->terminal(n, d);
          AfElement expected = same ? embed_to(units[slot[g * sp->size(n) + d]], m) : AfElement::zero(sp, m);
          c.expect(word == expected, [&] {
            return "toeplitz word (" + to_string(sp->path(n, g)) + "," + to_string(sp->path(n, d)) + ") at level " +
                   lv(m) + " = " + to_string(word);
          });
        }
      }
      if (m == n && n == sp->depth()) break;
    }
  }
}

inline void tower_suite(SuiteContext& ctx, Checker& c) {
  const SpacePtr& sp = ctx.space;
  std::size_t m_top = std::min<std::size_t>(4, sp->depth());
  for (std::size_t n = 0; n < sp->depth(); ++n) {
    c.expect(embed(AfElement::identity(sp, n)) == AfElement::identity(sp, n + 1),
             [&] { return "embed not unital at level " + lv(n); });
    c.expect(realized_multiplicities(sp, n) == sp->diagram().incidence(n),
             [&] { return "realized block multiplicities differ from incidence " + lv(n); });
    // Injective: basis images are nonzero with pairwise disjoint supports.
    std::set<std::pair<std::size_t, std::size_t>> used;
    for (auto [g, d] : unit_pairs(*sp, n)) {
      AfElement image = embed(matrix_unit_at(sp, n, g, d));
      bool fresh = !image.is_zero();
      for (std::size_t i = 0; i < sp->size(n + 1); ++i) {
        for (std::size_t j : sp->block_members(n + 1, sp->terminal(n + 1, i))) {
          if (!image.entry(i, j).is_zero()) fresh = used.insert({i, j}).second && fresh;
        }
      }
      c.expect(fresh, [&] { return "embed not injective at level " + lv(n); });
    }
    if (n > m_top) continue;
    for (std::size_t s = 0; s < ctx.samples; ++s) {
      AfElement x = random_af_element(sp, n, ctx.rng);
      AfElement y = random_af_element(sp, n, ctx.rng);
      auto show = [&] { return " level=" + lv(n) + " x=" + to_string(x); };
      c.expect(embed(x * y) == embed(x) * embed(y), [&] { return "embed not multiplicative" + show(); });
      c.expect(embed(adjoint(x)) == adjoint(embed(x)), [&] { return "embed not *-preserving" + show(); });
      c.expect(embed(x + y) == embed(x) + embed(y), [&] { return "embed not additive" + show(); });
      c.expect(x.is_zero() || !embed(x).is_zero(), [&] { return "embed kills a nonzero element" + show(); });
      if (n + 2 <= sp->depth()) {
        c.expect(embed_to(x, n + 2) == embed(embed(x)), [&] { return "embed_to != embed twice" + show(); });
      }
      CylinderFunction f = random_cylinder(sp, n, ctx.rng);
      c.expect(embed(represent_cylinder(f)) == represent_cylinder(refine(f, n + 1)),
               [&] { return "embed o rho != rho o refine for f=" + to_string(f); });
    }
  }
  for (std::size_t m = 0; m <= m_top; ++m) {
    c.expect(jones_projection(sp, 0, m) == AfElement::identity(sp, m), [&] { return "e_0 != 1 in A_" + lv(m); });
    for (std::size_t n = 0; n <= m; ++n) {
      AfElement p = jones_projection(sp, n, m);
      c.expect(p * p == p && adjoint(p) == p, [&] { return "e_" + lv(n) + " not a projection in A_" + lv(m); });
      if (n + 1 <= m) {
        AfElement q = jones_projection(sp, n + 1, m);
        c.expect(q * p == q && p * q == q,
                 [&] { return "e_{n+1} e_n = e_n e_{n+1} = e_{n+1} fails for n=" + lv(n) + " in A_" + lv(m); });
        c.expect(en_refinement_check(sp, n, m), [&] { return "e_n refinement fails n=" + lv(n) + " m=" + lv(m); });
      }
      for (std::size_t s = 0; s < ctx.samples; ++s) {
        CylinderFunction f = random_cylinder(sp, uniform(ctx.rng, 0, m), ctx.rng);
        c.expect(p * represent_cylinder(f, m) * p == represent_cylinder(en(f, n), m) * p, [&] {
          return "e_n f e_n != E_n(f) e_n for n=" + lv(n) + " m=" + lv(m) + " f=" + to_string(f);
        });
      }
    }
  }
}

inline void groupoid_suite(SuiteContext& ctx, Checker& c) {
  const SpacePtr& sp = ctx.space;
  std::size_t n_top = std::min<std::size_t>(3, sp->depth());
  std::size_t m_top = std::min<std::size_t>(4, sp->depth());
  GroupoidFunction unit = diag(constant(sp, Scalar(1)));

  auto random_any = [&] {
    std::size_t n = uniform(ctx.rng, 0, n_top);
    return random_groupoid(sp, n, uniform(ctx.rng, n, m_top), ctx.rng);
  };
  for (std::size_t s = 0; s < ctx.samples; ++s) {
    GroupoidFunction f = random_any();
    GroupoidFunction g = random_any();
    GroupoidFunction h = random_any();
    auto show = [&] { return " F=" + to_string(f); };
    c.expect(convolve(convolve(f, g), h) == convolve(f, convolve(g, h)), [&] { return "convolution not associative" + show(); });
    c.expect(convolve(f, g + h) == convolve(f, g) + convolve(f, h), [&] { return "convolution not bilinear" + show(); });
    c.expect(involution(convolve(f, g)) == convolve(involution(g), involution(f)),
             [&] { return "(F*G)^* != G^* F^*" + show(); });
    c.expect(involution(involution(f)) == f, [&] { return "involution not involutive" + show(); });
    c.expect(convolve(unit, f) == f && convolve(f, unit) == f, [&] { return "diag(1) is not a unit" + show(); });
  }

  c.expect(check_en(sp, 0) == unit, [&] { return "check e_0 != diag(1)"; });
  for (std::size_t n = 0; n <= m_top; ++n) {
    GroupoidFunction e = check_en(sp, n);
    c.expect(convolve(e, e) == e && involution(e) == e, [&] { return "check e_" + lv(n) + " not a projection"; });
    if (n + 1 <= m_top) {
      GroupoidFunction next = check_en(sp, n + 1);
      c.expect(convolve(e, next) == next && convolve(next, e) == next,
               [&] { return "check e ladder fails at n=" + lv(n); });
    }
  }
  for (std::size_t n = 0; n <= n_top; ++n) {
    GroupoidFunction e = check_en(sp, n);
    for (std::size_t s = 0; s < ctx.samples; ++s) {
      CylinderFunction f = random_cylinder(sp, uniform(ctx.rng, 0, m_top), ctx.rng);
      CylinderFunction g = random_cylinder(sp, uniform(ctx.rng, 0, m_top), ctx.rng);
      c.expect(convolve(convolve(e, diag(f)), e) == convolve(diag(en(f, n)), e),
               [&] { return "check e_n f check e_n != E_n(f) check e_n for n=" + lv(n) + " f=" + to_string(f); });
      std::size_t wider = std::min(n + 1, sp->depth());
      GroupoidFunction product = convolve(convolve(diag(f), widen(e, wider, wider)), diag(g));
      c.expect(effective_support(product) <= n, [&] { return "f e_n g not supported in R_" + lv(n); });
    }
  }

  for (std::size_t n = 0; n <= n_top; ++n) {
    auto pairs = unit_pairs(*sp, n);
    std::size_t size = sp->size(n);
    std::vector<std::size_t> slot(size * size, pairs.size());
    std::vector<GroupoidFunction> images;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      slot[pairs[k].first * size + pairs[k].second] = k;
      images.push_back(psi(matrix_unit_at(sp, n, pairs[k].first, pairs[k].second)));
    }
    auto name = [&](std::size_t k) {
      return "e^" + lv(n) + "_{" + to_string(sp->path(n, pairs[k].first)) + "," +
             to_string(sp->path(n, pairs[k].second)) + "}";
    };
    GroupoidFunction zero = GroupoidFunction::zero(sp, n, n);
    c.expect(psi(AfElement::identity(sp, n)) == unit, [&] { return "psi(1) != diag(1) at level " + lv(n); });

    std::set<std::pair<std::size_t, std::size_t>> used;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [g, d] = pairs[k];
      FinitePath gamma = sp->path(n, g);
      FinitePath delta = sp->path(n, d);
      c.expect(images[k] == psi_word(sp, gamma, delta), [&] { return "psi(" + name(k) + ") != defining word"; });
      c.expect(involution(images[k]) == images[slot[d * size + g]], [&] { return "psi not *-preserving on " + name(k); });
      if (g == d) {
        c.expect(images[k] == diag(indicator_path(sp, gamma)), [&] { return "psi(" + name(k) + ") != diag(I_gamma)"; });
      }
      bool fresh = !images[k].is_zero();
      for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j : sp->rn_class(n, i, n)) {
          if (!images[k].at(i, j).is_zero()) fresh = used.insert({i, j}).second && fresh;
        }
      }
      c.expect(fresh, [&] { return "psi not injective on " + name(k); });
      if (n < sp->depth()) {
        AfElement u = matrix_unit_at(sp, n, g, d);
        c.expect(psi(embed(u)) == widen(images[k], n + 1, n + 1), [&] { return "psi o embed != widen o psi on " + name(k); });
      }
      VanishingResult vr = vanishing_check(images[k], n);
      c.expect(vr.holds && vr.witness.has_value(), [&] { return "no vanishing witness for psi(" + name(k) + ")"; });
      // I_β is 1 at β and 0 on the rest of its class, so
      // (F ★ I_β ★ ěₙ)(α,β) = F(α,β) ěₙ(β,β) for every α.
      GroupoidFunction e = check_en(sp, n);
      bool matches = true;
      for (std::size_t b = 0; b < size; ++b) {
        GroupoidFunction peaked = convolve(convolve(images[k], diag(indicator_path(sp, sp->path(n, b)))), e);
        for (std::size_t a : sp->rn_class(n, b, n)) {
          matches = matches && peaked.at(a, b) == images[k].at(a, b) * e.at(b, b);
        }
      }
      c.expect(matches, [&] { return "peaked product formula fails for psi(" + name(k) + ")"; });
    }
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      for (std::size_t b = 0; b < pairs.size(); ++b) {
        bool linked = pairs[a].second == pairs[b].first;
        const GroupoidFunction& expected = linked ? images[slot[pairs[a].first * size + pairs[b].second]] : zero;
        c.expect(convolve(images[a], images[b]) == expected,
                 [&] { return "psi(" + name(a) + ") * psi(" + name(b) + ") breaks the product rule"; });
      }
    }
    for (std::size_t s = 0; s < ctx.samples; ++s) {
      AfElement x = random_af_element(sp, n, ctx.rng);
      AfElement y = random_af_element(sp, n, ctx.rng);
      c.expect(psi(x * y) == convolve(psi(x), psi(y)), [&] { return "psi not multiplicative at level " + lv(n); });
      c.expect(psi(adjoint(x)) == involution(psi(x)), [&] { return "psi not *-preserving at level " + lv(n); });
      if (n < sp->depth()) {
        c.expect(psi(embed(x)) == widen(psi(x), n + 1, n + 1), [&] { return "psi o embed != widen o psi"; });
      }
      std::size_t m = uniform(ctx.rng, n, m_top);
      GroupoidFunction f = random_groupoid(sp, n, m, ctx.rng);
      VanishingResult vr = vanishing_check(f, m);
      c.expect(vr.holds && (f.is_zero() != vr.witness.has_value()),
               [&] { return "kernel lemma fails for F=" + to_string(f); });
    }
    VanishingResult vz = vanishing_check(zero, std::min(n + 1, sp->depth()));
    c.expect(vz.holds && !vz.witness, [&] { return "zero function reported a witness"; });
  }
}

using SuiteFn = void (*)(SuiteContext&, Checker&);

inline SuiteFn suite_function(const std::string& name) {
  if (name == "combinatorics") return &combinatorics_suite;
  if (name == "cylinder") return &cylinder_suite;
  if (name == "expectation") return &expectation_suite;
  if (name == "matrix_units") return &matrix_units_suite;
  if (name == "tower") return &tower_suite;
  if (name == "groupoid") return &groupoid_suite;
  return nullptr;
}

}  // namespace detail

// Runs the selected suites on an already loaded diagram. Validation always
// runs first; when it fails no other suite is attempted.
inline VerifyReport run_suites(const BratteliDiagram& diagram, const std::string& label, bool pascal,
                               std::uint64_t seed, std::size_t samples, const std::vector<std::string>& filter) {
  for (const auto& name : filter) {
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
      throw DomainError("unknown suite '" + name + "'");
    }
  }
  auto wanted = [&](const std::string& name) {
    return filter.empty() || std::find(filter.begin(), filter.end(), name) != filter.end();
  };
  VerifyReport report{label, diagram.depth(), seed, samples, {}, std::nullopt};

  auto violations = validate(diagram);
  if (!violations.empty() || wanted("validation")) {
    SuiteResult r{"validation", violations.empty(), 1, std::nullopt, false};
    if (!violations.empty()) {
      std::string text;
      for (const auto& v : violations) text += (text.empty() ? "" : "; ") + to_string(v);
      r.counterexample = text;
    }
    report.results.push_back(std::move(r));
  }
  if (!violations.empty()) return report;

  SpacePtr space;
  try {
    space = PathSpace::create(diagram);
  } catch (const ResourceError& e) {
    report.resource_error = e.what();
    return report;
  }
  for (const auto& name : suite_names()) {
    if (name == "validation" || !wanted(name)) continue;
    detail::SuiteContext ctx{space, samples, derive_rng(seed, name), pascal};
    detail::Checker checker;
    SuiteResult r{name, true, 0, std::nullopt, false};
    try {
      detail::suite_function(name)(ctx, checker);
    } catch (const detail::SuiteFailure& f) {
      r.passed = false;
      r.counterexample = f.what;
    } catch (const ResourceError& e) {
      r.passed = false;
      r.resource_failure = true;
      r.counterexample = e.what();
    } catch (const Error& e) {
      r.passed = false;
      r.counterexample = std::string("error: ") + e.what();
    }
    r.checks = checker.checks();
    report.results.push_back(std::move(r));
  }
  return report;
}

inline VerifyReport run_suites(const VerifyConfig& config) {
  if (config.samples < 1) throw DomainError("samples must be at least 1");
  if (config.depth && *config.depth < 1) throw DomainError("depth must be at least 1");
  LoadedDiagram loaded = load_source(config.source, config.depth);
  return run_suites(loaded.diagram, loaded.label, loaded.pascal, config.seed, config.samples, config.suites);
}

}  // namespace aftail
