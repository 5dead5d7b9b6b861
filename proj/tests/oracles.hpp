#pragma once

// Brute-force reference computations used by the unit tests. They work on
// explicit edge lists and FinitePath values only, never on PathSpace index
// arithmetic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "aftail/aftail.hpp"

namespace oracle {

using aftail::BratteliDiagram;
using aftail::Edge;
using aftail::FinitePath;
using aftail::Scalar;

// Every edge of the diagram between levels n and n+1.
inline std::vector<Edge> all_edges(const BratteliDiagram& d, std::size_t n) {
  std::vector<Edge> out;
  for (std::size_t s = 0; s < d.vertex_count(n); ++s) {
    for (std::size_t r = 0; r < d.vertex_count(n + 1); ++r) {
      for (std::uint64_t k = 0; k < d.multiplicity(n, s, r); ++k) out.push_back({n, s, r, k});
    }
  }
  return out;
}

// All rooted edge sequences of length n that chain correctly, sorted.
inline std::vector<FinitePath> paths(const BratteliDiagram& d, std::size_t n) {
  std::vector<std::vector<Edge>> level{{}};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<std::vector<Edge>> next;
    for (const auto& p : level) {
      std::size_t at = p.empty() ? 0 : p.back().range;
      for (const Edge& e : all_edges(d, k)) {
        if (e.source != at) continue;
        auto q = p;
        q.push_back(e);
        next.push_back(std::move(q));
      }
    }
    level = std::move(next);
  }
  std::vector<FinitePath> out;
  for (auto& p : level) out.emplace_back(std::move(p));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::uint64_t count_ending_at(const BratteliDiagram& d, std::size_t n, std::size_t v) {
  auto all = paths(d, n);
  return std::count_if(all.begin(), all.end(), [&](const FinitePath& p) { return p.range().index == v; });
}

// Pascal's triangle.
inline std::uint64_t binomial(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::uint64_t>> t(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    t[i].assign(i + 1, 1);
    for (std::size_t j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
  }
  return k > n ? 0 : t[n][k];
}

// (p,q) ∈ Rₙ for paths of a common length.
inline bool tail_equivalent(const FinitePath& p, const FinitePath& q, std::size_t n) {
  if (p.length() != q.length()) return false;
  for (std::size_t k = n; k < p.length(); ++k) {
    if (p[k] != q[k]) return false;
  }
  return p.prefix(n).range() == q.prefix(n).range();
}

using Table = std::map<FinitePath, Scalar>;

inline Table tabulate(const aftail::CylinderFunction& f, std::size_t m) {
  Table out;
  for (const auto& p : paths(f.space()->diagram(), m)) out[p] = aftail::eval(f, p);
  return out;
}

// Eₙ by averaging over explicitly compared tails.
inline Table expectation(const Table& f, std::size_t n) {
  Table out;
  for (const auto& [a, fa] : f) {
    Scalar sum;
    std::int64_t size = 0;
    for (const auto& [b, fb] : f) {
      if (!tail_equivalent(a, b, n)) continue;
      sum += fb;
      ++size;
    }
    out[a] = sum / Scalar(aftail::Rational(size));
  }
  return out;
}

// Dense matrix of an element of Aₙ indexed by explicit path pairs.
using Matrix = std::map<std::pair<FinitePath, FinitePath>, Scalar>;

inline Matrix dense(const aftail::AfElement& x) {
  Matrix out;
  const auto& sp = *x.space();
  auto all = paths(sp.diagram(), x.level());
  for (const auto& g : all) {
    for (const auto& d : all) {
      Scalar s = x.entry(sp.index_of(g), sp.index_of(d));
      if (!s.is_zero()) out[{g, d}] = s;
    }
  }
  return out;
}

// Image of x under Aₙ → Aₙ₊₁ from e_{ζ,η} ↦ Σ_ε e_{ζε,ηε}.
inline Matrix embed(const aftail::AfElement& x) {
  const auto& d = x.space()->diagram();
  Matrix out;
  for (const auto& [key, s] : dense(x)) {
    for (const Edge& e : all_edges(d, x.level())) {
      if (e.source != key.first.range().index) continue;
      out[{key.first.extended(e), key.second.extended(e)}] += s;
    }
  }
  return out;
}

}  // namespace oracle
