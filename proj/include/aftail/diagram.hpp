#pragma once

// Truncated Bratteli diagrams: storage, structural validation and the path
// combinatorics every other module indexes by.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aftail/error.hpp"

namespace aftail {

struct Vertex {
  std::size_t level = 0;
  std::size_t index = 0;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

inline std::string to_string(const Vertex& v) {
  return "(" + std::to_string(v.level) + "," + std::to_string(v.index) + ")";
}

// One edge from vertex `source` of level `level` to vertex `range` of level
// `level + 1`; `copy` distinguishes parallel edges. Field order is the
// canonical order.
struct Edge {
  std::size_t level = 0;
  std::size_t source = 0;
  std::size_t range = 0;
  std::size_t copy = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;

  [[nodiscard]] Vertex source_vertex() const { return {level, source}; }
  [[nodiscard]] Vertex range_vertex() const { return {level + 1, range}; }
};

inline std::string to_string(const Edge& e) {
  return std::to_string(e.source) + ">" + std::to_string(e.range) + "#" + std::to_string(e.copy);
}

namespace detail {
inline void check_chain(const Vertex& start, const std::vector<Edge>& edges) {
  Vertex at = start;
  for (const Edge& e : edges) {
    if (e.source_vertex() != at) throw DomainError("edge " + to_string(e) + " does not continue the path");
    at = e.range_vertex();
  }
}
}  // namespace detail

// Chained edge sequence starting at a given vertex.
class PathSegment {
 public:
  explicit PathSegment(Vertex start, std::vector<Edge> edges = {}) : start_(start), edges_(std::move(edges)) {
    detail::check_chain(start_, edges_);
  }

  [[nodiscard]] const Vertex& start() const { return start_; }
  [[nodiscard]] Vertex end() const { return edges_.empty() ? start_ : edges_.back().range_vertex(); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::size_t length() const { return edges_.size(); }

  friend auto operator<=>(const PathSegment&, const PathSegment&) = default;

 private:
  Vertex start_;
  std::vector<Edge> edges_;
};

// A path leaving the root. The empty path is the root itself.
class FinitePath {
 public:
  FinitePath() = default;
  explicit FinitePath(std::vector<Edge> edges) : edges_(std::move(edges)) {
    detail::check_chain(Vertex{0, 0}, edges_);
  }

  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::size_t length() const { return edges_.size(); }
  [[nodiscard]] bool empty() const { return edges_.empty(); }
  [[nodiscard]] const Edge& operator[](std::size_t k) const { return edges_[k]; }

  // r(γ); the root for the empty path.
  [[nodiscard]] Vertex range() const { return edges_.empty() ? Vertex{0, 0} : edges_.back().range_vertex(); }

  [[nodiscard]] FinitePath prefix(std::size_t k) const {
    if (k > edges_.size()) throw DomainError("prefix longer than path");
    FinitePath p;
    p.edges_.assign(edges_.begin(), edges_.begin() + static_cast<std::ptrdiff_t>(k));
    return p;
  }

  [[nodiscard]] FinitePath extended(const Edge& e) const {
    FinitePath p = *this;
    if (e.source_vertex() != range()) throw DomainError("edge " + to_string(e) + " does not continue the path");
    p.edges_.push_back(e);
    return p;
  }

  [[nodiscard]] FinitePath concat(const PathSegment& y) const {
    if (y.start() != range()) throw DomainError("segment does not start at the range of the path");
    FinitePath p = *this;
    p.edges_.insert(p.edges_.end(), y.edges().begin(), y.edges().end());
    return p;
  }

  friend auto operator<=>(const FinitePath&, const FinitePath&) = default;

 private:
  std::vector<Edge> edges_;
};

// `s>r#k` joined by `;`, or `()` for the empty path.
inline std::string to_string(const FinitePath& p) {
  if (p.empty()) return "()";
  std::string out;
  for (std::size_t k = 0; k < p.length(); ++k) {
    if (k) out += ';';
    out += to_string(p[k]);
  }
  return out;
}

using IncidenceMatrix = std::vector<std::vector<std::uint64_t>>;

// Finite truncation of a Bratteli diagram at depth D. The constructor checks
// only shape (one count per level, matrix dimensions matching the counts);
// the diagram conditions are reported by validate().
class BratteliDiagram {
 public:
  BratteliDiagram(std::vector<std::size_t> vertex_counts, std::vector<IncidenceMatrix> incidence)
      : counts_(std::move(vertex_counts)), incidence_(std::move(incidence)) {
    if (counts_.size() < 2) throw DomainError("a diagram needs depth at least 1");
    if (incidence_.size() + 1 != counts_.size()) {
      throw DomainError("expected " + std::to_string(counts_.size() - 1) + " incidence matrices, got " +
                        std::to_string(incidence_.size()));
    }
    for (std::size_t n = 0; n < incidence_.size(); ++n) {
      if (incidence_[n].size() != counts_[n]) {
        throw DomainError("incidence " + std::to_string(n) + " must have " + std::to_string(counts_[n]) + " rows");
      }
      for (const auto& row : incidence_[n]) {
        if (row.size() != counts_[n + 1]) {
          throw DomainError("incidence " + std::to_string(n) + " rows must have " + std::to_string(counts_[n + 1]) +
                            " entries");
        }
      }
    }
  }

  [[nodiscard]] std::size_t depth() const { return incidence_.size(); }
  [[nodiscard]] std::size_t vertex_count(std::size_t level) const { return counts_.at(level); }
  [[nodiscard]] const std::vector<std::size_t>& vertex_counts() const { return counts_; }
  [[nodiscard]] const IncidenceMatrix& incidence(std::size_t level) const { return incidence_.at(level); }
  [[nodiscard]] std::uint64_t multiplicity(std::size_t level, std::size_t source, std::size_t range) const {
    return incidence_.at(level).at(source).at(range);
  }

  [[nodiscard]] bool contains(const Vertex& v) const { return v.level < counts_.size() && v.index < counts_[v.level]; }
  [[nodiscard]] bool contains(const Edge& e) const {
    return e.level < depth() && e.source < counts_[e.level] && e.range < counts_[e.level + 1] &&
           e.copy < incidence_[e.level][e.source][e.range];
  }
  [[nodiscard]] bool contains(const FinitePath& p) const {
    for (const Edge& e : p.edges()) {
      if (!contains(e)) return false;
    }
    return true;
  }

  // The first `depth` stages of this diagram.
  [[nodiscard]] BratteliDiagram truncated(std::size_t depth) const {
    if (depth < 1 || depth > this->depth()) throw DomainError("truncation depth out of range");
    return {std::vector<std::size_t>(counts_.begin(), counts_.begin() + static_cast<std::ptrdiff_t>(depth) + 1),
            std::vector<IncidenceMatrix>(incidence_.begin(), incidence_.begin() + static_cast<std::ptrdiff_t>(depth))};
  }

  friend bool operator==(const BratteliDiagram&, const BratteliDiagram&) = default;

 private:
  std::vector<std::size_t> counts_;
  std::vector<IncidenceMatrix> incidence_;
};

struct Violation {
  std::string condition;  // "a", "d", "e" or "f"
  Vertex vertex;
  std::string message;
};

inline std::string to_string(const Violation& v) {
  return "(" + v.condition + ") at " + to_string(v.vertex) + ": " + v.message;
}

// Reports every violated diagram condition; empty iff the diagram is valid.
inline std::vector<Violation> validate(const BratteliDiagram& d) {
  std::vector<Violation> out;
  if (d.vertex_count(0) != 1) {
    out.push_back({"d", {0, 0}, "level 0 has " + std::to_string(d.vertex_count(0)) + " vertices, expected 1"});
  }
  for (std::size_t n = 0; n <= d.depth(); ++n) {
    if (d.vertex_count(n) == 0) out.push_back({"a", {n, 0}, "level " + std::to_string(n) + " is empty"});
  }
  for (std::size_t n = 0; n < d.depth(); ++n) {
    const IncidenceMatrix& m = d.incidence(n);
    for (std::size_t i = 0; i < d.vertex_count(n); ++i) {
      bool any = false;
      for (auto x : m[i]) any = any || x > 0;
      if (!any) out.push_back({"e", {n, i}, "vertex is not the source of any edge"});
    }
    for (std::size_t j = 0; j < d.vertex_count(n + 1); ++j) {
      bool any = false;
      for (std::size_t i = 0; i < d.vertex_count(n); ++i) any = any || m[i][j] > 0;
      if (!any) out.push_back({"f", {n + 1, j}, "vertex is not the range of any edge"});
    }
  }
  return out;
}

namespace detail {
inline void check_vertex(const BratteliDiagram& d, const Vertex& v) {
  if (!d.contains(v)) throw DomainError("vertex " + to_string(v) + " is not in the diagram");
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ResourceError("path count overflows 64 bits");
  return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("path count overflows 64 bits");
  return r;
}
}  // namespace detail

// #v for every vertex of levels 0..level, by #w = sum over incoming edges of
// #source, with #root = 1.
inline std::vector<std::vector<std::uint64_t>> path_counts(const BratteliDiagram& d, std::size_t level) {
  if (level > d.depth()) throw DomainError("level " + std::to_string(level) + " beyond depth");
  std::vector<std::vector<std::uint64_t>> counts{{1}};
  counts[0].resize(d.vertex_count(0), 0);
  for (std::size_t n = 0; n < level; ++n) {
    std::vector<std::uint64_t> next(d.vertex_count(n + 1), 0);
    for (std::size_t i = 0; i < d.vertex_count(n); ++i) {
      for (std::size_t j = 0; j < next.size(); ++j) {
        next[j] = detail::checked_add(next[j], detail::checked_mul(counts[n][i], d.multiplicity(n, i, j)));
      }
    }
    counts.push_back(std::move(next));
  }
  return counts;
}

inline std::uint64_t path_count(const BratteliDiagram& d, const Vertex& v) {
  detail::check_vertex(d, v);
  return path_counts(d, v.level)[v.level][v.index];
}

// Edges leaving v, ordered by (range, copy).
inline std::vector<Edge> edges_from(const BratteliDiagram& d, const Vertex& v) {
  detail::check_vertex(d, v);
  if (v.level == d.depth()) {
    throw DepthExhausted("vertex " + to_string(v) + " lies on the truncation level");
  }
  std::vector<Edge> out;
  for (std::size_t j = 0; j < d.vertex_count(v.level + 1); ++j) {
    for (std::uint64_t k = 0; k < d.multiplicity(v.level, v.index, j); ++k) {
      out.push_back({v.level, v.index, j, static_cast<std::size_t>(k)});
    }
  }
  return out;
}

namespace detail {
template <class Visit>
void walk_segments(const BratteliDiagram& d, const Vertex& at, std::size_t to_level, std::vector<Edge>& stack,
                   Visit&& visit) {
  if (at.level == to_level) {
    visit(at, stack);
    return;
  }
  for (const Edge& e : edges_from(d, at)) {
    stack.push_back(e);
    walk_segments(d, e.range_vertex(), to_level, stack, visit);
    stack.pop_back();
  }
}
}  // namespace detail

// Ωₙ: all rooted paths of length n in canonical (lexicographic) order.
inline std::vector<FinitePath> enumerate_paths(const BratteliDiagram& d, std::size_t n) {
  if (n > d.depth()) throw DepthExhausted("level " + std::to_string(n) + " beyond depth");
  std::vector<FinitePath> out;
  std::vector<Edge> stack;
  detail::walk_segments(d, Vertex{0, 0}, n, stack,
                        [&](const Vertex&, const std::vector<Edge>& edges) { out.emplace_back(edges); });
  return out;
}

// All segments from v to w, canonically ordered.
inline std::vector<PathSegment> enumerate_segments(const BratteliDiagram& d, const Vertex& v, const Vertex& w) {
  detail::check_vertex(d, v);
  detail::check_vertex(d, w);
  if (v.level > w.level) throw DomainError("segment must ascend: " + to_string(v) + " to " + to_string(w));
  std::vector<PathSegment> out;
  std::vector<Edge> stack;
  detail::walk_segments(d, v, w.level, stack, [&](const Vertex& end, const std::vector<Edge>& edges) {
    if (end == w) out.emplace_back(v, edges);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Built-in diagrams. Each is the depth-D truncation of a stationary or
// regularly growing infinite diagram.

inline BratteliDiagram uhf_diagram(std::uint64_t k, std::size_t depth) {
  return {std::vector<std::size_t>(depth + 1, 1), std::vector<IncidenceMatrix>(depth, IncidenceMatrix{{k}})};
}

inline BratteliDiagram car_diagram(std::size_t depth) { return uhf_diagram(2, depth); }

// Pascal (GICAR): vertex (n,k) has edges to (n+1,k) and (n+1,k+1).
inline BratteliDiagram pascal_diagram(std::size_t depth) {
  std::vector<std::size_t> counts;
  std::vector<IncidenceMatrix> inc;
  for (std::size_t n = 0; n <= depth; ++n) counts.push_back(n + 1);
  for (std::size_t n = 0; n < depth; ++n) {
    IncidenceMatrix m(n + 1, std::vector<std::uint64_t>(n + 2, 0));
    for (std::size_t k = 0; k <= n; ++k) m[k][k] = m[k][k + 1] = 1;
    inc.push_back(std::move(m));
  }
  return {std::move(counts), std::move(inc)};
}

inline BratteliDiagram fibonacci_diagram(std::size_t depth) {
  std::vector<std::size_t> counts{1};
  std::vector<IncidenceMatrix> inc;
  for (std::size_t n = 0; n < depth; ++n) {
    counts.push_back(2);
    inc.push_back(n == 0 ? IncidenceMatrix{{1, 1}} : IncidenceMatrix{{1, 1}, {1, 0}});
  }
  return {std::move(counts), std::move(inc)};
}

struct BuiltinInfo {
  std::size_t default_depth;
  BratteliDiagram (*make)(std::size_t);
};

inline const std::map<std::string, BuiltinInfo>& builtin_registry() {
  static const std::map<std::string, BuiltinInfo> registry{
      {"car", {5, &car_diagram}},
      {"pascal", {6, &pascal_diagram}},
      {"gicar", {6, &pascal_diagram}},
      {"fibonacci", {6, &fibonacci_diagram}},
      {"uhf3", {4, [](std::size_t d) { return uhf_diagram(3, d); }}},
  };
  return registry;
}

inline bool is_builtin(const std::string& name) { return builtin_registry().count(name) > 0; }

inline BratteliDiagram builtin_diagram(const std::string& name, std::size_t depth) {
  auto it = builtin_registry().find(name);
  if (it == builtin_registry().end()) throw DomainError("unknown built-in diagram '" + name + "'");
  if (depth < 1) throw DomainError("depth must be at least 1");
  return it->second.make(depth);
}

}  // namespace aftail
