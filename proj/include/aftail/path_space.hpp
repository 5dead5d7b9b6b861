#pragma once

// Indexed rooted paths Ω₀..Ω_L of a diagram.
//
// Paths of each level are numbered in canonical order. Because the order is
// lexicographic, the one-edge extensions of a path are contiguous at the next
// level, so extension, prefix and Rₙ-class lookups are index arithmetic.

#include <cstdlib>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "aftail/diagram.hpp"
#include "aftail/error.hpp"

namespace aftail {

inline constexpr std::size_t kDefaultMaxEntries = 100000;

// Entry cap from AF_TAIL_MAX_ENTRIES, or the default when unset or malformed.
inline std::size_t max_entries_from_env() {
  const char* raw = std::getenv("AF_TAIL_MAX_ENTRIES");
  if (!raw || !*raw) return kDefaultMaxEntries;
  char* end = nullptr;
  unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0) return kDefaultMaxEntries;
  return static_cast<std::size_t>(v);
}

class PathSpace;
using SpacePtr = std::shared_ptr<const PathSpace>;

class PathSpace {
 public:
  // Indexes every level up to the diagram depth. Throws ResourceError when
  // |Ωₙ| or the block entry total Σ#v² of some level exceeds `max_entries`.
  // The diagram must satisfy validate().
  static SpacePtr create(BratteliDiagram diagram, std::size_t max_entries = max_entries_from_env()) {
    if (auto violations = validate(diagram); !violations.empty()) {
      throw DomainError("invalid diagram: " + to_string(violations.front()));
    }
    return SpacePtr(new PathSpace(std::move(diagram), max_entries));
  }

  [[nodiscard]] const BratteliDiagram& diagram() const { return diagram_; }
  [[nodiscard]] std::size_t depth() const { return diagram_.depth(); }
  [[nodiscard]] std::size_t size(std::size_t n) const { return level(n).terminal.size(); }
  [[nodiscard]] std::size_t vertex_count(std::size_t n) const { return diagram_.vertex_count(n); }

  // #v for v = (n, vertex).
  [[nodiscard]] std::size_t count(std::size_t n, std::size_t vertex) const {
    return level(n).members.at(vertex).size();
  }
  [[nodiscard]] std::size_t terminal(std::size_t n, std::size_t i) const { return level(n).terminal[i]; }
  [[nodiscard]] std::size_t block_pos(std::size_t n, std::size_t i) const { return level(n).block_pos[i]; }
  [[nodiscard]] const std::vector<std::size_t>& block_members(std::size_t n, std::size_t vertex) const {
    return level(n).members.at(vertex);
  }
  [[nodiscard]] const Edge& last_edge(std::size_t n, std::size_t i) const { return level(n).last_edge[i]; }
  [[nodiscard]] std::size_t last_local(std::size_t n, std::size_t i) const { return level(n).last_local[i]; }
  [[nodiscard]] std::size_t out_degree(std::size_t n, std::size_t i) const { return level(n).out_degree[i]; }

  [[nodiscard]] std::size_t parent(std::size_t n, std::size_t i) const {
    if (n == 0) throw DomainError("the empty path has no parent");
    return level(n).parent[i];
  }

  // Index of the length-k prefix of path i of level m.
  [[nodiscard]] std::size_t prefix(std::size_t m, std::size_t i, std::size_t k) const {
    if (k > m) throw DomainError("prefix level above path level");
    for (; m > k; --m) i = level(m).parent[i];
    return i;
  }

  // Vertex at level k visited by path i of level m.
  [[nodiscard]] std::size_t vertex_at(std::size_t m, std::size_t i, std::size_t k) const {
    return terminal(k, prefix(m, i, k));
  }

  // Extension of path i of level n by its `local`-th outgoing edge.
  [[nodiscard]] std::size_t child(std::size_t n, std::size_t i, std::size_t local) const {
    if (n >= depth()) throw DepthExhausted("no level beyond " + std::to_string(n));
    if (local >= level(n).out_degree[i]) throw DomainError("edge index out of range");
    return level(n).child_offset[i] + local;
  }

  // Local edge indices of coordinates k..m-1 of path i of level m.
  [[nodiscard]] std::vector<std::size_t> tail(std::size_t m, std::size_t i, std::size_t k) const {
    std::vector<std::size_t> out(m - k);
    for (std::size_t lv = m; lv > k; --lv) {
      out[lv - k - 1] = level(lv).last_local[i];
      i = level(lv).parent[i];
    }
    return out;
  }

  [[nodiscard]] std::size_t extend(std::size_t n, std::size_t i, std::span<const std::size_t> locals) const {
    for (std::size_t local : locals) i = child(n++, i, local);
    return i;
  }

  // Members of the Rₙ-class of path i at level m, m ≥ n: the paths x·y where
  // x ranges over Ωₙ paths ending where i crosses level n and y is the tail of
  // i after level n. Canonically ordered; entry k has prefix block_members(n,
  // vertex_at(m,i,n))[k].
  [[nodiscard]] const std::vector<std::size_t>& rn_class(std::size_t m, std::size_t i, std::size_t n) const {
    const auto& t = classes(m, n);
    return t.members[t.id[i]];
  }

  // Whether paths i and j of level m are Rₙ-equivalent.
  [[nodiscard]] bool equivalent(std::size_t m, std::size_t i, std::size_t j, std::size_t n) const {
    const auto& t = classes(m, n);
    return t.id[i] == t.id[j];
  }

  [[nodiscard]] FinitePath path(std::size_t n, std::size_t i) const {
    std::vector<Edge> edges(n);
    for (std::size_t lv = n; lv > 0; --lv) {
      edges[lv - 1] = level(lv).last_edge[i];
      i = level(lv).parent[i];
    }
    return FinitePath(std::move(edges));
  }

  [[nodiscard]] std::size_t index_of(const FinitePath& p) const {
    if (p.length() > depth()) throw DepthExhausted("path longer than depth");
    if (!diagram_.contains(p)) throw DomainError("path " + to_string(p) + " is not in the diagram");
    std::size_t i = 0;
    for (std::size_t n = 0; n < p.length(); ++n) {
      std::size_t first = level(n).child_offset[i];
      std::size_t k = 0;
      while (level(n + 1).last_edge[first + k] != p[n]) ++k;
      i = first + k;
    }
    return i;
  }

  [[nodiscard]] std::size_t vertex_index_check(const Vertex& v) const {
    if (v.level > depth()) throw DepthExhausted("vertex " + to_string(v) + " beyond depth");
    if (!diagram_.contains(v)) throw DomainError("vertex " + to_string(v) + " is not in the diagram");
    return v.index;
  }

 private:
  struct Level {
    std::vector<std::size_t> parent;
    std::vector<std::size_t> last_local;
    std::vector<Edge> last_edge;
    std::vector<std::size_t> terminal;
    std::vector<std::size_t> block_pos;
    std::vector<std::size_t> out_degree;
    std::vector<std::size_t> child_offset;
    std::vector<std::vector<std::size_t>> members;
  };

  struct ClassTable {
    std::vector<std::size_t> id;
    std::vector<std::vector<std::size_t>> members;
  };

  [[nodiscard]] const ClassTable& classes(std::size_t m, std::size_t n) const {
    if (m > depth()) throw DepthExhausted("level " + std::to_string(m) + " beyond depth " + std::to_string(depth()));
    if (n > m) throw DomainError("class level above path level");
    return classes_[m][n];
  }

  void build_classes() {
    classes_.resize(depth() + 1);
    for (std::size_t m = 0; m <= depth(); ++m) {
      classes_[m].resize(m + 1);
      for (std::size_t n = 0; n <= m; ++n) {
        ClassTable& t = classes_[m][n];
        t.id.assign(size(m), 0);
        for (std::size_t i = 0; i < size(m); ++i) {
          if (block_pos(n, prefix(m, i, n)) != 0) continue;
          auto y = tail(m, i, n);
          std::vector<std::size_t> cls;
          for (std::size_t x : block_members(n, vertex_at(m, i, n))) cls.push_back(extend(n, x, y));
          for (std::size_t j : cls) t.id[j] = t.members.size();
          t.members.push_back(std::move(cls));
        }
      }
    }
  }

  PathSpace(BratteliDiagram diagram, std::size_t max_entries) : diagram_(std::move(diagram)) {
    levels_.resize(depth() + 1);
    Level& root = levels_[0];
    root.parent = {0};
    root.last_local = {0};
    root.last_edge = {Edge{}};
    root.terminal = {0};
    for (std::size_t n = 0; n <= depth(); ++n) {
      Level& cur = levels_[n];
      cur.members.assign(diagram_.vertex_count(n), {});
      cur.block_pos.resize(cur.terminal.size());
      for (std::size_t i = 0; i < cur.terminal.size(); ++i) {
        auto& m = cur.members.at(cur.terminal[i]);
        cur.block_pos[i] = m.size();
        m.push_back(i);
      }
      std::size_t entries = 0;
      for (const auto& m : cur.members) entries += m.size() * m.size();
      if (cur.terminal.size() > max_entries || entries > max_entries) {
        throw ResourceError("level " + std::to_string(n) + " needs " + std::to_string(entries) +
                            " block entries, cap is " + std::to_string(max_entries));
      }
      if (n == depth()) break;
      Level& nxt = levels_[n + 1];
      cur.out_degree.resize(cur.terminal.size());
      cur.child_offset.resize(cur.terminal.size());
      std::vector<std::vector<Edge>> out_edges(diagram_.vertex_count(n));
      for (std::size_t v = 0; v < out_edges.size(); ++v) out_edges[v] = edges_from(diagram_, Vertex{n, v});
      for (std::size_t i = 0; i < cur.terminal.size(); ++i) {
        const auto& es = out_edges[cur.terminal[i]];
        cur.child_offset[i] = nxt.terminal.size();
        cur.out_degree[i] = es.size();
        for (std::size_t k = 0; k < es.size(); ++k) {
          nxt.parent.push_back(i);
          nxt.last_local.push_back(k);
          nxt.last_edge.push_back(es[k]);
          nxt.terminal.push_back(es[k].range);
        }
        if (nxt.terminal.size() > max_entries) {
          throw ResourceError("level " + std::to_string(n + 1) + " has more than " + std::to_string(max_entries) +
                              " paths");
        }
      }
    }
    build_classes();
  }

  [[nodiscard]] const Level& level(std::size_t n) const {
    if (n > depth()) throw DepthExhausted("level " + std::to_string(n) + " beyond depth " + std::to_string(depth()));
    return levels_[n];
  }

  BratteliDiagram diagram_;
  std::vector<Level> levels_;
  std::vector<std::vector<ClassTable>> classes_;  // [m][n]
};

}  // namespace aftail
