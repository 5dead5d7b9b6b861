#pragma once

// Cylinder functions: functions on the infinite path space that depend only
// on the first m edges, stored as a dense table over Ωₘ.

#include <algorithm>
#include <string>
#include <vector>

#include "aftail/error.hpp"
#include "aftail/path_space.hpp"
#include "aftail/scalar.hpp"

namespace aftail {

class CylinderFunction {
 public:
  CylinderFunction(SpacePtr space, std::size_t level, std::vector<Scalar> table)
      : space_(std::move(space)), level_(level), table_(std::move(table)) {
    if (table_.size() != space_->size(level_)) {
      throw DomainError("cylinder table has " + std::to_string(table_.size()) + " entries, level " +
                        std::to_string(level_) + " has " + std::to_string(space_->size(level_)) + " paths");
    }
  }

  [[nodiscard]] const SpacePtr& space() const { return space_; }
  [[nodiscard]] std::size_t level() const { return level_; }
  [[nodiscard]] const std::vector<Scalar>& table() const { return table_; }
  [[nodiscard]] const Scalar& at(std::size_t i) const { return table_[i]; }

 private:
  SpacePtr space_;
  std::size_t level_;
  std::vector<Scalar> table_;
};

namespace detail {
inline void check_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a != b) throw MismatchError("operands live over different diagrams");
}
}  // namespace detail

inline CylinderFunction constant(const SpacePtr& space, const Scalar& c) { return {space, 0, {c}}; }

// Same function re-tabulated at level `to` ≥ level(f).
inline CylinderFunction refine(const CylinderFunction& f, std::size_t to) {
  const auto& sp = f.space();
  if (to < f.level()) throw DomainError("refine cannot lower the level");
  if (to > sp->depth()) throw DepthExhausted("refine to level " + std::to_string(to) + " beyond depth");
  if (to == f.level()) return f;
  std::vector<Scalar> table(sp->size(to));
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = f.at(sp->prefix(to, i, f.level()));
  return {sp, to, std::move(table)};
}

namespace detail {
template <class Op>
CylinderFunction pointwise(const CylinderFunction& f, const CylinderFunction& g, Op op) {
  check_same_space(f.space(), g.space());
  std::size_t m = std::max(f.level(), g.level());
  CylinderFunction a = refine(f, m);
  CylinderFunction b = refine(g, m);
  std::vector<Scalar> table(a.table().size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = op(a.at(i), b.at(i));
  return {f.space(), m, std::move(table)};
}

template <class Op>
CylinderFunction map(const CylinderFunction& f, Op op) {
  std::vector<Scalar> table(f.table().size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = op(f.at(i));
  return {f.space(), f.level(), std::move(table)};
}
}  // namespace detail

inline CylinderFunction add(const CylinderFunction& f, const CylinderFunction& g) {
  return detail::pointwise(f, g, [](const Scalar& a, const Scalar& b) { return a + b; });
}
inline CylinderFunction mul(const CylinderFunction& f, const CylinderFunction& g) {
  return detail::pointwise(f, g, [](const Scalar& a, const Scalar& b) { return a * b; });
}
inline CylinderFunction scalar_mul(const Scalar& c, const CylinderFunction& f) {
  return detail::map(f, [&](const Scalar& a) { return c * a; });
}
inline CylinderFunction conjugate(const CylinderFunction& f) {
  return detail::map(f, [](const Scalar& a) { return a.conj(); });
}

inline CylinderFunction operator+(const CylinderFunction& f, const CylinderFunction& g) { return add(f, g); }
inline CylinderFunction operator-(const CylinderFunction& f, const CylinderFunction& g) {
  return detail::pointwise(f, g, [](const Scalar& a, const Scalar& b) { return a - b; });
}
inline CylinderFunction operator*(const CylinderFunction& f, const CylinderFunction& g) { return mul(f, g); }
inline CylinderFunction operator*(const Scalar& c, const CylinderFunction& f) { return scalar_mul(c, f); }

// Equal as functions on Ω: tables agree after refining to the larger level.
inline bool operator==(const CylinderFunction& f, const CylinderFunction& g) {
  if (f.space() != g.space()) return false;
  std::size_t m = std::max(f.level(), g.level());
  return refine(f, m).table() == refine(g, m).table();
}

// I_γ.
inline CylinderFunction indicator_path(const SpacePtr& space, const FinitePath& gamma) {
  std::size_t idx = space->index_of(gamma);
  std::vector<Scalar> table(space->size(gamma.length()));
  table[idx] = Scalar(1);
  return {space, gamma.length(), std::move(table)};
}

// Iᵛ: paths whose edge at coordinate v.level leaves v.
inline CylinderFunction indicator_vertex(const SpacePtr& space, const Vertex& v) {
  (void)space->vertex_index_check(v);
  std::vector<Scalar> table(space->size(v.level));
  for (std::size_t i : space->block_members(v.level, v.index)) table[i] = Scalar(1);
  return {space, v.level, std::move(table)};
}

// ᵋI: paths whose coordinate ε.level is ε.
inline CylinderFunction indicator_edge(const SpacePtr& space, const Edge& e) {
  if (!space->diagram().contains(e)) throw DomainError("edge " + to_string(e) + " is not in the diagram");
  std::size_t m = e.level + 1;
  std::vector<Scalar> table(space->size(m));
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (space->last_edge(m, i) == e) table[i] = Scalar(1);
  }
  return {space, m, std::move(table)};
}

inline Scalar eval(const CylinderFunction& f, const FinitePath& gamma) {
  if (gamma.length() < f.level()) throw DomainError("path shorter than the function level");
  return f.at(f.space()->index_of(gamma.prefix(f.level())));
}

// Membership in C(Ω; Rₙ): constant on every Rₙ-class.
inline bool is_invariant(const CylinderFunction& f, std::size_t n) {
  const auto& sp = f.space();
  if (n > sp->depth()) throw DepthExhausted("level beyond depth");
  std::size_t m = std::max(f.level(), n);
  CylinderFunction g = refine(f, m);
  for (std::size_t i = 0; i < sp->size(m); ++i) {
    if (sp->block_pos(n, sp->prefix(m, i, n)) != 0) continue;
    for (std::size_t j : sp->rn_class(m, i, n)) {
      if (g.at(j) != g.at(i)) return false;
    }
  }
  return true;
}

// max over the table of |f|², kept squared so it stays rational.
inline Rational sup_norm_sq(const CylinderFunction& f) {
  Rational best;
  for (const Scalar& s : f.table()) best = std::max(best, s.norm_sq());
  return best;
}

inline bool is_zero(const CylinderFunction& f) {
  return std::all_of(f.table().begin(), f.table().end(), [](const Scalar& s) { return s.is_zero(); });
}

// One "(path,scalar)" item per nonzero entry, joined by spaces.
inline std::string to_string(const CylinderFunction& f) {
  std::string out;
  for (std::size_t i = 0; i < f.table().size(); ++i) {
    if (f.at(i).is_zero()) continue;
    if (!out.empty()) out += ' ';
    out += "(" + to_string(f.space()->path(f.level(), i)) + "," + f.at(i).to_string() + ")";
  }
  return out.empty() ? "0" : out;
}

}  // namespace aftail
