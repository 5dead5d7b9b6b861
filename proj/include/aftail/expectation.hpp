#pragma once

// The averaging operators over Rₙ-classes and the identities they satisfy.
// Everything here sums over enumerated classes directly, with no reference to
// the matrix model, so the tower and groupoid checks can use it as an oracle.

#include <algorithm>
#include <vector>

#include "aftail/cylinder.hpp"

namespace aftail {

namespace detail {
// Sum of f over the Rₙ-class of every path of level max(level(f), n),
// optionally divided by the class size #s(αₙ).
inline CylinderFunction class_sum(const CylinderFunction& f, std::size_t n, bool average) {
  const auto& sp = f.space();
  if (n > sp->depth()) throw DepthExhausted("expectation level beyond depth");
  std::size_t m = std::max(f.level(), n);
  CylinderFunction g = refine(f, m);
  std::vector<Scalar> table(sp->size(m));
  for (std::size_t i = 0; i < table.size(); ++i) {
    // Visit each class once, through its first member.
    if (sp->block_pos(n, sp->prefix(m, i, n)) != 0) continue;
    const auto& cls = sp->rn_class(m, i, n);
    Scalar sum;
    for (std::size_t j : cls) sum += g.at(j);
    if (average) sum = sum / Scalar(Rational(static_cast<std::int64_t>(cls.size())));
    for (std::size_t j : cls) table[j] = sum;
  }
  return {sp, m, std::move(table)};
}
}  // namespace detail

// E⁰ₙ(f)(α) = Σ_{β ∈ Rₙ(α)} f(β).
inline CylinderFunction e0n(const CylinderFunction& f, std::size_t n) { return detail::class_sum(f, n, false); }

// Eₙ(f)(α) = E⁰ₙ(f)(α) / #s(αₙ).
inline CylinderFunction en(const CylinderFunction& f, std::size_t n) { return detail::class_sum(f, n, true); }

// Closed form of Eₙ(I_γ) for γ of length n: I^{r(γ)} / #r(γ).
inline CylinderFunction en_of_indicator(const SpacePtr& space, const FinitePath& gamma) {
  Vertex v = gamma.range();
  auto size = static_cast<std::int64_t>(space->count(v.level, v.index));
  return scalar_mul(Scalar(Rational(1, size)), indicator_vertex(space, v));
}

// Σ_{γ∈Ωₙ} #r(γ) · I_γ · Eₙ(I_γ f). Equal to f: the quasi-basis
// {√#r(γ) I_γ} applied with its square roots multiplied out.
inline CylinderFunction quasi_basis_apply(const CylinderFunction& f, std::size_t n) {
  const auto& sp = f.space();
  if (n > sp->depth()) throw DepthExhausted("quasi-basis level beyond depth");
  CylinderFunction acc = constant(sp, Scalar());
  for (std::size_t i = 0; i < sp->size(n); ++i) {
    CylinderFunction ig = indicator_path(sp, sp->path(n, i));
    Scalar weight(static_cast<std::int64_t>(sp->count(n, sp->terminal(n, i))));
    acc = acc + scalar_mul(weight, ig * en(ig * f, n));
  }
  return acc;
}

// For every vertex vᵢ of level n and every segment y from vᵢ to level m:
// Σ_{x∈Xᵢ} f(xy) = Σ_{x∈Xᵢ} Eₙ(f)(xy), with Xᵢ the rooted paths to vᵢ.
inline bool star_identity_check(const CylinderFunction& f, std::size_t n, std::size_t m) {
  const auto& sp = f.space();
  const auto& d = sp->diagram();
  if (n > m) throw DomainError("star identity needs n <= m");
  if (m > sp->depth()) throw DepthExhausted("star identity level beyond depth");
  if (f.level() > m) throw DomainError("function level exceeds m");
  CylinderFunction avg = en(f, n);
  for (std::size_t vi = 0; vi < d.vertex_count(n); ++vi) {
    Vertex v{n, vi};
    auto xs = enumerate_segments(d, Vertex{0, 0}, v);
    for (std::size_t wi = 0; wi < d.vertex_count(m); ++wi) {
      for (const PathSegment& y : enumerate_segments(d, v, Vertex{m, wi})) {
        Scalar lhs;
        Scalar rhs;
        for (const PathSegment& x : xs) {
          FinitePath xy = FinitePath(x.edges()).concat(y);
          lhs += eval(f, xy);
          rhs += eval(avg, xy);
        }
        if (lhs != rhs) return false;
      }
    }
  }
  return true;
}

}  // namespace aftail
