#pragma once

// The finite stages Aₙ = ⊕_{v∈Vₙ} M_{#v} of the AF-algebra, their matrix
// units, the embeddings Aₙ ↪ Aₙ₊₁ and the images of the projections eₙ.
//
// Block v of Aₙ has rows and columns indexed by the rooted length-n paths
// ending at v, in canonical order (PathSpace::block_pos).

#include <string>
#include <vector>

#include "aftail/cylinder.hpp"
#include "aftail/error.hpp"
#include "aftail/path_space.hpp"
#include "aftail/scalar.hpp"

namespace aftail {

struct SquareMatrix {
  std::size_t dim = 0;
  std::vector<Scalar> entries;

  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t d) : dim(d), entries(d * d) {}

  Scalar& operator()(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;
};

class AfElement {
 public:
  static AfElement zero(const SpacePtr& space, std::size_t level) { return AfElement(space, level); }

  static AfElement identity(const SpacePtr& space, std::size_t level) {
    AfElement x(space, level);
    for (auto& b : x.blocks_) {
      for (std::size_t i = 0; i < b.dim; ++i) b(i, i) = Scalar(1);
    }
    return x;
  }

  [[nodiscard]] const SpacePtr& space() const { return space_; }
  [[nodiscard]] std::size_t level() const { return level_; }
  [[nodiscard]] const std::vector<SquareMatrix>& blocks() const { return blocks_; }
  [[nodiscard]] const SquareMatrix& block(std::size_t v) const { return blocks_.at(v); }
  SquareMatrix& block(std::size_t v) { return blocks_.at(v); }

  // Entry at (path i, path j) of level(); zero across blocks.
  [[nodiscard]] Scalar entry(std::size_t i, std::size_t j) const {
    std::size_t v = space_->terminal(level_, i);
    if (space_->terminal(level_, j) != v) return {};
    return blocks_[v](space_->block_pos(level_, i), space_->block_pos(level_, j));
  }

  void set_entry(std::size_t i, std::size_t j, Scalar s) {
    std::size_t v = space_->terminal(level_, i);
    if (space_->terminal(level_, j) != v) throw DomainError("entry crosses blocks");
    blocks_[v](space_->block_pos(level_, i), space_->block_pos(level_, j)) = std::move(s);
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& b : blocks_) {
      for (const auto& s : b.entries) {
        if (!s.is_zero()) return false;
      }
    }
    return true;
  }

  friend bool operator==(const AfElement& a, const AfElement& b) {
    return a.space_ == b.space_ && a.level_ == b.level_ && a.blocks_ == b.blocks_;
  }

 private:
  AfElement(SpacePtr space, std::size_t level) : space_(std::move(space)), level_(level) {
    if (level_ > space_->depth()) throw DepthExhausted("level " + std::to_string(level_) + " beyond depth");
    for (std::size_t v = 0; v < space_->vertex_count(level_); ++v) blocks_.emplace_back(space_->count(level_, v));
  }

  SpacePtr space_;
  std::size_t level_;
  std::vector<SquareMatrix> blocks_;
};

namespace detail {
inline void check_compatible(const AfElement& a, const AfElement& b) {
  check_same_space(a.space(), b.space());
  if (a.level() != b.level()) throw MismatchError("AF elements at different levels");
}
}  // namespace detail

// eⁿ_{γ,δ}, by path indices of level n. Both paths must end at one vertex.
inline AfElement matrix_unit_at(const SpacePtr& space, std::size_t n, std::size_t gamma, std::size_t delta) {
  if (space->terminal(n, gamma) != space->terminal(n, delta)) {
    throw DomainError("matrix unit needs paths with a common range");
  }
  AfElement x = AfElement::zero(space, n);
  x.set_entry(gamma, delta, Scalar(1));
  return x;
}

inline AfElement matrix_unit(const SpacePtr& space, const FinitePath& gamma, const FinitePath& delta) {
  if (gamma.length() != delta.length()) throw DomainError("matrix unit needs paths of equal length");
  if (gamma.range() != delta.range()) {
    throw DomainError("matrix unit needs r(gamma) = r(delta), got " + to_string(gamma.range()) + " and " +
                      to_string(delta.range()));
  }
  return matrix_unit_at(space, gamma.length(), space->index_of(gamma), space->index_of(delta));
}

inline AfElement operator+(const AfElement& a, const AfElement& b) {
  detail::check_compatible(a, b);
  AfElement c = a;
  for (std::size_t v = 0; v < c.blocks().size(); ++v) {
    auto& dst = c.block(v).entries;
    const auto& src = b.block(v).entries;
    for (std::size_t k = 0; k < dst.size(); ++k) {
      if (!src[k].is_zero()) dst[k] += src[k];
    }
  }
  return c;
}

inline AfElement scalar_mul(const Scalar& s, const AfElement& a) {
  AfElement c = a;
  for (std::size_t v = 0; v < c.blocks().size(); ++v) {
    for (auto& e : c.block(v).entries) {
      if (!e.is_zero()) e = s * e;
    }
  }
  return c;
}
inline AfElement operator*(const Scalar& s, const AfElement& a) { return scalar_mul(s, a); }
inline AfElement operator-(const AfElement& a, const AfElement& b) { return a + scalar_mul(Scalar(-1), b); }

inline AfElement operator*(const AfElement& a, const AfElement& b) {
  detail::check_compatible(a, b);
  AfElement c = AfElement::zero(a.space(), a.level());
  for (std::size_t v = 0; v < c.blocks().size(); ++v) {
    const SquareMatrix& x = a.block(v);
    const SquareMatrix& y = b.block(v);
    SquareMatrix& z = c.block(v);
    for (std::size_t i = 0; i < x.dim; ++i) {
      for (std::size_t k = 0; k < x.dim; ++k) {
        const Scalar& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (std::size_t j = 0; j < x.dim; ++j) {
          const Scalar& ykj = y(k, j);
          if (!ykj.is_zero()) z(i, j) += xik * ykj;
        }
      }
    }
  }
  return c;
}

inline AfElement adjoint(const AfElement& a) {
  AfElement c = AfElement::zero(a.space(), a.level());
  for (std::size_t v = 0; v < c.blocks().size(); ++v) {
    const SquareMatrix& x = a.block(v);
    for (std::size_t i = 0; i < x.dim; ++i) {
      for (std::size_t j = 0; j < x.dim; ++j) c.block(v)(j, i) = x(i, j).conj();
    }
  }
  return c;
}

// Aₙ ↪ Aₙ₊₁: eⁿ_{ζ,η} ↦ Σ_{ε from r(ζ)} eⁿ⁺¹_{ζε,ηε}, extended linearly.
inline AfElement embed(const AfElement& x) {
  const auto& sp = x.space();
  std::size_t n = x.level();
  if (n >= sp->depth()) throw DepthExhausted("cannot embed level " + std::to_string(n) + ": no next level");
  AfElement y = AfElement::zero(sp, n + 1);
  for (std::size_t v = 0; v < sp->vertex_count(n); ++v) {
    const auto& members = sp->block_members(n, v);
    const SquareMatrix& b = x.block(v);
    for (std::size_t r = 0; r < b.dim; ++r) {
      for (std::size_t c = 0; c < b.dim; ++c) {
        if (b(r, c).is_zero()) continue;
        std::size_t zeta = members[r];
        std::size_t eta = members[c];
        for (std::size_t k = 0; k < sp->out_degree(n, zeta); ++k) {
          y.set_entry(sp->child(n, zeta, k), sp->child(n, eta, k), b(r, c));
        }
      }
    }
  }
  return y;
}

inline AfElement embed_to(const AfElement& x, std::size_t m) {
  if (m < x.level()) throw DomainError("embed_to cannot lower the level");
  if (m > x.space()->depth()) throw DepthExhausted("embed_to level beyond depth");
  AfElement y = x;
  while (y.level() < m) y = embed(y);
  return y;
}

// ρ(f): the diagonal element Σ_γ f(γ) eᵐ_{γ,γ}, at level `m` ≥ level(f).
inline AfElement represent_cylinder(const CylinderFunction& f, std::size_t m) {
  CylinderFunction g = refine(f, m);
  AfElement x = AfElement::zero(f.space(), m);
  for (std::size_t i = 0; i < g.table().size(); ++i) {
    if (!g.at(i).is_zero()) x.set_entry(i, i, g.at(i));
  }
  return x;
}
inline AfElement represent_cylinder(const CylinderFunction& f) { return represent_cylinder(f, f.level()); }

// Image of eₙ in Aₘ: Σ_{r(γ)=r(δ)} #r(γ)⁻¹ eⁿ_{γ,δ}, embedded to level m.
inline AfElement jones_projection(const SpacePtr& space, std::size_t n, std::size_t m) {
  if (n > m) throw DomainError("jones_projection needs n <= m");
  if (m > space->depth()) throw DepthExhausted("jones_projection level beyond depth");
  AfElement e = AfElement::zero(space, n);
  for (std::size_t v = 0; v < space->vertex_count(n); ++v) {
    SquareMatrix& b = e.block(v);
    Scalar w(Rational(1, static_cast<std::int64_t>(b.dim)));
    for (auto& s : b.entries) s = w;
  }
  return embed_to(e, m);
}

// #r(γ) · ρ(I_γ) · eₙ · ρ(I_δ) evaluated in Aₘ. Equals the embedded matrix
// unit when r(γ) = r(δ) and vanishes otherwise.
inline AfElement toeplitz_word(const SpacePtr& space, const FinitePath& gamma, const FinitePath& delta, std::size_t m) {
  if (gamma.length() != delta.length()) throw DomainError("toeplitz_word needs paths of equal length");
  std::size_t n = gamma.length();
  Vertex v = gamma.range();
  Scalar weight(static_cast<std::int64_t>(space->count(v.level, v.index)));
  return weight * (represent_cylinder(indicator_path(space, gamma), m) * jones_projection(space, n, m) *
                   represent_cylinder(indicator_path(space, delta), m));
}

// eₙ = Σ_{γ∈Ωₙ₊₁} (#r(γ)/#r(γ′)²) · ρ(ᵞⁿI) · eₙ₊₁ · ρ(ᵞⁿI), checked in Aₘ.
inline bool en_refinement_check(const SpacePtr& space, std::size_t n, std::size_t m) {
  if (n + 1 > m) throw DomainError("en_refinement_check needs n < m");
  if (m > space->depth()) throw DepthExhausted("en_refinement_check level beyond depth");
  AfElement next = jones_projection(space, n + 1, m);
  AfElement sum = AfElement::zero(space, m);
  for (std::size_t g = 0; g < space->size(n + 1); ++g) {
    auto rg = static_cast<std::int64_t>(space->count(n + 1, space->terminal(n + 1, g)));
    std::size_t parent = space->parent(n + 1, g);
    auto rp = static_cast<std::int64_t>(space->count(n, space->terminal(n, parent)));
    AfElement edge = represent_cylinder(indicator_edge(space, space->last_edge(n + 1, g)), m);
    sum = sum + Scalar(Rational(rg, rp * rp)) * (edge * next * edge);
  }
  return sum == jones_projection(space, n, m);
}

struct DimensionVector {
  std::vector<std::size_t> block_sizes;
  std::size_t total = 0;  // Σ #v²
};

inline DimensionVector dimension_vector(const SpacePtr& space, std::size_t n) {
  if (n > space->depth()) throw DepthExhausted("level beyond depth");
  DimensionVector out;
  for (std::size_t v = 0; v < space->vertex_count(n); ++v) {
    out.block_sizes.push_back(space->count(n, v));
    out.total += out.block_sizes.back() * out.block_sizes.back();
  }
  return out;
}

// Multiplicity of block v of Aₙ inside block w of Aₙ₊₁ as realized by embed:
// rank (trace) of the image of the unit of block v, divided by #v.
inline IncidenceMatrix realized_multiplicities(const SpacePtr& space, std::size_t n) {
  if (n >= space->depth()) throw DepthExhausted("no embedding out of level " + std::to_string(n));
  IncidenceMatrix out(space->vertex_count(n), std::vector<std::uint64_t>(space->vertex_count(n + 1), 0));
  for (std::size_t v = 0; v < space->vertex_count(n); ++v) {
    AfElement unit = AfElement::zero(space, n);
    SquareMatrix& b = unit.block(v);
    for (std::size_t i = 0; i < b.dim; ++i) b(i, i) = Scalar(1);
    AfElement image = embed(unit);
    for (std::size_t w = 0; w < space->vertex_count(n + 1); ++w) {
      const SquareMatrix& t = image.block(w);
      Rational trace;
      for (std::size_t i = 0; i < t.dim; ++i) trace += t(i, i).re;
      Rational mult = trace / Rational(static_cast<std::int64_t>(b.dim));
      out[v][w] = static_cast<std::uint64_t>(mult.to_int64());
    }
  }
  return out;
}

// Per block: "v:[(row,col,scalar) ...]" over nonzero entries.
inline std::string to_string(const AfElement& x) {
  const auto& sp = x.space();
  std::string out;
  for (std::size_t v = 0; v < x.blocks().size(); ++v) {
    const auto& members = sp->block_members(x.level(), v);
    const SquareMatrix& b = x.block(v);
    out += (v ? " " : "") + std::to_string(v) + ":[";
    bool first = true;
    for (std::size_t r = 0; r < b.dim; ++r) {
      for (std::size_t c = 0; c < b.dim; ++c) {
        if (b(r, c).is_zero()) continue;
        if (!first) out += ' ';
        first = false;
        out += "(" + to_string(sp->path(x.level(), members[r])) + "," + to_string(sp->path(x.level(), members[c])) +
               "," + b(r, c).to_string() + ")";
      }
    }
    out += "]";
  }
  return out;
}

}  // namespace aftail
