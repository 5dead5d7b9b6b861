#pragma once

// Convolution model on the tail-equivalence groupoid.
//
// A GroupoidFunction with support level n and table level m ≥ n stores
// F(α,β) for (α,β) ∈ Rₙ as a function of the length-m prefixes. Row γ ∈ Ωₘ
// holds one value per member of the Rₙ-class of γ, in the order of
// PathSpace::rn_class; pairs outside Rₙ are zero. Rows are stored back to
// back in one vector.

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aftail/af_tower.hpp"
#include "aftail/cylinder.hpp"
#include "aftail/error.hpp"
#include "aftail/path_space.hpp"

namespace aftail {

class GroupoidFunction {
 public:
  static GroupoidFunction zero(const SpacePtr& space, std::size_t support, std::size_t table_level) {
    return GroupoidFunction(space, support, table_level);
  }

  // Fills every admissible pair (γ,δ) of path indices with fn(γ, δ).
  template <class Fn>
  static GroupoidFunction tabulate(const SpacePtr& space, std::size_t support, std::size_t table_level, Fn fn) {
    GroupoidFunction g(space, support, table_level);
    for (std::size_t i = 0; i < g.row_count(); ++i) {
      const auto& cls = space->rn_class(table_level, i, support);
      auto row = g.row(i);
      for (std::size_t k = 0; k < cls.size(); ++k) row[k] = fn(i, cls[k]);
    }
    return g;
  }

  [[nodiscard]] const SpacePtr& space() const { return space_; }
  [[nodiscard]] std::size_t support_level() const { return support_; }
  [[nodiscard]] std::size_t table_level() const { return table_level_; }
  [[nodiscard]] std::size_t row_count() const { return offsets_->size() - 1; }
  // All rows concatenated.
  [[nodiscard]] const std::vector<Scalar>& entries() const { return data_; }
  std::span<Scalar> row(std::size_t i) {
    return {data_.data() + (*offsets_)[i], (*offsets_)[i + 1] - (*offsets_)[i]};
  }
  [[nodiscard]] std::span<const Scalar> row(std::size_t i) const {
    return {data_.data() + (*offsets_)[i], (*offsets_)[i + 1] - (*offsets_)[i]};
  }

  // (γ,δ) is admissible when the paths agree from coordinate support_level()
  // on and end at the same vertex.
  [[nodiscard]] bool admissible(std::size_t gamma, std::size_t delta) const {
    return space_->equivalent(table_level_, gamma, delta, support_);
  }

  // Value at path indices of the table level; zero off Rₙ.
  [[nodiscard]] Scalar at(std::size_t gamma, std::size_t delta) const {
    if (!admissible(gamma, delta)) return {};
    return row(gamma)[space_->block_pos(support_, space_->prefix(table_level_, delta, support_))];
  }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_zero(); });
  }

 private:
  GroupoidFunction(SpacePtr space, std::size_t support, std::size_t table_level)
      : space_(std::move(space)), support_(support), table_level_(table_level) {
    if (support_ > table_level_) throw DomainError("support level above table level");
    if (table_level_ > space_->depth()) throw DepthExhausted("table level beyond depth");
    auto offsets = std::make_shared<std::vector<std::size_t>>(space_->size(table_level_) + 1);
    for (std::size_t i = 0; i + 1 < offsets->size(); ++i) {
      (*offsets)[i + 1] = (*offsets)[i] + space_->count(support_, space_->vertex_at(table_level_, i, support_));
    }
    data_.resize(offsets->back());
    offsets_ = std::move(offsets);
  }

  SpacePtr space_;
  std::size_t support_;
  std::size_t table_level_;
  std::shared_ptr<const std::vector<std::size_t>> offsets_;
  std::vector<Scalar> data_;
};

// The same function recorded with support level n' ≥ n and table level
// m' ≥ m. Pairs in Rₙ' but not in Rₙ get zero.
inline GroupoidFunction widen(const GroupoidFunction& f, std::size_t support, std::size_t table_level) {
  const auto& sp = f.space();
  if (support < f.support_level() || table_level < f.table_level()) {
    throw DomainError("widen cannot lower support or table level");
  }
  if (support > table_level) throw DomainError("support level above table level");
  if (support == f.support_level() && table_level == f.table_level()) return f;
  std::size_t n = f.support_level();
  std::size_t m = f.table_level();
  return GroupoidFunction::tabulate(sp, support, table_level, [&](std::size_t g, std::size_t d) -> Scalar {
    if (!sp->equivalent(table_level, g, d, n)) return {};
    return f.at(sp->prefix(table_level, g, m), sp->prefix(table_level, d, m));
  });
}

namespace detail {
// Calls fn on f and g recorded at a common (support, table) level pair,
// copying only the operands that need widening.
template <class Fn>
auto with_common(const GroupoidFunction& f, const GroupoidFunction& g, Fn fn) {
  check_same_space(f.space(), g.space());
  std::size_t n = std::max(f.support_level(), g.support_level());
  std::size_t m = std::max(f.table_level(), g.table_level());
  std::optional<GroupoidFunction> wf;
  std::optional<GroupoidFunction> wg;
  const GroupoidFunction& a = f.support_level() == n && f.table_level() == m ? f : wf.emplace(widen(f, n, m));
  const GroupoidFunction& b = g.support_level() == n && g.table_level() == m ? g : wg.emplace(widen(g, n, m));
  return fn(a, b);
}
}  // namespace detail

// Equal as functions on R.
inline bool operator==(const GroupoidFunction& f, const GroupoidFunction& g) {
  if (f.space() != g.space()) return false;
  return detail::with_common(f, g, [](const GroupoidFunction& a, const GroupoidFunction& b) { return a.entries() == b.entries(); });
}

inline GroupoidFunction operator+(const GroupoidFunction& f, const GroupoidFunction& g) {
  return detail::with_common(f, g, [](const GroupoidFunction& a, const GroupoidFunction& b) {
    GroupoidFunction out = a;
    for (std::size_t i = 0; i < out.row_count(); ++i) {
      auto dst = out.row(i);
      auto src = b.row(i);
      for (std::size_t k = 0; k < dst.size(); ++k) dst[k] += src[k];
    }
    return out;
  });
}

inline GroupoidFunction scalar_mul(const Scalar& s, const GroupoidFunction& f) {
  GroupoidFunction out = f;
  for (std::size_t i = 0; i < out.row_count(); ++i) {
    for (auto& e : out.row(i)) {
      if (!e.is_zero()) e = s * e;
    }
  }
  return out;
}
inline GroupoidFunction operator*(const Scalar& s, const GroupoidFunction& f) { return scalar_mul(s, f); }

// (F★G)(α,β) = Σ_{γ ∈ class of β} F(α,γ) G(γ,β).
inline GroupoidFunction convolve(const GroupoidFunction& f, const GroupoidFunction& g) {
  return detail::with_common(f, g, [](const GroupoidFunction& a, const GroupoidFunction& b) {
    const auto& sp = a.space();
    std::size_t n = a.support_level();
    std::size_t m = a.table_level();
    GroupoidFunction out = GroupoidFunction::zero(sp, n, m);
    for (std::size_t i = 0; i < sp->size(m); ++i) {
      // Every member of the class of i shares that class, in the same order.
      const auto& cls = sp->rn_class(m, i, n);
      auto dst = out.row(i);
      auto fi = a.row(i);
      for (std::size_t k = 0; k < cls.size(); ++k) {
        if (fi[k].is_zero()) continue;
        auto gk = b.row(cls[k]);
        for (std::size_t j = 0; j < dst.size(); ++j) {
          if (!gk[j].is_zero()) dst[j] += fi[k] * gk[j];
        }
      }
    }
    return out;
  });
}

// F*(α,β) = conj F(β,α).
inline GroupoidFunction involution(const GroupoidFunction& f) {
  const auto& sp = f.space();
  std::size_t n = f.support_level();
  std::size_t m = f.table_level();
  GroupoidFunction out = GroupoidFunction::zero(sp, n, m);
  for (std::size_t i = 0; i < sp->size(m); ++i) {
    const auto& cls = sp->rn_class(m, i, n);
    std::size_t pos_i = sp->block_pos(n, sp->prefix(m, i, n));
    for (std::size_t k = 0; k < cls.size(); ++k) out.row(i)[k] = f.row(cls[k])[pos_i].conj();
  }
  return out;
}

// f viewed on the unit space R₀.
inline GroupoidFunction diag(const CylinderFunction& f) {
  return GroupoidFunction::tabulate(f.space(), 0, f.level(), [&](std::size_t g, std::size_t) { return f.at(g); });
}

// ěₙ(α,β) = 1/#s(αₙ) on Rₙ.
inline GroupoidFunction check_en(const SpacePtr& space, std::size_t n) {
  if (n > space->depth()) throw DepthExhausted("check_en level beyond depth");
  return GroupoidFunction::tabulate(space, n, n, [&](std::size_t g, std::size_t) {
    return Scalar(Rational(1, static_cast<std::int64_t>(space->count(n, space->terminal(n, g)))));
  });
}

// #r(γ) · I_γ ★ ěₙ ★ I_δ, computed by convolution.
inline GroupoidFunction psi_word(const SpacePtr& space, const FinitePath& gamma, const FinitePath& delta) {
  if (gamma.length() != delta.length()) throw DomainError("psi_word needs paths of equal length");
  std::size_t n = gamma.length();
  Vertex v = gamma.range();
  Scalar weight(static_cast<std::int64_t>(space->count(v.level, v.index)));
  return weight * convolve(convolve(diag(indicator_path(space, gamma)), check_en(space, n)),
                           diag(indicator_path(space, delta)));
}

// ψ: Aₙ → groupoid functions supported in Rₙ, the linear extension of
// eⁿ_{γ,δ} ↦ #r(γ) · I_γ ★ ěₙ ★ I_δ. That word is the indicator of the single
// pair (γ,δ) at table level n, so ψ(x) carries the entries of x.
inline GroupoidFunction psi(const AfElement& x) {
  std::size_t n = x.level();
  return GroupoidFunction::tabulate(x.space(), n, n, [&](std::size_t g, std::size_t d) { return x.entry(g, d); });
}

// Smallest k ≤ support_level() such that F vanishes off Rₖ.
inline std::size_t effective_support(const GroupoidFunction& f) {
  const auto& sp = f.space();
  std::size_t m = f.table_level();
  for (std::size_t k = 0; k < f.support_level(); ++k) {
    bool vanishes = true;
    for (std::size_t i = 0; i < sp->size(m) && vanishes; ++i) {
      const auto& cls = sp->rn_class(m, i, f.support_level());
      for (std::size_t c = 0; c < cls.size(); ++c) {
        if (f.row(i)[c].is_zero()) continue;
        if (!sp->equivalent(m, i, cls[c], k)) {
          vanishes = false;
          break;
        }
      }
    }
    if (vanishes) return k;
  }
  return f.support_level();
}

struct VanishingResult {
  bool holds = false;                // (all products vanish) ⇔ F = 0
  std::optional<FinitePath> witness;  // η with F ★ I_η ★ ěₙ ≠ 0
};

// Kernel lemma for F supported in Rₙ: F ★ I_η ★ ěₙ = 0 for every η ∈ Ωₘ
// forces F = 0. Searches η in canonical order and returns the first one with
// a nonvanishing product.
inline VanishingResult vanishing_check(const GroupoidFunction& f, std::size_t m) {
  const auto& sp = f.space();
  if (m < f.table_level()) throw DomainError("vanishing_check level below the table level");
  if (m > sp->depth()) throw DepthExhausted("vanishing_check level beyond depth");
  GroupoidFunction en = check_en(sp, f.support_level());
  for (std::size_t eta = 0; eta < sp->size(m); ++eta) {
    FinitePath path = sp->path(m, eta);
    GroupoidFunction product = convolve(convolve(f, diag(indicator_path(sp, path))), en);
    if (!product.is_zero()) return {!f.is_zero(), path};
  }
  return {f.is_zero(), std::nullopt};
}

// "(γ,δ,scalar)" per nonzero entry.
inline std::string to_string(const GroupoidFunction& f) {
  const auto& sp = f.space();
  std::size_t m = f.table_level();
  std::string out;
  for (std::size_t i = 0; i < sp->size(m); ++i) {
    const auto& cls = sp->rn_class(m, i, f.support_level());
    for (std::size_t k = 0; k < cls.size(); ++k) {
      if (f.row(i)[k].is_zero()) continue;
      if (!out.empty()) out += ' ';
      out += "(" + to_string(sp->path(m, i)) + "," + to_string(sp->path(m, cls[k])) + "," + f.row(i)[k].to_string() +
             ")";
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace aftail
