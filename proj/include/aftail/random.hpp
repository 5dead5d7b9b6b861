#pragma once

// Seeded generators for randomized identity checks. Deterministic for a
// given seed and build; the engine is std::mt19937_64.

#include <cstdint>
#include <random>
#include <string_view>

#include "aftail/af_tower.hpp"
#include "aftail/cylinder.hpp"
#include "aftail/groupoid.hpp"

namespace aftail {

using Rng = std::mt19937_64;
inline constexpr std::string_view kRngName = "mt19937_64";

// Independent stream per (seed, name), via FNV-1a of the name.
inline Rng derive_rng(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return Rng(seq);
}

// Numerator in [-9, 9], denominator in {1, 2, 3, 4}.
inline Rational random_rational(Rng& rng) {
  std::uniform_int_distribution<std::int64_t> num(-9, 9);
  std::uniform_int_distribution<std::int64_t> den(1, 4);
  std::int64_t a = num(rng);
  return {a, den(rng)};
}

inline Scalar random_scalar(Rng& rng) {
  Rational re = random_rational(rng);
  return {re, random_rational(rng)};
}

inline CylinderFunction random_cylinder(const SpacePtr& space, std::size_t level, Rng& rng) {
  if (level > space->depth()) throw DepthExhausted("random_cylinder level beyond depth");
  std::vector<Scalar> table(space->size(level));
  for (auto& s : table) s = random_scalar(rng);
  return {space, level, std::move(table)};
}

// Real entries with numerator in [0, 9].
inline CylinderFunction random_nonnegative_cylinder(const SpacePtr& space, std::size_t level, Rng& rng) {
  std::uniform_int_distribution<std::int64_t> num(0, 9);
  std::uniform_int_distribution<std::int64_t> den(1, 4);
  std::vector<Scalar> table(space->size(level));
  for (auto& s : table) {
    std::int64_t a = num(rng);
    s = Scalar(Rational(a, den(rng)));
  }
  return {space, level, std::move(table)};
}

// Random element of C(Ω; Rₙ) tabulated at level max(n, level): one value per
// Rₙ-class.
inline CylinderFunction random_invariant(const SpacePtr& space, std::size_t n, std::size_t level, Rng& rng) {
  std::size_t m = std::max(n, level);
  if (m > space->depth()) throw DepthExhausted("random_invariant level beyond depth");
  std::vector<Scalar> table(space->size(m));
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (space->block_pos(n, space->prefix(m, i, n)) != 0) continue;
    Scalar s = random_scalar(rng);
    for (std::size_t j : space->rn_class(m, i, n)) table[j] = s;
  }
  return {space, m, std::move(table)};
}

inline AfElement random_af_element(const SpacePtr& space, std::size_t level, Rng& rng) {
  AfElement x = AfElement::zero(space, level);
  for (std::size_t v = 0; v < space->vertex_count(level); ++v) {
    for (auto& s : x.block(v).entries) s = random_scalar(rng);
  }
  return x;
}

inline GroupoidFunction random_groupoid(const SpacePtr& space, std::size_t support, std::size_t table_level,
                                        Rng& rng) {
  GroupoidFunction f = GroupoidFunction::zero(space, support, table_level);
  for (std::size_t i = 0; i < f.row_count(); ++i) {
    for (auto& s : f.row(i)) s = random_scalar(rng);
  }
  return f;
}

}  // namespace aftail
