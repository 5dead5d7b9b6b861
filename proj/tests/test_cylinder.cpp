#include <gtest/gtest.h>

#include "aftail/cylinder.hpp"
#include "aftail/random.hpp"
#include "oracles.hpp"

using namespace aftail;

namespace {

SpacePtr car() { return PathSpace::create(car_diagram(4)); }
const Edge a{0, 0, 0, 0};
const Edge b{0, 0, 0, 1};
const Edge a1{1, 0, 0, 0};
const Edge b1{1, 0, 0, 1};

}  // namespace

TEST(Cylinder, ConstantsAndRefine) {
  auto sp = car();
  auto one = constant(sp, Scalar(1));
  auto r = refine(one, 3);
  EXPECT_EQ(r.level(), 3u);
  EXPECT_EQ(r.table(), std::vector<Scalar>(8, Scalar(1)));
  EXPECT_EQ(r, one);
  EXPECT_TRUE(is_zero(constant(sp, Scalar())));
  EXPECT_THROW(refine(r, 2), DomainError);
  EXPECT_THROW(refine(one, 5), DepthExhausted);

  auto ia = indicator_path(sp, FinitePath({a}));
  EXPECT_EQ(ia.table(), (std::vector<Scalar>{1, 0}));
  auto ra = refine(ia, 2);
  EXPECT_EQ(ra.table(), (std::vector<Scalar>{1, 1, 0, 0}));
}

TEST(Cylinder, Indicators) {
  auto sp = car();
  EXPECT_EQ(indicator_path(sp, FinitePath()), constant(sp, Scalar(1)));
  EXPECT_EQ(indicator_vertex(sp, {0, 0}), constant(sp, Scalar(1)));
  EXPECT_EQ(indicator_edge(sp, b).table(), (std::vector<Scalar>{0, 1}));
  EXPECT_THROW(indicator_edge(sp, Edge{0, 0, 0, 2}), DomainError);
  // The second-coordinate edge indicator is a sum of two cylinder indicators.
  EXPECT_EQ(indicator_edge(sp, b1), indicator_path(sp, FinitePath({a, b1})) + indicator_path(sp, FinitePath({b, b1})));
}

TEST(Cylinder, EvalAgainstTable) {
  auto sp = PathSpace::create(pascal_diagram(4));
  Rng rng(3);
  auto f = random_cylinder(sp, 2, rng);
  for (const auto& p : oracle::paths(sp->diagram(), 4)) EXPECT_EQ(eval(f, p), f.at(sp->index_of(p.prefix(2))));
  EXPECT_THROW((void)eval(f, FinitePath()), DomainError);
}

TEST(Cylinder, Invariance) {
  auto sp = car();
  Rng rng(5);
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_TRUE(is_invariant(constant(sp, Scalar(Rational(2, 3))), n));
  EXPECT_TRUE(is_invariant(indicator_path(sp, FinitePath({a, a1})), 0));
  EXPECT_FALSE(is_invariant(indicator_path(sp, FinitePath({a, a1})), 1));
  EXPECT_TRUE(is_invariant(indicator_edge(sp, b1), 1));
  EXPECT_FALSE(is_invariant(indicator_edge(sp, b1), 2));
  for (int s = 0; s < 10; ++s) {
    auto g = random_invariant(sp, 2, 3, rng);
    EXPECT_TRUE(is_invariant(g, 2));
    EXPECT_TRUE(is_invariant(g, 1));
  }
}

TEST(Cylinder, Norms) {
  auto sp = car();
  EXPECT_EQ(sup_norm_sq(constant(sp, Scalar(Rational(3), Rational(4)))), Rational(25));
  EXPECT_EQ(sup_norm_sq(indicator_path(sp, FinitePath({a}))), Rational(1));
}

TEST(Cylinder, RingAxiomsOnRandomFunctions) {
  auto sp = PathSpace::create(fibonacci_diagram(4));
  Rng rng(17);
  for (int s = 0; s < 30; ++s) {
    auto f = random_cylinder(sp, s % 5, rng);
    auto g = random_cylinder(sp, (s + 2) % 5, rng);
    auto h = random_cylinder(sp, (s + 4) % 5, rng);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ(f - f, constant(sp, Scalar()));
    EXPECT_EQ(conjugate(f * g), conjugate(f) * conjugate(g));
  }
}

TEST(Cylinder, MismatchedSpacesThrow) {
  auto f = constant(car(), Scalar(1));
  auto g = constant(car(), Scalar(1));
  EXPECT_THROW(f + g, MismatchError);
  EXPECT_FALSE(f == g);
}

TEST(Cylinder, RandomIsDeterministic) {
  auto sp = car();
  Rng r1 = derive_rng(7, "x");
  Rng r2 = derive_rng(7, "x");
  auto f = random_cylinder(sp, 3, r1);
  EXPECT_EQ(f.table(), random_cylinder(sp, 3, r2).table());
  for (const auto& s : f.table()) {
    for (const Rational& part : {s.re, s.im}) {
      mpq_class q = part.to_mpq();
      EXPECT_LE(abs(q.get_num()), 9);
      EXPECT_LE(q.get_den(), 4);
    }
  }
}
