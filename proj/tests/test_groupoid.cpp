#include <gtest/gtest.h>

#include "aftail/expectation.hpp"
#include "aftail/groupoid.hpp"
#include "aftail/random.hpp"
#include "oracles.hpp"

using namespace aftail;

namespace {

// Brute-force convolution over explicit path pairs at one table level.
GroupoidFunction brute_convolve(const GroupoidFunction& f, const GroupoidFunction& g) {
  const auto& sp = f.space();
  std::size_t n = std::max(f.support_level(), g.support_level());
  std::size_t m = std::max(f.table_level(), g.table_level());
  auto wf = widen(f, n, m);
  auto wg = widen(g, n, m);
  auto all = oracle::paths(sp->diagram(), m);
  return GroupoidFunction::tabulate(sp, n, m, [&](std::size_t i, std::size_t j) {
    Scalar sum;
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (oracle::tail_equivalent(all[i], all[k], n)) sum += wf.at(i, k) * wg.at(k, j);
    }
    return sum;
  });
}

}  // namespace

TEST(Groupoid, ConvolutionMatchesBruteForce) {
  for (const char* name : {"car", "pascal", "fibonacci"}) {
    auto sp = PathSpace::create(builtin_diagram(name, 3));
    Rng rng = derive_rng(5, name);
    for (int s = 0; s < 6; ++s) {
      auto f = random_groupoid(sp, s % 3, 3, rng);
      auto g = random_groupoid(sp, (s + 1) % 3, 2 + s % 2, rng);
      EXPECT_EQ(convolve(f, g), brute_convolve(f, g)) << name;
    }
  }
}

TEST(Groupoid, CheckEn) {
  auto sp = PathSpace::create(car_diagram(3));
  EXPECT_EQ(check_en(sp, 0), diag(constant(sp, Scalar(1))));
  auto e1 = check_en(sp, 1);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(e1.at(i, j), Scalar(Rational(1, 2)));
  }
  for (std::size_t n = 0; n <= 3; ++n) {
    auto e = check_en(sp, n);
    EXPECT_EQ(convolve(e, e), e);
    EXPECT_EQ(involution(e), e);
    if (n < 3) {
      EXPECT_EQ(convolve(e, check_en(sp, n + 1)), check_en(sp, n + 1));
    }
  }
  // ě₀ widened to support 1 vanishes exactly off the diagonal.
  auto w = widen(check_en(sp, 0), 1, 1);
  EXPECT_EQ(w.at(0, 1), Scalar());
  EXPECT_EQ(w.at(1, 1), Scalar(1));
}

TEST(Groupoid, ExpectationSandwich) {
  auto sp = PathSpace::create(fibonacci_diagram(4));
  Rng rng(12);
  for (std::size_t n = 0; n <= 3; ++n) {
    auto e = check_en(sp, n);
    for (int s = 0; s < 5; ++s) {
      auto f = random_cylinder(sp, 4, rng);
      EXPECT_EQ(convolve(convolve(e, diag(f)), e), convolve(diag(en(f, n)), e));
    }
  }
}

TEST(Groupoid, DiagonalAlgebra) {
  auto sp = PathSpace::create(pascal_diagram(3));
  Rng rng(2);
  auto f = random_cylinder(sp, 2, rng);
  auto g = random_cylinder(sp, 3, rng);
  EXPECT_EQ(convolve(diag(f), diag(g)), diag(f * g));
  EXPECT_EQ(diag(f) + diag(g), diag(f + g));
  EXPECT_EQ(involution(diag(f)), diag(conjugate(f)));
  auto h = random_groupoid(sp, 2, 3, rng);
  EXPECT_EQ(convolve(diag(constant(sp, Scalar(1))), h), h);
  EXPECT_EQ(involution(involution(h)), h);
  EXPECT_EQ(widen(h, 2, 3), h);
}

TEST(Groupoid, SupportLemma) {
  auto sp = PathSpace::create(pascal_diagram(4));
  for (std::size_t n = 0; n <= 3; ++n) {
    for (const auto& g : oracle::paths(sp->diagram(), n)) {
      for (const auto& d : oracle::paths(sp->diagram(), n)) {
        auto word = convolve(convolve(diag(indicator_path(sp, g)), widen(check_en(sp, n), n + 1, n + 1)),
                             diag(indicator_path(sp, d)));
        EXPECT_LE(effective_support(word), n);
      }
    }
  }
}

TEST(Groupoid, PsiOnUnits) {
  auto sp = PathSpace::create(fibonacci_diagram(3));
  for (std::size_t n = 0; n <= 2; ++n) {
    EXPECT_EQ(psi(AfElement::identity(sp, n)), diag(constant(sp, Scalar(1))));
    auto all = oracle::paths(sp->diagram(), n);
    for (const auto& g : all) {
      EXPECT_EQ(psi(matrix_unit(sp, g, g)), diag(indicator_path(sp, g)));
      for (const auto& d : all) {
        if (g.range() != d.range()) continue;
        auto u = matrix_unit(sp, g, d);
        EXPECT_EQ(psi(u), psi_word(sp, g, d));
        for (const auto& z : all) {
          for (const auto& e : all) {
            if (z.range() != e.range()) continue;
            EXPECT_EQ(convolve(psi(u), psi(matrix_unit(sp, z, e))), psi(u * matrix_unit(sp, z, e)));
          }
        }
      }
    }
  }
}

TEST(Groupoid, PsiCommutesWithEmbedding) {
  auto sp = PathSpace::create(pascal_diagram(4));
  Rng rng(6);
  for (std::size_t n = 0; n < 4; ++n) {
    auto x = random_af_element(sp, n, rng);
    EXPECT_EQ(psi(embed(x)), widen(psi(x), n + 1, n + 1));
    EXPECT_EQ(psi(adjoint(x)), involution(psi(x)));
  }
}

TEST(Groupoid, VanishingCheck) {
  auto sp = PathSpace::create(car_diagram(3));
  auto zero = GroupoidFunction::zero(sp, 1, 1);
  auto z = vanishing_check(zero, 2);
  EXPECT_TRUE(z.holds);
  EXPECT_FALSE(z.witness.has_value());

  for (std::size_t n = 0; n <= 2; ++n) {
    for (const auto& g : oracle::paths(sp->diagram(), n)) {
      for (const auto& d : oracle::paths(sp->diagram(), n)) {
        auto r = vanishing_check(psi(matrix_unit(sp, g, d)), n + 1);
        EXPECT_TRUE(r.holds);
        ASSERT_TRUE(r.witness.has_value());
        EXPECT_EQ(r.witness->prefix(n), d);
      }
    }
  }
  Rng rng(31);
  for (int s = 0; s < 10; ++s) {
    auto f = random_groupoid(sp, 1, 2, rng);
    auto r = vanishing_check(f, 2);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.witness.has_value(), !f.is_zero());
  }
}

TEST(Groupoid, Errors) {
  auto sp = PathSpace::create(car_diagram(2));
  EXPECT_THROW(GroupoidFunction::zero(sp, 2, 1), DomainError);
  EXPECT_THROW(check_en(sp, 3), DepthExhausted);
  EXPECT_THROW(widen(check_en(sp, 1), 0, 1), DomainError);
  auto other = PathSpace::create(car_diagram(2));
  EXPECT_THROW(convolve(check_en(sp, 1), check_en(other, 1)), MismatchError);
}
