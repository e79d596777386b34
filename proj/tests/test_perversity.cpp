#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ispace/perversity.hpp"

using namespace ispace;

TEST_CASE("construction, parsing and printing") {
  CHECK(Perversity::finite(3).value() == 3);
  CHECK(Perversity::finite(0).str() == "0");
  CHECK(Perversity::infinity().str() == "inf");
  CHECK(Perversity::infinity().is_infinity());
  CHECK_THROWS_AS(Perversity::finite(-1), std::invalid_argument);
  CHECK_THROWS_AS(Perversity::infinity().value(), std::logic_error);

  CHECK(Perversity::parse("4") == Perversity::finite(4));
  CHECK(Perversity::parse("inf") == Perversity::infinity());
  CHECK_THROWS_AS(Perversity::parse("-2"), std::invalid_argument);
  CHECK_THROWS_AS(Perversity::parse("x"), std::invalid_argument);
  CHECK_THROWS_AS(Perversity::parse("3x"), std::invalid_argument);
  CHECK_THROWS_AS(Perversity::parse(""), std::invalid_argument);
}

TEST_CASE("reversed order on the complex threefold chain") {
  const auto ctx = PerversityPoset::for_complex_dim(3);  // top = 4
  CHECK(ctx.top() == 4);
  const auto p = [](int k) { return Perversity::finite(k); };
  const auto inf = Perversity::infinity();

  CHECK(ctx.leq(p(2), p(1)));       // numerically bigger is order-smaller
  CHECK_FALSE(ctx.leq(p(1), p(2)));
  CHECK(ctx.leq(p(2), p(2)));       // reflexive
  CHECK(ctx.leq(inf, p(0)));        // infinity below everything
  CHECK(ctx.leq(inf, p(4)));
  CHECK_FALSE(ctx.leq(p(0), inf));
  CHECK(ctx.leq(inf, inf));

  // out-of-range values are rejected, not silently ordered
  CHECK_THROWS_AS(ctx.leq(p(5), p(0)), std::out_of_range);
  CHECK_THROWS_AS(ctx.complement(p(9)), std::out_of_range);
}

TEST_CASE("the order is total on the chain") {
  const auto ctx = PerversityPoset::for_complex_dim(3);
  const auto members = ctx.members();
  CHECK(members.size() == 6);  // inf, 4, 3, 2, 1, 0
  CHECK(members.front() == Perversity::infinity());
  CHECK(members.back() == Perversity::finite(0));
  for (size_t i = 0; i < members.size(); ++i) {
    for (size_t j = 0; j < members.size(); ++j) {
      const bool forward = ctx.leq(members[i], members[j]);
      const bool backward = ctx.leq(members[j], members[i]);
      CHECK((forward || backward));                 // total
      if (forward && backward) CHECK(members[i] == members[j]);  // antisym
      if (i <= j) CHECK(forward);  // members() is listed in chain order
    }
  }
  // transitivity across the whole chain
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i; j < members.size(); ++j)
      for (size_t k = j; k < members.size(); ++k)
        CHECK((!ctx.leq(members[i], members[j]) ||
               !ctx.leq(members[j], members[k]) ||
               ctx.leq(members[i], members[k])));
}

TEST_CASE("zero is maximal and the top is minimal among finite") {
  const auto ctx = PerversityPoset::for_complex_dim(4);  // top = 6
  for (int k = 0; k <= 6; ++k) {
    CHECK(ctx.leq(Perversity::finite(k), Perversity::finite(0)));
    CHECK(ctx.leq(Perversity::finite(6), Perversity::finite(k)));
  }
}

TEST_CASE("complement is an involution reversing the order") {
  const auto ctx = PerversityPoset::for_complex_dim(3);
  const auto p = [](int k) { return Perversity::finite(k); };
  CHECK(ctx.complement(p(1)) == p(3));
  CHECK(ctx.complement(p(2)) == p(2));  // middle is self-complementary
  CHECK(ctx.complement(p(0)) == p(4));
  for (int a = 0; a <= 4; ++a) {
    CHECK(ctx.complement(ctx.complement(p(a))) == p(a));
    for (int b = 0; b <= 4; ++b) {
      CHECK(ctx.leq(p(a), p(b)) ==
            ctx.leq(ctx.complement(p(b)), ctx.complement(p(a))));
    }
  }
  CHECK_THROWS_AS(ctx.complement(Perversity::infinity()), std::invalid_argument);
}

TEST_CASE("partial addition caps at the chain top") {
  const auto ctx = PerversityPoset::for_complex_dim(3);
  const auto p = [](int k) { return Perversity::finite(k); };
  auto s = ctx.add(p(1), p(2));
  REQUIRE(s.has_value());
  CHECK(*s == p(3));
  CHECK_FALSE(ctx.add(p(3), p(3)).has_value());  // 6 > 4
  for (int k = 0; k <= 4; ++k) {
    auto z = ctx.add(p(0), p(k));
    REQUIRE(z.has_value());
    CHECK(*z == p(k));  // zero is neutral
  }
  CHECK_THROWS_AS(ctx.add(Perversity::infinity(), p(1)), std::invalid_argument);
}

TEST_CASE("non-complex chains parameterize the top") {
  // chain for a real 6-pseudomanifold: top = n - 2 = 4, no infinity
  const auto ctx = PerversityPoset::with_top(4, /*hat=*/false);
  CHECK_FALSE(ctx.has_infinity());
  CHECK_FALSE(ctx.valid(Perversity::infinity()));
  CHECK_THROWS_AS(ctx.leq(Perversity::infinity(), Perversity::finite(0)),
                  std::out_of_range);
  CHECK(ctx.members().size() == 5);
  CHECK(ctx.complement(Perversity::finite(1)) == Perversity::finite(3));
}
