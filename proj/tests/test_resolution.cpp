#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "datum_fixtures.hpp"
#include "generators.hpp"
#include "ispace/resolution.hpp"

using namespace ispace;
using namespace ispace::testing;

TEST_CASE("conifold datum passes every consistency check") {
  const ResolutionDatum d = conifold_datum();
  const ValidationReport report = validate(d);
  CHECK_MESSAGE(report.ok(), report.str());
  const ValidationReport threefold = validate_threefold(d);
  CHECK_MESSAGE(threefold.ok(), threefold.str());
}

TEST_CASE("conifold link is rationally S2 x S3") {
  const GradedSpace link = link_cohomology(conifold_datum(false));
  CHECK(dims_of(link) ==
        std::map<int, Index>{{0, 1}, {2, 1}, {3, 1}, {5, 1}});
}

TEST_CASE("two A1 points: block datum validates, links are 3-spheres") {
  const ResolutionDatum d = two_a1_datum();
  const ValidationReport report = validate(d);
  CHECK_MESSAGE(report.ok(), report.str());
  CHECK(dims_of(link_cohomology(d)) == std::map<int, Index>{{0, 2}, {3, 2}});
}

TEST_CASE("curve point link is a circle") {
  const ResolutionDatum d = curve_point_datum();
  CHECK(validate(d).ok());
  CHECK(dims_of(link_cohomology(d)) == std::map<int, Index>{{0, 1}, {1, 1}});
}

TEST_CASE("composite restriction-of-Gysin map is recomputed, never stored") {
  const ResolutionDatum d = conifold_datum(false);
  CHECK(d.j_sharp(2) == Mat(d.j_at(2) * d.gamma_at(2)));
  // jsharp^4 sends both line classes to -pt: a |-> j(ea), b |-> j(eb).
  CHECK(d.j_sharp(4) == rmat({{-1, -1}}));
  // degrees with no stored matrices give zero maps of the right shape
  CHECK(d.j_sharp(3).rows() == 0);
  CHECK(d.j_sharp(6).rows() == 0);   // H^6(D) = 0
  CHECK(d.j_sharp(6).cols() == 1);   // H^4(D) = Q
}

TEST_CASE("each rank identity is checked separately") {
  SUBCASE("disconnected resolution") {
    ResolutionDatum d = two_a1_datum();
    d.hx.set_dim(0, 2);
    d.j[0] = rmat({{1, 0}, {1, 0}});  // second component restricts nothing
    CHECK(has_axiom(validate(d), "connectivity"));
  }
  SUBCASE("wrong singular point count") {
    ResolutionDatum d = two_a1_datum();
    d.nu = 3;
    CHECK(has_axiom(validate(d), "components"));
  }
  SUBCASE("dimension table breaks Poincare duality") {
    ResolutionDatum d = two_a1_datum();
    d.hx.set_dim(4, 7);
    d.gamma.erase(4);  // keep shapes consistent so the dim check is reached
    CHECK(has_axiom(validate(d), "poincare_duality"));
  }
  SUBCASE("stored matrix of the wrong shape") {
    ResolutionDatum d = two_a1_datum();
    d.gamma[2] = rmat({{1, 0, 0}, {0, 1, 0}});
    const ValidationReport report = validate(d);
    CHECK(has_axiom(report, "shape"));
    CHECK_THROWS_AS(d.gamma_at(2), std::invalid_argument);
  }
  SUBCASE("cohomology outside the possible degree range") {
    ResolutionDatum d = curve_point_datum();
    d.hd.set_dim(1, 1);  // divisor of a curve is points; H^1 must vanish
    CHECK(has_axiom(validate(d), "degree_range"));
  }
  SUBCASE("vanishing Gysin map breaks semipurity and duality") {
    ResolutionDatum d = two_a1_datum();
    d.gamma.erase(2);
    const ValidationReport report = validate(d);
    CHECK(has_axiom(report, "semipurity"));
    CHECK(has_axiom(report, "gysin_rank"));
    CHECK(has_axiom(report, "duality_ranks"));
  }
  SUBCASE("non-surjective restriction above the middle degree") {
    ResolutionDatum d = two_a1_datum();
    d.j[2] = rmat({{-2, 0}, {0, 0}});
    CHECK(has_axiom(validate(d), "restriction_rank"));
  }
}

TEST_CASE("product checks: units, signs, and the projection formula") {
  SUBCASE("honest tables pass") {
    CHECK(validate(conifold_datum()).ok());
  }
  SUBCASE("restriction must be a ring map") {
    ResolutionDatum d = conifold_datum();
    d.products->hx.set_pair(2, 0, 2, 1, rvec({2, 0, 0}));  // a b = 2 ab
    const ValidationReport report = validate(d);
    CHECK(has_axiom(report, "restriction_multiplicative"));
    CHECK(has_axiom(report, "associativity"));
  }
  SUBCASE("pushing forward j(x) a must match x times the pushforward") {
    ResolutionDatum d = conifold_datum();
    d.j[2] = rmat({{1, 0, -1}, {0, 1, 1}});  // flip the sign of e|_D on b
    CHECK(has_axiom(validate(d), "projection_formula"));
  }
  SUBCASE("asymmetric table entries are flagged") {
    ResolutionDatum d = conifold_datum();
    d.products->hx.set(2, 1, 2, 0, rvec({-1, 0, 0}));  // b a != a b
    CHECK(has_axiom(validate(d), "graded_commutativity"));
  }
  SUBCASE("unit must act as the identity, also on the divisor") {
    ResolutionDatum d = conifold_datum();
    d.products->hd.set(0, 0, 2, 0, rvec({2, 0}));
    CHECK(has_axiom(validate(d), "unitality"));
  }
}

TEST_CASE("threefold checks catch a non-isomorphism in the middle") {
  // Give the divisor a middle class invisible to both j and gamma: then
  // jsharp^3 is the zero map H^1(D) -> H^3(D) between nonzero spaces.
  ResolutionDatum d = conifold_datum(false);
  d.hd.set_dim(1, 1);
  d.hd.set_dim(3, 1);
  const ValidationReport report = validate_threefold(d);
  CHECK(has_axiom(report, "jsharp_iso"));
  CHECK_THROWS_AS(validate_threefold(two_a1_datum()), std::invalid_argument);
}

TEST_CASE("threefold splitting checks detect a degenerate Gysin image") {
  // The H^4 splitting needs rank jsharp^4 == rank j^4.  Push the whole image
  // of gamma^4 into ker j^4 (ab + ea restricts to 1 - 1 = 0): the coimage
  // summand then contributes nothing and ker j^4 + im gamma^4|coim is too
  // small.
  ResolutionDatum d = conifold_datum(false);
  d.gamma[4] = rmat({{1, 0}, {1, 0}, {0, 0}});
  const ValidationReport report = validate_threefold(d);
  CHECK(has_axiom(report, "even_splitting"));
  CHECK(has_axiom(report, "jsharp_rank"));
}

TEST_CASE("coimage choice: deterministic complement of the composite kernel") {
  const ResolutionDatum d = conifold_datum(false);
  SUBCASE("injective composite in degree 2 gives the whole H^0(D)") {
    const CoimChoice c = choose_coim(d, Perversity::finite(1));
    CHECK(c.subspace.ambient_dim == 1);
    CHECK(c.subspace.dim() == 1);
    CHECK(validate_coim(d, c).ok());
  }
  SUBCASE("degree 3: complement of the 1-dim kernel of jsharp^4") {
    const CoimChoice c = choose_coim(d, Perversity::finite(3));
    CHECK(c.subspace.ambient_dim == 2);
    CHECK(c.subspace.dim() == 1);
    CHECK(validate_coim(d, c).ok());
    // kernel of jsharp^4 = <a - b>; the first standard vector completes it
    CHECK(c.subspace.basis == rmat({{1}, {0}}));
  }
  SUBCASE("vacuous degrees get the zero subspace") {
    CHECK(choose_coim(d, Perversity::finite(2)).subspace.dim() == 0);
    CHECK(choose_coim(d, Perversity::finite(4)).subspace.dim() == 0);
    const CoimChoice top = choose_coim(d, Perversity::finite(7));
    CHECK(top.subspace.ambient_dim == 0);
    CHECK(validate_coim(d, top).ok());
  }
  SUBCASE("infinite perversity has no coimage choice") {
    CHECK_THROWS_AS(choose_coim(d, Perversity::infinity()),
                    std::invalid_argument);
  }
  SUBCASE("a subspace meeting the kernel is rejected") {
    CoimChoice bad;
    bad.p = Perversity::finite(3);
    bad.subspace = Subspace::span_of(rmat({{1}, {-1}}));  // = ker jsharp^4
    CHECK(has_axiom(validate_coim(d, bad), "complement"));
  }
}

TEST_CASE("random data: chosen coimages are always valid complements") {
  testing::Rng rng(20240817);
  for (int trial = 0; trial < 20; ++trial) {
    ResolutionDatum d;
    d.n = 2;
    d.nu = 1;
    std::uniform_int_distribution<Index> dim_dist(0, 4);
    const Index hd0 = 1 + dim_dist(rng) % 3;
    d.hx.set_dim(0, 1);
    d.hx.set_dim(2, dim_dist(rng));
    d.hx.set_dim(4, 1);
    d.hd.set_dim(0, hd0);
    d.hd.set_dim(2, hd0);
    d.gamma[2] = testing::random_matrix(rng, d.hx.dim(2), hd0);
    d.gamma[4] = testing::random_matrix(rng, 1, hd0);
    d.j[2] = testing::random_matrix(rng, hd0, d.hx.dim(2));
    for (int p : {1, 2, 3}) {
      const CoimChoice c = choose_coim(d, Perversity::finite(p));
      CHECK(validate_coim(d, c).ok());
    }
    // however inconsistent the maps, the link is an odd-dimensional closed
    // space: its Euler characteristic always vanishes
    long chi = 0;
    const GradedSpace link = link_cohomology(d);
    for (const auto& [k, dim] : link.dims) chi += (k % 2 == 0 ? dim : -dim);
    CHECK(chi == 0);
  }
}

TEST_CASE("json round trip preserves the datum") {
  const ResolutionDatum d = conifold_datum();
  const ResolutionDatum parsed = resolution_from_json(resolution_to_json(d));
  CHECK(parsed.n == d.n);
  CHECK(parsed.nu == d.nu);
  CHECK(parsed.hx == d.hx);
  CHECK(parsed.hd == d.hd);
  CHECK(parsed.hx.label(2, 2) == "e");
  CHECK(parsed.j_at(2) == d.j_at(2));
  CHECK(parsed.gamma_at(4) == d.gamma_at(4));
  REQUIRE(parsed.products.has_value());
  CHECK(parsed.products->hx.entries == d.products->hx.entries);
  CHECK(parsed.products->hd.entries == d.products->hd.entries);
  CHECK(validate(parsed).ok());
}

TEST_CASE("json accepts flat row-major matrices and omitted degrees") {
  // resolved quadric cone surface: X~ is the Hirzebruch surface F2, D the
  // (-2)-section; the link is rationally a 3-sphere
  const std::string text = R"({
    "n": 2, "nu": 1,
    "hx": [1, 0, 2, 0, 1],
    "hd": [1, 0, 1],
    "gamma": {"2": ["0", "1"], "4": ["1"]},
    "j": {"0": ["1"], "2": ["1", "-2"]}
  })";
  const ResolutionDatum d = resolution_from_json(text);
  CHECK(validate(d).ok());
  CHECK(d.gamma_at(2) == rmat({{0}, {1}}));
  CHECK(dims_of(link_cohomology(d)) == std::map<int, Index>{{0, 1}, {3, 1}});
  CHECK(d.j_at(4).rows() == 0);  // omitted degree reads back as the zero map
}

TEST_CASE("json rejects malformed input") {
  CHECK_THROWS_AS(resolution_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(resolution_from_json(R"({"n": 0, "nu": 0, "hx": [],
                                           "hd": []})"),
                  std::invalid_argument);
  // wrong entry count for the declared dimensions
  CHECK_THROWS_AS(resolution_from_json(R"({
    "n": 2, "nu": 1, "hx": [1, 0, 2, 0, 1], "hd": [1, 0, 1],
    "gamma": {"2": ["0", "1", "7"]}, "j": {}
  })"),
                  std::invalid_argument);
}

TEST_CASE("datum files round trip through disk") {
  const auto path =
      std::filesystem::temp_directory_path() / "ispace_test_datum.json";
  {
    std::ofstream out(path);
    out << resolution_to_json(two_a1_datum());
  }
  const ResolutionDatum d = resolution_from_file(path.string());
  CHECK(d.nu == 2);
  CHECK(validate(d).ok());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(resolution_from_file(path.string()), std::invalid_argument);
}
