#include "doctest.h"
#include "weylaw/root_system.hpp"

using namespace weylaw;

namespace {

AmbientVector simple_combo(const RootSystem& rs, std::vector<long> c) {
  std::vector<Rational> q(c.begin(), c.end());
  return rs.from_simple_coords(q);
}

}  // namespace

TEST_CASE("rationals parse and print canonically") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-2")) == "-2");
  CHECK(to_string(parse_rational("4/2")) == "2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
}

TEST_CASE("positive root counts and Weyl group orders") {
  struct Row {
    Family f;
    int r;
    std::size_t roots;
    std::uint64_t w;
  };
  for (auto [f, r, roots, w] : std::vector<Row>{{Family::A, 1, 1, 2},     {Family::A, 2, 3, 6},      {Family::A, 5, 15, 720},
                                                 {Family::B, 2, 4, 8},     {Family::B, 3, 9, 48},     {Family::C, 3, 9, 48},
                                                 {Family::D, 4, 12, 192},  {Family::G, 2, 6, 12},     {Family::F, 4, 24, 1152},
                                                 {Family::E, 6, 36, 51840}, {Family::E, 7, 63, 2903040}, {Family::E, 8, 120, 696729600}}) {
    const auto rs = RootSystem::build(f, r);
    CAPTURE(rs.name());
    CHECK(rs.num_positive_roots() == roots);
    CHECK(rs.weyl_group_order() == w);
    CHECK(rs.symmetric_space_dim() == r + static_cast<int>(roots));
  }
}

TEST_CASE("A2 simple roots are e1-e2 and e2-e3") {
  const auto rs = RootSystem::build(Family::A, 2);
  CHECK(rs.simple_root(1) == AmbientVector::from_ints({1, -1, 0}));
  CHECK(rs.simple_root(2) == AmbientVector::from_ints({0, 1, -1}));
}

TEST_CASE("G2 highest root is 3a1 + 2a2") {
  const auto rs = RootSystem::build(Family::G, 2);
  const auto c = rs.simple_coordinates(rs.highest_root());
  REQUIRE(c);
  CHECK((*c)[0] == 3);
  CHECK((*c)[1] == 2);
}

TEST_CASE("invalid types are rejected") {
  CHECK_THROWS_AS(RootSystem::build(Family::E, 5), std::invalid_argument);
  CHECK_THROWS_AS(RootSystem::build(Family::D, 3), std::invalid_argument);
  CHECK_THROWS_AS(RootSystem::build(Family::G, 3), std::invalid_argument);
  CHECK_THROWS_AS(parse_family("Q"), std::invalid_argument);
}

TEST_CASE("coroot pairings") {
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 3}, {Family::B, 3}, {Family::C, 4}, {Family::G, 2}, {Family::F, 4}, {Family::E, 6}}) {
    const auto rs = RootSystem::build(f, r);
    for (const auto& a : rs.simple_roots()) CHECK(rs.pairing(rs.rho(), a) == 1);
  }
  const auto g2 = RootSystem::build(Family::G, 2);
  CHECK(g2.pairing(g2.rho(), g2.highest_root()) == 3);
  const auto a2 = RootSystem::build(Family::A, 2);
  CHECK(a2.pairing(a2.fundamental_weight(1), a2.simple_root(2)) == 0);
  CHECK(a2.pairing(a2.fundamental_weight(1), a2.simple_root(1)) == 1);
  CHECK_THROWS_AS(a2.pairing(a2.rho(), AmbientVector::from_ints({1, 1, -2})), std::invalid_argument);
}

TEST_CASE("dominance order") {
  const auto a2 = RootSystem::build(Family::A, 2);
  CHECK(a2.dominance_leq(a2.simple_root(1), simple_combo(a2, {1, 1})));
  CHECK_FALSE(a2.dominance_leq(a2.simple_root(1), a2.simple_root(2)));
  const auto b3 = RootSystem::build(Family::B, 3);
  CHECK(b3.dominance_leq(AmbientVector::from_ints({0, 0, 1}), AmbientVector::from_ints({0, 1, 0})));
}

TEST_CASE("cone membership") {
  const auto a2 = RootSystem::build(Family::A, 2);
  const auto zero = a2.cone_membership(AmbientVector(3));
  CHECK(zero.member);
  for (const auto& c : zero.coefficients) CHECK(c == 0);
  CHECK_FALSE(a2.cone_membership(-a2.simple_root(1)).member);
  CHECK_FALSE(a2.cone_membership(AmbientVector::from_ints({1, 1, 1})).in_span);

  const auto f4 = RootSystem::build(Family::F, 4);
  CHECK(f4.cone_membership(Rational(2) * f4.rho() - Rational(8) * f4.highest_root()).member);
}

TEST_CASE("Weyl orbits") {
  const auto a2 = RootSystem::build(Family::A, 2);
  CHECK(a2.weyl_orbit(AmbientVector(3)).size() == 1);
  CHECK(a2.weyl_orbit(a2.fundamental_weight(1)).size() == 3);
  const auto b2 = RootSystem::build(Family::B, 2);
  CHECK(b2.weyl_orbit(b2.rho()).size() == 8);
  const auto e8 = RootSystem::build(Family::E, 8);
  CHECK_THROWS_AS(e8.weyl_orbit(e8.rho(), 1000), CapacityError);
}

TEST_CASE("convex hull of an orbit") {
  const auto a2 = RootSystem::build(Family::A, 2);
  CHECK(a2.in_conv_hull_of_orbit(AmbientVector(3), a2.rho()));
  CHECK(a2.in_conv_hull_of_orbit(a2.rho(), a2.rho()));
  CHECK_FALSE(a2.in_conv_hull_of_orbit(Rational(2) * a2.rho(), a2.rho()));
}

TEST_CASE("dominant translate lands in the chamber and stays in the orbit") {
  const auto b3 = RootSystem::build(Family::B, 3);
  const AmbientVector v{Rational(-1, 2), Rational(3), Rational(-2)};
  const auto d = b3.dominant_translate(v);
  CHECK(b3.is_dominant(d));
  CHECK(d == AmbientVector({Rational(3), Rational(2), Rational(1, 2)}));
}

TEST_CASE("dual swaps B and C and keeps root order") {
  const auto b3 = RootSystem::build(Family::B, 3);
  const auto c3 = b3.dual();
  CHECK(c3.family() == Family::C);
  REQUIRE(c3.positive_roots().size() == b3.positive_roots().size());
  for (std::size_t k = 0; k < b3.positive_roots().size(); ++k)
    CHECK(c3.positive_roots()[k] == b3.coroot(b3.positive_roots()[k]));
  CHECK(RootSystem::build(Family::G, 2).dual().num_positive_roots() == 6);
}

TEST_CASE("Cartan matrix of B2 and G2") {
  CHECK(RootSystem::build(Family::B, 2).cartan_matrix() == std::vector<std::vector<long>>{{2, -2}, {-1, 2}});
  const auto g = RootSystem::build(Family::G, 2).cartan_matrix();
  CHECK(g[0][0] == 2);
  CHECK(g[0][1] * g[1][0] == 3);
}
