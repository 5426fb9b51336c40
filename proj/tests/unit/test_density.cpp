#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "weylaw/density.hpp"
#include "weylaw/dominance.hpp"

using namespace weylaw;

TEST_CASE("beta0 values") {
  CHECK(beta0(0.0) == 0.0);
  CHECK(beta0(1.0) == doctest::Approx(0.5 * std::tanh(std::numbers::pi / 2)).epsilon(1e-15));
  CHECK(beta0(1.0) == doctest::Approx(0.458).epsilon(1e-3));
  CHECK(std::fabs(beta0(10.0) - 5.0) < 1e-6);
  CHECK(beta0(-3.0) == beta0(3.0));
}

TEST_CASE("gamma constants") {
  CHECK(gamma_constant(1) == doctest::Approx(std::numbers::pi));
  CHECK(gamma_constant(2) == doctest::Approx(4.0 / std::numbers::pi));
  const auto ctx = DensityContext::make(RootSystem::build(Family::A, 2));
  CHECK(ctx.gamma_block == doctest::Approx(std::numbers::pi * std::numbers::pi * 4.0 / std::numbers::pi));
}

TEST_CASE("Plancherel density") {
  const auto a1 = DensityContext::make(RootSystem::build(Family::A, 1));
  CHECK(plancherel_density(a1, SpectralParam::imaginary(AmbientVector(2))) == 0.0);
  CHECK(plancherel_density(a1, SpectralParam::imaginary(a1.rs.rho())) == doctest::Approx(std::numbers::pi * beta0(1.0)));
  CHECK_THROWS(plancherel_density(a1, SpectralParam::real(a1.rs.rho())));

  const auto a2 = DensityContext::make(RootSystem::build(Family::A, 2));
  CHECK(plancherel_density(a2, SpectralParam::imaginary(a2.rs.fundamental_weight(2))) == 0.0);

  // Orthonormal coordinates agree with the ambient evaluation.
  const auto b2 = DensityContext::make(RootSystem::build(Family::B, 2));
  const std::vector<double> x{0.7, -1.3};
  std::vector<Rational> amb(2);
  for (std::size_t j = 0; j < 2; ++j) {
    double v = 0;
    for (std::size_t k = 0; k < 2; ++k) v += x[k] * b2.basis[k][j];
    amb[j] = Rational(v);
  }
  CHECK(plancherel_density(b2, SpectralParam::imaginary(AmbientVector(amb))) ==
        doctest::Approx(plancherel_density_orthonormal(b2, x)).epsilon(1e-12));
}

TEST_CASE("beta tilde") {
  const auto a2 = RootSystem::build(Family::A, 2);
  CHECK(beta_tilde(a2, 1.0, SpectralParam::imaginary(AmbientVector(3))) == 1.0);
  CHECK(beta_tilde(a2, 1.0, SpectralParam::imaginary(a2.rho())) == 12.0);
  const auto a1 = RootSystem::build(Family::A, 1);
  CHECK(beta_tilde(a1, 2.0, SpectralParam::imaginary(Rational(3) * a1.fundamental_weight(1))) == 5.0);
  CHECK_THROWS(beta_tilde(a1, 0.5, SpectralParam::imaginary(AmbientVector(2))));
}

TEST_CASE("delta_m") {
  const auto a2 = RootSystem::build(Family::A, 2);
  for (const auto& m : maximal_semistandard_levis(a2)) CHECK(delta_m(a2, m, AmbientVector(3)) == 1);
  CHECK(delta_m(a2, singleton_levi(a2, 1), a2.fundamental_weight(1)) == 4);
  const auto b2 = RootSystem::build(Family::B, 2);
  const auto siegel = classical_levi(b2, {1, 2}, {1, 1});
  REQUIRE(siegel.complement.size() == 3);
  // (1+|(α,ρ)|) over Φ⁺ ∖ {e1−e2} with ρ = (3/2, 1/2): e1 → 5/2, e2 → 3/2, e1+e2 → 3.
  CHECK(delta_m(b2, siegel, b2.rho()) == Rational(45, 4));
}

TEST_CASE("D-tilde examples") {
  const auto a2 = RootSystem::build(Family::A, 2);
  CHECK(d_tilde(a2, SpectralParam::imaginary(AmbientVector(3))).value == 1.0);
  const auto r = d_tilde(a2, SpectralParam::imaginary(a2.fundamental_weight(1)));
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)));
  REQUIRE(r.squared_exact);
  CHECK(*r.squared_exact == 2);

  const auto b2 = RootSystem::build(Family::B, 2);
  DTildeOptions fast{DTildePath::ClassicalFast, 8}, exh{DTildePath::Exhaustive, 8};
  const auto lam = SpectralParam::imaginary(b2.rho());
  CHECK(*d_tilde(b2, lam, fast).squared_exact == *d_tilde(b2, lam, exh).squared_exact);
}

TEST_CASE("D-tilde exhaustive path equals brute force over all maximal Levis") {
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::G, 2}, {Family::B, 3}, {Family::F, 4}}) {
    const auto rs = RootSystem::build(f, r);
    const auto lam = SpectralParam::imaginary(Rational(10) * rs.rho() + rs.fundamental_weight(1));
    std::optional<Rational> best;
    for (const auto& m : hyperplane_maximal_levis(rs)) {
      Rational p(1);
      for (auto k : m.complement) p *= 1 + abs(rs.pairing_positive(lam.imag_part, k));
      if (!best || p < *best) best = p;
    }
    DTildeOptions exh{DTildePath::Exhaustive, 8};
    CHECK(*d_tilde(rs, lam, exh).squared_exact == *best);
  }
}

TEST_CASE("D-tilde fast path matches exhaustive on random classical parameters") {
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 3}, {Family::B, 3}, {Family::C, 3}, {Family::D, 4}}) {
    const auto rs = RootSystem::build(f, r);
    for (std::uint64_t i = 0; i < 40; ++i) {
      auto v = random_dominant(rs, 11, i);
      v = rs.reflect(v, 1 + static_cast<int>(i % static_cast<std::uint64_t>(r)));
      const auto lam = i % 2 ? SpectralParam::imaginary(v) : SpectralParam::real(v);
      DTildeOptions fast{DTildePath::ClassicalFast, 8}, exh{DTildePath::Exhaustive, 8};
      CHECK(*d_tilde(rs, lam, fast).squared_exact == *d_tilde(rs, lam, exh).squared_exact);
    }
  }
}

TEST_CASE("big D") {
  const auto a3 = RootSystem::build(Family::A, 3);
  const auto lam = SpectralParam::imaginary(a3.rho() + a3.fundamental_weight(2));
  CHECK(big_d(a3, lam).value == d_tilde(a3, lam).value);
  const auto g2 = RootSystem::build(Family::G, 2);
  CHECK(big_d(g2, SpectralParam::imaginary(AmbientVector(3))).value == doctest::Approx(1.0 / std::log(2.0)));
  const auto g = big_d(g2, SpectralParam::imaginary(Rational(10) * g2.rho()));
  CHECK(std::isfinite(g.value));
  CHECK(g.value > 1.0);
}

TEST_CASE("heuristic path is an upper bound") {
  const auto f4 = RootSystem::build(Family::F, 4);
  const auto lam = SpectralParam::imaginary(f4.rho() + f4.fundamental_weight(4));
  DTildeOptions heur{DTildePath::Heuristic, 6}, exh{DTildePath::Exhaustive, 8};
  const auto h = d_tilde(f4, lam, heur);
  CHECK(h.upper_bound_only);
  CHECK(h.value >= d_tilde(f4, lam, exh).value * (1 - 1e-12));
}

TEST_CASE("Weyl-law main term, A1 interval against adaptive quadrature") {
  const auto ctx = DensityContext::make(RootSystem::build(Family::A, 1));
  DomainSpec box{DomainShape::Box, {}, 1.0, {1.0}};
  Sampler grid;
  grid.method = Sampler::Method::Grid;
  const auto est = weyl_law_main_term(ctx, box, 1.0, grid);
  const double oracle = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [](double s) { return std::numbers::pi * beta0(std::sqrt(2.0) * s); }, -1.0, 1.0, 15, 1e-13);
  CHECK(est.value == doctest::Approx(oracle / 2).epsilon(1e-6));

  const auto zero = DensityContext::make(RootSystem::build(Family::A, 1), 0.0);
  CHECK(weyl_law_main_term(zero, box, 3.0, grid).value == 0.0);
}

TEST_CASE("Weyl-law scaling in A2") {
  const auto ctx = DensityContext::make(RootSystem::build(Family::A, 2));
  DomainSpec ball{DomainShape::Ball, {}, 1.0, {}};
  Sampler mc;
  mc.method = Sampler::Method::MonteCarlo;
  mc.samples = 100'000;
  const auto a = weyl_law_main_term(ctx, ball, 10.0, mc);
  const auto b = weyl_law_main_term(ctx, ball, 20.0, mc);
  CHECK(b.value / a.value == doctest::Approx(32.0).epsilon(0.05));
  CHECK(a.standard_error > 0.0);
}

TEST_CASE("grid and Monte Carlo agree in rank two") {
  const auto ctx = DensityContext::make(RootSystem::build(Family::B, 2));
  for (auto shape : {DomainShape::Ball, DomainShape::HalfBall, DomainShape::Box}) {
    DomainSpec d{shape, {}, 1.0, {1.0, 0.5}};
    Sampler grid, mc;
    grid.method = Sampler::Method::Grid;
    mc.method = Sampler::Method::MonteCarlo;
    const auto g = weyl_law_main_term(ctx, d, 5.0, grid);
    const auto m = weyl_law_main_term(ctx, d, 5.0, mc);
    CAPTURE(to_string(shape));
    CHECK(std::fabs(g.value - m.value) < 5 * m.standard_error + 1e-9 * g.value);
  }
  DomainSpec ball{DomainShape::Ball, {}, 1.0, {}}, half{DomainShape::HalfBall, {}, 1.0, {}};
  Sampler grid;
  grid.method = Sampler::Method::Grid;
  CHECK(weyl_law_main_term(ctx, half, 4.0, grid).value == doctest::Approx(weyl_law_main_term(ctx, ball, 4.0, grid).value / 2));
}

TEST_CASE("Monte Carlo is independent of the thread count") {
  const auto ctx = DensityContext::make(RootSystem::build(Family::A, 3));
  DomainSpec ball{DomainShape::Ball, {}, 1.0, {}};
  Sampler s;
  s.samples = 50'000;
  s.threads = 1;
  const auto one = weyl_law_main_term(ctx, ball, 7.0, s);
  s.threads = 5;
  const auto five = weyl_law_main_term(ctx, ball, 7.0, s);
  CHECK(one.value == five.value);
  CHECK(one.standard_error == five.standard_error);
}

TEST_CASE("growth fit") {
  const auto ctx = DensityContext::make(RootSystem::build(Family::A, 1));
  DomainSpec ball{DomainShape::Ball, {}, 1.0, {}};
  Sampler s;
  const auto fit = fit_growth_exponent(ctx, ball, {10, 20, 40, 80}, s);
  CHECK(fit.slope == doctest::Approx(2.0).epsilon(0.025));
  CHECK_THROWS(fit_growth_exponent(ctx, ball, {10, 20}, s));
  CHECK_THROWS(fit_growth_exponent(ctx, ball, {0.5, 20, 40}, s));
  CHECK_THROWS(fit_growth_exponent(ctx, ball, {20, 10, 40}, s));
}

TEST_CASE("domain shapes") {
  CHECK(parse_domain_shape("half-ball") == DomainShape::HalfBall);
  CHECK(to_string(DomainShape::Box) == "box");
  CHECK_THROWS(parse_domain_shape("torus"));
  const auto ctx = DensityContext::make(RootSystem::build(Family::A, 3));
  Sampler grid;
  grid.method = Sampler::Method::Grid;
  CHECK_THROWS(weyl_law_main_term(ctx, DomainSpec{DomainShape::Ball, {}, 1.0, {}}, 2.0, grid));
}

TEST_CASE("ratio scan stays under the ceiling") {
  const auto ctx = DensityContext::make(RootSystem::build(Family::B, 2));
  const auto raw = scan_ratio_bound(ctx, 2000, 9);
  const auto refined = scan_ratio_bound(ctx, 2000, 9, 20.0, 3, 8);
  CHECK(raw.max_ratio == raw.sampled_max);
  CHECK(refined.sampled_max == raw.sampled_max);
  CHECK(refined.max_ratio >= raw.max_ratio);
  CHECK(refined.max_ratio <= refined.ceiling);
  CHECK(refined.ceiling == doctest::Approx(ctx.gamma_block / 16));
}
