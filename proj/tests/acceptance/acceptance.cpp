// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weylaw/density.hpp"
#include "weylaw/dominance.hpp"
#include "weylaw/levi.hpp"
#include "weylaw/rng.hpp"
#include "weylaw/root_system.hpp"
#include "weylaw/spherical.hpp"

using namespace weylaw;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Settings {
  unsigned threads = 4;
  std::string artifacts;
};

Settings settings;

void write_artifact(const std::string& name, const Json& j) {
  if (settings.artifacts.empty()) return;
  std::filesystem::create_directories(settings.artifacts);
  std::ofstream(std::filesystem::path(settings.artifacts) / name) << dump_json(j) << '\n';
}

struct TypeSpec {
  Family f;
  int r;
};

std::vector<TypeSpec> parabolic_types() {
  std::vector<TypeSpec> out;
  for (int r = 1; r <= 6; ++r) out.push_back({Family::A, r});
  for (int r = 2; r <= 5; ++r) out.push_back({Family::B, r});
  for (int r = 3; r <= 5; ++r) out.push_back({Family::C, r});
  for (int r = 4; r <= 6; ++r) out.push_back({Family::D, r});
  for (int r = 6; r <= 8; ++r) out.push_back({Family::E, r});
  out.push_back({Family::F, 4});
  out.push_back({Family::G, 2});
  return out;
}

/// Expected parabolic-table cells by family.
struct Expected {
  long d_min, R;
  std::set<int> roots;
  bool abelian;
};

Expected expected_row(Family f, int n) {
  switch (f) {
    case Family::A:
      return {n, n, {1, n}, true};
    case Family::B:
      return {2 * n - 2, 2 * n - 1, {1}, true};
    case Family::C:
      return {n, 2 * n - 1, {1}, false};
    case Family::D:
      return {2 * n - 3, 2 * n - 2, n == 4 ? std::set<int>{1, 3, 4} : std::set<int>{1}, true};
    case Family::E:
      if (n == 6) return {11, 16, {1, 6}, true};
      if (n == 7) return {17, 27, {7}, true};
      return {29, 57, {8}, false};
    case Family::F:
      return {8, 15, {1}, false};
    case Family::G:
      return {3, 5, {2}, false};
  }
  return {};
}

std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

Outcome criterion1() {
  Outcome o;
  Json rows = Json::array();
  for (const auto& t : parabolic_types()) {
    const auto rs = RootSystem::build(t.f, t.r);
    const auto row = parabolic_table(rs);
    const auto e = expected_row(t.f, t.r);
    rows.push_back(row.to_json());
    const bool ok = row.d_min == e.d_min && row.R == e.R && e.roots.count(row.defining_root) && row.abelian == e.abelian;
    if (!ok) {
      o.pass = false;
      o.detail += rs.name() + " mismatch; ";
    }
  }
  write_artifact("criterion01_parabolic_table.json", rows);
  if (o.pass) o.detail = std::to_string(rows.size()) + " rows match";
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (const auto& t : parabolic_types()) {
    const auto rs = RootSystem::build(t.f, t.r);
    const long d = d_min(rs);
    const bool equal_rank = t.f == Family::A || t.f == Family::C || (t.f == Family::B && t.r == 2);
    const bool ok = d == expected_row(t.f, t.r).d_min && (equal_rank ? d == t.r : d > t.r);
    if (!ok) {
      o.pass = false;
      o.detail += rs.name() + " ";
    }
  }
  if (o.pass) o.detail = "d_min = <rho, highest coroot> on all types; B2 counted with C2";
  return o;
}

Outcome criterion3() {
  Outcome o;
  Json all = Json::array();
  std::size_t checked = 0;
  for (const auto& t : parabolic_types()) {
    const auto rs = RootSystem::build(t.f, t.r);
    auto rep = check_cone_identities(rs);
    checked += rep.fields["identities"].size();
    all.push_back(rep.to_json());
    if (!rep.pass) {
      o.pass = false;
      o.detail += rs.name() + " ";
    }
  }
  write_artifact("criterion03_cone_witnesses.json", all);
  if (o.pass) o.detail = std::to_string(checked) + " identities with rational witnesses";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::size_t checks = 0, violations = 0;
  Json all = Json::array();
  for (auto [f, r] : std::vector<TypeSpec>{{Family::A, 2}, {Family::B, 2}, {Family::G, 2}, {Family::A, 3}, {Family::B, 3}, {Family::C, 3},
                                          {Family::B, 4}, {Family::D, 4}, {Family::F, 4}, {Family::A, 5}}) {
    const auto rep = verify_root_lemma(RootSystem::build(f, r), 10'000, 4);
    checks += rep.fields["checks"].get<std::size_t>();
    violations += rep.fields["violations"].size();
    all.push_back(rep.to_json());
  }
  write_artifact("criterion04_root_lemma.json", all);
  o.pass = violations == 0;
  o.detail = std::to_string(checks) + " (beta, S) pairs, " + std::to_string(violations) + " violations";
  return o;
}

std::vector<TypeSpec> dominance_types() {
  return {{Family::A, 2}, {Family::A, 3}, {Family::A, 4}, {Family::A, 5}, {Family::B, 2}, {Family::B, 3},
          {Family::B, 4}, {Family::C, 3}, {Family::C, 4}, {Family::D, 4}, {Family::D, 5}};
}

Outcome criterion5() {
  Outcome o;
  std::size_t instances = 0, violations = 0;
  Json all = Json::array();
  for (const auto& t : dominance_types()) {
    const auto rs = RootSystem::build(t.f, t.r);
    const auto rep = verify_minimal_family(rs, 500, 5);
    instances += rep.fields["instances"].get<std::size_t>();
    violations += rep.fields["violations"].size();
    all.push_back({{"family", rs.name()}, {"pass", rep.pass}, {"minimal_family", rep.fields["minimal_family"]}});
  }
  write_artifact("criterion05_minimal_family.json", all);
  o.pass = violations == 0;
  o.detail = std::to_string(instances) + " (lambda, M) comparisons, " + std::to_string(violations) + " violations";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t checked = 0, failures = 0;
  Json all = Json::array();
  for (const auto& t : dominance_types()) {
    const auto rs = RootSystem::build(t.f, t.r);
    const auto rep = verify_injection_cases(rs, InjectionCase::Part1);
    checked += rep.fields["structural_checks"].get<std::size_t>();
    failures += rep.fields["violations"].size();
    all.push_back({{"family", rs.name()}, {"witnesses", rep.fields["witness_samples"]}});
  }
  write_artifact("criterion06_injections.json", all);
  o.pass = failures == 0;
  o.detail = std::to_string(checked) + " Levis with injection witnesses, " + std::to_string(failures) + " failures";
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::size_t violations = 0, instances = 0;
  Json all = Json::array();
  for (auto [f, r] : std::vector<TypeSpec>{{Family::C, 3}, {Family::C, 4}, {Family::B, 3}, {Family::B, 4}, {Family::D, 5}}) {
    const auto rs = RootSystem::build(f, r);
    const auto rep = verify_injection_cases(rs, InjectionCase::Siegel, 500, 7);
    violations += rep.fields["violations"].size();
    instances += rep.fields.value("instances", std::size_t{0}) + rep.fields.value("structural_checks", std::size_t{0});
    all.push_back(rep.to_json());
  }
  const auto b3 = RootSystem::build(Family::B, 3);
  const auto ratio = verify_injection_cases(b3, InjectionCase::B3RatioIdentities, 100, 7);
  violations += ratio.fields["violations"].size();
  instances += ratio.fields["instances"].get<std::size_t>();
  all.push_back(ratio.to_json());
  write_artifact("criterion07_siegel.json", all);
  o.pass = violations == 0;
  o.detail = std::to_string(instances) + " checks incl. 200 exact B3 ratio identities, " + std::to_string(violations) +
             " violations";
  return o;
}

SpectralParam random_param(const RootSystem& rs, const CounterRng& rng, std::uint64_t i) {
  std::vector<Rational> c;
  const auto base = i * static_cast<std::uint64_t>(2 * rs.rank() + 1);
  for (int j = 0; j < rs.rank(); ++j) {
    Rational q(rng.uniform_int(base + 2 * j, -20, 20), rng.uniform_int(base + 2 * j + 1, 1, 5));
    q.canonicalize();
    c.push_back(q);
  }
  const auto v = rs.from_fundamental_coords(c);
  return (rng.bits(base + 2 * rs.rank()) & 1ULL) ? SpectralParam::imaginary(v) : SpectralParam::real(v);
}

Outcome criterion8() {
  Outcome o;
  std::size_t compared = 0, mismatches = 0;
  for (auto [f, r] : std::vector<TypeSpec>{{Family::A, 2}, {Family::A, 3}, {Family::A, 4}, {Family::B, 2}, {Family::B, 3},
                                           {Family::B, 4}, {Family::C, 3}, {Family::C, 4}, {Family::D, 4}}) {
    const auto rs = RootSystem::build(f, r);
    const CounterRng rng(8, static_cast<std::uint64_t>(r));
    for (std::uint64_t i = 0; i < 1000; ++i) {
      const auto lambda = random_param(rs, rng, i);
      const auto fast = d_tilde(rs, lambda, {DTildePath::ClassicalFast});
      const auto full = d_tilde(rs, lambda, {DTildePath::Exhaustive});
      ++compared;
      if (!fast.squared_exact || !full.squared_exact || *fast.squared_exact != *full.squared_exact) ++mismatches;
    }
  }
  o.pass = mismatches == 0;
  o.detail = std::to_string(compared) + " exact comparisons, " + std::to_string(mismatches) + " mismatches";
  return o;
}

GrowthFit fit_for(Family f, int r, const std::vector<double>& ts, unsigned threads) {
  const auto ctx = DensityContext::make(RootSystem::build(f, r));
  Sampler s;
  s.method = Sampler::Method::MonteCarlo;
  s.seed = 1;
  s.samples = 200'000;
  s.threads = threads;
  return fit_growth_exponent(ctx, DomainSpec{DomainShape::Ball, {}, 1.0, {}}, ts, s);
}

Outcome criterion9() {
  Outcome o;
  struct Case {
    Family f;
    int r;
    double d, tol;
  };
  std::ostringstream os;
  for (const auto& c : {Case{Family::A, 1, 2.0, 0.05}, Case{Family::A, 2, 5.0, 0.1}, Case{Family::B, 2, 6.0, 0.1}}) {
    const auto fit = fit_for(c.f, c.r, {10, 20, 40, 80}, settings.threads);
    const bool ok = std::fabs(fit.slope - c.d) <= c.tol;
    o.pass = o.pass && ok;
    os << family_letter(c.f) << c.r << " slope " << brief(fit.slope) << " (d=" << c.d << ") ";
  }
  o.detail = os.str();
  return o;
}

std::vector<TypeSpec> rank3_types() {
  return {{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::B, 2}, {Family::B, 3}, {Family::C, 3}, {Family::G, 2}};
}

Outcome criterion10() {
  Outcome o;
  std::size_t grid = 0;
  for (std::size_t i = 0; i <= 1'000'000; ++i) {
    const double t = 1e-3 * static_cast<double>(i);
    ++grid;
    if (!(beta0(t) <= t / 2)) o.pass = false;
  }
  std::ostringstream os;
  os << "beta0 <= t/2 on " << grid << " points; ";
  Json all = Json::array();
  double worst_spread = 0.0;
  for (const auto& t : rank3_types()) {
    const auto ctx = DensityContext::make(RootSystem::build(t.f, t.r));
    std::vector<double> maxima, sampled;
    for (std::uint64_t seed : {1, 2, 3}) {
      const auto scan = scan_ratio_bound(ctx, 10'000, seed, 20.0, settings.threads, 16);
      maxima.push_back(scan.max_ratio);
      sampled.push_back(scan.sampled_max);
      if (!(scan.max_ratio <= scan.ceiling) || !std::isfinite(scan.max_ratio)) o.pass = false;
    }
    const double mean = (maxima[0] + maxima[1] + maxima[2]) / 3;
    double spread = 0.0;
    for (double m : maxima) spread = std::max(spread, std::fabs(m - mean) / mean);
    worst_spread = std::max(worst_spread, spread);
    if (spread > 0.05) o.pass = false;
    all.push_back({{"family", ctx.rs.name()}, {"maxima", maxima}, {"sampled_maxima", sampled}, {"ceiling", scan_ratio_bound(ctx, 0, 1).ceiling}, {"spread", spread}});
  }
  write_artifact("criterion10_ratio_bound.json", all);
  os << "ratio max seed spread <= " << brief(worst_spread);
  o.detail = os.str();
  return o;
}

Outcome criterion11() {
  Outcome o;
  std::ostringstream os;
  QuadratureSpec quad;
  const CounterRng rng(11, 0);
  double err_identity = 0.0, max_abs = 0.0, err_weyl = 0.0, err_bik = 0.0;
  // n = 2
  for (double nu : {0.0, 0.5, 1.0, 3.0, 10.0, 50.0}) {
    const ComplexVector l{{0, nu / 2}, {0, -nu / 2}}, lm{{0, -nu / 2}, {0, nu / 2}};
    err_identity = std::max(err_identity, std::abs(spherical_function(2, l, CartanCoordinate::from({0, 0}), quad) - 1.0));
    for (double t : {0.05, 0.3, 0.7}) {
      const auto X = CartanCoordinate::from({t, -t});
      const auto v = spherical_function(2, l, X, quad);
      max_abs = std::max(max_abs, std::abs(v));
      err_weyl = std::max(err_weyl, std::abs(v - spherical_function(2, lm, X, quad)));
      if (nu <= 10.0) {
        const auto k1 = GroupElement::rotation2(2 * M_PI * rng.uniform(static_cast<std::uint64_t>(nu * 100 + t * 10)));
        const auto k2 = GroupElement::rotation2(2 * M_PI * rng.uniform(static_cast<std::uint64_t>(nu * 100 + t * 10) + 7));
        const auto g = k1 * GroupElement::exp_diagonal(X.X) * k2;
        err_bik = std::max(err_bik, std::abs(spherical_function_at(l, g, quad) - v));
      }
    }
  }
  // n = 3: Weyl images are coordinate permutations of λ.
  QuadratureSpec q3;
  std::uint64_t ctr = 1000;
  for (const auto& nu : std::vector<std::vector<double>>{{1.0, 0.0, -1.0}, {2.0, -0.5, -1.5}, {0.0, 0.0, 0.0}}) {
    ComplexVector l;
    for (double x : nu) l.emplace_back(0.0, x);
    err_identity = std::max(err_identity, std::abs(spherical_function(3, l, CartanCoordinate::from({0, 0, 0}), q3) - 1.0));
    for (const auto& x : std::vector<std::vector<double>>{{0.4, 0.1, -0.5}, {0.3, -0.1, -0.2}}) {
      const auto X = CartanCoordinate::from(x);
      const auto v = spherical_function(3, l, X, q3);
      max_abs = std::max(max_abs, std::abs(v));
      std::vector<int> perm{0, 1, 2};
      while (std::next_permutation(perm.begin(), perm.end())) {
        ComplexVector wl;
        for (int p : perm) wl.push_back(l[static_cast<std::size_t>(p)]);
        err_weyl = std::max(err_weyl, std::abs(spherical_function(3, wl, X, q3) - v));
      }
      const auto k1 = GroupElement::euler_zyz(2 * M_PI * rng.uniform(ctr), M_PI * rng.uniform(ctr + 1), 2 * M_PI * rng.uniform(ctr + 2));
      const auto k2 = GroupElement::euler_zyz(2 * M_PI * rng.uniform(ctr + 3), M_PI * rng.uniform(ctr + 4), 2 * M_PI * rng.uniform(ctr + 5));
      ctr += 6;
      err_bik = std::max(err_bik, std::abs(spherical_function_at(l, k1 * GroupElement::exp_diagonal(X.X) * k2, q3) - v));
    }
  }
  const bool basic = err_identity <= 1e-6 && max_abs <= 1.0 + 1e-6 && err_weyl <= 1e-5 && err_bik <= 1e-5;
  os << "phi(e) err " << brief(err_identity) << ", max|phi| " << brief(max_abs)
     << ", Weyl err " << brief(err_weyl) << ", bi-K err " << brief(err_bik);

  // Decay ratios, n = 2: ν ≤ 50, ‖X‖ ≤ 1 with columns approaching the identity.
  std::vector<double> nus{1, 2, 5, 10, 20, 30, 40, 50};
  std::vector<CartanCoordinate> xs;
  for (double xn : {1e-3, 1e-2, 0.05, 0.1, 0.25, 0.5, 0.75, 1.0}) xs.push_back(CartanCoordinate::from({xn / std::sqrt(2.0), -xn / std::sqrt(2.0)}));
  DecayOptions dopt;
  dopt.threads = settings.threads;
  const auto d2 = decay_report(2, nus, xs, quad, dopt);
  // n = 3 on the wall ⟨λ, α₁∨⟩ = 0 (direction ϖ₂) and along ρ.
  std::vector<CartanCoordinate> xs3;
  for (double s : {1e-2, 0.1, 0.3}) xs3.push_back(CartanCoordinate::from({s, 0.0, -s}));
  DecayOptions wall = dopt;
  wall.direction = {1.0 / 3, 1.0 / 3, -2.0 / 3};
  const auto d3w = decay_report(3, {1, 3, 6}, xs3, q3, wall);
  const auto d3r = decay_report(3, {1, 3, 6}, xs3, q3, dopt);
  write_artifact("criterion11_decay_n2.json", d2.to_json());
  write_artifact("criterion11_decay_n3_wall.json", d3w.to_json());
  write_artifact("criterion11_decay_n3_rho.json", d3r.to_json());
  o.pass = basic && d2.pass && d3w.pass && d3r.pass;
  os << "; n=2 max sqrt-bound ratio " << brief(d2.fields["max_ratio_sqrt_bound"].get<double>()) << " dtilde ratio "
     << brief(d2.fields["max_ratio_dtilde_bound"].get<double>()) << " refinement "
     << brief(d2.fields["refinement_relative_change"].get<double>()) << "; n=3 wall/rho "
     << (d3w.pass ? "ok" : "FAIL") << "/" << (d3r.pass ? "ok" : "FAIL");
  o.detail = os.str();
  return o;
}

Outcome criterion12() {
  Outcome o;
  RoundtripOptions opt;
  opt.threads = settings.threads;
  const auto gauss = rank1_inversion_roundtrip([](double v) { return std::exp(-v * v / 8); }, opt);
  const auto zero = rank1_inversion_roundtrip([](double) { return 0.0; }, opt);
  const auto odd = rank1_inversion_roundtrip([](double v) { return std::exp(-v * v / 8) * (1.0 + 0.3 * v); }, opt);
  bool zero_exact = zero.fields["sup_error"].get<double>() == 0.0;
  for (const auto& row : zero.fields["rows"]) zero_exact = zero_exact && row["reconstructed"].get<double>() == 0.0;
  write_artifact("criterion12_roundtrip.json", gauss.to_json());
  o.pass = gauss.pass && zero_exact && odd.pass;
  o.detail = "gaussian sup err " + brief(gauss.fields["sup_error"].get<double>()) + ", odd-injected " +
             brief(odd.fields["sup_error"].get<double>()) + ", zero " + (zero_exact ? "exact" : "NOT exact");
  return o;
}

Outcome criterion13() {
  Outcome o;
  std::vector<std::string> broken;
  auto same = [&](const std::string& what, const std::function<std::string(unsigned)>& run) {
    const auto a = run(1), b = run(3), c = run(8), again = run(1);
    if (!(a == b && b == c && a == again)) broken.push_back(what);
  };
  const auto a2 = DensityContext::make(RootSystem::build(Family::A, 2));
  same("weyl-law", [&](unsigned th) {
    Sampler s;
    s.method = Sampler::Method::MonteCarlo;
    s.samples = 50'000;
    s.seed = 9;
    s.threads = th;
    const auto e = weyl_law_main_term(a2, DomainSpec{DomainShape::Ball, {}, 1.0, {}}, 20.0, s);
    return format_double(e.value) + format_double(e.standard_error);
  });
  same("growth-fit", [&](unsigned th) { return format_double(fit_for(Family::B, 2, {10, 20, 40, 80}, th).slope); });
  same("ratio-bound", [&](unsigned th) {
    const auto s = scan_ratio_bound(DensityContext::make(RootSystem::build(Family::B, 3)), 10'000, 2, 20.0, th);
    return format_double(s.max_ratio) + format_double(s.argmax_t);
  });
  same("minimal-family", [&](unsigned) { return dump_json(verify_minimal_family(RootSystem::build(Family::C, 3), 50, 3).to_json()); });
  same("dominance-suite", [&](unsigned) { return dump_json(verify_dominance_suite(RootSystem::build(Family::B, 3), 20, 3).to_json()); });
  same("decay", [&](unsigned th) {
    DecayOptions d;
    d.threads = th;
    d.refinement_check = false;
    return dump_json(decay_report(2, {1, 5}, {CartanCoordinate::from({0.3, -0.3})}, {}, d).to_json());
  });
  same("spherical-mc", [&](unsigned) {
    QuadratureSpec q;
    q.method = QuadratureSpec::Method::MonteCarlo;
    q.samples = 20'000;
    q.seed = 5;
    return format_double(std::abs(spherical_function(3, ComplexVector{{0, 1}, {0, 0}, {0, -1}}, CartanCoordinate::from({0.2, 0, -0.2}), q)));
  });
  o.pass = broken.empty();
  o.detail = o.pass ? "7 RNG-dependent outputs byte-identical across thread counts 1/3/8 and reruns" : "differs: ";
  for (const auto& b : broken) o.detail += b + " ";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylaw acceptance suite"};
  std::vector<int> only;
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  app.add_option("--threads", settings.threads, "Worker threads for parallel criteria");
  app.add_option("--artifacts", settings.artifacts, "Directory for witness/report artifacts");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"parabolic table", criterion1},
      {"d_min identity", criterion2},
      {"cone identities", criterion3},
      {"root lemma", criterion4},
      {"minimal Levi family", criterion5},
      {"injection witnesses", criterion6},
      {"Siegel cases", criterion7},
      {"D-tilde fast path equivalence", criterion8},
      {"Weyl-law exponent", criterion9},
      {"Plancherel lower-order checks", criterion10},
      {"spherical suite", criterion11},
      {"rank-1 inversion roundtrip", criterion12},
      {"determinism", criterion13},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!out.pass) ++failed;
    std::printf("%s  criterion %2d  %-34s %8.2fs  %s\n", out.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), secs,
                out.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
