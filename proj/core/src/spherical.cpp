#include "weylaw/spherical.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "parallel.hpp"
#include "weylaw/density.hpp"
#include "weylaw/quadrature.hpp"
#include "weylaw/rng.hpp"

namespace weylaw {

namespace {

using Mat3 = Eigen::Matrix3d;
using Cplx = std::complex<double>;

void check_n(int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("spherical functions are implemented for SL(2) and SL(3) only");
}

Eigen::MatrixXd to_eigen(const GroupElement& g) {
  Eigen::MatrixXd m(g.n(), g.n());
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) m(i, j) = g(i, j);
  return m;
}

GroupElement from_eigen(const Eigen::MatrixXd& m) {
  std::vector<double> e;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) e.push_back(m(i, j));
  return GroupElement::make(static_cast<int>(m.rows()), std::move(e));
}

/// S = U·D·Uᵗ with U upper unipotent, eliminated from the bottom-right corner.
void udu(const Eigen::MatrixXd& s, Eigen::MatrixXd& u, Eigen::VectorXd& d) {
  const auto n = s.rows();
  u = Eigen::MatrixXd::Identity(n, n);
  d = Eigen::VectorXd::Zero(n);
  for (auto j = n - 1; j >= 0; --j) {
    double v = s(j, j);
    for (auto k = j + 1; k < n; ++k) v -= u(j, k) * u(j, k) * d(k);
    d(j) = v;
    for (auto i = j - 1; i >= 0; --i) {
      double w = s(i, j);
      for (auto k = j + 1; k < n; ++k) w -= u(i, k) * u(j, k) * d(k);
      u(i, j) = w / v;
    }
  }
}

double norm2(const std::vector<double>& v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

double imag_norm(const ComplexVector& l) {
  double s = 0.0;
  for (const auto& c : l) s += c.imag() * c.imag();
  return std::sqrt(s);
}

/// Coefficients c_j = λ_j + ρ_j of the exponent ⟨λ+ρ, H⟩.
ComplexVector shifted(const ComplexVector& lambda) {
  const auto rho = rho_sl(static_cast<int>(lambda.size()));
  ComplexVector c(lambda.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = lambda[j] + rho[j];
  return c;
}

/// SL(2) at e^X: (1/π)∫_0^π b(ψ)^{−(1+z)/2} dψ, b = e^{−2t} + 2 sinh(2t) sin²(ψ/2),
/// on panels graded geometrically toward the peak at ψ = 0.
Cplx sl2_diagonal(const ComplexVector& lambda, double t, std::size_t budget) {
  if (t == 0.0) return 1.0;
  const Cplx z = lambda[0] - lambda[1];
  const Cplx expo = -(1.0 + z) / 2.0;
  const double s2t = std::sinh(2.0 * t), em = std::exp(-2.0 * t);
  const double width = std::min(std::numbers::pi / 8, 2.0 * std::sqrt(em / s2t));
  std::vector<double> edges{0.0};
  for (double e = width; e < std::numbers::pi; e *= 2.0) edges.push_back(e);
  edges.push_back(std::numbers::pi);
  const std::size_t panels = edges.size() - 1;
  const auto m = std::max<std::size_t>({16, (budget + panels - 1) / panels,
                                        static_cast<std::size_t>(std::ceil(16 + std::abs(z.imag())))});
  const auto rule = gauss_legendre(m);
  Cplx sum = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double a = edges[p], b = edges[p + 1], half = (b - a) / 2, mid = (a + b) / 2;
    Cplx part = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double psi = mid + half * rule.nodes[i];
      const double sn = std::sin(psi / 2);
      const double logb = std::log(em + 2.0 * s2t * sn * sn);
      part += rule.weights[i] * std::exp(expo * logb);
    }
    sum += half * part;
  }
  return sum / std::numbers::pi;
}

/// K-integral for S = g·gᵗ with tensor rules (trapezoid on periodic angles,
/// Gauss-Legendre in the Euler β); used for n = 3 and non-diagonal n = 2.
Cplx tensor_integral(const ComplexVector& lambda, const Eigen::MatrixXd& s, std::size_t p) {
  const auto c = shifted(lambda);
  if (s.rows() == 2) {
    // D₂ = k₂ S k₂ᵗ with k₂ = (sin θ, cos θ); H = (−h, h), h = ½ log D₂.
    const Cplx expo = (c[1] - c[0]) / 2.0;
    Cplx sum = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(p);
      const double sn = std::sin(th), cs = std::cos(th);
      const double d2 = sn * sn * s(0, 0) + 2.0 * sn * cs * s(0, 1) + cs * cs * s(1, 1);
      sum += std::exp(expo * std::log(d2));
    }
    return sum / static_cast<double>(p);
  }
  const Mat3 sm = s;
  const Mat3 sinv = sm.inverse();
  const auto trap = periodic_trapezoid(p, 0.0, 2.0 * std::numbers::pi);
  const auto gl = gauss_legendre(p, 0.0, std::numbers::pi);
  std::vector<double> ca(p), sa(p);
  for (std::size_t i = 0; i < p; ++i) {
    ca[i] = std::cos(trap.nodes[i]);
    sa[i] = std::sin(trap.nodes[i]);
  }
  Cplx total = 0.0;
  for (std::size_t ib = 0; ib < p; ++ib) {
    const double b = gl.nodes[ib], cb = std::cos(b), sb = std::sin(b);
    Cplx over_gamma = 0.0;
    for (std::size_t ig = 0; ig < p; ++ig) {
      const double cg = ca[ig], sg = sa[ig];
      // R = Ry(β)·Rz(γ); k = Rz(α)·R, so k₃ = R₃ and k₁ = cos α R₁ − sin α R₂.
      const Eigen::Vector3d r1(cb * cg, -cb * sg, sb);
      const Eigen::Vector3d r2(sg, cg, 0.0);
      const Eigen::Vector3d r3(-sb * cg, sb * sg, cb);
      const double d3 = r3.dot(sm * r3);
      const double qa = r1.dot(sinv * r1), qb = r1.dot(sinv * r2), qc = r2.dot(sinv * r2);
      const double h3 = 0.5 * std::log(d3);
      Cplx over_alpha = 0.0;
      for (std::size_t ia = 0; ia < p; ++ia) {
        const double d23 = qa * ca[ia] * ca[ia] - 2.0 * qb * ca[ia] * sa[ia] + qc * sa[ia] * sa[ia];
        const double h23 = 0.5 * std::log(d23);
        over_alpha += std::exp(-c[0] * h23 + c[1] * (h23 - h3) + c[2] * h3);
      }
      over_gamma += over_alpha;
    }
    total += gl.weights[ib] * sb * over_gamma;
  }
  return total / (2.0 * static_cast<double>(p) * static_cast<double>(p));
}

Cplx monte_carlo_integral(const ComplexVector& lambda, const Eigen::MatrixXd& s, const QuadratureSpec& quad) {
  const auto c = shifted(lambda);
  const CounterRng rng(quad.seed, 0x5a3);
  Cplx sum = 0.0;
  const auto n = s.rows();
  for (std::size_t i = 0; i < quad.samples; ++i) {
    Eigen::MatrixXd k(n, n);
    if (n == 2) {
      const double th = 2.0 * std::numbers::pi * rng.uniform(4 * i);
      k << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
    } else {
      const auto [a, b] = rng.normal_pair(4 * i);
      const auto [cq, d] = rng.normal_pair(4 * i + 2);
      k = Eigen::Quaterniond(a, b, cq, d).normalized().toRotationMatrix();
    }
    Eigen::MatrixXd u;
    Eigen::VectorXd dd;
    udu(k * s * k.transpose(), u, dd);
    Cplx e = 0.0;
    for (int j = 0; j < n; ++j) e += c[static_cast<std::size_t>(j)] * (0.5 * std::log(dd(j)));
    sum += std::exp(e);
  }
  return sum / static_cast<double>(quad.samples);
}

bool is_diagonal(const Eigen::MatrixXd& s) {
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j)
      if (i != j && s(i, j) != 0.0) return false;
  return true;
}

// The guard only sees the oscillation; growth of exp⟨Re λ + ρ, H⟩ also costs nodes.
std::size_t auto_points(const ComplexVector& lambda, double xnorm, const QuadratureSpec& quad) {
  const auto rho = rho_sl(static_cast<int>(lambda.size()));
  double growth = 0.0;
  for (std::size_t j = 0; j < lambda.size(); ++j) growth += std::pow(lambda[j].real() + rho[j], 2);
  return static_cast<std::size_t>(std::ceil(quad.guard_constant * (1.0 + (imag_norm(lambda) + std::sqrt(growth)) * xnorm)));
}

Cplx integrate(const ComplexVector& lambda, const GroupElement& g, const QuadratureSpec& quad, double xnorm) {
  const auto gm = to_eigen(g);
  const Eigen::MatrixXd s = gm * gm.transpose();
  if (quad.method == QuadratureSpec::Method::MonteCarlo) return monte_carlo_integral(lambda, s, quad);
  const std::size_t need = static_cast<std::size_t>(std::ceil(quad.guard_constant * (1.0 + imag_norm(lambda) * xnorm)));
  if (quad.points != 0 && quad.points < need)
    throw QuadratureError("oscillation guard: at least " + std::to_string(need) + " nodes per angle required, got " +
                              std::to_string(quad.points),
                          need);
  const std::size_t p = quad.points ? quad.points : auto_points(lambda, xnorm, quad);
  if (g.n() == 2 && is_diagonal(s)) return sl2_diagonal(lambda, 0.5 * std::log(std::max(s(0, 0), s(1, 1))), p);
  return tensor_integral(lambda, s, p);
}

bool purely_imaginary(const ComplexVector& l) {
  return std::all_of(l.begin(), l.end(), [](const Cplx& c) { return c.real() == 0.0; });
}

Cplx evaluate_checked(const ComplexVector& lambda, const GroupElement& g, QuadratureSpec quad, double xnorm) {
  Cplx v = integrate(lambda, g, quad, xnorm);
  if (!purely_imaginary(lambda) || quad.method != QuadratureSpec::Method::Gauss) return v;
  // |φ_{iν}| ≤ 1; escalate the resolution before giving up.
  for (int attempt = 0; attempt < 2 && std::abs(v) > 1.0 + 1e-9; ++attempt) {
    const std::size_t base = quad.points ? quad.points : auto_points(lambda, xnorm, quad);
    quad.points = 2 * base;
    v = integrate(lambda, g, quad, xnorm);
  }
  if (std::abs(v) > 1.0 + 1e-6)
    throw QuadratureError("quadrature failed the |phi| <= 1 sanity check after refinement", quad.points * 2);
  return v;
}

}  // namespace

GroupElement GroupElement::make(int n, std::vector<double> entries) {
  check_n(n);
  if (entries.size() != static_cast<std::size_t>(n * n)) throw std::invalid_argument("matrix needs n*n entries");
  GroupElement g;
  g.n_ = n;
  g.m_ = std::move(entries);
  const double det = g.determinant();
  if (!(det > 0.0)) throw std::invalid_argument("matrix must have positive determinant to be rescaled into SL(n)");
  const double scale = std::pow(det, -1.0 / n);
  for (auto& x : g.m_) x *= scale;
  return g;
}

GroupElement GroupElement::identity(int n) {
  std::vector<double> e(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = 1.0;
  return make(n, std::move(e));
}

GroupElement GroupElement::exp_diagonal(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  check_n(n);
  std::vector<double> e(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i * n + i)] = std::exp(x[static_cast<std::size_t>(i)]);
  GroupElement g;
  g.n_ = n;
  g.m_ = std::move(e);
  return g;
}

GroupElement GroupElement::rotation2(double theta) {
  return make(2, {std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)});
}

GroupElement GroupElement::euler_zyz(double a, double b, double c) {
  const Mat3 r = (Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()) * Eigen::AngleAxisd(b, Eigen::Vector3d::UnitY()) *
                  Eigen::AngleAxisd(c, Eigen::Vector3d::UnitZ()))
                     .toRotationMatrix();
  return from_eigen(r);
}

double GroupElement::determinant() const { return to_eigen(*this).determinant(); }

GroupElement GroupElement::transpose() const { return from_eigen(to_eigen(*this).transpose()); }

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.n() != b.n()) throw std::invalid_argument("size mismatch in group product");
  return from_eigen(to_eigen(a) * to_eigen(b));
}

CartanCoordinate CartanCoordinate::from(std::vector<double> x) {
  check_n(static_cast<int>(x.size()));
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (std::fabs(sum) > 1e-9) throw std::invalid_argument("Cartan coordinate must have trace zero");
  std::sort(x.begin(), x.end(), std::greater<>());
  return {std::move(x)};
}

double CartanCoordinate::norm() const { return norm2(X); }

std::vector<double> iwasawa_H0(const GroupElement& g) {
  const auto gm = to_eigen(g);
  Eigen::MatrixXd u;
  Eigen::VectorXd d;
  udu(gm * gm.transpose(), u, d);
  std::vector<double> h(static_cast<std::size_t>(g.n()));
  for (int j = 0; j < g.n(); ++j) h[static_cast<std::size_t>(j)] = 0.5 * std::log(d(j));
  return h;
}

IwasawaFactors iwasawa_decompose(const GroupElement& g) {
  const auto gm = to_eigen(g);
  Eigen::MatrixXd u;
  Eigen::VectorXd d;
  udu(gm * gm.transpose(), u, d);
  const Eigen::VectorXd a = d.cwiseSqrt();
  const Eigen::MatrixXd k = a.cwiseInverse().asDiagonal() * u.triangularView<Eigen::UnitUpper>().solve(gm);
  return {from_eigen(u), from_eigen(Eigen::MatrixXd(a.asDiagonal())), from_eigen(k)};
}

CartanCoordinate cartan_X(const GroupElement& g) {
  const auto gm = to_eigen(g);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gm.transpose() * gm);
  std::vector<double> x;
  for (int i = 0; i < g.n(); ++i) x.push_back(0.5 * std::log(es.eigenvalues()(i)));
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (auto& v : x) v -= mean;
  std::sort(x.begin(), x.end(), std::greater<>());
  return {x};
}

double q_of(const GroupElement& g) {
  const auto gm = to_eigen(g);
  return (gm.transpose() * gm).trace() - g.n();
}

std::vector<double> rho_sl(int n) {
  std::vector<double> r;
  for (int j = 0; j < n; ++j) r.push_back((n - 1) / 2.0 - j);
  return r;
}

ComplexVector to_complex(const SpectralParam& lambda) {
  const auto re = lambda.real_part.to_doubles();
  const auto im = lambda.imag_part.to_doubles();
  ComplexVector out;
  for (std::size_t j = 0; j < re.size(); ++j) out.emplace_back(re[j], im[j]);
  return out;
}

std::size_t required_points(const ComplexVector& lambda, const CartanCoordinate& X, const QuadratureSpec& quad) {
  return static_cast<std::size_t>(std::ceil(quad.guard_constant * (1.0 + imag_norm(lambda) * X.norm())));
}

std::size_t resolved_points(const ComplexVector& lambda, const CartanCoordinate& X, const QuadratureSpec& quad) {
  return quad.points ? quad.points : auto_points(lambda, X.norm(), quad);
}

std::complex<double> spherical_function(int n, const ComplexVector& lambda, const CartanCoordinate& X,
                                        const QuadratureSpec& quad) {
  check_n(n);
  if (lambda.size() != static_cast<std::size_t>(n) || X.X.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("lambda and X need n coordinates");
  if (X.norm() == 0.0) return 1.0;
  return evaluate_checked(lambda, GroupElement::exp_diagonal(X.X), quad, X.norm());
}

std::complex<double> spherical_function(int n, const SpectralParam& lambda, const CartanCoordinate& X,
                                        const QuadratureSpec& quad) {
  return spherical_function(n, to_complex(lambda), X, quad);
}

std::complex<double> spherical_function_at(const ComplexVector& lambda, const GroupElement& g, const QuadratureSpec& quad) {
  if (lambda.size() != static_cast<std::size_t>(g.n())) throw std::invalid_argument("lambda needs n coordinates");
  return evaluate_checked(lambda, g, quad, cartan_X(g).norm());
}

namespace {

struct DecayRow {
  double nu, xnorm, abs_phi, r21, ra2, ra1;
  std::size_t points;
};

/// Σ_w ∏_{α∈Φ⁺, ⟨wα, X⟩ ≠ 0} (1 + ‖X‖·|⟨λ, α∨⟩|)^{−1/2} for SL(n), λ = iν·dir.
double weyl_sum_majorant(const std::vector<double>& dir, double nu, const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  const double t = norm2(x);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    double prod = 1.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double wx = x[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] -
                          x[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])];
        if (std::fabs(wx) <= 1e-12 * (1.0 + t)) continue;
        const double pairing = nu * (dir[static_cast<std::size_t>(i)] - dir[static_cast<std::size_t>(j)]);
        prod *= 1.0 / std::sqrt(1.0 + t * std::fabs(pairing));
      }
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<DecayRow> decay_rows(int n, const std::vector<double>& nu_grid, const std::vector<CartanCoordinate>& x_grid,
                                 const QuadratureSpec& quad, const std::vector<double>& dir, unsigned threads, int scale) {
  const auto rs = RootSystem::build(Family::A, n - 1);
  const double dnorm = norm2(dir);
  std::vector<DecayRow> rows(nu_grid.size() * x_grid.size());
  detail::for_each_block(rows.size(), threads, [&](std::size_t idx) {
    const double nu = nu_grid[idx / x_grid.size()];
    const auto& X = x_grid[idx % x_grid.size()];
    ComplexVector lambda;
    std::vector<double> im;
    for (double d : dir) {
      lambda.emplace_back(0.0, nu * d);
      im.push_back(nu * d * X.norm());
    }
    QuadratureSpec q = quad;
    const std::size_t base = q.points ? q.points : required_points(lambda, X, q);
    q.points = base * static_cast<std::size_t>(scale);
    const double phi = std::abs(spherical_function(n, lambda, X, q));
    const double r21 = phi * std::sqrt(1.0 + nu * dnorm * X.norm());
    const double ra2 = phi * d_tilde_numeric(rs, {}, im);
    const double ra1 = phi / weyl_sum_majorant(dir, nu, X.X);
    rows[idx] = {nu, X.norm(), phi, r21, ra2, ra1, q.points};
  });
  return rows;
}

}  // namespace

Report decay_report(int n, const std::vector<double>& nu_grid, const std::vector<CartanCoordinate>& x_grid,
                    const QuadratureSpec& quad, const DecayOptions& opts) {
  check_n(n);
  const auto dir = opts.direction.empty() ? rho_sl(n) : opts.direction;
  if (dir.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("direction needs n coordinates");
  Report rep;
  rep.kind = "spherical-decay";
  rep.fields["n"] = n;
  rep.fields["direction"] = dir;
  rep.fields["guard_constant"] = quad.guard_constant;
  const auto rows = decay_rows(n, nu_grid, x_grid, quad, dir, opts.threads, 1);
  double m21 = 0.0, ma2 = 0.0, ma1 = 0.0, max_phi = 0.0;
  bool finite = true;
  Json out = Json::array();
  for (const auto& r : rows) {
    m21 = std::max(m21, r.r21);
    ma2 = std::max(ma2, r.ra2);
    ma1 = std::max(ma1, r.ra1);
    max_phi = std::max(max_phi, r.abs_phi);
    finite = finite && std::isfinite(r.r21) && std::isfinite(r.ra2) && std::isfinite(r.ra1);
    out.push_back({{"nu", r.nu},
                   {"X_norm", r.xnorm},
                   {"abs_phi", r.abs_phi},
                   {"ratio_sqrt_bound", r.r21},
                   {"ratio_dtilde_bound", r.ra2},
                   {"ratio_weyl_sum", r.ra1},
                   {"points", r.points}});
  }
  rep.fields["max_abs_phi"] = max_phi;
  rep.fields["max_ratio_sqrt_bound"] = m21;
  rep.fields["max_ratio_dtilde_bound"] = ma2;
  rep.fields["max_ratio_weyl_sum"] = ma1;
  rep.pass = finite && max_phi <= 1.0 + opts.tolerance;
  if (opts.refinement_check) {
    const auto fine = decay_rows(n, nu_grid, x_grid, quad, dir, opts.threads, 2);
    double f21 = 0.0, fa2 = 0.0, fa1 = 0.0;
    for (const auto& r : fine) {
      f21 = std::max(f21, r.r21);
      fa2 = std::max(fa2, r.ra2);
      fa1 = std::max(fa1, r.ra1);
    }
    const double change = std::max({std::fabs(f21 - m21) / m21, std::fabs(fa2 - ma2) / ma2, std::fabs(fa1 - ma1) / ma1});
    rep.fields["refinement_relative_change"] = change;
    rep.pass = rep.pass && change < 1e-4;
  }
  rep.fields["rows"] = out;
  return rep;
}

Report rank1_inversion_roundtrip(const std::function<double(double)>& hhat, const RoundtripOptions& o) {
  Report rep;
  rep.kind = "rank1-roundtrip";
  double hmax = 0.0;
  const auto nu_rule = gauss_legendre(o.nu_nodes, 0.0, o.nu_cutoff);
  std::vector<double> heven(o.nu_nodes);
  for (std::size_t i = 0; i < o.nu_nodes; ++i) {
    const double v = nu_rule.nodes[i];
    heven[i] = 0.5 * (hhat(v) + hhat(-v));
    hmax = std::max(hmax, std::fabs(heven[i]));
  }
  const double tail = std::max(std::fabs(hhat(o.nu_cutoff)), std::fabs(hhat(-o.nu_cutoff)));
  if (tail > 1e-12 * std::max(1.0, hmax))
    throw std::domain_error("spectral truncation: |hhat| at the cutoff exceeds the budget; raise nu_cutoff");

  QuadratureSpec quad;
  auto phi = [&](double nu, double t) {
    return spherical_function(2, ComplexVector{{0.0, nu / 2}, {0.0, -nu / 2}}, CartanCoordinate::from({t, -t}), quad).real();
  };
  // f(t) = (1/|W|) ∫ ĥ(ν) φ_{−iν}(a_t) β(iν) dν, folded onto ν ≥ 0 by evenness.
  const auto t_rule = gauss_legendre(o.t_nodes, 0.0, o.t_max);
  std::vector<double> f(o.t_nodes);
  const double gamma_a1 = gamma_constant(1);
  detail::for_each_block(o.t_nodes, o.threads, [&](std::size_t j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < o.nu_nodes; ++i) {
      if (heven[i] == 0.0) continue;
      const double v = nu_rule.nodes[i];
      acc += nu_rule.weights[i] * heven[i] * phi(-v, t_rule.nodes[j]) * gamma_a1 * beta0(v);
    }
    f[j] = acc;
  });
  double fmax = 0.0;
  for (double x : f) fmax = std::max(fmax, std::fabs(x));
  const double edge = std::fabs(f.back()) * std::sinh(2.0 * t_rule.nodes.back());
  if (fmax > 0.0 && edge > 1e-9 * fmax)
    throw std::domain_error("radial truncation: f(t) sinh(2t) at t_max exceeds the budget; raise t_max");

  auto forward = [&](double nu) {
    double acc = 0.0;
    for (std::size_t j = 0; j < o.t_nodes; ++j) {
      if (f[j] == 0.0) continue;
      const double t = t_rule.nodes[j];
      acc += t_rule.weights[j] * f[j] * phi(nu, t) * std::sinh(2.0 * t);
    }
    return acc;
  };
  const double target = 0.5 * (hhat(o.calibration_nu) + hhat(-o.calibration_nu));
  const double raw = forward(o.calibration_nu);
  const double gain = raw == 0.0 ? 1.0 : target / raw;

  std::vector<double> out_nu;
  for (std::size_t i = 0; i < o.nu_out_points; ++i)
    out_nu.push_back(o.nu_out_points == 1 ? 0.0
                                          : -o.nu_max + 2.0 * o.nu_max * static_cast<double>(i) /
                                                            static_cast<double>(o.nu_out_points - 1));
  std::vector<double> recon(out_nu.size());
  detail::for_each_block(out_nu.size(), o.threads, [&](std::size_t i) { recon[i] = gain * forward(out_nu[i]); });
  double sup = 0.0;
  Json rows = Json::array();
  for (std::size_t i = 0; i < out_nu.size(); ++i) {
    const double v = out_nu[i];
    const double even = 0.5 * (hhat(v) + hhat(-v));
    const double err = std::fabs(recon[i] - even);
    sup = std::max(sup, err);
    rows.push_back({{"nu", v}, {"hhat", hhat(v)}, {"even_projection", even}, {"reconstructed", recon[i]}, {"error", err}});
  }
  rep.fields["calibration_nu"] = o.calibration_nu;
  rep.fields["gain"] = gain;
  rep.fields["calibration_note"] = "measure normalization fixed by unit gain at the calibration point";
  rep.fields["sup_error"] = sup;
  rep.fields["tolerance"] = o.tolerance;
  rep.fields["rows"] = rows;
  rep.pass = sup < o.tolerance;
  return rep;
}

}  // namespace weylaw
