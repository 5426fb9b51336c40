#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylaw/levi.hpp"
#include "weylaw/report.hpp"
#include "weylaw/root_system.hpp"

namespace weylaw {

/// Root system plus the cached Γ-constant block of the Plancherel density.
struct DensityContext {
  RootSystem rs;
  double volume_factor = 1.0;
  /// [Γ(⟨ρ,α∨⟩/2) / Γ((⟨ρ,α∨⟩+1)/2)]² per positive root.
  std::vector<double> gamma_constants;
  double gamma_block = 1.0;
  /// Orthonormal basis of the span of Δ (rows, ambient coordinates).
  std::vector<std::vector<double>> basis;
  /// coroot_coords[k][j] = (u_j, α_k∨) for the orthonormal basis u.
  std::vector<std::vector<double>> coroot_coords;

  static DensityContext make(const RootSystem& rs, double volume_factor = 1.0);
};

double gamma_constant(long rho_coheight);

/// β₀(it) = (|t|/2)·tanh(π|t|/2).
double beta0(double t);

/// β(μ) for purely imaginary μ. Throws if Re μ ≠ 0.
double plancherel_density(const DensityContext& ctx, const SpectralParam& mu);
/// β at μ = i·Σ x_j u_j in the orthonormal coordinates of the context.
double plancherel_density_orthonormal(const DensityContext& ctx, const std::vector<double>& x);

/// β̃(t, μ) = ∏ (t + |⟨μ, α∨⟩|). Throws for t < 1.
double beta_tilde(const RootSystem& rs, double t, const SpectralParam& mu);

/// Product ∏_{α∈Φ⁺_{¬M}} (1 + |(α, λ)|) using the root pairing.
Rational delta_m(const RootSystem& rs, const LeviDescriptor& m, const AmbientVector& lambda);
/// Same product over an explicit root-index set.
Rational delta_over(const RootSystem& rs, const std::vector<std::size_t>& roots, const AmbientVector& lambda);

enum class DTildePath { Auto, ClassicalFast, Exhaustive, Heuristic };

struct DTildeOptions {
  DTildePath path = DTildePath::Auto;
  /// Word-length bound for the E7/E8 heuristic.
  int heuristic_word_length = 8;
};

struct DTildeResult {
  double value = 1.0;
  /// min_M ∏_{¬M} (1 + |⟨λ,α∨⟩|), exact when λ is real or purely imaginary.
  std::optional<Rational> squared_exact;
  LeviDescriptor minimizer;
  /// |⟨λ, α∨⟩| over Φ⁺_{¬M} of the minimizer, in root order.
  std::vector<double> factors;
  /// Exact counterpart of `factors` when λ is real or purely imaginary.
  std::vector<Rational> factors_exact;
  /// Heuristic path: simple-reflection word w, the minimizer is w⁻¹·M.
  std::vector<int> weyl_word;
  std::string path;
  bool upper_bound_only = false;

  Json to_json(const RootSystem& rs) const;
};

/// D̃(λ) = min_{M ≠ G} ∏_{α∈Φ⁺∖Φ^{M,+}} (1 + |⟨λ, α∨⟩|)^{1/2}.
DTildeResult d_tilde(const RootSystem& rs, const SpectralParam& lambda, const DTildeOptions& opts = {});

/// D̃ for a floating-point parameter in ambient coordinates (exhaustive Levi family).
double d_tilde_numeric(const RootSystem& rs, const std::vector<double>& real_part, const std::vector<double>& imag_part);

/// D(λ): D̃ for classical types, the log-corrected size-2r max–min otherwise.
DTildeResult big_d(const RootSystem& rs, const SpectralParam& lambda, const DTildeOptions& opts = {});

/// Ambient Euclidean norm of a complex parameter.
double norm(const SpectralParam& lambda);

/// Maximal semistandard Levis, cached per root system name.
const std::vector<LeviDescriptor>& cached_maximal_levis(const RootSystem& rs);

enum class DomainShape { Box, Ball, HalfBall };
std::string to_string(DomainShape s);
DomainShape parse_domain_shape(const std::string& text);

/// Bounded domain Ω in the orthonormal coordinates of i·(span Δ).
struct DomainSpec {
  DomainShape shape = DomainShape::Ball;
  std::vector<double> center;   ///< length r; empty means the origin
  double radius = 1.0;          ///< Ball / HalfBall
  std::vector<double> extents;  ///< Box half-widths, length r
};

struct Sampler {
  enum class Method { MonteCarlo, Grid, Auto } method = Method::Auto;
  std::uint64_t seed = 1;
  std::size_t samples = 200'000;
  /// Nodes per dimension; 0 scales with t and the coroot lengths.
  std::size_t grid_points = 0;
  unsigned threads = 1;
};

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t evaluations = 0;
  std::string method;
};

/// Λ_Ω(t) = (volume_factor/|W|) ∫_{tΩ} β(λ) dλ.
Estimate weyl_law_main_term(const DensityContext& ctx, const DomainSpec& omega, double t, const Sampler& sampler);

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  ///< RMS residual of the log-log fit
  std::vector<double> t_values;
  std::vector<Estimate> estimates;
};

/// Least-squares slope of log Λ_Ω(t) against log t.
GrowthFit fit_growth_exponent(const DensityContext& ctx, const DomainSpec& omega, const std::vector<double>& t_grid,
                              const Sampler& sampler);

struct RatioBoundScan {
  double max_ratio = 0.0;
  /// Best raw sample before local refinement.
  double sampled_max = 0.0;
  /// Analytic supremum: Γ-block / 2^{|Φ⁺|}.
  double ceiling = 0.0;
  std::size_t samples = 0;
  std::vector<double> argmax_mu, argmax_nu;
  double argmax_t = 0.0;
};

/// Max of β(μ+tν) / (β̃(t,μ)·β̃(ν)) over seeded samples: μ, ν uniform in the
/// radius-`radius` ball of the orthonormal coordinates, t log-uniform on [1, 100].
/// With `refine_starts` > 0 the best samples seed a compass search that stays
/// inside the sampling domain.
RatioBoundScan scan_ratio_bound(const DensityContext& ctx, std::size_t samples, std::uint64_t seed, double radius = 20.0,
                                unsigned threads = 1, std::size_t refine_starts = 0);

}  // namespace weylaw
