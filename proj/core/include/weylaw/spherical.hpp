#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "weylaw/report.hpp"
#include "weylaw/root_system.hpp"

namespace weylaw {

/// Element of SL(n, ℝ), n ∈ {2, 3}, stored row-major.
class GroupElement {
 public:
  /// Rescales by det^{-1/n}; throws for det ≤ 0 or unsupported n.
  static GroupElement make(int n, std::vector<double> entries);
  static GroupElement identity(int n);
  /// exp of a diagonal trace-zero vector.
  static GroupElement exp_diagonal(const std::vector<double>& x);
  static GroupElement rotation2(double theta);
  /// Rz(a)·Ry(b)·Rz(c).
  static GroupElement euler_zyz(double a, double b, double c);

  int n() const { return n_; }
  double operator()(int i, int j) const { return m_[static_cast<std::size_t>(i * n_ + j)]; }
  const std::vector<double>& entries() const { return m_; }
  double determinant() const;
  GroupElement transpose() const;
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);

 private:
  int n_ = 2;
  std::vector<double> m_;
};

/// Dominant representative X(g): nonincreasing, trace zero.
struct CartanCoordinate {
  std::vector<double> X;

  /// Sorts into the dominant chamber; throws if the entries do not sum to zero.
  static CartanCoordinate from(std::vector<double> x);
  double norm() const;
};

struct QuadratureSpec {
  enum class Method { Gauss, MonteCarlo } method = Method::Gauss;
  /// Nodes per angle; 0 picks the automatic resolution.
  std::size_t points = 0;
  std::uint64_t seed = 1;
  std::size_t samples = 200'000;
  double target_abs_err = 1e-8;
  /// Minimum nodes per unit of (1 + ‖Im λ‖·‖X‖).
  double guard_constant = 40.0;
};

/// Raised when the requested quadrature cannot resolve the integrand.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, std::size_t required) : std::runtime_error(what), required_points(required) {}
  std::size_t required_points;
};

struct IwasawaFactors {
  GroupElement n, a, k;
};

/// H₀(g) for g = n·a·k (n upper unipotent): log of the diagonal of a.
std::vector<double> iwasawa_H0(const GroupElement& g);
IwasawaFactors iwasawa_decompose(const GroupElement& g);
CartanCoordinate cartan_X(const GroupElement& g);
/// tr(gᵗg) − n.
double q_of(const GroupElement& g);

using ComplexVector = std::vector<std::complex<double>>;

/// ρ of SL(n): ((n−1)/2, (n−3)/2, …).
std::vector<double> rho_sl(int n);
ComplexVector to_complex(const SpectralParam& lambda);

/// Minimum admissible nodes per angle for (λ, X).
std::size_t required_points(const ComplexVector& lambda, const CartanCoordinate& X, const QuadratureSpec& quad);
/// Nodes per angle actually used: `quad.points`, or the automatic choice, which
/// also scales with ‖Re λ + ρ‖·‖X‖.
std::size_t resolved_points(const ComplexVector& lambda, const CartanCoordinate& X, const QuadratureSpec& quad);

/// φ_λ(e^X) = ∫_K exp⟨λ+ρ, H₀(k e^X)⟩ dk with normalized Haar measure.
std::complex<double> spherical_function(int n, const ComplexVector& lambda, const CartanCoordinate& X,
                                        const QuadratureSpec& quad = {});
std::complex<double> spherical_function(int n, const SpectralParam& lambda, const CartanCoordinate& X,
                                        const QuadratureSpec& quad = {});
/// Same integral at an arbitrary group element (used for bi-K-invariance).
std::complex<double> spherical_function_at(const ComplexVector& lambda, const GroupElement& g, const QuadratureSpec& quad);

struct DecayOptions {
  /// λ = i·ν·direction; empty means ρ.
  std::vector<double> direction;
  unsigned threads = 1;
  /// Also evaluate at doubled resolution and report the change of the maxima.
  bool refinement_check = true;
  double tolerance = 1e-6;
};

/// |φ|·(1+‖Im λ‖‖X‖)^{1/2}, |φ|·D̃(‖X‖λ) and |φ| / (Σ_w majorant) over a grid.
Report decay_report(int n, const std::vector<double>& nu_grid, const std::vector<CartanCoordinate>& x_grid,
                    const QuadratureSpec& quad, const DecayOptions& opts = {});

struct RoundtripOptions {
  double nu_max = 5.0;
  std::size_t nu_out_points = 41;
  double nu_cutoff = 20.0;
  std::size_t nu_nodes = 160;
  double t_max = 5.0;
  std::size_t t_nodes = 96;
  double calibration_nu = 1.0;
  double tolerance = 1e-3;
  unsigned threads = 1;
};

/// SL(2): f = B(ĥ) by the inversion integral, then (H f)(ν) by radial
/// integration against sinh(2t) dt, gain calibrated at one ν.
Report rank1_inversion_roundtrip(const std::function<double(double)>& hhat, const RoundtripOptions& opts = {});

}  // namespace weylaw
