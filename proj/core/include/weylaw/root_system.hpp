#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "weylaw/rational.hpp"

namespace weylaw {

enum class Family { A, B, C, D, E, F, G };

char family_letter(Family f);
Family parse_family(const std::string& text);
bool is_classical(Family f);

/// Raised when an enumeration would exceed a configured element cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Complexified spectral parameter; both parts are exact ambient vectors.
struct SpectralParam {
  AmbientVector real_part;
  AmbientVector imag_part;

  static SpectralParam real(AmbientVector v);
  static SpectralParam imaginary(AmbientVector v);
  bool is_purely_imaginary() const { return real_part.is_zero(); }
  bool is_real() const { return imag_part.is_zero(); }
};

struct ComplexRational {
  Rational re;
  Rational im;
  double abs() const;
  friend bool operator==(const ComplexRational&, const ComplexRational&) = default;
};

struct ConeWitness {
  bool in_span = false;
  bool member = false;
  std::vector<Rational> coefficients;  ///< simple-root coordinates when in span
};

/// Irreducible reduced root system in Bourbaki ambient coordinates.
///
/// Inner products are the standard Euclidean ones of the ambient space; all
/// coroot pairings are independent of that normalization. Instances are
/// immutable after construction.
class RootSystem {
 public:
  /// Standard realization. C_2 is identified with B_2.
  static RootSystem build(Family family, int rank);
  /// Closure of an arbitrary simple system; used for dual systems.
  static RootSystem from_simple_roots(Family family, std::vector<AmbientVector> simple);

  Family family() const { return family_; }
  int rank() const { return static_cast<int>(simple_.size()); }
  std::size_t ambient_dim() const { return simple_.front().dim(); }
  std::string name() const;

  const std::vector<AmbientVector>& simple_roots() const { return simple_; }
  const AmbientVector& simple_root(int bourbaki_index) const { return simple_.at(bourbaki_index - 1); }
  const std::vector<AmbientVector>& positive_roots() const { return positive_; }
  /// Simple-root coordinates of positive_roots()[k].
  const std::vector<std::vector<long>>& positive_root_coords() const { return positive_coords_; }
  /// a_ij = ⟨α_i, α_j∨⟩.
  const std::vector<std::vector<long>>& cartan_matrix() const { return cartan_; }
  const AmbientVector& rho() const { return rho_; }
  const AmbientVector& highest_root() const { return positive_[highest_index_]; }
  std::size_t highest_root_index() const { return highest_index_; }
  const std::vector<AmbientVector>& fundamental_weights() const { return fundamental_; }
  const AmbientVector& fundamental_weight(int bourbaki_index) const { return fundamental_.at(bourbaki_index - 1); }
  const std::vector<AmbientVector>& positive_coroots() const { return positive_coroots_; }
  int multiplicity(const AmbientVector&) const { return 1; }

  std::size_t num_positive_roots() const { return positive_.size(); }
  /// r + |Φ⁺|, the dimension of the symmetric space.
  int symmetric_space_dim() const { return rank() + static_cast<int>(positive_.size()); }
  /// |W| from the closed-form order formula.
  std::uint64_t weyl_group_order() const;

  /// Index into positive_roots() of ±alpha, and the sign; nullopt if not a root.
  std::optional<std::pair<std::size_t, int>> find_root(const AmbientVector& alpha) const;
  bool is_root(const AmbientVector& v) const { return find_root(v).has_value(); }

  AmbientVector coroot(const AmbientVector& alpha) const;
  /// ⟨λ, α∨⟩ for a root α. Throws std::invalid_argument if α ∉ Φ.
  Rational pairing(const AmbientVector& lambda, const AmbientVector& alpha) const;
  ComplexRational pairing(const SpectralParam& lambda, const AmbientVector& alpha) const;
  /// ⟨λ, α∨⟩ for the k-th positive root, without the root lookup.
  Rational pairing_positive(const AmbientVector& lambda, std::size_t k) const;

  /// Simple reflection s_i (1-based Bourbaki index).
  AmbientVector reflect(const AmbientVector& v, int bourbaki_index) const;
  AmbientVector reflect_by(const AmbientVector& v, const AmbientVector& alpha) const;

  /// Exact simple-root coordinates; nullopt outside the span of Δ.
  std::optional<std::vector<Rational>> simple_coordinates(const AmbientVector& v) const;
  ConeWitness cone_membership(const AmbientVector& v) const;
  /// α ≤ β in the dominance order: β − α is a nonnegative combination of Φ⁺.
  bool dominance_leq(const AmbientVector& alpha, const AmbientVector& beta) const;
  bool is_dominant(const AmbientVector& v) const;
  /// Dominant representative of Wv.
  AmbientVector dominant_translate(const AmbientVector& v) const;

  /// Closure of {λ} under simple reflections. Throws CapacityError past `cap`.
  std::vector<AmbientVector> weyl_orbit(const AmbientVector& lambda, std::size_t cap = 1'000'000) const;
  /// True iff μ ∈ Conv(Wλ); both arguments must be dominant.
  bool in_conv_hull_of_orbit(const AmbientVector& mu, const AmbientVector& lambda) const;

  /// Root system of coroots (B ↔ C); positive coroots keep the order of positive_roots().
  RootSystem dual() const;

  /// Λ = Σ c_i ϖ_i.
  AmbientVector from_fundamental_coords(const std::vector<Rational>& coords) const;
  AmbientVector from_simple_coords(const std::vector<Rational>& coords) const;

 private:
  RootSystem() = default;
  void complete();

  Family family_{Family::A};
  std::vector<AmbientVector> simple_;
  std::vector<std::vector<long>> cartan_;
  std::vector<AmbientVector> positive_;
  std::vector<std::vector<long>> positive_coords_;
  std::vector<AmbientVector> positive_coroots_;
  std::vector<Rational> root_norm2_;
  std::map<AmbientVector, std::size_t> root_index_;
  AmbientVector rho_;
  std::size_t highest_index_ = 0;
  std::vector<AmbientVector> fundamental_;
  std::vector<std::vector<Rational>> gram_inverse_;
};

/// Validates (family, rank) against the supported irreducible types.
void validate_type(Family family, int rank);

}  // namespace weylaw
