#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weylaw/report.hpp"
#include "weylaw/root_system.hpp"

namespace weylaw {

enum class LeviKind { Standard, ClassicalIE, Hyperplane };

/// A semistandard Levi subgroup, recorded through its positive roots.
///
/// Root sets are sorted index lists into RootSystem::positive_roots().
struct LeviDescriptor {
  LeviKind kind = LeviKind::Standard;
  std::vector<int> simple_subset;             ///< Standard: Bourbaki indices of Δ^M
  std::vector<int> index_set;                 ///< ClassicalIE: I ⊂ {1..n}, sorted
  std::vector<int> signs;                     ///< ClassicalIE: ε on I, ε(min I) = +1
  std::vector<std::size_t> hyperplane_basis;  ///< Hyperplane: r−1 independent positive roots
  std::vector<std::size_t> levi_roots;        ///< Φ^{M,+}
  std::vector<std::size_t> complement;        ///< Φ⁺_{¬M} = Φ⁺ ∖ Φ^{M,+}
  bool siegel = false;

  std::string label() const;
  Json to_json(const RootSystem& rs) const;
};

/// Fills levi_roots and complement from a predicate-selected root set.
LeviDescriptor make_levi(const RootSystem& rs, LeviKind kind, std::vector<std::size_t> levi_roots);

/// All 2^r standard Levis; the subset for mask bit i is α_{i+1}.
std::vector<LeviDescriptor> standard_levis(const RootSystem& rs);
LeviDescriptor standard_levi(const RootSystem& rs, const std::vector<int>& simple_subset);
/// Standard maximal Levi obtained by deleting α_k.
LeviDescriptor standard_maximal_levi(const RootSystem& rs, int k);

/// Classical (I, ε) datum for A/B/C/D. For type A, ε is ignored and I is
/// normalized to the representative containing 1.
LeviDescriptor classical_levi(const RootSystem& rs, std::vector<int> index_set, std::vector<int> signs = {});

/// Maximal semistandard Levis (the rank r−1 elements of the intersection lattice).
/// Classical families use the (I, ε) enumeration; exceptional families use the
/// hyperplane enumeration, capped at rank 6.
std::vector<LeviDescriptor> maximal_semistandard_levis(const RootSystem& rs);
std::vector<LeviDescriptor> classical_maximal_levis(const RootSystem& rs);
/// Deduplicated Φ ∩ H over hyperplanes H spanned by r−1 positive roots.
std::vector<LeviDescriptor> hyperplane_maximal_levis(const RootSystem& rs, int max_rank = 6);

enum class UnipotentKind { Abelian, Heisenberg, Other };
std::string to_string(UnipotentKind k);

/// Classification of the unipotent radical attached to a proper standard Levi.
UnipotentKind classify_unipotent(const RootSystem& rs, const LeviDescriptor& standard);

struct ParabolicRow {
  std::string family;  ///< e.g. "B3"
  long d_min = 0;
  long R = 0;
  int defining_root = 0;               ///< Bourbaki index
  std::vector<int> alternative_roots;  ///< other indices with the same R and kind
  bool abelian = false;
  UnipotentKind kind = UnipotentKind::Other;
  std::string note;

  Json to_json() const;
};

/// ⟨ρ, α̃∨⟩.
long d_min(const RootSystem& rs);
ParabolicRow parabolic_table(const RootSystem& rs);

/// Σ_{α∈Φ⁺∖S} α − (d_min − |S|)β ∈ cone(Φ⁺). `in_s` is indexed like positive_roots().
bool check_root_lemma(const RootSystem& rs, std::size_t beta, const std::vector<bool>& in_s);
/// All (β, S) when |Φ⁺| ≤ exhaustive_limit, otherwise `samples` seeded random pairs.
Report verify_root_lemma(const RootSystem& rs, std::size_t samples, std::uint64_t seed, std::size_t exhaustive_limit = 9);

enum class ConeIdentity {
  TwoRhoMinusDminHighest,  ///< 2ρ − d_min·α̃, all families
  E8RhoMinus14Highest,     ///< ρ − 14α̃ − ½ϖ₁
  F4RhoMinus7HalfHighest,  ///< ρ − (7/2)α̃ − ϖ₄
  CnHalfOmega2,            ///< ρ − ((n−1)/2)ϖ₂ − ϖ₁
  CnFullOmega2,            ///< ρ − (n−1)ϖ₂ − ϖ₁
};

std::string to_string(ConeIdentity id);
/// The vector whose cone membership is asserted. Throws for the wrong family.
AmbientVector cone_identity_vector(const RootSystem& rs, ConeIdentity id);
std::vector<ConeIdentity> applicable_cone_identities(const RootSystem& rs);
Report check_cone_identities(const RootSystem& rs);
Report check_cone_identity(const RootSystem& rs, ConeIdentity id);

}  // namespace weylaw
