#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "weylaw/levi.hpp"
#include "weylaw/report.hpp"
#include "weylaw/root_system.hpp"

namespace weylaw {

/// Order-respecting injection ι: S₁ → S₂ with α ≤ ι(α), or a Hall violator.
struct InjectionWitness {
  bool valid = false;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< (α, ι(α)) as positive-root indices
  /// When invalid: Z ⊂ S₁ whose dominance-neighbourhood in S₂ is smaller than Z.
  std::vector<std::size_t> hall_violator;
  std::vector<std::size_t> hall_neighbourhood;

  Json to_json(const RootSystem& rs) const;
};

/// S₁ ≤ S₂ by maximum bipartite matching on the edges {(α, β) : α ≤ β}.
InjectionWitness subset_dominance_leq(const RootSystem& rs, std::vector<std::size_t> s1, std::vector<std::size_t> s2);

/// Members of L_max with minimal |Φ⁺_{¬M}| (classical families only): the
/// singleton-index family M_i plus the B₂ and D₄-Siegel coincidences.
std::vector<LeviDescriptor> minimal_levi_family(const RootSystem& rs);
/// M_i, i.e. the classical datum I = {i}.
LeviDescriptor singleton_levi(const RootSystem& rs, int i);

/// Random dominant λ with fundamental-weight coordinates p/q, 0 ≤ p ≤ 20, 1 ≤ q ≤ 5.
AmbientVector random_dominant(const RootSystem& rs, std::uint64_t seed, std::uint64_t index);

Report verify_minimal_family(const RootSystem& rs, std::size_t trials, std::uint64_t seed);

enum class InjectionCase { Part1, Part2, Siegel, B3RatioIdentities };
std::string to_string(InjectionCase c);
InjectionCase parse_injection_case(const std::string& text);
Report verify_injection_cases(const RootSystem& rs, InjectionCase which, std::size_t trials = 500, std::uint64_t seed = 7);

/// Every dominance check that applies to `rs`: minimal family, injections, comparisons, Siegel cases.
Report verify_dominance_suite(const RootSystem& rs, std::size_t trials, std::uint64_t seed);

/// Counterexample search for the minimal-family statement on exceptional
/// types. Informational: the result never fails.
Report explore_exceptional_minimum(const RootSystem& rs, std::size_t trials, std::uint64_t seed);

}  // namespace weylaw
