#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "wdl/model.hpp"
#include "wdl/rng.hpp"

namespace wdl {

enum class PolicyKind { kMinU, kMaxU, kMaxF, kMaxG, kMaxFG, kRandom, kPropMaxU, kPropMinU };

/// How equal scores are ordered when filling the top-M set.
enum class TieBreak {
  kLowestIndex,    // ascending index
  kLowestWelfare,  // ascending welfare, then ascending index
};

struct PolicySpec {
  PolicyKind kind = PolicyKind::kMinU;
  TieBreak tie_break = TieBreak::kLowestIndex;

  /// Spec with the default tie-break: lowest welfare for max-g, lowest index otherwise.
  static PolicySpec of(PolicyKind kind);

  bool has_default_tie_break() const noexcept;
  friend bool operator==(const PolicySpec&, const PolicySpec&) = default;
};

bool is_proportional(PolicyKind kind) noexcept;

std::string_view to_string(PolicyKind kind) noexcept;
std::string_view to_string(TieBreak tie) noexcept;
std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept;
std::optional<TieBreak> parse_tie_break(std::string_view name) noexcept;

/// Display label: the kind name, suffixed with "@<tie-break>" when non-default.
std::string label(const PolicySpec& spec);

/// Per-individual score whose top-M set is treated. Defined for the
/// deterministic integer policies only; random and proportional kinds throw
/// ContractError.
Eigen::VectorXd score_individuals(const PolicySpec& spec, const PopulationState& state,
                                  const PopulationModel& model);

AllocationVector select_integer_allocation(const PolicySpec& spec, const PopulationState& state,
                                           const PopulationModel& model, Rng& rng);

/// Softmax of +U (proportional max-U) or -U (proportional min-U), shifted by
/// the largest exponent before exponentiation.
AllocationVector select_proportional_allocation(const PolicySpec& spec,
                                                const PopulationState& state);

/// Dispatches on the policy kind. `rng` is only consumed by the random policy.
AllocationVector select_allocation(const PolicySpec& spec, const PopulationState& state,
                                   const PopulationModel& model, Rng& rng);

}  // namespace wdl
