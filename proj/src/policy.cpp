#include "wdl/policy.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>
#include <vector>

#include "wdl/errors.hpp"

namespace wdl {

namespace {

constexpr std::array<std::pair<PolicyKind, std::string_view>, 8> kKindNames{{
    {PolicyKind::kMinU, "min-u"},
    {PolicyKind::kMaxU, "max-u"},
    {PolicyKind::kMaxF, "max-f"},
    {PolicyKind::kMaxG, "max-g"},
    {PolicyKind::kMaxFG, "max-fg"},
    {PolicyKind::kRandom, "random"},
    {PolicyKind::kPropMaxU, "prop-max-u"},
    {PolicyKind::kPropMinU, "prop-min-u"},
}};

void check_state(const PopulationState& state, const PopulationModel& model) {
  if (state.welfare.size() != model.n) throw StructuralError("state length does not match model");
  if (model.budget < 1 || model.budget > model.n)
    throw StructuralError("budget must lie in [1, n]");
}

}  // namespace

PolicySpec PolicySpec::of(PolicyKind kind) {
  return {kind, kind == PolicyKind::kMaxG ? TieBreak::kLowestWelfare : TieBreak::kLowestIndex};
}

bool PolicySpec::has_default_tie_break() const noexcept {
  return tie_break == of(kind).tie_break;
}

bool is_proportional(PolicyKind kind) noexcept {
  return kind == PolicyKind::kPropMaxU || kind == PolicyKind::kPropMinU;
}

std::string_view to_string(PolicyKind kind) noexcept {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

std::string_view to_string(TieBreak tie) noexcept {
  return tie == TieBreak::kLowestIndex ? "lowest-index" : "lowest-welfare";
}

std::optional<PolicyKind> parse_policy_kind(std::string_view name) noexcept {
  for (const auto& [k, n] : kKindNames)
    if (n == name) return k;
  return std::nullopt;
}

std::optional<TieBreak> parse_tie_break(std::string_view name) noexcept {
  if (name == "lowest-index") return TieBreak::kLowestIndex;
  if (name == "lowest-welfare") return TieBreak::kLowestWelfare;
  return std::nullopt;
}

std::string label(const PolicySpec& spec) {
  std::string s(to_string(spec.kind));
  if (!is_proportional(spec.kind) && spec.kind != PolicyKind::kRandom &&
      !spec.has_default_tie_break()) {
    s += "@";
    s += to_string(spec.tie_break);
  }
  return s;
}

Eigen::VectorXd score_individuals(const PolicySpec& spec, const PopulationState& state,
                                  const PopulationModel& model) {
  if (spec.kind == PolicyKind::kRandom || is_proportional(spec.kind))
    throw ContractError("score_individuals is undefined for policy " +
                        std::string(to_string(spec.kind)));
  check_state(state, model);
  const auto& u = state.welfare;
  Eigen::VectorXd score(model.n);
  for (int i = 0; i < model.n; ++i) {
    switch (spec.kind) {
      case PolicyKind::kMinU: score[i] = -u[i]; break;
      case PolicyKind::kMaxU: score[i] = u[i]; break;
      case PolicyKind::kMaxF: score[i] = eval_curve(model.return_curves[i], u[i]); break;
      case PolicyKind::kMaxG: score[i] = eval_curve(model.decay_curves[i], u[i]); break;
      case PolicyKind::kMaxFG: score[i] = treatment_effect(model, i, u[i]); break;
      default: break;
    }
  }
  return score;
}

AllocationVector select_integer_allocation(const PolicySpec& spec, const PopulationState& state,
                                           const PopulationModel& model, Rng& rng) {
  if (is_proportional(spec.kind))
    throw ContractError("proportional policy passed to select_integer_allocation");
  check_state(state, model);

  const int n = model.n;
  const int m = model.budget;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  if (spec.kind == PolicyKind::kRandom) {
    // Partial Fisher-Yates: the first m slots form a uniform m-subset.
    for (int k = 0; k < m; ++k) {
      std::uniform_int_distribution<int> pick(k, n - 1);
      std::swap(order[k], order[pick(rng)]);
    }
  } else {
    const Eigen::VectorXd score = score_individuals(spec, state, model);
    const auto& u = state.welfare;
    const bool by_welfare = spec.tie_break == TieBreak::kLowestWelfare;
    std::partial_sort(order.begin(), order.begin() + m, order.end(), [&](int a, int b) {
      if (score[a] != score[b]) return score[a] > score[b];
      if (by_welfare && u[a] != u[b]) return u[a] < u[b];
      return a < b;
    });
  }

  AllocationVector alloc{Eigen::VectorXd::Zero(n), AllocationMode::kInteger};
  for (int k = 0; k < m; ++k) alloc.entries[order[k]] = 1.0;
  return alloc;
}

AllocationVector select_proportional_allocation(const PolicySpec& spec,
                                                const PopulationState& state) {
  if (!is_proportional(spec.kind))
    throw ContractError("integer policy passed to select_proportional_allocation");
  if (state.welfare.size() == 0) throw StructuralError("empty population");

  const double sign = spec.kind == PolicyKind::kPropMaxU ? 1.0 : -1.0;
  const Eigen::ArrayXd logits = sign * state.welfare.array();
  Eigen::ArrayXd w = (logits - logits.maxCoeff()).exp();
  w /= w.sum();
  return {w.matrix(), AllocationMode::kProportional};
}

AllocationVector select_allocation(const PolicySpec& spec, const PopulationState& state,
                                   const PopulationModel& model, Rng& rng) {
  if (is_proportional(spec.kind)) {
    if (state.welfare.size() != model.n) throw StructuralError("state length does not match model");
    return select_proportional_allocation(spec, state);
  }
  return select_integer_allocation(spec, state, model, rng);
}

}  // namespace wdl
