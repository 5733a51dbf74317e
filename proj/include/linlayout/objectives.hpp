#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "linlayout/core.hpp"

namespace linlayout {

enum class ObjectiveKind { Bandwidth, Cutwidth, MinLA, SumCutwidth, PNorm };

/// Cost function selector. `p` is only meaningful for PNorm; kInfinity
/// denotes the max-norm.
struct Objective {
  static constexpr int kInfinity = 0;

  ObjectiveKind kind = ObjectiveKind::MinLA;
  int p = 1;

  static constexpr Objective bandwidth() { return {ObjectiveKind::Bandwidth, 1}; }
  static constexpr Objective cutwidth() { return {ObjectiveKind::Cutwidth, 1}; }
  static constexpr Objective minla() { return {ObjectiveKind::MinLA, 1}; }
  static constexpr Objective sum_cutwidth() { return {ObjectiveKind::SumCutwidth, 1}; }
  /// Throws InvalidInput for p < 1; use pnorm_infinity() for the max-norm.
  static Objective pnorm(int p);
  static constexpr Objective pnorm_infinity() { return {ObjectiveKind::PNorm, kInfinity}; }

  friend bool operator==(const Objective&, const Objective&) = default;
};

/// "bandwidth", "cutwidth", "minla", "sum-cutwidth", "pnorm-<p>", "pnorm-inf".
std::string objective_name(Objective obj);
/// Inverse of objective_name. Throws InvalidInput on unknown names.
Objective parse_objective(std::string_view name);

/// Edge cut θ at every gap: theta[i - 1] counts edges (u, v) with
/// π(u) <= i < π(v). The last entry is always 0.
struct CutProfile {
  std::vector<int> theta;

  [[nodiscard]] int at(int gap) const { return theta[static_cast<std::size_t>(gap - 1)]; }
};

/// |π(u) - π(v)|. Throws InvalidInput if the endpoints coincide.
int edge_length(const LinearLayout& pi, Edge e);

CutProfile cut_profile(std::span<const Edge> edges, const LinearLayout& pi);
inline CutProfile cut_profile(const DepTree& tree, const LinearLayout& pi) { return cut_profile(tree.edges(), pi); }

/// Integer-valued cost. Defined for every objective except PNorm with a
/// finite p > 1, for which InvalidInput is thrown.
std::int64_t exact_cost(Objective obj, std::span<const Edge> edges, const LinearLayout& pi);
inline std::int64_t exact_cost(Objective obj, const DepTree& tree, const LinearLayout& pi) {
  return exact_cost(obj, tree.edges(), pi);
}

/// Σ d^p over edges as an exact decimal string (p finite, >= 1).
std::string pnorm_power_sum(std::span<const Edge> edges, const LinearLayout& pi, int p);

/// Cost of `pi` under `obj`. All objectives are computed in integers; only a
/// finite PNorm with p > 1 goes through a final floating-point root.
double evaluate(Objective obj, std::span<const Edge> edges, const LinearLayout& pi);
inline double evaluate(Objective obj, const DepTree& tree, const LinearLayout& pi) {
  return evaluate(obj, tree.edges(), pi);
}

}  // namespace linlayout
