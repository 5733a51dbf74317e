#include "linlayout/objectives.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace linlayout {

namespace {

using boost::multiprecision::cpp_int;

int max_length(std::span<const Edge> edges, const LinearLayout& pi) {
  int best = 0;
  for (const Edge& e : edges) best = std::max(best, edge_length(pi, e));
  return best;
}

std::int64_t total_length(std::span<const Edge> edges, const LinearLayout& pi) {
  std::int64_t sum = 0;
  for (const Edge& e : edges) sum += edge_length(pi, e);
  return sum;
}

cpp_int power_sum(std::span<const Edge> edges, const LinearLayout& pi, int p) {
  cpp_int sum = 0;
  for (const Edge& e : edges) sum += boost::multiprecision::pow(cpp_int(edge_length(pi, e)), static_cast<unsigned>(p));
  return sum;
}

}  // namespace

Objective Objective::pnorm(int p) {
  if (p < 1) throw InvalidInput("p-norm needs p >= 1");
  return {ObjectiveKind::PNorm, p};
}

std::string objective_name(Objective obj) {
  switch (obj.kind) {
    case ObjectiveKind::Bandwidth: return "bandwidth";
    case ObjectiveKind::Cutwidth: return "cutwidth";
    case ObjectiveKind::MinLA: return "minla";
    case ObjectiveKind::SumCutwidth: return "sum-cutwidth";
    case ObjectiveKind::PNorm:
      return obj.p == Objective::kInfinity ? "pnorm-inf" : "pnorm-" + std::to_string(obj.p);
  }
  return "?";
}

Objective parse_objective(std::string_view name) {
  if (name == "bandwidth") return Objective::bandwidth();
  if (name == "cutwidth") return Objective::cutwidth();
  if (name == "minla") return Objective::minla();
  if (name == "sum-cutwidth") return Objective::sum_cutwidth();
  if (name == "pnorm-inf") return Objective::pnorm_infinity();
  if (name.starts_with("pnorm-")) {
    const auto digits = name.substr(6);
    int p = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && p >= 1) return Objective::pnorm(p);
  }
  throw InvalidInput("unknown objective '" + std::string(name) + "'");
}

int edge_length(const LinearLayout& pi, Edge e) {
  if (e.u == e.v) throw InvalidInput("edge endpoints coincide");
  return std::abs(pi[e.u] - pi[e.v]);
}

CutProfile cut_profile(std::span<const Edge> edges, const LinearLayout& pi) {
  const int n = pi.size();
  // Difference array over gaps: an edge spanning positions a < b adds 1 to
  // gaps a .. b-1.
  std::vector<int> diff(static_cast<std::size_t>(n + 1), 0);
  for (const Edge& e : edges) {
    const auto [a, b] = std::minmax({pi[e.u], pi[e.v]});
    if (a == b) throw InvalidInput("edge endpoints coincide");
    ++diff[static_cast<std::size_t>(a - 1)];
    --diff[static_cast<std::size_t>(b - 1)];
  }
  CutProfile out;
  out.theta.resize(static_cast<std::size_t>(n));
  int running = 0;
  for (int i = 0; i < n; ++i) {
    running += diff[static_cast<std::size_t>(i)];
    out.theta[static_cast<std::size_t>(i)] = running;
  }
  return out;
}

std::int64_t exact_cost(Objective obj, std::span<const Edge> edges, const LinearLayout& pi) {
  switch (obj.kind) {
    case ObjectiveKind::Bandwidth: return max_length(edges, pi);
    case ObjectiveKind::MinLA: return total_length(edges, pi);
    case ObjectiveKind::Cutwidth: {
      const auto prof = cut_profile(edges, pi);
      return prof.theta.empty() ? 0 : *std::max_element(prof.theta.begin(), prof.theta.end());
    }
    case ObjectiveKind::SumCutwidth: {
      const auto prof = cut_profile(edges, pi);
      std::int64_t sum = 0;
      for (int t : prof.theta) sum += t;
      return sum;
    }
    case ObjectiveKind::PNorm:
      if (obj.p == Objective::kInfinity) return max_length(edges, pi);
      if (obj.p == 1) return total_length(edges, pi);
      throw InvalidInput("p-norm with p = " + std::to_string(obj.p) + " is not integer-valued");
  }
  return 0;
}

std::string pnorm_power_sum(std::span<const Edge> edges, const LinearLayout& pi, int p) {
  if (p < 1) throw InvalidInput("p-norm needs p >= 1");
  return power_sum(edges, pi, p).str();
}

double evaluate(Objective obj, std::span<const Edge> edges, const LinearLayout& pi) {
  if (obj.kind != ObjectiveKind::PNorm || obj.p == 1 || obj.p == Objective::kInfinity) {
    return static_cast<double>(exact_cost(obj, edges, pi));
  }
  if (obj.p < 1) throw InvalidInput("p-norm needs p >= 1");
  const int longest = max_length(edges, pi);
  if (longest == 0) return 0.0;
  // (Σ d^p)^(1/p) = m · (Σ d^p / m^p)^(1/p) with m the longest edge keeps the
  // ratio in [1, |E|] for any p.
  using Float = boost::multiprecision::cpp_bin_float_50;
  const cpp_int sum = power_sum(edges, pi, obj.p);
  const cpp_int scale = boost::multiprecision::pow(cpp_int(longest), static_cast<unsigned>(obj.p));
  const Float ratio = Float(sum) / Float(scale);
  const Float root = boost::multiprecision::pow(ratio, Float(1) / obj.p);
  return static_cast<double>(root * longest);
}

}  // namespace linlayout
