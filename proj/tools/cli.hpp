#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "linlayout/core.hpp"
#include "linlayout/projective.hpp"

namespace linlayout::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUnreadable = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitStrictParse = 3;
inline constexpr int kExitVerifyFailed = 4;

/// Runs the command line `args` (without the program name). Machine-readable
/// results go to `out` unless redirected with --out; logs go to `err`.
/// `in` is read when --input is "-".
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct VerifyConfig {
  int min_n = 2;
  int max_n = 8;
  /// Random trees per size above kExhaustiveUpTo.
  int trials = 500;
  std::uint64_t seed = 0;
  ProjectiveOptions solver;
};

/// Sizes up to this bound are checked on every rooted tree.
inline constexpr int kExhaustiveUpTo = 6;

struct VerifyFailure {
  DepTree tree;
  std::string property;
  std::string detail;
};

struct VerifyReport {
  long trees_checked = 0;
  std::optional<VerifyFailure> failure;
};

/// Checks both projective solvers against the projective oracle, the
/// sum-cutwidth/minLA identity and reversal invariance on every tree of
/// each size (smallest size first), stopping at the first failure.
VerifyReport verify_solvers(const VerifyConfig& cfg);

/// CoNLL-U rendering of a bare tree with placeholder forms.
std::string tree_to_conllu(const DepTree& tree, const std::vector<std::string>& comments = {});

}  // namespace linlayout::cli
