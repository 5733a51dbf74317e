#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "linlayout/core.hpp"
#include "linlayout/objectives.hpp"

namespace linlayout {

/// One basic-token line of a CoNLL-U sentence. All ten columns are kept so
/// reordered output can be written back faithfully.
struct Token {
  int id = 0;
  std::string form;
  std::string lemma = "_";
  std::string upos = "_";
  std::string xpos = "_";
  std::string feats = "_";
  int head = 0;
  std::string deprel = "_";
  std::string deps = "_";
  std::string misc = "_";
};

struct SentenceRecord {
  std::string sent_id;
  std::vector<std::string> comments;  // raw "# ..." lines
  std::vector<Token> tokens;
  std::optional<DepTree> tree;
  bool parse_ok = false;
  std::string error;   // why parse_ok is false
  int first_line = 0;  // 1-based line of the first line of the sentence
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  int line_;
};

enum class ReadMode { Lenient, Strict };

/// Reads CoNLL-U. Multiword-token ranges (3-4) and empty nodes (5.1) are
/// skipped. Invalid trees (cycles, no root, several roots) give
/// parse_ok = false. Malformed lines do the same in lenient mode and raise
/// ParseError in strict mode.
std::vector<SentenceRecord> read_conllu(std::istream& in, ReadMode mode = ReadMode::Lenient);

enum class RuleKind { Identity, Random, RcmBandwidth, ProjCutwidth, ProjMinLA, McBandwidth, McCutwidth, McMinLA };

inline constexpr std::array kAllRuleKinds = {RuleKind::Identity,     RuleKind::Random,      RuleKind::RcmBandwidth,
                                             RuleKind::ProjCutwidth, RuleKind::ProjMinLA,   RuleKind::McBandwidth,
                                             RuleKind::McCutwidth,   RuleKind::McMinLA};

/// CLI name: identity, random, rcm, proj-cutwidth, proj-minla, mc-bandwidth,
/// mc-cutwidth, mc-minla.
std::string_view rule_name(RuleKind kind);
RuleKind parse_rule_kind(std::string_view name);
bool is_monte_carlo(RuleKind kind);

/// An ordering rule. `mc_steps` is present exactly for the Monte Carlo kinds.
struct OrderingRule {
  RuleKind kind = RuleKind::Identity;
  std::optional<int> mc_steps;

  /// Builds a rule with the parameters its kind needs.
  static OrderingRule make(RuleKind kind, int mc_steps = 1000);

  friend bool operator==(const OrderingRule&, const OrderingRule&) = default;
};

/// Every rule in roster order.
std::vector<OrderingRule> all_rules(int mc_steps = 1000);

/// Seed handed to the rule's randomized procedure for one sentence.
std::uint64_t rule_seed(RuleKind kind, std::uint64_t global_seed, std::uint64_t ordinal);

/// Layout for one sentence. Records with parse_ok = false get the identity
/// layout whatever the rule (empty for a token-less record). `ordinal` is
/// the 1-based position of the record in its corpus.
LinearLayout apply_rule(const OrderingRule& rule, const SentenceRecord& rec, std::uint64_t global_seed,
                        std::uint64_t ordinal);

/// apply_rule over a whole corpus, optionally on `jobs` threads. The result
/// does not depend on `jobs`.
std::vector<LinearLayout> apply_rule_to_corpus(const OrderingRule& rule, const std::vector<SentenceRecord>& records,
                                               std::uint64_t global_seed, int jobs = 1);

/// Objectives reported per rule.
inline constexpr std::array kReportedObjectives = {Objective::bandwidth(), Objective::cutwidth(), Objective::minla(),
                                                   Objective::sum_cutwidth()};

struct RuleStats {
  OrderingRule rule;
  /// Exact sums over parse_ok sentences, indexed like kReportedObjectives.
  std::array<std::int64_t, kReportedObjectives.size()> totals{};
  int n_sents = 0;
  int n_fallback = 0;
  /// Sentences whose bandwidth equals their cutwidth under this rule.
  int bandwidth_equals_cutwidth = 0;

  [[nodiscard]] double mean(Objective obj) const;
};

struct CorpusStats {
  std::string corpus_id;
  std::uint64_t seed = 0;
  std::vector<RuleStats> rules;

  [[nodiscard]] const RuleStats& for_rule(RuleKind kind) const;
};

/// Per-rule objective means over the parse_ok sentences. Fallback sentences
/// are counted, not averaged. Throws InvalidInput for an empty corpus.
CorpusStats corpus_stats(const std::vector<SentenceRecord>& records, const std::vector<OrderingRule>& rules,
                         std::uint64_t seed, int jobs = 1, std::string corpus_id = {});

/// TSV with header `rule objective mean n_sents n_fallback`, one row per
/// rule and objective (bandwidth, cutwidth, minla), means to 4 decimals.
void write_stats_tsv(const CorpusStats& stats, std::ostream& out);
void write_stats_json(const CorpusStats& stats, std::ostream& out);

/// One JSON object per line:
/// {"sent_id","rule","n","layout":[π(w_1),...,π(w_n)],"fallback"}.
/// Throws InvalidInput when the sequences are misaligned.
void write_permutations(const std::vector<SentenceRecord>& records, const std::vector<LinearLayout>& layouts,
                        const OrderingRule& rule, std::ostream& out);

/// CoNLL-U with tokens in layout order, ids renumbered, heads remapped and
/// `OrigIndex=<old id>` appended to MISC. `# text` comments, multiword
/// ranges, empty nodes and DEPS are dropped since they refer to the old
/// order.
void write_reordered_conllu(const std::vector<SentenceRecord>& records, const std::vector<LinearLayout>& layouts,
                            std::ostream& out);

/// Inverts write_reordered_conllu for one sentence using the OrigIndex
/// annotations. Throws InvalidInput if they are missing or inconsistent.
SentenceRecord restore_original_order(const SentenceRecord& reordered);

/// Serializes one sentence (comments and tokens) followed by a blank line.
void write_conllu_sentence(const SentenceRecord& rec, std::ostream& out);

}  // namespace linlayout
