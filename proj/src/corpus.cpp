#include "linlayout/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <istream>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "linlayout/heuristics.hpp"
#include "linlayout/projective.hpp"
#include "linlayout/random.hpp"

namespace linlayout {

namespace {

using Json = nlohmann::ordered_json;

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) return out;
    start = tab + 1;
  }
}

// "# key = value" -> (key, value); other comments give an empty key.
std::pair<std::string_view, std::string_view> comment_field(std::string_view line) {
  const auto body = trim(line.substr(1));
  const auto eq = body.find('=');
  if (eq == std::string_view::npos) return {};
  return {trim(body.substr(0, eq)), trim(body.substr(eq + 1))};
}

class SentenceBuilder {
 public:
  explicit SentenceBuilder(ReadMode mode) : mode_(mode) {}

  void comment(std::string line, int lineno) {
    touch(lineno);
    const auto [key, value] = comment_field(line);
    if (key == "sent_id") rec_.sent_id = std::string(value);
    rec_.comments.push_back(std::move(line));
  }

  void token(std::string_view line, int lineno) {
    touch(lineno);
    const auto cols = split_tabs(line);
    if (cols.size() != 10) {
      fail(lineno, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
      return;
    }
    if (cols[0].find_first_of("-.") != std::string_view::npos) return;  // multiword range or empty node
    const auto id = parse_int(cols[0]);
    if (!id) {
      fail(lineno, "non-integer token id '" + std::string(cols[0]) + "'");
      return;
    }
    const auto head = parse_int(cols[6]);
    if (!head) {
      fail(lineno, "non-integer head '" + std::string(cols[6]) + "'");
      return;
    }
    Token t;
    t.id = *id;
    t.form = cols[1];
    t.lemma = cols[2];
    t.upos = cols[3];
    t.xpos = cols[4];
    t.feats = cols[5];
    t.head = *head;
    t.deprel = cols[7];
    t.deps = cols[8];
    t.misc = cols[9];
    rec_.tokens.push_back(std::move(t));
  }

  // Closes the current sentence; comment-only blocks are dropped.
  void finish(std::vector<SentenceRecord>& out) {
    if (!open_) return;
    open_ = false;
    SentenceRecord rec = std::exchange(rec_, {});
    if (rec.tokens.empty() && rec.error.empty()) return;
    if (rec.sent_id.empty()) rec.sent_id = std::to_string(out.size() + 1);
    if (rec.error.empty()) validate(rec);
    out.push_back(std::move(rec));
  }

 private:
  void touch(int lineno) {
    if (!open_) rec_.first_line = lineno;
    open_ = true;
  }

  void fail(int lineno, const std::string& what) {
    if (mode_ == ReadMode::Strict) throw ParseError(lineno, what);
    if (rec_.error.empty()) rec_.error = "line " + std::to_string(lineno) + ": " + what;
  }

  static void validate(SentenceRecord& rec) {
    std::vector<int> heads;
    heads.reserve(rec.tokens.size());
    for (std::size_t i = 0; i < rec.tokens.size(); ++i) {
      if (rec.tokens[i].id != static_cast<int>(i + 1)) {
        rec.error = "token ids are not 1..n in order";
        return;
      }
      heads.push_back(rec.tokens[i].head);
    }
    try {
      rec.tree = DepTree::from_heads(heads);
      rec.parse_ok = true;
    } catch (const InvalidInput& e) {
      rec.error = e.what();
    }
  }

  ReadMode mode_;
  SentenceRecord rec_;
  bool open_ = false;
};

template <class Body>
void parallel_for(std::size_t count, int jobs, Body&& body) {
  const auto workers = static_cast<std::size_t>(std::max(jobs, 1));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    try {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = count;
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
}

std::string with_orig_index(std::string_view misc, int orig) {
  std::string out;
  if (misc != "_") {
    for (std::size_t start = 0; start <= misc.size();) {
      auto bar = misc.find('|', start);
      if (bar == std::string_view::npos) bar = misc.size();
      const auto item = misc.substr(start, bar - start);
      if (!item.starts_with("OrigIndex=")) {
        if (!out.empty()) out += '|';
        out += item;
      }
      start = bar + 1;
    }
  }
  if (!out.empty()) out += '|';
  return out + "OrigIndex=" + std::to_string(orig);
}

// Splits MISC into the OrigIndex value and the remaining entries.
std::pair<std::optional<int>, std::string> take_orig_index(std::string_view misc) {
  std::optional<int> orig;
  std::string rest;
  for (std::size_t start = 0; start <= misc.size();) {
    auto bar = misc.find('|', start);
    if (bar == std::string_view::npos) bar = misc.size();
    const auto item = misc.substr(start, bar - start);
    if (item.starts_with("OrigIndex=")) {
      orig = parse_int(item.substr(10));
    } else if (item != "_" && !item.empty()) {
      if (!rest.empty()) rest += '|';
      rest += item;
    }
    start = bar + 1;
  }
  return {orig, rest.empty() ? "_" : rest};
}

void check_aligned(const std::vector<SentenceRecord>& records, const std::vector<LinearLayout>& layouts) {
  if (records.size() != layouts.size()) {
    throw InvalidInput(std::to_string(records.size()) + " sentences but " + std::to_string(layouts.size()) +
                       " layouts");
  }
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (layouts[i].size() != static_cast<int>(records[i].tokens.size())) {
      throw InvalidInput("layout length differs from sentence length for sentence " + records[i].sent_id);
    }
  }
}

std::string format_mean(double mean) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", mean);
  return buf;
}

}  // namespace

std::vector<SentenceRecord> read_conllu(std::istream& in, ReadMode mode) {
  std::vector<SentenceRecord> out;
  SentenceBuilder builder(mode);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      builder.finish(out);
    } else if (line.front() == '#') {
      builder.comment(std::move(line), lineno);
    } else {
      builder.token(line, lineno);
    }
  }
  builder.finish(out);
  return out;
}

std::string_view rule_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::Identity: return "identity";
    case RuleKind::Random: return "random";
    case RuleKind::RcmBandwidth: return "rcm";
    case RuleKind::ProjCutwidth: return "proj-cutwidth";
    case RuleKind::ProjMinLA: return "proj-minla";
    case RuleKind::McBandwidth: return "mc-bandwidth";
    case RuleKind::McCutwidth: return "mc-cutwidth";
    case RuleKind::McMinLA: return "mc-minla";
  }
  return "?";
}

RuleKind parse_rule_kind(std::string_view name) {
  for (RuleKind k : kAllRuleKinds) {
    if (rule_name(k) == name) return k;
  }
  throw InvalidInput("unknown ordering rule '" + std::string(name) + "'");
}

bool is_monte_carlo(RuleKind kind) {
  return kind == RuleKind::McBandwidth || kind == RuleKind::McCutwidth || kind == RuleKind::McMinLA;
}

OrderingRule OrderingRule::make(RuleKind kind, int mc_steps) {
  if (!is_monte_carlo(kind)) return {kind, std::nullopt};
  if (mc_steps < 0) throw InvalidInput("Monte Carlo step count must be >= 0");
  return {kind, mc_steps};
}

std::vector<OrderingRule> all_rules(int mc_steps) {
  std::vector<OrderingRule> out;
  for (RuleKind k : kAllRuleKinds) out.push_back(OrderingRule::make(k, mc_steps));
  return out;
}

std::uint64_t rule_seed(RuleKind kind, std::uint64_t global_seed, std::uint64_t ordinal) {
  return mix64(sentence_seed(global_seed, ordinal) ^ (static_cast<std::uint64_t>(kind) + 1));
}

LinearLayout apply_rule(const OrderingRule& rule, const SentenceRecord& rec, std::uint64_t global_seed,
                        std::uint64_t ordinal) {
  const int n = static_cast<int>(rec.tokens.size());
  if (!rec.parse_ok || !rec.tree) return n == 0 ? LinearLayout{} : identity_layout(n);
  const DepTree& tree = *rec.tree;

  auto monte_carlo = [&](Objective obj) {
    const McConfig cfg{obj, rule.mc_steps.value_or(1000), rule_seed(rule.kind, global_seed, ordinal)};
    return transposition_monte_carlo(tree, cfg);
  };

  switch (rule.kind) {
    case RuleKind::Identity: return identity_layout(n);
    case RuleKind::Random: {
      std::vector<int> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), 1);
      Pcg32 rng(rule_seed(rule.kind, global_seed, ordinal));
      shuffle(std::span<int>(order), rng);
      return LinearLayout::from_order(order);
    }
    case RuleKind::RcmBandwidth: return reverse_cuthill_mckee(tree);
    case RuleKind::ProjCutwidth: return cutwidth_projective(tree);
    case RuleKind::ProjMinLA: return minla_projective(tree);
    case RuleKind::McBandwidth: return monte_carlo(Objective::bandwidth());
    case RuleKind::McCutwidth: return monte_carlo(Objective::cutwidth());
    case RuleKind::McMinLA: return monte_carlo(Objective::minla());
  }
  return identity_layout(n);
}

std::vector<LinearLayout> apply_rule_to_corpus(const OrderingRule& rule, const std::vector<SentenceRecord>& records,
                                               std::uint64_t global_seed, int jobs) {
  std::vector<LinearLayout> out(records.size());
  parallel_for(records.size(), jobs,
               [&](std::size_t i) { out[i] = apply_rule(rule, records[i], global_seed, i + 1); });
  return out;
}

double RuleStats::mean(Objective obj) const {
  for (std::size_t k = 0; k < kReportedObjectives.size(); ++k) {
    if (kReportedObjectives[k] == obj) {
      if (n_sents == 0) return std::numeric_limits<double>::quiet_NaN();
      return static_cast<double>(totals[k]) / n_sents;
    }
  }
  throw InvalidInput("objective " + objective_name(obj) + " is not tracked in corpus statistics");
}

const RuleStats& CorpusStats::for_rule(RuleKind kind) const {
  for (const auto& r : rules) {
    if (r.rule.kind == kind) return r;
  }
  throw InvalidInput("no statistics for rule " + std::string(rule_name(kind)));
}

CorpusStats corpus_stats(const std::vector<SentenceRecord>& records, const std::vector<OrderingRule>& rules,
                         std::uint64_t seed, int jobs, std::string corpus_id) {
  if (records.empty()) throw InvalidInput("corpus has no sentences");
  CorpusStats stats;
  stats.corpus_id = std::move(corpus_id);
  stats.seed = seed;

  using Costs = std::array<std::int64_t, kReportedObjectives.size()>;
  for (const OrderingRule& rule : rules) {
    std::vector<Costs> costs(records.size());
    parallel_for(records.size(), jobs, [&](std::size_t i) {
      const SentenceRecord& rec = records[i];
      if (!rec.parse_ok) return;
      const LinearLayout pi = apply_rule(rule, rec, seed, i + 1);
      for (std::size_t k = 0; k < kReportedObjectives.size(); ++k) {
        costs[i][k] = exact_cost(kReportedObjectives[k], *rec.tree, pi);
      }
    });

    RuleStats rs;
    rs.rule = rule;
    for (std::size_t i = 0; i < records.size(); ++i) {
      if (!records[i].parse_ok) {
        ++rs.n_fallback;
        continue;
      }
      ++rs.n_sents;
      for (std::size_t k = 0; k < costs[i].size(); ++k) rs.totals[k] += costs[i][k];
      if (costs[i][0] == costs[i][1]) ++rs.bandwidth_equals_cutwidth;
    }
    stats.rules.push_back(rs);
  }
  return stats;
}

void write_stats_tsv(const CorpusStats& stats, std::ostream& out) {
  out << "rule\tobjective\tmean\tn_sents\tn_fallback\n";
  for (const RuleStats& r : stats.rules) {
    for (Objective obj : {Objective::bandwidth(), Objective::cutwidth(), Objective::minla()}) {
      out << rule_name(r.rule.kind) << '\t' << objective_name(obj) << '\t' << format_mean(r.mean(obj)) << '\t'
          << r.n_sents << '\t' << r.n_fallback << '\n';
    }
  }
}

void write_stats_json(const CorpusStats& stats, std::ostream& out) {
  Json doc;
  doc["corpus_id"] = stats.corpus_id;
  doc["seed"] = stats.seed;
  doc["rules"] = Json::array();
  for (const RuleStats& r : stats.rules) {
    Json row;
    row["rule"] = rule_name(r.rule.kind);
    if (r.rule.mc_steps) row["mc_steps"] = *r.rule.mc_steps;
    row["n_sents"] = r.n_sents;
    row["n_fallback"] = r.n_fallback;
    row["bandwidth_equals_cutwidth"] = r.bandwidth_equals_cutwidth;
    Json means;
    Json totals;
    for (std::size_t k = 0; k < kReportedObjectives.size(); ++k) {
      const auto name = objective_name(kReportedObjectives[k]);
      means[name] = r.n_sents == 0 ? Json(nullptr) : Json(std::stod(format_mean(r.mean(kReportedObjectives[k]))));
      totals[name] = r.totals[k];
    }
    row["mean"] = std::move(means);
    row["total"] = std::move(totals);
    doc["rules"].push_back(std::move(row));
  }
  out << doc.dump(2) << '\n';
}

void write_permutations(const std::vector<SentenceRecord>& records, const std::vector<LinearLayout>& layouts,
                        const OrderingRule& rule, std::ostream& out) {
  check_aligned(records, layouts);
  for (std::size_t i = 0; i < records.size(); ++i) {
    Json line;
    line["sent_id"] = records[i].sent_id;
    line["rule"] = rule_name(rule.kind);
    line["n"] = layouts[i].size();
    line["layout"] = std::vector<int>(layouts[i].positions().begin(), layouts[i].positions().end());
    line["fallback"] = !records[i].parse_ok;
    out << line.dump() << '\n';
  }
}

void write_conllu_sentence(const SentenceRecord& rec, std::ostream& out) {
  for (const auto& c : rec.comments) out << c << '\n';
  for (const Token& t : rec.tokens) {
    out << t.id << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << '\t' << t.xpos << '\t' << t.feats << '\t'
        << t.head << '\t' << t.deprel << '\t' << t.deps << '\t' << t.misc << '\n';
  }
  out << '\n';
}

void write_reordered_conllu(const std::vector<SentenceRecord>& records, const std::vector<LinearLayout>& layouts,
                            std::ostream& out) {
  check_aligned(records, layouts);
  for (std::size_t s = 0; s < records.size(); ++s) {
    const SentenceRecord& rec = records[s];
    const LinearLayout& pi = layouts[s];
    const int n = pi.size();

    SentenceRecord re;
    for (const auto& c : rec.comments) {
      if (comment_field(c).first != "text") re.comments.push_back(c);
    }
    re.tokens.resize(rec.tokens.size());
    for (int v = 1; v <= n; ++v) {
      const Token& t = rec.tokens[static_cast<std::size_t>(v - 1)];
      Token& r = re.tokens[static_cast<std::size_t>(pi[v] - 1)];
      r = t;
      r.id = pi[v];
      if (rec.parse_ok && t.head != 0) r.head = pi[t.head];
      r.deps = "_";
      r.misc = with_orig_index(t.misc, t.id);
    }
    write_conllu_sentence(re, out);
  }
}

SentenceRecord restore_original_order(const SentenceRecord& reordered) {
  const auto n = reordered.tokens.size();
  std::vector<int> orig_of(n + 1, 0);
  std::vector<char> seen(n + 1, 0);
  std::vector<std::string> misc(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [orig, rest] = take_orig_index(reordered.tokens[i].misc);
    if (!orig || *orig < 1 || static_cast<std::size_t>(*orig) > n || seen[static_cast<std::size_t>(*orig)]) {
      throw InvalidInput("sentence " + reordered.sent_id + ": OrigIndex annotations do not form a permutation");
    }
    seen[static_cast<std::size_t>(*orig)] = 1;
    orig_of[i + 1] = *orig;
    misc[i] = std::move(rest);
  }

  SentenceRecord out;
  out.sent_id = reordered.sent_id;
  out.comments = reordered.comments;
  out.first_line = reordered.first_line;
  out.tokens.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Token& t = reordered.tokens[i];
    Token& o = out.tokens[static_cast<std::size_t>(orig_of[i + 1] - 1)];
    o = t;
    o.id = orig_of[i + 1];
    if (t.head >= 1 && static_cast<std::size_t>(t.head) <= n) o.head = orig_of[static_cast<std::size_t>(t.head)];
    o.misc = std::move(misc[i]);
  }
  if (reordered.parse_ok) {
    std::vector<int> heads;
    for (const Token& t : out.tokens) heads.push_back(t.head);
    out.tree = DepTree::from_heads(heads);
    out.parse_ok = true;
  } else {
    out.error = reordered.error;
  }
  return out;
}

}  // namespace linlayout
