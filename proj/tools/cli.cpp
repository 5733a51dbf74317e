#include "cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "linlayout/corpus.hpp"
#include "linlayout/objectives.hpp"
#include "linlayout/oracle.hpp"
#include "linlayout/random.hpp"

namespace linlayout::cli {

namespace {

struct CorpusArgs {
  std::string input;
  std::uint64_t seed = 0;
  int mc_steps = 1000;
  std::string out;
  bool strict = false;
  int jobs = 1;
};

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

std::vector<std::string> rule_names() {
  std::vector<std::string> names;
  for (RuleKind k : kAllRuleKinds) names.emplace_back(rule_name(k));
  return names;
}

// Reads the corpus named by `path` ("-" for stdin). Returns an exit code.
int load_corpus(const std::string& path, bool strict, Io io, std::vector<SentenceRecord>& records) {
  const ReadMode mode = strict ? ReadMode::Strict : ReadMode::Lenient;
  try {
    if (path == "-") {
      records = read_conllu(io.in, mode);
    } else {
      std::ifstream file(path);
      if (!file) {
        io.err << "error: cannot read " << path << '\n';
        return kExitUnreadable;
      }
      records = read_conllu(file, mode);
      if (file.bad()) {
        io.err << "error: failed while reading " << path << '\n';
        return kExitUnreadable;
      }
    }
  } catch (const ParseError& e) {
    io.err << "error: " << (path == "-" ? "<stdin>" : path) << ": " << e.what() << '\n';
    return kExitStrictParse;
  }
  if (records.empty()) {
    io.err << "error: " << path << " contains no sentences\n";
    return kExitUnreadable;
  }
  std::size_t fallback = 0;
  for (const auto& r : records) fallback += r.parse_ok ? 0 : 1;
  io.err << "read " << records.size() << " sentences, " << fallback << " with identity fallback\n";
  for (const auto& r : records) {
    if (!r.parse_ok) io.err << "  fallback " << r.sent_id << ": " << r.error << '\n';
  }
  return kExitOk;
}

// Writes the whole result at once so a failed run leaves no partial file.
int emit(const std::string& text, const std::string& path, Io io) {
  if (path.empty() || path == "-") {
    io.out << text;
    io.out.flush();
    return kExitOk;
  }
  std::ofstream file(path, std::ios::binary);
  file << text;
  file.close();
  if (!file) {
    io.err << "error: cannot write " << path << '\n';
    return kExitUnreadable;
  }
  return kExitOk;
}

std::string corpus_id_of(const std::string& path) {
  if (path == "-") return "stdin";
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? path : path.substr(slash + 1);
}

int cmd_analyze(const CorpusArgs& a, const std::vector<std::string>& orders, const std::string& format, Io io) {
  std::vector<SentenceRecord> records;
  if (const int rc = load_corpus(a.input, a.strict, io, records); rc != kExitOk) return rc;

  std::vector<OrderingRule> rules;
  for (const auto& name : orders) rules.push_back(OrderingRule::make(parse_rule_kind(name), a.mc_steps));
  const CorpusStats stats = corpus_stats(records, rules, a.seed, a.jobs, corpus_id_of(a.input));

  for (const auto& r : stats.rules) {
    if (r.rule.kind == RuleKind::RcmBandwidth) {
      io.err << "rcm: bandwidth == cutwidth in " << r.bandwidth_equals_cutwidth << " of " << r.n_sents
             << " sentences\n";
    }
  }
  std::ostringstream text;
  if (format == "json") {
    write_stats_json(stats, text);
  } else {
    write_stats_tsv(stats, text);
  }
  return emit(text.str(), a.out, io);
}

int cmd_reorder(const CorpusArgs& a, const std::string& order, const std::string& format, Io io) {
  std::vector<SentenceRecord> records;
  if (const int rc = load_corpus(a.input, a.strict, io, records); rc != kExitOk) return rc;

  const OrderingRule rule = OrderingRule::make(parse_rule_kind(order), a.mc_steps);
  const auto layouts = apply_rule_to_corpus(rule, records, a.seed, a.jobs);
  std::ostringstream text;
  if (format == "conllu") {
    write_reordered_conllu(records, layouts, text);
  } else {
    write_permutations(records, layouts, rule, text);
  }
  return emit(text.str(), a.out, io);
}

std::string join_positions(const LinearLayout& pi) {
  std::string s;
  for (int p : pi.positions()) {
    if (!s.empty()) s += ',';
    s += std::to_string(p);
  }
  return s;
}

int cmd_oracle(const CorpusArgs& a, const std::string& objective, bool projective, int max_n, Io io) {
  std::vector<SentenceRecord> records;
  if (const int rc = load_corpus(a.input, a.strict, io, records); rc != kExitOk) return rc;

  const Objective obj = parse_objective(objective);
  std::ostringstream text;
  text << "sent_id\tn\tobjective\tsearch\toptimum\tlayout\tstatus\n";
  int skipped = 0;
  for (const auto& rec : records) {
    const int n = static_cast<int>(rec.tokens.size());
    text << rec.sent_id << '\t' << n << '\t' << objective << '\t' << (projective ? "projective" : "unconstrained")
         << '\t';
    if (!rec.parse_ok) {
      text << "-\t-\tskipped: invalid tree\n";
      ++skipped;
      continue;
    }
    if (n > max_n) {
      text << "-\t-\tskipped: n > " << max_n << '\n';
      ++skipped;
      continue;
    }
    const OracleResult r = projective ? optimal_projective(*rec.tree, obj, max_n)
                                      : optimal_unconstrained(*rec.tree, obj, max_n);
    text << r.value << '\t' << join_positions(r.layout) << "\tok\n";
  }
  io.err << "oracle: " << records.size() - static_cast<std::size_t>(skipped) << " solved, " << skipped
         << " skipped\n";
  return emit(text.str(), a.out, io);
}

bool parse_sizes(const std::string& spec, int& lo, int& hi) {
  auto number = [](std::string_view s, int& v) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
  };
  const std::string_view sv(spec);
  const auto dots = sv.find("..");
  if (dots == std::string_view::npos) {
    if (!number(sv, lo)) return false;
    hi = lo;
  } else if (!number(sv.substr(0, dots), lo) || !number(sv.substr(dots + 2), hi)) {
    return false;
  }
  return 1 <= lo && lo <= hi && hi <= kProjectiveLimit;
}

int cmd_verify(const VerifyConfig& cfg, Io io) {
  const VerifyReport report = verify_solvers(cfg);
  if (report.failure) {
    const auto& f = *report.failure;
    io.err << "verify: FAILED " << f.property << " on a tree with " << f.tree.size() << " vertices: " << f.detail
           << '\n';
    io.out << tree_to_conllu(f.tree, {"# sent_id = counterexample", "# property = " + f.property,
                                      "# detail = " + f.detail});
    return kExitVerifyFailed;
  }
  io.err << "verify: all properties hold on " << report.trees_checked << " trees (n = " << cfg.min_n << ".."
         << cfg.max_n << ")\n";
  return kExitOk;
}

std::optional<std::string> check_tree(const DepTree& tree, const ProjectiveOptions& solver, Pcg32& rng,
                                      std::string& detail) {
  struct Solver {
    const char* name;
    Objective obj;
    LinearLayout (*solve)(const DepTree&, const ProjectiveOptions&);
  };
  const Solver solvers[] = {{"proj-minla", Objective::minla(), minla_projective},
                            {"proj-cutwidth", Objective::cutwidth(), cutwidth_projective}};
  for (const auto& s : solvers) {
    const LinearLayout pi = s.solve(tree, solver);
    if (!is_projective(tree, pi)) {
      detail = "layout " + join_positions(pi) + " is not projective";
      return std::string(s.name) + " projectivity";
    }
    const auto got = exact_cost(s.obj, tree, pi);
    const auto want = optimal_projective(tree, s.obj).value;
    if (got != want) {
      detail = "solver " + std::to_string(got) + ", oracle " + std::to_string(want) + ", layout " + join_positions(pi);
      return std::string(s.name) + " optimality";
    }
  }

  std::vector<int> order(static_cast<std::size_t>(tree.size()));
  for (int v = 1; v <= tree.size(); ++v) order[static_cast<std::size_t>(v - 1)] = v;
  shuffle(std::span<int>(order), rng);
  const LinearLayout pi = LinearLayout::from_order(order);
  if (exact_cost(Objective::sum_cutwidth(), tree, pi) != exact_cost(Objective::minla(), tree, pi)) {
    detail = "layout " + join_positions(pi);
    return std::string("sum-cutwidth equals minla");
  }
  const LinearLayout rev = reverse_layout(pi);
  for (Objective obj : {Objective::bandwidth(), Objective::cutwidth(), Objective::minla(), Objective::sum_cutwidth()}) {
    if (exact_cost(obj, tree, pi) != exact_cost(obj, tree, rev)) {
      detail = "layout " + join_positions(pi);
      return objective_name(obj) + " reversal invariance";
    }
  }
  return std::nullopt;
}

}  // namespace

VerifyReport verify_solvers(const VerifyConfig& cfg) {
  VerifyReport report;
  for (int n = cfg.min_n; n <= cfg.max_n && !report.failure; ++n) {
    Pcg32 rng(sentence_seed(cfg.seed, static_cast<std::uint64_t>(n)));
    auto visit = [&](const DepTree& tree) {
      if (report.failure) return;
      ++report.trees_checked;
      std::string detail;
      if (auto prop = check_tree(tree, cfg.solver, rng, detail)) report.failure = VerifyFailure{tree, *prop, detail};
    };
    if (n <= kExhaustiveUpTo) {
      for_each_rooted_tree(n, visit);
    } else {
      for (int t = 0; t < cfg.trials && !report.failure; ++t) visit(random_tree(n, rng.next() | (std::uint64_t{rng.next()} << 32)));
    }
  }
  return report;
}

std::string tree_to_conllu(const DepTree& tree, const std::vector<std::string>& comments) {
  SentenceRecord rec;
  rec.comments = comments;
  for (int v = 1; v <= tree.size(); ++v) {
    Token t;
    t.id = v;
    t.form = "w" + std::to_string(v);
    t.head = tree.parent(v);
    t.deprel = t.head == 0 ? "root" : "dep";
    rec.tokens.push_back(std::move(t));
  }
  std::ostringstream out;
  write_conllu_sentence(rec, out);
  return out.str();
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  const Io io{in, out, err};
  CLI::App app{"Linear layouts of dependency trees: objectives, solvers, oracles and corpus statistics.",
               "linlayout"};
  app.require_subcommand(1);

  CorpusArgs corpus;
  auto add_corpus_options = [&](CLI::App* sub, bool with_rng) {
    sub->add_option("--input", corpus.input, "CoNLL-U file, or - for stdin")->required();
    sub->add_option("--out", corpus.out, "Output path (default stdout)");
    sub->add_flag("--strict", corpus.strict, "Fail on malformed lines instead of falling back");
    if (with_rng) {
      sub->add_option("--seed", corpus.seed, "Global seed")->capture_default_str();
      sub->add_option("--mc-steps", corpus.mc_steps, "Monte Carlo step budget T")
          ->check(CLI::NonNegativeNumber)
          ->capture_default_str();
      sub->add_option("--jobs", corpus.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    }
  };

  auto* analyze = app.add_subcommand("analyze", "Per-rule objective means over a treebank");
  add_corpus_options(analyze, true);
  std::vector<std::string> orders = rule_names();
  std::string stats_format = "tsv";
  analyze->add_option("--orders", orders, "Comma-separated ordering rules")
      ->delimiter(',')
      ->check(CLI::IsMember(rule_names()));
  analyze->add_option("--format", stats_format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));

  auto* reorder = app.add_subcommand("reorder", "Export the layouts of one ordering rule");
  add_corpus_options(reorder, true);
  std::string order;
  std::string emit_format = "jsonl";
  reorder->add_option("--order", order, "Ordering rule")->required()->check(CLI::IsMember(rule_names()));
  reorder->add_option("--emit", emit_format, "jsonl or conllu")->check(CLI::IsMember({"jsonl", "conllu"}));

  auto* oracle = app.add_subcommand("oracle", "Exact optima by exhaustive search");
  add_corpus_options(oracle, false);
  std::string objective;
  bool projective = false;
  int max_n = kUnconstrainedLimit;
  oracle->add_option("--objective", objective, "bandwidth, cutwidth, minla or sum-cutwidth")
      ->required()
      ->check(CLI::IsMember({"bandwidth", "cutwidth", "minla", "sum-cutwidth"}));
  oracle->add_flag("--projective", projective, "Search projective layouts only");
  oracle->add_option("--max-n", max_n, "Skip sentences longer than this")
      ->check(CLI::Range(1, 12))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check the projective solvers against the oracle");
  VerifyConfig vcfg;
  std::string sizes = "2..8";
  bool disable_correction = false;
  verify->add_option("--sizes", sizes, "Tree sizes, lo..hi")->capture_default_str();
  verify->add_option("--trials", vcfg.trials, "Random trees per size above 6")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--seed", vcfg.seed, "Seed for random trees")->capture_default_str();
  verify->add_flag("--disable-odd-child-correction", disable_correction)->group("");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (verify->parsed() && !parse_sizes(sizes, vcfg.min_n, vcfg.max_n)) {
      throw CLI::ValidationError("--sizes", "expected lo..hi with 1 <= lo <= hi <= " +
                                               std::to_string(kProjectiveLimit));
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(corpus, orders, stats_format, io);
    if (reorder->parsed()) return cmd_reorder(corpus, order, emit_format, io);
    if (oracle->parsed()) return cmd_oracle(corpus, objective, projective, max_n, io);
    vcfg.solver.odd_child_correction = !disable_correction;
    return cmd_verify(vcfg, io);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnreadable;
  }
}

}  // namespace linlayout::cli
