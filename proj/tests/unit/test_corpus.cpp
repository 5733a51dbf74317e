#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "linlayout/corpus.hpp"
#include "support.hpp"

using namespace linlayout;
using testing::fixture;
using testing::positions;

namespace {

std::vector<SentenceRecord> read_text(const std::string& text, ReadMode mode = ReadMode::Lenient) {
  std::istringstream in(text);
  return read_conllu(in, mode);
}

std::vector<SentenceRecord> read_file(const std::string& name, ReadMode mode = ReadMode::Lenient) {
  std::ifstream in(fixture(name));
  REQUIRE(in);
  return read_conllu(in, mode);
}

std::vector<std::pair<int, int>> sorted_edges(const DepTree& t) {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : t.edges()) out.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("reading a three-token sentence") {
  const auto recs = read_text("1\tthe\t_\t_\t_\t_\t2\tdet\t_\t_\n2\tcat\t_\t_\t_\t_\t3\tnsubj\t_\t_\n"
                              "3\tsat\t_\t_\t_\t_\t0\troot\t_\t_\n");
  REQUIRE(recs.size() == 1);
  REQUIRE(recs[0].parse_ok);
  CHECK(recs[0].sent_id == "1");
  CHECK(recs[0].tree->root() == 3);
  CHECK(sorted_edges(*recs[0].tree) == std::vector<std::pair<int, int>>{{1, 2}, {2, 3}});
  CHECK(recs[0].tokens[1].form == "cat");
  CHECK(recs[0].tokens[1].deprel == "nsubj");
}

TEST_CASE("multiword ranges and empty nodes do not change the tree") {
  const auto with = read_file("multiword.conllu");
  const auto without = read_file("multiword_stripped.conllu");
  REQUIRE(with.size() == 1);
  REQUIRE(with[0].parse_ok);
  CHECK(*with[0].tree == *without[0].tree);
  CHECK(with[0].tokens.size() == 4);
  CHECK(with[0].sent_id == "mw");
}

TEST_CASE("invalid trees fall back") {
  const auto recs = read_text("1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n2\tb\t_\t_\t_\t_\t0\troot\t_\t_\n\n"
                              "1\ta\t_\t_\t_\t_\t2\tdep\t_\t_\n2\tb\t_\t_\t_\t_\t1\tdep\t_\t_\n\n"
                              "1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n3\tb\t_\t_\t_\t_\t1\tdep\t_\t_\n\n");
  REQUIRE(recs.size() == 3);
  for (const auto& r : recs) {
    CHECK_FALSE(r.parse_ok);
    CHECK_FALSE(r.tree.has_value());
    CHECK_FALSE(r.error.empty());
  }
  CHECK(recs[0].error.find("multiple roots") != std::string::npos);
  CHECK(recs[2].sent_id == "3");
}

TEST_CASE("malformed lines: lenient and strict") {
  const auto recs = read_file("malformed.conllu");
  REQUIRE(recs.size() == 3);
  CHECK(recs[0].parse_ok);
  CHECK_FALSE(recs[1].parse_ok);
  CHECK(recs[1].error.find("line 6") != std::string::npos);
  CHECK(recs[2].parse_ok);

  try {
    read_file("malformed.conllu", ReadMode::Strict);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(std::string(e.what()).find("line 6") != std::string::npos);
  }
  CHECK_THROWS_AS(read_text("1\ta\t_\t_\t_\t_\tx\troot\t_\t_\n", ReadMode::Strict), ParseError);
  CHECK_THROWS_AS(read_text("one\ta\t_\t_\t_\t_\t0\troot\t_\t_\n", ReadMode::Strict), ParseError);
  // An invalid tree is not a format error.
  CHECK_NOTHROW(read_text("1\ta\t_\t_\t_\t_\t0\troot\t_\t_\n2\tb\t_\t_\t_\t_\t0\troot\t_\t_\n", ReadMode::Strict));
}

TEST_CASE("line endings and comment-only blocks") {
  const auto recs = read_text("# newdoc id = d\n\n# sent_id = x\r\n1\ta\t_\t_\t_\t_\t0\troot\t_\t_\r\n\r\n");
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].sent_id == "x");
  CHECK(recs[0].parse_ok);
}

TEST_CASE("ordering rules") {
  CHECK(OrderingRule::make(RuleKind::McMinLA, 7).mc_steps == 7);
  CHECK_FALSE(OrderingRule::make(RuleKind::Random, 7).mc_steps.has_value());
  CHECK_THROWS_AS(OrderingRule::make(RuleKind::McMinLA, -1), InvalidInput);
  CHECK(all_rules().size() == 8);
  for (RuleKind k : kAllRuleKinds) CHECK(parse_rule_kind(rule_name(k)) == k);
  CHECK_THROWS_AS(parse_rule_kind("minla"), InvalidInput);
}

TEST_CASE("applying rules") {
  const auto recs = read_file("english_sample.conllu");
  const SentenceRecord& rec = recs[1];
  REQUIRE(rec.parse_ok);
  const int n = static_cast<int>(rec.tokens.size());

  CHECK(apply_rule(OrderingRule::make(RuleKind::Identity), rec, 0, 2) == identity_layout(n));

  const auto random = OrderingRule::make(RuleKind::Random);
  CHECK(apply_rule(random, rec, 0, 2) == apply_rule(random, rec, 0, 2));
  CHECK(apply_rule(random, rec, 0, 2) != apply_rule(random, rec, 1, 2));
  CHECK(apply_rule(random, rec, 0, 2) != apply_rule(random, rec, 0, 3));

  CHECK(apply_rule(OrderingRule::make(RuleKind::McMinLA, 0), rec, 0, 2) == identity_layout(n));
  CHECK(is_projective(*rec.tree, apply_rule(OrderingRule::make(RuleKind::ProjMinLA), rec, 0, 2)));

  const auto broken = std::find_if(recs.begin(), recs.end(), [](const auto& r) { return !r.parse_ok; });
  REQUIRE(broken != recs.end());
  for (const auto& rule : all_rules()) {
    CHECK(apply_rule(rule, *broken, 0, 1) == identity_layout(static_cast<int>(broken->tokens.size())));
  }
}

TEST_CASE("corpus statistics") {
  SUBCASE("one two-token sentence") {
    const auto stats = corpus_stats(read_file("two_tokens.conllu"), all_rules(), 0);
    REQUIRE(stats.rules.size() == 8);
    for (const auto& r : stats.rules) {
      for (auto obj : kReportedObjectives) CHECK(r.mean(obj) == 1.0);
      CHECK(r.n_sents == 1);
      CHECK(r.n_fallback == 0);
    }
  }
  SUBCASE("fixture treebank") {
    const auto recs = read_file("english_sample.conllu");
    const auto stats = corpus_stats(recs, all_rules(50), 3, 1, "english");
    CHECK(stats.corpus_id == "english");
    CHECK(stats.seed == 3);
    for (const auto& r : stats.rules) {
      CHECK(r.n_fallback == 3);
      CHECK(r.n_sents == static_cast<int>(recs.size()) - 3);
      CHECK(r.totals[2] == r.totals[3]);  // sum-cutwidth equals minLA
      CHECK(r.mean(Objective::sum_cutwidth()) == r.mean(Objective::minla()));
    }
    const auto parallel = corpus_stats(recs, all_rules(50), 3, 4, "english");
    for (std::size_t i = 0; i < stats.rules.size(); ++i) CHECK(parallel.rules[i].totals == stats.rules[i].totals);
  }
  SUBCASE("empty corpus") {
    CHECK_THROWS_AS(corpus_stats({}, all_rules(), 0), InvalidInput);
  }
}

TEST_CASE("stats TSV layout") {
  const auto stats = corpus_stats(read_file("three_sentences.conllu"),
                                  {OrderingRule::make(RuleKind::Identity), OrderingRule::make(RuleKind::ProjMinLA)}, 0);
  std::ostringstream out;
  write_stats_tsv(stats, out);
  // Identity costs (bw, cw, minla) per sentence: (1,1,2), (1,1,1), (5,4,15).
  // The projective optima are (1,1,2), (1,1,1), (3,3,10).
  CHECK(out.str() ==
        "rule\tobjective\tmean\tn_sents\tn_fallback\n"
        "identity\tbandwidth\t2.3333\t3\t0\n"
        "identity\tcutwidth\t2.0000\t3\t0\n"
        "identity\tminla\t6.0000\t3\t0\n"
        "proj-minla\tbandwidth\t1.6667\t3\t0\n"
        "proj-minla\tcutwidth\t1.6667\t3\t0\n"
        "proj-minla\tminla\t4.3333\t3\t0\n");
}

TEST_CASE("permutation JSONL") {
  const auto recs = read_file("three_sentences.conllu");
  const auto rule = OrderingRule::make(RuleKind::Identity);
  const auto layouts = apply_rule_to_corpus(rule, recs, 0);
  std::ostringstream out;
  write_permutations(recs, layouts, rule, out);
  std::istringstream lines(out.str());
  std::string first;
  std::getline(lines, first);
  CHECK(first == R"({"sent_id":"s1","rule":"identity","n":3,"layout":[1,2,3],"fallback":false})");

  auto short_layouts = layouts;
  short_layouts.pop_back();
  CHECK_THROWS_AS(write_permutations(recs, short_layouts, rule, out), InvalidInput);
  short_layouts.push_back(identity_layout(2));
  CHECK_THROWS_AS(write_permutations(recs, short_layouts, rule, out), InvalidInput);
}

TEST_CASE("reordered CoNLL-U") {
  SUBCASE("identity keeps the token order") {
    const auto recs = read_file("three_sentences.conllu");
    std::ostringstream out;
    write_reordered_conllu(recs, apply_rule_to_corpus(OrderingRule::make(RuleKind::Identity), recs, 0), out);
    const auto back = read_text(out.str());
    REQUIRE(back.size() == recs.size());
    for (std::size_t s = 0; s < recs.size(); ++s) {
      for (std::size_t i = 0; i < recs[s].tokens.size(); ++i) {
        CHECK(back[s].tokens[i].form == recs[s].tokens[i].form);
        CHECK(back[s].tokens[i].head == recs[s].tokens[i].head);
        CHECK(back[s].tokens[i].misc == "OrigIndex=" + std::to_string(i + 1));
      }
    }
    CHECK(out.str().find("# text") == std::string::npos);
    CHECK(out.str().find("# sent_id = s1") != std::string::npos);
  }
  SUBCASE("swapping a two-token sentence") {
    const auto recs = read_file("two_tokens.conllu");
    std::ostringstream out;
    write_reordered_conllu(recs, {LinearLayout({2, 1})}, out);
    CHECK(out.str() ==
          "# sent_id = pair\n"
          "1\tworld\tworld\t_\t_\t_\t2\tvocative\t_\tOrigIndex=2\n"
          "2\thello\thello\t_\t_\t_\t0\troot\t_\tOrigIndex=1\n\n");
  }
}

TEST_CASE("reordering round-trips through OrigIndex") {
  const auto recs = read_file("english_sample.conllu");
  for (const auto& rule : all_rules(100)) {
    CAPTURE(rule_name(rule.kind));
    std::ostringstream out;
    write_reordered_conllu(recs, apply_rule_to_corpus(rule, recs, 0), out);
    const auto reordered = read_text(out.str());
    REQUIRE(reordered.size() == recs.size());
    for (std::size_t s = 0; s < recs.size(); ++s) {
      if (!recs[s].parse_ok) continue;
      REQUIRE(reordered[s].parse_ok);
      const auto restored = restore_original_order(reordered[s]);
      REQUIRE(*restored.tree == *recs[s].tree);
      std::multiset<std::pair<std::string, std::string>> a, b;
      for (std::size_t i = 0; i < recs[s].tokens.size(); ++i) {
        REQUIRE(restored.tokens[i].form == recs[s].tokens[i].form);
        a.emplace(recs[s].tokens[i].form, recs[s].tokens[i].deprel);
        b.emplace(reordered[s].tokens[i].form, reordered[s].tokens[i].deprel);
      }
      REQUIRE(a == b);
      REQUIRE(reordered[s].tree->edges().size() == recs[s].tree->edges().size());
    }
  }
}
