// Copyright 2026 The morphtok Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "morphtok/eval.hpp"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace morphtok {
namespace {

using Seg = Segmentation;
using testutil::Rational;

TEST(ExactMatchTest, Examples) {
  EXPECT_EQ(exact_match({"can", "o"}, {"can", "o"}), 1);
  EXPECT_EQ(exact_match({"can", "o"}, {"cano"}), 0);
  EXPECT_EQ(exact_match({"c", "an", "o"}, {"can", "o"}), 0);
}

TEST(ExactMatchTest, MarkersAreStripped) {
  EXPECT_EQ(exact_match({"can", "##o"}, {"can", "o"}), 1);
  EXPECT_EQ(exact_match({"\xE2\x96\x81" "can", "o"}, {"can", "o"}), 1);
  EXPECT_EQ(exact_match({"\xE2\x96\x81", "can", "o"}, {"can", "o"}), 1);
}

TEST(ExactMatchTest, DifferentWordsAreAnError) {
  EXPECT_THROW(exact_match({"can", "a"}, {"can", "o"}), InputError);
}

TEST(BoundaryTest, Examples) {
  // can|t|o: {3,4}; cant|o: {4}.
  const auto prf = boundary_prf({"can", "t", "o"}, {"cant", "o"});
  EXPECT_DOUBLE_EQ(prf.precision, 1.0 / 2.0);
  EXPECT_DOUBLE_EQ(prf.recall, 1.0);
  EXPECT_DOUBLE_EQ(prf.f1, 2.0 / 3.0);

  const auto same = boundary_prf({"can", "o"}, {"can", "o"});
  EXPECT_EQ(same.precision, 1.0);
  EXPECT_EQ(same.recall, 1.0);
  EXPECT_EQ(same.f1, 1.0);

  const auto none = boundary_prf({"cano"}, {"can", "o"});
  EXPECT_EQ(none.precision, 0.0);
  EXPECT_EQ(none.recall, 0.0);
  EXPECT_EQ(none.f1, 0.0);
}

TEST(BoundaryTest, BothUnsegmented) {
  const auto prf = boundary_prf({"et"}, {"et"});
  EXPECT_EQ(prf.precision, 1.0);
  EXPECT_EQ(prf.recall, 1.0);
}

TEST(BoundaryTest, CountsCodePoints) {
  const auto c = boundary_counts({"\xC3\xA6", "t"}, {"\xC3\xA6", "t"});
  EXPECT_EQ(boundaries({"\xC3\xA6", "t"}), (std::vector<std::size_t>{1}));
  EXPECT_EQ(c.matched, 1u);
}

TEST(FertilityTest, Examples) {
  const std::vector<Seg> two_three = {{"a", "b"}, {"c", "d", "e"}};
  EXPECT_DOUBLE_EQ(fertility(two_three), 2.5);
  const std::vector<Seg> whole = {{"ab"}, {"cde"}};
  EXPECT_DOUBLE_EQ(fertility(whole), 1.0);
  EXPECT_THROW(fertility(std::vector<Seg>{}), InputError);
}

TEST(FertilityTest, BareMarkerIsNotAPiece) {
  const std::vector<Seg> s = {{"\xE2\x96\x81", "cano"}};
  EXPECT_DOUBLE_EQ(fertility(s), 1.0);
}

TEST(FertilityTest, BundledGoldSet) {
  // awk -F'\t' '{n+=split($3,a,"@")} END{print n"/"NR}' gold20.tsv
  const auto gold = load_gold(testutil::test_data_path("gold20.tsv"));
  ASSERT_EQ(gold.items.size(), 20u);
  std::vector<Seg> segs;
  for (const auto& it : gold.items) segs.push_back(it.morphemes);
  EXPECT_EQ(fertility(segs), 36.0 / 20.0);
  const auto r = evaluate([](const std::string& w, auto) { return Seg{w}; }, gold);
  EXPECT_EQ(r.gold_fertility, 36.0 / 20.0);
}

TEST(MorphScoreTest, Examples) {
  EXPECT_EQ(morphscore({"can", "t", "o"}, 4), 1);
  EXPECT_EQ(morphscore({"cano"}, 3), std::nullopt);
  EXPECT_EQ(morphscore({"ca", "nto"}, 4), 0);
  EXPECT_THROW(morphscore({"ca", "no"}, 0), InputError);
  EXPECT_THROW(morphscore({"ca", "no"}, 4), InputError);
}

// Independent per-word metrics on boundary sets.
struct OracleTotals {
  std::uint64_t em = 0, matched = 0, pred = 0, gold = 0, pieces = 0, words = 0;
  std::uint64_t ms_hits = 0, ms_words = 0;
};

void oracle_add(OracleTotals& t, const Seg& pred, const Seg& gold) {
  const auto pb = testutil::split_points(pred);
  const auto gb = testutil::split_points(gold);
  t.em += pred == gold;
  for (const auto b : pb) t.matched += gb.count(b);
  t.pred += pb.size();
  t.gold += gb.size();
  t.pieces += pred.size();
  t.words += 1;
  if (gold.size() > 1 && !pb.empty()) {
    t.ms_words += 1;
    t.ms_hits += pb.count(gold.front().size());
  }
}

TEST(MetricOracleTest, RandomWordsAgreeWithBruteForce) {
  std::mt19937_64 rng(200);
  GoldSegmentationSet gold;
  std::map<std::string, Seg> predicted;
  OracleTotals t;
  while (gold.items.size() < 200) {
    const auto w = testutil::random_word(rng, "abcdefg", 1, 12);
    if (predicted.count(w)) continue;
    const auto g = testutil::random_split(rng, w);
    const auto p = testutil::random_split(rng, w);
    gold.items.push_back({w, std::nullopt, g});
    predicted[w] = p;
    oracle_add(t, p, g);

    EXPECT_EQ(exact_match(p, g), p == g ? 1 : 0);
    const auto c = boundary_counts(p, g);
    const auto pb = testutil::split_points(p), gb = testutil::split_points(g);
    std::uint64_t inter = 0;
    for (const auto b : pb) inter += gb.count(b);
    EXPECT_EQ(c.matched, inter);
    EXPECT_EQ(c.predicted, pb.size());
    EXPECT_EQ(c.gold, gb.size());
    if (g.size() > 1) {
      const auto ms = morphscore(p, g.front().size());
      if (pb.empty()) {
        EXPECT_FALSE(ms);
      } else {
        EXPECT_EQ(*ms, pb.count(g.front().size()) ? 1 : 0);
      }
    }
  }
  const auto r = evaluate(
      [&](const std::string& w, std::optional<UdPos>) { return predicted.at(w); },
      gold);
  const Rational em{t.em, t.words}, prec{t.matched, t.pred}, rec{t.matched, t.gold};
  EXPECT_EQ(r.exact_match, em.value());
  EXPECT_EQ(r.boundary_precision, prec.value());
  EXPECT_EQ(r.boundary_recall, rec.value());
  const double f1 = 2.0 * prec.value() * rec.value() / (prec.value() + rec.value());
  EXPECT_NEAR(r.boundary_f1, f1, 1e-12);
  EXPECT_EQ(r.fertility, Rational({t.pieces, t.words}).value());
  ASSERT_TRUE(r.morphscore);
  EXPECT_EQ(r.morphscore_words, t.ms_words);
  EXPECT_EQ(*r.morphscore, Rational({t.ms_hits, t.ms_words}).value());
}

GoldSegmentationSet five_words() {
  std::istringstream in(
      "cano\tVERB\tcan@o\n"
      "et\tCCONJ\tet\n"
      "amabat\tVERB\tam@abat\n"
      "laudatus\tADJ\tlaud@at@us\n"
      "rosa\tNOUN\tros@a\n");
  return parse_gold(in);
}

TEST(EvaluateTest, FiveWordFixture) {
  const std::map<std::string, Seg> pred = {
      {"cano", {"can", "o"}},              // exact
      {"et", {"e", "t"}},                   // 1 spurious boundary
      {"amabat", {"ama", "bat"}},           // {3} vs {2}
      {"laudatus", {"laud", "atus"}},       // {4} vs {4,6}
      {"rosa", {"rosa"}},                   // unsegmented
  };
  const auto r = evaluate(
      [&](const std::string& w, std::optional<UdPos>) { return pred.at(w); },
      five_words());
  // Pooled: matched 1+0+0+1+0 = 2, predicted 1+1+1+1+0 = 4, gold 1+0+1+2+1 = 5.
  EXPECT_EQ(r.exact_match, 1.0 / 5.0);
  EXPECT_EQ(r.boundary_precision, 2.0 / 4.0);
  EXPECT_EQ(r.boundary_recall, 2.0 / 5.0);
  EXPECT_NEAR(r.boundary_f1, 2.0 * 0.5 * 0.4 / 0.9, 1e-15);
  EXPECT_EQ(r.fertility, 9.0 / 5.0);
  EXPECT_EQ(r.gold_fertility, 10.0 / 5.0);
  // Scored: cano (hit), amabat (miss), laudatus (hit at 4); rosa is unsegmented.
  EXPECT_EQ(r.morphscore_words, 3u);
  EXPECT_EQ(*r.morphscore, 2.0 / 3.0);
}

TEST(EvaluateTest, PerfectAndNeverSplitting) {
  const auto gold = five_words();
  const auto perfect = evaluate(
      [&](const std::string& w, std::optional<UdPos>) {
        for (const auto& it : gold.items) {
          if (it.word == w) return it.morphemes;
        }
        return Seg{w};
      },
      gold);
  EXPECT_EQ(perfect.exact_match, 1.0);
  EXPECT_EQ(perfect.boundary_f1, 1.0);
  EXPECT_EQ(perfect.fertility, perfect.gold_fertility);

  const auto whole = evaluate(
      [](const std::string& w, std::optional<UdPos>) { return Seg{w}; }, gold);
  EXPECT_EQ(whole.exact_match, 1.0 / 5.0);
  EXPECT_EQ(whole.fertility, 1.0);
  EXPECT_FALSE(whole.morphscore);
}

TEST(EvaluateTest, ContextualModePassesTags) {
  const auto gold = five_words();
  EvalOptions opts;
  opts.mode = EvalMode::Contextual;
  std::size_t tagged = 0;
  evaluate(
      [&](const std::string& w, std::optional<UdPos> pos) {
        tagged += pos.has_value();
        return Seg{w};
      },
      gold, opts);
  EXPECT_EQ(tagged, 5u);

  std::istringstream untagged("cano\t-\tcan@o\n");
  EXPECT_THROW(evaluate([](const std::string& w, auto) { return Seg{w}; },
                        parse_gold(untagged), opts),
               InputError);
}

TEST(EvaluateTest, UnknownOutputCountsAsWholeWord) {
  const auto r = evaluate(
      [](const std::string&, std::optional<UdPos>) { return Seg{"[UNK]"}; },
      five_words());
  EXPECT_EQ(r.unknown_words, 5u);
  EXPECT_EQ(r.fertility, 1.0);
}

TEST(EvaluateTest, PieceOverlapVariant) {
  EvalOptions opts;
  opts.piece_overlap = true;
  std::istringstream in("laudatus\tADJ\tlaud@at@us\n");
  const auto r = evaluate(
      [](const std::string&, std::optional<UdPos>) { return Seg{"laud", "atus"}; },
      parse_gold(in), opts);
  EXPECT_EQ(r.boundary_precision, 1.0 / 2.0);
  EXPECT_EQ(r.boundary_recall, 1.0 / 3.0);
}

TEST(EvaluateTest, EmptyGoldIsAnError) {
  EXPECT_THROW(evaluate([](const std::string& w, auto) { return Seg{w}; },
                        GoldSegmentationSet{}),
               InputError);
}

TEST(ReportTest, KeyValueAndTables) {
  const auto r = evaluate(
      [](const std::string& w, std::optional<UdPos>) { return Seg{w}; }, five_words());
  std::ostringstream kv;
  write_report_kv(kv, "wp", r);
  EXPECT_NE(kv.str().find("exact_match="), std::string::npos);

  std::ostringstream table;
  write_comparison_table(table, {"gold_contextual"},
                         {ComparisonRow{"a/wordpiece", {r}}, ComparisonRow{"b/ulm", {r}}});
  std::vector<std::string> lines;
  std::istringstream is(table.str());
  for (std::string l; std::getline(is, l);) {
    if (!l.empty()) lines.push_back(l);
  }
  EXPECT_GE(lines.size(), 3u);
  EXPECT_NE(table.str().find("b/ulm"), std::string::npos);
  EXPECT_NE(table.str().find("20.00"), std::string::npos);
}

}  // namespace
}  // namespace morphtok
