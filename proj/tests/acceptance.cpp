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

// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "morphtok/morphtok.hpp"
#include "test_util.hpp"

namespace {

using namespace morphtok;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Fixture {
  Corpus corpus;
  TaggedCorpus tagged;
  MorphLexicon lexicon;
  SuffixList suffixes;
  GoldSegmentationSet gold_contextual;
};

constexpr std::size_t kVocabSize = 2000;

const std::vector<Guidance> kGuidance = {
    Guidance::Baseline, Guidance::MorphSeed, Guidance::MorphPreTokAcontextual,
    Guidance::MorphPreTokContextual};

std::string label(Algorithm a, Guidance g) {
  return std::string(to_string(g)) + "/" + std::string(to_string(a));
}

Tokenizer train(const Fixture& fx, Algorithm a, Guidance g, unsigned workers) {
  RunConfig cfg;
  cfg.algorithm = a;
  cfg.guidance = g;
  cfg.vocab_size = kVocabSize;
  cfg.workers = workers;
  TrainingData data;
  if (g == Guidance::MorphPreTokContextual) {
    data.tagged = fx.tagged;
  } else {
    data.corpus = fx.corpus;
  }
  if (uses_presegmentation(g)) data.lexicon = &fx.lexicon;
  if (g == Guidance::MorphSeed) data.suffixes = fx.suffixes;
  return train_tokenizer(data, cfg);
}

std::string serialize(const Tokenizer& t) {
  std::ostringstream os;
  save_tokenizer(t, os);
  return os.str();
}

std::vector<std::size_t> morph_boundaries(const std::vector<std::string>& m) {
  std::vector<std::size_t> out;
  std::size_t at = 0;
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    at += text::char_length(m[i]);
    out.push_back(at);
  }
  return out;
}

Outcome criterion1() {
  std::mt19937_64 rng(1001);
  std::size_t ulm_bad = 0, wp_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    std::map<std::string, double> lp;
    const std::size_t n = 1 + rng() % 50;
    std::uniform_real_distribution<double> real(-8.0, -0.01);
    for (std::size_t i = 0; i < n; ++i) {
      lp[testutil::random_word(rng, "abc", 1, 4)] =
          t % 2 ? real(rng) : -static_cast<double>(1 + rng() % 4);
    }
    std::vector<UlmPiece> pieces;
    for (const auto& [p, l] : lp) pieces.push_back({p, l, false});
    const UlmVocabulary v(std::move(pieces), "", 0.0);
    const auto word = testutil::random_word(rng, "abc", 1, 10);
    const auto expected = testutil::best_tiling(word, lp);
    const auto got = ulm_encode(word, v);
    if (got != (expected ? *expected : Segmentation{std::string(kUnknownPiece)})) ++ulm_bad;
  }
  for (int t = 0; t < 1000; ++t) {
    std::set<std::string> entries;
    const std::size_t n = 1 + rng() % 50;
    for (std::size_t i = 0; i < n; ++i) {
      const auto piece = testutil::random_word(rng, "abc", 1, 4);
      entries.insert(rng() % 2 ? piece : "##" + piece);
    }
    const WpVocabulary v(std::vector<std::string>(entries.begin(), entries.end()));
    const auto word = testutil::random_word(rng, "abc", 1, 10);
    if (wp_encode(word, v) != testutil::greedy_longest_prefix(word, entries)) ++wp_bad;
  }
  return {ulm_bad == 0 && wp_bad == 0,
          "ulm mismatches " + std::to_string(ulm_bad) + "/1000, wordpiece mismatches " +
              std::to_string(wp_bad) + "/1000"};
}

Outcome criterion2(const Fixture& fx, std::map<std::string, Tokenizer>& trained) {
  std::size_t differ = 0;
  std::string which;
  for (const auto a : {Algorithm::WordPiece, Algorithm::Ulm}) {
    for (const auto g : kGuidance) {
      const auto first = train(fx, a, g, 1);
      const auto second = train(fx, a, g, 4);
      if (serialize(first) != serialize(second)) {
        ++differ;
        which += " " + label(a, g);
      }
      trained.emplace(label(a, g), first);
    }
  }
  return {differ == 0, std::to_string(8 - differ) + "/8 configurations byte-identical "
                           "(workers 1 vs 4)" + which};
}

Outcome criterion3(const Fixture& fx, const std::map<std::string, Tokenizer>& trained) {
  const auto acontextual = presegment_acontextual(fx.corpus, fx.lexicon);
  const auto contextual = presegment_contextual(fx.tagged, fx.lexicon);
  std::size_t checked = 0, violations = 0, atomic_checked = 0;
  for (const auto a : {Algorithm::WordPiece, Algorithm::Ulm}) {
    for (const auto g : {Guidance::MorphPreTokAcontextual, Guidance::MorphPreTokContextual}) {
      const auto& tok = trained.at(label(a, g));
      const auto& pre = g == Guidance::MorphPreTokContextual ? contextual : acontextual;
      std::set<std::string> types;
      for (const auto& s : pre.sentences) types.insert(s.begin(), s.end());
      for (const auto& w : types) {
        const auto morphemes = text::split_delimited(w, pre.delimiter);
        const auto pieces = tok.encode_morphemes(morphemes);
        ++checked;
        if (pieces.size() == 1 && pieces[0] == kUnknownPiece) {
          ++violations;
          continue;
        }
        const auto pb = boundaries(normalize_segmentation(pieces));
        const std::set<std::size_t> pred(pb.begin(), pb.end());
        const auto mb = morph_boundaries(morphemes);
        for (const auto b : mb) violations += pred.count(b) == 0;
        if (a != Algorithm::WordPiece) continue;
        const auto len = text::char_length(text::concat(morphemes));
        for (std::size_t i = 1; i < morphemes.size(); ++i) {
          if (!tok.wordpiece().contains(std::string(kContinuationPrefix) + morphemes[i])) {
            continue;
          }
          ++atomic_checked;
          const std::size_t begin = mb[i - 1];
          const std::size_t end = i < mb.size() ? mb[i] : len;
          for (std::size_t p = begin + 1; p < end; ++p) violations += pred.count(p);
        }
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations over " +
                               std::to_string(checked) + " word types (" +
                               std::to_string(atomic_checked) +
                               " in-vocabulary suffix morphemes checked for atomicity)"};
}

Outcome criterion4(const Fixture& fx, const std::map<std::string, Tokenizer>& trained) {
  std::size_t wp_missing = 0, ulm_missing = 0;
  const auto& wp = trained.at(label(Algorithm::WordPiece, Guidance::MorphSeed)).wordpiece();
  const auto& ulm = trained.at(label(Algorithm::Ulm, Guidance::MorphSeed)).ulm();
  for (const auto& s : fx.suffixes.suffixes) {
    wp_missing += !wp.contains(std::string(kContinuationPrefix) + s);
    const auto id = ulm.find(s);
    ulm_missing += !id || !ulm.pieces()[*id].is_protected ||
                   !std::isfinite(ulm.pieces()[*id].logprob);
  }
  // can + o = -3.3 against cano = -3.0.
  std::map<std::string, double> lp = {{"cano", -3.0}, {"can", -2.0}, {"o", -1.3},
                                      {"c", -9.0},    {"a", -9.0},   {"n", -9.0}};
  auto boosted = lp;
  boosted["o"] += 0.5;
  const bool oracle_ok =
      *testutil::best_tiling("cano", lp) == Segmentation{"cano"} &&
      *testutil::best_tiling("cano", boosted) == Segmentation{"can", "o"};
  const auto vocab = [&](double boost) {
    std::vector<UlmPiece> pieces;
    for (const auto& [p, l] : lp) pieces.push_back({p, l, p == "o"});
    return UlmVocabulary(std::move(pieces), "", boost);
  };
  const bool flip = vocab(0.0).encode("cano") == *testutil::best_tiling("cano", lp) &&
                    vocab(0.5).encode("cano") == *testutil::best_tiling("cano", boosted);
  const auto n = std::to_string(fx.suffixes.size());
  return {wp_missing == 0 && ulm_missing == 0 && oracle_ok && flip,
          "wordpiece " + std::to_string(fx.suffixes.size() - wp_missing) + "/" + n +
              " suffixes as ## entries, ulm " +
              std::to_string(fx.suffixes.size() - ulm_missing) + "/" + n +
              " protected survivors, boost flip " + (oracle_ok && flip ? "ok" : "wrong")};
}

Outcome criterion5(const Fixture& fx) {
  using A = AnalyzerPos;
  std::size_t passed = 0, total = 0;
  const auto check = [&](bool ok) { ++total; passed += ok; };
  const std::vector<MorphAnalysis> adversari = {{{"adversar", "i"}, A::Adjective},
                                                {{"advers", "ari"}, A::Verb}};
  auto out = disambiguate(adversari, UdPos::VERB);
  check(out.chosen && *out.chosen == Segmentation{"advers", "ari"});
  for (const bool reversed : {false, true}) {
    std::vector<MorphAnalysis> a = {{{"inordin", "at", "o"}, A::Verb},
                                    {{"inordin", "ato"}, A::Verb}};
    if (reversed) std::swap(a[0], a[1]);
    out = disambiguate(a, UdPos::VERB);
    check(out.chosen && *out.chosen == Segmentation{"inordin", "at", "o"} &&
          out.rule == DisambiguationRule::TieMoreSubwords);
  }
  out = disambiguate({{{"ros", "a"}, A::Noun}}, UdPos::VERB);
  check(out.chosen && *out.chosen == Segmentation{"ros", "a"} &&
        out.rule == DisambiguationRule::SingleAnalysis);
  out = disambiguate(adversari, UdPos::ADP);
  check(!out.chosen && out.rule == DisambiguationRule::NoMatchUnsegmented);
  // PRON scans Pronoun, Noun, Invariable in that order.
  out = disambiguate({{{"qu", "od"}, A::Invariable}, {{"quo", "d"}, A::Noun}}, UdPos::PRON);
  check(out.chosen && *out.chosen == Segmentation{"quo", "d"});
  out = disambiguate(adversari, UdPos::NOUN);
  check(out.chosen && *out.chosen == Segmentation{"adversar", "i"});

  const auto p = presegment_contextual(fx.tagged, fx.lexicon);
  check(p.stats.consistent());
  const double single = static_cast<double>(p.stats.count(DisambiguationRule::SingleAnalysis)) /
                        static_cast<double>(p.stats.total_words);
  char rate[64];
  std::snprintf(rate, sizeof rate, "%.2f%%", 100.0 * single);
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) +
                               " protocol checks; single-analysis rate on mini corpus " +
                               rate};
}

Outcome criterion6() {
  std::mt19937_64 rng(6006);
  GoldSegmentationSet gold;
  std::map<std::string, Segmentation> predicted;
  std::uint64_t em = 0, matched = 0, npred = 0, ngold = 0, pieces = 0;
  std::uint64_t ms_hits = 0, ms_words = 0, word_level_bad = 0;
  while (gold.items.size() < 200) {
    const auto w = testutil::random_word(rng, "abcdefgh", 1, 12);
    if (predicted.count(w)) continue;
    const auto g = testutil::random_split(rng, w);
    const auto p = testutil::random_split(rng, w);
    gold.items.push_back({w, std::nullopt, g});
    predicted[w] = p;
    const auto pb = testutil::split_points(p), gb = testutil::split_points(g);
    std::uint64_t inter = 0;
    for (const auto b : pb) inter += gb.count(b);
    em += p == g;
    matched += inter;
    npred += pb.size();
    ngold += gb.size();
    pieces += p.size();
    const auto c = boundary_counts(p, g);
    word_level_bad += exact_match(p, g) != (p == g ? 1 : 0);
    word_level_bad += c.matched != inter || c.predicted != pb.size() || c.gold != gb.size();
    if (g.size() > 1) {
      const auto ms = morphscore(p, g.front().size());
      if (pb.empty()) {
        word_level_bad += ms.has_value();
      } else {
        ++ms_words;
        ms_hits += pb.count(g.front().size());
        word_level_bad += !ms || *ms != static_cast<int>(pb.count(g.front().size()));
      }
    }
  }
  const auto r = evaluate(
      [&](const std::string& w, std::optional<UdPos>) { return predicted.at(w); }, gold);
  const auto q = [](std::uint64_t a, std::uint64_t b) {
    return testutil::Rational{a, b}.value();
  };
  const double prec = q(matched, npred), rec = q(matched, ngold);
  bool ok = word_level_bad == 0 && r.exact_match == q(em, 200) &&
            r.boundary_precision == prec && r.boundary_recall == rec &&
            std::abs(r.boundary_f1 - 2 * prec * rec / (prec + rec)) <= 1e-12 &&
            r.fertility == q(pieces, 200) && r.morphscore &&
            *r.morphscore == q(ms_hits, ms_words);

  // 36 pieces over 20 words, counted with awk when the fixture was written.
  const auto g20 = load_gold(testutil::test_data_path("gold20.tsv"));
  std::vector<Segmentation> segs;
  for (const auto& it : g20.items) segs.push_back(it.morphemes);
  const bool fixture_ok = g20.items.size() == 20 && fertility(segs) == 36.0 / 20.0;
  return {ok && fixture_ok, std::string("200-word oracle ") + (ok ? "agrees" : "disagrees") +
                                ", gold20 fertility " + text::format_double(fertility(segs)) +
                                " (expected 1.8)"};
}

Outcome criterion7(const Fixture& fx, const std::map<std::string, Tokenizer>& trained) {
  bool ok = true;
  std::string detail;
  for (const auto a : {Algorithm::WordPiece, Algorithm::Ulm}) {
    std::vector<double> em;
    for (const auto g : kGuidance) {
      const WordEncoder enc(trained.at(label(a, g)), &fx.lexicon);
      EvalOptions eo;
      eo.mode = EvalMode::Contextual;
      em.push_back(evaluate(enc, fx.gold_contextual, eo).exact_match);
    }
    // em = {baseline, morphseed, acontextual, contextual}
    ok = ok && em[3] >= em[2] && em[2] > em[1] && em[1] >= em[0];
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s ctx %.2f >= actx %.2f > seed %.2f >= base %.2f",
                  detail.empty() ? "" : "; ", std::string(to_string(a)).c_str(),
                  100 * em[3], 100 * em[2], 100 * em[1], 100 * em[0]);
    detail += buf;
  }
  return {ok, detail};
}

Outcome criterion8() {
  std::mt19937_64 rng(8008);
  std::size_t decreases = 0, steps = 0;
  for (int t = 0; t < 50; ++t) {
    std::map<std::string, std::uint64_t> words;
    const std::size_t n = 5 + rng() % 30;
    for (std::size_t i = 0; i < n; ++i) words[testutil::random_word(rng, "abcd", 1, 8)] += 1 + rng() % 5;
    std::map<std::string, double> freq;
    for (const auto& [w, c] : words) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t len = 1; len <= 4 && i + len <= w.size(); ++len) {
          freq[w.substr(i, len)] += static_cast<double>(c);
        }
      }
    }
    std::vector<UlmPiece> pieces;
    for (const auto& [p, f] : freq) pieces.push_back({p, std::log(f), false});
    normalize_logprobs(pieces);
    UlmVocabulary v(std::move(pieces), "", 0.0);
    const SegmentCounts segs(words.begin(), words.end());
    double prev = ulm_log_likelihood(segs, v);
    for (int step = 0; step < 10; ++step) {
      ulm_em_step(segs, v);
      const double next = ulm_log_likelihood(segs, v);
      ++steps;
      decreases += next < prev - 1e-9;
      prev = next;
    }
  }
  return {decreases == 0, std::to_string(decreases) + " decreases over " +
                              std::to_string(steps) + " EM steps on 50 corpora"};
}

Outcome criterion9(const Fixture& fx, const std::map<std::string, Tokenizer>& trained) {
  std::size_t bad_preseg = 0;
  const auto acontextual = presegment_acontextual(fx.corpus, fx.lexicon);
  const auto contextual = presegment_contextual(fx.tagged, fx.lexicon);
  const auto plain = fx.tagged.words();
  bad_preseg += strip_delimiters(acontextual).sentences != fx.corpus.sentences;
  bad_preseg += strip_delimiters(contextual).sentences != plain.sentences;

  std::set<std::string> types;
  for (const auto& s : fx.corpus.sentences) types.insert(s.begin(), s.end());
  std::string alphabet;
  {
    std::set<char> cs;
    for (const auto& w : types) cs.insert(w.begin(), w.end());
    alphabet.assign(cs.begin(), cs.end());
  }
  std::mt19937_64 rng(9009);
  std::vector<std::string> random_words;
  for (int i = 0; i < 1000; ++i) random_words.push_back(testutil::random_word(rng, alphabet, 1, 12));

  std::size_t bad_reload = 0, bad_strip = 0, unk = 0, rebuilt = 0;
  for (const auto& [name, tok] : trained) {
    std::istringstream in(serialize(tok));
    const Tokenizer back = load_tokenizer(in);
    for (const auto& w : random_words) bad_reload += back.encode(w) != tok.encode(w);
    const WordEncoder enc(tok, &fx.lexicon);
    const auto check = [&](const std::string& w) {
      const auto pieces = enc(w);
      if (pieces.size() == 1 && pieces[0] == kUnknownPiece) {
        ++unk;
        return;
      }
      ++rebuilt;
      bad_strip += text::concat(normalize_segmentation(pieces)) != w;
    };
    for (const auto& w : types) check(w);
    for (const auto& w : random_words) check(w);
  }
  return {bad_preseg == 0 && bad_reload == 0 && bad_strip == 0,
          "presegment strip mismatches " + std::to_string(bad_preseg) +
              ", reload mismatches " + std::to_string(bad_reload) + "/8000, strip failures " +
              std::to_string(bad_strip) + "/" + std::to_string(rebuilt) + " (" +
              std::to_string(unk) + " UNK)"};
}

}  // namespace

int main() {
  Fixture fx;
  try {
    fx.corpus = load_corpus(testutil::data_path("corpus.txt"));
    fx.tagged = load_tagged_corpus(testutil::data_path("tagged.tsv"));
    fx.lexicon = load_lexicon(testutil::data_path("lexicon.tsv")).lexicon;
    fx.suffixes = load_suffixes(testutil::data_path("suffixes.txt"));
    fx.gold_contextual = load_gold(testutil::data_path("gold_contextual.tsv"));
  } catch (const std::exception& e) {
    std::cout << "cannot load fixture: " << e.what() << '\n';
    return 1;
  }

  std::map<std::string, Tokenizer> trained;
  int failures = 0;
  const auto run = [&](int id, double limit_s, const std::function<Outcome()>& fn) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_s > 0 && secs > limit_s) {
      o.pass = false;
      o.detail += " (over time limit)";
    }
    failures += !o.pass;
    char t[32];
    std::snprintf(t, sizeof t, "%.2fs", secs);
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail
              << "  [" << t << "]" << std::endl;
  };

  run(1, 10, criterion1);
  run(2, 300, [&] { return criterion2(fx, trained); });
  if (trained.size() != 8) {
    std::cout << "training failed; later criteria cannot run\n";
    return 1;
  }
  run(3, 0, [&] { return criterion3(fx, trained); });
  run(4, 0, [&] { return criterion4(fx, trained); });
  run(5, 0, [&] { return criterion5(fx); });
  run(6, 0, criterion6);
  run(7, 600, [&] { return criterion7(fx, trained); });
  run(8, 0, criterion8);
  run(9, 0, [&] { return criterion9(fx, trained); });
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
