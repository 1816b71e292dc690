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

// Generates the synthetic inflected mini-corpus under data/mini:
//
//   corpus.txt            one sentence per line
//   tagged.tsv            word<TAB>UD_POS, blank line between sentences
//   lexicon.tsv           word<TAB>index<TAB>analyzer_pos<TAB>m1@m2@...
//   suffixes.txt          inflectional endings, one per line
//   gold_contextual.tsv   unique (word, UD_POS) pairs with their true analysis
//   gold_acontextual.tsv  a sample of word types, no POS
//
// Every lexeme is a stem plus an inflection class, so the true segmentation
// of each token is known. Some verb stems also spawn nouns whose forms
// collide with verb or participle forms (stem+ar+i vs stem+ari, stem+at+a vs
// stem+ata), which gives the lexicon cross-POS ambiguity; participles carry a
// second, shorter adjective reading of the same POS.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morphtok/morph_model.hpp"
#include "morphtok/text.hpp"

namespace {

using morphtok::AnalyzerPos;
using morphtok::UdPos;
using Morphemes = std::vector<std::string>;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::uint64_t state_;
};

struct Paradigm {
  UdPos ud;
  AnalyzerPos pos;
  // Morphemes following the stem, one entry per form.
  std::vector<Morphemes> endings;
};

const Paradigm kNoun1{UdPos::NOUN, AnalyzerPos::Noun,
                      {{"a"}, {"ae"}, {"am"}, {"arum"}, {"is"}, {"as"}}};
const Paradigm kNoun2{UdPos::NOUN, AnalyzerPos::Noun,
                      {{"us"}, {"i"}, {"o"}, {"um"}, {"orum"}, {"is"}, {"os"}}};
const Paradigm kNoun3{
    UdPos::NOUN, AnalyzerPos::Noun,
    {{"or"}, {"oris"}, {"ori"}, {"orem"}, {"ore"}, {"ores"}, {"oribus"}}};
const Paradigm kAdj{UdPos::ADJ, AnalyzerPos::Adjective,
                    {{"us"}, {"a"}, {"um"}, {"i"}, {"ae"}, {"o"}, {"am"},
                     {"os"}, {"as"}, {"is"}, {"orum"}, {"arum"}}};
const Paradigm kVerb{UdPos::VERB, AnalyzerPos::Verb,
                     {{"o"}, {"as"}, {"at"}, {"amus"}, {"atis"}, {"ant"},
                      {"are"}, {"ari"}, {"avit"}, {"abat"}, {"abant"}}};
const Paradigm kParticiple{UdPos::ADJ, AnalyzerPos::Adjective,
                           {{"at", "o"}, {"at", "us"}, {"at", "a"},
                            {"at", "um"}, {"at", "i"}, {"at", "ae"}}};

struct Lexeme {
  std::string stem;
  const Paradigm* paradigm;
};

struct Form {
  std::string word;
  UdPos ud;
  AnalyzerPos pos;
  Morphemes morphemes;
};

std::vector<Form> forms_of(const Lexeme& lx) {
  std::vector<Form> out;
  for (const auto& e : lx.paradigm->endings) {
    Form f{lx.stem, lx.paradigm->ud, lx.paradigm->pos, {lx.stem}};
    for (const auto& m : e) {
      f.word += m;
      f.morphemes.push_back(m);
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string make_stem(SplitMix64& rng, std::size_t syllables) {
  static const std::vector<std::string> kOnsets = {
      "b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v",
      "qu", "pr", "tr", "st", "cr", "gr", "pl", "fl", "sc"};
  static const std::vector<std::string> kVowels = {"a", "e", "i", "o", "u"};
  static const std::vector<std::string> kCodas = {"n", "r", "s", "l", "m",
                                                  "t", "nd", "rt", "ct", "x"};
  std::string s;
  for (std::size_t i = 0; i < syllables; ++i) {
    s += kOnsets[rng.below(kOnsets.size())];
    s += kVowels[rng.below(kVowels.size())];
  }
  s += kCodas[rng.below(kCodas.size())];
  return s;
}

// Zipf-like sampler over n items with integer weights.
class ZipfPicker {
 public:
  explicit ZipfPicker(std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t r = 0; r < n; ++r) {
      total += 1000000 / (r + 2);
      cumulative_.push_back(total);
    }
  }
  std::size_t pick(SplitMix64& rng) const {
    const auto x = rng.below(cumulative_.back());
    return static_cast<std::size_t>(
        std::upper_bound(cumulative_.begin(), cumulative_.end(), x) -
        cumulative_.begin());
  }

 private:
  std::vector<std::uint64_t> cumulative_;
};

struct Category {
  std::vector<Lexeme> lexemes;
  std::uint64_t weight;
};

struct Invariable {
  std::string word;
  UdPos ud;
  AnalyzerPos pos;
};

const std::vector<Invariable> kFunctionWords = {
    {"et", UdPos::CCONJ, AnalyzerPos::Conjunction},
    {"sed", UdPos::CCONJ, AnalyzerPos::Conjunction},
    {"aut", UdPos::CCONJ, AnalyzerPos::Conjunction},
    {"cum", UdPos::SCONJ, AnalyzerPos::Conjunction},
    {"quod", UdPos::SCONJ, AnalyzerPos::Conjunction},
    {"in", UdPos::ADP, AnalyzerPos::Preposition},
    {"ad", UdPos::ADP, AnalyzerPos::Preposition},
    {"ex", UdPos::ADP, AnalyzerPos::Preposition},
    {"per", UdPos::ADP, AnalyzerPos::Preposition},
    {"non", UdPos::ADV, AnalyzerPos::Invariable},
    {"iam", UdPos::ADV, AnalyzerPos::Invariable},
    {"saepe", UdPos::ADV, AnalyzerPos::Invariable},
    {"ego", UdPos::PRON, AnalyzerPos::Pronoun},
    {"nos", UdPos::PRON, AnalyzerPos::Pronoun},
    {"hic", UdPos::DET, AnalyzerPos::Pronoun},
    {"ille", UdPos::DET, AnalyzerPos::Pronoun},
};

std::string seg_string(const Morphemes& m) { return morphtok::text::join(m, "@"); }

void write_file(const std::string& path, const std::string& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic inflected mini-corpus"};
  std::string out_dir = "data/mini";
  std::uint64_t seed = 20240601;
  std::size_t words = 50000;
  std::size_t acontextual_items = 1000;
  app.add_option("-o,--output", out_dir, "Output directory");
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--words", words, "Approximate corpus size in words");
  app.add_option("--acontextual-items", acontextual_items,
                 "Word types in the acontextual gold set");
  CLI11_PARSE(app, argc, argv);

  SplitMix64 rng(seed);
  std::set<std::string> used_stems;
  const auto fresh_stem = [&](std::size_t syllables) {
    for (;;) {
      auto s = make_stem(rng, syllables);
      if (used_stems.insert(s).second) return s;
    }
  };

  // Lexemes by category. Derived nouns share their verb's stem plus "ar" or
  // "at", so their forms collide with verb and participle forms.
  std::vector<Lexeme> verbs, participles, nouns, adjs, derived;
  for (int i = 0; i < 160; ++i) {
    const auto stem = fresh_stem(1 + rng.below(2));
    verbs.push_back({stem, &kVerb});
    if (i % 2 == 0) participles.push_back({stem, &kParticiple});
    if (i % 5 < 2) {
      used_stems.insert(stem + "ar");
      derived.push_back({stem + "ar", &kNoun2});
    }
    if (i % 5 == 2 || i % 5 == 3) {
      used_stems.insert(stem + "at");
      derived.push_back({stem + "at", &kNoun1});
    }
  }
  for (int i = 0; i < 130; ++i) nouns.push_back({fresh_stem(1 + rng.below(2)), &kNoun1});
  for (int i = 0; i < 150; ++i) nouns.push_back({fresh_stem(1 + rng.below(2)), &kNoun2});
  for (int i = 0; i < 60; ++i) nouns.push_back({fresh_stem(1 + rng.below(2)), &kNoun3});
  for (int i = 0; i < 110; ++i) adjs.push_back({fresh_stem(1 + rng.below(2)), &kAdj});
  rng.shuffle(nouns);
  rng.shuffle(derived);

  std::vector<std::string> proper;
  for (int i = 0; i < 60; ++i) {
    auto s = fresh_stem(2);
    s += "ius";
    proper.push_back(s);
  }

  // Every form with its true analysis. A (word, UD) pair that two lexemes
  // produce with different segmentations would make the gold ambiguous, so
  // the later lexeme's form is dropped from generation.
  std::map<std::pair<std::string, UdPos>, Form> by_word_ud;
  std::map<std::string, std::vector<Form>> analyses;
  const auto admit = [&](const Form& f) {
    const auto key = std::make_pair(f.word, f.ud);
    const auto it = by_word_ud.find(key);
    if (it != by_word_ud.end()) return it->second.morphemes == f.morphemes;
    by_word_ud.emplace(key, f);
    return true;
  };
  const auto add_analysis = [&](const std::string& word, AnalyzerPos pos,
                                const Morphemes& m) {
    auto& list = analyses[word];
    for (const auto& f : list) {
      if (f.pos == pos && f.morphemes == m) return;
    }
    list.push_back({word, UdPos::X, pos, m});
  };

  std::vector<Category> categories = {
      {nouns, 26}, {derived, 10}, {adjs, 14}, {verbs, 20}, {participles, 8}};
  std::vector<std::vector<std::vector<Form>>> cat_forms;
  for (auto& cat : categories) {
    auto& per_lexeme = cat_forms.emplace_back();
    for (const auto& lx : cat.lexemes) {
      std::vector<Form> kept;
      for (auto& f : forms_of(lx)) {
        if (!admit(f)) continue;
        add_analysis(f.word, f.pos, f.morphemes);
        if (lx.paradigm == &kParticiple) {
          add_analysis(f.word, AnalyzerPos::Adjective,
                       {f.morphemes[0] + f.morphemes[1], f.morphemes[2]});
        }
        kept.push_back(std::move(f));
      }
      per_lexeme.push_back(std::move(kept));
    }
  }
  for (const auto& fw : kFunctionWords) add_analysis(fw.word, fw.pos, {fw.word});

  std::vector<ZipfPicker> pickers;
  std::uint64_t cat_total = 0;
  for (const auto& cat : categories) {
    pickers.emplace_back(cat.lexemes.size());
    cat_total += cat.weight;
  }
  const ZipfPicker function_picker(kFunctionWords.size());
  const ZipfPicker proper_picker(proper.size());

  // Sentences.
  std::string corpus_txt, tagged_tsv;
  std::vector<Form> tokens;
  std::size_t produced = 0;
  while (produced < words) {
    const std::size_t len = 6 + rng.below(9);
    std::vector<std::string> sentence;
    for (std::size_t i = 0; i < len; ++i) {
      const auto roll = rng.below(100);
      Form tok;
      if (roll < 22) {
        const auto& fw = kFunctionWords[function_picker.pick(rng)];
        tok = {fw.word, fw.ud, fw.pos, {fw.word}};
      } else if (roll < 25) {
        const auto& p = proper[proper_picker.pick(rng)];
        tok = {p, UdPos::PROPN, AnalyzerPos::Noun, {p}};
      } else {
        auto c = rng.below(cat_total);
        std::size_t ci = 0;
        while (c >= categories[ci].weight) c -= categories[ci++].weight;
        const auto& lexeme_forms = cat_forms[ci][pickers[ci].pick(rng)];
        if (lexeme_forms.empty()) continue;
        tok = lexeme_forms[rng.below(lexeme_forms.size())];
      }
      sentence.push_back(tok.word);
      tagged_tsv += tok.word + "\t" + std::string(morphtok::to_string(tok.ud)) + "\n";
      tokens.push_back(std::move(tok));
    }
    if (sentence.empty()) continue;
    tagged_tsv += "\n";
    corpus_txt += morphtok::text::join(sentence, " ") + "\n";
    produced += sentence.size();
  }

  // Lexicon rows: analyses of each word in a random order.
  std::string lexicon_tsv;
  for (auto& [word, list] : analyses) {
    rng.shuffle(list);
    for (std::size_t i = 0; i < list.size(); ++i) {
      lexicon_tsv += word + "\t" + std::to_string(i) + "\t" +
                     std::string(morphtok::to_string(list[i].pos)) + "\t" +
                     seg_string(list[i].morphemes) + "\n";
    }
  }

  std::set<std::string> suffixes;
  for (const auto* p : {&kNoun1, &kNoun2, &kNoun3, &kAdj, &kVerb, &kParticiple}) {
    for (const auto& e : p->endings) {
      for (const auto& m : e) suffixes.insert(m);
    }
  }
  std::string suffixes_txt;
  for (const auto& s : suffixes) suffixes_txt += s + "\n";

  // Contextual gold: unique (word, UD) pairs in first-occurrence order.
  std::set<std::pair<std::string, UdPos>> seen;
  std::string gold_ctx;
  std::map<std::string, const Form*> first_form;
  std::vector<std::string> type_order;
  for (const auto& t : tokens) {
    if (seen.insert({t.word, t.ud}).second) {
      gold_ctx += t.word + "\t" + std::string(morphtok::to_string(t.ud)) + "\t" +
                  seg_string(t.morphemes) + "\n";
    }
    if (first_form.emplace(t.word, &t).second) type_order.push_back(t.word);
  }

  // Acontextual gold: a random sample of word types with the analysis of
  // their first occurrence.
  rng.shuffle(type_order);
  type_order.resize(std::min(acontextual_items, type_order.size()));
  std::sort(type_order.begin(), type_order.end());
  std::string gold_actx;
  for (const auto& w : type_order) {
    gold_actx += w + "\t-\t" + seg_string(first_form[w]->morphemes) + "\n";
  }

  std::filesystem::create_directories(out_dir);
  write_file(out_dir + "/corpus.txt", corpus_txt);
  write_file(out_dir + "/tagged.tsv", tagged_tsv);
  write_file(out_dir + "/lexicon.tsv", lexicon_tsv);
  write_file(out_dir + "/suffixes.txt", suffixes_txt);
  write_file(out_dir + "/gold_contextual.tsv", gold_ctx);
  write_file(out_dir + "/gold_acontextual.tsv", gold_actx);
  std::cerr << "wrote " << produced << " words, " << analyses.size()
            << " lexicon headwords, " << seen.size()
            << " contextual gold pairs to " << out_dir << '\n';
  return 0;
}
