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

// Rewrites a corpus so that morpheme boundaries are marked with a delimiter
// ("advers@ari"). Literal delimiter and backslash characters inside words are
// backslash-escaped in the delimited form and restored by strip_delimiters.

#ifndef MORPHTOK_PRESEGMENT_HPP_
#define MORPHTOK_PRESEGMENT_HPP_

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "morphtok/corpus_io.hpp"
#include "morphtok/morph_model.hpp"
#include "morphtok/parallel.hpp"
#include "morphtok/text.hpp"

namespace morphtok {

enum class PresegMode { Acontextual, Contextual };

inline std::string_view to_string(PresegMode m) {
  return m == PresegMode::Acontextual ? "acontextual" : "contextual";
}

struct PresegStats {
  std::array<std::uint64_t, kDisambiguationRuleCount> by_rule{};
  // Acontextual mode only: ambiguous words resolved by taking the first
  // analysis.
  std::uint64_t first_analysis = 0;
  std::uint64_t out_of_lexicon = 0;
  std::uint64_t total_words = 0;
  // Conflict accounting (same-POS ties), both per word token and per analysis.
  std::uint64_t analyses_seen = 0;
  std::uint64_t analyses_in_conflict = 0;

  std::uint64_t count(DisambiguationRule r) const {
    return by_rule[static_cast<std::size_t>(r)];
  }

  std::uint64_t conflict_words() const {
    return count(DisambiguationRule::TieLongerSuffix) +
           count(DisambiguationRule::TieMoreSubwords);
  }

  bool consistent() const {
    std::uint64_t sum = first_analysis + out_of_lexicon;
    for (const auto c : by_rule) sum += c;
    return sum == total_words;
  }

  PresegStats& operator+=(const PresegStats& o) {
    for (std::size_t i = 0; i < by_rule.size(); ++i) by_rule[i] += o.by_rule[i];
    first_analysis += o.first_analysis;
    out_of_lexicon += o.out_of_lexicon;
    total_words += o.total_words;
    analyses_seen += o.analyses_seen;
    analyses_in_conflict += o.analyses_in_conflict;
    return *this;
  }

  bool operator==(const PresegStats&) const = default;
};

struct PresegmentedCorpus {
  std::vector<std::vector<std::string>> sentences;
  PresegMode mode = PresegMode::Acontextual;
  char delimiter = kDefaultDelimiter;
  PresegStats stats;
};

struct PresegOptions {
  char delimiter = kDefaultDelimiter;
  unsigned workers = 1;
};

// Morphemes for one word under first-analysis selection. Out-of-lexicon words
// come back whole.
inline std::vector<std::string> segment_acontextual(
    const std::string& word, const MorphLexicon& lexicon,
    PresegStats* stats = nullptr) {
  PresegStats local;
  PresegStats& st = stats ? *stats : local;
  ++st.total_words;
  const auto* analyses = lexicon.find(word);
  if (analyses == nullptr) {
    ++st.out_of_lexicon;
    return {word};
  }
  st.analyses_seen += analyses->size();
  bool unique = true;
  for (const auto& a : *analyses) {
    if (a.morphemes != analyses->front().morphemes) unique = false;
  }
  if (unique) {
    ++st.by_rule[static_cast<std::size_t>(DisambiguationRule::SingleAnalysis)];
  } else {
    ++st.first_analysis;
  }
  return acontextual_choice(*analyses);
}

// Morphemes for one (word, tag) under the contextual protocol. Unresolvable
// and out-of-lexicon words come back whole.
inline std::vector<std::string> segment_contextual(
    const std::string& word, UdPos pos, const MorphLexicon& lexicon,
    const PosMapping& mapping, PresegStats* stats = nullptr) {
  PresegStats local;
  PresegStats& st = stats ? *stats : local;
  ++st.total_words;
  const auto* analyses = lexicon.find(word);
  if (analyses == nullptr) {
    ++st.out_of_lexicon;
    return {word};
  }
  st.analyses_seen += analyses->size();
  const auto outcome = disambiguate(*analyses, pos, mapping);
  ++st.by_rule[static_cast<std::size_t>(outcome.rule)];
  if (outcome.rule == DisambiguationRule::TieLongerSuffix ||
      outcome.rule == DisambiguationRule::TieMoreSubwords) {
    st.analyses_in_conflict += analyses->size();
  }
  if (!outcome.chosen) return {word};
  return *outcome.chosen;
}

namespace detail {

template <typename Sentence, typename SegmentFn>
PresegmentedCorpus presegment_sentences(const std::vector<Sentence>& input,
                                        PresegMode mode,
                                        const PresegOptions& opts,
                                        SegmentFn&& segment) {
  text::check_delimiter(opts.delimiter);
  PresegmentedCorpus out;
  out.mode = mode;
  out.delimiter = opts.delimiter;
  out.sentences.resize(input.size());
  std::vector<PresegStats> block_stats(block_count(input.size()));
  for_each_block(input.size(), opts.workers,
                 [&](std::size_t b, std::size_t begin, std::size_t end) {
                   for (std::size_t i = begin; i < end; ++i) {
                     auto& sentence = out.sentences[i];
                     sentence.reserve(input[i].size());
                     for (const auto& w : input[i]) {
                       sentence.push_back(text::join_delimited(
                           segment(w, &block_stats[b]), opts.delimiter));
                     }
                   }
                 });
  for (const auto& s : block_stats) out.stats += s;
  return out;
}

}  // namespace detail

inline PresegmentedCorpus presegment_acontextual(
    const Corpus& corpus, const MorphLexicon& lexicon,
    const PresegOptions& opts = {}) {
  return detail::presegment_sentences(
      corpus.sentences, PresegMode::Acontextual, opts,
      [&](const std::string& w, PresegStats* st) {
        return segment_acontextual(w, lexicon, st);
      });
}

inline PresegmentedCorpus presegment_contextual(
    const TaggedCorpus& tagged, const MorphLexicon& lexicon,
    const PosMapping& mapping = default_pos_mapping(),
    const PresegOptions& opts = {}) {
  return detail::presegment_sentences(
      tagged.sentences, PresegMode::Contextual, opts,
      [&](const TaggedWord& w, PresegStats* st) {
        return segment_contextual(w.word, w.pos, lexicon, mapping, st);
      });
}

inline Corpus strip_delimiters(const PresegmentedCorpus& p) {
  Corpus c;
  c.sentences.reserve(p.sentences.size());
  for (const auto& s : p.sentences) {
    auto& out = c.sentences.emplace_back();
    out.reserve(s.size());
    for (const auto& w : s) {
      out.push_back(text::concat(text::split_delimited(w, p.delimiter)));
    }
  }
  return c;
}

inline void write_presegmented(std::ostream& os, const PresegmentedCorpus& p) {
  for (const auto& s : p.sentences) {
    os << text::join(s, " ") << '\n';
  }
}

// Reads delimited text back; stats are not stored in the text form.
inline PresegmentedCorpus read_presegmented(std::istream& in, PresegMode mode,
                                            char delimiter = kDefaultDelimiter) {
  text::check_delimiter(delimiter);
  PresegmentedCorpus p;
  p.mode = mode;
  p.delimiter = delimiter;
  p.sentences = parse_corpus(in).sentences;
  return p;
}

// Human-readable and key/value renderings of the stats.
inline void write_stats_text(std::ostream& os, const PresegStats& st) {
  const auto pct = [&](std::uint64_t n) {
    return st.total_words == 0 ? 0.0 : 100.0 * static_cast<double>(n) /
                                            static_cast<double>(st.total_words);
  };
  os << "words                  " << st.total_words << '\n';
  os << "out_of_lexicon         " << st.out_of_lexicon << " ("
     << pct(st.out_of_lexicon) << "%)\n";
  for (std::size_t r = 0; r < kDisambiguationRuleCount; ++r) {
    const auto rule = static_cast<DisambiguationRule>(r);
    std::string name(to_string(rule));
    name.resize(23, ' ');
    os << name << st.count(rule) << " (" << pct(st.count(rule)) << "%)\n";
  }
  os << "first_analysis         " << st.first_analysis << " ("
     << pct(st.first_analysis) << "%)\n";
  os << "conflict_analyses      " << st.analyses_in_conflict << " of "
     << st.analyses_seen << '\n';
}

inline void write_stats_kv(std::ostream& os, const PresegStats& st) {
  os << "total_words=" << st.total_words << '\n';
  os << "out_of_lexicon=" << st.out_of_lexicon << '\n';
  for (std::size_t r = 0; r < kDisambiguationRuleCount; ++r) {
    const auto rule = static_cast<DisambiguationRule>(r);
    os << to_string(rule) << '=' << st.count(rule) << '\n';
  }
  os << "first_analysis=" << st.first_analysis << '\n';
  os << "conflict_words=" << st.conflict_words() << '\n';
  os << "analyses_seen=" << st.analyses_seen << '\n';
  os << "analyses_in_conflict=" << st.analyses_in_conflict << '\n';
}

}  // namespace morphtok

#endif  // MORPHTOK_PRESEGMENT_HPP_
