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

// Morphological analyses, the UD -> analyzer POS mapping, and the rules that
// pick one segmentation for a word given its predicted POS tag.

#ifndef MORPHTOK_MORPH_MODEL_HPP_
#define MORPHTOK_MORPH_MODEL_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "morphtok/text.hpp"

namespace morphtok {

// Universal Dependencies POS inventory.
enum class UdPos {
  NOUN,
  PROPN,
  VERB,
  ADJ,
  PRON,
  ADV,
  ADP,
  CCONJ,
  SCONJ,
  PART,
  INTJ,
  DET,
  X,
  AUX,
  PUNCT,
  NUM,
};
inline constexpr std::size_t kUdPosCount = 16;

// POS inventory of the morphological analyzer.
enum class AnalyzerPos {
  Noun,
  Adjective,
  Verb,
  Pronoun,
  Invariable,
  Preposition,
  Conjunction,
  Interjection,
  Other,
};
inline constexpr std::size_t kAnalyzerPosCount = 9;

inline constexpr std::array<std::string_view, kUdPosCount> kUdPosNames = {
    "NOUN", "PROPN", "VERB", "ADJ",  "PRON", "ADV", "ADP",   "CCONJ",
    "SCONJ", "PART", "INTJ", "DET", "X",    "AUX", "PUNCT", "NUM"};

inline constexpr std::array<std::string_view, kAnalyzerPosCount>
    kAnalyzerPosNames = {"Noun",        "Adjective",   "Verb",
                         "Pronoun",     "Invariable",  "Preposition",
                         "Conjunction", "Interjection", "Other"};

inline std::string_view to_string(UdPos p) {
  return kUdPosNames[static_cast<std::size_t>(p)];
}

inline std::string_view to_string(AnalyzerPos p) {
  return kAnalyzerPosNames[static_cast<std::size_t>(p)];
}

inline std::optional<UdPos> try_parse_ud_pos(std::string_view s) {
  for (std::size_t i = 0; i < kUdPosCount; ++i) {
    if (kUdPosNames[i] == s) return static_cast<UdPos>(i);
  }
  return std::nullopt;
}

inline UdPos parse_ud_pos(std::string_view s) {
  if (auto p = try_parse_ud_pos(s)) return *p;
  throw InputError("unknown UD POS tag '" + std::string(s) + "'");
}

// Case-insensitive, so "Noun", "noun" and "NOUN" are all accepted.
inline std::optional<AnalyzerPos> try_parse_analyzer_pos(std::string_view s) {
  const std::string lowered = text::ascii_lower(s);
  for (std::size_t i = 0; i < kAnalyzerPosCount; ++i) {
    if (text::ascii_lower(kAnalyzerPosNames[i]) == lowered) {
      return static_cast<AnalyzerPos>(i);
    }
  }
  return std::nullopt;
}

inline AnalyzerPos parse_analyzer_pos(std::string_view s) {
  if (auto p = try_parse_analyzer_pos(s)) return *p;
  throw InputError("unknown analyzer POS tag '" + std::string(s) + "'");
}

// One analyzer reading: morphemes (root first, then suffixes) and its POS.
struct MorphAnalysis {
  std::vector<std::string> morphemes;
  AnalyzerPos pos = AnalyzerPos::Other;

  bool operator==(const MorphAnalysis&) const = default;
};

// Ordered UD -> analyzer POS table. Analyzer tags of a row are tried in order.
class PosMapping {
 public:
  PosMapping() = default;

  static PosMapping builtin() {
    using A = AnalyzerPos;
    PosMapping m;
    m.set(UdPos::NOUN, {A::Noun, A::Adjective});
    m.set(UdPos::PROPN, {A::Noun, A::Adjective});
    m.set(UdPos::VERB, {A::Verb});
    m.set(UdPos::ADJ, {A::Adjective, A::Noun});
    m.set(UdPos::PRON, {A::Pronoun, A::Noun, A::Invariable});
    m.set(UdPos::ADV, {A::Invariable});
    m.set(UdPos::ADP, {A::Preposition, A::Invariable});
    m.set(UdPos::CCONJ, {A::Conjunction, A::Invariable});
    m.set(UdPos::SCONJ, {A::Conjunction, A::Invariable});
    m.set(UdPos::PART, {A::Interjection, A::Invariable});
    m.set(UdPos::INTJ, {A::Interjection, A::Invariable});
    m.set(UdPos::DET, {A::Pronoun, A::Adjective});
    m.set(UdPos::X, {A::Invariable, A::Other});
    m.set(UdPos::AUX, {A::Verb});
    m.set(UdPos::PUNCT, {A::Invariable});
    m.set(UdPos::NUM, {A::Noun, A::Adjective, A::Invariable});
    return m;
  }

  // Reads `ud_tag<TAB>analyzer_tag_csv` rows over the built-in table. Rows not
  // present in the file keep their built-in value.
  static PosMapping load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open POS mapping file " + path);
    PosMapping m = builtin();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string_view row = text::trim(line);
      if (row.empty() || row.front() == '#') continue;
      const auto cols = text::split(row, '\t');
      if (cols.size() != 2) {
        throw InputError(path + ":" + std::to_string(lineno) +
                         ": expected 2 tab-separated columns");
      }
      std::vector<AnalyzerPos> tags;
      for (const auto& t : text::split(cols[1], ',')) {
        const auto tag = try_parse_analyzer_pos(text::trim(t));
        if (!tag) {
          throw InputError(path + ":" + std::to_string(lineno) +
                           ": unknown analyzer POS '" + t + "'");
        }
        tags.push_back(*tag);
      }
      const auto ud = try_parse_ud_pos(text::trim(cols[0]));
      if (!ud) {
        throw InputError(path + ":" + std::to_string(lineno) +
                         ": unknown UD POS tag '" + cols[0] + "'");
      }
      m.set(*ud, std::move(tags));
    }
    return m;
  }

  void set(UdPos ud, std::vector<AnalyzerPos> tags) {
    rows_[static_cast<std::size_t>(ud)] = std::move(tags);
  }

  const std::vector<AnalyzerPos>& map(UdPos ud) const {
    return rows_[static_cast<std::size_t>(ud)];
  }

 private:
  std::array<std::vector<AnalyzerPos>, kUdPosCount> rows_;
};

inline const PosMapping& default_pos_mapping() {
  static const PosMapping mapping = PosMapping::builtin();
  return mapping;
}

inline const std::vector<AnalyzerPos>& map_pos(UdPos ud) {
  return default_pos_mapping().map(ud);
}

inline const std::vector<AnalyzerPos>& map_pos(std::string_view ud_tag) {
  return map_pos(parse_ud_pos(ud_tag));
}

enum class DisambiguationRule {
  SingleAnalysis,
  PosMatched,
  NoMatchUnsegmented,
  TieLongerSuffix,
  TieMoreSubwords,
};
inline constexpr std::size_t kDisambiguationRuleCount = 5;

inline std::string_view to_string(DisambiguationRule r) {
  static constexpr std::array<std::string_view, kDisambiguationRuleCount>
      kNames = {"single_analysis", "pos_matched", "no_match_unsegmented",
                "tie_longer_suffix", "tie_more_subwords"};
  return kNames[static_cast<std::size_t>(r)];
}

struct DisambiguationOutcome {
  // Absent iff rule == NoMatchUnsegmented.
  std::optional<std::vector<std::string>> chosen;
  DisambiguationRule rule = DisambiguationRule::NoMatchUnsegmented;
  // Distinct segmentations the deciding rule chose among.
  std::size_t candidate_count = 0;
};

namespace detail {

// Distinct segmentations in first-occurrence order.
inline std::vector<const std::vector<std::string>*> distinct_segmentations(
    const std::vector<const MorphAnalysis*>& analyses) {
  std::vector<const std::vector<std::string>*> out;
  for (const MorphAnalysis* a : analyses) {
    bool seen = false;
    for (const auto* s : out) {
      if (*s == a->morphemes) {
        seen = true;
        break;
      }
    }
    if (!seen) out.push_back(&a->morphemes);
  }
  return out;
}

}  // namespace detail

// Picks one segmentation of a word from its analyses and predicted UD tag.
//
// Rules, in order: a single unique segmentation is used regardless of POS;
// otherwise the mapped analyzer tags are scanned in table order and the first
// tag with at least one analysis forms the candidate bucket; no bucket leaves
// the word unsegmented. Inside a bucket with several segmentations, more
// subwords wins when counts differ, and the longer final morpheme (in code
// points) wins among equal counts. Remaining ties go to input order.
inline DisambiguationOutcome disambiguate(
    const std::vector<MorphAnalysis>& analyses, UdPos ud_tag,
    const PosMapping& mapping = default_pos_mapping()) {
  if (analyses.empty()) {
    throw std::invalid_argument("disambiguate: no analyses");
  }
  std::vector<const MorphAnalysis*> all;
  all.reserve(analyses.size());
  for (const auto& a : analyses) all.push_back(&a);
  const auto unique = detail::distinct_segmentations(all);
  if (unique.size() == 1) {
    return {*unique.front(), DisambiguationRule::SingleAnalysis, 1};
  }

  for (const AnalyzerPos tag : mapping.map(ud_tag)) {
    std::vector<const MorphAnalysis*> bucket;
    for (const auto& a : analyses) {
      if (a.pos == tag) bucket.push_back(&a);
    }
    if (bucket.empty()) continue;

    const auto candidates = detail::distinct_segmentations(bucket);
    if (candidates.size() == 1) {
      return {*candidates.front(), DisambiguationRule::PosMatched, 1};
    }

    std::size_t max_count = 0;
    std::size_t min_count = SIZE_MAX;
    for (const auto* c : candidates) {
      max_count = std::max(max_count, c->size());
      min_count = std::min(min_count, c->size());
    }
    const auto rule = max_count != min_count
                          ? DisambiguationRule::TieMoreSubwords
                          : DisambiguationRule::TieLongerSuffix;
    const std::vector<std::string>* best = nullptr;
    std::size_t best_suffix = 0;
    for (const auto* c : candidates) {
      if (c->size() != max_count) continue;
      const std::size_t suffix = text::char_length(c->back());
      if (best == nullptr || suffix > best_suffix) {
        best = c;
        best_suffix = suffix;
      }
    }
    return {*best, rule, candidates.size()};
  }
  return {std::nullopt, DisambiguationRule::NoMatchUnsegmented, unique.size()};
}

// Type-level choice: the first analysis as given by the analyzer.
inline std::vector<std::string> acontextual_choice(
    const std::vector<MorphAnalysis>& analyses) {
  if (analyses.empty()) {
    throw std::invalid_argument("acontextual_choice: no analyses");
  }
  return analyses.front().morphemes;
}

}  // namespace morphtok

#endif  // MORPHTOK_MORPH_MODEL_HPP_
