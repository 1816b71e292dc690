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

// Loaders for the external data formats:
//
//   corpus         one sentence per line, words separated by whitespace
//   tagged corpus  word<TAB>UD_POS, blank line between sentences
//   lexicon        word<TAB>index<TAB>pos<TAB>morph@emes
//   suffix list    one suffix per line
//   gold set       word<TAB>pos_or_dash<TAB>morph@emes
//
// Every loader has a stream overload; the path overloads only open the file.

#ifndef MORPHTOK_CORPUS_IO_HPP_
#define MORPHTOK_CORPUS_IO_HPP_

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "morphtok/morph_model.hpp"
#include "morphtok/text.hpp"

namespace morphtok {

struct Corpus {
  std::vector<std::vector<std::string>> sentences;

  std::size_t word_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.size();
    return n;
  }

  bool operator==(const Corpus&) const = default;
};

struct TaggedWord {
  std::string word;
  UdPos pos = UdPos::X;

  bool operator==(const TaggedWord&) const = default;
};

struct TaggedCorpus {
  std::vector<std::vector<TaggedWord>> sentences;

  // The untagged view of the same text.
  Corpus words() const {
    Corpus c;
    c.sentences.reserve(sentences.size());
    for (const auto& s : sentences) {
      auto& out = c.sentences.emplace_back();
      out.reserve(s.size());
      for (const auto& w : s) out.push_back(w.word);
    }
    return c;
  }
};

// Headword -> analyses, in analyzer output order.
class MorphLexicon {
 public:
  // Returns false (and leaves the lexicon unchanged) when the morphemes do not
  // spell the headword or one of them is empty.
  bool add(const std::string& word, MorphAnalysis analysis) {
    if (analysis.morphemes.empty()) return false;
    for (const auto& m : analysis.morphemes) {
      if (m.empty()) return false;
    }
    if (text::concat(analysis.morphemes) != word) return false;
    entries_[word].push_back(std::move(analysis));
    ++analysis_count_;
    return true;
  }

  const std::vector<MorphAnalysis>* find(const std::string& word) const {
    const auto it = entries_.find(word);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t analysis_count() const { return analysis_count_; }

  // Headwords in sorted order.
  std::vector<std::string> headwords() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [w, _] : entries_) out.push_back(w);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::unordered_map<std::string, std::vector<MorphAnalysis>> entries_;
  std::size_t analysis_count_ = 0;
};

struct LexiconLoad {
  MorphLexicon lexicon;
  // One diagnostic per rejected row, "line N: reason".
  std::vector<std::string> rejected;
};

// Sorted, duplicate-free suffixes without continuation markers.
struct SuffixList {
  std::vector<std::string> suffixes;

  bool contains(const std::string& s) const {
    return std::binary_search(suffixes.begin(), suffixes.end(), s);
  }
  std::size_t size() const { return suffixes.size(); }
};

struct GoldItem {
  std::string word;
  std::optional<UdPos> pos;
  std::vector<std::string> morphemes;
};

struct GoldSegmentationSet {
  std::vector<GoldItem> items;
};

struct LoadOptions {
  bool lowercase = false;
};

namespace detail {

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return in;
}

inline std::string where(std::size_t lineno) {
  return "line " + std::to_string(lineno);
}

inline void check_utf8(std::string_view line, std::size_t lineno) {
  if (!text::is_valid_utf8(line)) {
    throw InputError(where(lineno) + ": invalid UTF-8 byte sequence");
  }
}

inline std::string normalize(std::string_view s, const LoadOptions& opts) {
  return opts.lowercase ? text::ascii_lower(s) : std::string(s);
}

}  // namespace detail

// One sentence per line; blank lines are skipped.
inline Corpus parse_corpus(std::istream& in, const LoadOptions& opts = {}) {
  Corpus corpus;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::check_utf8(line, lineno);
    auto words = text::split_whitespace(line);
    if (words.empty()) continue;
    if (opts.lowercase) {
      for (auto& w : words) w = text::ascii_lower(w);
    }
    corpus.sentences.push_back(std::move(words));
  }
  if (in.bad()) throw InputError("read failure at " + detail::where(lineno));
  return corpus;
}

inline Corpus load_corpus(const std::string& path,
                          const LoadOptions& opts = {}) {
  auto in = detail::open_input(path);
  try {
    return parse_corpus(in, opts);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline TaggedCorpus parse_tagged_corpus(std::istream& in,
                                        const LoadOptions& opts = {}) {
  TaggedCorpus corpus;
  std::vector<TaggedWord> sentence;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::check_utf8(line, lineno);
    const std::string_view row = text::trim_eol(line);
    if (text::trim(row).empty()) {
      if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
      sentence.clear();
      continue;
    }
    const auto cols = text::split(row, '\t');
    if (cols.size() != 2 || cols[0].empty()) {
      throw InputError(detail::where(lineno) + ": expected word<TAB>UD_POS");
    }
    const auto pos = try_parse_ud_pos(cols[1]);
    if (!pos) {
      throw InputError(detail::where(lineno) + ": unknown UD POS tag '" +
                       cols[1] + "'");
    }
    sentence.push_back({detail::normalize(cols[0], opts), *pos});
  }
  if (!sentence.empty()) corpus.sentences.push_back(std::move(sentence));
  return corpus;
}

inline TaggedCorpus load_tagged_corpus(const std::string& path,
                                       const LoadOptions& opts = {}) {
  auto in = detail::open_input(path);
  try {
    return parse_tagged_corpus(in, opts);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Malformed rows are rejected with a diagnostic rather than failing the load.
inline LexiconLoad parse_lexicon(std::istream& in,
                                 const LoadOptions& opts = {}) {
  LexiconLoad out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = text::trim_eol(line);
    if (text::trim(row).empty() || row.front() == '#') continue;
    const auto reject = [&](const std::string& why) {
      out.rejected.push_back(detail::where(lineno) + ": " + why);
    };
    if (!text::is_valid_utf8(row)) {
      reject("invalid UTF-8 byte sequence");
      continue;
    }
    const auto cols = text::split(row, '\t');
    if (cols.size() != 4) {
      reject("expected 4 tab-separated columns");
      continue;
    }
    try {
      text::parse_int<long>(cols[1]);
    } catch (const InputError&) {
      reject("bad analysis index '" + cols[1] + "'");
      continue;
    }
    const auto pos = try_parse_analyzer_pos(cols[2]);
    if (!pos) {
      reject("unknown POS '" + cols[2] + "'");
      continue;
    }
    const std::string word = detail::normalize(cols[0], opts);
    MorphAnalysis analysis;
    for (const auto& m : text::split(cols[3], kDefaultDelimiter)) {
      analysis.morphemes.push_back(detail::normalize(m, opts));
    }
    analysis.pos = *pos;
    if (!out.lexicon.add(word, std::move(analysis))) {
      reject("morphemes '" + cols[3] + "' do not concatenate to '" + cols[0] +
             "'");
    }
  }
  return out;
}

inline LexiconLoad load_lexicon(const std::string& path,
                                const LoadOptions& opts = {}) {
  auto in = detail::open_input(path);
  return parse_lexicon(in, opts);
}

inline SuffixList parse_suffixes(std::istream& in) {
  SuffixList list;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::check_utf8(line, lineno);
    const std::string_view s = text::trim(line);
    if (s.empty()) continue;
    if (s.front() == '#' && !text::starts_with(s, kContinuationPrefix)) continue;
    if (text::starts_with(s, kContinuationPrefix) ||
        text::split_whitespace(s).size() != 1) {
      throw InputError(detail::where(lineno) + ": bad suffix '" +
                       std::string(s) + "'");
    }
    list.suffixes.emplace_back(s);
  }
  std::sort(list.suffixes.begin(), list.suffixes.end());
  list.suffixes.erase(std::unique(list.suffixes.begin(), list.suffixes.end()),
                      list.suffixes.end());
  return list;
}

inline SuffixList load_suffixes(const std::string& path) {
  auto in = detail::open_input(path);
  try {
    return parse_suffixes(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline GoldSegmentationSet parse_gold(std::istream& in,
                                      const LoadOptions& opts = {}) {
  GoldSegmentationSet gold;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    detail::check_utf8(line, lineno);
    const std::string_view row = text::trim_eol(line);
    if (text::trim(row).empty() || row.front() == '#') continue;
    const auto cols = text::split(row, '\t');
    if (cols.size() != 3) {
      throw InputError(detail::where(lineno) +
                       ": expected word<TAB>pos_or_dash<TAB>segmentation");
    }
    GoldItem item;
    item.word = detail::normalize(cols[0], opts);
    if (cols[1] != "-") {
      const auto pos = try_parse_ud_pos(cols[1]);
      if (!pos) {
        throw InputError(detail::where(lineno) + ": unknown UD POS tag '" +
                         cols[1] + "'");
      }
      item.pos = *pos;
    }
    for (const auto& m : text::split(cols[2], kDefaultDelimiter)) {
      if (m.empty()) {
        throw InputError(detail::where(lineno) + ": empty morpheme");
      }
      item.morphemes.push_back(detail::normalize(m, opts));
    }
    if (text::concat(item.morphemes) != item.word) {
      throw InputError(detail::where(lineno) + ": segmentation '" + cols[2] +
                       "' does not concatenate to '" + cols[0] + "'");
    }
    gold.items.push_back(std::move(item));
  }
  return gold;
}

inline GoldSegmentationSet load_gold(const std::string& path,
                                     const LoadOptions& opts = {}) {
  auto in = detail::open_input(path);
  try {
    return parse_gold(in, opts);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Checksum of a file's raw bytes, recorded in run manifests.
inline std::uint64_t file_checksum(const std::string& path) {
  auto in = detail::open_input(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return text::fnv1a(buf.str());
}

}  // namespace morphtok

#endif  // MORPHTOK_CORPUS_IO_HPP_
