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

#ifndef MORPHTOK_TRAINING_WORDS_HPP_
#define MORPHTOK_TRAINING_WORDS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morphtok/corpus_io.hpp"
#include "morphtok/presegment.hpp"
#include "morphtok/text.hpp"

namespace morphtok {

// A word type as seen by the trainers: its morphemes (one when the corpus is
// not presegmented) and its token frequency.
struct WordCount {
  std::vector<std::string> morphemes;
  std::uint64_t count = 0;
};

// Sorted by morphemes, so iteration order is a function of the corpus only.
using WordCounts = std::vector<WordCount>;

inline WordCounts count_words(
    const std::vector<std::vector<std::string>>& sentences,
    std::optional<char> delimiter) {
  std::map<std::vector<std::string>, std::uint64_t> counts;
  for (const auto& s : sentences) {
    for (const auto& w : s) {
      if (delimiter) {
        ++counts[text::split_delimited(w, *delimiter)];
      } else {
        ++counts[{w}];
      }
    }
  }
  WordCounts out;
  out.reserve(counts.size());
  for (auto& [m, c] : counts) out.push_back({m, c});
  return out;
}

// With a delimiter, words of a raw corpus are read as delimited text.
inline WordCounts count_words(const Corpus& corpus,
                              std::optional<char> delimiter = std::nullopt) {
  return count_words(corpus.sentences, delimiter);
}

inline WordCounts count_words(const PresegmentedCorpus& corpus) {
  return count_words(corpus.sentences, corpus.delimiter);
}

}  // namespace morphtok

#endif  // MORPHTOK_TRAINING_WORDS_HPP_
