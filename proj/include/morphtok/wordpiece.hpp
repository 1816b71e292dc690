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

// WordPiece: bottom-up vocabulary construction by PMI-scored merges, and
// greedy longest-match-first encoding.
//
// Continuation pieces carry the "##" prefix. When training on presegmented
// text every morpheme is a separate merge unit, so no entry ever spans a
// morpheme boundary; non-initial morphemes start in continuation form.

#ifndef MORPHTOK_WORDPIECE_HPP_
#define MORPHTOK_WORDPIECE_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "morphtok/corpus_io.hpp"
#include "morphtok/parallel.hpp"
#include "morphtok/piece_trie.hpp"
#include "morphtok/presegment.hpp"
#include "morphtok/text.hpp"
#include "morphtok/training_words.hpp"

namespace morphtok {

using Segmentation = std::vector<std::string>;

class WpVocabulary {
 public:
  WpVocabulary() = default;

  // Entries keep the given order; duplicates are dropped.
  explicit WpVocabulary(std::vector<std::string> entries) {
    for (auto& e : entries) add(std::move(e));
  }

  bool add(std::string entry) {
    if (!index_.insert(entry).second) return false;
    trie_.insert(entry, static_cast<int>(entries_.size()));
    entries_.push_back(std::move(entry));
    return true;
  }

  bool contains(std::string_view entry) const {
    return index_.count(std::string(entry)) != 0;
  }

  std::size_t size() const { return entries_.size(); }
  const std::vector<std::string>& entries() const { return entries_; }

  // Greedy longest-match-first. Any position without a match turns the whole
  // word into the unknown piece.
  Segmentation encode(std::string_view word) const {
    return encode_morphemes({std::string(word)});
  }

  // Encodes each morpheme separately; morphemes after the first are matched
  // in continuation form from their first character.
  Segmentation encode_morphemes(
      const std::vector<std::string>& morphemes) const {
    Segmentation out;
    for (std::size_t m = 0; m < morphemes.size(); ++m) {
      const std::string_view s = morphemes[m];
      std::size_t pos = 0;
      while (pos < s.size()) {
        const std::string_view prefix =
            (m == 0 && pos == 0) ? std::string_view{} : kContinuationPrefix;
        std::size_t best_end = 0;
        int best_id = -1;
        trie_.for_each_match(prefix, s, pos, [&](std::size_t end, int id) {
          best_end = end;
          best_id = id;
        });
        if (best_id < 0) return {std::string(kUnknownPiece)};
        out.push_back(entries_[static_cast<std::size_t>(best_id)]);
        pos = best_end;
      }
    }
    return out;
  }

 private:
  std::vector<std::string> entries_;
  std::unordered_set<std::string> index_;
  PieceTrie trie_;
};

inline Segmentation wp_encode(std::string_view word, const WpVocabulary& vocab) {
  return vocab.encode(word);
}

struct WpTrainerConfig {
  std::size_t vocab_size = 30000;
  std::uint64_t min_pair_frequency = 2;
  std::optional<SuffixList> seeding;
  std::optional<char> morph_delimiter;
  unsigned workers = 1;
};

namespace detail {

class WpMerger {
 public:
  WpMerger(const WordCounts& words, const WpTrainerConfig& cfg) : cfg_(cfg) {
    // Identical (morpheme, position class) units are pooled.
    std::map<std::pair<std::string, bool>, std::uint64_t> pooled;
    for (const auto& w : words) {
      for (std::size_t m = 0; m < w.morphemes.size(); ++m) {
        if (w.morphemes[m].empty()) continue;
        pooled[{w.morphemes[m], m == 0}] += w.count;
      }
    }
    // Every character enters in both its word-initial and continuation form.
    std::set<std::string> alphabet;
    for (const auto& [key, count] : pooled) {
      Unit u;
      u.weight = count;
      bool first = key.second;
      for (auto& c : text::chars(key.first)) {
        std::string name = first ? c : std::string(kContinuationPrefix) + c;
        u.symbols.push_back(intern(name));
        alphabet.insert(std::move(c));
        first = false;
      }
      units_.push_back(std::move(u));
    }
    for (const auto& c : alphabet) vocab_.add(c);
    for (const auto& c : alphabet) {
      vocab_.add(std::string(kContinuationPrefix) + c);
    }
  }

  WpVocabulary train() {
    const std::size_t char_entries = vocab_.size();
    if (cfg_.vocab_size <= char_entries) {
      throw InputError("vocab_size " + std::to_string(cfg_.vocab_size) +
                       " does not exceed the " + std::to_string(char_entries) +
                       " character entries");
    }
    if (cfg_.seeding) {
      for (const auto& s : cfg_.seeding->suffixes) {
        vocab_.add(std::string(kContinuationPrefix) + s);
      }
      if (vocab_.size() > cfg_.vocab_size) {
        throw InputError("vocab_size " + std::to_string(cfg_.vocab_size) +
                         " is smaller than characters plus seeded suffixes (" +
                         std::to_string(vocab_.size()) + ")");
      }
    }
    count_all();
    while (vocab_.size() < cfg_.vocab_size) {
      const auto best = select_pair();
      if (!best) break;
      apply_merge(*best);
    }
    return std::move(vocab_);
  }

 private:
  struct Unit {
    std::vector<int> symbols;
    std::uint64_t weight = 0;
  };

  using PairKey = std::uint64_t;

  static PairKey key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }
  static int left(PairKey k) { return static_cast<int>(k >> 32); }
  static int right(PairKey k) { return static_cast<int>(k & 0xFFFFFFFFu); }

  int intern(const std::string& name) {
    const auto [it, inserted] =
        symbol_ids_.emplace(name, static_cast<int>(names_.size()));
    if (inserted) {
      names_.push_back(name);
      symbol_counts_.push_back(0);
    }
    return it->second;
  }

  void count_all() {
    struct Partial {
      std::unordered_map<PairKey, std::uint64_t> pairs;
      std::vector<std::pair<PairKey, std::uint32_t>> where;
      std::vector<std::uint64_t> symbols;
    };
    std::vector<Partial> partials(block_count(units_.size()));
    for_each_block(units_.size(), cfg_.workers,
                   [&](std::size_t b, std::size_t begin, std::size_t end) {
                     Partial& p = partials[b];
                     p.symbols.assign(names_.size(), 0);
                     for (std::size_t u = begin; u < end; ++u) {
                       const Unit& unit = units_[u];
                       for (std::size_t i = 0; i < unit.symbols.size(); ++i) {
                         p.symbols[static_cast<std::size_t>(unit.symbols[i])] +=
                             unit.weight;
                         if (i + 1 < unit.symbols.size()) {
                           const PairKey k =
                               key(unit.symbols[i], unit.symbols[i + 1]);
                           p.pairs[k] += unit.weight;
                           p.where.emplace_back(k,
                                                static_cast<std::uint32_t>(u));
                         }
                       }
                     }
                   });
    for (const auto& p : partials) {
      for (const auto& [k, c] : p.pairs) pair_counts_[k] += c;
      for (const auto& [k, u] : p.where) where_[k].push_back(u);
      for (std::size_t s = 0; s < p.symbols.size(); ++s) {
        symbol_counts_[s] += p.symbols[s];
      }
    }
  }

  // Highest count(ab) / (count(a) * count(b)); ties go to the higher pair
  // count, then to the lexicographically larger (left, right) pair.
  std::optional<PairKey> select_pair() const {
    std::optional<PairKey> best;
    std::uint64_t best_count = 0;
    unsigned __int128 best_denom = 1;
    for (const auto& [k, c] : pair_counts_) {
      if (c < cfg_.min_pair_frequency || c == 0) continue;
      const unsigned __int128 denom =
          static_cast<unsigned __int128>(
              symbol_counts_[static_cast<std::size_t>(left(k))]) *
          symbol_counts_[static_cast<std::size_t>(right(k))];
      if (!best) {
        best = k;
        best_count = c;
        best_denom = denom;
        continue;
      }
      const unsigned __int128 lhs = static_cast<unsigned __int128>(c) *
                                    best_denom;
      const unsigned __int128 rhs =
          static_cast<unsigned __int128>(best_count) * denom;
      bool better = lhs > rhs;
      if (lhs == rhs) {
        if (c != best_count) {
          better = c > best_count;
        } else {
          const auto& a = names_[static_cast<std::size_t>(left(k))];
          const auto& b = names_[static_cast<std::size_t>(right(k))];
          const auto& ba = names_[static_cast<std::size_t>(left(*best))];
          const auto& bb = names_[static_cast<std::size_t>(right(*best))];
          better = std::tie(a, b) > std::tie(ba, bb);
        }
      }
      if (better) {
        best = k;
        best_count = c;
        best_denom = denom;
      }
    }
    return best;
  }

  void add_unit(std::uint32_t u, std::int64_t sign) {
    const Unit& unit = units_[u];
    const std::uint64_t w = unit.weight;
    for (std::size_t i = 0; i < unit.symbols.size(); ++i) {
      auto& sc = symbol_counts_[static_cast<std::size_t>(unit.symbols[i])];
      sc = sign > 0 ? sc + w : sc - w;
      if (i + 1 < unit.symbols.size()) {
        const PairKey k = key(unit.symbols[i], unit.symbols[i + 1]);
        if (sign > 0) {
          pair_counts_[k] += w;
          where_[k].push_back(u);
        } else {
          auto it = pair_counts_.find(k);
          it->second -= w;
          if (it->second == 0) pair_counts_.erase(it);
        }
      }
    }
  }

  void apply_merge(PairKey k) {
    const int a = left(k);
    const int b = right(k);
    std::string merged = names_[static_cast<std::size_t>(a)];
    const auto& rhs = names_[static_cast<std::size_t>(b)];
    merged += text::starts_with(rhs, kContinuationPrefix)
                  ? rhs.substr(kContinuationPrefix.size())
                  : rhs;
    const int m = intern(merged);

    auto touched = std::move(where_[k]);
    where_.erase(k);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (const std::uint32_t u : touched) {
      auto& syms = units_[u].symbols;
      bool present = false;
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) {
        if (syms[i] == a && syms[i + 1] == b) {
          present = true;
          break;
        }
      }
      if (!present) continue;
      add_unit(u, -1);
      std::vector<int> next;
      next.reserve(syms.size());
      for (std::size_t i = 0; i < syms.size(); ++i) {
        if (i + 1 < syms.size() && syms[i] == a && syms[i + 1] == b) {
          next.push_back(m);
          ++i;
        } else {
          next.push_back(syms[i]);
        }
      }
      syms = std::move(next);
      add_unit(u, +1);
    }
    vocab_.add(merged);
  }

  const WpTrainerConfig& cfg_;
  std::vector<Unit> units_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> symbol_ids_;
  std::vector<std::uint64_t> symbol_counts_;
  std::unordered_map<PairKey, std::uint64_t> pair_counts_;
  std::unordered_map<PairKey, std::vector<std::uint32_t>> where_;
  WpVocabulary vocab_;
};

}  // namespace detail

inline WpVocabulary wp_train(const WordCounts& words,
                             const WpTrainerConfig& cfg) {
  if (words.empty()) throw InputError("cannot train on an empty corpus");
  return detail::WpMerger(words, cfg).train();
}

inline WpVocabulary wp_train(const Corpus& corpus, const WpTrainerConfig& cfg) {
  return wp_train(count_words(corpus, cfg.morph_delimiter), cfg);
}

inline WpVocabulary wp_train(const PresegmentedCorpus& corpus,
                             const WpTrainerConfig& cfg) {
  return wp_train(count_words(corpus), cfg);
}

}  // namespace morphtok

#endif  // MORPHTOK_WORDPIECE_HPP_
