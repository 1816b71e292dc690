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

// Unigram language model tokenizer.
//
// A word is decoded as one or more segments: the first morpheme prefixed with
// the word marker, then each further morpheme of a presegmented word on its
// own. Pieces never cross a segment boundary, and because the marker is an
// ordinary character of the first segment, word-initial pieces ("▁can")
// and continuation pieces ("o") are distinct entries.
//
// Training seeds a large substring inventory, fits it with EM
// (forward-backward expected counts), and prunes the entries whose removal
// costs the least corpus likelihood until the target size is reached.

#ifndef MORPHTOK_ULM_HPP_
#define MORPHTOK_ULM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
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

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct UlmPiece {
  std::string piece;
  double logprob = 0.0;
  bool is_protected = false;

  bool operator==(const UlmPiece&) const = default;
};

// Segment string -> token frequency, sorted by segment.
using SegmentCounts = std::vector<std::pair<std::string, std::uint64_t>>;

inline SegmentCounts to_segments(const WordCounts& words,
                                 std::string_view word_marker) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& w : words) {
    for (std::size_t m = 0; m < w.morphemes.size(); ++m) {
      if (m == 0) {
        counts[std::string(word_marker) + w.morphemes[m]] += w.count;
      } else if (!w.morphemes[m].empty()) {
        counts[w.morphemes[m]] += w.count;
      }
    }
  }
  return {counts.begin(), counts.end()};
}

class UlmVocabulary {
 public:
  UlmVocabulary() = default;

  UlmVocabulary(std::vector<UlmPiece> pieces,
                std::string word_marker = std::string(kWordMarker),
                double boost = 0.0)
      : pieces_(std::move(pieces)),
        word_marker_(std::move(word_marker)),
        boost_(boost) {
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
      if (!index_.emplace(pieces_[i].piece, static_cast<int>(i)).second) {
        throw InputError("duplicate unigram piece '" + pieces_[i].piece + "'");
      }
      trie_.insert(pieces_[i].piece, static_cast<int>(i));
    }
  }

  const std::vector<UlmPiece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  const std::string& word_marker() const { return word_marker_; }
  double boost() const { return boost_; }
  void set_boost(double boost) { boost_ = boost; }

  std::optional<std::size_t> find(std::string_view piece) const {
    const auto it = index_.find(std::string(piece));
    if (it == index_.end()) return std::nullopt;
    return static_cast<std::size_t>(it->second);
  }

  bool contains(std::string_view piece) const {
    return find(piece).has_value();
  }

  // Lattice edge weight: log-probability, plus the boost on protected pieces.
  double weight(std::size_t id, double boost) const {
    const UlmPiece& p = pieces_[id];
    return p.is_protected ? p.logprob + boost : p.logprob;
  }

  // Calls fn(end, id) for every finite-weight piece matching s at `begin`.
  template <typename Fn>
  void for_each_edge(std::string_view s, std::size_t begin, Fn&& fn) const {
    trie_.for_each_match(s, begin, [&](std::size_t end, int id) {
      if (pieces_[static_cast<std::size_t>(id)].logprob != kNegInf) {
        fn(end, static_cast<std::size_t>(id));
      }
    });
  }

  // Maximum-weight tiling of one segment. Ties prefer fewer pieces, then the
  // lexicographically smallest piece sequence. `excluded` removes one piece
  // from the lattice. Empty optional when no tiling exists.
  std::optional<std::vector<std::size_t>> viterbi(
      std::string_view segment, double boost,
      std::optional<std::size_t> excluded = std::nullopt) const {
    struct Node {
      double score = kNegInf;
      std::size_t count = 0;
      std::size_t from = 0;
      std::size_t piece = 0;
      bool reached = false;
    };
    std::vector<Node> best(segment.size() + 1);
    best[0].score = 0.0;
    best[0].reached = true;
    const auto path = [&](std::size_t end) {
      std::vector<std::size_t> ids;
      for (std::size_t at = end; at != 0; at = best[at].from) {
        ids.push_back(best[at].piece);
      }
      std::reverse(ids.begin(), ids.end());
      return ids;
    };
    const auto lex_less = [&](const std::vector<std::size_t>& a,
                              const std::vector<std::size_t>& b) {
      return std::lexicographical_compare(
          a.begin(), a.end(), b.begin(), b.end(),
          [&](std::size_t x, std::size_t y) {
            return pieces_[x].piece < pieces_[y].piece;
          });
    };
    for (std::size_t i = 0; i < segment.size(); ++i) {
      if (!best[i].reached) continue;
      for_each_edge(segment, i, [&](std::size_t end, std::size_t id) {
        if (excluded && *excluded == id) return;
        const double score = best[i].score + weight(id, boost);
        const std::size_t count = best[i].count + 1;
        Node& dst = best[end];
        bool better = !dst.reached || score > dst.score;
        if (dst.reached && score == dst.score) {
          if (count != dst.count) {
            better = count < dst.count;
          } else {
            auto challenger = path(i);
            challenger.push_back(id);
            better = lex_less(challenger, path(end));
          }
        }
        if (better) dst = {score, count, i, id, true};
      });
    }
    if (!best[segment.size()].reached) return std::nullopt;
    return path(segment.size());
  }

  Segmentation encode(std::string_view word) const {
    return encode_morphemes({std::string(word)});
  }

  // Decodes each morpheme as its own lattice; the first carries the word
  // marker. Any unreachable segment makes the whole word unknown.
  Segmentation encode_morphemes(
      const std::vector<std::string>& morphemes) const {
    Segmentation out;
    for (std::size_t m = 0; m < morphemes.size(); ++m) {
      const std::string segment =
          m == 0 ? word_marker_ + morphemes[m] : morphemes[m];
      if (segment.empty()) continue;
      const auto ids = viterbi(segment, boost_);
      if (!ids) return {std::string(kUnknownPiece)};
      for (const auto id : *ids) out.push_back(pieces_[id].piece);
    }
    return out;
  }

 private:
  std::vector<UlmPiece> pieces_;
  std::string word_marker_ = std::string(kWordMarker);
  double boost_ = 0.0;
  std::unordered_map<std::string, int> index_;
  PieceTrie trie_;
};

inline Segmentation ulm_encode(std::string_view word,
                               const UlmVocabulary& vocab) {
  return vocab.encode(word);
}

namespace detail {

inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

// Forward-backward over one segment. Adds freq * posterior to `counts` (as
// sparse (id, value) pairs) and returns log Z, or -inf if unreachable.
inline double accumulate_marginals(
    const UlmVocabulary& vocab, std::string_view segment, double freq,
    std::unordered_map<std::size_t, double>* counts) {
  const std::size_t n = segment.size();
  struct Edge {
    std::size_t begin, end, id;
    double w;
  };
  std::vector<Edge> edges;
  std::vector<double> alpha(n + 1, kNegInf);
  alpha[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (alpha[i] == kNegInf) continue;
    vocab.for_each_edge(segment, i, [&](std::size_t end, std::size_t id) {
      const double w = vocab.pieces()[id].logprob;
      edges.push_back({i, end, id, w});
      alpha[end] = log_add(alpha[end], alpha[i] + w);
    });
  }
  const double log_z = alpha[n];
  if (log_z == kNegInf || counts == nullptr) return log_z;
  std::vector<double> beta(n + 1, kNegInf);
  beta[n] = 0.0;
  // Edges were collected in increasing begin order; walk them backwards.
  for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
    beta[it->begin] = log_add(beta[it->begin], it->w + beta[it->end]);
  }
  for (const Edge& e : edges) {
    const double lp = alpha[e.begin] + e.w + beta[e.end] - log_z;
    if (lp == kNegInf) continue;
    (*counts)[e.id] += freq * std::exp(lp);
  }
  return log_z;
}

}  // namespace detail

struct MarginalCounts {
  // Expected piece counts, indexed like UlmVocabulary::pieces().
  std::vector<double> counts;
  // Sum over segments of freq * log Z; unreachable segments are excluded.
  double log_likelihood = 0.0;
  // Token frequency of segments with no tiling (would decode to the unknown
  // piece).
  std::uint64_t unknown = 0;
};

// Expected piece counts under the current (unboosted) model. Per-block
// partial sums are reduced in block order, so results do not depend on the
// worker count.
inline MarginalCounts ulm_marginal_counts(const SegmentCounts& segments,
                                          const UlmVocabulary& vocab,
                                          unsigned workers = 1) {
  struct Partial {
    std::vector<std::pair<std::size_t, double>> counts;
    double log_likelihood = 0.0;
    std::uint64_t unknown = 0;
  };
  std::vector<Partial> partials(block_count(segments.size()));
  for_each_block(segments.size(), workers,
                 [&](std::size_t b, std::size_t begin, std::size_t end) {
                   std::unordered_map<std::size_t, double> local;
                   Partial& p = partials[b];
                   for (std::size_t s = begin; s < end; ++s) {
                     const auto& [segment, freq] = segments[s];
                     const double log_z = detail::accumulate_marginals(
                         vocab, segment, static_cast<double>(freq), &local);
                     if (log_z == kNegInf) {
                       p.unknown += freq;
                     } else {
                       p.log_likelihood += static_cast<double>(freq) * log_z;
                     }
                   }
                   p.counts.assign(local.begin(), local.end());
                   std::sort(p.counts.begin(), p.counts.end());
                 });
  MarginalCounts out;
  out.counts.assign(vocab.size(), 0.0);
  for (const auto& p : partials) {
    for (const auto& [id, c] : p.counts) out.counts[id] += c;
    out.log_likelihood += p.log_likelihood;
    out.unknown += p.unknown;
  }
  return out;
}

inline MarginalCounts ulm_marginal_counts(const WordCounts& words,
                                          const UlmVocabulary& vocab,
                                          unsigned workers = 1) {
  return ulm_marginal_counts(to_segments(words, vocab.word_marker()), vocab,
                             workers);
}

inline double ulm_log_likelihood(const SegmentCounts& segments,
                                 const UlmVocabulary& vocab,
                                 unsigned workers = 1) {
  std::vector<double> partials(block_count(segments.size()), 0.0);
  for_each_block(segments.size(), workers,
                 [&](std::size_t b, std::size_t begin, std::size_t end) {
                   for (std::size_t s = begin; s < end; ++s) {
                     const double log_z = detail::accumulate_marginals(
                         vocab, segments[s].first,
                         static_cast<double>(segments[s].second), nullptr);
                     if (log_z != kNegInf) {
                       partials[b] +=
                           static_cast<double>(segments[s].second) * log_z;
                     }
                   }
                 });
  double total = 0.0;
  for (const double p : partials) total += p;
  return total;
}

// Renormalizes log-probabilities in place so that they sum to one.
inline void normalize_logprobs(std::vector<UlmPiece>& pieces) {
  double log_sum = kNegInf;
  for (const auto& p : pieces) log_sum = detail::log_add(log_sum, p.logprob);
  if (log_sum == kNegInf) return;
  for (auto& p : pieces) {
    if (p.logprob != kNegInf) p.logprob -= log_sum;
  }
}

// One EM step: E = expected counts, M = renormalized counts. Pieces with zero
// expected count get probability zero. Returns the log-likelihood of the
// model passed in (before the update).
inline double ulm_em_step(const SegmentCounts& segments, UlmVocabulary& vocab,
                          unsigned workers = 1) {
  const MarginalCounts mc = ulm_marginal_counts(segments, vocab, workers);
  double total = 0.0;
  for (const double c : mc.counts) total += c;
  std::vector<UlmPiece> next = vocab.pieces();
  if (total > 0.0) {
    const double log_total = std::log(total);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i].logprob =
          mc.counts[i] > 0.0 ? std::log(mc.counts[i]) - log_total : kNegInf;
    }
  }
  vocab = UlmVocabulary(std::move(next), vocab.word_marker(), vocab.boost());
  return mc.log_likelihood;
}

struct UlmTrainerConfig {
  std::size_t vocab_size = 30000;
  double shrinking_factor = 0.75;
  std::size_t seed_size = 1000000;
  std::size_t max_piece_length = 16;
  std::size_t em_iterations_per_round = 2;
  std::optional<SuffixList> seeding;
  // Decode-time boost given to seeded suffixes.
  double seed_weight = 0.5;
  std::optional<char> morph_delimiter;
  std::string word_marker = std::string(kWordMarker);
  // Recompute each candidate's utility with a full likelihood pass instead of
  // the Viterbi-count approximation. Quadratic; small corpora only.
  bool exact_pruning = false;
  unsigned workers = 1;
};

struct UlmRound {
  std::size_t size_before_prune = 0;
  double log_likelihood = 0.0;
  std::size_t pruned = 0;
};

struct UlmTrainingTrace {
  std::size_t seed_size = 0;
  std::vector<UlmRound> rounds;
};

namespace detail {

class UlmTrainer {
 public:
  UlmTrainer(const WordCounts& words, const UlmTrainerConfig& cfg)
      : cfg_(cfg), segments_(to_segments(words, cfg.word_marker)) {
    if (!(cfg.shrinking_factor > 0.0 && cfg.shrinking_factor < 1.0)) {
      throw InputError("shrinking_factor must lie in (0, 1)");
    }
    if (cfg.max_piece_length == 0) {
      throw InputError("max_piece_length must be positive");
    }
  }

  UlmVocabulary train(UlmTrainingTrace* trace) {
    UlmVocabulary vocab = seed_vocabulary();
    if (trace) trace->seed_size = vocab.size();
    for (;;) {
      double ll = 0.0;
      for (std::size_t it = 0; it < cfg_.em_iterations_per_round; ++it) {
        ulm_em_step(segments_, vocab, cfg_.workers);
      }
      if (trace) ll = ulm_log_likelihood(segments_, vocab, cfg_.workers);
      if (vocab.size() <= cfg_.vocab_size) {
        if (trace) trace->rounds.push_back({vocab.size(), ll, 0});
        break;
      }
      const std::size_t before = vocab.size();
      vocab = prune(vocab);
      if (trace) trace->rounds.push_back({before, ll, before - vocab.size()});
    }
    return finalize(vocab);
  }

 private:
  bool required(const std::string& piece) const {
    return text::char_length(piece) == 1 || protected_.count(piece) != 0;
  }

  UlmVocabulary seed_vocabulary() {
    std::unordered_map<std::string, std::uint64_t> freq;
    for (const auto& [segment, count] : segments_) {
      const auto offsets = text::char_offsets(segment);
      const std::size_t n = offsets.size() - 1;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t len = 1; len <= cfg_.max_piece_length && i + len <= n;
             ++len) {
          freq[segment.substr(offsets[i], offsets[i + len] - offsets[i])] +=
              count;
        }
      }
    }
    if (cfg_.seeding) {
      for (const auto& s : cfg_.seeding->suffixes) {
        protected_.insert(s);
        freq.try_emplace(s, 1);
        for (const auto& c : text::chars(s)) freq.try_emplace(c, 1);
      }
    }
    for (const auto& c : text::chars(cfg_.word_marker)) freq.try_emplace(c, 1);

    std::vector<std::pair<std::string, double>> must;
    std::vector<std::pair<std::string, double>> optional;
    for (const auto& [piece, f] : freq) {
      const double score =
          static_cast<double>(f) * static_cast<double>(text::char_length(piece));
      (required(piece) ? must : optional).emplace_back(piece, score);
    }
    if (cfg_.vocab_size < must.size()) {
      throw InputError("vocab_size " + std::to_string(cfg_.vocab_size) +
                       " is below the number of characters plus protected "
                       "suffixes (" +
                       std::to_string(must.size()) + ")");
    }
    std::sort(optional.begin(), optional.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    const std::size_t room =
        cfg_.seed_size > must.size() ? cfg_.seed_size - must.size() : 0;
    if (optional.size() > room) optional.resize(room);

    std::vector<UlmPiece> pieces;
    pieces.reserve(must.size() + optional.size());
    double total = 0.0;
    for (auto* list : {&must, &optional}) {
      for (const auto& [piece, score] : *list) total += score;
    }
    for (auto* list : {&must, &optional}) {
      for (const auto& [piece, score] : *list) {
        pieces.push_back({piece, std::log(score / total),
                          protected_.count(piece) != 0});
      }
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const UlmPiece& a, const UlmPiece& b) {
                return a.piece < b.piece;
              });
    return UlmVocabulary(std::move(pieces), cfg_.word_marker, 0.0);
  }

  // Likelihood loss of removing `id`, approximated by moving its Viterbi
  // usages onto its own best alternative tiling.
  static double approx_utility(const UlmVocabulary& vocab, std::size_t id,
                               const std::vector<double>& vfreq,
                               double total) {
    const double vi = vfreq[id];
    if (vi == 0.0) return 0.0;
    const auto alt = vocab.viterbi(vocab.pieces()[id].piece, 0.0, id);
    if (!alt) return std::numeric_limits<double>::infinity();
    std::map<std::size_t, double> mult;
    for (const auto a : *alt) mult[a] += 1.0;
    const double new_total =
        total + vi * (static_cast<double>(alt->size()) - 1.0);
    const auto term = [](double v, double t) {
      return v > 0.0 ? v * std::log(v / t) : 0.0;
    };
    double before = term(vi, total);
    double after = 0.0;
    double rest = total - vi;
    for (const auto& [a, m] : mult) {
      before += term(vfreq[a], total);
      after += term(vfreq[a] + vi * m, new_total);
      rest -= vfreq[a];
    }
    return before - after + rest * std::log(new_total / total);
  }

  double exact_utility(const UlmVocabulary& vocab, std::size_t id,
                       double current_ll) const {
    std::vector<UlmPiece> without;
    without.reserve(vocab.size() - 1);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      if (i != id) without.push_back(vocab.pieces()[i]);
    }
    normalize_logprobs(without);
    const UlmVocabulary reduced(std::move(without), vocab.word_marker(), 0.0);
    return current_ll - ulm_log_likelihood(segments_, reduced, 1);
  }

  UlmVocabulary prune(const UlmVocabulary& vocab) const {
    std::vector<std::size_t> prunable;
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      if (!required(vocab.pieces()[i].piece)) prunable.push_back(i);
    }
    std::vector<double> utility(vocab.size(), 0.0);
    if (cfg_.exact_pruning) {
      const double ll = ulm_log_likelihood(segments_, vocab, cfg_.workers);
      for_each_block(prunable.size(), cfg_.workers,
                     [&](std::size_t, std::size_t begin, std::size_t end) {
                       for (std::size_t k = begin; k < end; ++k) {
                         utility[prunable[k]] =
                             exact_utility(vocab, prunable[k], ll);
                       }
                     });
    } else {
      std::vector<double> vfreq(vocab.size(), 0.0);
      double total = 0.0;
      for (const auto& [segment, count] : segments_) {
        const auto ids = vocab.viterbi(segment, 0.0);
        if (!ids) continue;
        for (const auto id : *ids) vfreq[id] += static_cast<double>(count);
        total += static_cast<double>(count * ids->size());
      }
      for_each_block(prunable.size(), cfg_.workers,
                     [&](std::size_t, std::size_t begin, std::size_t end) {
                       for (std::size_t k = begin; k < end; ++k) {
                         utility[prunable[k]] =
                             approx_utility(vocab, prunable[k], vfreq, total);
                       }
                     });
    }
    std::sort(prunable.begin(), prunable.end(),
              [&](std::size_t a, std::size_t b) {
                if (utility[a] != utility[b]) return utility[a] < utility[b];
                return vocab.pieces()[a].piece < vocab.pieces()[b].piece;
              });
    const auto by_factor = static_cast<std::size_t>(std::ceil(
        (1.0 - cfg_.shrinking_factor) * static_cast<double>(prunable.size())));
    const std::size_t remove = std::min(
        {std::max<std::size_t>(by_factor, 1), prunable.size(),
         vocab.size() - cfg_.vocab_size});
    std::vector<bool> drop(vocab.size(), false);
    for (std::size_t k = 0; k < remove; ++k) drop[prunable[k]] = true;
    std::vector<UlmPiece> kept;
    kept.reserve(vocab.size() - remove);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      if (!drop[i]) kept.push_back(vocab.pieces()[i]);
    }
    normalize_logprobs(kept);
    return UlmVocabulary(std::move(kept), vocab.word_marker(), 0.0);
  }

  // Drops dead optional pieces, gives dead required pieces a floor
  // probability below every live piece, and renormalizes.
  UlmVocabulary finalize(const UlmVocabulary& vocab) const {
    double min_live = 0.0;
    for (const auto& p : vocab.pieces()) {
      if (p.logprob != kNegInf) min_live = std::min(min_live, p.logprob);
    }
    std::vector<UlmPiece> pieces;
    for (const auto& p : vocab.pieces()) {
      if (p.logprob != kNegInf) {
        pieces.push_back(p);
      } else if (required(p.piece)) {
        pieces.push_back({p.piece, min_live - 1.0, p.is_protected});
      }
    }
    normalize_logprobs(pieces);
    std::sort(pieces.begin(), pieces.end(),
              [](const UlmPiece& a, const UlmPiece& b) {
                if (a.logprob != b.logprob) return a.logprob > b.logprob;
                return a.piece < b.piece;
              });
    return UlmVocabulary(std::move(pieces), cfg_.word_marker,
                         cfg_.seeding ? cfg_.seed_weight : 0.0);
  }

  const UlmTrainerConfig& cfg_;
  SegmentCounts segments_;
  std::unordered_set<std::string> protected_;
};

}  // namespace detail

inline UlmVocabulary ulm_train(const WordCounts& words,
                               const UlmTrainerConfig& cfg,
                               UlmTrainingTrace* trace = nullptr) {
  if (words.empty()) throw InputError("cannot train on an empty corpus");
  return detail::UlmTrainer(words, cfg).train(trace);
}

inline UlmVocabulary ulm_train(const Corpus& corpus,
                               const UlmTrainerConfig& cfg,
                               UlmTrainingTrace* trace = nullptr) {
  return ulm_train(count_words(corpus, cfg.morph_delimiter), cfg, trace);
}

inline UlmVocabulary ulm_train(const PresegmentedCorpus& corpus,
                               const UlmTrainerConfig& cfg,
                               UlmTrainingTrace* trace = nullptr) {
  return ulm_train(count_words(corpus), cfg, trace);
}

}  // namespace morphtok

#endif  // MORPHTOK_ULM_HPP_
