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

// Segmentation quality metrics against gold morpheme segmentations.
//
// Predicted pieces are normalized before comparison: the "##" continuation
// prefix, the unigram word marker and morpheme delimiters are removed, and
// pieces left empty are dropped. Boundaries are code point offsets after
// which a split occurs, excluding the word end.

#ifndef MORPHTOK_EVAL_HPP_
#define MORPHTOK_EVAL_HPP_

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "morphtok/corpus_io.hpp"
#include "morphtok/text.hpp"

namespace morphtok {

using Segmentation = std::vector<std::string>;

inline std::string strip_markers(std::string_view piece,
                                 char delimiter = kDefaultDelimiter) {
  if (text::starts_with(piece, kContinuationPrefix)) {
    piece.remove_prefix(kContinuationPrefix.size());
  }
  if (text::starts_with(piece, kWordMarker)) {
    piece.remove_prefix(kWordMarker.size());
  }
  std::string out;
  out.reserve(piece.size());
  for (const char c : piece) {
    if (c != delimiter) out += c;
  }
  return out;
}

inline Segmentation normalize_segmentation(const Segmentation& pieces,
                                           char delimiter = kDefaultDelimiter) {
  Segmentation out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) {
    auto s = strip_markers(p, delimiter);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

// Internal split positions of an already normalized segmentation.
inline std::vector<std::size_t> boundaries(const Segmentation& normalized) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < normalized.size(); ++i) {
    pos += text::char_length(normalized[i]);
    out.push_back(pos);
  }
  return out;
}

namespace detail {

inline void check_same_word(const Segmentation& pred,
                            const Segmentation& gold) {
  if (text::concat(pred) != text::concat(gold)) {
    throw InputError("segmentations spell different words: '" +
                     text::concat(pred) + "' vs '" + text::concat(gold) + "'");
  }
}

}  // namespace detail

inline int exact_match(const Segmentation& pred, const Segmentation& gold) {
  const auto p = normalize_segmentation(pred);
  const auto g = normalize_segmentation(gold);
  detail::check_same_word(p, g);
  return p == g ? 1 : 0;
}

// Pooled boundary counts; precision/recall/F1 derive from these so that
// per-word and corpus-level scores follow one convention.
struct BoundaryCounts {
  std::uint64_t matched = 0;
  std::uint64_t predicted = 0;
  std::uint64_t gold = 0;

  BoundaryCounts& operator+=(const BoundaryCounts& o) {
    matched += o.matched;
    predicted += o.predicted;
    gold += o.gold;
    return *this;
  }
};

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// With nothing predicted, precision is 1 if there was nothing to find and 0
// otherwise; recall mirrors this when the gold side is empty.
inline Prf prf_from_counts(const BoundaryCounts& c) {
  Prf r;
  if (c.predicted == 0) {
    r.precision = c.gold == 0 ? 1.0 : 0.0;
  } else {
    r.precision =
        static_cast<double>(c.matched) / static_cast<double>(c.predicted);
  }
  if (c.gold == 0) {
    r.recall = c.predicted == 0 ? 1.0 : 0.0;
  } else {
    r.recall = static_cast<double>(c.matched) / static_cast<double>(c.gold);
  }
  r.f1 = r.precision + r.recall == 0.0
             ? 0.0
             : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

inline BoundaryCounts boundary_counts(const Segmentation& pred,
                                      const Segmentation& gold) {
  const auto p = normalize_segmentation(pred);
  const auto g = normalize_segmentation(gold);
  detail::check_same_word(p, g);
  const auto pb = boundaries(p);
  const auto gb = boundaries(g);
  BoundaryCounts c;
  c.predicted = pb.size();
  c.gold = gb.size();
  for (const auto b : pb) {
    if (std::binary_search(gb.begin(), gb.end(), b)) ++c.matched;
  }
  return c;
}

inline Prf boundary_prf(const Segmentation& pred, const Segmentation& gold) {
  return prf_from_counts(boundary_counts(pred, gold));
}

// Multiset overlap of normalized pieces, counted like boundary matches.
inline BoundaryCounts piece_overlap_counts(const Segmentation& pred,
                                           const Segmentation& gold) {
  const auto p = normalize_segmentation(pred);
  const auto g = normalize_segmentation(gold);
  detail::check_same_word(p, g);
  std::map<std::string, std::uint64_t> bag;
  for (const auto& s : g) ++bag[s];
  BoundaryCounts c;
  c.predicted = p.size();
  c.gold = g.size();
  for (const auto& s : p) {
    auto it = bag.find(s);
    if (it != bag.end() && it->second > 0) {
      --it->second;
      ++c.matched;
    }
  }
  return c;
}

// Pieces per word. Pieces are counted after normalization, so a bare word
// marker does not count as a piece.
inline double fertility(std::span<const Segmentation> segmentations) {
  if (segmentations.empty()) {
    throw InputError("fertility of an empty segmentation list");
  }
  std::uint64_t pieces = 0;
  for (const auto& s : segmentations) {
    pieces += normalize_segmentation(s).size();
  }
  return static_cast<double>(pieces) /
         static_cast<double>(segmentations.size());
}

// 1 if the prediction splits at `gold_boundary`, 0 if it splits elsewhere,
// and no score for an unsegmented prediction.
inline std::optional<int> morphscore(const Segmentation& pred,
                                     std::size_t gold_boundary) {
  const auto p = normalize_segmentation(pred);
  const std::size_t len = text::char_length(text::concat(p));
  if (gold_boundary == 0 || gold_boundary >= len) {
    throw InputError("morphscore boundary " + std::to_string(gold_boundary) +
                     " is not inside a word of length " + std::to_string(len));
  }
  const auto pb = boundaries(p);
  if (pb.empty()) return std::nullopt;
  return std::binary_search(pb.begin(), pb.end(), gold_boundary) ? 1 : 0;
}

enum class EvalMode { Acontextual, Contextual };

inline std::string_view to_string(EvalMode m) {
  return m == EvalMode::Acontextual ? "acontextual" : "contextual";
}

inline EvalMode parse_eval_mode(std::string_view s) {
  if (s == "acontextual") return EvalMode::Acontextual;
  if (s == "contextual") return EvalMode::Contextual;
  throw InputError("unknown evaluation mode '" + std::string(s) + "'");
}

struct EvalOptions {
  EvalMode mode = EvalMode::Acontextual;
  // Score precision/recall/F1 as piece-multiset overlap instead of boundary
  // overlap.
  bool piece_overlap = false;
};

struct EvalReport {
  double exact_match = 0.0;
  double boundary_precision = 0.0;
  double boundary_recall = 0.0;
  double boundary_f1 = 0.0;
  double fertility = 0.0;
  std::optional<double> morphscore;
  std::size_t morphscore_words = 0;
  std::size_t n_words = 0;
  std::size_t unknown_words = 0;
  double gold_fertility = 0.0;
  bool piece_overlap = false;
};

// Scores `segmenter` on every gold item. The segmenter is called as
// segmenter(word, optional<UdPos>) and gets the item's tag only in contextual
// mode. Exact match is averaged over items; precision/recall/F1 pool counts
// over all items; MorphScore targets the boundary after each item's first
// morpheme and skips single-morpheme items.
template <typename Segmenter>
EvalReport evaluate(Segmenter&& segmenter, const GoldSegmentationSet& gold,
                    const EvalOptions& opts = {}) {
  if (gold.items.empty()) throw InputError("empty gold set");
  EvalReport r;
  r.piece_overlap = opts.piece_overlap;
  BoundaryCounts pooled;
  std::uint64_t matches = 0;
  std::uint64_t pred_pieces = 0;
  std::uint64_t gold_pieces = 0;
  std::uint64_t ms_hits = 0;
  for (const auto& item : gold.items) {
    std::optional<UdPos> pos;
    if (opts.mode == EvalMode::Contextual) {
      if (!item.pos) {
        throw InputError("contextual evaluation needs a POS tag for '" +
                         item.word + "'");
      }
      pos = item.pos;
    }
    Segmentation pred = segmenter(item.word, pos);
    if (pred.size() == 1 && pred.front() == kUnknownPiece) {
      ++r.unknown_words;
      pred = {item.word};
    }
    const auto norm = normalize_segmentation(pred);
    matches += static_cast<std::uint64_t>(exact_match(norm, item.morphemes));
    pooled += opts.piece_overlap ? piece_overlap_counts(norm, item.morphemes)
                                 : boundary_counts(norm, item.morphemes);
    pred_pieces += norm.size();
    gold_pieces += item.morphemes.size();
    if (item.morphemes.size() > 1) {
      const auto score =
          morphscore(norm, text::char_length(item.morphemes.front()));
      if (score) {
        ++r.morphscore_words;
        ms_hits += static_cast<std::uint64_t>(*score);
      }
    }
  }
  const auto n = static_cast<double>(gold.items.size());
  r.n_words = gold.items.size();
  r.exact_match = static_cast<double>(matches) / n;
  const Prf prf = prf_from_counts(pooled);
  r.boundary_precision = prf.precision;
  r.boundary_recall = prf.recall;
  r.boundary_f1 = prf.f1;
  r.fertility = static_cast<double>(pred_pieces) / n;
  r.gold_fertility = static_cast<double>(gold_pieces) / n;
  if (r.morphscore_words > 0) {
    r.morphscore = static_cast<double>(ms_hits) /
                   static_cast<double>(r.morphscore_words);
  }
  return r;
}

inline void write_report_kv(std::ostream& os, std::string_view name,
                            const EvalReport& r) {
  const std::string p = name.empty() ? "" : std::string(name) + ".";
  os << p << "n_words=" << r.n_words << '\n';
  os << p << "exact_match=" << text::format_double(r.exact_match) << '\n';
  os << p << "precision=" << text::format_double(r.boundary_precision) << '\n';
  os << p << "recall=" << text::format_double(r.boundary_recall) << '\n';
  os << p << "f1=" << text::format_double(r.boundary_f1) << '\n';
  os << p << "fertility=" << text::format_double(r.fertility) << '\n';
  os << p << "gold_fertility=" << text::format_double(r.gold_fertility) << '\n';
  os << p << "morphscore="
     << (r.morphscore ? text::format_double(*r.morphscore) : "none") << '\n';
  os << p << "morphscore_words=" << r.morphscore_words << '\n';
  os << p << "unknown_words=" << r.unknown_words << '\n';
  os << p << "overlap=" << (r.piece_overlap ? "pieces" : "boundaries") << '\n';
}

// One row per tokenizer, one report per gold set (same order as the gold
// set names).
struct ComparisonRow {
  std::string name;
  std::vector<EvalReport> reports;
};

namespace detail {

inline std::string pad(std::string s, std::size_t width) {
  const std::size_t len = text::char_length(s);
  if (len < width) s.append(width - len, ' ');
  return s;
}

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline std::size_t name_width(const std::vector<ComparisonRow>& rows) {
  std::size_t w = 9;
  for (const auto& r : rows) w = std::max(w, text::char_length(r.name));
  return w + 2;
}

}  // namespace detail

// Exact match (percent) and fertility per gold set.
inline void write_comparison_table(std::ostream& os,
                                   const std::vector<std::string>& gold_names,
                                   const std::vector<ComparisonRow>& rows) {
  const std::size_t nw = detail::name_width(rows);
  std::vector<std::size_t> cw;
  for (const auto& g : gold_names) {
    cw.push_back(std::max<std::size_t>(10, text::char_length(g) + 8));
  }
  os << "# exact match: mean over gold items (percent); fertility: pieces per "
        "word\n";
  os << detail::pad("tokenizer", nw);
  for (std::size_t g = 0; g < gold_names.size(); ++g) {
    os << detail::pad(gold_names[g] + " EM", cw[g])
       << detail::pad(gold_names[g] + " Fert.", cw[g]);
  }
  os << '\n';
  for (const auto& row : rows) {
    os << detail::pad(row.name, nw);
    for (std::size_t g = 0; g < row.reports.size(); ++g) {
      const EvalReport& r = row.reports[g];
      os << detail::pad(detail::fixed(100.0 * r.exact_match, 2), cw.at(g))
         << detail::pad(detail::fixed(r.fertility, 4), cw.at(g));
    }
    os << '\n';
  }
  if (!rows.empty()) {
    os << detail::pad("gold", nw);
    for (std::size_t g = 0; g < rows.front().reports.size(); ++g) {
      os << detail::pad("", cw.at(g))
         << detail::pad(detail::fixed(rows.front().reports[g].gold_fertility, 4),
                        cw.at(g));
    }
    os << '\n';
  }
}

// Full metric set per gold set: EM, recall, precision, F1, fertility and
// MorphScore.
inline void write_extended_table(std::ostream& os,
                                 const std::vector<std::string>& gold_names,
                                 const std::vector<ComparisonRow>& rows) {
  const std::size_t nw = detail::name_width(rows);
  const bool overlap = !rows.empty() && !rows.front().reports.empty() &&
                       rows.front().reports.front().piece_overlap;
  os << "# exact match: mean over gold items; recall/precision/f1: "
     << (overlap ? "piece multiset overlap" : "boundary overlap")
     << ", pooled over items\n";
  for (std::size_t g = 0; g < gold_names.size(); ++g) {
    os << "## " << gold_names[g] << '\n';
    os << detail::pad("tokenizer", nw) << detail::pad("EM", 9)
       << detail::pad("Recall", 9) << detail::pad("Prec.", 9)
       << detail::pad("F1", 9) << detail::pad("Fert.", 9) << "MorphScore\n";
    for (const auto& row : rows) {
      const EvalReport& r = row.reports.at(g);
      os << detail::pad(row.name, nw)
         << detail::pad(detail::fixed(r.exact_match, 4), 9)
         << detail::pad(detail::fixed(r.boundary_recall, 4), 9)
         << detail::pad(detail::fixed(r.boundary_precision, 4), 9)
         << detail::pad(detail::fixed(r.boundary_f1, 4), 9)
         << detail::pad(detail::fixed(r.fertility, 4), 9)
         << (r.morphscore ? detail::fixed(*r.morphscore, 4) : "-") << '\n';
    }
  }
}

}  // namespace morphtok

#endif  // MORPHTOK_EVAL_HPP_
