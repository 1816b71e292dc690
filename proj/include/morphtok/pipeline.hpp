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

// End-to-end commands behind the command line tool: presegment, train,
// encode and evaluate. Each takes a RunConfig; file loading happens here so
// the tool itself only maps flags.

#ifndef MORPHTOK_PIPELINE_HPP_
#define MORPHTOK_PIPELINE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "morphtok/corpus_io.hpp"
#include "morphtok/eval.hpp"
#include "morphtok/morph_model.hpp"
#include "morphtok/presegment.hpp"
#include "morphtok/text.hpp"
#include "morphtok/tokenizer.hpp"
#include "morphtok/ulm.hpp"
#include "morphtok/wordpiece.hpp"

namespace morphtok {

struct RunConfig {
  Algorithm algorithm = Algorithm::WordPiece;
  Guidance guidance = Guidance::Baseline;

  std::string corpus_path;
  std::string tagged_path;
  std::string lexicon_path;
  std::string suffixes_path;
  std::string pos_map_path;
  std::string output_path;

  std::size_t vocab_size = 30000;
  std::uint64_t min_pair_frequency = 2;
  double shrinking_factor = 0.75;
  double seed_weight = 0.5;
  std::size_t seed_size = 1000000;
  std::size_t max_piece_length = 16;
  std::size_t em_iterations = 2;
  bool exact_pruning = false;
  char morph_delimiter = kDefaultDelimiter;
  double sample_fraction = 1.0;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  bool lowercase = false;
};

// Checks the input combination a guidance mode needs. Returns warnings for
// inputs that will be ignored; throws InputError for missing ones.
inline std::vector<std::string> validate_training_inputs(const RunConfig& cfg) {
  std::vector<std::string> warnings;
  switch (cfg.guidance) {
    case Guidance::MorphPreTokContextual:
      if (cfg.tagged_path.empty() || cfg.lexicon_path.empty()) {
        throw InputError(
            "morphpretok-contextual needs a tagged corpus and a lexicon");
      }
      break;
    case Guidance::MorphPreTokAcontextual:
      if (cfg.lexicon_path.empty()) {
        throw InputError("morphpretok-acontextual needs a lexicon");
      }
      break;
    case Guidance::MorphSeed:
      if (cfg.suffixes_path.empty()) {
        throw InputError("morphseed needs a suffix list");
      }
      break;
    case Guidance::Baseline:
      break;
  }
  if (cfg.corpus_path.empty() && cfg.tagged_path.empty()) {
    throw InputError("no training corpus given");
  }
  if (!cfg.suffixes_path.empty() && cfg.guidance != Guidance::MorphSeed) {
    warnings.push_back("suffix list is ignored in guidance mode " +
                       std::string(to_string(cfg.guidance)));
  }
  if (!cfg.lexicon_path.empty() && !uses_presegmentation(cfg.guidance)) {
    warnings.push_back("lexicon is ignored in guidance mode " +
                       std::string(to_string(cfg.guidance)));
  }
  if (!(cfg.sample_fraction > 0.0 && cfg.sample_fraction <= 1.0)) {
    throw InputError("sample fraction must lie in (0, 1]");
  }
  text::check_delimiter(cfg.morph_delimiter);
  return warnings;
}

// Reservoir sample of round(fraction * n) sentence indices, returned in
// corpus order. Uses mt19937_64, whose output sequence is fixed by the
// standard, so a seed reproduces the sample on every platform.
inline std::vector<std::size_t> sample_sentences(std::size_t n,
                                                 double fraction,
                                                 std::uint64_t seed) {
  std::vector<std::size_t> picked;
  const auto k = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n)));
  if (k >= n) {
    picked.resize(n);
    for (std::size_t i = 0; i < n; ++i) picked[i] = i;
    return picked;
  }
  std::mt19937_64 rng(seed);
  picked.reserve(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < k) {
      picked.push_back(i);
    } else {
      const std::uint64_t j = rng() % (i + 1);
      if (j < k) picked[j] = i;
    }
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

// In-memory inputs for training. Which members must be set depends on the
// guidance mode (see validate_training_inputs).
struct TrainingData {
  std::optional<Corpus> corpus;
  std::optional<TaggedCorpus> tagged;
  const MorphLexicon* lexicon = nullptr;
  std::optional<SuffixList> suffixes;
  PosMapping mapping = PosMapping::builtin();
};

struct TrainReport {
  std::optional<PresegStats> preseg_stats;
  std::size_t training_words = 0;
  std::size_t training_sentences = 0;
  UlmTrainingTrace ulm_trace;
};

namespace detail {

template <typename Sentence>
std::vector<Sentence> take(const std::vector<Sentence>& all,
                           const std::vector<std::size_t>& idx) {
  std::vector<Sentence> out;
  out.reserve(idx.size());
  for (const auto i : idx) out.push_back(all[i]);
  return out;
}

inline Tokenizer::Config config_record(const RunConfig& cfg) {
  Tokenizer::Config c;
  c["vocab_size"] = std::to_string(cfg.vocab_size);
  c["sample_fraction"] = text::format_double(cfg.sample_fraction);
  c["seed"] = std::to_string(cfg.seed);
  c["lowercase"] = cfg.lowercase ? "1" : "0";
  if (cfg.algorithm == Algorithm::WordPiece) {
    c["min_pair_frequency"] = std::to_string(cfg.min_pair_frequency);
  } else {
    c["shrinking_factor"] = text::format_double(cfg.shrinking_factor);
    c["seed_size"] = std::to_string(cfg.seed_size);
    c["max_piece_length"] = std::to_string(cfg.max_piece_length);
    c["em_iterations"] = std::to_string(cfg.em_iterations);
    c["exact_pruning"] = cfg.exact_pruning ? "1" : "0";
    if (cfg.guidance == Guidance::MorphSeed) {
      c["seed_weight"] = text::format_double(cfg.seed_weight);
    }
  }
  return c;
}

}  // namespace detail

// Presegments (when the guidance mode asks for it) and trains.
inline Tokenizer train_tokenizer(const TrainingData& data, const RunConfig& cfg,
                                 TrainReport* report = nullptr) {
  TrainReport local;
  TrainReport& rep = report ? *report : local;
  text::check_delimiter(cfg.morph_delimiter);

  std::optional<Corpus> corpus;
  std::optional<TaggedCorpus> tagged;
  if (data.tagged) {
    tagged = data.tagged;
  }
  if (data.corpus) {
    corpus = data.corpus;
  } else if (data.tagged) {
    corpus = data.tagged->words();
  }
  if (!corpus) throw InputError("no training corpus given");
  if (cfg.guidance == Guidance::MorphPreTokContextual && !tagged) {
    throw InputError("morphpretok-contextual needs a tagged corpus");
  }
  if (uses_presegmentation(cfg.guidance) && data.lexicon == nullptr) {
    throw InputError(std::string(to_string(cfg.guidance)) +
                     " needs a lexicon");
  }
  if (cfg.guidance == Guidance::MorphSeed && !data.suffixes) {
    throw InputError("morphseed needs a suffix list");
  }

  if (cfg.sample_fraction < 1.0) {
    const std::size_t n = cfg.guidance == Guidance::MorphPreTokContextual
                              ? tagged->sentences.size()
                              : corpus->sentences.size();
    const auto idx = sample_sentences(n, cfg.sample_fraction, cfg.seed);
    if (cfg.guidance == Guidance::MorphPreTokContextual) {
      tagged->sentences = detail::take(tagged->sentences, idx);
    } else {
      corpus->sentences = detail::take(corpus->sentences, idx);
    }
  }

  const PresegOptions popts{cfg.morph_delimiter, cfg.workers};
  WordCounts words;
  switch (cfg.guidance) {
    case Guidance::MorphPreTokContextual: {
      const auto p =
          presegment_contextual(*tagged, *data.lexicon, data.mapping, popts);
      rep.preseg_stats = p.stats;
      rep.training_sentences = p.sentences.size();
      words = count_words(p);
      break;
    }
    case Guidance::MorphPreTokAcontextual: {
      const auto p = presegment_acontextual(*corpus, *data.lexicon, popts);
      rep.preseg_stats = p.stats;
      rep.training_sentences = p.sentences.size();
      words = count_words(p);
      break;
    }
    default:
      rep.training_sentences = corpus->sentences.size();
      words = count_words(*corpus);
      break;
  }
  for (const auto& w : words) rep.training_words += w.count;

  const std::optional<SuffixList> seeding =
      cfg.guidance == Guidance::MorphSeed ? data.suffixes : std::nullopt;
  const std::optional<char> delimiter =
      uses_presegmentation(cfg.guidance) ? std::optional<char>(cfg.morph_delimiter)
                                         : std::nullopt;
  if (cfg.algorithm == Algorithm::WordPiece) {
    WpTrainerConfig wc;
    wc.vocab_size = cfg.vocab_size;
    wc.min_pair_frequency = cfg.min_pair_frequency;
    wc.seeding = seeding;
    wc.morph_delimiter = delimiter;
    wc.workers = cfg.workers;
    return Tokenizer(cfg.guidance, wp_train(words, wc), cfg.morph_delimiter,
                     detail::config_record(cfg));
  }
  UlmTrainerConfig uc;
  uc.vocab_size = cfg.vocab_size;
  uc.shrinking_factor = cfg.shrinking_factor;
  uc.seed_size = cfg.seed_size;
  uc.max_piece_length = cfg.max_piece_length;
  uc.em_iterations_per_round = cfg.em_iterations;
  uc.seeding = seeding;
  uc.seed_weight = cfg.seed_weight;
  uc.morph_delimiter = delimiter;
  uc.exact_pruning = cfg.exact_pruning;
  uc.workers = cfg.workers;
  return Tokenizer(cfg.guidance, ulm_train(words, uc, &rep.ulm_trace),
                   cfg.morph_delimiter, detail::config_record(cfg));
}

namespace detail {

inline void warn(std::ostream* log, const std::string& msg) {
  if (log) *log << "warning: " << msg << '\n';
}

inline std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path);
  return os;
}

inline MorphLexicon load_lexicon_checked(const std::string& path,
                                         const LoadOptions& opts,
                                         std::ostream* log) {
  auto load = load_lexicon(path, opts);
  if (!load.rejected.empty()) {
    warn(log, path + ": rejected " + std::to_string(load.rejected.size()) +
                  " lexicon rows (first: " + load.rejected.front() + ")");
  }
  return std::move(load.lexicon);
}

inline PosMapping load_mapping(const RunConfig& cfg) {
  return cfg.pos_map_path.empty() ? PosMapping::builtin()
                                  : PosMapping::load(cfg.pos_map_path);
}

}  // namespace detail

// Writes `<output>` (the delimited corpus) plus `<output>.stats.txt` and
// `<output>.stats.kv`. Contextual mode runs when a tagged corpus is given.
inline PresegStats cmd_presegment(const RunConfig& cfg,
                                  std::ostream* log = nullptr) {
  if (cfg.lexicon_path.empty()) throw InputError("presegment needs a lexicon");
  if (cfg.output_path.empty()) throw InputError("presegment needs an output");
  const LoadOptions lo{cfg.lowercase};
  const MorphLexicon lexicon =
      detail::load_lexicon_checked(cfg.lexicon_path, lo, log);
  const PresegOptions popts{cfg.morph_delimiter, cfg.workers};
  PresegmentedCorpus p;
  if (!cfg.tagged_path.empty()) {
    p = presegment_contextual(load_tagged_corpus(cfg.tagged_path, lo), lexicon,
                              detail::load_mapping(cfg), popts);
  } else if (!cfg.corpus_path.empty()) {
    p = presegment_acontextual(load_corpus(cfg.corpus_path, lo), lexicon,
                               popts);
  } else {
    throw InputError("presegment needs a corpus or a tagged corpus");
  }
  {
    auto os = detail::open_output(cfg.output_path);
    write_presegmented(os, p);
  }
  {
    auto os = detail::open_output(cfg.output_path + ".stats.txt");
    os << "mode " << to_string(p.mode) << '\n';
    write_stats_text(os, p.stats);
  }
  {
    auto os = detail::open_output(cfg.output_path + ".stats.kv");
    os << "mode=" << to_string(p.mode) << '\n';
    write_stats_kv(os, p.stats);
  }
  return p.stats;
}

// Trains and writes the artifact to cfg.output_path, plus a manifest at
// `<output>.manifest`.
inline Tokenizer cmd_train(const RunConfig& cfg, std::ostream* log = nullptr) {
  if (cfg.output_path.empty()) throw InputError("train needs an output path");
  for (const auto& w : validate_training_inputs(cfg)) detail::warn(log, w);

  const LoadOptions lo{cfg.lowercase};
  TrainingData data;
  std::optional<MorphLexicon> lexicon;
  if (!cfg.corpus_path.empty()) data.corpus = load_corpus(cfg.corpus_path, lo);
  if (!cfg.tagged_path.empty()) {
    data.tagged = load_tagged_corpus(cfg.tagged_path, lo);
  }
  if (uses_presegmentation(cfg.guidance)) {
    lexicon = detail::load_lexicon_checked(cfg.lexicon_path, lo, log);
    data.lexicon = &*lexicon;
    data.mapping = detail::load_mapping(cfg);
  }
  if (cfg.guidance == Guidance::MorphSeed) {
    data.suffixes = load_suffixes(cfg.suffixes_path);
  }
  // Acontextual presegmentation reads the plain corpus; a tagged corpus alone
  // also works.
  if (cfg.guidance == Guidance::MorphPreTokContextual) data.corpus.reset();

  TrainReport report;
  Tokenizer tok = train_tokenizer(data, cfg, &report);
  save_tokenizer(tok, cfg.output_path);

  auto os = detail::open_output(cfg.output_path + ".manifest");
  os << "algorithm=" << to_string(tok.algorithm()) << '\n';
  os << "guidance=" << to_string(tok.guidance()) << '\n';
  os << "config_digest=" << tok.digest() << '\n';
  const auto checksum = [](const std::string& p) {
    return p.empty() ? std::string("none") : text::hex64(file_checksum(p));
  };
  os << "corpus=" << cfg.corpus_path << '\n';
  os << "corpus_checksum=" << checksum(cfg.corpus_path) << '\n';
  os << "tagged=" << cfg.tagged_path << '\n';
  os << "tagged_checksum=" << checksum(cfg.tagged_path) << '\n';
  if (uses_presegmentation(cfg.guidance)) {
    os << "lexicon=" << cfg.lexicon_path << '\n';
    os << "lexicon_checksum=" << checksum(cfg.lexicon_path) << '\n';
  }
  if (cfg.guidance == Guidance::MorphSeed) {
    os << "suffixes=" << cfg.suffixes_path << '\n';
    os << "suffixes_checksum=" << checksum(cfg.suffixes_path) << '\n';
  }
  os << "training_sentences=" << report.training_sentences << '\n';
  os << "training_words=" << report.training_words << '\n';
  os << "vocab_entries=" << tok.vocab_size() << '\n';
  if (report.preseg_stats) {
    std::ostringstream kv;
    write_stats_kv(kv, *report.preseg_stats);
    std::istringstream lines(kv.str());
    for (std::string line; std::getline(lines, line);) {
      os << "preseg." << line << '\n';
    }
  }
  for (std::size_t r = 0; r < report.ulm_trace.rounds.size(); ++r) {
    const auto& round = report.ulm_trace.rounds[r];
    os << "ulm.round" << r << '=' << round.size_before_prune << ' '
       << text::format_double(round.log_likelihood) << ' ' << round.pruned
       << '\n';
  }
  return tok;
}

struct EncodeOptions {
  std::string lexicon_path;
  std::string pos_map_path;
  // Input lines are word<TAB>UD_POS (blank line between sentences).
  bool tagged_input = false;
  // One output line per sentence instead of per word.
  bool per_sentence = false;
  // Print each word's pieces with markers removed and joined back together.
  bool strip_markers = false;
  bool lowercase = false;
};

inline void cmd_encode(const std::string& artifact_path, std::istream& in,
                       std::ostream& out, const EncodeOptions& opts,
                       std::ostream* log = nullptr) {
  const Tokenizer tok = load_tokenizer(artifact_path);
  const LoadOptions lo{opts.lowercase};
  std::optional<MorphLexicon> lexicon;
  if (!opts.lexicon_path.empty()) {
    if (!uses_presegmentation(tok.guidance())) {
      throw InputError("a lexicon was given but the " +
                       std::string(to_string(tok.guidance())) +
                       " artifact does not presegment");
    }
    lexicon = detail::load_lexicon_checked(opts.lexicon_path, lo, log);
  } else if (uses_presegmentation(tok.guidance())) {
    detail::warn(log,
                 "artifact was trained on presegmented text but no lexicon was "
                 "given; morpheme-level vocabulary will be hard to reach");
  }
  const PosMapping mapping = opts.pos_map_path.empty()
                                 ? PosMapping::builtin()
                                 : PosMapping::load(opts.pos_map_path);
  const WordEncoder encoder(tok, lexicon ? &*lexicon : nullptr, mapping);

  TaggedCorpus input;
  if (opts.tagged_input) {
    input = parse_tagged_corpus(in, lo);
  } else {
    for (auto& s : parse_corpus(in, lo).sentences) {
      auto& sentence = input.sentences.emplace_back();
      for (auto& w : s) sentence.push_back({std::move(w), UdPos::X});
    }
  }
  for (const auto& sentence : input.sentences) {
    std::vector<std::string> line;
    for (const auto& w : sentence) {
      const auto pos =
          opts.tagged_input ? std::optional<UdPos>(w.pos) : std::nullopt;
      const Segmentation pieces = encoder(w.word, pos);
      const std::string rendered =
          opts.strip_markers
              ? text::concat(normalize_segmentation(pieces, tok.delimiter()))
              : text::join(pieces, " ");
      if (opts.per_sentence) {
        line.push_back(rendered);
      } else {
        out << rendered << '\n';
      }
    }
    if (opts.per_sentence) {
      out << text::join(line, opts.strip_markers ? " " : "  ") << '\n';
    }
  }
}

struct EvaluateOptions {
  std::vector<std::string> artifacts;
  std::vector<std::string> gold_paths;
  // One mode for every gold set, or one per gold set.
  std::vector<EvalMode> modes;
  std::string lexicon_path;
  std::string pos_map_path;
  bool piece_overlap = false;
  bool extended = false;
  bool kv = false;
  bool lowercase = false;
};

inline std::string artifact_label(const Tokenizer& tok) {
  return std::string(to_string(tok.guidance())) + "/" +
         std::string(to_string(tok.algorithm()));
}

// Evaluates every artifact on every gold set and renders the result.
inline std::vector<ComparisonRow> cmd_evaluate(const EvaluateOptions& opts,
                                               std::ostream& out,
                                               std::ostream* log = nullptr) {
  if (opts.artifacts.empty()) throw InputError("no artifacts to evaluate");
  if (opts.gold_paths.empty()) throw InputError("no gold set given");
  if (opts.modes.size() != 1 && opts.modes.size() != opts.gold_paths.size()) {
    throw InputError("give one evaluation mode, or one per gold set");
  }
  const LoadOptions lo{opts.lowercase};
  std::vector<GoldSegmentationSet> golds;
  std::vector<std::string> gold_names;
  for (const auto& path : opts.gold_paths) {
    golds.push_back(load_gold(path, lo));
    auto name = path.substr(path.find_last_of('/') + 1);
    if (const auto dot = name.find('.'); dot != std::string::npos) {
      name.resize(dot);
    }
    gold_names.push_back(name);
  }
  std::optional<MorphLexicon> lexicon;
  if (!opts.lexicon_path.empty()) {
    lexicon = detail::load_lexicon_checked(opts.lexicon_path, lo, log);
  }
  const PosMapping mapping = opts.pos_map_path.empty()
                                 ? PosMapping::builtin()
                                 : PosMapping::load(opts.pos_map_path);

  std::vector<ComparisonRow> rows;
  for (const auto& path : opts.artifacts) {
    const Tokenizer tok = load_tokenizer(path);
    if (uses_presegmentation(tok.guidance()) && !lexicon) {
      detail::warn(log, path + ": no lexicon given, evaluating without "
                               "presegmentation");
    }
    const WordEncoder encoder(tok, lexicon ? &*lexicon : nullptr, mapping);
    ComparisonRow row{artifact_label(tok), {}};
    for (std::size_t g = 0; g < golds.size(); ++g) {
      EvalOptions eo;
      eo.mode = opts.modes.size() == 1 ? opts.modes[0] : opts.modes[g];
      eo.piece_overlap = opts.piece_overlap;
      row.reports.push_back(evaluate(encoder, golds[g], eo));
    }
    rows.push_back(std::move(row));
  }

  if (opts.kv) {
    for (const auto& row : rows) {
      for (std::size_t g = 0; g < golds.size(); ++g) {
        write_report_kv(out, row.name + "." + gold_names[g], row.reports[g]);
      }
    }
  } else if (opts.extended) {
    write_extended_table(out, gold_names, rows);
  } else {
    write_comparison_table(out, gold_names, rows);
  }
  return rows;
}

}  // namespace morphtok

#endif  // MORPHTOK_PIPELINE_HPP_
