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

// morphtok command line tool.
//
//   morphtok presegment --lexicon L (--corpus C | --tagged T) -o OUT
//   morphtok train --algorithm A --guidance G [inputs] -o ARTIFACT
//   morphtok encode ARTIFACT [--lexicon L] [--input FILE] [--per-sentence]
//   morphtok evaluate ARTIFACT... --gold G [--mode M] [--format table|kv]
//
// Options may also come from a flat key=value file given with --config;
// command line flags win over the file.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morphtok/pipeline.hpp"

namespace {

constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Morphologically guided subword tokenization"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value configuration file");

  morphtok::RunConfig cfg;
  std::string algorithm = "wordpiece";
  std::string guidance = "baseline";
  std::string delimiter(1, morphtok::kDefaultDelimiter);
  std::string format = "table";

  app.add_option("--algorithm", algorithm, "wordpiece or ulm")
      ->check(CLI::IsMember({"wordpiece", "ulm"}));
  app.add_option("--guidance", guidance,
                 "baseline, morphseed, morphpretok-acontextual or "
                 "morphpretok-contextual");
  app.add_option("--corpus", cfg.corpus_path, "Plain corpus, one sentence per line");
  app.add_option("--tagged", cfg.tagged_path, "POS-tagged corpus (word<TAB>UD_POS)");
  app.add_option("--lexicon", cfg.lexicon_path, "Morphological lexicon");
  app.add_option("--suffixes", cfg.suffixes_path, "Suffix list for seeding");
  app.add_option("--pos-map", cfg.pos_map_path, "UD to analyzer POS mapping override");
  app.add_option("-o,--output", cfg.output_path, "Output path");
  app.add_option("--vocab-size", cfg.vocab_size, "Target vocabulary size")
      ->capture_default_str();
  app.add_option("--min-pair-frequency", cfg.min_pair_frequency,
                 "WordPiece: minimum count of a merge candidate")
      ->capture_default_str();
  app.add_option("--shrinking-factor", cfg.shrinking_factor,
                 "ULM: fraction of pieces kept per pruning round")
      ->capture_default_str();
  app.add_option("--seed-weight", cfg.seed_weight,
                 "ULM: log-probability boost for seeded suffixes")
      ->capture_default_str();
  app.add_option("--seed-size", cfg.seed_size, "ULM: initial vocabulary cap")
      ->capture_default_str();
  app.add_option("--max-piece-length", cfg.max_piece_length,
                 "ULM: longest initial piece in characters")
      ->capture_default_str();
  app.add_option("--em-iterations", cfg.em_iterations,
                 "ULM: EM steps per pruning round")
      ->capture_default_str();
  app.add_flag("--exact-pruning", cfg.exact_pruning,
               "ULM: score prune candidates by full likelihood recomputation");
  app.add_option("--morph-delimiter", delimiter, "Morpheme delimiter character")
      ->capture_default_str();
  app.add_option("--sample-fraction", cfg.sample_fraction,
                 "Fraction of sentences to train on")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Random seed for sampling")
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "Worker threads")
      ->capture_default_str();
  app.add_flag("--lowercase", cfg.lowercase, "Lowercase ASCII input");
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"table", "kv"}))
      ->capture_default_str();

  auto* presegment = app.add_subcommand("presegment",
                                        "Write a morpheme-delimited corpus");
  presegment->fallthrough();

  auto* train = app.add_subcommand("train", "Train a tokenizer");
  train->fallthrough();

  morphtok::EncodeOptions encode_opts;
  std::string artifact;
  std::string input_path;
  auto* encode = app.add_subcommand("encode", "Encode text with an artifact");
  encode->fallthrough();
  encode->add_option("artifact", artifact, "Tokenizer artifact")->required();
  encode->add_option("--input", input_path, "Input text (default: stdin)");
  encode->add_flag("--per-sentence", encode_opts.per_sentence,
                   "One output line per sentence");
  encode->add_flag("--strip-markers", encode_opts.strip_markers,
                   "Print words rebuilt from their pieces");
  encode->add_flag("--tagged-input", encode_opts.tagged_input,
                   "Input is word<TAB>UD_POS");

  morphtok::EvaluateOptions eval_opts;
  std::vector<std::string> modes;
  auto* evaluate = app.add_subcommand("evaluate", "Score artifacts on gold sets");
  evaluate->alias("compare");
  evaluate->fallthrough();
  evaluate->add_option("artifacts", eval_opts.artifacts, "Tokenizer artifacts")
      ->required();
  evaluate->add_option("--gold", eval_opts.gold_paths, "Gold segmentation file")
      ->required();
  evaluate->add_option("--mode", modes,
                       "acontextual or contextual, once or per gold set");
  evaluate->add_flag("--extended", eval_opts.extended,
                     "Add recall, precision, F1 and MorphScore columns");
  evaluate->add_flag("--piece-overlap", eval_opts.piece_overlap,
                     "Also score piece-multiset overlap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInputError;
  }

  try {
    cfg.algorithm = morphtok::parse_algorithm(algorithm);
    cfg.guidance = morphtok::parse_guidance(guidance);
    if (delimiter.size() != 1) {
      throw morphtok::InputError("--morph-delimiter must be one character");
    }
    cfg.morph_delimiter = delimiter[0];

    if (*presegment) {
      const auto stats = morphtok::cmd_presegment(cfg, &std::cerr);
      morphtok::write_stats_text(std::cerr, stats);
    } else if (*train) {
      const auto tok = morphtok::cmd_train(cfg, &std::cerr);
      std::cerr << "wrote " << cfg.output_path << " (" << tok.vocab_size()
                << " entries)\n";
    } else if (*encode) {
      encode_opts.lexicon_path = cfg.lexicon_path;
      encode_opts.pos_map_path = cfg.pos_map_path;
      encode_opts.lowercase = cfg.lowercase;
      if (input_path.empty()) {
        morphtok::cmd_encode(artifact, std::cin, std::cout, encode_opts,
                             &std::cerr);
      } else {
        std::ifstream in(input_path, std::ios::binary);
        if (!in) throw morphtok::InputError("cannot open " + input_path);
        morphtok::cmd_encode(artifact, in, std::cout, encode_opts, &std::cerr);
      }
    } else if (*evaluate) {
      for (const auto& m : modes) {
        eval_opts.modes.push_back(morphtok::parse_eval_mode(m));
      }
      if (eval_opts.modes.empty()) {
        eval_opts.modes.push_back(morphtok::EvalMode::Contextual);
      }
      eval_opts.lexicon_path = cfg.lexicon_path;
      eval_opts.pos_map_path = cfg.pos_map_path;
      eval_opts.kv = format == "kv";
      eval_opts.lowercase = cfg.lowercase;
      if (cfg.output_path.empty()) {
        morphtok::cmd_evaluate(eval_opts, std::cout, &std::cerr);
      } else {
        std::ofstream os(cfg.output_path, std::ios::binary);
        if (!os) throw morphtok::InputError("cannot write " + cfg.output_path);
        morphtok::cmd_evaluate(eval_opts, os, &std::cerr);
      }
    }
  } catch (const morphtok::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return 0;
}
