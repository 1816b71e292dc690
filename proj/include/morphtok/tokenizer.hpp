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

// A trained tokenizer (either algorithm) plus its guidance mode, and the
// versioned text artifact it is stored in.
//
// Artifact layout:
//
//   # morphtok tokenizer v1
//   # algorithm=ulm
//   # guidance=morphseed
//   # delimiter=@
//   # config.<key>=<value>          (sorted by key)
//   # word_marker=▁                  (ulm only)
//   # boost=0.5                      (ulm only)
//   # digest=<16 hex digits>         (FNV-1a of the lines above)
//   # entries=<N>
//   <N entry lines>                  wordpiece: piece
//                                    ulm: piece<TAB>logprob<TAB>0|1
//   # end

#ifndef MORPHTOK_TOKENIZER_HPP_
#define MORPHTOK_TOKENIZER_HPP_

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "morphtok/corpus_io.hpp"
#include "morphtok/morph_model.hpp"
#include "morphtok/presegment.hpp"
#include "morphtok/text.hpp"
#include "morphtok/ulm.hpp"
#include "morphtok/wordpiece.hpp"

namespace morphtok {

enum class Algorithm { WordPiece, Ulm };

enum class Guidance {
  Baseline,
  MorphSeed,
  MorphPreTokAcontextual,
  MorphPreTokContextual,
};

inline std::string_view to_string(Algorithm a) {
  return a == Algorithm::WordPiece ? "wordpiece" : "ulm";
}

inline std::string_view to_string(Guidance g) {
  switch (g) {
    case Guidance::Baseline:
      return "baseline";
    case Guidance::MorphSeed:
      return "morphseed";
    case Guidance::MorphPreTokAcontextual:
      return "morphpretok-acontextual";
    case Guidance::MorphPreTokContextual:
      return "morphpretok-contextual";
  }
  return "?";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "wordpiece" || s == "wp") return Algorithm::WordPiece;
  if (s == "ulm" || s == "unigram") return Algorithm::Ulm;
  throw InputError("unknown algorithm '" + std::string(s) + "'");
}

inline Guidance parse_guidance(std::string_view s) {
  for (const auto g : {Guidance::Baseline, Guidance::MorphSeed,
                       Guidance::MorphPreTokAcontextual,
                       Guidance::MorphPreTokContextual}) {
    if (to_string(g) == s) return g;
  }
  throw InputError("unknown guidance mode '" + std::string(s) + "'");
}

inline bool uses_presegmentation(Guidance g) {
  return g == Guidance::MorphPreTokAcontextual ||
         g == Guidance::MorphPreTokContextual;
}

inline constexpr std::string_view kArtifactMagic = "# morphtok tokenizer v";
inline constexpr int kArtifactVersion = 1;

class Tokenizer {
 public:
  using Model = std::variant<WpVocabulary, UlmVocabulary>;
  using Config = std::map<std::string, std::string>;

  Tokenizer(Guidance guidance, Model model, char delimiter = kDefaultDelimiter,
            Config config = {})
      : guidance_(guidance),
        model_(std::move(model)),
        delimiter_(delimiter),
        config_(std::move(config)) {}

  Algorithm algorithm() const {
    return std::holds_alternative<WpVocabulary>(model_) ? Algorithm::WordPiece
                                                        : Algorithm::Ulm;
  }
  Guidance guidance() const { return guidance_; }
  char delimiter() const { return delimiter_; }
  const Config& config() const { return config_; }
  const Model& model() const { return model_; }

  const WpVocabulary& wordpiece() const { return std::get<WpVocabulary>(model_); }
  const UlmVocabulary& ulm() const { return std::get<UlmVocabulary>(model_); }

  std::size_t vocab_size() const {
    return std::visit([](const auto& v) { return v.size(); }, model_);
  }

  Segmentation encode(std::string_view word) const {
    return std::visit([&](const auto& v) { return v.encode(word); }, model_);
  }

  Segmentation encode_morphemes(
      const std::vector<std::string>& morphemes) const {
    return std::visit([&](const auto& v) { return v.encode_morphemes(morphemes); },
                      model_);
  }

  // Encodes text that already carries morpheme delimiters.
  Segmentation encode_delimited(std::string_view word) const {
    return encode_morphemes(text::split_delimited(word, delimiter_));
  }

  // Canonical header block without the digest line; the digest covers it.
  std::string header() const {
    std::ostringstream os;
    os << "# algorithm=" << to_string(algorithm()) << '\n';
    os << "# guidance=" << to_string(guidance_) << '\n';
    os << "# delimiter=" << delimiter_ << '\n';
    for (const auto& [k, v] : config_) os << "# config." << k << '=' << v << '\n';
    if (algorithm() == Algorithm::Ulm) {
      os << "# word_marker=" << ulm().word_marker() << '\n';
      os << "# boost=" << text::format_double(ulm().boost()) << '\n';
    }
    return os.str();
  }

  std::string digest() const { return text::hex64(text::fnv1a(header())); }

 private:
  Guidance guidance_;
  Model model_;
  char delimiter_;
  Config config_;
};

inline void save_tokenizer(const Tokenizer& tok, std::ostream& os) {
  os << kArtifactMagic << kArtifactVersion << '\n';
  os << tok.header();
  os << "# digest=" << tok.digest() << '\n';
  os << "# entries=" << tok.vocab_size() << '\n';
  if (tok.algorithm() == Algorithm::WordPiece) {
    for (const auto& e : tok.wordpiece().entries()) os << e << '\n';
  } else {
    for (const auto& p : tok.ulm().pieces()) {
      os << p.piece << '\t' << text::format_double(p.logprob) << '\t'
         << (p.is_protected ? 1 : 0) << '\n';
    }
  }
  os << "# end\n";
}

inline void save_tokenizer(const Tokenizer& tok, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path);
  save_tokenizer(tok, os);
  if (!os) throw InputError("write failure on " + path);
}

inline Tokenizer load_tokenizer(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || !text::starts_with(line, kArtifactMagic)) {
    throw InputError("not a morphtok tokenizer artifact");
  }
  const std::string version = line.substr(kArtifactMagic.size());
  if (version != std::to_string(kArtifactVersion)) {
    throw VersionError("unsupported artifact version '" + version +
                       "' (expected " + std::to_string(kArtifactVersion) + ")");
  }

  std::map<std::string, std::string> fields;
  Tokenizer::Config config;
  std::size_t entries = 0;
  for (;;) {
    if (!std::getline(in, line)) throw InputError("truncated artifact header");
    if (!text::starts_with(line, "# ")) {
      throw InputError("malformed artifact header line '" + line + "'");
    }
    const std::string body = line.substr(2);
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw InputError("malformed artifact header line '" + line + "'");
    }
    const std::string key = body.substr(0, eq);
    const std::string value = body.substr(eq + 1);
    if (key == "entries") {
      entries = text::parse_int<std::size_t>(value);
      break;
    }
    if (text::starts_with(key, "config.")) {
      config[key.substr(7)] = value;
    } else {
      fields[key] = value;
    }
  }
  const auto field = [&](const std::string& key) -> const std::string& {
    const auto it = fields.find(key);
    if (it == fields.end()) throw InputError("artifact lacks '" + key + "'");
    return it->second;
  };

  const Algorithm algorithm = parse_algorithm(field("algorithm"));
  const Guidance guidance = parse_guidance(field("guidance"));
  const std::string& delim = field("delimiter");
  if (delim.size() != 1) throw InputError("bad artifact delimiter");

  std::vector<std::string> rows;
  rows.reserve(entries);
  for (std::size_t i = 0; i < entries; ++i) {
    if (!std::getline(in, line) || text::starts_with(line, "# end")) {
      throw InputError("truncated artifact: expected " +
                       std::to_string(entries) + " entries, got " +
                       std::to_string(i));
    }
    rows.push_back(line);
  }
  if (!std::getline(in, line) || line != "# end") {
    throw InputError("truncated artifact: missing end marker");
  }

  Tokenizer::Model model;
  if (algorithm == Algorithm::WordPiece) {
    model = WpVocabulary(std::move(rows));
  } else {
    std::vector<UlmPiece> pieces;
    pieces.reserve(rows.size());
    for (const auto& r : rows) {
      const auto cols = text::split(r, '\t');
      if (cols.size() != 3 || (cols[2] != "0" && cols[2] != "1")) {
        throw InputError("malformed unigram entry '" + r + "'");
      }
      pieces.push_back({cols[0], text::parse_double(cols[1]), cols[2] == "1"});
    }
    model = UlmVocabulary(std::move(pieces), field("word_marker"),
                          text::parse_double(field("boost")));
  }
  Tokenizer tok(guidance, std::move(model), delim[0], std::move(config));
  if (tok.digest() != field("digest")) {
    throw InputError("artifact digest mismatch");
  }
  return tok;
}

inline Tokenizer load_tokenizer(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  try {
    return load_tokenizer(in);
  } catch (const VersionError& e) {
    throw VersionError(path + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Full word-level encoding path: optional presegmentation (for MorphPreTok
// tokenizers with a lexicon at hand) followed by the tokenizer.
//
// A contextual tokenizer disambiguates with the supplied POS tag and falls
// back to the first analysis when no tag is available.
class WordEncoder {
 public:
  explicit WordEncoder(const Tokenizer& tok, const MorphLexicon* lexicon = nullptr,
                       const PosMapping& mapping = default_pos_mapping())
      : tok_(tok), lexicon_(lexicon), mapping_(mapping) {}

  bool presegments() const {
    return lexicon_ != nullptr && uses_presegmentation(tok_.guidance());
  }

  std::vector<std::string> morphemes(const std::string& word,
                                     std::optional<UdPos> pos) const {
    if (!presegments()) return {word};
    if (tok_.guidance() == Guidance::MorphPreTokContextual && pos) {
      return segment_contextual(word, *pos, *lexicon_, mapping_);
    }
    return segment_acontextual(word, *lexicon_);
  }

  Segmentation operator()(const std::string& word,
                          std::optional<UdPos> pos = std::nullopt) const {
    return tok_.encode_morphemes(morphemes(word, pos));
  }

 private:
  const Tokenizer& tok_;
  const MorphLexicon* lexicon_;
  const PosMapping& mapping_;
};

}  // namespace morphtok

#endif  // MORPHTOK_TOKENIZER_HPP_
