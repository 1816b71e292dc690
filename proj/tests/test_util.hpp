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

// Helpers shared by the unit tests and the acceptance runner: reference
// implementations written independently of the library, random instance
// generators and temporary files.

#ifndef MORPHTOK_TESTS_TEST_UTIL_HPP_
#define MORPHTOK_TESTS_TEST_UTIL_HPP_

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

namespace testutil {

using Pieces = std::vector<std::string>;

inline std::string data_path(const std::string& name) {
  return std::string(MORPHTOK_DATA_DIR) + "/" + name;
}

inline std::string test_data_path(const std::string& name) {
  return std::string(MORPHTOK_TEST_DATA_DIR) + "/" + name;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("morphtok_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

  std::string write(const std::string& name, const std::string& body) const {
    const std::string p = file(name);
    std::ofstream os(p, std::ios::binary);
    os << body;
    return p;
  }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Greedy decoding: at each position take the longest vocabulary string
// (continuation form after position 0), trying lengths from long to short.
inline Pieces greedy_longest_prefix(const std::string& word,
                                    const std::set<std::string>& vocab) {
  Pieces out;
  std::size_t pos = 0;
  while (pos < word.size()) {
    bool found = false;
    for (std::size_t len = word.size() - pos; len > 0; --len) {
      const std::string cand =
          (pos == 0 ? "" : "##") + word.substr(pos, len);
      if (vocab.count(cand)) {
        out.push_back(cand);
        pos += len;
        found = true;
        break;
      }
    }
    if (!found) return {"[UNK]"};
  }
  return out;
}

// Every tiling of `word` by vocabulary pieces; keeps the one with the highest
// left-to-right summed log-probability, then fewer pieces, then the smallest
// piece sequence.
inline std::optional<Pieces> best_tiling(
    const std::string& word, const std::map<std::string, double>& logprob) {
  std::optional<Pieces> best;
  double best_score = 0.0;
  Pieces cur;
  const auto rec = [&](auto&& self, std::size_t pos, double score) -> void {
    if (pos == word.size()) {
      bool better = !best || score > best_score;
      if (best && score == best_score) {
        better = cur.size() != best->size() ? cur.size() < best->size()
                                            : cur < *best;
      }
      if (better) {
        best = cur;
        best_score = score;
      }
      return;
    }
    for (std::size_t len = 1; pos + len <= word.size(); ++len) {
      const auto it = logprob.find(word.substr(pos, len));
      if (it == logprob.end()) continue;
      cur.push_back(it->first);
      self(self, pos + len, score + it->second);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

// All tilings with their summed log-probability, for hand-checkable
// posteriors.
inline std::vector<std::pair<Pieces, double>> all_tilings(
    const std::string& word, const std::map<std::string, double>& logprob) {
  std::vector<std::pair<Pieces, double>> out;
  Pieces cur;
  const auto rec = [&](auto&& self, std::size_t pos, double score) -> void {
    if (pos == word.size()) {
      out.emplace_back(cur, score);
      return;
    }
    for (std::size_t len = 1; pos + len <= word.size(); ++len) {
      const auto it = logprob.find(word.substr(pos, len));
      if (it == logprob.end()) continue;
      cur.push_back(it->first);
      self(self, pos + len, score + it->second);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0.0);
  return out;
}

// Split positions (byte offsets; the fixtures are ASCII) of a segmentation.
inline std::set<std::size_t> split_points(const Pieces& pieces) {
  std::set<std::size_t> out;
  std::size_t at = 0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    at += pieces[i].size();
    out.insert(at);
  }
  return out;
}

struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline std::string random_word(std::mt19937_64& rng, const std::string& alphabet,
                               std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::string w;
  for (std::size_t n = len(rng); n > 0; --n) w += alphabet[ch(rng)];
  return w;
}

// Random segmentation of `word` into 1..word.size() pieces.
inline Pieces random_split(std::mt19937_64& rng, const std::string& word) {
  Pieces out;
  std::bernoulli_distribution cut(0.35);
  std::string cur;
  for (std::size_t i = 0; i < word.size(); ++i) {
    cur += word[i];
    if (i + 1 < word.size() && cut(rng)) {
      out.push_back(cur);
      cur.clear();
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace testutil

#endif  // MORPHTOK_TESTS_TEST_UTIL_HPP_
