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

#ifndef MORPHTOK_PIECE_TRIE_HPP_
#define MORPHTOK_PIECE_TRIE_HPP_

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace morphtok {

// Byte trie over vocabulary pieces, used to enumerate every piece that starts
// at a given position of a word.
class PieceTrie {
 public:
  PieceTrie() : nodes_(1) {}

  void insert(std::string_view piece, int id) {
    int node = 0;
    for (const char c : piece) {
      node = child_or_insert(node, static_cast<unsigned char>(c));
    }
    nodes_[static_cast<std::size_t>(node)].id = id;
  }

  // Calls fn(end, id) for each piece equal to prefix + s[begin, end), in
  // increasing order of `end`.
  template <typename Fn>
  void for_each_match(std::string_view prefix, std::string_view s,
                      std::size_t begin, Fn&& fn) const {
    int node = 0;
    for (const char c : prefix) {
      node = child(node, static_cast<unsigned char>(c));
      if (node < 0) return;
    }
    for (std::size_t i = begin; i < s.size(); ++i) {
      node = child(node, static_cast<unsigned char>(s[i]));
      if (node < 0) return;
      const int id = nodes_[static_cast<std::size_t>(node)].id;
      if (id >= 0) fn(i + 1, id);
    }
  }

  template <typename Fn>
  void for_each_match(std::string_view s, std::size_t begin, Fn&& fn) const {
    for_each_match(std::string_view{}, s, begin, std::forward<Fn>(fn));
  }

 private:
  struct Node {
    std::vector<std::pair<unsigned char, int>> next;
    int id = -1;
  };

  int child(int node, unsigned char c) const {
    const auto& next = nodes_[static_cast<std::size_t>(node)].next;
    const auto it = std::lower_bound(
        next.begin(), next.end(), c,
        [](const auto& e, unsigned char v) { return e.first < v; });
    return it != next.end() && it->first == c ? it->second : -1;
  }

  int child_or_insert(int node, unsigned char c) {
    auto& next = nodes_[static_cast<std::size_t>(node)].next;
    const auto it = std::lower_bound(
        next.begin(), next.end(), c,
        [](const auto& e, unsigned char v) { return e.first < v; });
    if (it != next.end() && it->first == c) return it->second;
    const int id = static_cast<int>(nodes_.size());
    next.insert(it, {c, id});
    nodes_.emplace_back();
    return id;
  }

  std::vector<Node> nodes_;
};

}  // namespace morphtok

#endif  // MORPHTOK_PIECE_TRIE_HPP_
