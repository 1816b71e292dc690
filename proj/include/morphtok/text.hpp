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

#ifndef MORPHTOK_TEXT_HPP_
#define MORPHTOK_TEXT_HPP_

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace morphtok {

// Malformed or missing user input (files, flags, formats).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Artifact written by an incompatible version of the toolkit.
class VersionError : public InputError {
 public:
  using InputError::InputError;
};

inline constexpr std::string_view kContinuationPrefix = "##";
// U+2581, the word-initial marker used by unigram vocabularies.
inline constexpr std::string_view kWordMarker = "\xE2\x96\x81";
inline constexpr std::string_view kUnknownPiece = "[UNK]";
inline constexpr char kDefaultDelimiter = '@';
inline constexpr char kEscape = '\\';

namespace text {

// Length in bytes of the UTF-8 sequence starting with `lead`, or 0 if `lead`
// cannot start a sequence.
inline std::size_t utf8_sequence_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 0;
}

inline bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto lead = static_cast<unsigned char>(s[i]);
    const std::size_t len = utf8_sequence_length(lead);
    if (len == 0 || i + len > s.size()) return false;
    std::uint32_t cp = len == 1 ? lead : lead & (0xFF >> (len + 1));
    for (std::size_t k = 1; k < len; ++k) {
      const auto c = static_cast<unsigned char>(s[i + k]);
      if ((c >> 6) != 0x2) return false;
      cp = (cp << 6) | (c & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

// Byte offsets of every code point boundary, including 0 and s.size().
// Assumes valid UTF-8.
inline std::vector<std::size_t> char_offsets(std::string_view s) {
  std::vector<std::size_t> offsets;
  offsets.reserve(s.size() + 1);
  std::size_t i = 0;
  while (i < s.size()) {
    offsets.push_back(i);
    const std::size_t len =
        utf8_sequence_length(static_cast<unsigned char>(s[i]));
    i += len == 0 ? 1 : len;
  }
  offsets.push_back(s.size());
  return offsets;
}

inline std::size_t char_length(std::string_view s) {
  std::size_t n = 0;
  for (const char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

// Code points of `s`, each as its own UTF-8 string.
inline std::vector<std::string> chars(std::string_view s) {
  const auto offsets = char_offsets(s);
  std::vector<std::string> out;
  out.reserve(offsets.size() - 1);
  for (std::size_t k = 0; k + 1 < offsets.size(); ++k) {
    out.emplace_back(s.substr(offsets[k], offsets[k + 1] - offsets[k]));
  }
  return out;
}

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' ||
         c == '\v';
}

inline std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

inline std::string_view trim_eol(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// ASCII-only case folding; non-ASCII bytes pass through untouched.
inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts,
                        std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string concat(const std::vector<std::string>& parts) {
  return join(parts, "");
}

inline bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Escapes the delimiter and the escape character itself so that a surface
// word can be embedded in a delimited string.
inline std::string escape(std::string_view word, char delimiter) {
  std::string out;
  out.reserve(word.size());
  for (const char c : word) {
    if (c == delimiter || c == kEscape) out += kEscape;
    out += c;
  }
  return out;
}

inline std::string unescape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == kEscape && i + 1 < s.size()) ++i;
    out += s[i];
  }
  return out;
}

// Splits a delimited word into its unescaped morphemes. An undelimited word
// yields one morpheme.
inline std::vector<std::string> split_delimited(std::string_view s,
                                                char delimiter) {
  std::vector<std::string> out(1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == kEscape && i + 1 < s.size()) {
      out.back() += s[++i];
    } else if (s[i] == delimiter) {
      out.emplace_back();
    } else {
      out.back() += s[i];
    }
  }
  return out;
}

inline std::string join_delimited(const std::vector<std::string>& morphemes,
                                  char delimiter) {
  std::string out;
  for (std::size_t i = 0; i < morphemes.size(); ++i) {
    if (i) out += delimiter;
    out += escape(morphemes[i], delimiter);
  }
  return out;
}

inline void check_delimiter(char delimiter) {
  if (delimiter == kEscape || is_space(delimiter) || delimiter == '#' ||
      static_cast<unsigned char>(delimiter) >= 0x80 || delimiter == '\0') {
    throw InputError(std::string("unusable morph delimiter '") + delimiter +
                     "'");
  }
}

// 64-bit FNV-1a, used for config digests and corpus checksums.
inline std::uint64_t fnv1a(std::string_view s,
                           std::uint64_t h = 14695981039346656037ULL) {
  for (const char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
    v >>= 4;
  }
  return out;
}

// Shortest decimal form that parses back to the identical double.
inline std::string format_double(double v) {
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  if (s == "-inf") return -INFINITY;
  if (s == "inf") return INFINITY;
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InputError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

template <typename Int>
Int parse_int(std::string_view s) {
  Int v{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw InputError("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace text
}  // namespace morphtok

#endif  // MORPHTOK_TEXT_HPP_
