// Copyright 2026 The bayescodenames Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CODENAMES_COMMON_HPP_
#define CODENAMES_COMMON_HPP_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace codenames {

using Rng = std::mt19937_64;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownWord : public Error {
 public:
  explicit UnknownWord(std::string_view word)
      : Error("unknown word: " + std::string(word)), word_(word) {}
  const std::string& word() const { return word_; }

 private:
  std::string word_;
};

// An agent (or a human) attempted something the rules forbid. `rule` is a
// short human-readable citation of the rule that was broken.
class IllegalAction : public Error {
 public:
  IllegalAction(std::string rule, const std::string& detail)
      : Error(detail), rule_(std::move(rule)) {}
  const std::string& rule() const { return rule_; }

 private:
  std::string rule_;
};

// 64-bit FNV-1a. Used wherever a hash must be stable across platforms and
// standard library implementations (seed derivation, cache keys).
constexpr std::uint64_t fnv1a(std::string_view s,
                              std::uint64_t h = 14695981039346656037ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Derives a child seed from a parent seed and a sequence of labels. Pure
// function of its arguments, so per-game seeds do not depend on scheduling.
inline std::uint64_t derive_seed(std::uint64_t parent) { return splitmix64(parent); }

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label, Rest&&... rest);

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t label, Rest&&... rest) {
  return derive_seed(splitmix64(parent ^ splitmix64(label + 0x632be59bd9b4e019ull)),
                     std::forward<Rest>(rest)...);
}

template <typename... Rest>
std::uint64_t derive_seed(std::uint64_t parent, std::string_view label, Rest&&... rest) {
  return derive_seed(splitmix64(parent ^ fnv1a(label)), std::forward<Rest>(rest)...);
}

}  // namespace codenames

#endif  // CODENAMES_COMMON_HPP_
