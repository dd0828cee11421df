// Copyright 2026 The Salience Authors.
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

#ifndef SALIENCE_UTIL_H_
#define SALIENCE_UTIL_H_

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace salience {

using EntityId = int64_t;

// Base class of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented invariant or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Deterministic pseudo-random source. Wraps std::mt19937_64, whose output
// sequence is fixed by the standard, and derives bounded integers and reals
// without the implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }
  // Uniform integer in [0, n). n must be positive.
  uint64_t Index(uint64_t n);
  // Uniform real in [0, 1).
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  bool Bernoulli(double p) { return Uniform() < p; }

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      size_t j = Index(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view bytes);

// Lower-cases ASCII letters; other bytes are copied unchanged.
std::string AsciiLower(std::string_view text);

bool IsAsciiPunct(char c);
bool IsAsciiSpace(char c);

// True when every byte of the token is ASCII punctuation.
bool IsPunctuationToken(std::string_view token);

// Shortest decimal rendering that parses back to the same double.
std::string FormatDouble(double value);

// Non-fatal diagnostics go through a replaceable sink (stderr by default).
using WarningSink = std::function<void(std::string_view)>;
void SetWarningSink(WarningSink sink);
void Warn(std::string_view message);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

// Splits a file into lines, dropping a trailing empty line and '\r'.
std::vector<std::string> SplitLines(std::string_view text);

}  // namespace salience

#endif  // SALIENCE_UTIL_H_
