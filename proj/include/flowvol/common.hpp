/*
 * Copyright 2026 The flowvol Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace flowvol {

/// Opaque 64-bit flow identifier.
using FlowId = std::uint64_t;

/// One stream element: a flow id and a positive weight.
struct Packet {
  FlowId id = 0;
  std::uint32_t weight = 1;

  friend bool operator==(const Packet&, const Packet&) = default;
};

// Error hierarchy. Everything derives from std::runtime_error or
// std::invalid_argument so callers can catch broadly.

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what, const std::string& source = {})
      : std::runtime_error((source.empty() ? std::string{} : source + ": ") + "line " +
                           std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public std::runtime_error {
 public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Raised when an estimator is asked for something it cannot answer
/// (e.g. top-k candidates from a sketch).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The PRNG used everywhere. mt19937_64 has a standard-mandated output
/// sequence, so seeded runs reproduce across toolchains.
using Rng = std::mt19937_64;
inline constexpr const char* kRngName = "mt19937_64";
inline constexpr const char* kHashName = "splitmix64-finalizer";

/// Uniform double in [0, 1) built from the top 53 bits. Avoids
/// std::uniform_real_distribution, whose algorithm is unspecified.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [lo, hi] (inclusive), rejection-sampled so the
/// result is exact and toolchain independent.
inline std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == ~std::uint64_t{0}) return rng();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range) - 1;
  std::uint64_t x;
  do {
    x = rng();
  } while (x > limit);
  return lo + x % range;
}

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t seeded_hash(std::uint64_t key, std::uint64_t seed) noexcept {
  return mix64(key ^ mix64(seed));
}

/// ceil(x) that forgives floating-point noise just above an integer,
/// so ceil(1.25 / 0.05) is 25 and not 26.
inline std::uint64_t tolerant_ceil(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) return static_cast<std::uint64_t>(r);
  return static_cast<std::uint64_t>(std::ceil(x));
}

}  // namespace flowvol
