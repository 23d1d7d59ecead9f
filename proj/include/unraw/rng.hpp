// Copyright 2026 The unraw Authors
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

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace unraw {

/// Seeded random stream with keyed substreams.
///
/// A substream is a pure function of (parent seed, key), never of how many
/// values the parent has produced. Work split by row or by image therefore
/// draws the same numbers no matter how it is scheduled.
class Rng {
 public:
  using Engine = std::mt19937_64;

  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  Rng substream(std::uint64_t key) const;
  Rng substream(std::string_view key) const;

  double uniform(double lo, double hi);
  double normal(double mean, double stddev);
  double exponential(double rate);
  bool coin();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

  Engine& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  Engine engine_;
};

std::uint64_t mix64(std::uint64_t x) noexcept;
/// FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text) noexcept;
/// Fresh seed from std::random_device.
std::uint64_t entropy_seed();

}  // namespace unraw
