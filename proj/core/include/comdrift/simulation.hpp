// Copyright 2026 The comdrift Authors.
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

// Parameter sweeps, randomized property checks and finite-difference
// derivative checks for the evolution indices.
//
// Random numbers: std::mt19937_64 seeded with the given 64-bit seed; each
// uniform(0,1) draw is ((x >> 11) + 0.5) * 2^-53 for one engine output x.
// Per-row and per-trial substreams use derive_seed(). Both are fully
// specified, so outputs are reproducible across standard libraries.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "comdrift/indices.hpp"

namespace comdrift::sim {

enum class Mode { kEven, kSingle, kRandom };

std::string_view to_string(Mode mode);
/// Accepts "even", "single", "random"; throws Error(kInvalidRange) otherwise.
Mode parse_mode(std::string_view text);

struct SweepRow {
  Mode mode = Mode::kEven;
  std::size_t m = 1;
  double eta = 0.0;
  std::optional<std::uint64_t> seed;
  double split = 0.0;
  double shrink = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

enum class Property { kP1, kP2, kP3, kP4, kRange, kGradient };

std::string_view to_string(Property property);

struct PropertyViolation {
  Property property = Property::kRange;
  std::string check;
  std::map<std::string, double> inputs;
  std::vector<double> weights;  // distribution involved, if any
  double observed = 0.0;
  double expected = 0.0;

  friend bool operator==(const PropertyViolation&,
                         const PropertyViolation&) = default;
};

/// SplitMix64 finalizer over (seed, stream).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Uniform in the open interval (0, 1), see header comment.
double uniform01(std::mt19937_64& engine);

Distribution even_distribution(std::size_t m);
/// `target` is 1-based.
Distribution single_target_distribution(std::size_t m, std::size_t target);
/// m i.i.d. uniform(0,1) draws normalized to sum 1.
Distribution random_distribution(std::size_t m, std::uint64_t seed);

struct MRange {
  std::size_t first = 1;
  std::size_t last = 1;  // inclusive
};

/// `steps` + 1 evenly spaced points on [0, 1]; steps >= 1.
std::vector<double> eta_grid(std::size_t steps);

/// One row per (m, eta), m outer. Single mode targets community 1. Random
/// rows use random_distribution(m, derive_seed(seed, m)) and record that
/// seed, so every eta on one m shares a distribution.
std::vector<SweepRow> sweep(MRange m_range, const std::vector<double>& eta_grid,
                            Mode mode, std::uint64_t seed);

inline constexpr double kGradientRelTol = 1e-5;
inline constexpr double kDefaultGradientStep = 1e-6;
/// Slack for strict monotonicity: consecutive values must differ by more.
inline constexpr double kMonotoneSlack = 1e-12;
inline constexpr double kClosedFormTol = 1e-12;

/// The analytic derivatives under test. Swappable for detector tests.
struct DerivativeSet {
  double (*d_split_d_m)(double eta, double m) = &comdrift::d_split_d_m;
  double (*d_shrink_d_m)(double eta, double m) = &comdrift::d_shrink_d_m;
  double (*d_split_d_eta)(double entropy) = &comdrift::d_split_d_eta;
  double (*d_shrink_d_eta)(double eta, double entropy, std::size_t m) =
      &comdrift::d_shrink_d_eta;
};

std::vector<double> default_gradient_eta_grid();    // 0.1, 0.2, ..., 0.9
std::vector<std::size_t> default_gradient_m_grid();  // 1, 2, 4, 8

/// Central differences with `step` against the analytic derivatives.
/// m-derivatives use the even-regime closed forms with continuous m;
/// eta-derivatives go through split_index/shrink_index with both the even
/// and (for m > 1) single-target distributions. Step must lie in
/// (0, 1e-3]; throws Error(kInvalidRange) otherwise.
std::vector<PropertyViolation> gradient_check(
    const std::vector<double>& eta_grid, const std::vector<std::size_t>& m_grid,
    double step = kDefaultGradientStep, const DerivativeSet& derivatives = {});

/// Randomized checks of monotonicity in m and eta, the split and shrink
/// extremes, and the common range. Trial k draws from
/// derive_seed(seed, k). Throws Error(kInvalidRange) if trials == 0.
std::vector<PropertyViolation> property_suite(std::size_t trials,
                                              std::uint64_t seed);

}  // namespace comdrift::sim
