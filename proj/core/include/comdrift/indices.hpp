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

// Entropy-based community evolution indices.
//
// A community observed at step t loses a fraction `eta` of its members
// (they are absent from step t+1) and the remaining members spread over the
// `m` communities detected at t+1 according to a migration distribution.
// Two indices summarize that transition, both measured in bits:
//
//   split  = (1 - eta) * H(dist)
//   shrink = eta * (log2(m) - split + sigma),  sigma = eta / 2 if m == 1
//
// Running the same formulas on the time-reversed transition (where members
// came from, and the fraction of newcomers) gives the merge and expand
// indices.

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace comdrift {

inline constexpr double kNormalizationTolerance = 1e-9;
/// Weights below this are treated as exact zeros by entropy().
inline constexpr double kZeroWeight = 1e-15;

/// Probability mass over target communities. Empty encodes "every member
/// left"; otherwise the weights lie in [0, 1] and sum to 1.
class Distribution {
 public:
  Distribution() = default;

  /// Validates `weights`. A sum within kNormalizationTolerance of 1 is
  /// renormalized; anything further off throws kNonNormalized. Negative
  /// weights throw kNegativeWeight.
  explicit Distribution(std::vector<double> weights);

  /// counts[j] / sum(counts), without renormalization. All-zero or empty
  /// counts produce the empty distribution.
  static Distribution from_counts(std::span<const std::size_t> counts);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  bool empty() const noexcept { return weights_.empty(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> weights_;
};

/// Components of one index computation. For backward (merge/expand)
/// analysis `eta` holds the newcomer fraction and `m` the number of source
/// communities; `split`/`shrink` then read as merge/expand.
struct IndexBreakdown {
  double eta = 0.0;
  std::size_t m = 1;
  double entropy = 0.0;
  double max_entropy = 0.0;
  double sigma = 0.0;
  double split = 0.0;
  double shrink = 0.0;

  friend bool operator==(const IndexBreakdown&,
                         const IndexBreakdown&) = default;
};

enum class TrendLabel { kSplitting, kShrinking, kBalanced, kStable };

std::string_view to_string(TrendLabel label);
/// Throws Error(kParseError) for unknown labels.
TrendLabel parse_trend_label(std::string_view text);

struct Trend {
  TrendLabel label = TrendLabel::kStable;
  double split_value = 0.0;
  double shrink_value = 0.0;

  friend bool operator==(const Trend&, const Trend&) = default;
};

struct IndexBounds {
  double split_min = 0.0;
  double split_max = 0.0;
  double shrink_min = 0.0;
  double shrink_max = 0.0;
};

/// Shannon entropy in bits with 0 * log2(0) = 0. The result is clamped to
/// [0, log2(dist.size())].
double entropy(const Distribution& dist);

double max_entropy(std::size_t m);

double sigma(double eta, std::size_t m);

double split_index(double eta, const Distribution& dist, std::size_t m);
double shrink_index(double eta, const Distribution& dist, std::size_t m);
IndexBreakdown index_breakdown(double eta, const Distribution& dist,
                               std::size_t m);

// Analytic partial derivatives. The m-derivatives assume the even migration
// regime and accept a continuous m > 0.
double d_split_d_m(double eta, double m);
double d_shrink_d_m(double eta, double m);
double d_split_d_eta(double entropy_value);
double d_shrink_d_eta(double eta, double entropy_value, std::size_t m);

IndexBounds index_bounds(double eta, std::size_t m);

inline constexpr double kTrendStableAbs = 1e-12;
inline constexpr double kTrendBalancedRel = 1e-9;

Trend classify_trend(const IndexBreakdown& breakdown);

}  // namespace comdrift
