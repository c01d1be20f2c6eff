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

#include "comdrift/indices.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "comdrift/error.hpp"

namespace comdrift {
namespace {

void require_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorCode::kEtaOutOfRange,
                "leave fraction must lie in [0, 1], got " + std::to_string(eta));
  }
}

void require_m(std::size_t m) {
  if (m < 1) throw Error(ErrorCode::kInvalidM, "community count must be >= 1");
}

void require_continuous_m(double m) {
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw Error(ErrorCode::kInvalidM,
                "community count must be > 0, got " + std::to_string(m));
  }
}

void require_shape(double eta, const Distribution& dist, std::size_t m) {
  require_eta(eta);
  require_m(m);
  if (!dist.empty() && dist.size() != m) {
    throw Error(ErrorCode::kLengthMismatch,
                "distribution has " + std::to_string(dist.size()) +
                    " weights but m = " + std::to_string(m));
  }
  if (dist.empty() && eta < 1.0) {
    throw Error(ErrorCode::kEmptyDistWithStayers,
                "empty distribution requires eta = 1");
  }
}

}  // namespace

Distribution::Distribution(std::vector<double> weights)
    : weights_(std::move(weights)) {
  double sum = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    const double w = weights_[j];
    if (!std::isfinite(w)) {
      throw Error(ErrorCode::kNonNormalized,
                  "weight " + std::to_string(j) + " is not finite");
    }
    if (w < 0.0) {
      throw Error(ErrorCode::kNegativeWeight,
                  "weight " + std::to_string(j) + " is negative");
    }
    sum += w;
  }
  if (weights_.empty()) return;
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::kNonNormalized,
                "weights sum to " + std::to_string(sum));
  }
  if (sum != 1.0) {
    for (double& w : weights_) w /= sum;
  }
}

Distribution Distribution::from_counts(std::span<const std::size_t> counts) {
  const std::size_t total =
      std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  Distribution dist;
  if (total == 0) return dist;
  dist.weights_.reserve(counts.size());
  for (std::size_t c : counts) {
    dist.weights_.push_back(static_cast<double>(c) / static_cast<double>(total));
  }
  return dist;
}

std::string_view to_string(TrendLabel label) {
  switch (label) {
    case TrendLabel::kSplitting: return "splitting";
    case TrendLabel::kShrinking: return "shrinking";
    case TrendLabel::kBalanced: return "balanced";
    case TrendLabel::kStable: return "stable";
  }
  return "stable";
}

TrendLabel parse_trend_label(std::string_view text) {
  if (text == "splitting") return TrendLabel::kSplitting;
  if (text == "shrinking") return TrendLabel::kShrinking;
  if (text == "balanced") return TrendLabel::kBalanced;
  if (text == "stable") return TrendLabel::kStable;
  throw Error(ErrorCode::kParseError,
              "unknown trend label '" + std::string(text) + "'");
}

double entropy(const Distribution& dist) {
  if (dist.empty()) return 0.0;
  double h = 0.0;
  for (double w : dist.weights()) {
    if (w > kZeroWeight) h -= w * std::log2(w);
  }
  const double cap = std::log2(static_cast<double>(dist.size()));
  return std::clamp(h, 0.0, cap);
}

double max_entropy(std::size_t m) {
  require_m(m);
  return std::log2(static_cast<double>(m));
}

double sigma(double eta, std::size_t m) {
  require_eta(eta);
  require_m(m);
  return m == 1 ? 0.5 * eta : 0.0;
}

double split_index(double eta, const Distribution& dist, std::size_t m) {
  require_shape(eta, dist, m);
  // Nobody stayed, so nothing can split.
  if (eta == 1.0) return 0.0;
  return (1.0 - eta) * entropy(dist);
}

double shrink_index(double eta, const Distribution& dist, std::size_t m) {
  const double split = split_index(eta, dist, m);
  return eta * (max_entropy(m) - split + sigma(eta, m));
}

IndexBreakdown index_breakdown(double eta, const Distribution& dist,
                               std::size_t m) {
  IndexBreakdown b;
  b.eta = eta;
  b.m = m;
  b.split = split_index(eta, dist, m);
  b.entropy = entropy(dist);
  b.max_entropy = max_entropy(m);
  b.sigma = sigma(eta, m);
  b.shrink = eta * (b.max_entropy - b.split + b.sigma);
  return b;
}

double d_split_d_m(double eta, double m) {
  require_eta(eta);
  require_continuous_m(m);
  return (1.0 - eta) / (m * std::numbers::ln2);
}

double d_shrink_d_m(double eta, double m) {
  require_eta(eta);
  require_continuous_m(m);
  return eta * eta / (m * std::numbers::ln2);
}

double d_split_d_eta(double entropy_value) {
  if (!(entropy_value >= 0.0)) {
    throw Error(ErrorCode::kNegativeEntropy,
                "entropy must be >= 0, got " + std::to_string(entropy_value));
  }
  return -entropy_value;
}

double d_shrink_d_eta(double eta, double entropy_value, std::size_t m) {
  require_eta(eta);
  const double h_max = max_entropy(m);
  if (!(entropy_value >= 0.0)) {
    throw Error(ErrorCode::kNegativeEntropy,
                "entropy must be >= 0, got " + std::to_string(entropy_value));
  }
  if (entropy_value > h_max + kNormalizationTolerance) {
    throw Error(ErrorCode::kEntropyExceedsMax,
                "entropy " + std::to_string(entropy_value) +
                    " exceeds log2(m) = " + std::to_string(h_max));
  }
  if (m == 1) return eta;
  return h_max - (1.0 - 2.0 * eta) * entropy_value;
}

IndexBounds index_bounds(double eta, std::size_t m) {
  require_eta(eta);
  const double h_max = max_entropy(m);
  IndexBounds bounds;
  bounds.split_min = 0.0;
  bounds.split_max = (1.0 - eta) * h_max;
  if (m == 1) {
    bounds.shrink_min = bounds.shrink_max = 0.5 * eta * eta;
  } else {
    bounds.shrink_min = eta * eta * h_max;
    bounds.shrink_max = eta * h_max;
  }
  return bounds;
}

Trend classify_trend(const IndexBreakdown& breakdown) {
  const double split = breakdown.split;
  const double shrink = breakdown.shrink;
  Trend trend{TrendLabel::kStable, split, shrink};
  if (std::abs(split) <= kTrendStableAbs && std::abs(shrink) <= kTrendStableAbs) {
    return trend;
  }
  const double scale = std::max(std::abs(split), std::abs(shrink));
  if (std::abs(split - shrink) <= kTrendBalancedRel * scale) {
    trend.label = TrendLabel::kBalanced;
  } else {
    trend.label = split > shrink ? TrendLabel::kSplitting : TrendLabel::kShrinking;
  }
  return trend;
}

}  // namespace comdrift
