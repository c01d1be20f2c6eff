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

#include "comdrift/simulation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "comdrift/error.hpp"

namespace comdrift::sim {
namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected comdrift::Error";
  return ErrorCode::kParseError;
}

double sum_of(const Distribution& d) {
  return std::accumulate(d.weights().begin(), d.weights().end(), 0.0);
}

TEST(Distributions, Even) {
  EXPECT_EQ(even_distribution(4), Distribution({0.25, 0.25, 0.25, 0.25}));
  EXPECT_EQ(even_distribution(1), Distribution({1.0}));
  for (std::size_t m = 2; m <= 10; ++m) {
    EXPECT_NEAR(entropy(even_distribution(m)), std::log2(static_cast<double>(m)), 1e-12);
  }
  EXPECT_EQ(code_of([] { even_distribution(0); }), ErrorCode::kInvalidM);
}

TEST(Distributions, SingleTarget) {
  EXPECT_EQ(single_target_distribution(3, 2), Distribution({0.0, 1.0, 0.0}));
  for (std::size_t m = 1; m <= 8; ++m) {
    for (std::size_t target = 1; target <= m; ++target) {
      const Distribution d = single_target_distribution(m, target);
      EXPECT_EQ(entropy(d), 0.0);
      for (double eta : {0.0, 0.3, 0.9}) EXPECT_EQ(split_index(eta, d, m), 0.0);
    }
  }
  EXPECT_EQ(code_of([] { single_target_distribution(3, 0); }),
            ErrorCode::kIndexOutOfRange);
  EXPECT_EQ(code_of([] { single_target_distribution(3, 4); }),
            ErrorCode::kIndexOutOfRange);
}

TEST(Distributions, RandomIsDeterministicAndBounded) {
  EXPECT_EQ(random_distribution(7, 99), random_distribution(7, 99));
  EXPECT_NE(random_distribution(7, 99), random_distribution(7, 100));
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const std::size_t m = 2 + seed % 15;
    const Distribution d = random_distribution(m, seed);
    ASSERT_EQ(d.size(), m);
    ASSERT_NEAR(sum_of(d), 1.0, 1e-12);
    ASSERT_LE(entropy(d), max_entropy(m));
  }
}

TEST(Uniform01, StaysInOpenInterval) {
  std::mt19937_64 engine(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = uniform01(engine);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Uniform01, FrozenStream) {
  // mt19937_64 is fully specified; its 10000th output from the default seed
  // is 9981545732273789042.
  std::mt19937_64 engine;
  engine.discard(9999);
  EXPECT_EQ(engine(), 9981545732273789042ULL);
  std::mt19937_64 again(5489u);
  const double u = uniform01(again);
  EXPECT_EQ(u, (static_cast<double>(14514284786278117030ULL >> 11) + 0.5) * 0x1.0p-53);
}

TEST(Sweep, ClosedFormsPerMode) {
  const std::vector<double> grid{0.0, 0.25, 0.5, 1.0};
  auto even = sweep({8, 8}, grid, Mode::kEven, 0);
  ASSERT_EQ(even.size(), 4u);
  EXPECT_EQ(even[2].split, 1.5);
  EXPECT_EQ(even[2].shrink, 0.75);
  EXPECT_FALSE(even[2].seed.has_value());

  auto single = sweep({8, 8}, grid, Mode::kSingle, 0);
  EXPECT_EQ(single[2].split, 0.0);
  EXPECT_EQ(single[2].shrink, 1.5);

  for (Mode mode : {Mode::kEven, Mode::kSingle, Mode::kRandom}) {
    for (const SweepRow& row : sweep({1, 6}, grid, mode, 3)) {
      if (row.eta == 0.0) EXPECT_EQ(row.shrink, 0.0);
      const IndexBounds b = index_bounds(row.eta, row.m);
      EXPECT_GE(row.split, b.split_min - 1e-12);
      EXPECT_LE(row.split, b.split_max + 1e-12);
      EXPECT_GE(row.shrink, b.shrink_min - 1e-12);
      EXPECT_LE(row.shrink, b.shrink_max + 1e-12);
    }
  }
}

TEST(Sweep, RandomRowsCarryReproducibleSeeds) {
  const auto rows = sweep({2, 5}, eta_grid(4), Mode::kRandom, 7);
  ASSERT_EQ(rows.size(), 4u * 5u);
  for (const SweepRow& row : rows) {
    ASSERT_TRUE(row.seed.has_value());
    const Distribution d = random_distribution(row.m, *row.seed);
    EXPECT_EQ(row.split, split_index(row.eta, d, row.m));
    EXPECT_EQ(row.shrink, shrink_index(row.eta, d, row.m));
  }
  EXPECT_EQ(rows, sweep({2, 5}, eta_grid(4), Mode::kRandom, 7));
}

TEST(Sweep, InvalidRanges) {
  EXPECT_EQ(code_of([] { sweep({0, 3}, {0.5}, Mode::kEven, 0); }), ErrorCode::kInvalidRange);
  EXPECT_EQ(code_of([] { sweep({4, 3}, {0.5}, Mode::kEven, 0); }), ErrorCode::kInvalidRange);
  EXPECT_EQ(code_of([] { sweep({1, 3}, {}, Mode::kEven, 0); }), ErrorCode::kInvalidRange);
  EXPECT_EQ(code_of([] { sweep({1, 3}, {1.5}, Mode::kEven, 0); }), ErrorCode::kInvalidRange);
  EXPECT_EQ(code_of([] { eta_grid(0); }), ErrorCode::kInvalidRange);
  EXPECT_EQ(code_of([] { parse_mode("uniform"); }), ErrorCode::kInvalidRange);
}

TEST(EtaGrid, EvenlySpaced) {
  const auto g = eta_grid(20);
  ASSERT_EQ(g.size(), 21u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_EQ(g[1], 0.05);
}

TEST(GradientCheck, DefaultGridsPass) {
  const auto v = gradient_check(default_gradient_eta_grid(), default_gradient_m_grid());
  EXPECT_TRUE(v.empty()) << v.size() << " violations, first: "
                         << (v.empty() ? "" : v.front().check);
}

double broken_d_shrink_d_m(double eta, double m) { return eta / (m * std::log(2.0)); }

TEST(GradientCheck, DetectsCorruptedFormula) {
  DerivativeSet broken;
  broken.d_shrink_d_m = &broken_d_shrink_d_m;
  const auto v = gradient_check({0.3, 0.6}, {2, 4}, 1e-6, broken);
  ASSERT_FALSE(v.empty());
  for (const auto& violation : v) {
    EXPECT_EQ(violation.property, Property::kGradient);
    EXPECT_EQ(violation.check, "d_shrink_d_m");
  }
}

TEST(GradientCheck, SingleCommunityShrinkSlopeIsEta) {
  // Central difference of eta^2 / 2 at 0.3.
  const double h = 1e-6;
  const Distribution one({1.0});
  const double numeric = (shrink_index(0.3 + h, one, 1) - shrink_index(0.3 - h, one, 1)) / (2 * h);
  EXPECT_NEAR(numeric, 0.3, 1e-8);
  EXPECT_EQ(d_shrink_d_eta(0.3, 0.0, 1), 0.3);
}

TEST(GradientCheck, RejectsBadStep) {
  EXPECT_EQ(code_of([] { gradient_check({0.5}, {2}, 0.0); }), ErrorCode::kInvalidRange);
  EXPECT_EQ(code_of([] { gradient_check({0.5}, {2}, 1e-2); }), ErrorCode::kInvalidRange);
  EXPECT_EQ(code_of([] { gradient_check({0.0}, {2}, 1e-6); }), ErrorCode::kInvalidRange);
}

TEST(PropertySuite, NoViolations) {
  const auto v = property_suite(10000, 1);
  EXPECT_TRUE(v.empty()) << v.size() << " violations, first: "
                         << (v.empty() ? "" : v.front().check);
}

TEST(PropertySuite, OtherSeedsAndDeterminism) {
  for (std::uint64_t seed : {0ULL, 2ULL, 12345ULL, ~0ULL}) {
    EXPECT_TRUE(property_suite(2000, seed).empty()) << seed;
  }
  EXPECT_EQ(code_of([] { property_suite(0, 1); }), ErrorCode::kInvalidRange);
}

TEST(PropertySuite, ExtremesAtEvenAndSingleCommunity) {
  for (double eta : {0.1, 0.37, 0.8}) {
    for (std::size_t m : {2u, 3u, 7u}) {
      EXPECT_NEAR(split_index(eta, even_distribution(m), m),
                  (1.0 - eta) * std::log2(static_cast<double>(m)), 1e-12);
    }
    EXPECT_EQ(shrink_index(eta, even_distribution(1), 1), 0.5 * eta * eta);
  }
}

}  // namespace
}  // namespace comdrift::sim
