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

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "comdrift/error.hpp"

namespace comdrift::sim {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kEven: return "even";
    case Mode::kSingle: return "single";
    case Mode::kRandom: return "random";
  }
  return "even";
}

Mode parse_mode(std::string_view text) {
  if (text == "even") return Mode::kEven;
  if (text == "single") return Mode::kSingle;
  if (text == "random") return Mode::kRandom;
  throw Error(ErrorCode::kInvalidRange,
              "unknown distribution mode '" + std::string(text) + "'");
}

std::string_view to_string(Property property) {
  switch (property) {
    case Property::kP1: return "P1";
    case Property::kP2: return "P2";
    case Property::kP3: return "P3";
    case Property::kP4: return "P4";
    case Property::kRange: return "range";
    case Property::kGradient: return "gradient";
  }
  return "range";
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

Distribution even_distribution(std::size_t m) {
  if (m < 1) throw Error(ErrorCode::kInvalidM, "community count must be >= 1");
  return Distribution(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

Distribution single_target_distribution(std::size_t m, std::size_t target) {
  if (m < 1) throw Error(ErrorCode::kInvalidM, "community count must be >= 1");
  if (target < 1 || target > m) {
    throw Error(ErrorCode::kIndexOutOfRange,
                "target " + std::to_string(target) + " outside 1.." +
                    std::to_string(m));
  }
  std::vector<double> w(m, 0.0);
  w[target - 1] = 1.0;
  return Distribution(std::move(w));
}

namespace {

std::vector<double> normalized(std::vector<double> w) {
  double sum = 0.0;
  for (double x : w) sum += x;
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace

Distribution random_distribution(std::size_t m, std::uint64_t seed) {
  if (m < 1) throw Error(ErrorCode::kInvalidM, "community count must be >= 1");
  std::mt19937_64 engine(seed);
  std::vector<double> w(m);
  for (double& x : w) x = uniform01(engine);
  return Distribution(normalized(std::move(w)));
}

std::vector<double> eta_grid(std::size_t steps) {
  if (steps < 1) throw Error(ErrorCode::kInvalidRange, "eta grid needs >= 1 step");
  std::vector<double> grid(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(steps);
  }
  return grid;
}

std::vector<SweepRow> sweep(MRange m_range, const std::vector<double>& eta_grid,
                            Mode mode, std::uint64_t seed) {
  if (m_range.first < 1 || m_range.last < m_range.first) {
    throw Error(ErrorCode::kInvalidRange,
                "m range must satisfy 1 <= first <= last");
  }
  if (eta_grid.empty()) throw Error(ErrorCode::kInvalidRange, "empty eta grid");
  for (double eta : eta_grid) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw Error(ErrorCode::kInvalidRange,
                  "eta grid value outside [0, 1]: " + std::to_string(eta));
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve((m_range.last - m_range.first + 1) * eta_grid.size());
  for (std::size_t m = m_range.first; m <= m_range.last; ++m) {
    std::optional<std::uint64_t> row_seed;
    Distribution dist;
    switch (mode) {
      case Mode::kEven: dist = even_distribution(m); break;
      case Mode::kSingle: dist = single_target_distribution(m, 1); break;
      case Mode::kRandom:
        row_seed = derive_seed(seed, m);
        dist = random_distribution(m, *row_seed);
        break;
    }
    for (double eta : eta_grid) {
      rows.push_back(SweepRow{mode, m, eta, row_seed, split_index(eta, dist, m),
                              shrink_index(eta, dist, m)});
    }
  }
  return rows;
}

std::vector<double> default_gradient_eta_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<std::size_t> default_gradient_m_grid() { return {1, 2, 4, 8}; }

namespace {

// Even-regime indices with m continuous. sigma does not depend on m, so it
// drops out of the m-derivative and is omitted here.
double even_split(double eta, double m) { return (1.0 - eta) * std::log2(m); }
double even_shrink(double eta, double m) {
  return eta * (std::log2(m) - even_split(eta, m));
}

bool derivative_matches(double numeric, double analytic) {
  const double diff = std::abs(numeric - analytic);
  const double scale = std::max(std::abs(numeric), std::abs(analytic));
  return diff <= kGradientRelTol * scale || diff <= kClosedFormTol;
}

std::vector<double> to_vector(const Distribution& d) {
  return {d.weights().begin(), d.weights().end()};
}

}  // namespace

std::vector<PropertyViolation> gradient_check(
    const std::vector<double>& eta_grid, const std::vector<std::size_t>& m_grid,
    double step, const DerivativeSet& derivatives) {
  if (!(step > 0.0 && step <= 1e-3)) {
    throw Error(ErrorCode::kInvalidRange,
                "gradient step must lie in (0, 1e-3], got " +
                    std::to_string(step));
  }
  for (double eta : eta_grid) {
    if (!(eta - step >= 0.0 && eta + step <= 1.0)) {
      throw Error(ErrorCode::kInvalidRange,
                  "eta " + std::to_string(eta) +
                      " too close to the boundary for a central difference");
    }
  }
  for (std::size_t m : m_grid) {
    if (m < 1) throw Error(ErrorCode::kInvalidRange, "m grid value must be >= 1");
  }

  std::vector<PropertyViolation> out;
  auto compare = [&](std::string check, double eta, std::size_t m,
                     double numeric, double analytic,
                     std::vector<double> weights) {
    if (derivative_matches(numeric, analytic)) return;
    PropertyViolation v;
    v.property = Property::kGradient;
    v.check = std::move(check);
    v.inputs = {{"eta", eta}, {"m", static_cast<double>(m)}, {"step", step}};
    v.weights = std::move(weights);
    v.observed = analytic;
    v.expected = numeric;
    out.push_back(std::move(v));
  };

  const double h = step;
  for (std::size_t m : m_grid) {
    const double mc = static_cast<double>(m);
    std::vector<Distribution> dists{even_distribution(m)};
    if (m > 1) dists.push_back(single_target_distribution(m, 1));

    for (double eta : eta_grid) {
      compare("d_split_d_m", eta, m,
              (even_split(eta, mc + h) - even_split(eta, mc - h)) / (2 * h),
              derivatives.d_split_d_m(eta, mc), {});
      compare("d_shrink_d_m", eta, m,
              (even_shrink(eta, mc + h) - even_shrink(eta, mc - h)) / (2 * h),
              derivatives.d_shrink_d_m(eta, mc), {});

      for (const Distribution& d : dists) {
        const double h_value = entropy(d);
        compare("d_split_d_eta", eta, m,
                (split_index(eta + h, d, m) - split_index(eta - h, d, m)) /
                    (2 * h),
                derivatives.d_split_d_eta(h_value), to_vector(d));
        compare("d_shrink_d_eta", eta, m,
                (shrink_index(eta + h, d, m) - shrink_index(eta - h, d, m)) /
                    (2 * h),
                derivatives.d_shrink_d_eta(eta, h_value, m), to_vector(d));
      }
    }
  }
  return out;
}

namespace {

constexpr std::size_t kMaxTrialM = 16;
constexpr std::size_t kEtaSweepPoints = 101;
constexpr double kMinP2Entropy = 1e-6;

class TrialChecker {
 public:
  TrialChecker(std::size_t trial, double eta, std::size_t m,
               const Distribution& dist, std::vector<PropertyViolation>& out)
      : trial_(trial), eta_(eta), m_(m), dist_(dist), out_(out) {}

  void fail(Property p, std::string check, double observed, double expected,
            std::map<std::string, double> extra = {}) {
    PropertyViolation v;
    v.property = p;
    v.check = std::move(check);
    v.inputs = {{"trial", static_cast<double>(trial_)},
                {"eta", eta_},
                {"m", static_cast<double>(m_)}};
    v.inputs.merge(extra);
    v.weights = to_vector(dist_);
    v.observed = observed;
    v.expected = expected;
    out_.push_back(std::move(v));
  }

  void expect_near(Property p, std::string check, double observed,
                   double expected) {
    if (std::abs(observed - expected) > kClosedFormTol) {
      fail(p, std::move(check), observed, expected);
    }
  }

  void expect_exact(Property p, std::string check, double observed,
                    double expected) {
    if (observed != expected) fail(p, std::move(check), observed, expected);
  }

  void expect_within(Property p, std::string check, double value, double lo,
                     double hi) {
    if (value < lo - kClosedFormTol) fail(p, check + " (below)", value, lo);
    if (value > hi + kClosedFormTol) fail(p, check + " (above)", value, hi);
  }

 private:
  std::size_t trial_;
  double eta_;
  std::size_t m_;
  const Distribution& dist_;
  std::vector<PropertyViolation>& out_;
};

Distribution draw_distribution(std::size_t m, std::mt19937_64& engine) {
  std::vector<double> w(m);
  for (double& x : w) x = uniform01(engine);
  // A quarter of the trials use sparse distributions that leave some
  // communities without members.
  if (engine() % 4 == 0) {
    const std::size_t keep = engine() % m;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != keep && engine() % 2 == 0) w[j] = 0.0;
    }
  }
  return Distribution(normalized(std::move(w)));
}

}  // namespace

std::vector<PropertyViolation> property_suite(std::size_t trials,
                                              std::uint64_t seed) {
  if (trials == 0) throw Error(ErrorCode::kInvalidRange, "trials must be >= 1");

  std::vector<PropertyViolation> out;
  for (std::size_t k = 0; k < trials; ++k) {
    std::mt19937_64 engine(derive_seed(seed, k));
    const std::size_t m = 1 + engine() % kMaxTrialM;
    double eta = uniform01(engine);
    switch (engine() % 20) {
      case 0: eta = 0.0; break;
      case 1: eta = 1.0; break;
      default: break;
    }
    const Distribution dist = draw_distribution(m, engine);
    const std::size_t target = 1 + engine() % m;
    const Distribution even = even_distribution(m);
    const Distribution single = single_target_distribution(m, target);
    const double h_max = max_entropy(m);

    TrialChecker c(k, eta, m, dist, out);

    const double split = split_index(eta, dist, m);
    const double shrink = shrink_index(eta, dist, m);
    const double split_even = split_index(eta, even, m);
    const double shrink_even = shrink_index(eta, even, m);
    const double split_single = split_index(eta, single, m);
    const double shrink_single = shrink_index(eta, single, m);

    // Monotonic increase in m under the even regime.
    if (eta > 0.0 && eta < 1.0) {
      const Distribution even_next = even_distribution(m + 1);
      const double split_next = split_index(eta, even_next, m + 1);
      const double shrink_next = shrink_index(eta, even_next, m + 1);
      if (!(split_next - split_even > kMonotoneSlack)) {
        c.fail(Property::kP1, "split increases with m", split_next, split_even);
      }
      if (!(shrink_next - shrink_even > kMonotoneSlack)) {
        c.fail(Property::kP1, "shrink increases with m", shrink_next,
               shrink_even);
      }
    }

    // Monotonic in eta for a fixed distribution with positive entropy.
    if (m > 1 && entropy(dist) > kMinP2Entropy) {
      double split_prev = 0.0;
      double shrink_prev = 0.0;
      bool split_ok = true;
      bool shrink_ok = true;
      for (std::size_t i = 1; i <= kEtaSweepPoints; ++i) {
        const double e =
            static_cast<double>(i) / static_cast<double>(kEtaSweepPoints);
        const double s = split_index(e, dist, m);
        const double r = shrink_index(e, dist, m);
        if (i > 1) {
          if (split_ok && !(split_prev - s > kMonotoneSlack)) {
            c.fail(Property::kP2, "split decreases with eta", s, split_prev,
                   {{"eta_probe", e}});
            split_ok = false;
          }
          if (shrink_ok && !(r - shrink_prev > kMonotoneSlack)) {
            c.fail(Property::kP2, "shrink increases with eta", r, shrink_prev,
                   {{"eta_probe", e}});
            shrink_ok = false;
          }
        }
        split_prev = s;
        shrink_prev = r;
      }
    }

    // Split extremes.
    c.expect_within(Property::kP3, "split within [0, (1-eta) log2 m]", split,
                    0.0, (1.0 - eta) * h_max);
    c.expect_near(Property::kP3, "even split is maximal", split_even,
                  (1.0 - eta) * h_max);
    c.expect_exact(Property::kP3, "single-target split is zero", split_single,
                   0.0);
    if (m == 1) c.expect_exact(Property::kP3, "m=1 split is zero", split, 0.0);
    if (eta == 1.0) {
      c.expect_exact(Property::kP3, "eta=1 split is zero", split, 0.0);
    }

    // Shrink extremes.
    if (m > 1) {
      c.expect_within(Property::kP4, "shrink within [eta^2, eta] log2 m",
                      shrink, eta * eta * h_max, eta * h_max);
      c.expect_near(Property::kP4, "single-target shrink is maximal",
                    shrink_single, eta * h_max);
      if (shrink > shrink_single + kClosedFormTol) {
        c.fail(Property::kP4, "shrink peaks where split is minimal", shrink,
               shrink_single);
      }
      c.expect_near(Property::kP4, "even shrink is minimal", shrink_even,
                    eta * eta * h_max);
    } else {
      c.expect_exact(Property::kP4, "m=1 shrink is eta^2/2", shrink,
                     0.5 * eta * eta);
    }
    if (eta == 0.0) {
      c.expect_exact(Property::kP4, "eta=0 shrink is zero", shrink, 0.0);
    }

    // Common range.
    if (m > 1) {
      const IndexBounds b = index_bounds(eta, m);
      c.expect_within(Property::kRange, "split in [0, log2 m]", split, 0.0,
                      h_max);
      c.expect_within(Property::kRange, "shrink in [0, log2 m]", shrink, 0.0,
                      h_max);
      c.expect_within(Property::kRange, "split within index_bounds", split,
                      b.split_min, b.split_max);
      c.expect_within(Property::kRange, "shrink within index_bounds", shrink,
                      b.shrink_min, b.shrink_max);
    }
  }
  return out;
}

}  // namespace comdrift::sim
