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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "comdrift/indices.hpp"
#include "comdrift/io.hpp"
#include "comdrift/migration.hpp"
#include "comdrift/simulation.hpp"
#include "../oracles.hpp"

namespace {

using namespace comdrift;

constexpr double kClosedTol = 1e-12;
constexpr double kSlack = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double log2m(std::size_t m) { return std::log2(static_cast<double>(m)); }

std::string describe(double eta, std::size_t m) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "eta=%.4g m=%zu", eta, m);
  return buf;
}

// 1. Closed forms at the even and single-target extremes.
Outcome closed_forms() {
  Outcome o;
  for (std::size_t m : {1u, 2u, 4u, 8u, 16u}) {
    const Distribution even = sim::even_distribution(m);
    const Distribution single = sim::single_target_distribution(m, 1);
    for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double h = log2m(m);
      if (std::abs(split_index(eta, even, m) - (1 - eta) * h) > kClosedTol) {
        o.fail("even split " + describe(eta, m));
      }
      if (split_index(eta, single, m) != 0.0) o.fail("single split " + describe(eta, m));
      if (m > 1) {
        if (std::abs(shrink_index(eta, even, m) - eta * eta * h) > kClosedTol) {
          o.fail("even shrink " + describe(eta, m));
        }
        if (std::abs(shrink_index(eta, single, m) - eta * h) > kClosedTol) {
          o.fail("single shrink " + describe(eta, m));
        }
      } else {
        if (shrink_index(eta, even, 1) != 0.5 * eta * eta) {
          o.fail("m=1 shrink " + describe(eta, m));
        }
      }
    }
  }
  return o;
}

// 2. Strict increase in m under the even regime.
Outcome monotone_in_m() {
  Outcome o;
  for (double eta : {0.1, 0.5, 0.9}) {
    double split_prev = split_index(eta, sim::even_distribution(1), 1);
    double shrink_prev = shrink_index(eta, sim::even_distribution(1), 1);
    for (std::size_t m = 2; m <= 64; ++m) {
      const Distribution d = sim::even_distribution(m);
      const double s = split_index(eta, d, m);
      const double r = shrink_index(eta, d, m);
      if (!(s - split_prev > kSlack)) o.fail("split not increasing at " + describe(eta, m));
      if (!(r - shrink_prev > kSlack)) o.fail("shrink not increasing at " + describe(eta, m));
      split_prev = s;
      shrink_prev = r;
    }
  }
  return o;
}

// 3. Strict monotonicity in eta for random distributions.
Outcome monotone_in_eta() {
  Outcome o;
  std::size_t accepted = 0;
  std::uint64_t seed = 0;
  std::mt19937_64 pick(31);
  while (accepted < 1000) {
    const std::size_t m = 2 + pick() % 15;
    const Distribution d = sim::random_distribution(m, seed++);
    if (!(entropy(d) > 0.01)) continue;
    ++accepted;
    double split_prev = 0.0;
    double shrink_prev = 0.0;
    for (int k = 1; k <= 101; ++k) {
      const double eta = k / 101.0;
      const double s = split_index(eta, d, m);
      const double r = shrink_index(eta, d, m);
      if (k > 1) {
        if (!(split_prev - s > kSlack)) o.fail("split not decreasing at " + describe(eta, m));
        if (!(r - shrink_prev > kSlack)) o.fail("shrink not increasing at " + describe(eta, m));
      }
      split_prev = s;
      shrink_prev = r;
    }
  }
  return o;
}

// 4. Common range and index_bounds on random inputs.
Outcome common_range() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t m = 2 + rng() % 15;
    const double eta = sim::uniform01(rng);
    const Distribution d = sim::random_distribution(m, rng());
    const double s = split_index(eta, d, m);
    const double r = shrink_index(eta, d, m);
    const IndexBounds b = index_bounds(eta, m);
    const double h = log2m(m);
    auto within = [](double v, double lo, double hi) {
      return v >= lo - kClosedTol && v <= hi + kClosedTol;
    };
    if (!within(s, 0.0, h) || !within(r, 0.0, h)) o.fail("outside [0, log2 m] at " + describe(eta, m));
    if (!within(s, b.split_min, b.split_max)) o.fail("split outside bounds at " + describe(eta, m));
    if (!within(r, b.shrink_min, b.shrink_max)) o.fail("shrink outside bounds at " + describe(eta, m));
  }
  return o;
}

// 5. Analytic derivatives against central differences.
Outcome derivatives() {
  Outcome o;
  const auto v = sim::gradient_check(sim::default_gradient_eta_grid(), {1, 2, 4, 8}, 1e-6);
  for (const auto& violation : v) {
    o.fail(violation.check + " at " +
           describe(violation.inputs.at("eta"),
                    static_cast<std::size_t>(violation.inputs.at("m"))));
  }
  // The m = 1 eta-branch: slope of eta^2 / 2 is eta.
  const Distribution one({1.0});
  for (double eta : sim::default_gradient_eta_grid()) {
    const double h = 1e-6;
    const double numeric = (shrink_index(eta + h, one, 1) - shrink_index(eta - h, one, 1)) / (2 * h);
    const double analytic = d_shrink_d_eta(eta, 0.0, 1);
    if (std::abs(numeric - analytic) > 1e-5 * std::abs(analytic)) {
      o.fail("m=1 shrink slope at " + describe(eta, 1));
    }
  }
  return o;
}

// 6. Migration profiles against brute-force set intersection, plus duality.
Outcome migration_oracle() {
  Outcome o;
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = oracle::random_assignment(rng, 50, 6);
    const auto b = oracle::random_assignment(rng, 50, 6);
    const Snapshot prev(1, a);
    const Snapshot next(2, b);
    for (const CommunityId& c : prev.community_ids()) {
      const MigrationProfile p = forward_profile(prev, next, c);
      const oracle::BruteProfile expect = oracle::brute_profile(a, b, c);
      const std::vector<double> got(p.dist.weights().begin(), p.dist.weights().end());
      if (p.leave_fraction != expect.eta || got != expect.dist ||
          p.opposite_count != expect.m) {
        o.fail("forward profile mismatch for " + c + " in trial " + std::to_string(trial));
      }
    }
    for (const CommunityId& c : next.community_ids()) {
      MigrationProfile back = backward_profile(prev, next, c);
      const MigrationProfile fwd = forward_profile(next, prev, c);
      if (back.direction != Direction::kBackward) o.fail("backward direction tag");
      back.direction = Direction::kForward;
      if (!(back == fwd)) o.fail("duality broken for " + c + " in trial " + std::to_string(trial));
    }
  }
  return o;
}

// 7. End-to-end analyze on the four-member fixture.
Outcome end_to_end_fixture() {
  Outcome o;
  std::istringstream in;
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(
      {"analyze", "--input", std::string(COMDRIFT_FIXTURE_DIR) + "/four_member.csv"}, in,
      out, err);
  if (code != 0) {
    o.fail("exit " + std::to_string(code) + ": " + err.str());
    return o;
  }
  const long double h = oracle::entropy_bits({2.0 / 3.0, 1.0 / 3.0});
  const long double split = 0.75L * h;
  const long double shrink = 0.25L * (1.0L - split);
  const std::string want_split = io::format_number(static_cast<double>(split));
  const std::string want_shrink = io::format_number(static_cast<double>(shrink));
  if (want_split != "0.688721875541" || want_shrink != "0.0778195311148") {
    o.fail("oracle drifted: " + want_split + " " + want_shrink);
  }
  const std::string expected_row = "1,2,forward,X,4,0.25,2,";
  std::istringstream lines(out.str());
  bool found = false;
  for (std::string line; std::getline(lines, line);) {
    if (line.rfind(expected_row, 0) != 0) continue;
    found = true;
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    if (f.size() != 13 || f[10] != want_split || f[11] != want_shrink) {
      o.fail("row was: " + line);
    }
  }
  if (!found) o.fail("no forward row for X");
  return o;
}

// 8. Simulated curves: even and single rows equal the closed forms, random
// rows stay inside the envelope.
Outcome figure_envelope() {
  Outcome o;
  std::istringstream in;
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run({"simulate", "--mode", "all", "--seed", "1"}, in, out, err);
  if (code != 0) {
    o.fail("exit " + std::to_string(code) + ": " + err.str());
    return o;
  }
  auto fmt = [](double v) { return io::format_number(v); };
  auto rounded = [](double v) { return std::stod(io::format_number(v)); };

  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);  // header
  std::size_t counts[3] = {0, 0, 0};
  while (std::getline(lines, line)) {
    std::vector<std::string> f;
    std::istringstream ls(line);
    for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
    if (line.back() == ',') f.emplace_back();
    if (f.size() != 6) {
      o.fail("malformed row: " + line);
      continue;
    }
    const std::size_t m = std::stoul(f[1]);
    const double eta = std::stod(f[2]);
    const double h = log2m(m);
    const double even_split = (1 - eta) * h;
    const double even_shrink = m == 1 ? 0.5 * eta * eta : eta * eta * h;
    const double single_shrink = m == 1 ? 0.5 * eta * eta : eta * h;
    if (f[0] == "even") {
      ++counts[0];
      if (f[4] != fmt(even_split) || f[5] != fmt(even_shrink)) o.fail("even row: " + line);
    } else if (f[0] == "single") {
      ++counts[1];
      if (f[4] != fmt(0.0) || f[5] != fmt(single_shrink)) o.fail("single row: " + line);
    } else if (f[0] == "random") {
      ++counts[2];
      const double s = std::stod(f[4]);
      const double r = std::stod(f[5]);
      if (s < rounded(0.0) || s > rounded(even_split)) o.fail("random split escapes: " + line);
      if (r < rounded(even_shrink) || r > rounded(single_shrink)) {
        o.fail("random shrink escapes: " + line);
      }
      if (f[3].empty()) o.fail("random row without seed: " + line);
    } else {
      o.fail("unknown mode: " + line);
    }
  }
  if (counts[0] == 0 || counts[1] == 0 || counts[2] == 0) o.fail("missing a mode");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"C1 closed forms at even/single-target extremes (tol 1e-12)", closed_forms},
      {"C2 strict increase in m, eta in {0.1,0.5,0.9}, m=1..64", monotone_in_m},
      {"C3 strict monotonicity in eta, 1000 random distributions x 101 points",
       monotone_in_eta},
      {"C4 common range and index bounds, 10000 random inputs", common_range},
      {"C5 analytic derivatives vs central differences (step 1e-6, rel 1e-5)",
       derivatives},
      {"C6 migration profiles vs brute force + duality, 1000 snapshot pairs",
       migration_oracle},
      {"C7 analyze end-to-end on four-member fixture (12 digits)", end_to_end_fixture},
      {"C8 simulate curves on closed forms, random inside envelope", figure_envelope},
  };

  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] %s%s%s\n", o.pass ? "PASS" : "FAIL", c.name,
                o.pass ? "" : " -- ", o.detail.c_str());
    if (!o.pass) ++failures;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%zu/%zu criteria passed in %.2f s\n", criteria.size() - failures,
              criteria.size(), seconds);
  return failures == 0 ? 0 : 1;
}
