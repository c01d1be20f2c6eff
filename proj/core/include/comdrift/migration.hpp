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

// Diffing consecutive community snapshots into migration profiles.

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "comdrift/indices.hpp"

namespace comdrift {

using MemberId = std::string;
using CommunityId = std::string;

/// Partition of members into communities at one time step. Immutable.
class Snapshot {
 public:
  Snapshot() = default;

  /// Throws Error(kDuplicateMember) if a member is listed twice.
  Snapshot(std::int64_t time,
           std::span<const std::pair<MemberId, CommunityId>> assignment);
  Snapshot(std::int64_t time, std::map<MemberId, CommunityId> assignment);

  std::int64_t time() const noexcept { return time_; }
  const std::map<MemberId, CommunityId>& assignment() const noexcept {
    return assignment_;
  }
  /// Community -> sorted members.
  const std::map<CommunityId, std::vector<MemberId>>& communities()
      const noexcept {
    return communities_;
  }
  std::vector<CommunityId> community_ids() const;
  std::size_t community_count() const noexcept { return communities_.size(); }
  std::size_t member_count() const noexcept { return assignment_.size(); }
  bool empty() const noexcept { return assignment_.empty(); }

  /// Community of `member`, or nullptr if absent.
  const CommunityId* find(const MemberId& member) const;

  friend bool operator==(const Snapshot& a, const Snapshot& b) {
    return a.time_ == b.time_ && a.assignment_ == b.assignment_;
  }

 private:
  void index();

  std::int64_t time_ = 0;
  std::map<MemberId, CommunityId> assignment_;
  std::map<CommunityId, std::vector<MemberId>> communities_;
};

enum class Direction { kForward, kBackward };

std::string_view to_string(Direction direction);

/// Where one community's members went (forward) or came from (backward).
struct MigrationProfile {
  Direction direction = Direction::kForward;
  CommunityId community;
  std::size_t size = 0;
  /// Leavers (forward) or newcomers (backward) over size.
  double leave_fraction = 0.0;
  /// Over `opposite_ids`, normalized over members present on both sides.
  Distribution dist;
  /// Sorted IDs of every community on the opposite side.
  std::vector<CommunityId> opposite_ids;
  std::size_t opposite_count = 0;
  /// Members present on both sides, and per-opposite-community counts.
  std::size_t stayers = 0;
  std::vector<std::size_t> counts;

  friend bool operator==(const MigrationProfile&,
                         const MigrationProfile&) = default;
};

MigrationProfile forward_profile(const Snapshot& prev, const Snapshot& next,
                                 const CommunityId& community);
MigrationProfile backward_profile(const Snapshot& prev, const Snapshot& next,
                                  const CommunityId& community);

struct ReportEntry {
  CommunityId community;
  std::size_t size = 0;
  IndexBreakdown breakdown;
  Trend trend;

  friend bool operator==(const ReportEntry&, const ReportEntry&) = default;
};

/// Forward entries carry split/shrink, backward entries merge/expand.
struct TransitionReport {
  std::int64_t from_time = 0;
  std::int64_t to_time = 0;
  std::size_t m = 0;  // communities at to_time
  std::size_t n = 0;  // communities at from_time
  std::vector<ReportEntry> forward;
  std::vector<ReportEntry> backward;

  friend bool operator==(const TransitionReport&,
                         const TransitionReport&) = default;
};

TransitionReport transition_report(const Snapshot& prev, const Snapshot& next);

std::vector<TransitionReport> analyze_timeline(
    std::span<const Snapshot> snapshots);

}  // namespace comdrift
