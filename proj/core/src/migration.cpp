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

#include "comdrift/migration.hpp"

#include <algorithm>
#include <string>

#include "comdrift/error.hpp"

namespace comdrift {

Snapshot::Snapshot(std::int64_t time,
                   std::span<const std::pair<MemberId, CommunityId>> assignment)
    : time_(time) {
  for (const auto& [member, community] : assignment) {
    if (!assignment_.emplace(member, community).second) {
      throw Error(ErrorCode::kDuplicateMember,
                  "member '" + member + "' appears twice at t=" +
                      std::to_string(time));
    }
  }
  index();
}

Snapshot::Snapshot(std::int64_t time, std::map<MemberId, CommunityId> assignment)
    : time_(time), assignment_(std::move(assignment)) {
  index();
}

void Snapshot::index() {
  communities_.clear();
  // assignment_ iterates in member order, so each member list stays sorted.
  for (const auto& [member, community] : assignment_) {
    communities_[community].push_back(member);
  }
}

std::vector<CommunityId> Snapshot::community_ids() const {
  std::vector<CommunityId> ids;
  ids.reserve(communities_.size());
  for (const auto& entry : communities_) ids.push_back(entry.first);
  return ids;
}

const CommunityId* Snapshot::find(const MemberId& member) const {
  auto it = assignment_.find(member);
  return it == assignment_.end() ? nullptr : &it->second;
}

std::string_view to_string(Direction direction) {
  return direction == Direction::kForward ? "forward" : "backward";
}

namespace {

MigrationProfile profile(const Snapshot& from, const Snapshot& to,
                         const CommunityId& community, Direction direction) {
  if (to.community_count() == 0) {
    throw Error(ErrorCode::kDegenerateTransition,
                "snapshot at t=" + std::to_string(to.time()) +
                    " has no communities");
  }
  auto it = from.communities().find(community);
  if (it == from.communities().end()) {
    throw Error(ErrorCode::kUnknownCommunity,
                "community '" + community + "' not present at t=" +
                    std::to_string(from.time()));
  }
  const std::vector<MemberId>& members = it->second;
  if (members.empty()) {
    throw Error(ErrorCode::kEmptyCommunity,
                "community '" + community + "' has no members");
  }

  MigrationProfile p;
  p.direction = direction;
  p.community = community;
  p.size = members.size();
  p.opposite_ids = to.community_ids();
  p.opposite_count = p.opposite_ids.size();
  p.counts.assign(p.opposite_count, 0);

  std::size_t gone = 0;
  for (const MemberId& member : members) {
    const CommunityId* target = to.find(member);
    if (target == nullptr) {
      ++gone;
      continue;
    }
    auto pos = std::lower_bound(p.opposite_ids.begin(), p.opposite_ids.end(),
                                *target);
    ++p.counts[static_cast<std::size_t>(pos - p.opposite_ids.begin())];
  }
  p.stayers = p.size - gone;
  p.leave_fraction = static_cast<double>(gone) / static_cast<double>(p.size);
  p.dist = Distribution::from_counts(p.counts);
  return p;
}

std::vector<ReportEntry> entries(const Snapshot& from, const Snapshot& to,
                                 Direction direction) {
  std::vector<ReportEntry> out;
  out.reserve(from.community_count());
  for (const auto& [community, members] : from.communities()) {
    const MigrationProfile p = profile(from, to, community, direction);
    ReportEntry e;
    e.community = community;
    e.size = p.size;
    e.breakdown = index_breakdown(p.leave_fraction, p.dist, p.opposite_count);
    e.trend = classify_trend(e.breakdown);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

MigrationProfile forward_profile(const Snapshot& prev, const Snapshot& next,
                                 const CommunityId& community) {
  return profile(prev, next, community, Direction::kForward);
}

MigrationProfile backward_profile(const Snapshot& prev, const Snapshot& next,
                                  const CommunityId& community) {
  return profile(next, prev, community, Direction::kBackward);
}

TransitionReport transition_report(const Snapshot& prev, const Snapshot& next) {
  if (prev.empty() || next.empty()) {
    throw Error(ErrorCode::kDegenerateTransition,
                "transition " + std::to_string(prev.time()) + " -> " +
                    std::to_string(next.time()) + " involves an empty snapshot");
  }
  if (next.time() <= prev.time()) {
    throw Error(ErrorCode::kNonIncreasingTime,
                "snapshot times must increase: " + std::to_string(prev.time()) +
                    " -> " + std::to_string(next.time()));
  }
  TransitionReport report;
  report.from_time = prev.time();
  report.to_time = next.time();
  report.m = next.community_count();
  report.n = prev.community_count();
  report.forward = entries(prev, next, Direction::kForward);
  report.backward = entries(next, prev, Direction::kBackward);
  return report;
}

std::vector<TransitionReport> analyze_timeline(
    std::span<const Snapshot> snapshots) {
  if (snapshots.size() < 2) {
    throw Error(ErrorCode::kTooFewSnapshots,
                "need at least two snapshots, got " +
                    std::to_string(snapshots.size()));
  }
  for (std::size_t i = 1; i < snapshots.size(); ++i) {
    if (snapshots[i].time() <= snapshots[i - 1].time()) {
      throw Error(ErrorCode::kNonIncreasingTime,
                  "snapshot times must increase: " +
                      std::to_string(snapshots[i - 1].time()) + " -> " +
                      std::to_string(snapshots[i].time()));
    }
  }
  std::vector<TransitionReport> reports;
  reports.reserve(snapshots.size() - 1);
  for (std::size_t i = 1; i < snapshots.size(); ++i) {
    reports.push_back(transition_report(snapshots[i - 1], snapshots[i]));
  }
  return reports;
}

}  // namespace comdrift
