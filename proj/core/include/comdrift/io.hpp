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

// Membership ingestion and report/sweep serialization.
//
// Membership CSV:   time,member,community   (header row optional, RFC 4180
//                   quoting, LF or CRLF line endings)
// Membership JSONL: {"t": <int>, "member": "<id>", "community": "<id>"}
//
// IDs are opaque UTF-8 byte strings and are never trimmed.

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "comdrift/migration.hpp"
#include "comdrift/simulation.hpp"

namespace comdrift::io {

enum class MembershipFormat { kCsv, kJsonl };
enum class ReportFormat { kCsv, kJson };

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kReportSchema = "comdrift-report";
inline constexpr std::string_view kReportCsvHeader =
    "from_time,to_time,direction,community,size,eta,m,entropy,max_entropy,"
    "sigma,split,shrink,trend";
inline constexpr std::string_view kSweepCsvHeader =
    "mode,m,eta,seed,split,shrink";

/// Parses membership records and groups them by time into snapshots sorted
/// by time. Throws Error with kParseError / kDuplicateMember (both carrying
/// the offending line) or kEmptyInput.
std::vector<Snapshot> parse_membership(std::istream& in, MembershipFormat format);
std::vector<Snapshot> parse_membership(std::string_view text,
                                       MembershipFormat format);

void write_membership(std::ostream& out, std::span<const Snapshot> snapshots,
                      MembershipFormat format);

/// Numbers are rendered with 12 significant digits in CSV. JSON keeps full
/// precision so that it round-trips through parse_report().
void write_report(std::ostream& out, std::span<const TransitionReport> reports,
                  ReportFormat format);
std::string write_report(std::span<const TransitionReport> reports,
                         ReportFormat format);

/// Reads the JSON report document. Throws Error(kParseError).
std::vector<TransitionReport> parse_report(std::string_view json_text);

void write_sweep(std::ostream& out, std::span<const sim::SweepRow> rows);

void write_violations(std::ostream& out,
                      std::span<const sim::PropertyViolation> violations);

/// printf "%.12g".
std::string format_number(double value);

}  // namespace comdrift::io
