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

#include "comdrift/io.hpp"

#include <charconv>
#include <cstdio>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "comdrift/error.hpp"

namespace comdrift::io {

using ordered_json = nlohmann::ordered_json;

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

namespace {

// ---------------------------------------------------------------------------
// Membership parsing

struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

class CsvReader {
 public:
  explicit CsvReader(std::string_view text) : text_(text) {}

  /// Next non-blank record, or nullopt at end of input.
  std::optional<Record> next() {
    while (pos_ < text_.size()) {
      Record rec;
      rec.line = line_;
      if (read_record(rec.fields)) return rec;
    }
    return std::nullopt;
  }

 private:
  // Returns false for a blank line.
  bool read_record(std::vector<std::string>& fields) {
    const std::size_t start_line = line_;
    std::string field;
    bool any = false;
    while (true) {
      if (pos_ >= text_.size()) {
        fields.push_back(std::move(field));
        return true;
      }
      char ch = text_[pos_];
      if (ch == '"' && field.empty()) {
        read_quoted(field, start_line);
        any = true;
        if (pos_ < text_.size() && text_[pos_] != ',' && !at_line_end()) {
          throw Error(ErrorCode::kParseError,
                      "unexpected character after closing quote", line_);
        }
        continue;
      }
      if (ch == ',') {
        fields.push_back(std::move(field));
        field.clear();
        any = true;
        ++pos_;
        continue;
      }
      if (at_line_end()) {
        consume_line_end();
        if (!any && field.empty()) return false;
        fields.push_back(std::move(field));
        return true;
      }
      field.push_back(ch);
      any = true;
      ++pos_;
    }
  }

  bool at_line_end() const {
    if (text_[pos_] == '\n') return true;
    return text_[pos_] == '\r' && pos_ + 1 < text_.size() &&
           text_[pos_ + 1] == '\n';
  }

  void consume_line_end() {
    if (text_[pos_] == '\r') ++pos_;
    ++pos_;
    ++line_;
  }

  void read_quoted(std::string& field, std::size_t start_line) {
    ++pos_;  // opening quote
    while (true) {
      if (pos_ >= text_.size()) {
        throw Error(ErrorCode::kParseError, "unterminated quoted field",
                    start_line);
      }
      char ch = text_[pos_++];
      if (ch == '"') {
        if (pos_ < text_.size() && text_[pos_] == '"') {
          field.push_back('"');
          ++pos_;
          continue;
        }
        return;
      }
      if (ch == '\n') ++line_;
      field.push_back(ch);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::int64_t parse_time(std::string_view text, std::size_t line) {
  std::int64_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParseError,
                "time must be an integer, got '" + std::string(text) + "'",
                line);
  }
  return value;
}

class SnapshotBuilder {
 public:
  void add(std::int64_t time, std::string member, std::string community,
           std::size_t line) {
    if (member.empty() || community.empty()) {
      throw Error(ErrorCode::kParseError, "member and community must be non-empty",
                  line);
    }
    auto& slot = by_time_[time];
    if (!slot.emplace(member, std::move(community)).second) {
      throw Error(ErrorCode::kDuplicateMember,
                  "member '" + member + "' listed twice at t=" +
                      std::to_string(time),
                  line);
    }
    ++records_;
  }

  std::vector<Snapshot> finish() {
    if (records_ == 0) throw Error(ErrorCode::kEmptyInput, "no membership records");
    std::vector<Snapshot> out;
    out.reserve(by_time_.size());
    for (auto& [time, assignment] : by_time_) {
      out.emplace_back(time, std::move(assignment));
    }
    return out;
  }

 private:
  std::map<std::int64_t, std::map<MemberId, CommunityId>> by_time_;
  std::size_t records_ = 0;
};

std::vector<Snapshot> parse_csv(std::string_view text) {
  CsvReader reader(text);
  SnapshotBuilder builder;
  bool first = true;
  while (auto rec = reader.next()) {
    auto& f = rec->fields;
    if (first) {
      first = false;
      if (f.size() == 3 && f[0] == "time" && f[1] == "member" &&
          f[2] == "community") {
        continue;
      }
    }
    if (f.size() != 3) {
      throw Error(ErrorCode::kParseError,
                  "expected 3 fields (time,member,community), got " +
                      std::to_string(f.size()),
                  rec->line);
    }
    builder.add(parse_time(f[0], rec->line), std::move(f[1]), std::move(f[2]),
                rec->line);
  }
  return builder.finish();
}

std::vector<Snapshot> parse_jsonl(std::string_view text) {
  SnapshotBuilder builder;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParseError, std::string("invalid JSON: ") + e.what(),
                  line_no);
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::kParseError, "record must be a JSON object",
                  line_no);
    }
    auto t = obj.find("t");
    auto member = obj.find("member");
    auto community = obj.find("community");
    if (t == obj.end() || !t->is_number_integer()) {
      throw Error(ErrorCode::kParseError, "missing integer field \"t\"", line_no);
    }
    if (member == obj.end() || !member->is_string() || community == obj.end() ||
        !community->is_string()) {
      throw Error(ErrorCode::kParseError,
                  "missing string field \"member\" or \"community\"", line_no);
    }
    if (t->is_number_unsigned() &&
        t->get<std::uint64_t>() >
            static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
      throw Error(ErrorCode::kParseError, "time out of range", line_no);
    }
    builder.add(t->get<std::int64_t>(), member->get<std::string>(),
                community->get<std::string>(), line_no);
  }
  return builder.finish();
}

void write_csv_field(std::ostream& out, std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    out << field;
    return;
  }
  out << '"';
  for (char ch : field) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

// ---------------------------------------------------------------------------
// Reports

ordered_json entry_to_json(const ReportEntry& e) {
  const IndexBreakdown& b = e.breakdown;
  ordered_json j;
  j["community"] = e.community;
  j["size"] = e.size;
  j["eta"] = b.eta;
  j["m"] = b.m;
  j["entropy"] = b.entropy;
  j["max_entropy"] = b.max_entropy;
  j["sigma"] = b.sigma;
  j["split"] = b.split;
  j["shrink"] = b.shrink;
  j["trend"] = std::string(to_string(e.trend.label));
  return j;
}

ordered_json reports_to_json(std::span<const TransitionReport> reports) {
  ordered_json doc;
  doc["schema"] = std::string(kReportSchema);
  doc["version"] = kReportSchemaVersion;
  ordered_json transitions = ordered_json::array();
  for (const TransitionReport& r : reports) {
    ordered_json t;
    t["from_time"] = r.from_time;
    t["to_time"] = r.to_time;
    t["m"] = r.m;
    t["n"] = r.n;
    ordered_json fwd = ordered_json::array();
    for (const auto& e : r.forward) fwd.push_back(entry_to_json(e));
    ordered_json bwd = ordered_json::array();
    for (const auto& e : r.backward) bwd.push_back(entry_to_json(e));
    t["forward"] = std::move(fwd);
    t["backward"] = std::move(bwd);
    transitions.push_back(std::move(t));
  }
  doc["transitions"] = std::move(transitions);
  return doc;
}

ReportEntry entry_from_json(const nlohmann::json& j) {
  ReportEntry e;
  e.community = j.at("community").get<std::string>();
  e.size = j.at("size").get<std::size_t>();
  IndexBreakdown& b = e.breakdown;
  b.eta = j.at("eta").get<double>();
  b.m = j.at("m").get<std::size_t>();
  b.entropy = j.at("entropy").get<double>();
  b.max_entropy = j.at("max_entropy").get<double>();
  b.sigma = j.at("sigma").get<double>();
  b.split = j.at("split").get<double>();
  b.shrink = j.at("shrink").get<double>();
  e.trend = Trend{parse_trend_label(j.at("trend").get<std::string>()), b.split,
                  b.shrink};
  return e;
}

void write_report_csv_rows(std::ostream& out, const TransitionReport& r,
                           Direction direction) {
  const auto& list = direction == Direction::kForward ? r.forward : r.backward;
  for (const ReportEntry& e : list) {
    const IndexBreakdown& b = e.breakdown;
    out << r.from_time << ',' << r.to_time << ',' << to_string(direction) << ',';
    write_csv_field(out, e.community);
    out << ',' << e.size << ',' << format_number(b.eta) << ',' << b.m << ','
        << format_number(b.entropy) << ',' << format_number(b.max_entropy) << ','
        << format_number(b.sigma) << ',' << format_number(b.split) << ','
        << format_number(b.shrink) << ',' << to_string(e.trend.label) << '\n';
  }
}

}  // namespace

std::vector<Snapshot> parse_membership(std::string_view text,
                                       MembershipFormat format) {
  return format == MembershipFormat::kCsv ? parse_csv(text) : parse_jsonl(text);
}

std::vector<Snapshot> parse_membership(std::istream& in, MembershipFormat format) {
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  return parse_membership(std::string_view(text), format);
}

void write_membership(std::ostream& out, std::span<const Snapshot> snapshots,
                      MembershipFormat format) {
  if (format == MembershipFormat::kCsv) out << "time,member,community\n";
  for (const Snapshot& s : snapshots) {
    for (const auto& [member, community] : s.assignment()) {
      if (format == MembershipFormat::kCsv) {
        out << s.time() << ',';
        write_csv_field(out, member);
        out << ',';
        write_csv_field(out, community);
        out << '\n';
      } else {
        ordered_json j;
        j["t"] = s.time();
        j["member"] = member;
        j["community"] = community;
        out << j.dump() << '\n';
      }
    }
  }
}

void write_report(std::ostream& out, std::span<const TransitionReport> reports,
                  ReportFormat format) {
  if (format == ReportFormat::kJson) {
    out << reports_to_json(reports).dump(2) << '\n';
    return;
  }
  out << kReportCsvHeader << '\n';
  for (const TransitionReport& r : reports) {
    write_report_csv_rows(out, r, Direction::kForward);
    write_report_csv_rows(out, r, Direction::kBackward);
  }
}

std::string write_report(std::span<const TransitionReport> reports,
                         ReportFormat format) {
  std::ostringstream out;
  write_report(out, reports, format);
  return out.str();
}

std::vector<TransitionReport> parse_report(std::string_view json_text) {
  try {
    const nlohmann::json doc = nlohmann::json::parse(json_text);
    if (doc.at("schema").get<std::string>() != kReportSchema) {
      throw Error(ErrorCode::kParseError, "not a comdrift report document");
    }
    if (doc.at("version").get<int>() != kReportSchemaVersion) {
      throw Error(ErrorCode::kParseError, "unsupported report schema version");
    }
    std::vector<TransitionReport> out;
    for (const auto& t : doc.at("transitions")) {
      TransitionReport r;
      r.from_time = t.at("from_time").get<std::int64_t>();
      r.to_time = t.at("to_time").get<std::int64_t>();
      r.m = t.at("m").get<std::size_t>();
      r.n = t.at("n").get<std::size_t>();
      for (const auto& e : t.at("forward")) r.forward.push_back(entry_from_json(e));
      for (const auto& e : t.at("backward")) {
        r.backward.push_back(entry_from_json(e));
      }
      out.push_back(std::move(r));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("invalid report: ") + e.what());
  }
}

void write_sweep(std::ostream& out, std::span<const sim::SweepRow> rows) {
  out << kSweepCsvHeader << '\n';
  for (const sim::SweepRow& row : rows) {
    out << sim::to_string(row.mode) << ',' << row.m << ','
        << format_number(row.eta) << ',';
    if (row.seed) out << *row.seed;
    out << ',' << format_number(row.split) << ',' << format_number(row.shrink)
        << '\n';
  }
}

void write_violations(std::ostream& out,
                      std::span<const sim::PropertyViolation> violations) {
  ordered_json list = ordered_json::array();
  for (const auto& v : violations) {
    ordered_json j;
    j["property"] = std::string(sim::to_string(v.property));
    j["check"] = v.check;
    ordered_json inputs = ordered_json::object();
    for (const auto& [key, value] : v.inputs) inputs[key] = value;
    j["inputs"] = std::move(inputs);
    j["weights"] = v.weights;
    j["observed"] = v.observed;
    j["expected"] = v.expected;
    list.push_back(std::move(j));
  }
  ordered_json doc;
  doc["violation_count"] = violations.size();
  doc["violations"] = std::move(list);
  out << doc.dump(2) << '\n';
}

}  // namespace comdrift::io
