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

#include "comdrift/error.hpp"

namespace comdrift {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonNormalized: return "NonNormalized";
    case ErrorCode::kNegativeWeight: return "NegativeWeight";
    case ErrorCode::kInvalidM: return "InvalidM";
    case ErrorCode::kEtaOutOfRange: return "EtaOutOfRange";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kEmptyDistWithStayers: return "EmptyDistWithStayers";
    case ErrorCode::kNegativeEntropy: return "NegativeEntropy";
    case ErrorCode::kEntropyExceedsMax: return "EntropyExceedsMax";
    case ErrorCode::kUnknownCommunity: return "UnknownCommunity";
    case ErrorCode::kEmptyCommunity: return "EmptyCommunity";
    case ErrorCode::kDegenerateTransition: return "DegenerateTransition";
    case ErrorCode::kNonIncreasingTime: return "NonIncreasingTime";
    case ErrorCode::kTooFewSnapshots: return "TooFewSnapshots";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateMember: return "DuplicateMember";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kInvalidRange: return "InvalidRange";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     std::optional<std::size_t> line) {
  std::string out(to_string(code));
  if (line) out += " at line " + std::to_string(*line);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, message, line)),
      code_(code),
      line_(line) {}

}  // namespace comdrift
