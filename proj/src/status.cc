// Copyright 2026 The LevAtt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "levatt/status.h"

#include <array>
#include <string>

#include "absl/strings/cord.h"

namespace levatt {
namespace {

constexpr char kKindPayloadUrl[] = "levatt/error-kind";

struct KindInfo {
  ErrorKind kind;
  std::string_view name;
  absl::StatusCode code;
};

constexpr std::array kKinds = {
    KindInfo{ErrorKind::kUnknown, "Unknown", absl::StatusCode::kUnknown},
    KindInfo{ErrorKind::kUnreadableFile, "UnreadableFile",
             absl::StatusCode::kNotFound},
    KindInfo{ErrorKind::kEmptyDataset, "EmptyDataset",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kRaggedRow, "RaggedRow",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kInvalidCell, "InvalidCell",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kSchemaMismatch, "SchemaMismatch",
             absl::StatusCode::kFailedPrecondition},
    KindInfo{ErrorKind::kEmptySyntheticSet, "EmptySyntheticSet",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kDimensionMismatch, "DimensionMismatch",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kNonpositiveRadius, "NonpositiveRadius",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kTooFewSyntheticRows, "TooFewSyntheticRows",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kDegenerateLabels, "DegenerateLabels",
             absl::StatusCode::kFailedPrecondition},
    KindInfo{ErrorKind::kNoContinuousColumns, "NoContinuousColumns",
             absl::StatusCode::kFailedPrecondition},
    KindInfo{ErrorKind::kTooFewRows, "TooFewRows",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kTargetNotContinuous, "TargetNotContinuous",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kNotNumericText, "NotNumericText",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kAllMasked, "AllMasked",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kEmptyTraining, "EmptyTraining",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kRetryExhausted, "RetryExhausted",
             absl::StatusCode::kResourceExhausted},
    KindInfo{ErrorKind::kInvalidConfig, "InvalidConfig",
             absl::StatusCode::kInvalidArgument},
    KindInfo{ErrorKind::kIoFailure, "IoFailure",
             absl::StatusCode::kUnavailable},
    KindInfo{ErrorKind::kDecodeFailure, "DecodeFailure",
             absl::StatusCode::kDataLoss},
};

const KindInfo& Lookup(ErrorKind kind) {
  for (const KindInfo& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds[0];
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) { return Lookup(kind).name; }

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  const KindInfo& info = Lookup(kind);
  absl::Status status(info.code,
                      std::string(info.name) + ": " + std::string(message));
  status.SetPayload(kKindPayloadUrl,
                    absl::Cord(std::to_string(static_cast<int>(kind))));
  return status;
}

ErrorKind GetErrorKind(const absl::Status& status) {
  if (status.ok()) return ErrorKind::kUnknown;
  auto payload = status.GetPayload(kKindPayloadUrl);
  if (!payload.has_value()) return ErrorKind::kUnknown;
  const int raw = std::stoi(std::string(*payload));
  for (const KindInfo& info : kKinds) {
    if (static_cast<int>(info.kind) == raw) return info.kind;
  }
  return ErrorKind::kUnknown;
}

absl::Status Annotate(const absl::Status& status, std::string_view context) {
  if (status.ok()) return status;
  absl::Status out(status.code(), std::string(context) + ": " +
                                      std::string(status.message()));
  status.ForEachPayload(
      [&out](absl::string_view url, const absl::Cord& payload) {
        out.SetPayload(url, payload);
      });
  return out;
}

}  // namespace levatt
