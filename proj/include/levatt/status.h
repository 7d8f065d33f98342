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

#ifndef LEVATT_STATUS_H_
#define LEVATT_STATUS_H_

#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace levatt {

// Fine-grained failure reasons. Each maps onto a canonical absl code and is
// attached to the status as a payload so callers (notably the CLI exit-code
// mapping) can tell e.g. an empty file from a ragged row.
enum class ErrorKind {
  kUnknown,
  kUnreadableFile,
  kEmptyDataset,
  kRaggedRow,
  kInvalidCell,
  kSchemaMismatch,
  kEmptySyntheticSet,
  kDimensionMismatch,
  kNonpositiveRadius,
  kTooFewSyntheticRows,
  kDegenerateLabels,
  kNoContinuousColumns,
  kTooFewRows,
  kTargetNotContinuous,
  kNotNumericText,
  kAllMasked,
  kEmptyTraining,
  kRetryExhausted,
  kInvalidConfig,
  kIoFailure,
  kDecodeFailure,
};

std::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, std::string_view message);

// Returns kUnknown for OK statuses and statuses not created by MakeError.
ErrorKind GetErrorKind(const absl::Status& status);

// Prefixes the message while keeping the code and kind payload.
absl::Status Annotate(const absl::Status& status, std::string_view context);

}  // namespace levatt

#define LEVATT_CONCAT_IMPL(a, b) a##b
#define LEVATT_CONCAT(a, b) LEVATT_CONCAT_IMPL(a, b)

#define RETURN_IF_ERROR(expr)                \
  do {                                       \
    const absl::Status _status = (expr);     \
    if (!_status.ok()) return _status;       \
  } while (0)

#define ASSIGN_OR_RETURN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                          \
  if (!tmp.ok()) return tmp.status();         \
  lhs = std::move(*tmp)

#define ASSIGN_OR_RETURN(lhs, expr) \
  ASSIGN_OR_RETURN_IMPL(LEVATT_CONCAT(_statusor_, __LINE__), lhs, expr)

#endif  // LEVATT_STATUS_H_
