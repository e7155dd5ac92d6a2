/*
 * Copyright 2026 The finset Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finset {

/// Default comparison tolerance for distances and set equality.
inline constexpr double kDefaultTolerance = 1e-9;

/// Default cap on the number of subsets an exhaustive enumeration may produce.
inline constexpr std::size_t kDefaultEnumerationCap = 2000;

enum class ErrorCode {
  invalid_argument,
  empty_set,
  capacity_exceeded,
  not_a_metric,
  not_ultrametric,
  precondition_violated,
  not_a_subset,
  enumeration_cap,
  level_range,
  not_injective,
  no_singleton,
  parse_error,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::empty_set: return "empty_set";
    case ErrorCode::capacity_exceeded: return "capacity_exceeded";
    case ErrorCode::not_a_metric: return "not_a_metric";
    case ErrorCode::not_ultrametric: return "not_ultrametric";
    case ErrorCode::precondition_violated: return "precondition_violated";
    case ErrorCode::not_a_subset: return "not_a_subset";
    case ErrorCode::enumeration_cap: return "enumeration_cap";
    case ErrorCode::level_range: return "level_range";
    case ErrorCode::not_injective: return "not_injective";
    case ErrorCode::no_singleton: return "no_singleton";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace finset
