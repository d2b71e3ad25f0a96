/*
 * Copyright 2026 The tunebench Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TUNEBENCH_SRC_ERRORS_HPP_
#define TUNEBENCH_SRC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace tunebench {

// Mirrors tb_status in the C header; values must stay in sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kParse = 2,
  kValidation = 3,
  kIo = 4,
  kAuth = 5,
  kNotFound = 6,
  kNetwork = 7,
  kTraining = 8,
  kInternal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tunebench

#endif  // TUNEBENCH_SRC_ERRORS_HPP_
