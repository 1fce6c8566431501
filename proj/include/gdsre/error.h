// Copyright 2026 The gdsre Authors.
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

#ifndef GDSRE_ERROR_H_
#define GDSRE_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gdsre {

// Error categories. The CLI maps kIo to exit code 2 and everything else to 1.
enum class ErrorCode {
  kInvalidArgument,
  kNotFound,
  kDataError,
  kIo,
  kConflict,
  kFailedPrecondition,
  kUnauthorized,
};

std::string_view ErrorCodeName(ErrorCode code);

// Exception carrying a machine-readable code and the ids it concerns.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message,
        std::vector<std::string> offending_ids = {})
      : std::runtime_error(message),
        code_(code),
        offending_ids_(std::move(offending_ids)) {}

  ErrorCode code() const { return code_; }
  const std::vector<std::string> &offending_ids() const {
    return offending_ids_;
  }

 private:
  ErrorCode code_;
  std::vector<std::string> offending_ids_;
};

}  // namespace gdsre

#endif  // GDSRE_ERROR_H_
