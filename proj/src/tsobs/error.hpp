// Copyright 2026 The tsobs Authors.
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

#ifndef TSOBS_ERROR_HPP_
#define TSOBS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace tsobs {

// Error categories. The numeric values of the ones surfaced by the CLI are
// also its exit codes.
enum class ErrorKind {
  kRuntime = 1,
  kConfig = 2,
  kUnsupportedInstance = 3,
  kInvalidArgument = 4,
  kDegenerateEvidence = 5,
  kUndefinedAtZero = 6,
  kIo = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorKind::kInvalidArgument, what);
}

}  // namespace tsobs

#endif  // TSOBS_ERROR_HPP_
