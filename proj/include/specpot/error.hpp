/* Copyright 2026 The specpot Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
#ifndef SPECPOT_ERROR_HPP
#define SPECPOT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace specpot {

// Numeric values match the SPP_* codes of the C API.
enum class ErrorCode : int {
  InvalidArgument = 1,
  Precondition = 2,
  NotFound = 3,
  Parse = 4,
  Internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace specpot

#endif  // SPECPOT_ERROR_HPP
