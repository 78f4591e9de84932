// Copyright 2026 The qemr Authors
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

#ifndef QEMR_ERROR_HPP_
#define QEMR_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace qemr {

/// Error categories surfaced both as C++ exceptions and as C API status codes.
enum class errc {
  invalid_argument,
  parse,
  precondition,
  singular_fit,
  capacity,
  numeric,
  unsupported_gate,
  io,
  internal,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

inline void require(bool condition, errc code, const std::string& message) {
  if (!condition) fail(code, message);
}

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::invalid_argument: return "invalid_argument";
    case errc::parse: return "parse";
    case errc::precondition: return "precondition";
    case errc::singular_fit: return "singular_fit";
    case errc::capacity: return "capacity";
    case errc::numeric: return "numeric";
    case errc::unsupported_gate: return "unsupported_gate";
    case errc::io: return "io";
    case errc::internal: return "internal";
  }
  return "unknown";
}

}  // namespace qemr

#endif  // QEMR_ERROR_HPP_
