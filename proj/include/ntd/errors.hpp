// ntd/errors.hpp

// Copyright 2026  The ntd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef NTD_ERRORS_HPP_
#define NTD_ERRORS_HPP_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace ntd {

// Bad shapes, modes, ranges or flags. CLI exit code 2.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed input files. Carries the 1-based line number when known.
// CLI exit code 3.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line = 0)
      : std::runtime_error(line ? message + " (line " + std::to_string(line) +
                                      ")"
                                : message),
        message_(message),
        line_(line) {}
  std::size_t line() const { return line_; }
  // Same error with `prefix` (usually a file name) put in front.
  ParseError with_context(const std::string& prefix) const {
    return ParseError(prefix + ": " + message_, line_);
  }

 private:
  std::string message_;
  std::size_t line_;
};

// Values outside the domain of a divergence or update (zero denominators,
// non-finite losses). `iteration` is set when raised from inside a solver run.
// CLI exit code 4.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what,
                       std::optional<std::size_t> iteration = std::nullopt)
      : std::domain_error(what), iteration_(iteration) {}
  std::optional<std::size_t> iteration() const { return iteration_; }

 private:
  std::optional<std::size_t> iteration_;
};

}  // namespace ntd

#endif  // NTD_ERRORS_HPP_
