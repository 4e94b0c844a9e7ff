// Copyright 2026 The Hourglass Authors
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

#ifndef HOURGLASS_ERROR_HPP
#define HOURGLASS_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hourglass {

// Bad input: malformed files, out-of-range parameters, networks that cannot
// be analyzed. The CLI maps these to exit status 1.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

// A broken internal invariant (cyclic dependency network, path-count
// conservation failure, ...). The CLI maps these to exit status 2.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace hourglass

#endif // HOURGLASS_ERROR_HPP
