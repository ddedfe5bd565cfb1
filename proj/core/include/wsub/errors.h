// Copyright 2026 The Authors.
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

#ifndef WSUB_ERRORS_H_
#define WSUB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace wsub {

// Malformed input: out-of-range ids, dimension mismatches, bad parameters.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::logic_error {
 public:
  explicit PreconditionError(const std::string& what)
      : std::logic_error(what) {}
};

// An exhaustive routine refuses an instance beyond its enumeration guard.
class SizeError : public std::length_error {
 public:
  explicit SizeError(const std::string& what) : std::length_error(what) {}
};

// Filesystem failure while writing results.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Broken internal invariant. Seeing one of these means a bug.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace wsub

#endif  // WSUB_ERRORS_H_
