// Copyright 2026 The aaceval Authors.
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

#ifndef AACEVAL_ERROR_H_
#define AACEVAL_ERROR_H_

#include <stdexcept>
#include <string>

namespace aaceval {

// Base class for every error raised by the toolkit. The subclasses map onto
// the command-line exit codes: usage (1), data/format (2), backend (3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid arguments or violated preconditions.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Malformed input files, inconsistent records, I/O failures.
class DataError : public Error {
 public:
  using Error::Error;
};

// A similarity or fluency backend failed (unreachable, timeout, non-200,
// malformed response).
class BackendError : public Error {
 public:
  using Error::Error;
};

}  // namespace aaceval

#endif  // AACEVAL_ERROR_H_
