/* Copyright 2026 The percolab Authors.
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

namespace percolab {

// Base of every error thrown by the library. The CLI maps subclasses onto
// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument or violated precondition on the caller's side.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A region operation that needs a finite (or rectangular) region got
// something else.
class UnsupportedRegionError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// An exact-oracle precondition (e.g. event monotonicity) failed.
class PreconditionError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// A configured memory or enumeration cap would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Exploration stopped on its budget before the question was answered.
class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

// Estimates do not carry enough signal for the requested analysis.
class InsufficientSignalError : public Error {
 public:
  using Error::Error;
};

// Statistical decision could not be made at the given sample size.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

}  // namespace percolab
