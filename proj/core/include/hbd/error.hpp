// Copyright 2026 The hbdcover Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace hbd {

// Invalid arguments supplied by the caller (mixed resolutions, count
// mismatches, non-positive parameters).
class InvalidInputError : public std::invalid_argument {
 public:
  explicit InvalidInputError(const std::string& what)
      : std::invalid_argument(what) {}
};

class InvalidIndexError : public InvalidInputError {
 public:
  explicit InvalidIndexError(const std::string& what)
      : InvalidInputError(what) {}
};

// A computation would enumerate more covering parts than the configured
// budget allows.
class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(const std::string& what)
      : std::runtime_error(what) {}
};

// A forward shift would push support past the truncation length.
class TruncationOverflowError : public std::runtime_error {
 public:
  explicit TruncationOverflowError(const std::string& what)
      : std::runtime_error(what) {}
};

// A precondition of a construction does not hold (e.g. the HBD conditions
// fail for the requested gamma, or D is below rho / c^3).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace hbd
