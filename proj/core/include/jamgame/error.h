// Copyright 2026 The jamgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JAMGAME_ERROR_H_
#define JAMGAME_ERROR_H_

#include <stdexcept>
#include <string>

namespace jamgame {

// Malformed or inconsistent input: bad graph literal, mismatched sizes,
// parameters outside their documented ranges.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An attack or recovery set that violates the action rules (overlapping
// strong/normal sets, edges outside the base graph).
class InvalidAction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested computation would exceed the configured enumeration budget.
class WorkBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant (ledger overdraft on a committed step, empty
// tie-break candidate list). Always a bug in the caller or in this library.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace jamgame

#endif  // JAMGAME_ERROR_H_
