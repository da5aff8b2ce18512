// Copyright 2026 The qhist Authors
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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qhist {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation (index out of range, a >= b, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A constructed object fails its structural checks (non-unitary gate, non-bijective map,
/// malformed truth table or program).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A size or level limit would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An operation's precondition on its input state does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Invalid scenario or grid configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Size bounds shared by the CV backends.
struct Limits {
  int max_level = 24;
  // Upper bound on stored amplitudes in one dense table (rows x cells).
  std::int64_t max_entries = std::int64_t{1} << 25;
};

}  // namespace qhist
