// Copyright 2026 The fibmahler Authors
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

namespace fibmahler {

// Standard exception types cover domain (std::domain_error), index
// (std::out_of_range) and dimension (std::overflow_error) failures. The
// types below name the failure modes that have no standard counterpart.

/// A computation was requested before the data it depends on was available.
class DependencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A bracketing root search failed to find a sign change.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two quantities could not be ordered at the working precision.
class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The prime pair does not satisfy the compatibility conditions required.
class CompatibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Reading or writing a file failed, or its contents were malformed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fibmahler
