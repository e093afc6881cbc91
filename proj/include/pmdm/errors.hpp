// Copyright 2026 The pmdm Authors
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

#ifndef PMDM_ERRORS_HPP_
#define PMDM_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pmdm {

// Position out of [1, l] or strings of unequal length.
class BoundsError : public std::out_of_range {
 public:
  explicit BoundsError(const std::string& what) : std::out_of_range(what) {}
};

// z exceeds the dictionary size, so no mask can reach it.
class InfeasibleThreshold : public std::runtime_error {
 public:
  explicit InfeasibleThreshold(const std::string& what)
      : std::runtime_error(what) {}
};

// A size guard on an exponential table or enumeration was hit.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: mixed lengths, wildcard glyph in the data, bad files.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// A caller broke a documented precondition (e.g. querying below z0).
class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace pmdm

#endif  // PMDM_ERRORS_HPP_
