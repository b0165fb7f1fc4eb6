// Copyright 2026 The bosonlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOSONLAB_ERRORS_HPP
#define BOSONLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bosonlab {

// Bad input: malformed geometry, out-of-box sites, non-hermitian input, ...
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The exact algorithm would exceed a configured size limit. Never a silent
// approximation.
class UnsupportedSize : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Inputs outside the mathematical domain (e.g. supercritical fugacity).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A polymer table lookup for a support that was never tabulated.
class MissingWeight : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A stochastic engine could not produce a usable estimate.
class DiagnosticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bosonlab

#endif  // BOSONLAB_ERRORS_HPP
