// Copyright 2026 The aqored Authors.
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

#ifndef AQORED_ERRORS_HPP
#define AQORED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aqored {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments violate a documented precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A Gram matrix has a pivot remainder below the negative tolerance.
class NotPositiveSemidefinite : public Error {
 public:
  using Error::Error;
};

/// A model produced inconsistent level data.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Two spectra that should describe the same operator disagree in size.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// The annealing-time integral does not converge.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double s) : Error(what), s_(s) {}
  double s() const noexcept { return s_; }

 private:
  double s_;
};

}  // namespace aqored

#endif  // AQORED_ERRORS_HPP
