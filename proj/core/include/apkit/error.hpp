// Copyright 2026 The apkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef APKIT_ERROR_HPP_
#define APKIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace apkit {

/// Base class of all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live on different domains, or an operation is not defined on
/// the domain at hand (e.g. reflection on a grid that is not symmetric).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A window, translate or averaging set leaves the trustworthy part of a
/// finite, non-wrapping domain.
class SupportError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter value (non-positive spacing, p < 1, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace apkit

#endif  // APKIT_ERROR_HPP_
