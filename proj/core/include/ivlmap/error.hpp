// Copyright 2026 The IVLMap Engine Authors
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

namespace ivlmap {

/// Base class of every error raised by the engine. The CLI maps these to
/// exit status 1 (domain error).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (files, shapes, configuration).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A requested landmark has no matching instance in the map.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// The ordinal in an attribute triple exceeds the number of candidates.
class IndexOutOfRangeError : public Error {
 public:
  using Error::Error;
};

/// No traversable route or target cell exists.
class UnreachableError : public Error {
 public:
  using Error::Error;
};

}  // namespace ivlmap
