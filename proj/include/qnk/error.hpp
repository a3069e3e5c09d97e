// Copyright 2026 The qnksim Authors
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

#include <stdexcept>
#include <string>

namespace qnk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Operands of a binary operation are in different forms (pure vs mixed).
class FormMismatchError : public Error {
   public:
    using Error::Error;
};

/// Dimension or layout mismatch between operands.
class ShapeError : public Error {
   public:
    using Error::Error;
};

class UnknownRegisterError : public Error {
   public:
    using Error::Error;
};

/// A quantity that must be normalized (axis, state, unitary) is not.
class NormalizationError : public Error {
   public:
    using Error::Error;
};

/// Renormalization of a (near) zero-probability branch.
class NumericalDegeneracyError : public Error {
   public:
    using Error::Error;
};

/// Register, enumeration or key-space size beyond the configured budget.
class ResourceLimitError : public Error {
   public:
    using Error::Error;
};

class PreconditionError : public Error {
   public:
    using Error::Error;
};

class ConfigError : public Error {
   public:
    using Error::Error;
};

}  // namespace qnk
