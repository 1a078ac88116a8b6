// Copyright 2026 The eigenmoduli Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace emod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside an operation's domain (bad q/n/m, infeasible rank, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Operands whose shapes or bases do not fit together.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Numerical precondition violated (non-Hermitian input, bad normalization).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Input file that does not match its schema; the message names the JSON path.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace emod
