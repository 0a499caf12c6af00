// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 viralkit contributors

#pragma once

#include <stdexcept>
#include <string>

namespace viralkit {

/// Base of every error the library throws. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing or unreadable/unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input record. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A record or argument violates a documented invariant or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A tweet points at an author that is not in the author table.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

/// Not enough items to satisfy a sampling request.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A metric was asked for data the caller did not provide (e.g. timeline stats).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Optimizer produced a non-finite loss.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t epoch)
      : Error(what + " at epoch " + std::to_string(epoch)), epoch_(epoch) {}
  std::size_t epoch() const noexcept { return epoch_; }

 private:
  std::size_t epoch_;
};

}  // namespace viralkit
