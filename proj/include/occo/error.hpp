// Copyright 2026 The OCCO Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace occo {

// Exception hierarchy. Each class maps onto one status code of the C API
// (see occo.h) and, through it, onto a CLI exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: dimension mismatch, empty bank, bad sizes.
class InputError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a function (log of zero, point outside a box).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Calls made in the wrong order, e.g. observe() before decide().
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// A theoretical invariant was broken beyond numerical tolerance.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

#define OCCO_REQUIRE(cond, ExcType, msg)     \
  do {                                       \
    if (!(cond)) throw ExcType(std::string(msg)); \
  } while (0)

}  // namespace occo
