// Copyright 2026 The eatonflow Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace eaton {

// Failure categories shared by every module. The C API maps each one to a
// distinct status code, so keep the two lists in sync.
enum class ErrorKind {
  input,         // caller violated a documented precondition
  infeasible,    // a search space was exhausted without a solution
  singular,      // an orbit or image hit a singular point / puncture
  undecided,     // interval arithmetic could not certify a comparison
  contract,      // an internal contract between modules was broken
  construction,  // a constructive procedure could not meet its guarantees
  not_found,     // a bounded search ran out of budget
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error input_error(const std::string& what) {
  return Error(ErrorKind::input, what);
}
inline Error undecided_error(const std::string& what) {
  return Error(ErrorKind::undecided, what);
}
inline Error singular_error(const std::string& what) {
  return Error(ErrorKind::singular, what);
}

}  // namespace eaton
