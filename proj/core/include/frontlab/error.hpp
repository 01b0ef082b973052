// SPDX-FileCopyrightText: 2026 frontlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace frontlab {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, environments, families or configs.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A coupling or offspring hypothesis failed at runtime.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

/// Occupied window or PDE window left its admissible range.
class WindowFault : public Error {
 public:
  using Error::Error;
};

/// Numerical guard tripped (overflow, no bracket, non-convergence).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace frontlab
