// Copyright (c) the eipe authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace eipe {

// Malformed values (non-finite, wrong count) raise std::invalid_argument and
// parameter-range violations raise std::domain_error; the classes below cover
// the failure modes specific to this library.  The C API maps each to a status
// code at the boundary.

// Surface is wound inward / signed volume is not positive.
class OrientationError : public std::runtime_error {
  public:
    explicit OrientationError(const std::string& what) : std::runtime_error(what) {}
};

// Region failed the convexity test required by the sampling oracle.
class NonConvexError : public std::runtime_error {
  public:
    explicit NonConvexError(const std::string& what) : std::runtime_error(what) {}
};

// Covariance input is not symmetric positive semi-definite within tolerance.
class CovarianceError : public std::runtime_error {
  public:
    explicit CovarianceError(const std::string& what) : std::runtime_error(what) {}
};

// A guarded computation produced a value outside its proven bounds; indicates
// a bug or corrupted input rather than a user error.
class ConsistencyError : public std::runtime_error {
  public:
    explicit ConsistencyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eipe
