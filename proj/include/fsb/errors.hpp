#pragma once

#include <stdexcept>
#include <string>

namespace fsb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument (out-of-range count, size mismatch, bad config value).
class ArgumentError : public Error {
public:
  using Error::Error;
};

/// Malformed geometry: unpinned endpoints, degenerate panels.
class GeometryError : public Error {
public:
  using Error::Error;
};

/// The interface polyline crosses itself or the walls.
class SelfIntersectionError : public GeometryError {
public:
  using GeometryError::GeometryError;
};

/// LU pivot fell below the singularity threshold.
class SingularMatrixError : public Error {
public:
  using Error::Error;
};

/// Interior evaluation requested outside the domain or inside the near-field band.
class NearBoundaryError : public Error {
public:
  using Error::Error;
};

/// Function evaluated outside its mathematical domain.
class DomainError : public Error {
public:
  using Error::Error;
};

} // namespace fsb
