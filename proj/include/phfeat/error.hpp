#pragma once

#include <stdexcept>
#include <string>

namespace phfeat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input files (PGM, CSV, manifest, feature matrix).
class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Inconsistent shapes across subjects or matrices.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Data that cannot support the requested computation (single class, too few subjects, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class BoundsError : public Error {
 public:
  using Error::Error;
};

}  // namespace phfeat
