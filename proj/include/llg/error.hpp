#pragma once

#include <stdexcept>
#include <string>

namespace llg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration supplied by the caller.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two fields that must share a grid do not.
class GridMismatch : public Error {
 public:
  GridMismatch() : Error("fields live on different grids") {}
};

/// A pointwise normalization met a zero-length vector.
class DegenerateError : public Error {
 public:
  DegenerateError(const std::string& what, int ix, int iy, double x, double y);
  int ix() const { return ix_; }
  int iy() const { return iy_; }

 private:
  int ix_;
  int iy_;
};

/// Non-finite values appeared during time integration.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, double t);
  double time() const { return t_; }

 private:
  double t_;
};

/// A multistep scheme was asked to step without enough history.
class HistoryError : public Error {
 public:
  using Error::Error;
};

/// Secant iteration for the energy multiplier did not converge.
class SecantFailure : public Error {
 public:
  using Error::Error;
};

/// Bad command line or configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace llg
