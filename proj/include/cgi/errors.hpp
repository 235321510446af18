#pragma once

#include <stdexcept>
#include <string>

namespace cgi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument to a physical formula (non-positive height, mass, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Least-squares fit could not be formed or is rank deficient.
class FitError : public Error {
 public:
  using Error::Error;
};

/// Malformed external input (configuration, CSV).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Two trajectories that must share a time grid do not.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// Base for failures tied to the region where the field model is valid.
class RegionError : public Error {
 public:
  using Error::Error;
};

/// Field model evaluated outside its region of interest.
class ExtrapolationError : public RegionError {
 public:
  ExtrapolationError(double height, double z_min, double z_max);
  double height() const { return height_; }

 private:
  double height_;
};

/// A trajectory left the region of interest while being propagated.
class PropagationError : public RegionError {
 public:
  PropagationError(double time, double height);
  double time() const { return time_; }
  double height() const { return height_; }

 private:
  double time_;
  double height_;
};

/// Formula evaluated at (or within tolerance of) a pole.
class SingularityError : public RegionError {
 public:
  SingularityError(const std::string& what, double pole);
  double pole() const { return pole_; }

 private:
  double pole_;
};

}  // namespace cgi
