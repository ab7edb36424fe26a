#pragma once

#include <stdexcept>
#include <string>

namespace nlsplane {

// Base for every failure raised by the library. Callers that only want to
// report and exit can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A coefficient became NaN/Inf, grew past the blow-up cap, or the L2 norm
// left its initial value. Carries the simulation time of detection.
class NonFinite : public Error {
 public:
  NonFinite(const std::string& what, double t) : Error(what), time_(t) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class FrameOutOfGrid : public Error {
 public:
  using Error::Error;
};

class ZeroModeVanishes : public Error {
 public:
  using Error::Error;
};

// sum_{j != 0} |w_j|^2 >= rho^2: the zero-mode amplitude a is undefined.
class PerturbationTooLarge : public Error {
 public:
  using Error::Error;
};

// n^2 + 2 n lambda rho^2 <= 0 for some shell in use.
class UnstableRegime : public Error {
 public:
  using Error::Error;
};

class OrderCap : public Error {
 public:
  using Error::Error;
};

class ExactResonance : public Error {
 public:
  using Error::Error;
};

}  // namespace nlsplane
