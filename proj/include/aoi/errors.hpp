#pragma once

#include <stdexcept>
#include <string>

namespace aoi {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An MGF was evaluated outside the open interval on which it is finite.
class DomainError : public Error {
 public:
  using Error::Error;
};

// The envelope rates at this theta violate rho_A_lower > rho_S.
class InstabilityError : public Error {
 public:
  using Error::Error;
};

// No theta in the search interval satisfies the stability condition.
class NoFeasibleTheta : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// M_I(-theta) == 1, so no finite DoI threshold exists.
class InfiniteDoI : public Error {
 public:
  using Error::Error;
};

// A finite event stream cannot cover the requested time or index.
class EventStreamExhausted : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace aoi
