#pragma once

#include <stdexcept>
#include <string>

namespace llw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MaterialError : Error {
  using Error::Error;
};

struct GridError : Error {
  using Error::Error;
};

struct MapError : Error {
  using Error::Error;
};

struct AssemblyError : Error {
  using Error::Error;
};

struct SolverError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace llw
