#pragma once

#include <stdexcept>
#include <string>

namespace jamsched {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad argument values: non-positive steps, degenerate rectangles, empty inputs.
class ParameterError : public Error {
public:
  using Error::Error;
};

// An id referenced something that does not exist in the world.
class LookupError : public Error {
public:
  using Error::Error;
};

// Rejection sampling ran out of attempts while placing jammers.
class DeploymentError : public Error {
public:
  using Error::Error;
};

// A slot selection violated the energy rules (e.g. activating a dead jammer).
class SelectionError : public Error {
public:
  using Error::Error;
};

// Malformed optimization model or unparseable model text.
class ModelError : public Error {
public:
  using Error::Error;
};

// A configured search/node/state budget was exhausted.
class ResourceError : public Error {
public:
  using Error::Error;
};

// Config file problems: unknown keys, bad values, missing sections.
class ConfigError : public Error {
public:
  using Error::Error;
};

// Operation invoked on a network mode it does not support.
class UnsupportedModeError : public Error {
public:
  using Error::Error;
};

// No subset of the deployed jammers satisfies the protection constraints.
class NoReliableSetError : public Error {
public:
  using Error::Error;
};

}  // namespace jamsched
