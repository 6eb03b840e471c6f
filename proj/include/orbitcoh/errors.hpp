#pragma once

#include <stdexcept>
#include <string>

namespace orbitcoh {

// Exit-status classes used by the CLI: InvalidInput -> 2, Unsupported -> 3,
// InvariantFailure -> 4.

class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantFailure : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace orbitcoh
