#pragma once

#include <stdexcept>
#include <string>

namespace rz {

// Malformed user input (polynomial text, option values). Maps to process
// exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Violated mathematical precondition: the input is outside the domain the
// algorithms are defined on (not squarefree, not Perron, evaluation at a
// pole, ...). Maps to process exit code 2.
class MathError : public std::runtime_error {
 public:
  explicit MathError(const std::string& what) : std::runtime_error(what) {}
};

// A certification failed at the configured precision and escalation cap.
// The computation is not wrong, it is undecided; callers may retry with a
// higher working precision. Maps to process exit code 3.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation requested at (or indistinguishably close to) a pole.
class PoleProximityError : public MathError {
 public:
  explicit PoleProximityError(const std::string& what) : MathError(what) {}
};

}  // namespace rz
