#pragma once

#include <stdexcept>
#include <string>

namespace twistrank {

/// Operation applied outside its domain: division by the zero polynomial,
/// square class of zero, wrong polynomial degree, evaluation at a pole.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A construction was given parameters that violate one of its stated
/// hypotheses. `hypothesis()` names the violated condition, e.g. "bc != 0".
class HypothesisError : public std::invalid_argument {
 public:
  HypothesisError(std::string hypothesis, const std::string& what)
      : std::invalid_argument(what + " (violates: " + hypothesis + ")"),
        hypothesis_(std::move(hypothesis)) {}

  const std::string& hypothesis() const noexcept { return hypothesis_; }

 private:
  std::string hypothesis_;
};

/// An exact mathematical verification failed. `check()` names it.
class CheckFailure : public std::runtime_error {
 public:
  CheckFailure(std::string check, const std::string& what)
      : std::runtime_error(check + ": " + what), check_(std::move(check)) {}

  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

}  // namespace twistrank
