#pragma once

#include <stdexcept>
#include <string>

namespace spcavrp {

/// Base class for all spcavrp errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A precondition on an argument was violated (bad shape, non-finite entry,
/// out-of-range parameter, ...).
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

/// A matrix expected to have full column rank does not.
class RankDeficient : public Error {
 public:
  explicit RankDeficient(const std::string& msg) : Error(msg) {}
};

/// An enumeration would exceed its configured cap.
class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string& msg) : Error(msg) {}
};

/// A requested probability event has probability zero (choose_b with an
/// unreachable threshold).
class Unreachable : public Error {
 public:
  explicit Unreachable(const std::string& msg) : Error(msg) {}
};

/// The deflation projector annihilated the whole working submatrix.
class DegenerateDeflation : public Error {
 public:
  DegenerateDeflation(int step, const std::string& msg)
      : Error(msg), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

}  // namespace spcavrp
