#pragma once

#include <stdexcept>
#include <string>

namespace saddlemg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SizeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A symbol ratio has a non-removable singularity where a finite value was required.
class UnboundedRatio : public Error {
 public:
  UnboundedRatio(const std::string& what, double witness)
      : Error(what), witness_(witness) {}
  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

/// A multigrid precondition failed while building a hierarchy.
class HypothesisFailure : public Error {
 public:
  HypothesisFailure(const std::string& what, int level)
      : Error(what), level_(level) {}
  int level() const noexcept { return level_; }

 private:
  int level_;
};

class Divergence : public Error {
 public:
  using Error::Error;
};

}  // namespace saddlemg
