#pragma once

#include <stdexcept>
#include <string>

namespace rch {

// Base for all library errors; callers that only care about "something was
// rejected" can catch this one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class KindMismatch : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// A phase-space point is off the requested momentum level.
class MembershipError : public Error {
 public:
  MembershipError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const { return defect_; }

 private:
  double defect_;
};

// Integration diverged.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace rch
