#pragma once

#include <stdexcept>
#include <string>

namespace mirspec {

enum class Status {
  ok = 0,
  invalid_argument = 1,
  numerical = 2,  // non-convergence, overflow, "raise precision"
  pole = 3,       // denominator below its zero floor
  check_failed = 4,
  internal = 5,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status s, const std::string& what) : std::runtime_error(what), status_(s) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& w) : Error(Status::invalid_argument, w) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& w) : Error(Status::numerical, w) {}
};
struct PoleError : Error {
  explicit PoleError(const std::string& w) : Error(Status::pole, w) {}
};

}  // namespace mirspec
