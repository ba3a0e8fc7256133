#pragma once

#include <stdexcept>
#include <string>

namespace dicelab {

// Error vocabulary shared by all modules. Everything derives from Error so
// callers can catch the whole family at the CLI boundary.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IntervalMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

// Rejection sampler gave up; signals a pathological spec or too-small budget.
class AttemptsExhausted : public Error {
 public:
  using Error::Error;
};

class UnsupportedInterval : public Error {
 public:
  using Error::Error;
};

class NotBalanced : public Error {
 public:
  using Error::Error;
};

class UnsupportedN : public Error {
 public:
  using Error::Error;
};

class UnsupportedK : public Error {
 public:
  using Error::Error;
};

class QuadratureBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Conditional variance collapsed; the Gaussian surrogate is undefined.
class DegenerateMoments : public Error {
 public:
  using Error::Error;
};

// A worker thread threw; carries the worker index in the message.
class TaskFailure : public Error {
 public:
  TaskFailure(unsigned worker, const std::string& what)
      : Error("worker " + std::to_string(worker) + ": " + what), worker_(worker) {}
  unsigned worker() const noexcept { return worker_; }

 private:
  unsigned worker_;
};

}  // namespace dicelab
