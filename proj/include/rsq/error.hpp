#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace rsq {

using cplx = std::complex<double>;

// Numeric values are shared with the C API (rsq.h).
enum class Status : int {
  ok = 0,
  domain = 1,
  pole = 2,
  overflow = 3,
  strip = 4,
  budget = 5,
  non_finite = 6,
  divergence = 7,
  continuation = 8,
  coincident = 9,
  unknown_check = 10,
  config = 11,
  parse = 12,
  io = 13,
};

const char* status_name(Status s) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Status s, const std::string& what) : std::runtime_error(what), status_(s) {}
  Status status() const noexcept { return status_; }

 private:
  Status status_;
};

// Raised at lattice points m*w1 + k*w2 of the double sine.
class PoleError : public Error {
 public:
  PoleError(long m, long k, const std::string& what) : Error(Status::pole, what), m_(m), k_(k) {}
  long m() const noexcept { return m_; }
  long k() const noexcept { return k_; }

 private:
  long m_, k_;
};

class BudgetError : public Error {
 public:
  BudgetError(cplx best, double err, const std::string& what)
      : Error(Status::budget, what), best_(best), err_(err) {}
  cplx best() const noexcept { return best_; }
  double error_bound() const noexcept { return err_; }

 private:
  cplx best_;
  double err_;
};

class NonFiniteError : public Error {
 public:
  NonFiniteError(double x, const std::string& what) : Error(Status::non_finite, what), x_(x) {}
  double abscissa() const noexcept { return x_; }

 private:
  double x_;
};

}  // namespace rsq
