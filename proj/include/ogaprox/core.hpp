#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ogaprox {

template <class Scalar>
using VectorT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatrixT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorT<double>;
using Matrix = MatrixT<double>;
using Index = Eigen::Index;

// Error hierarchy. Everything thrown by the library derives from Error so
// callers (the CLI in particular) can map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class StepSizeViolation : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonFiniteIterate : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class MissingSaddlePoint : public Error {
 public:
  using Error::Error;
};

class PsiUndefined : public Error {
 public:
  using Error::Error;
};

class InfeasibleSet : public Error {
 public:
  using Error::Error;
};

class NoActiveSupportVector : public Error {
 public:
  using Error::Error;
};

/// Value in R ∪ {±∞}. Subtraction follows the saddle-function convention
/// +∞ − (+∞) := +∞, so Ψ = Φ − g never produces NaN.
template <class Scalar>
struct ExtendedRealT {
  enum class Kind { Finite, PlusInf, MinusInf };

  Kind kind = Kind::Finite;
  Scalar value = Scalar(0);

  static ExtendedRealT finite(Scalar v) { return {Kind::Finite, v}; }
  static ExtendedRealT plus_inf() { return {Kind::PlusInf, Scalar(0)}; }
  static ExtendedRealT minus_inf() { return {Kind::MinusInf, Scalar(0)}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_plus_inf() const { return kind == Kind::PlusInf; }
  bool is_minus_inf() const { return kind == Kind::MinusInf; }

  ExtendedRealT operator-() const {
    switch (kind) {
      case Kind::PlusInf:
        return minus_inf();
      case Kind::MinusInf:
        return plus_inf();
      default:
        return finite(-value);
    }
  }

  friend ExtendedRealT operator-(const ExtendedRealT& a, const ExtendedRealT& b) {
    if (a.is_plus_inf()) return plus_inf();  // includes +∞ − (+∞)
    if (b.is_minus_inf()) return plus_inf();
    if (a.is_minus_inf() || b.is_plus_inf()) return minus_inf();
    return finite(a.value - b.value);
  }

  friend ExtendedRealT operator+(const ExtendedRealT& a, const ExtendedRealT& b) {
    return a - (-b);
  }

  /// Finite value or ±infinity as a plain floating value (for reporting).
  Scalar to_scalar() const {
    if (is_plus_inf()) return std::numeric_limits<Scalar>::infinity();
    if (is_minus_inf()) return -std::numeric_limits<Scalar>::infinity();
    return value;
  }
};

using ExtendedReal = ExtendedRealT<double>;

template <class Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  for (Index i = 0; i < v.size(); ++i) {
    using std::isfinite;
    if (!isfinite(v.derived().coeff(i))) return false;
  }
  return true;
}

}  // namespace ogaprox
