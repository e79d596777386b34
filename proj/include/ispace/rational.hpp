// Exact rational scalar type and dense matrix aliases used across the library.
//
// The scalar is a value-semantic wrapper around GMP's mpq_class.  The wrapper
// hides gmpxx's expression templates from Eigen: every arithmetic operator
// returns a plain, canonicalized Rational, so Eigen's own expression machinery
// is the only one in play.
#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace ispace {

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}            // NOLINT: implicit by design
  Rational(long n) : v_(n) {}           // NOLINT
  Rational(long long n) : v_(static_cast<long>(n)) {}  // NOLINT
  Rational(long num, long den) : v_(num, den) { v_.canonicalize(); }
  // Accepts "num", "num/den"; throws std::invalid_argument on bad input.
  explicit Rational(const std::string& s) : v_(parse(s)) {}

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ + b.v_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ - b.v_));
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ * b.v_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return Rational(mpq_class(a.v_ / b.v_));
  }
  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational operator+() const { return *this; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) { v_ /= o.v_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  long num_long() const { return v_.get_num().get_si(); }
  long den_long() const { return v_.get_den().get_si(); }

  // Lowest terms, positive denominator; "n" when the denominator is 1.
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  explicit Rational(mpq_class v) : v_(std::move(v)) {}
  static mpq_class parse(const std::string& s) {
    mpq_class v;
    if (s.empty() || v.set_str(s, 10) != 0)
      throw std::invalid_argument("not a rational: '" + s + "'");
    if (v.get_den() == 0)
      throw std::invalid_argument("zero denominator: '" + s + "'");
    v.canonicalize();
    return v;
  }
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

using Mat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

}  // namespace ispace

namespace Eigen {
template <>
struct NumTraits<ispace::Rational> : GenericNumTraits<ispace::Rational> {
  using Real = ispace::Rational;
  using NonInteger = ispace::Rational;
  using Nested = ispace::Rational;
  using Literal = long;

  static inline Real epsilon() { return ispace::Rational(0); }
  static inline Real dummy_precision() { return ispace::Rational(0); }
  static inline int digits10() { return 0; }

  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100,
  };
};
}  // namespace Eigen
