#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

#include "wittkit/error.hpp"

namespace wittkit {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical text form: "num/den" with den > 0 and gcd 1, "num" when den is 1.
std::string rat_str(const Rat& q);
Rat rat_parse(const std::string& s);

Int int_pow(const Int& base, unsigned long e);

// Exact rational extended by +inf and -inf. Total order -inf < q < +inf.
// Sums follow order-function conventions: -inf absorbs, inf + finite = inf.
class ExtRat {
public:
  ExtRat() : kind_(Kind::Finite), value_(0) {}
  ExtRat(long v) : kind_(Kind::Finite), value_(v) {}  // NOLINT(google-explicit-constructor)
  ExtRat(Rat v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT

  static ExtRat infinity();
  static ExtRat neg_infinity();

  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinity() const { return kind_ == Kind::PlusInf; }
  bool is_neg_infinity() const { return kind_ == Kind::MinusInf; }

  // Finite values only.
  const Rat& value() const;

  ExtRat operator+(const ExtRat& o) const;
  ExtRat operator-(const ExtRat& o) const { return *this + (-o); }
  ExtRat operator-() const;

  // Multiplication by a positive rational constant; infinities are fixed.
  ExtRat scaled(const Rat& c) const;

  bool operator==(const ExtRat& o) const;
  bool operator!=(const ExtRat& o) const { return !(*this == o); }
  bool operator<(const ExtRat& o) const;
  bool operator<=(const ExtRat& o) const { return *this < o || *this == o; }
  bool operator>(const ExtRat& o) const { return o < *this; }
  bool operator>=(const ExtRat& o) const { return o <= *this; }

  static ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
  static ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

  std::string str() const;
  static ExtRat parse(const std::string& s);

private:
  enum class Kind { MinusInf, Finite, PlusInf };
  Kind kind_;
  Rat value_;
};

}  // namespace wittkit
