#include "wittkit/rational.hpp"

namespace wittkit {

std::string rat_str(const Rat& q) { return q.get_str(); }

Rat rat_parse(const std::string& s) {
  if (s.empty()) fail("ParseError", "empty rational literal");
  for (char c : s) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
      fail("ParseError", "bad character in rational literal: '" + s + "'");
  }
  mpq_t raw;
  mpq_init(raw);
  if (mpq_set_str(raw, s.c_str(), 10) != 0) {
    mpq_clear(raw);
    fail("ParseError", "unparsable rational literal: '" + s + "'");
  }
  if (mpz_sgn(mpq_denref(raw)) == 0) {
    mpq_clear(raw);
    fail("ParseError", "zero denominator in rational literal: '" + s + "'");
  }
  Rat q(raw);
  mpq_clear(raw);
  q.canonicalize();
  return q;
}

Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

ExtRat ExtRat::infinity() {
  ExtRat r;
  r.kind_ = Kind::PlusInf;
  return r;
}

ExtRat ExtRat::neg_infinity() {
  ExtRat r;
  r.kind_ = Kind::MinusInf;
  return r;
}

const Rat& ExtRat::value() const {
  if (kind_ != Kind::Finite) fail("NotFinite", "value() on an infinite ExtRat");
  return value_;
}

ExtRat ExtRat::operator+(const ExtRat& o) const {
  if (kind_ == Kind::MinusInf || o.kind_ == Kind::MinusInf) return neg_infinity();
  if (kind_ == Kind::PlusInf || o.kind_ == Kind::PlusInf) return infinity();
  return ExtRat(Rat(value_ + o.value_));
}

ExtRat ExtRat::operator-() const {
  switch (kind_) {
    case Kind::PlusInf: return neg_infinity();
    case Kind::MinusInf: return infinity();
    default: return ExtRat(Rat(-value_));
  }
}

ExtRat ExtRat::scaled(const Rat& c) const {
  if (c <= 0) fail("BadScale", "scaled() needs a positive constant");
  if (kind_ != Kind::Finite) return *this;
  return ExtRat(Rat(value_ * c));
}

bool ExtRat::operator==(const ExtRat& o) const {
  if (kind_ != o.kind_) return false;
  return kind_ != Kind::Finite || value_ == o.value_;
}

bool ExtRat::operator<(const ExtRat& o) const {
  if (kind_ == o.kind_) return kind_ == Kind::Finite && value_ < o.value_;
  if (kind_ == Kind::MinusInf) return true;
  if (kind_ == Kind::PlusInf) return false;
  return o.kind_ == Kind::PlusInf;
}

std::string ExtRat::str() const {
  switch (kind_) {
    case Kind::PlusInf: return "inf";
    case Kind::MinusInf: return "-inf";
    default: return rat_str(value_);
  }
}

ExtRat ExtRat::parse(const std::string& s) {
  if (s == "inf") return infinity();
  if (s == "-inf") return neg_infinity();
  return ExtRat(rat_parse(s));
}

}  // namespace wittkit
