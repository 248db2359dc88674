#include "wittkit/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wittkit {

namespace {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Int mod_p(const Int& c, unsigned p) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
  return r;
}

Int inv_mod_p(const Int& c, unsigned p) {
  Int r, m(p);
  if (mpz_invert(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t()) == 0)
    fail("NotAUnit", "no inverse mod " + std::to_string(p));
  return r;
}

long mono_degree(const Mono& m) {
  long d = 0;
  for (auto e : m) d += e;
  return d;
}

}  // namespace

CoeffRing CoeffRing::fp(unsigned p) {
  if (!is_prime(p)) fail("NotPrime", std::to_string(p) + " is not prime");
  if (p > kMaxPrime) fail("PrimeTooLarge", "primes above " + std::to_string(kMaxPrime) + " are not supported");
  return CoeffRing(RingKind::IntegersMod, p);
}

unsigned CoeffRing::p() const {
  if (kind_ != RingKind::IntegersMod) fail("UnsupportedRing", "no prime attached to Z");
  return p_;
}

std::string CoeffRing::str() const {
  return kind_ == RingKind::Integers ? "Z" : "F" + std::to_string(p_);
}

bool GradedLexLess::operator()(const Mono& a, const Mono& b) const {
  long da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiPoly MultiPoly::constant(CoeffRing ring, unsigned num_vars, Int c) {
  MultiPoly r(ring, num_vars);
  r.add_term(Mono(num_vars, 0), std::move(c));
  return r;
}

MultiPoly MultiPoly::variable(CoeffRing ring, unsigned num_vars, unsigned var,
                              std::uint32_t e) {
  if (var >= num_vars) fail("ArityMismatch", "variable index out of range");
  Mono m(num_vars, 0);
  m[var] = e;
  return monomial(ring, num_vars, std::move(m), 1);
}

MultiPoly MultiPoly::monomial(CoeffRing ring, unsigned num_vars, Mono m, Int c) {
  if (m.size() != num_vars) fail("ArityMismatch", "exponent vector length mismatch");
  MultiPoly r(ring, num_vars);
  r.add_term(m, std::move(c));
  return r;
}

void MultiPoly::add_term(const Mono& m, Int c) {
  if (ring_.is_fp()) c = mod_p(c, ring_.p());
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, std::move(c));
    return;
  }
  it->second += c;
  if (ring_.is_fp()) it->second = mod_p(it->second, ring_.p());
  if (it->second == 0) terms_.erase(it);
}

bool MultiPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->second == 1 &&
         mono_degree(terms_.begin()->first) == 0;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
}

Int MultiPoly::constant_value() const {
  auto it = terms_.find(Mono(num_vars_, 0));
  return it == terms_.end() ? Int(0) : it->second;
}

long MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return mono_degree(terms_.rbegin()->first);
}

long MultiPoly::degree_in(unsigned var) const {
  if (var >= num_vars_) fail("ArityMismatch", "variable index out of range");
  long d = -1;
  if (terms_.empty()) return d;
  d = 0;
  for (const auto& [m, c] : terms_) d = std::max<long>(d, m[var]);
  return d;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  if (!(ring_ == o.ring_)) fail("RingMismatch", "operands over different coefficient rings");
  if (num_vars_ != o.num_vars_) fail("ArityMismatch", "operands with different variable counts");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(ring_, num_vars_);
  for (const auto& [m, c] : terms_) r.add_term(m, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(ring_, num_vars_);
  Mono m(num_vars_, 0);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      for (unsigned i = 0; i < num_vars_; ++i) {
        std::uint64_t e = std::uint64_t(ma[i]) + mb[i];
        if (e > 0x7fffffffu) fail("DegreeOverflow", "exponent overflow in product");
        m[i] = static_cast<std::uint32_t>(e);
      }
      r.add_term(m, ca * cb);
    }
  }
  return r;
}

MultiPoly MultiPoly::pow(unsigned long e) const {
  MultiPoly acc = constant(ring_, num_vars_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

MultiPoly MultiPoly::frobenius() const {
  if (!ring_.is_fp()) fail("UnsupportedRing", "frobenius needs an F_p coefficient ring");
  unsigned p = ring_.p();
  MultiPoly r(ring_, num_vars_);
  Mono m(num_vars_, 0);
  for (const auto& [ma, c] : terms_) {
    for (unsigned i = 0; i < num_vars_; ++i) {
      std::uint64_t e = std::uint64_t(ma[i]) * p;
      if (e > 0x7fffffffu) fail("DegreeOverflow", "exponent overflow in frobenius");
      m[i] = static_cast<std::uint32_t>(e);
    }
    Int cp;
    Int pz(p);
    mpz_powm_ui(cp.get_mpz_t(), c.get_mpz_t(), p, pz.get_mpz_t());
    r.add_term(m, cp);
  }
  return r;
}

MultiPoly MultiPoly::coeff_of(unsigned var, std::uint32_t k) const {
  if (var >= num_vars_) fail("ArityMismatch", "variable index out of range");
  MultiPoly r(ring_, num_vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] != k) continue;
    Mono mm = m;
    mm[var] = 0;
    r.add_term(mm, c);
  }
  return r;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(unsigned var) const {
  long d = degree_in(var);
  std::vector<MultiPoly> out;
  for (long k = 0; k <= d; ++k) out.push_back(coeff_of(var, static_cast<std::uint32_t>(k)));
  if (out.empty()) out.push_back(MultiPoly(ring_, num_vars_));
  return out;
}

MultiPoly MultiPoly::drop_var(unsigned var) const {
  if (var >= num_vars_) fail("ArityMismatch", "variable index out of range");
  MultiPoly r(ring_, num_vars_ - 1);
  for (const auto& [m, c] : terms_) {
    if (m[var] != 0) fail("ArityMismatch", "drop_var on a polynomial using that variable");
    Mono mm;
    mm.reserve(num_vars_ - 1);
    for (unsigned i = 0; i < num_vars_; ++i)
      if (i != var) mm.push_back(m[i]);
    r.add_term(mm, c);
  }
  return r;
}

MultiPoly MultiPoly::insert_var(unsigned at) const {
  if (at > num_vars_) fail("ArityMismatch", "insertion index out of range");
  MultiPoly r(ring_, num_vars_ + 1);
  for (const auto& [m, c] : terms_) {
    Mono mm;
    mm.reserve(num_vars_ + 1);
    for (unsigned i = 0; i < at; ++i) mm.push_back(m[i]);
    mm.push_back(0);
    for (unsigned i = at; i < num_vars_; ++i) mm.push_back(m[i]);
    r.add_term(mm, c);
  }
  return r;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return ring_ == o.ring_ && num_vars_ == o.num_vars_ && terms_ == o.terms_;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Descending graded-lex, leading term first.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    bool neg = c < 0;
    Int a = neg ? Int(-c) : c;
    std::string body;
    bool any_var = false;
    for (unsigned i = 0; i < num_vars_; ++i) {
      if (m[i] == 0) continue;
      if (any_var) body += "*";
      body += "T" + std::to_string(i + 1);
      if (m[i] > 1) body += "^" + std::to_string(m[i]);
      any_var = true;
    }
    if (!any_var) {
      body = a.get_str();
    } else if (a != 1) {
      body = a.get_str() + "*" + body;
    }
    if (first) {
      out << (neg ? "-" : "") << body;
      first = false;
    } else {
      out << (neg ? " - " : " + ") << body;
    }
  }
  return out.str();
}

namespace {

struct PolyParser {
  const std::string& text;
  size_t pos = 0;
  CoeffRing ring;
  unsigned num_vars;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  [[noreturn]] void err(const std::string& what) {
    fail("ParseError", what + " at position " + std::to_string(pos) + " in '" + text + "'");
  }

  Int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) err("expected an integer");
    return Int(text.substr(start, pos - start));
  }

  // factor := INT | T<i>[^e]
  void factor(Int& coeff, Mono& mono) {
    skip_ws();
    if (pos >= text.size()) err("expected a factor");
    char c = text[pos];
    if (c == 'T') {
      ++pos;
      Int idx = integer();
      if (idx < 1 || idx > num_vars)
        err("variable T" + idx.get_str() + " out of range (have " + std::to_string(num_vars) + ")");
      unsigned var = static_cast<unsigned>(idx.get_ui()) - 1;
      std::uint64_t e = 1;
      if (eat('^')) {
        Int ei = integer();
        if (ei < 0 || ei > 0x7fffffff) err("exponent out of range");
        e = ei.get_ui();
      }
      std::uint64_t total = std::uint64_t(mono[var]) + e;
      if (total > 0x7fffffffu) err("exponent overflow");
      mono[var] = static_cast<std::uint32_t>(total);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      coeff *= integer();
    } else {
      err("unexpected character '" + std::string(1, c) + "'");
    }
  }

  // term := factor (* factor)*
  void term(MultiPoly& acc, bool negative) {
    Int coeff(1);
    Mono mono(num_vars, 0);
    factor(coeff, mono);
    while (eat('*')) factor(coeff, mono);
    if (negative) coeff = -coeff;
    acc.add_term(mono, coeff);
  }

  MultiPoly parse() {
    MultiPoly acc(ring, num_vars);
    bool neg = eat('-');
    term(acc, neg);
    for (;;) {
      skip_ws();
      if (pos >= text.size()) break;
      if (eat('+')) {
        term(acc, false);
      } else if (eat('-')) {
        term(acc, true);
      } else {
        err("expected '+' or '-'");
      }
    }
    return acc;
  }
};

}  // namespace

MultiPoly MultiPoly::parse(CoeffRing ring, unsigned num_vars, const std::string& text) {
  PolyParser p{text, 0, ring, num_vars};
  return p.parse();
}

std::pair<MultiPoly, MultiPoly> monic_divide(const MultiPoly& g, const MultiPoly& f,
                                             unsigned var) {
  if (!(g.ring() == f.ring()) || g.num_vars() != f.num_vars())
    fail("RingMismatch", "dividend and divisor live in different rings");
  long m = f.degree_in(var);
  if (m < 0) fail("NotMonic", "zero divisor polynomial");
  if (!f.coeff_of(var, static_cast<std::uint32_t>(m)).is_one())
    fail("NotMonic", "divisor is not monic in T" + std::to_string(var + 1));
  MultiPoly q(g.ring(), g.num_vars());
  MultiPoly r = g;
  while (!r.is_zero()) {
    long k = r.degree_in(var);
    if (k < m) break;
    MultiPoly c = r.coeff_of(var, static_cast<std::uint32_t>(k));
    MultiPoly shift =
        c * MultiPoly::variable(g.ring(), g.num_vars(), var, static_cast<std::uint32_t>(k - m));
    q = q + shift;
    r = r - shift * f;
  }
  return {q, r};
}

std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& f) {
  if (f.is_zero()) fail("ZeroDenominator", "division by the zero polynomial");
  if (!(a.ring() == f.ring()) || a.num_vars() != f.num_vars())
    fail("RingMismatch", "operands live in different rings");
  const auto& ft = *f.terms().rbegin();
  MultiPoly q(a.ring(), a.num_vars());
  MultiPoly r = a;
  Mono m(a.num_vars(), 0);
  while (!r.is_zero()) {
    const auto& rt = *r.terms().rbegin();
    for (unsigned i = 0; i < a.num_vars(); ++i) {
      if (rt.first[i] < ft.first[i]) return std::nullopt;
      m[i] = rt.first[i] - ft.first[i];
    }
    Int c;
    if (a.ring().is_fp()) {
      c = mod_p(rt.second * inv_mod_p(ft.second, a.ring().p()), a.ring().p());
    } else {
      Int rem;
      mpz_tdiv_qr(c.get_mpz_t(), rem.get_mpz_t(), rt.second.get_mpz_t(), ft.second.get_mpz_t());
      if (rem != 0) return std::nullopt;
    }
    MultiPoly t = MultiPoly::monomial(a.ring(), a.num_vars(), m, c);
    q = q + t;
    r = r - t * f;
  }
  return q;
}

bool is_divisible(const MultiPoly& a, const MultiPoly& f) {
  return exact_divide(a, f).has_value();
}

CtxPtr PolyRingCtx::make(CoeffRing ring, unsigned num_vars) {
  return CtxPtr(new PolyRingCtx(ring, num_vars, std::nullopt));
}

CtxPtr PolyRingCtx::quotient(CoeffRing ring, unsigned num_vars, MultiPoly f) {
  if (num_vars == 0) fail("ArityMismatch", "quotient context needs at least one variable");
  if (!(f.ring() == ring) || f.num_vars() != num_vars)
    fail("RingMismatch", "modulus ring mismatch");
  long m = f.degree_in(num_vars - 1);
  if (m < 1 || !f.coeff_of(num_vars - 1, static_cast<std::uint32_t>(m)).is_one())
    fail("NotMonic", "modulus must be monic of positive degree in the last variable");
  return CtxPtr(new PolyRingCtx(ring, num_vars, std::move(f)));
}

bool PolyRingCtx::same(const PolyRingCtx& o) const {
  if (!(ring == o.ring) || num_vars != o.num_vars) return false;
  if (modulus.has_value() != o.modulus.has_value()) return false;
  return !modulus || *modulus == *o.modulus;
}

MultiPoly PolyRingCtx::reduce(MultiPoly x) const {
  if (!modulus) return x;
  return monic_divide(x, *modulus, num_vars - 1).second;
}

QuotElem::QuotElem(CtxPtr ctx, MultiPoly rep) : ctx_(std::move(ctx)) , rep_(ctx_->reduce(std::move(rep))) {
  if (!ctx_->modulus) fail("SpecMismatch", "QuotElem needs a quotient context");
}

QuotElem QuotElem::operator+(const QuotElem& o) const {
  if (!ctx_->same(*o.ctx_)) fail("RingMismatch", "quotient contexts differ");
  return QuotElem(ctx_, rep_ + o.rep_);
}

QuotElem QuotElem::operator-(const QuotElem& o) const {
  if (!ctx_->same(*o.ctx_)) fail("RingMismatch", "quotient contexts differ");
  return QuotElem(ctx_, rep_ - o.rep_);
}

QuotElem QuotElem::operator*(const QuotElem& o) const {
  if (!ctx_->same(*o.ctx_)) fail("RingMismatch", "quotient contexts differ");
  return QuotElem(ctx_, rep_ * o.rep_);
}

bool QuotElem::operator==(const QuotElem& o) const {
  return ctx_->same(*o.ctx_) && rep_ == o.rep_;
}

LocElem loc_reduce(MultiPoly a, unsigned m, const MultiPoly& f) {
  if (f.is_zero()) fail("ZeroDenominator", "localization at 0");
  while (m > 0) {
    auto q = exact_divide(a, f);
    if (!q) break;
    a = std::move(*q);
    --m;
  }
  return LocElem{std::move(a), m, f};
}

bool is_reduced(const LocElem& z) {
  return z.exp == 0 || !is_divisible(z.num, z.f);
}

}  // namespace wittkit
