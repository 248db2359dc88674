#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wittkit/expand.hpp"
#include "wittkit/gauss.hpp"

using namespace wittkit;
using th::ctx;
using th::fp;
using th::poly;
using th::wv;

namespace {

FracWeight weight(std::vector<std::uint32_t> scaled, unsigned u, unsigned p) {
  return FracWeight::make(std::move(scaled), u, p);
}

const WittVector& term_at(const Expansion& e, const FracWeight& k) {
  auto it = e.terms().find(k);
  REQUIRE(it != e.terms().end());
  return it->second;
}

}  // namespace

TEST_CASE("fractional weights canonicalize") {
  FracWeight k = weight({2, 4}, 1, 2);  // (1, 2) with u = 0
  CHECK(k.u == 0);
  CHECK(k.scaled == std::vector<std::uint32_t>{1, 2});
  FracWeight h = weight({1, 2}, 1, 2);
  CHECK(h.u == 1);
  CHECK(h.component(0) == Rat(1, 2));
  CHECK(h.total() == Rat(3, 2));
}

TEST_CASE("teichmuller expansion peels level by level") {
  auto c = ctx(2, 1);

  SUBCASE("single monomial") {
    Expansion e = teich_expand(teichmuller(c, 2, poly(fp(2), 1, "T1")));
    REQUIRE(e.terms().size() == 1);
    const WittVector& xi = term_at(e, weight({1}, 0, 2));
    CHECK(xi == WittVector::one(e.scalar_ctx(), 2));
  }
  SUBCASE("pure Verschiebung term") {
    Expansion e = teich_expand(verschiebung(teichmuller(c, 2, poly(fp(2), 1, "T1"))));
    REQUIRE(e.terms().size() == 1);
    FracWeight k = weight({1}, 1, 2);
    CHECK(k.u == 1);
    const WittVector& xi = term_at(e, k);
    CHECK(xi == verschiebung(WittVector::one(e.scalar_ctx(), 2)));
  }
  SUBCASE("mixed vector") {
    Expansion e = teich_expand(wv(c, "wv[T1^2;T1]"));
    REQUIRE(e.terms().size() == 2);
    CHECK(term_at(e, weight({2}, 0, 2)) == WittVector::one(e.scalar_ctx(), 2));
    CHECK(term_at(e, weight({1}, 1, 2)) ==
          verschiebung(WittVector::one(e.scalar_ctx(), 2)));
  }
  SUBCASE("quotient bases rejected") {
    auto qc = PolyRingCtx::quotient(fp(2), 2, poly(fp(2), 2, "T2^2 + T2 + T1"));
    CHECK_THROWS_AS(teich_expand(WittVector::one(qc, 2)), Error);
  }
}

TEST_CASE("reconstruction is exact") {
  auto c = ctx(2, 1);
  Expansion empty(c, 2);
  CHECK(reconstruct(empty).is_zero());

  Expansion single(c, 2);
  single.add_term(weight({1}, 0, 2), WittVector::one(single.scalar_ctx(), 2));
  CHECK(reconstruct(single) == teichmuller(c, 2, poly(fp(2), 1, "T1")));

  check::Rng rng(3);
  for (unsigned p : {2u, 3u}) {
    for (unsigned vars = 1; vars <= 2; ++vars) {
      auto cp = PolyRingCtx::make(fp(p), vars);
      for (int i = 0; i < 120; ++i) {
        unsigned len = static_cast<unsigned>(rng.range(1, p == 2 ? 4 : 3));
        auto x = check::random_witt(rng, cp, len, 4, 2);
        Expansion e = teich_expand(x);
        REQUIRE(reconstruct(e) == x);
        for (const auto& [k, xi] : e.terms()) {
          VOrder o = ord_v(xi);
          REQUIRE_FALSE(o.is_infinite);
          REQUIRE(o.value >= k.u);
        }
        // Uniqueness: expanding the reconstruction reproduces the term map.
        Expansion e2 = teich_expand(reconstruct(e));
        REQUIRE(e2.terms().size() == e.terms().size());
        auto it2 = e2.terms().begin();
        for (const auto& [k, xi] : e.terms()) {
          REQUIRE(it2->first == k);
          REQUIRE(it2->second == xi);
          ++it2;
        }
      }
    }
  }
}

TEST_CASE("expansion norms match Gauss norms") {
  auto c = ctx(2, 1);

  Expansion squared(c, 2);
  squared.add_term(weight({2}, 0, 2), WittVector::one(squared.scalar_ctx(), 2));
  CHECK(norm_from_expansion(squared, {Rat(1)}) == ExtRat(-2));

  Expansion half(c, 2);
  half.add_term(weight({1}, 1, 2), verschiebung(WittVector::one(half.scalar_ctx(), 2)));
  CHECK(norm_from_expansion(half, {Rat(1)}) == ExtRat(Rat(1, 2)));

  Expansion both = teich_expand(wv(c, "wv[T1^2;T1]"));
  CHECK(norm_from_expansion(both, {Rat(1)}) == ExtRat(-2));
  CHECK(norm_from_expansion(both, {Rat(1)}) ==
        gauss_norm(wv(c, "wv[T1^2;T1]"), *ValuationSpec::weighted_degree({Rat(1)}), Rat(1)));

  check::Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    unsigned vars = static_cast<unsigned>(rng.range(1, 2));
    auto cp = PolyRingCtx::make(fp(2), vars);
    auto x = check::random_witt(rng, cp, 3, 4, 2);
    Expansion e = teich_expand(x);
    for (int j = 0; j < 20; ++j) {
      std::vector<Rat> deltas;
      for (unsigned v = 0; v < vars; ++v) {
        Rat w(rng.range(1, 6), rng.range(1, 3));
        w.canonicalize();
        deltas.push_back(w);
      }
      auto spec = ValuationSpec::weighted_degree(deltas);
      REQUIRE(norm_from_expansion(e, deltas) == gauss_norm(x, *spec, Rat(1)));
    }
  }
}

TEST_CASE("breve norms") {
  auto c = ctx(2, 1);
  Expansion t = teich_expand(teichmuller(c, 2, poly(fp(2), 1, "T1")));
  CHECK(breve_norm(t, Rat(1)) == ExtRat(-1));

  Expansion half(c, 2);
  half.add_term(weight({1}, 1, 2), verschiebung(WittVector::one(half.scalar_ctx(), 2)));
  CHECK(breve_norm(half, Rat(1)) == ExtRat(Rat(-1, 2)));

  auto spec = ValuationSpec::weighted_degree({Rat(1)});
  check::Rng rng(15);
  for (int i = 0; i < 200; ++i) {
    auto x = check::random_witt(rng, c, 3, 4, 2);
    Rat eps(rng.range(1, 4), 2);
    eps.canonicalize();
    Expansion e = teich_expand(x);
    REQUIRE(breve_norm(e, eps) <= gauss_norm(x, *spec, eps));
  }

  // Power inequality relating the two norms.
  for (int i = 0; i < 60; ++i) {
    auto x = check::random_witt(rng, c, 3, 3, 2);
    Rat eps(1, 2);
    ExtRat g = gauss_norm(x, *spec, eps);
    ExtRat b = breve_norm(teich_expand(x), eps);
    for (unsigned r : {2u, 3u}) {
      ExtRat lhs = breve_norm(teich_expand(witt_pow(x, r)), eps);
      REQUIRE(lhs >= g.scaled(Rat(r - 1)) + b);
    }
  }

  // Teichmuller lifts: breve norm is -eps * degree.
  for (int i = 0; i < 60; ++i) {
    auto a = check::random_nonzero_poly(rng, fp(2), 1, 5, 3);
    Rat eps(rng.range(1, 4), 2);
    eps.canonicalize();
    ExtRat got = breve_norm(teich_expand(teichmuller(c, 3, a)), eps);
    REQUIRE(got == ExtRat(Rat(-eps * Rat(a.total_degree()))));
  }
}

TEST_CASE("linear forms decompose at weight one") {
  auto c1 = ctx(2, 1);
  Expansion single = linear_teich_decompose(c1, 2, {Int(1)});
  REQUIRE(single.terms().size() == 1);
  CHECK(term_at(single, weight({1}, 0, 2)) == WittVector::one(single.scalar_ctx(), 2));

  auto c2 = ctx(2, 2);
  Expansion pair = linear_teich_decompose(c2, 2, {Int(1), Int(1)});
  REQUIRE(pair.terms().size() == 3);
  CHECK(term_at(pair, weight({1, 0}, 0, 2)) == WittVector::one(pair.scalar_ctx(), 2));
  CHECK(term_at(pair, weight({0, 1}, 0, 2)) == WittVector::one(pair.scalar_ctx(), 2));
  CHECK(term_at(pair, weight({1, 1}, 1, 2)) ==
        verschiebung(WittVector::one(pair.scalar_ctx(), 2)));

  check::Rng rng(21);
  for (unsigned p : {2u, 3u}) {
    for (unsigned d = 1; d <= 3; ++d) {
      auto c = PolyRingCtx::make(fp(p), d);
      for (unsigned len = 1; len <= (p == 2 ? 5u : 4u); ++len) {
        std::vector<Int> coeffs;
        bool nonzero = false;
        for (unsigned v = 0; v < d; ++v) {
          coeffs.push_back(Int(rng.range(0, p - 1)));
          nonzero = nonzero || coeffs.back() != 0;
        }
        if (!nonzero) coeffs[0] = 1;
        Expansion e = linear_teich_decompose(c, len, coeffs);
        for (const auto& [k, xi] : e.terms()) {
          REQUIRE(k.total() == Rat(1));
          VOrder o = ord_v(xi);
          REQUIRE_FALSE(o.is_infinite);
          REQUIRE(o.value >= k.u);
        }
        MultiPoly lf(fp(p), d);
        for (unsigned v = 0; v < d; ++v) {
          Mono m(d, 0);
          m[v] = 1;
          lf.add_term(m, coeffs[v]);
        }
        REQUIRE(reconstruct(e) == teichmuller(c, len, lf));
      }
    }
  }
}
