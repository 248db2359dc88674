#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wittkit/etale.hpp"

using namespace wittkit;
using th::ctx;
using th::fp;
using th::poly;

namespace {

EtaleExt artin_schreier_f2() {
  // B = F_2[S][T]/(T^2 + T + S) with S = T1, T = T2.
  return EtaleExt::make(PolyRingCtx::make(fp(2), 1), poly(fp(2), 2, "T2^2 + T2 + T1"));
}

EtaleExt artin_schreier_f3() {
  // B = F_3[S][T]/(T^3 - T - S).
  return EtaleExt::make(PolyRingCtx::make(fp(3), 1), poly(fp(3), 2, "T2^3 + 2*T2 + 2*T1"));
}

WittVector embed(const WittVector& x, const CtxPtr& ctx_b) {
  std::vector<MultiPoly> comps;
  for (const auto& c : x.comps()) comps.push_back(c.insert_var(ctx_b->num_vars - 1));
  return WittVector(ctx_b, comps);
}

WittVector recombine(const std::vector<WittVector>& xi, const EtaleExt& ext, unsigned len) {
  WittVector acc = WittVector::zero(ext.quot_ctx(), len);
  WittVector t = teichmuller(ext.quot_ctx(), len,
                             MultiPoly::variable(ext.quot_ctx()->ring, ext.quot_ctx()->num_vars,
                                                 ext.quot_ctx()->num_vars - 1));
  for (unsigned i = 0; i < xi.size(); ++i)
    acc = witt_add(acc, witt_mul(embed(xi[i], ext.quot_ctx()), witt_pow(t, i)));
  return acc;
}

}  // namespace

TEST_CASE("etale extension construction") {
  EtaleExt ext = artin_schreier_f2();
  CHECK(ext.degree() == 2);
  // f' = 1 in characteristic 2, so the witness is 1.
  CHECK(ext.derivative() == poly(fp(2), 2, "1"));
  CHECK(ext.derivative_inverse() == poly(fp(2), 2, "1"));

  EtaleExt ext3 = artin_schreier_f3();
  CHECK(ext3.degree() == 3);
  MultiPoly check3 = ext3.quot_ctx()->reduce(ext3.derivative() * ext3.derivative_inverse());
  CHECK(check3.is_one());

  // T^2 + S has vanishing derivative in characteristic 2.
  CHECK_THROWS_AS(EtaleExt::make(PolyRingCtx::make(fp(2), 1), poly(fp(2), 2, "T2^2 + T1")), Error);
  // T^2 - S over F_3 is not etale: the resultant involves S.
  CHECK_THROWS_AS(EtaleExt::make(PolyRingCtx::make(fp(3), 1), poly(fp(3), 2, "T2^2 + 2*T1")), Error);
  // Witnesses are verified.
  CHECK_THROWS_AS(EtaleExt::make(PolyRingCtx::make(fp(3), 1), poly(fp(3), 2, "T2^3 + 2*T2 + 2*T1"),
                                 poly(fp(3), 2, "T2")),
                  Error);
}

TEST_CASE("non-etale quotients are reported with the level") {
  auto qc = PolyRingCtx::quotient(fp(2), 2, poly(fp(2), 2, "T2^2 + T1"));
  try {
    power_basis_matrix_inverse(qc, 1);
    FAIL("expected NotEtaleAtLevel");
  } catch (const Error& e) {
    CHECK(e.name() == "NotEtaleAtLevel");
  }
}

TEST_CASE("power basis coordinates") {
  EtaleExt ext = artin_schreier_f2();

  SUBCASE("level-one refinement of t") {
    BasisCoords c = power_basis_coords(poly(fp(2), 2, "T2"), ext, 1);
    REQUIRE(c.coords.size() == 2);
    CHECK(c.coords[0] == poly(fp(2), 1, "T1"));  // t = S + t^2
    CHECK(c.coords[1] == poly(fp(2), 1, "1"));
  }
  SUBCASE("constants are fixed") {
    for (unsigned n = 0; n <= 3; ++n) {
      BasisCoords c = power_basis_coords(poly(fp(2), 2, "1"), ext, n);
      CHECK(c.coords[0] == poly(fp(2), 1, "1"));
      CHECK(c.coords[1].is_zero());
    }
  }
  SUBCASE("level zero gives residue coordinates") {
    BasisCoords c = power_basis_coords(poly(fp(2), 2, "T1*T2 + T1 + 1"), ext, 0);
    CHECK(c.coords[0] == poly(fp(2), 1, "T1 + 1"));
    CHECK(c.coords[1] == poly(fp(2), 1, "T1"));
  }
  SUBCASE("reconstruction at every level") {
    check::Rng rng(3);
    for (const EtaleExt& e : {artin_schreier_f2(), artin_schreier_f3()}) {
      unsigned p = e.quot_ctx()->ring.p();
      for (int i = 0; i < 60; ++i) {
        MultiPoly b = check::random_poly(rng, e.quot_ctx()->ring, 2, 3, 3);
        for (unsigned n = 0; n <= 3; ++n) {
          BasisCoords c = power_basis_coords(b, e, n);
          unsigned long step = 1;
          for (unsigned k = 0; k < n; ++k) step *= p;
          MultiPoly acc(e.quot_ctx()->ring, 2);
          for (unsigned j = 0; j < e.degree(); ++j) {
            acc = acc + c.coords[j].insert_var(1) *
                            MultiPoly::variable(e.quot_ctx()->ring, 2, 1,
                                                static_cast<std::uint32_t>(step * j));
          }
          REQUIRE(e.quot_ctx()->reduce(acc) == e.quot_ctx()->reduce(b));
        }
      }
    }
  }
}

TEST_CASE("coordinate growth bound") {
  auto inner = ValuationSpec::weighted_degree({Rat(1)});
  EtaleExt ext = artin_schreier_f2();
  GrowthBound gb = power_basis_growth_bound(ext, *inner);
  // Basis inverse entries are {1, S, 1}; the worst inner value is -1.
  CHECK(gb.matrix_c == Rat(1));
  CHECK(gb.growth == Rat(1));

  auto quot = ValuationSpec::monic_quotient(inner, gb.quot_d, ext.modulus());
  check::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    MultiPoly b = check::random_nonzero_poly(rng, fp(2), 2, 4, 3);
    ExtRat vb = eval_valuation(*quot, b);
    unsigned long pn = 1;
    for (unsigned n = 0; n <= 3; ++n) {
      BasisCoords c = power_basis_coords(b, ext, n);
      for (const auto& coord : c.coords) {
        if (coord.is_zero()) continue;
        REQUIRE(eval_valuation(*inner, coord) >= vb - ExtRat(Rat(gb.growth * Rat(pn))));
      }
      pn *= 2;
    }
    // Constant elements keep coordinate value zero.
    BasisCoords cc = power_basis_coords(poly(fp(2), 2, "1"), ext, static_cast<unsigned>(i % 4));
    REQUIRE(eval_valuation(*inner, cc.coords[0]) == ExtRat(0));
  }
}

TEST_CASE("basis expansion of Witt vectors") {
  EtaleExt ext = artin_schreier_f2();
  auto ctx_b = ext.quot_ctx();

  SUBCASE("basis element") {
    WittVector eta = teichmuller(ctx_b, 3, poly(fp(2), 2, "T2"));
    auto xi = etale_basis_expand(eta, ext);
    CHECK(xi[0].is_zero());
    CHECK(xi[1] == WittVector::one(ext.base_ctx(), 3));
  }
  SUBCASE("shifted basis element") {
    WittVector eta = verschiebung(teichmuller(ctx_b, 2, poly(fp(2), 2, "T2")));
    auto xi = etale_basis_expand(eta, ext);
    CHECK(xi[0] == verschiebung(teichmuller(ext.base_ctx(), 2, poly(fp(2), 1, "T1"))));
    CHECK(xi[1] == verschiebung(WittVector::one(ext.base_ctx(), 2)));
    REQUIRE(recombine(xi, ext, 2) == eta);
  }
  SUBCASE("scalars from the base") {
    check::Rng rng(7);
    auto x = check::random_witt(rng, ext.base_ctx(), 3, 3, 2);
    auto xi = etale_basis_expand(embed(x, ctx_b), ext);
    CHECK(xi[0] == x);
    CHECK(xi[1].is_zero());
  }
  SUBCASE("round-trip and uniqueness") {
    check::Rng rng(9);
    for (const EtaleExt& e : {artin_schreier_f2(), artin_schreier_f3()}) {
      unsigned p = e.quot_ctx()->ring.p();
      unsigned max_len = p == 2 ? 5 : 4;
      for (int i = 0; i < 40; ++i) {
        unsigned len = static_cast<unsigned>(rng.range(1, max_len));
        WittVector eta = check::random_witt(rng, e.quot_ctx(), len, 2, 2);
        auto xi = etale_basis_expand(eta, e);
        REQUIRE(recombine(xi, e, len) == eta);
        auto xi2 = etale_basis_expand(recombine(xi, e, len), e);
        for (unsigned j = 0; j < e.degree(); ++j) REQUIRE(xi2[j] == xi[j]);
      }
    }
  }
}

TEST_CASE("extensions of the prime field itself") {
  // B = F_2[T]/(T^3 + T + 1), the degree-8 field over a zero-variable base.
  EtaleExt ext = EtaleExt::make(PolyRingCtx::make(fp(2), 0), poly(fp(2), 1, "T1^3 + T1 + 1"));
  CHECK(ext.degree() == 3);
  MultiPoly w = ext.quot_ctx()->reduce(ext.derivative() * ext.derivative_inverse());
  CHECK(w.is_one());

  check::Rng rng(77);
  for (int i = 0; i < 40; ++i) {
    MultiPoly b = check::random_poly(rng, fp(2), 1, 2, 3);
    for (unsigned n = 0; n <= 4; ++n) {
      BasisCoords c = power_basis_coords(b, ext, n);
      unsigned long step = 1;
      for (unsigned k = 0; k < n; ++k) step *= 2;
      MultiPoly acc(fp(2), 1);
      for (unsigned j = 0; j < 3; ++j) {
        acc = acc + c.coords[j].insert_var(0) *
                        MultiPoly::variable(fp(2), 1, 0, static_cast<std::uint32_t>(step * j));
      }
      REQUIRE(ext.quot_ctx()->reduce(acc) == ext.quot_ctx()->reduce(b));
    }
  }

  // Witt vectors of the field expand over W(F_2) and recombine.
  for (int i = 0; i < 30; ++i) {
    unsigned len = static_cast<unsigned>(rng.range(1, 4));
    WittVector eta = check::random_witt(rng, ext.quot_ctx(), len, 2, 2);
    auto xi = etale_basis_expand(eta, ext);
    REQUIRE(recombine(xi, ext, len) == eta);
  }
}

TEST_CASE("hensel lifting") {
  auto c = PolyRingCtx::make(fp(2), 1);

  SUBCASE("idempotent root is already lifted") {
    unsigned len = 4;
    WittVector one = WittVector::one(c, len);
    std::vector<WittVector> coeffs = {WittVector::zero(c, len), witt_neg(one), one};  // X^2 - X
    WittVector alpha = hensel_lift(coeffs, poly(fp(2), 1, "1"));
    CHECK(alpha == one);
  }
  SUBCASE("artin-schreier root of T^2 + T") {
    for (unsigned len : {3u, 4u}) {
      WittVector one = WittVector::one(c, len);
      std::vector<WittVector> coeffs = {
          witt_neg(teichmuller(c, len, poly(fp(2), 1, "T1^2 + T1"))), witt_neg(one), one};
      WittVector alpha = hensel_lift(coeffs, poly(fp(2), 1, "T1"));
      CHECK(witt_poly_eval(coeffs, alpha).is_zero());
      CHECK(alpha.comp(0) == poly(fp(2), 1, "T1"));
    }
  }
  SUBCASE("torus roots are Teichmuller lifts") {
    auto c3 = PolyRingCtx::make(fp(3), 0);
    unsigned len = 4;
    WittVector one = WittVector::one(c3, len);
    std::vector<WittVector> coeffs = {WittVector::zero(c3, len), witt_neg(one),
                                      WittVector::zero(c3, len), one};  // X^3 - X
    WittVector alpha = hensel_lift(coeffs, MultiPoly::constant(fp(3), 0, 2));
    CHECK(alpha == teichmuller(c3, len, MultiPoly::constant(fp(3), 0, 2)));
  }
  SUBCASE("uniqueness under perturbed starts") {
    check::Rng rng(31);
    unsigned len = 4;
    WittVector one = WittVector::one(c, len);
    std::vector<WittVector> coeffs = {
        witt_neg(teichmuller(c, len, poly(fp(2), 1, "T1^2 + T1"))), witt_neg(one), one};
    WittVector base = hensel_lift(coeffs, poly(fp(2), 1, "T1"));
    for (int i = 0; i < 10; ++i) {
      WittVector start = witt_add(teichmuller(c, len, poly(fp(2), 1, "T1")),
                                  verschiebung(check::random_witt(rng, c, len, 2, 2)));
      REQUIRE(hensel_lift(coeffs, poly(fp(2), 1, "T1"), start) == base);
    }
  }
  SUBCASE("bad inputs are rejected") {
    unsigned len = 3;
    WittVector one = WittVector::one(c, len);
    std::vector<WittVector> coeffs = {WittVector::zero(c, len), witt_neg(one), one};
    CHECK_THROWS_AS(hensel_lift(coeffs, poly(fp(2), 1, "T1")), Error);  // T1 is not a root
    // X^2 has derivative 0 at the root.
    std::vector<WittVector> sq = {WittVector::zero(c, len), WittVector::zero(c, len), one};
    CHECK_THROWS_AS(hensel_lift(sq, MultiPoly(fp(2), 1)), Error);
  }
}
