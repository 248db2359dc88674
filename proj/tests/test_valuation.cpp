#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wittkit/valuation.hpp"

using namespace wittkit;
using th::fp;
using th::poly;

namespace {

// Direct oracle for weighted-degree values: min over monomials.
ExtRat weighted_oracle(const MultiPoly& x, const std::vector<Rat>& w) {
  if (x.is_zero()) return ExtRat::infinity();
  ExtRat best = ExtRat::infinity();
  for (const auto& [m, c] : x.terms()) {
    Rat v(0);
    for (unsigned i = 0; i < w.size(); ++i) v += w[i] * Rat(m[i]);
    best = ExtRat::min(best, ExtRat(Rat(-v)));
  }
  return best;
}

}  // namespace

TEST_CASE("weighted degree evaluation") {
  auto spec = ValuationSpec::weighted_degree({Rat(1), Rat(1)});
  auto x = poly(fp(2), 2, "T1^2*T2 + T1");
  CHECK(eval_valuation(*spec, x) == ExtRat(-3));
  CHECK(eval_valuation(*spec, x) == weighted_oracle(x, {Rat(1), Rat(1)}));
  CHECK(eval_valuation(*spec, MultiPoly(fp(2), 2)).is_infinity());
  CHECK(eval_valuation(*ValuationSpec::trivial(), x) == ExtRat(0));
  CHECK_THROWS_AS(eval_valuation(*spec, poly(fp(2), 1, "T1")), Error);
  CHECK_THROWS_AS(ValuationSpec::weighted_degree({Rat(0)}), Error);

  check::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    std::vector<Rat> w = {Rat(rng.range(1, 3)), Rat(rng.range(1, 3), 2)};
    w[1].canonicalize();
    auto s = ValuationSpec::weighted_degree(w);
    auto y = check::random_poly(rng, fp(3), 2, 6, 4);
    REQUIRE(eval_valuation(*s, y) == weighted_oracle(y, w));
  }
}

TEST_CASE("quotient valuation on reduced representatives") {
  // B = A[T]/(T^2 - S T) with S = T1, T = T2.
  auto inner = ValuationSpec::weighted_degree({Rat(1)});
  auto f = poly(fp(2), 2, "T2^2 + T1*T2");
  auto spec = ValuationSpec::monic_quotient(inner, Rat(3), f);
  CHECK(eval_valuation(*spec, poly(fp(2), 2, "T1 + T2")) == ExtRat(-3));
  CHECK(eval_valuation(*spec, MultiPoly(fp(2), 2)).is_infinity());
  // Reduction happens before evaluation: T2^2 = S*T2 in B.
  CHECK(eval_valuation(*spec, poly(fp(2), 2, "T2^2")) ==
        eval_valuation(*spec, poly(fp(2), 2, "T1*T2")));
  // Restricted to A the quotient valuation is the inner one.
  check::Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    auto a = check::random_poly(rng, fp(2), 1, 5, 3);
    REQUIRE(eval_valuation(*spec, a.insert_var(1)) == eval_valuation(*inner, a));
  }
  CHECK_THROWS_AS(ValuationSpec::monic_quotient(inner, Rat(-1), f), Error);
  CHECK_THROWS_AS(ValuationSpec::monic_quotient(inner, Rat(3), poly(fp(2), 2, "T1*T2")), Error);
}

TEST_CASE("product order") {
  std::vector<ExtRat> v = {ExtRat(-1), ExtRat(-3), ExtRat::infinity()};
  CHECK(product_order(v) == ExtRat(-3));
  std::vector<ExtRat> w = {ExtRat::infinity(), ExtRat::infinity()};
  CHECK(product_order(w).is_infinity());
  std::vector<ExtRat> u = {ExtRat(0), ExtRat::neg_infinity()};
  CHECK(product_order(u).is_neg_infinity());
  CHECK_THROWS_AS(product_order(std::vector<ExtRat>{}), Error);
}

TEST_CASE("regularity of monic polynomials") {
  auto inner = ValuationSpec::weighted_degree({Rat(1)});
  auto f = poly(fp(2), 2, "T2^2 + T1*T2");
  CHECK_FALSE(is_regular(f, *inner, Rat(1), 1));
  CHECK(is_regular(f, *inner, Rat(3), 1));
  for (unsigned m = 1; m <= 3; ++m) {
    auto tm = MultiPoly::variable(fp(2), 2, 1, m);
    CHECK(is_regular(tm, *inner, Rat(1), 1));
    CHECK(is_regular(tm, *inner, Rat(1, 2), 1));
  }
  CHECK_THROWS_AS(is_regular(poly(fp(2), 2, "T1*T2"), *inner, Rat(1), 1), Error);
}

TEST_CASE("localization profiles") {
  auto deg1 = ValuationSpec::weighted_degree({Rat(1)});
  auto t = poly(fp(2), 1, "T1");

  SUBCASE("reciprocal of the coordinate") {
    auto prof = localization_profile(LocElem{poly(fp(2), 1, "1"), 1, t}, *deg1, Rat(1), 4);
    CHECK(prof.theta == 1);
    CHECK(prof.sigma == ExtRat(-1));
    CHECK(prof.tau == ExtRat(-1));
    CHECK(prof.nu_prime == ExtRat(-1));
    CHECK(prof.nu_prime_exact);
    CHECK(prof.mu == ExtRat(-1));
  }
  SUBCASE("ring elements have no denominator") {
    auto a = poly(fp(2), 1, "T1^2 + 1");
    auto prof = localization_profile(LocElem{a, 0, t}, *deg1, Rat(1), 4);
    CHECK(prof.theta == 0);
    CHECK(prof.sigma == eval_valuation(*deg1, a));
    CHECK(prof.nu_prime >= eval_valuation(*deg1, a));
  }
  SUBCASE("partial fractions beat the reduced representation") {
    auto prof = localization_profile(LocElem{poly(fp(2), 1, "T1 + 1"), 2, t}, *deg1, Rat(1), 4);
    CHECK(prof.theta == 2);
    CHECK(prof.sigma == ExtRat(-3));
    CHECK(prof.tau == ExtRat(-3));
    CHECK(prof.nu_prime == ExtRat(-2));  // 1/T + 1/T^2
    CHECK(prof.nu_prime_exact);
    CHECK(prof.mu == ExtRat(-2));
  }
  SUBCASE("zero element") {
    auto prof = localization_profile(LocElem{MultiPoly(fp(2), 1), 3, t}, *deg1, Rat(1), 8);
    CHECK(prof.theta == 0);
    CHECK(prof.nu_prime.is_infinity());
    CHECK(prof.mu.is_infinity());
  }
  SUBCASE("search bound below theta") {
    CHECK_THROWS_AS(localization_profile(LocElem{poly(fp(2), 1, "T1 + 1"), 3, t}, *deg1, Rat(1), 2),
                    Error);
  }
}

TEST_CASE("localizing certificates") {
  auto deg1 = ValuationSpec::weighted_degree({Rat(1)});
  auto t = poly(fp(2), 1, "T1");
  check::Rng rng(19);
  std::vector<MultiPoly> samples;
  for (int i = 0; i < 20; ++i) samples.push_back(check::random_poly(rng, fp(2), 1, 6, 3));

  CHECK(verify_localizing(t, *deg1, Rat(1), Rat(0), 4, samples).ok);
  CHECK(verify_localizing(poly(fp(2), 1, "1"), *deg1, Rat(1), Rat(0), 4, samples).ok);
  CHECK_THROWS_AS(verify_localizing(t, *deg1, Rat(1), Rat(-1), 4, samples), Error);

  // A failing certificate is reported with its witness.
  auto bad = verify_localizing(t, *deg1, Rat(1, 2), Rat(0), 1, samples);
  if (!bad.ok) CHECK(bad.counterexample.has_value());
}

TEST_CASE("sandwich verification") {
  check::Rng rng(29);
  auto deg1 = ValuationSpec::weighted_degree({Rat(1)});
  std::vector<ExtRat> v1, v2;
  for (int i = 0; i < 50; ++i) {
    auto a = check::random_nonzero_poly(rng, fp(2), 1, 6, 3);
    v1.push_back(eval_valuation(*deg1, a));
    v2.push_back(eval_valuation(*deg1, a));
  }
  CHECK(verify_sandwich(v1, v2, SandwichCertificate{}).ok);

  std::vector<ExtRat> doubled;
  for (const auto& v : v1) doubled.push_back(v.scaled(Rat(2)));
  SandwichCertificate scale_cert{Rat(2), Rat(1, 2), Rat(0), Rat(0)};
  scale_cert.c2.canonicalize();
  CHECK(verify_sandwich(v1, doubled, scale_cert).ok);

  // Sandwich between nu' and tau with the explicit localization constant.
  auto t = poly(fp(2), 1, "T1");
  std::vector<ExtRat> nus, taus;
  Rat d(1);
  Rat q = Rat(2) + Rat(1) / d;  // 2 + |nu(T)| / d
  for (int i = 0; i < 50; ++i) {
    auto a = check::random_nonzero_poly(rng, fp(2), 1, 5, 3);
    LocElem z = loc_reduce(a, static_cast<unsigned>(rng.range(0, 3)), t);
    auto prof = localization_profile(z, *deg1, d, z.exp + 4);
    REQUIRE(prof.nu_prime_exact);
    nus.push_back(prof.nu_prime);
    taus.push_back(prof.tau);
  }
  // nu' >= 1*tau - 0 and tau >= q*nu' - 0.
  SandwichCertificate tau_cert{q, Rat(1), Rat(0), Rat(0)};
  for (std::size_t i = 0; i < nus.size(); ++i) {
    REQUIRE(nus[i] >= taus[i]);
    REQUIRE(taus[i] >= nus[i].scaled(q));
  }
  CHECK(verify_sandwich(nus, taus, tau_cert).ok);
}

TEST_CASE("pseudovaluation axioms") {
  check::Rng rng(41);
  auto inner = ValuationSpec::weighted_degree({Rat(1)});
  auto fq = poly(fp(2), 2, "T2^2 + T2 + T1");
  std::vector<SpecPtr> specs = {
      ValuationSpec::weighted_degree({Rat(1), Rat(2)}),
      ValuationSpec::monic_quotient(inner, Rat(2), fq),
  };
  for (const auto& spec : specs) {
    MultiPoly one = MultiPoly::constant(fp(2), 2, 1);
    REQUIRE(eval_valuation(*spec, one) == ExtRat(0));
    REQUIRE(eval_valuation(*spec, MultiPoly(fp(2), 2)).is_infinity());
    for (int i = 0; i < 300; ++i) {
      auto a = check::random_poly(rng, fp(2), 2, 5, 3);
      auto b = check::random_poly(rng, fp(2), 2, 5, 3);
      ExtRat va = eval_valuation(*spec, a), vb = eval_valuation(*spec, b);
      REQUIRE(eval_valuation(*spec, a + b) >= ExtRat::min(va, vb));
      REQUIRE(eval_valuation(*spec, a - b) >= ExtRat::min(va, vb));
      REQUIRE(eval_valuation(*spec, a * b) >= va + vb);
    }
  }
  // Weighted degrees over an integral domain are valuations.
  auto wd = ValuationSpec::weighted_degree({Rat(1), Rat(1, 2)});
  for (int i = 0; i < 300; ++i) {
    auto a = check::random_poly(rng, fp(3), 2, 5, 3);
    auto b = check::random_poly(rng, fp(3), 2, 5, 3);
    REQUIRE(eval_valuation(*wd, a * b) == eval_valuation(*wd, a) + eval_valuation(*wd, b));
  }
}

TEST_CASE("regular polynomials multiply degrees additively") {
  // Non-multiplicative inner pseudovaluation from a quotient ring.
  auto quot =
      ValuationSpec::monic_quotient(ValuationSpec::trivial(), Rat(1), poly(fp(2), 1, "T1^2 + T1 + 1"));
  check::Rng rng(43);
  Rat dt(2);
  MultiPoly freg(fp(2), 2);
  freg.add_term(Mono{2, 0}, 1);
  freg.add_term(Mono{1, 1}, 1);
  freg.add_term(Mono{0, 1}, 1);  // T^2 + uT + u with T the first variable
  REQUIRE(is_regular(freg, *quot, dt, 0));
  for (int i = 0; i < 200; ++i) {
    auto g = check::random_nonzero_poly(rng, fp(2), 2, 4, 3);
    ExtRat lhs = poly_value_in_var(freg * g, 0, *quot, dt);
    ExtRat rhs = poly_value_in_var(freg, 0, *quot, dt) + poly_value_in_var(g, 0, *quot, dt);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("spec literals round-trip") {
  CoeffRing ring = fp(2);
  for (const std::string text : {
           "trivial",
           "degree(d=[1,1])",
           "degree(d=[1,3/2])",
           "quotient(inner=degree(d=[1]), d=3, f=T1*T2 + T2^2)",
           "loc(inner=degree(d=[1]), f=T1, d=1)",
           "loc(inner=quotient(inner=degree(d=[1]), d=3, f=T1*T2 + T2^2), f=T1, d=2)",
       }) {
    SpecPtr spec = ValuationSpec::parse(ring, text);
    CHECK(spec->str() == text);
    CHECK(*ValuationSpec::parse(ring, spec->str()) == *spec);
  }
  CHECK_THROWS_AS(ValuationSpec::parse(ring, "degree(d=[])"), Error);
  CHECK_THROWS_AS(ValuationSpec::parse(ring, "degrees(d=[1])"), Error);
}
