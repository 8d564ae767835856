#include <catch2/catch_amalgamated.hpp>

#include "resmeta/schedules.hpp"

using resmeta::Counterfunction;
using resmeta::make_bundle;
using resmeta::Nat;
using resmeta::SeqSpec;

TEST_CASE("sequence families evaluate their closed forms") {
  CHECK(SeqSpec::harmonic(1).eval(0) == Catch::Approx(0.5));
  CHECK(SeqSpec::harmonic(2).eval(3) == Catch::Approx(1.0 / 6));
  CHECK(SeqSpec::constant(0.25).eval(17) == Catch::Approx(0.25));
  CHECK(SeqSpec::power(0.5).eval(2) == Catch::Approx(0.5));
  auto tab = SeqSpec::with_table({0.9, 0.8}, SeqSpec::constant(0.5));
  CHECK(tab.eval(1) == Catch::Approx(0.8));
  CHECK(tab.eval(2) == Catch::Approx(0.5));
}

TEST_CASE("harmonic bundle carries the hand-derived moduli") {
  auto b = make_bundle(SeqSpec::harmonic(1), SeqSpec::harmonic(1),
                       SeqSpec::constant(1.0), SeqSpec::constant(1.0));
  REQUIRE(b.has_a);
  CHECK(b.a(Nat(4ul)).value() == 4);  // 1/(n+2) <= 1/(k+1) from n = k on
  REQUIRE(b.has_A);
  CHECK(b.A(Nat(0ul)).value() == 3);  // ceil(e^1)
  CHECK(b.A(Nat(1ul)).value() == 8);  // ceil(e^2)
  REQUIRE(b.has_Aprime);
  CHECK(b.Aprime(Nat(2ul), Nat(3ul)).value() == 12);  // (m+1)(k+1)
  CHECK(b.R == 1);
  CHECK(b.t(Nat(0ul)).value() == 1);
  CHECK(b.P(Nat(5ul)).value() == 7);  // alpha_n = 1/(n+2) >= 1/(n+2)
  REQUIRE(b.has_rbeta);
  CHECK(b.r_beta(Nat(9ul)).value() == 0);  // constant beta: zero gaps
}

TEST_CASE("constant mixing weight has a divergence modulus but no rate to zero") {
  auto b = make_bundle(SeqSpec::constant(0.5), SeqSpec::harmonic(1),
                       SeqSpec::constant(1.0), SeqSpec::constant(1.0));
  CHECK_FALSE(b.has_a);
  REQUIRE(b.has_A);
  CHECK(b.A(Nat(3ul)).value() == 6);  // sum of k/c terms: need m >= k/c - 1
  CHECK(b.P(Nat(100ul)).value() == 2);
}

TEST_CASE("validated bundles produce no violations on a finite prefix") {
  auto b = make_bundle(SeqSpec::harmonic(1), SeqSpec::harmonic(2),
                       SeqSpec::constant(1.0), SeqSpec::constant(2.0));
  auto bad = resmeta::validate_moduli(b, 300, 8);
  CAPTURE(bad.empty() ? "" : bad.front().which);
  CHECK(bad.empty());

  auto p = make_bundle(SeqSpec::power(0.5), SeqSpec::power(1.0),
                       SeqSpec::constant(0.5), SeqSpec::constant(1.0));
  auto bad2 = resmeta::validate_moduli(p, 300, 5);
  CAPTURE(bad2.empty() ? "" : bad2.front().which);
  CHECK(bad2.empty());
}

TEST_CASE("a wrong modulus is refuted at the first witness") {
  auto b = make_bundle(SeqSpec::harmonic(1), SeqSpec::harmonic(1),
                       SeqSpec::constant(1.0), SeqSpec::constant(1.0));
  // claim alpha_n = 1/(n+2) <= 1/(k+1) already from n = 0: false for k = 2
  b.a = Counterfunction("bogus", [](const Nat&) { return Nat(0ul); });
  auto bad = resmeta::validate_moduli(b, 50, 4);
  REQUIRE_FALSE(bad.empty());
  CHECK(bad.front().which == "Q2.a");
  CHECK(bad.front().k == 2);
  CHECK(bad.front().n == 0);
}

TEST_CASE("beta and mu families must stay bounded away from zero") {
  CHECK_THROWS_AS(make_bundle(SeqSpec::harmonic(1), SeqSpec::harmonic(1),
                              SeqSpec::harmonic(1), SeqSpec::constant(1.0)),
                  std::invalid_argument);
  auto tab = SeqSpec::with_table({2.0, 3.0}, SeqSpec::constant(1.0));
  auto b = make_bundle(SeqSpec::harmonic(1), SeqSpec::harmonic(1), tab,
                       SeqSpec::constant(1.0));
  CHECK(b.R == 1);
  CHECK(b.t(Nat(0ul)).value() == 3);
  CHECK(b.r_beta(Nat(0ul)).value() == 2);  // gaps settle after the table
  CHECK(resmeta::validate_moduli(b, 200, 6).empty());
}

TEST_CASE("error schedules: zero and geometric") {
  auto z = resmeta::ErrorSchedule::zero(2);
  CHECK(z.zero_errors);
  CHECK(z.e(5).norm() == 0.0);
  CHECK(z.E(Nat(9ul)).value() == 0);
  CHECK(z.M == 1);
  CHECK(resmeta::validate_errors(z, 100, 6).empty());

  Eigen::VectorXd dir(1);
  dir << 1.0;
  auto g = resmeta::ErrorSchedule::geometric(dir, 0.5, dir, 0.5);
  CHECK_FALSE(g.zero_errors);
  CHECK(g.e(3).norm() == Catch::Approx(0.125));
  CHECK(resmeta::validate_errors(g, 400, 10).empty());
  CHECK(g.M >= 3);  // prefix sums ~2 each plus 1
}
