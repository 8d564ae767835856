#include <catch2/catch_amalgamated.hpp>

#include "resmeta/nat.hpp"

using resmeta::Nat;

TEST_CASE("exact arithmetic behaves like bignums") {
  Nat a(7ul), b(5ul);
  CHECK((a + b).value() == 12);
  CHECK((a * b).value() == 35);
  CHECK(monus(a, b).value() == 2);
  CHECK(monus(b, a).value() == 0);
  CHECK(max_of(a, b) == a);
  CHECK(min_of(a, b) == b);
  CHECK(a.str() == "7");
  CHECK(Nat().value() == 0);
}

TEST_CASE("values above the cap collapse to a saturated Nat") {
  Nat big(mpz_class(resmeta::nat_cap()));
  Nat over = big + Nat(1ul);
  CHECK(over.is_top());
  CHECK(over.lb() == resmeta::nat_cap());
  // saturated values are absorbing under + and *
  CHECK((over + Nat(3ul)).is_top());
  CHECK((over * Nat(2ul)).is_top());
}

TEST_CASE("saturated operands propagate soundly") {
  Nat t = Nat::top(100);
  CHECK(t.is_top());
  CHECK(t.lb() == 100);
  CHECK((t + Nat(5ul)).lb() == 105);
  CHECK_FALSE((t + Nat(5ul)).exact());

  SECTION("zero annihilates even a saturated factor") {
    CHECK((Nat(0ul) * t).exact());
    CHECK((Nat(0ul) * t).value() == 0);
  }
  SECTION("monus with saturated subtrahend loses all information") {
    Nat r = monus(Nat(50ul), t);
    CHECK(r.is_top());
    CHECK(r.lb() == 0);
  }
  SECTION("min against a top with a high floor stays exact") {
    Nat r = min_of(Nat(42ul), Nat::top(42));
    CHECK(r.exact());
    CHECK(r.value() == 42);
    Nat s = min_of(Nat(42ul), Nat::top(41));
    CHECK(s.is_top());
    CHECK(s.lb() == 41);
  }
  SECTION("max with a saturated side stays saturated") {
    Nat r = max_of(Nat(200ul), Nat::top(100));
    CHECK(r.is_top());
    CHECK(r.lb() == 200);
  }
}

TEST_CASE("ceil_ln is the least j with e^j >= x") {
  CHECK(ceil_ln(Nat(1ul)).value() == 0);
  CHECK(ceil_ln(Nat(2ul)).value() == 1);
  CHECK(ceil_ln(Nat(3ul)).value() == 2);   // e^1 ~ 2.72 < 3
  CHECK(ceil_ln(Nat(4ul)).value() == 2);   // e^1 < 4 <= e^2
  CHECK(ceil_ln(Nat(8ul)).value() == 3);   // e^2 < 8 <= e^3
  CHECK(ceil_ln(Nat(16ul)).value() == 3);  // e^3 ~ 20.1 >= 16
  CHECK(ceil_ln(Nat(21ul)).value() == 4);
  // boundary against exact e-powers stays consistent under refinement
  CHECK(ceil_ln(Nat(1000000ul)).value() == 14);
}

TEST_CASE("ceil_exp matches hand values and saturates") {
  CHECK(ceil_exp(Nat(0ul)).value() == 1);
  CHECK(ceil_exp(Nat(1ul)).value() == 3);
  CHECK(ceil_exp(Nat(2ul)).value() == 8);
  CHECK(ceil_exp(Nat(3ul)).value() == 21);
  CHECK(ceil_exp(Nat(20000ul)).is_top());  // e^20000 >> 10^4000
}

TEST_CASE("domination order treats top as an upper bound certificate") {
  CHECK(resmeta::dominates(Nat::top(), mpz_class(17)));
  CHECK(resmeta::dominates(Nat(7ul), mpz_class(7)));
  CHECK_FALSE(resmeta::dominates(Nat(7ul), mpz_class(8)));
}

TEST_CASE("cap strings support caret powers") {
  CHECK(resmeta::detail::parse_cap("10^6") == 1000000);
  CHECK(resmeta::detail::parse_cap("12345") == 12345);
}
