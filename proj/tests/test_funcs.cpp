#include <catch2/catch_amalgamated.hpp>

#include "resmeta/funcs.hpp"

using resmeta::Counterfunction;
using resmeta::Nat;
using resmeta::RateFunctional;

TEST_CASE("counterfunction evaluation and statics") {
  auto id = Counterfunction::identity();
  CHECK(id(Nat(5ul)).value() == 5);
  CHECK(Counterfunction::constant(Nat(9ul))(Nat(3ul)).value() == 9);
  CHECK(Counterfunction::affine(2, 1)(Nat(10ul)).value() == 21);
}

TEST_CASE("saturated argument propagates through monotone functions") {
  auto f = Counterfunction::affine(3, 2);
  Nat r = f(Nat::top(10));
  CHECK(r.is_top());
  CHECK(r.lb() == 32);  // f(10) = 32 is still a lower bound on f(true arg)

  Counterfunction zig(
      "zig", [](const Nat& n) { return n.lb() % 2 == 0 ? n : Nat(0ul); },
      /*monotone=*/false);
  CHECK_THROWS_AS(zig(Nat::top(4)), std::domain_error);
}

TEST_CASE("majorized produces the running maximum") {
  Counterfunction zig(
      "zig", [](const Nat& n) { return Nat(n.lb() % 3 == 0 ? 10ul : 1ul); },
      /*monotone=*/false);
  auto maj = zig.majorized();
  CHECK(maj(Nat(0ul)).value() == 10);
  CHECK(maj(Nat(1ul)).value() == 10);
  CHECK(maj(Nat(2ul)).value() == 10);
  // monotone input is returned unchanged
  auto id = Counterfunction::identity();
  CHECK(id.majorized()(Nat(7ul)).value() == 7);
}

TEST_CASE("standard transforms") {
  auto f = Counterfunction::identity();
  CHECK(resmeta::double_shift(f)(Nat(3ul)).value() == 7);        // f(2m+1)
  CHECK(resmeta::clip_below(f, Nat(10ul))(Nat(3ul)).value() == 10);
  CHECK(resmeta::clip_below(f, Nat(10ul))(Nat(12ul)).value() == 12);
  CHECK(resmeta::scale_shift(f, 2, 5)(Nat(4ul)).value() == 13);
  auto g = Counterfunction::affine(1, 1);
  CHECK(resmeta::compose(g, g)(Nat(0ul)).value() == 2);
}

TEST_CASE("iterate_self_map: exact, fixed point, fast-forward") {
  auto inc = [](const Nat& n) { return n + Nat(1ul); };
  CHECK(resmeta::iterate_self_map(inc, Nat(5ul), Nat(0ul)).value() == 5);

  auto fix = [](const Nat& n) { return max_of(n, Nat(3ul)); };
  // hits the fixed point 3 and stays exact regardless of the count
  CHECK(resmeta::iterate_self_map(fix, Nat(1000000ul), Nat(0ul)).value() == 3);

  SECTION("budget exhaustion with the expansive guarantee") {
    Nat r = resmeta::iterate_self_map(inc, Nat(1000000ul), Nat(0ul),
                                      /*expansive=*/true, /*budget=*/10);
    CHECK(r.is_top());
    CHECK(r.lb() == 1000000);  // 10 done + 999990 remaining, each adds >= 1
  }
  SECTION("budget exhaustion without it keeps only the reached value") {
    Nat r = resmeta::iterate_self_map(inc, Nat(1000000ul), Nat(0ul),
                                      /*expansive=*/false, /*budget=*/10);
    CHECK(r.is_top());
    CHECK(r.lb() == 10);
  }
  SECTION("inexact count degrades the result to a lower bound") {
    Nat r = resmeta::iterate_self_map(inc, Nat::top(5), Nat(0ul));
    CHECK(r.is_top());
    CHECK(r.lb() == 5);
  }
}

TEST_CASE("parity merge: Psi[psi](k,f) = 2 psi(k, m->f(2m+1)) + 1") {
  RateFunctional psi3("psi3", [](const Nat&, const Counterfunction&) {
    return Nat(3ul);
  });
  auto merged = resmeta::parity_merge(psi3);
  CHECK(merged(Nat(0ul), Counterfunction::identity()).value() == 7);

  // the inner functional sees the reindexed counterfunction
  RateFunctional probe("probe", [](const Nat&, const Counterfunction& f) {
    return f(Nat(4ul));
  });
  CHECK(resmeta::parity_merge(probe)(Nat(0ul), Counterfunction::identity()).value() ==
        2 * 9 + 1);
}

TEST_CASE("combine_meta takes the cheaper orientation of the two-bound merge") {
  RateFunctional c1("c1", [](const Nat&, const Counterfunction&) { return Nat(1ul); });
  RateFunctional c2("c2", [](const Nat&, const Counterfunction&) { return Nat(2ul); });
  auto both = resmeta::combine_meta(c1, c2);
  CHECK(both(Nat(0ul), Counterfunction::identity()).value() == 2);

  // result is always >= each individual bound's requirement on constants
  auto same = resmeta::combine_meta(c2, c2);
  CHECK(same(Nat(3ul), Counterfunction::identity()).value() == 2);
}
