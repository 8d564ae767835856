#include <catch2/catch_amalgamated.hpp>

#include <memory>
#include <random>

#include "resmeta/oracle.hpp"

using namespace resmeta;
using namespace resmeta::oracle;

namespace {
Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}

std::shared_ptr<Scenario> line_scenario() {
  auto b = make_bundle(SeqSpec::harmonic(1), SeqSpec::harmonic(1),
                       SeqSpec::constant(1.0), SeqSpec::constant(1.0));
  return std::make_shared<Scenario>(
      make_scenario("line", MonotoneOp::linear_psd(Mat::Identity(1, 1)),
                    MonotoneOp::linear_psd(Mat::Identity(1, 1)), v1(1), v1(2), v1(0),
                    b, ErrorSchedule::zero(1)));
}
}  // namespace

TEST_CASE("quasi-rate witness search on scalar sequences") {
  auto harmonic = [](long m) { return 1.0 / (m + 1); };
  SECTION("a_m = 1/(m+1), k=1, f(n)=n+3: first good interval starts at 1") {
    auto w = find_quasi_witness(harmonic, Nat(1ul), Counterfunction::affine(1, 3), 100);
    REQUIRE(w.found);
    CHECK(w.n_star == 1);
  }
  SECTION("k=0: everything is within 1") {
    auto w = find_quasi_witness(harmonic, Nat(0ul), Counterfunction::affine(2, 0), 100);
    REQUIRE(w.found);
    CHECK(w.n_star == 0);
  }
  SECTION("zero sequence: witness 0") {
    auto w = find_quasi_witness([](long) { return 0.0; }, Nat(9ul),
                                Counterfunction::identity(), 10);
    REQUIRE(w.found);
    CHECK(w.n_star == 0);
  }
  SECTION("constant 1 sequence: no witness for k >= 1") {
    auto w = find_quasi_witness([](long) { return 1.0; }, Nat(1ul),
                                Counterfunction::identity(), 25);
    CHECK_FALSE(w.found);
    CHECK(w.checked_upto == 25);
  }
}

TEST_CASE("metastability witness search on trajectories") {
  auto s = line_scenario();
  SECTION("singleton intervals: witness 0 for the pairwise metric") {
    Trajectory t(s, IterTag::MarStar);
    WitnessQuery q;
    q.k = Nat(9ul);
    q.f = Counterfunction::identity();
    q.metric = Metric::CauchyPair;
    q.cap = 100;
    auto w = find_meta_witness(t, q);
    REQUIRE(w.found);
    CHECK(w.n_star == 0);
  }
  SECTION("witnesses are minimal") {
    Trajectory t(s, IterTag::MarStar);
    WitnessQuery q;
    q.k = Nat(9ul);
    q.f = Counterfunction::affine(1, 10);
    q.metric = Metric::CauchyPair;
    q.cap = 5000;
    auto w = find_meta_witness(t, q);
    REQUIRE(w.found);
    if (w.n_star > 0) {
      // re-check n_star - 1 by hand: some pair in its interval must be wide
      long n = (long)w.n_star - 1;
      Nat fn = q.f(Nat((unsigned long)n));
      double eps = 0.1;
      bool bad = false;
      for (long i = n; i <= (long)fn.to_ulong() && !bad; ++i)
        for (long j = i + 1; j <= (long)fn.to_ulong() && !bad; ++j)
          if ((t.at(i) - t.at(j)).norm() > eps) bad = true;
      CHECK(bad);
    }
  }
  SECTION("residual metrics agree with direct evaluation") {
    Trajectory t(s, IterTag::MarStar);
    WitnessQuery q;
    q.k = Nat(4ul);
    q.f = Counterfunction::affine(1, 5);
    q.metric = Metric::ResidualBoth;
    q.R = 1;
    q.cap = 5000;
    auto w = find_meta_witness(t, q);
    REQUIRE(w.found);
    auto [ra, rb] = t.residuals(1, (long)w.n_star);
    CHECK(std::max(ra, rb) <= 0.2 + 1e-12);
  }
}

TEST_CASE("domination verdicts") {
  WitnessResult found{true, 17, 17};
  CHECK(check_domination(Nat::top(), found) == Verdict::Pass);
  CHECK(check_domination(Nat(17ul), found) == Verdict::Pass);
  CHECK(check_domination(Nat(16ul), found) == Verdict::Fail);
  WitnessResult missing{false, 0, 1000};
  CHECK(check_domination(Nat(5ul), missing) == Verdict::Inconclusive);
}

TEST_CASE("analytic projection reference") {
  SECTION("intersection of two kernels is the origin") {
    auto s = line_scenario();
    Vec p = projection_reference(*s);
    CHECK(p.norm() == 0.0);
  }
  SECTION("interval intersection clamps the anchor") {
    auto b = make_bundle(SeqSpec::harmonic(1), SeqSpec::harmonic(1),
                         SeqSpec::constant(1.0), SeqSpec::constant(1.0));
    auto s = make_scenario("clamp", MonotoneOp::box_cone(v1(0), v1(1)),
                           MonotoneOp::box_cone(v1(0), v1(2)), v1(1.5), v1(0.5),
                           v1(0.5), b, ErrorSchedule::zero(1));
    Vec p = projection_reference(s);
    CHECK(p(0) == Catch::Approx(1.0));
  }
}

TEST_CASE("synthetic checks for the summable-perturbation rate lemma") {
  SECTION("geometric decay, doubling divergence modulus") {
    SyntheticSeqs q;
    double s = 1.0;
    for (int i = 0; i < 64; ++i) {
      q.s.push_back(s);
      q.alpha.push_back(0.5);
      q.lambda.push_back(0.0);
      s *= 0.5;
    }
    XuParams prm;
    prm.A = Counterfunction::affine(2, 0);  // sum of 1/2's: A(m)=2m works
    prm.M = Nat(1ul);
    prm.k = 0;
    CHECK(check_xu_lemma(XuKind::Rho1, q, prm) == Verdict::Pass);
    prm.k = 3;
    CHECK(check_xu_lemma(XuKind::Rho1, q, prm) == Verdict::Pass);
  }
  SECTION("interval form with the hand-computed start index 7") {
    SyntheticSeqs q;
    double s = 1.0;
    for (int i = 0; i < 64; ++i) {
      q.s.push_back(s);
      q.alpha.push_back(0.5);
      q.lambda.push_back(0.0);
      s *= 0.5;
    }
    XuParams prm;
    prm.A = Counterfunction::affine(2, 0);
    prm.M = Nat(4ul);
    prm.k = 0;
    prm.n = 0;
    prm.p = 60;
    // sigma1 = 7 here; s_7 = 2^-7 <= 1
    CHECK(check_xu_lemma(XuKind::Sigma1, q, prm) == Verdict::Pass);
  }
  SECTION("a single spike within the Cauchy budget still passes") {
    SyntheticSeqs q;
    double s = 1.0;
    for (int i = 0; i < 128; ++i) {
      q.s.push_back(s);
      q.alpha.push_back(0.5);
      q.lambda.push_back(0.0);
      q.d.push_back(i == 3 ? 0.25 : 0.0);
      s = 0.5 * s + q.d[i];
    }
    XuParams prm;
    prm.A = Counterfunction::affine(2, 0);
    prm.M = Nat(2ul);
    prm.k = 1;
    // D(k) = 3 bounds the tail of sum d_n (all mass at i = 3)
    prm.D = Counterfunction::constant(Nat(3ul));
    CHECK(check_xu_lemma(XuKind::Rho1, q, prm) == Verdict::Pass);
  }
  SECTION("hypothesis violation reports an invalid fixture") {
    SyntheticSeqs q;
    q.s = {1.0, 2.0};  // grows although alpha = 1/2 and b = c = d = 0
    q.alpha = {0.5};
    q.lambda = {0.0};
    XuParams prm;
    prm.A = Counterfunction::affine(2, 0);
    CHECK(check_xu_lemma(XuKind::Rho1, q, prm) == Verdict::Inconclusive);
  }
  SECTION("product-condition variants") {
    SyntheticSeqs q;
    double s = 1.0;
    for (int i = 0; i < 64; ++i) {
      q.s.push_back(s);
      q.alpha.push_back(0.5);
      q.lambda.push_back(0.0);
      s *= 0.5;
    }
    XuParams prm;
    // prod_{i=m}^{n}(1/2) = 2^{-(n-m+1)} <= 1/(k+1) once n >= m + log2(k+1)
    prm.Aprime = [](const Nat& m, const Nat& k) { return m + k; };
    prm.M = Nat(1ul);
    prm.k = 2;
    prm.n = 0;
    prm.p = 60;
    CHECK(check_xu_lemma(XuKind::Sigma2, q, prm) == Verdict::Pass);
    CHECK(check_xu_lemma(XuKind::Rho2, q, prm) == Verdict::Pass);
  }
}

TEST_CASE("monotone-operator inner-product bound") {
  SECTION("hand-evaluated linear example") {
    auto op = MonotoneOp::linear_psd(Mat::Identity(1, 1));
    auto rep = check_monotone_inner_bound(op, 1.0, v1(2), v1(2), v1(3));
    CHECK(rep.graph_pair_ok);
    CHECK(rep.lhs == Catch::Approx(-2.0));   // <2-3, 2>
    CHECK(rep.rhs == Catch::Approx(-3.75));  // -1.5 * (0.5 + 2)
    CHECK(rep.slack == Catch::Approx(1.75));
  }
  SECTION("manufactured graph pairs always satisfy the bound") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coord(-4, 4);
    Mat Q(1, 1);
    Q << 2;
    std::vector<MonotoneOp> zoo = {MonotoneOp::linear_psd(Q),
                                   MonotoneOp::box_cone(v1(-1), v1(1)),
                                   MonotoneOp::quadratic(v1(1), Q)};
    for (const auto& op : zoo)
      for (int t = 0; t < 100; ++t) {
        double lam = 0.5 + std::abs(coord(rng));
        Vec xt = v1(coord(rng));
        Vec a = op.resolvent(lam, xt);
        Vec b = (xt - a) / lam;
        auto rep = check_monotone_inner_bound(op, 1.0, a, b, v1(coord(rng)));
        CHECK(rep.graph_pair_ok);
        CHECK(rep.slack >= -1e-9);
      }
  }
}

TEST_CASE("last-ascent lemma on fixed and random data") {
  CHECK(check_mainge({0, 1, 0, 0, 0}, 0, 0) == Verdict::Pass);
  CHECK(check_mainge({0, 1, 2, 3}, 0, 0) == Verdict::Pass);
  CHECK(check_mainge({1, 0, 0}, 0, 0) == Verdict::Inconclusive);  // no ascent at m

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> val(0, 1);
  int tested = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> s(20);
    for (auto& x : s) x = val(rng);
    long m = (long)(rng() % 10);
    if (!(s[m] < s[m + 1])) {
      s[m + 1] = s[m] + 0.5;  // force the required ascent
    }
    ++tested;
    CHECK(check_mainge(s, m, m / 2) == Verdict::Pass);
  }
  CHECK(tested == 1000);
}

TEST_CASE("empirical quasi-rate hooks report searched witnesses") {
  auto hook = empirical_quasi_rate("emp", [](long m) { return 1.0 / (m + 1); }, 1000);
  CHECK(hook.valid());
  CHECK(hook.rule(Nat(1ul), Counterfunction::affine(1, 3)).value() == 1);
  CHECK(hook.rule(Nat(0ul), Counterfunction::identity()).value() == 0);

  auto stuck = empirical_quasi_rate("stuck", [](long) { return 1.0; }, 50);
  Nat r = stuck.rule(Nat(3ul), Counterfunction::identity());
  CHECK(r.is_top());
  CHECK(r.lb() == 50);
}
