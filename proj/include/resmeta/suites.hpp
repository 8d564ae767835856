// Named verification suites shared by the CLI `verify` subcommand and the
// acceptance binary. Each suite returns one CheckResult per law/grid point;
// verdicts follow the oracle convention (fail refutes, inconclusive means the
// search budget ran out without refutation).

#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "resmeta/oracle.hpp"
#include "resmeta/registry.hpp"
#include "resmeta/scenarios.hpp"

namespace resmeta {
namespace suites {

using oracle::Verdict;

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::string detail;
};

using Results = std::vector<CheckResult>;

inline Verdict worst(const Results& rs) {
  Verdict w = Verdict::Pass;
  for (const auto& r : rs) {
    if (r.verdict == Verdict::Fail) return Verdict::Fail;
    if (r.verdict == Verdict::Inconclusive) w = Verdict::Inconclusive;
  }
  return w;
}

/// 0 pass, 1 fail, 2 inconclusive.
inline int exit_code(const Results& rs) {
  switch (worst(rs)) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 1;
}

namespace detail {

inline std::string nat_str(const Nat& v) { return v.str(); }

inline CheckResult aggregate(std::string name, long failures, long total,
                             double worst_slack) {
  std::ostringstream os;
  os << total << " samples, worst slack " << worst_slack;
  return {std::move(name), failures == 0 ? Verdict::Pass : Verdict::Fail, os.str()};
}

}  // namespace detail

// ---- operators suite (criterion 1) ------------------------------------------

inline Results suite_operators(unsigned seed = 42, int samples = 1000) {
  Results out;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> coord(-5, 5);
  std::uniform_real_distribution<double> gam(0.1, 4.0);
  auto rand2 = [&] { return scenarios::vec2(coord(rng), coord(rng)); };

  Mat Q(2, 2);
  Q << 2, 1, 1, 2;
  std::vector<MonotoneOp> zoo = {
      MonotoneOp::zero(2),
      MonotoneOp::linear_psd(Q),
      MonotoneOp::quadratic(scenarios::vec2(1, -1), Q),
      MonotoneOp::box_cone(scenarios::vec2(-1, -1), scenarios::vec2(1, 1)),
      MonotoneOp::ball_cone(scenarios::vec2(0.5, 0), 2.0),
      MonotoneOp::halfspace_cone(scenarios::vec2(1, 1), 1.0),
      MonotoneOp::translated(MonotoneOp::ball_cone(scenarios::vec2(0, 0), 1.0),
                             scenarios::vec2(2, 2)),
  };

  for (size_t oi = 0; oi < zoo.size(); ++oi) {
    const MonotoneOp& op = zoo[oi];
    std::string tag = "operators/" + op.label() + "#" + std::to_string(oi);
    long bad_firm = 0, bad_refl = 0, bad_ident = 0, bad_twice = 0;
    double worst_firm = 1e300, worst_refl = 1e300, worst_ident = 0,
           worst_twice = 1e300;
    for (int t = 0; t < samples; ++t) {
      Vec x = rand2(), y = rand2();
      double g1 = gam(rng), g2 = gam(rng);
      double a = std::min(g1, g2), bb = std::max(g1, g2);

      Vec jx = op.resolvent(bb, x), jy = op.resolvent(bb, y);
      double firm = (x - y).dot(jx - jy) - (jx - jy).squaredNorm();
      worst_firm = std::min(worst_firm, firm);
      if (firm < -1e-10) ++bad_firm;

      double refl = (x - y).norm() - (op.reflected_resolvent(bb, x) -
                                      op.reflected_resolvent(bb, y))
                                         .norm();
      worst_refl = std::min(worst_refl, refl);
      if (refl < -1e-10) ++bad_refl;

      // J_a(x) = J_b((b/a) x + (1 - b/a) J_a(x))
      Vec ja = op.resolvent(a, x);
      Vec rhs = op.resolvent(bb, (bb / a) * x + (1.0 - bb / a) * ja);
      double ident = (ja - rhs).norm();
      worst_ident = std::max(worst_ident, ident);
      if (ident > 1e-8) ++bad_ident;

      // a <= b implies ||J_a(x) - x|| <= 2 ||J_b(x) - x||
      double twice = 2.0 * (op.resolvent(bb, x) - x).norm() -
                     (op.resolvent(a, x) - x).norm();
      worst_twice = std::min(worst_twice, twice);
      if (twice < -1e-10) ++bad_twice;
    }
    out.push_back(detail::aggregate(tag + "/firmly_nonexpansive", bad_firm, samples,
                                    worst_firm));
    out.push_back(detail::aggregate(tag + "/reflected_nonexpansive", bad_refl,
                                    samples, worst_refl));
    out.push_back(detail::aggregate(tag + "/resolvent_identity", bad_ident, samples,
                                    worst_ident));
    out.push_back(detail::aggregate(tag + "/gamma_monotonicity", bad_twice, samples,
                                    worst_twice));
  }
  return out;
}

// ---- convergence suite (criterion 2) ----------------------------------------

inline Results suite_convergence(long horizon = 10000) {
  Results out;
  for (auto& s : scenarios::builtin_scenarios()) {
    Vec ref = oracle::projection_reference(*s);
    // cross-check the stored analytic reference against the closed-form
    // intersection when the latter exists
    try {
      SetDesc inter = intersect_sets(s->opA.zero_set(), s->opB.zero_set());
      Vec derived = project_onto(inter, s->u);
      if ((derived - ref).norm() > 1e-9) {
        out.push_back({"convergence/" + s->name + "/reference", Verdict::Fail,
                       "stored and derived projection references disagree"});
        continue;
      }
    } catch (const std::runtime_error&) {
      // no closed form for this combination; the stored reference stands
    }
    Trajectory t(s, IterTag::MarStar);
    double gap = (t.at(horizon) - ref).norm();
    std::ostringstream os;
    os << "gap at n=" << horizon << ": " << gap;
    out.push_back({"convergence/" + s->name,
                   gap <= 1e-6 ? Verdict::Pass : Verdict::Fail, os.str()});
  }
  return out;
}

// ---- metastability suite (criteria 3 and 5) ---------------------------------

namespace detail {

struct GridBounds {
  RateFunctional mu4, vartheta;          // unconditional tower bounds
  RateFunctional mu_tilde, mu_meta3;     // conditional bounds, empirical hooks
};

inline GridBounds scenario_bounds(const std::shared_ptr<Scenario>& s) {
  const ScheduleBundle& b = s->bundle;
  rates::Tower tw(b.a, b.ell, b.A, b.P, Nat((unsigned long)s->N));
  auto traj = std::make_shared<Trajectory>(s, IterTag::MarStar);
  auto eta = oracle::empirical_trajectory_rate("eta." + s->name, traj,
                                               oracle::Metric::ResidualBoth, b.R);
  auto etap = oracle::empirical_trajectory_rate("etaprime." + s->name, traj,
                                                oracle::Metric::CauchyPair, b.R);
  Nat N((unsigned long)s->N);
  return {tw.mu4(), tw.vartheta(),
          rates::mu_tilde(eta.rule, N, Nat(b.R), b.A, b.t),
          rates::mu_meta3(eta.rule, etap.rule, N, Nat(b.R), b.A, b.t)};
}

inline CheckResult domination_check(std::string name, Trajectory& traj,
                                    oracle::Metric metric, long stride,
                                    unsigned long k, const Counterfunction& f,
                                    const Nat& bound, unsigned long cap) {
  oracle::WitnessQuery q;
  q.k = Nat(k);
  q.f = f;
  q.cap = cap;
  q.metric = metric;
  q.stride = stride;
  q.R = traj.scenario().bundle.R;
  auto w = oracle::find_meta_witness(traj, q);
  Verdict v = oracle::check_domination(bound, w);
  std::ostringstream os;
  if (w.found)
    os << "witness " << w.n_star << ", bound " << bound.str();
  else
    os << "no witness up to " << w.checked_upto << ", bound " << bound.str();
  return {std::move(name), v, os.str()};
}

}  // namespace detail

/// Criterion 3 (unconditional bound vs. full-sequence Cauchy witnesses) and
/// criterion 5 (conditional bounds vs. even-subsequence and full witnesses).
inline Results suite_metastability(unsigned long cap = 100000,
                                  unsigned long kmax = 4) {
  Results out;
  auto grid = scenarios::default_grid();
  for (auto& s : scenarios::builtin_scenarios()) {
    auto bounds = detail::scenario_bounds(s);
    Trajectory traj(s, IterTag::MarStar);
    for (unsigned long k = 0; k <= kmax; ++k)
      for (auto& nf : grid) {
        std::string pt = s->name + "/k=" + std::to_string(k) + "/f=" + nf.name;
        out.push_back(detail::domination_check(
            "meta/unconditional/" + pt, traj, oracle::Metric::CauchyPair, 1, k,
            nf.f, bounds.mu4(Nat(k), nf.f), cap));
        // the conditional interval bound controls the even-indexed orbit
        // against a common point; doubling the precision yields pairwise
        // closeness at 1/(k+1)
        out.push_back(detail::domination_check(
            "meta/conditional_even/" + pt, traj, oracle::Metric::CauchyPair, 2, k,
            nf.f, bounds.mu_tilde(Nat(2ul * k + 1ul), nf.f), cap));
        out.push_back(detail::domination_check(
            "meta/conditional_full/" + pt, traj, oracle::Metric::CauchyPair, 1, k,
            nf.f, bounds.mu_meta3(Nat(k), nf.f), cap));
      }
  }
  return out;
}

// ---- regularity suite (criterion 4) -----------------------------------------

inline Results suite_regularity(unsigned long cap = 100000,
                                unsigned long kmax = 4) {
  Results out;
  auto grid = scenarios::default_grid();
  for (auto& s : scenarios::builtin_scenarios()) {
    const ScheduleBundle& b = s->bundle;
    rates::Tower tw(b.a, b.ell, b.A, b.P, Nat((unsigned long)s->N));
    RateFunctional vt = tw.vartheta();
    Trajectory traj(s, IterTag::MarStar);
    for (unsigned long k = 0; k <= kmax; ++k)
      for (auto& nf : grid)
        out.push_back(detail::domination_check(
            "regularity/" + s->name + "/k=" + std::to_string(k) + "/f=" + nf.name,
            traj, oracle::Metric::ResidualBoth, 1, k, nf.f, vt(Nat(k), nf.f),
            cap));
  }
  return out;
}

// ---- errors suite (criterion 6) ---------------------------------------------

inline Results suite_errors(unsigned long cap = 100000, unsigned long kmax = 4) {
  Results out;

  // part 1: the error-bearing orbit tracks the error-free one past rho(k)
  {
    auto s = scenarios::error_scenario();
    Trajectory with_err(s, IterTag::Mar), clean(s, IterTag::MarStar);
    Counterfunction rho = rates::rho_error(
        rates::ErrorVariant::DivergenceA, s->bundle.A, nullptr, s->errors.E,
        s->errors.Eprime, Nat((unsigned long)s->errors.M));
    long horizon = 1000;
    for (unsigned long k = 0; k <= 6; ++k) {
      Nat rk = rho(Nat(k));
      std::string name = "errors/tracking/k=" + std::to_string(k);
      if (!rk.fits_ulong() || (long)rk.to_ulong() > horizon) {
        out.push_back({name, Verdict::Inconclusive,
                       "rate " + rk.str() + " beyond the checked horizon"});
        continue;
      }
      double eps = 1.0 / (double)(k + 1);
      double worst = 0;
      bool ok = true;
      for (long n = (long)rk.to_ulong(); n <= horizon; ++n) {
        double gap = (with_err.at(n) - clean.at(n)).norm();
        worst = std::max(worst, gap);
        if (gap > eps + 1e-12) ok = false;
      }
      std::ostringstream os;
      os << "rate " << rk.str() << ", worst gap " << worst;
      out.push_back({name, ok ? Verdict::Pass : Verdict::Fail, os.str()});
    }
  }

  // part 2: the combined bound dominates metastability witnesses of the
  // error-bearing orbit on the grid
  {
    auto s = scenarios::error_scenario_harmonic();
    const ScheduleBundle& b = s->bundle;
    rates::Tower tw(b.a, b.ell, b.A, b.P, Nat((unsigned long)s->N));
    Counterfunction rho =
        rates::rho_error(rates::ErrorVariant::DivergenceA, b.A, nullptr,
                         s->errors.E, s->errors.Eprime,
                         Nat((unsigned long)s->errors.M));
    RateFunctional combined = rates::meta_with_errors(tw.mu4(), rho);
    Trajectory traj(s, IterTag::Mar);
    for (unsigned long k = 0; k <= kmax; ++k)
      for (auto& nf : scenarios::default_grid())
        out.push_back(detail::domination_check(
            "errors/combined/k=" + std::to_string(k) + "/f=" + nf.name, traj,
            oracle::Metric::CauchyPair, 1, k, nf.f, combined(Nat(k), nf.f), cap));
  }
  return out;
}

// ---- transfer suite (criterion 7) -------------------------------------------

inline Results suite_transfer(unsigned long cap = 100000, unsigned long kmax = 4,
                              long identity_horizon = 1000) {
  Results out;
  auto grid = scenarios::default_grid();
  for (auto& s : scenarios::builtin_scenarios()) {
    const ScheduleBundle& b = s->bundle;
    Nat N((unsigned long)s->N);

    // forward: alternating orbit -> Halpern-type orbit
    {
      Trajectory y(s, IterTag::MarStar);
      auto tr = translate_mar_to_halpern(y);
      double res = tr.identity_residual(tr.trajectory, identity_horizon);
      out.push_back({"transfer/" + s->name + "/identity_fwd",
                     res <= 1e-12 ? Verdict::Pass : Verdict::Fail,
                     "max residual " + std::to_string(res)});

      auto ybase = std::make_shared<Trajectory>(s, IterTag::MarStar);
      RateFunctional rho(
          "rho.emp", [ybase, cap](const Nat& kk, const Counterfunction& ff) {
            if (!kk.exact() || !kk.fits_ulong()) return Nat::top(0);
            oracle::WitnessQuery q;
            q.k = kk;
            q.f = ff;
            q.cap = cap;
            auto w = oracle::find_meta_witness(*ybase, q);
            return w.found ? Nat((unsigned long)w.n_star)
                           : Nat::top(mpz_class(cap));
          });
      auto ht = rates::halpern_transfer(rates::TransferDirection::MarToHalpern,
                                        b.a, b.ell, N, rho);
      for (unsigned long k = 0; k <= kmax; ++k)
        for (auto& nf : grid)
          out.push_back(detail::domination_check(
              "transfer/" + s->name + "/fwd/k=" + std::to_string(k) +
                  "/f=" + nf.name,
              tr.trajectory, oracle::Metric::CauchyPair, 1, k, nf.f,
              ht.rho_tilde(Nat(k), nf.f), cap));
    }

    // backward: Halpern-type orbit -> alternating orbit
    {
      Trajectory z(s, IterTag::HalpernStar);
      auto tr = translate_halpern_to_mar(z);
      double res = tr.identity_residual(tr.trajectory, identity_horizon);
      out.push_back({"transfer/" + s->name + "/identity_back",
                     res <= 1e-12 ? Verdict::Pass : Verdict::Fail,
                     "max residual " + std::to_string(res)});

      auto zbase = std::make_shared<Trajectory>(s, IterTag::HalpernStar);
      RateFunctional rho(
          "rho.emp", [zbase, cap](const Nat& kk, const Counterfunction& ff) {
            if (!kk.exact() || !kk.fits_ulong()) return Nat::top(0);
            oracle::WitnessQuery q;
            q.k = kk;
            q.f = ff;
            q.cap = cap;
            auto w = oracle::find_meta_witness(*zbase, q);
            return w.found ? Nat((unsigned long)w.n_star)
                           : Nat::top(mpz_class(cap));
          });
      auto ht = rates::halpern_transfer(rates::TransferDirection::HalpernToMar,
                                        b.a, b.ell, N, rho);
      for (unsigned long k = 0; k <= kmax; ++k)
        for (auto& nf : grid)
          out.push_back(detail::domination_check(
              "transfer/" + s->name + "/back/k=" + std::to_string(k) +
                  "/f=" + nf.name,
              tr.trajectory, oracle::Metric::CauchyPair, 1, k, nf.f,
              ht.rho_tilde(Nat(k), nf.f), cap));
    }
  }
  return out;
}

// ---- lemmas suite (criterion 8) ---------------------------------------------

inline Results suite_lemmas(unsigned seed = 12345, int pair_samples = 1000,
                            int mainge_samples = 1000) {
  Results out;
  using oracle::check_xu_lemma;
  using oracle::SyntheticSeqs;
  using oracle::XuKind;
  using oracle::XuParams;

  auto record = [&out](std::string name, Verdict got, Verdict want) {
    out.push_back({std::move(name), got == want ? Verdict::Pass : Verdict::Fail,
                   std::string("verdict ") + oracle::verdict_name(got) +
                       ", expected " + oracle::verdict_name(want)});
  };

  auto geometric = [](double alpha, double lambda, int len) {
    SyntheticSeqs q;
    double s = 1.0;
    for (int i = 0; i < len; ++i) {
      q.s.push_back(s);
      q.alpha.push_back(alpha);
      q.lambda.push_back(lambda);
      s *= (1.0 - alpha) * (1.0 - lambda);
    }
    return q;
  };

  // rate-form fixtures with the divergence modulus
  for (unsigned long k : {0ul, 1ul, 3ul, 6ul}) {
    XuParams prm;
    prm.A = Counterfunction::affine(2, 0);
    prm.k = k;
    record("lemmas/rate_form/k=" + std::to_string(k),
           check_xu_lemma(XuKind::Rho1, geometric(0.5, 0.0, 96), prm),
           Verdict::Pass);
  }
  // interval-form fixtures
  for (unsigned long k : {0ul, 2ul}) {
    XuParams prm;
    prm.A = Counterfunction::affine(2, 0);
    prm.M = Nat(4ul);
    prm.k = k;
    prm.n = 0;
    prm.p = 80;
    record("lemmas/interval_form/k=" + std::to_string(k),
           check_xu_lemma(XuKind::Sigma1, geometric(0.5, 0.0, 96), prm),
           Verdict::Pass);
  }
  // both mixing weights active
  {
    XuParams prm;
    prm.A = Counterfunction::affine(4, 0);  // alpha = 1/4: A(m) = 4m
    prm.k = 1;
    record("lemmas/rate_form/two_weights",
           check_xu_lemma(XuKind::Rho1, geometric(0.25, 0.25, 128), prm),
           Verdict::Pass);
  }
  // perturbed recurrence with a Cauchy-rate budget
  {
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
    prm.D = Counterfunction::constant(Nat(3ul));
    record("lemmas/rate_form/spike", check_xu_lemma(XuKind::Rho1, q, prm),
           Verdict::Pass);
  }
  // product-condition variants
  for (unsigned long k : {1ul, 4ul}) {
    XuParams prm;
    prm.Aprime = [](const Nat& m, const Nat& kk) { return m + kk; };
    prm.k = k;
    prm.n = 0;
    prm.p = 80;
    record("lemmas/product_interval/k=" + std::to_string(k),
           check_xu_lemma(XuKind::Sigma2, geometric(0.5, 0.0, 96), prm),
           Verdict::Pass);
    record("lemmas/product_rate/k=" + std::to_string(k),
           check_xu_lemma(XuKind::Rho2, geometric(0.5, 0.0, 96), prm),
           Verdict::Pass);
  }
  // invalid fixture is reported, not failed
  {
    SyntheticSeqs q;
    q.s = {1.0, 2.0};
    q.alpha = {0.5};
    q.lambda = {0.0};
    XuParams prm;
    prm.A = Counterfunction::affine(2, 0);
    record("lemmas/invalid_fixture", check_xu_lemma(XuKind::Rho1, q, prm),
           Verdict::Inconclusive);
  }

  // manufactured graph pairs for the inner-product bound
  {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coord(-4, 4);
    Mat Q(2, 2);
    Q << 2, 1, 1, 2;
    std::vector<MonotoneOp> zoo = {
        MonotoneOp::linear_psd(Q),
        MonotoneOp::quadratic(scenarios::vec2(1, -1), Q),
        MonotoneOp::box_cone(scenarios::vec2(-1, -1), scenarios::vec2(1, 1)),
        MonotoneOp::ball_cone(scenarios::vec2(0, 0), 1.5),
        MonotoneOp::halfspace_cone(scenarios::vec2(1, 0), 0.5),
    };
    long bad = 0;
    double worst = 1e300;
    int per_op = pair_samples / (int)zoo.size() + 1;
    int total = 0;
    for (const auto& op : zoo)
      for (int t = 0; t < per_op && total < pair_samples; ++t, ++total) {
        double lam = 0.25 + std::abs(coord(rng));
        Vec xt = scenarios::vec2(coord(rng), coord(rng));
        Vec a = op.resolvent(lam, xt);
        Vec bvec = (xt - a) / lam;
        auto rep = oracle::check_monotone_inner_bound(
            op, 1.0, a, bvec, scenarios::vec2(coord(rng), coord(rng)));
        worst = std::min(worst, rep.slack);
        if (!rep.graph_pair_ok || rep.slack < -1e-9) ++bad;
      }
    out.push_back(detail::aggregate("lemmas/inner_bound", bad, total, worst));
  }

  // last-ascent lemma on seeded random sequences
  {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> val(0, 1);
    long bad = 0;
    for (int trial = 0; trial < mainge_samples; ++trial) {
      std::vector<double> s(24);
      for (auto& x : s) x = val(rng);
      long m = (long)(rng() % 12);
      if (!(s[(size_t)m] < s[(size_t)m + 1])) s[(size_t)m + 1] = s[(size_t)m] + 0.5;
      if (oracle::check_mainge(s, m, m / 2) != Verdict::Pass) ++bad;
    }
    out.push_back({"lemmas/last_ascent", bad == 0 ? Verdict::Pass : Verdict::Fail,
                   std::to_string(mainge_samples) + " sequences, " +
                       std::to_string(bad) + " violations"});
  }
  return out;
}

// ---- rate-calculus sanity suite (criterion 9) -------------------------------

namespace detail {

/// Order with a saturated value as the largest element.
inline bool top_leq(const Nat& x, const Nat& y) {
  if (y.is_top()) return true;
  return x.exact() && x.value() <= y.value();
}

}  // namespace detail

inline Results suite_rates(unsigned long kmax = 4) {
  Results out;
  auto id = Counterfunction::identity();

  struct Frozen {
    const char* name;
    unsigned long k, n;
    unsigned long expect;
  };
  // the hand-evaluated catalogue entries (f = identity where it matters)
  std::vector<Frozen> frozen = {
      {"sigma1", 0, 0, 7},  {"nu", 0, 0, 37},       {"phi2", 0, 1, 3},
      {"w2", 0, 0, 15000},  {"rho_error", 0, 0, 19}, {"gamma_fwd", 0, 0, 4},
      {"gamma_back", 0, 0, 3}, {"parity", 0, 0, 7},  {"combine", 0, 0, 2},
      {"M0", 0, 0, 15},     {"frak_m", 0, 1, 1023}};
  for (const auto& fz : frozen) {
    auto rep = registry::eval_bound(fz.name, Nat(fz.k), Nat(fz.n), id);
    bool ok = rep.value.exact() && rep.value.value() == fz.expect;
    out.push_back({std::string("rates/frozen/") + fz.name,
                   ok ? Verdict::Pass : Verdict::Fail,
                   "got " + rep.value.str() + ", expect " +
                       std::to_string(fz.expect)});
  }

  // monotonicity in k and in f (pointwise-ordered pairs) under the order
  // with saturation on top
  auto grid = scenarios::default_grid();
  for (const char* name : {"mu_tilde", "mu_meta3", "mu4", "vartheta"}) {
    bool mono_k = true, mono_f = true;
    std::string note;
    for (unsigned long k = 0; k < kmax; ++k) {
      Nat lo = registry::eval_bound(name, Nat(k), Nat(0ul), id).value;
      Nat hi = registry::eval_bound(name, Nat(k + 1), Nat(0ul), id).value;
      if (!detail::top_leq(lo, hi)) {
        mono_k = false;
        note = "k=" + std::to_string(k) + ": " + lo.str() + " !<= " + hi.str();
      }
    }
    for (unsigned long k : {0ul, 2ul, 4ul})
      for (auto& nf : grid) {
        // identity <= every grid member pointwise
        Nat lo = registry::eval_bound(name, Nat(k), Nat(0ul), id).value;
        Nat hi = registry::eval_bound(name, Nat(k), Nat(0ul), nf.f).value;
        if (!detail::top_leq(lo, hi)) {
          mono_f = false;
          note = "k=" + std::to_string(k) + ", f=" + nf.name + ": " + lo.str() +
                 " !<= " + hi.str();
        }
      }
    out.push_back({std::string("rates/monotone_k/") + name,
                   mono_k ? Verdict::Pass : Verdict::Fail, note});
    out.push_back({std::string("rates/monotone_f/") + name,
                   mono_f ? Verdict::Pass : Verdict::Fail, note});
  }
  {
    bool mono = true;
    std::string note;
    for (unsigned long k = 0; k < 6; ++k) {
      Nat lo = registry::eval_bound("rho_error", Nat(k), Nat(0ul), id).value;
      Nat hi = registry::eval_bound("rho_error", Nat(k + 1), Nat(0ul), id).value;
      if (!detail::top_leq(lo, hi)) {
        mono = false;
        note = "k=" + std::to_string(k);
      }
    }
    out.push_back({"rates/monotone_k/rho_error",
                   mono ? Verdict::Pass : Verdict::Fail, note});
  }
  return out;
}

// ---- dispatch ---------------------------------------------------------------

inline Results run_suite(const std::string& name, unsigned long cap = 100000,
                         unsigned seed = 42) {
  if (name == "operators") return suite_operators(seed);
  if (name == "convergence") return suite_convergence();
  if (name == "lemmas") return suite_lemmas(seed);
  if (name == "metastability") return suite_metastability(cap);
  if (name == "regularity") return suite_regularity(cap);
  if (name == "errors") return suite_errors(cap);
  if (name == "transfer") return suite_transfer(cap);
  if (name == "rates") return suite_rates();
  throw std::invalid_argument("unknown suite: " + name);
}

inline std::vector<std::string> suite_names() {
  return {"operators", "convergence", "lemmas",   "metastability",
          "regularity", "errors",     "transfer", "rates"};
}

}  // namespace suites
}  // namespace resmeta
