// Brute-force ground truth for the closed-form bounds.
//
// Minimal metastability / quasi-rate witnesses on simulated orbits, analytic
// projection references, synthetic-sequence checkers for the quantitative
// lemmas, domination verdicts, and empirical quasi-rate hooks certified by
// search on a concrete trajectory.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "resmeta/funcs.hpp"
#include "resmeta/iterations.hpp"
#include "resmeta/nat.hpp"
#include "resmeta/operators.hpp"
#include "resmeta/rates.hpp"

namespace resmeta {
namespace oracle {

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

// ---- witness search --------------------------------------------------------

enum class Metric { CauchyPair, ResidualA, ResidualB, ResidualBoth, GapToPoint };

struct WitnessQuery {
  IterTag tag = IterTag::MarStar;
  Nat k;
  Counterfunction f;
  unsigned long cap = 100000;  // search bound on the witness index
  Metric metric = Metric::CauchyPair;
  std::optional<Vec> point;    // for GapToPoint
  unsigned long R = 1;         // residual parameter: J at gamma = 1/R
  long stride = 1;             // 2 to restrict to the even-indexed subsequence
};

struct WitnessResult {
  bool found = false;
  unsigned long n_star = 0;    // minimal witness when found
  unsigned long checked_upto = 0;
};

namespace detail {

/// Interval [n, max(n, f(n))] clipped to the extension limit.
inline std::pair<long, long> interval(const Counterfunction& f, long n,
                                      long hard_limit) {
  Nat fn = f(Nat((unsigned long)n));
  long hi = n;
  if (fn.fits_ulong())
    hi = std::max<long>(n, (long)fn.to_ulong());
  else
    hi = hard_limit;
  return {n, std::min(hi, hard_limit)};
}

}  // namespace detail

/// Least n <= cap such that the metric stays below 1/(k+1) on [n, f(n)]
/// (pairwise for CauchyPair, pointwise otherwise). Indices are orbit indices
/// scaled by `stride` so even-subsequence witnesses reuse the same scan.
inline WitnessResult find_meta_witness(Trajectory& traj, const WitnessQuery& q) {
  if (q.cap > 1000000) throw std::invalid_argument("witness cap above 10^6");
  double eps = q.k.exact() && q.k.fits_ulong()
                   ? 1.0 / (double)(q.k.to_ulong() + 1)
                   : throw std::invalid_argument("witness search needs exact k");
  Counterfunction f = q.f.majorized();
  long hard_limit = (long)q.cap * 4 + 64;  // room for f(n) beyond the cap

  auto value = [&](long m) -> double {
    long i = m * q.stride;
    switch (q.metric) {
      case Metric::ResidualA: return traj.residuals(q.R, i).first;
      case Metric::ResidualB: return traj.residuals(q.R, i).second;
      case Metric::ResidualBoth: {
        auto [ra, rb] = traj.residuals(q.R, i);
        return std::max(ra, rb);
      }
      case Metric::GapToPoint: return (traj.at(i) - *q.point).norm();
      case Metric::CauchyPair: throw std::logic_error("pairwise metric");
    }
    return 0.0;
  };

  auto ok = [&](long n) -> bool {
    auto [lo, hi] = detail::interval(f, n, hard_limit);
    if (q.metric == Metric::CauchyPair) {
      // Coordinate-range screen: the interval's diameter lies between the
      // largest per-coordinate range and the norm of the range vector, so
      // most intervals resolve in one linear pass.
      Vec mn = traj.at(lo * q.stride), mx = mn;
      for (long i = lo + 1; i <= hi; ++i) {
        const Vec& p = traj.at(i * q.stride);
        mn = mn.cwiseMin(p);
        mx = mx.cwiseMax(p);
      }
      if ((mx - mn).norm() <= eps) return true;
      if ((mx - mn).maxCoeff() > eps) return false;
      for (long i = lo; i <= hi; ++i)
        for (long j = i + 1; j <= hi; ++j)
          if ((traj.at(i * q.stride) - traj.at(j * q.stride)).norm() > eps)
            return false;
      return true;
    }
    for (long m = lo; m <= hi; ++m)
      if (value(m) > eps) return false;
    return true;
  };

  for (unsigned long n = 0; n <= q.cap; ++n)
    if (ok((long)n)) return {true, n, n};
  return {false, 0, q.cap};
}

/// Quasi-rate witness for a scalar sequence: least n <= cap with
/// |a_m| <= 1/(k+1) for all m in [n, f(n)].
inline WitnessResult find_quasi_witness(const std::function<double(long)>& seq,
                                        const Nat& k, const Counterfunction& f,
                                        unsigned long cap) {
  if (cap > 1000000) throw std::invalid_argument("witness cap above 10^6");
  if (!k.exact() || !k.fits_ulong())
    throw std::invalid_argument("witness search needs exact k");
  double eps = 1.0 / (double)(k.to_ulong() + 1);
  Counterfunction fm = f.majorized();
  long hard_limit = (long)cap * 4 + 64;
  std::vector<double> memo;
  auto at = [&](long m) {
    while ((long)memo.size() <= m) memo.push_back(seq((long)memo.size()));
    return memo[(size_t)m];
  };
  for (unsigned long n = 0; n <= cap; ++n) {
    auto [lo, hi] = detail::interval(fm, (long)n, hard_limit);
    bool good = true;
    for (long m = lo; m <= hi && good; ++m)
      if (std::fabs(at(m)) > eps) good = false;
    if (good) return {true, n, n};
  }
  return {false, 0, cap};
}

/// Pass iff the found witness is <= bound; a saturated bound dominates
/// everything at or below the cap. A missing witness is inconclusive: the
/// search ran out, nothing was refuted.
inline Verdict check_domination(const Nat& bound, const WitnessResult& witness) {
  if (!witness.found) return Verdict::Inconclusive;
  return dominates(bound, mpz_class(witness.n_star)) ? Verdict::Pass
                                                     : Verdict::Fail;
}

// ---- analytic projection reference -----------------------------------------

/// P_S(u) for S = zer A  ∩  zer B. Prefers the scenario's stored analytic
/// reference; otherwise derives it via the closed-form set intersection.
inline Vec projection_reference(const Scenario& s) {
  if (s.projection_ref) return *s.projection_ref;
  SetDesc inter = intersect_sets(s.opA.zero_set(), s.opB.zero_set());
  return project_onto(inter, s.u);
}

// ---- synthetic-sequence lemma checkers -------------------------------------

struct SyntheticSeqs {
  std::vector<double> s, alpha, lambda, b, c, d, v;
};

namespace detail {

inline double at0(const std::vector<double>& x, size_t i) {
  return i < x.size() ? x[i] : 0.0;
}

/// The shared recurrence hypothesis, with d for the rate-form lemmas and v
/// for the interval-form ones; 1e-12 slack.
inline bool recurrence_holds(const SyntheticSeqs& q, bool with_v) {
  for (size_t m = 0; m + 1 < q.s.size(); ++m) {
    double am = at0(q.alpha, m), lm = at0(q.lambda, m);
    double rhs = (1.0 - am) * (1.0 - lm) * (q.s[m] + (with_v ? at0(q.v, m) : 0.0)) +
                 am * at0(q.b, m) + lm * at0(q.c, m) + (with_v ? 0.0 : at0(q.d, m));
    if (q.s[m + 1] > rhs + 1e-12) return false;
  }
  return true;
}

}  // namespace detail

enum class XuKind { Lemma212, Sigma1, Sigma2, Rho1, Rho2 };

struct XuParams {
  Counterfunction A;                              // divergence modulus
  std::function<Nat(const Nat&, const Nat&)> Aprime;  // tail-product modulus
  // limsup / Cauchy moduli; zero by default (error-free fixtures)
  Counterfunction B = Counterfunction::constant(Nat(0ul));
  Counterfunction C = Counterfunction::constant(Nat(0ul));
  Counterfunction D = Counterfunction::constant(Nat(0ul));
  Nat M = Nat(1ul);
  unsigned long k = 0, n = 0, p = 0;              // interval-form parameters
  long m = 0, r = 0;                              // last-ascent parameters
};

/// Check the named lemma's conclusion on concrete synthetic data with the
/// module-computed sigma/rho value. Hypothesis violations are reported as
/// Inconclusive (invalid fixture), never as Fail.
inline Verdict check_xu_lemma(XuKind kind, const SyntheticSeqs& q, const XuParams& prm) {
  double eps = 1.0 / (double)(prm.k + 1);
  switch (kind) {
    case XuKind::Lemma212: {  // last-ascent index map
      std::vector<double> s = q.s;
      long m = prm.m, r = prm.r;
      if ((size_t)(m + 1) >= s.size() || m < r || !(s[(size_t)m] < s[(size_t)m + 1]))
        return Verdict::Inconclusive;
      for (long i = m; i + 1 < (long)s.size(); ++i) {
        long t = rates::tau(s, m, i);
        if (t < r) return Verdict::Fail;
        if (std::max(s[(size_t)t], s[(size_t)i]) > s[(size_t)t + 1] + 1e-12)
          return Verdict::Fail;
      }
      return Verdict::Pass;
    }
    case XuKind::Sigma1:
    case XuKind::Sigma2: {
      if (!detail::recurrence_holds(q, /*with_v=*/true)) return Verdict::Inconclusive;
      double small = 1.0 / (4.0 * (prm.k + 1));
      double vsmall = small / (double)(prm.p + 1);
      for (unsigned long i = prm.n; i <= prm.p && i < q.s.size(); ++i)
        if (detail::at0(q.v, i) > vsmall + 1e-12 ||
            detail::at0(q.b, i) > small + 1e-12 ||
            detail::at0(q.c, i) > small + 1e-12)
          return Verdict::Inconclusive;
      Nat start = kind == XuKind::Sigma1
                      ? rates::sigma1(prm.A, prm.M)(Nat(prm.k), Nat(prm.n))
                      : rates::sigma2(prm.Aprime, prm.M)(Nat(prm.k), Nat(prm.n));
      if (!start.fits_ulong()) return Verdict::Inconclusive;
      for (unsigned long i = start.to_ulong(); i <= prm.p; ++i) {
        if (i >= q.s.size()) return Verdict::Inconclusive;
        if (q.s[i] > eps + 1e-12) return Verdict::Fail;
      }
      return Verdict::Pass;
    }
    case XuKind::Rho1:
    case XuKind::Rho2: {
      if (!detail::recurrence_holds(q, /*with_v=*/false)) return Verdict::Inconclusive;
      Counterfunction rate =
          kind == XuKind::Rho1
              ? rates::rho1(prm.A, prm.B, prm.C, prm.D, prm.M)
              : rates::rho2(prm.Aprime, prm.B, prm.C, prm.D, prm.M);
      Nat start = rate(Nat(prm.k));
      if (!start.fits_ulong()) return Verdict::Inconclusive;
      for (unsigned long i = start.to_ulong(); i < q.s.size(); ++i)
        if (q.s[i] > eps + 1e-12) return Verdict::Fail;
      return Verdict::Pass;
    }
  }
  return Verdict::Inconclusive;
}

// ---- monotone-operator inner-product bound ---------------------------------

struct ResidualReport {
  double lhs = 0, rhs = 0, slack = 0;
  bool graph_pair_ok = false;
};

/// For a graph pair (a, b) of op: <a-x, b> >= -||J(x)-x|| (||J(x)-a||/lam + ||b||).
/// The pair is manufactured exactly when a = J_lam(xt), b = (xt-a)/lam; callers
/// may also pass a closed-form pair, validated via the same inversion.
inline ResidualReport check_monotone_inner_bound(const MonotoneOp& op, double lambda,
                                                 const Vec& a, const Vec& b,
                                                 const Vec& x) {
  ResidualReport rep;
  // (a, b) is a graph pair iff J_lambda(a + lambda b) = a.
  rep.graph_pair_ok = (op.resolvent(lambda, a + lambda * b) - a).norm() <= 1e-8;
  Vec jx = op.resolvent(lambda, x);
  rep.lhs = (a - x).dot(b);
  rep.rhs = -(jx - x).norm() * ((jx - a).norm() / lambda + b.norm());
  rep.slack = rep.lhs - rep.rhs;
  return rep;
}

// ---- last-ascent lemma on random data --------------------------------------

/// Precondition m >= r and s_m < s_{m+1}; conclusion for all i in
/// [m, len(s)-2]: tau(i) >= r and max{s_tau(i), s_i} <= s_{tau(i)+1}.
inline Verdict check_mainge(const std::vector<double>& s, long m, long r) {
  SyntheticSeqs q;
  q.s = s;
  XuParams prm;
  prm.m = m;
  prm.r = r;
  return check_xu_lemma(XuKind::Lemma212, q, prm);
}

// ---- empirical quasi-rate hooks --------------------------------------------

/// A quasi-rate certified by search: for each (k, f) it returns the minimal
/// witness on the given scalar sequence, saturated at the search cap when no
/// witness exists below it. Any function that is >= the minimal witness
/// pointwise is a valid quasi-rate for this sequence, so the minimal witness
/// itself is the canonical empirical choice.
inline QuasiRateHook empirical_quasi_rate(std::string name,
                                          std::function<double(long)> seq,
                                          unsigned long cap = 100000) {
  QuasiRateHook hook;
  hook.impl = QuasiRateHook::Impl::Empirical;
  hook.note = "witness search, cap " + std::to_string(cap);
  hook.rule = RateFunctional(
      std::move(name), [seq = std::move(seq), cap](const Nat& k, const Counterfunction& f) {
        if (!k.exact() || !k.fits_ulong()) return Nat::top(0);
        WitnessResult w = find_quasi_witness(seq, k, f, cap);
        return w.found ? Nat((unsigned long)w.n_star) : Nat::top(mpz_class(cap));
      });
  return hook;
}

/// Empirical hook over a trajectory metric (consecutive gaps, residuals).
/// Values are memoised across calls: the towers re-evaluate the hook heavily.
inline QuasiRateHook empirical_trajectory_rate(std::string name,
                                               std::shared_ptr<Trajectory> traj,
                                               Metric metric, unsigned long R,
                                               long stride = 1,
                                               unsigned long cap = 100000) {
  auto memo = std::make_shared<std::vector<double>>();
  auto seq = [traj, metric, R, stride, memo](long m) -> double {
    while ((long)memo->size() <= m) {
      long i = (long)memo->size() * stride;
      double v = 0.0;
      switch (metric) {
        case Metric::ResidualA: v = traj->residuals(R, i).first; break;
        case Metric::ResidualB: v = traj->residuals(R, i).second; break;
        case Metric::ResidualBoth: {
          auto [ra, rb] = traj->residuals(R, i);
          v = std::max(ra, rb);
          break;
        }
        case Metric::CauchyPair:  // consecutive gap along the stride
          v = (traj->at(i + stride) - traj->at(i)).norm();
          break;
        case Metric::GapToPoint: throw std::logic_error("needs a point");
      }
      memo->push_back(v);
    }
    return (*memo)[(size_t)m];
  };
  return empirical_quasi_rate(std::move(name), seq, cap);
}

}  // namespace oracle
}  // namespace resmeta
