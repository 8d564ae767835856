// Parameter and error sequences with quantitative moduli.
//
// A ScheduleBundle carries the four parameter sequences (alpha_n, lambda_n in
// (0,1); beta_n, mu_n bounded away from 0) together with the quantitative
// moduli the rate calculus consumes: convergence rates a, ell; a divergence
// rate A for one of the two series (or the product-condition modulus A');
// step-gap rates r_beta, r_mu; the lower bound R, upper bound t, and the
// joint lower bound P on alpha_n + lambda_n. Builtin families (harmonic,
// constant, power, finite table + tail) attach hand-derived closed-form
// moduli; validate_moduli offers finite-prefix refutation for any bundle.

#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "resmeta/funcs.hpp"
#include "resmeta/nat.hpp"

namespace resmeta {

namespace detail {

/// Upper bound on ceil((coeff*x + shift)^exponent) over bignums, saturating.
inline Nat pow_ceil_upper(double coeff, const mpz_class& x, double shift,
                          double exponent) {
  double logx = x == 0 ? 0.0 : mpz_sizeinbase(x.get_mpz_t(), 2) * 0.30103;
  if (exponent * (logx + std::log10(std::max(coeff, 1.0)) + 1.0) > 4100.0)
    return Nat::top();
  mpfr_t b, r;
  mpfr_inits2(512, b, r, (mpfr_ptr) nullptr);
  mpfr_set_z(b, x.get_mpz_t(), MPFR_RNDU);
  mpfr_mul_d(b, b, coeff, MPFR_RNDU);
  mpfr_add_d(b, b, shift, MPFR_RNDU);
  if (mpfr_sgn(b) < 0) mpfr_set_zero(b, 1);
  mpfr_t e;
  mpfr_init2(e, 512);
  mpfr_set_d(e, exponent, MPFR_RNDU);
  mpfr_pow(r, b, e, MPFR_RNDU);
  mpfr_ceil(r, r);
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), r, MPFR_RNDN);
  mpfr_clears(b, r, e, (mpfr_ptr) nullptr);
  if (out < 0) out = 0;
  return Nat(out);
}

/// Upper bound on ceil(scale * ln(x+1) + shift), for log-shaped moduli.
inline Nat log_ceil_upper(double scale, const mpz_class& x, double shift) {
  mpfr_t b, r;
  mpfr_inits2(256, b, r, (mpfr_ptr) nullptr);
  mpfr_set_z(b, x.get_mpz_t(), MPFR_RNDU);
  mpfr_add_ui(b, b, 1, MPFR_RNDU);
  mpfr_log(r, b, MPFR_RNDU);
  mpfr_mul_d(r, r, scale, MPFR_RNDU);
  mpfr_add_d(r, r, shift, MPFR_RNDU);
  mpfr_ceil(r, r);
  mpz_class out;
  mpfr_get_z(out.get_mpz_t(), r, MPFR_RNDN);
  mpfr_clears(b, r, (mpfr_ptr) nullptr);
  if (out < 0) out = 0;
  return Nat(out);
}

/// Demote to a saturated value when the argument it was computed from was
/// itself saturated (the closed forms here are monotone, so lb is preserved).
inline Nat follow_exactness(const Nat& arg, const Nat& v) {
  return arg.exact() && v.exact() ? v : Nat::top(v.lb());
}

}  // namespace detail

// ---- sequence family specifications ---------------------------------------

struct SeqSpec {
  enum class Kind { Harmonic, Constant, Power, Table };

  Kind kind = Kind::Constant;
  double param = 1.0;                 // harmonic offset p / constant c / power q
  std::vector<double> table;          // Table only
  Kind tail_kind = Kind::Constant;    // Table only
  double tail_param = 1.0;

  static SeqSpec harmonic(double p) {
    if (p < 1.0) throw std::invalid_argument("harmonic: offset p must be >= 1");
    return {Kind::Harmonic, p, {}, Kind::Constant, 1.0};
  }
  static SeqSpec constant(double c) {
    if (c <= 0) throw std::invalid_argument("constant: value must be positive");
    return {Kind::Constant, c, {}, Kind::Constant, 1.0};
  }
  static SeqSpec power(double q) {
    if (q <= 0 || q > 1) throw std::invalid_argument("power: exponent q in (0,1]");
    return {Kind::Power, q, {}, Kind::Constant, 1.0};
  }
  static SeqSpec with_table(std::vector<double> values, const SeqSpec& tail) {
    if (tail.kind == Kind::Table) throw std::invalid_argument("table: nested tail");
    SeqSpec s{Kind::Table, 0.0, std::move(values), tail.kind, tail.param};
    return s;
  }

  double eval(long n) const {
    switch (kind) {
      case Kind::Harmonic:
        return 1.0 / (static_cast<double>(n) + 1.0 + param);
      case Kind::Constant:
        return param;
      case Kind::Power:
        return std::pow(static_cast<double>(n) + 2.0, -param);
      case Kind::Table:
        if (n >= 0 && n < (long)table.size()) return table[n];
        return SeqSpec{tail_kind, tail_param, {}, Kind::Constant, 1.0}.eval(
            n - (long)table.size());
    }
    throw std::logic_error("SeqSpec: bad kind");
  }

  std::string describe() const {
    std::ostringstream os;
    switch (kind) {
      case Kind::Harmonic: os << "harmonic(" << param << ")"; break;
      case Kind::Constant: os << "constant(" << param << ")"; break;
      case Kind::Power: os << "power(" << param << ")"; break;
      case Kind::Table: os << "table[" << table.size() << "]"; break;
    }
    return os.str();
  }
};

// ---- schedule bundle -------------------------------------------------------

enum class SeriesFlag { Alpha, Lambda };

struct ScheduleBundle {
  // sequence evaluators (alpha, lambda in (0,1); beta, mu in (0, inf))
  std::function<double(long)> alpha, lambda, beta, mu;
  SeqSpec alpha_spec, lambda_spec, beta_spec, mu_spec;

  // (Q4)/(Q5): 1/R <= min{beta_n, mu_n}, max{beta_n, mu_n} <= t(n)
  unsigned long R = 1;
  Counterfunction t;

  // (Q2): rates of convergence for alpha_n -> 0 and lambda_n -> 0
  bool has_a = false, has_ell = false;
  Counterfunction a, ell;

  // (Q3): divergence rate for the series named by `series`
  bool has_A = false;
  Counterfunction A;
  SeriesFlag series = SeriesFlag::Alpha;

  // condition (2.3): prod_{i=m}^{A'(m,k)} (1 - s_i) <= 1/(k+1)
  bool has_Aprime = false;
  std::function<Nat(const Nat&, const Nat&)> Aprime;

  // (Q6)/(Q7): rates of convergence for the ratios beta_{n+1}/beta_n -> 1
  // and mu_{n+1}/mu_n -> 1
  bool has_rbeta = false, has_rmu = false;
  Counterfunction r_beta, r_mu;

  // (Q8): alpha_n + lambda_n >= 1/P(n)
  Counterfunction P;

  double eval(char which, long n) const {
    switch (which) {
      case 'a': return alpha(n);
      case 'l': return lambda(n);
      case 'b': return beta(n);
      case 'm': return mu(n);
    }
    throw std::invalid_argument("ScheduleBundle::eval: bad selector");
  }
};

namespace detail {

struct AlphaModuli {
  bool has_a = false;
  Counterfunction a;
  bool has_A = false;
  Counterfunction A;
  bool has_Aprime = false;
  std::function<Nat(const Nat&, const Nat&)> Aprime;
  Counterfunction Pbound;  // value_n >= 1/Pbound(n)
};

inline AlphaModuli alpha_moduli(const SeqSpec& s) {
  AlphaModuli m;
  long shift = s.kind == SeqSpec::Kind::Table ? (long)s.table.size() : 0;
  SeqSpec core = s.kind == SeqSpec::Kind::Table
                     ? SeqSpec{s.tail_kind, s.tail_param, {}, SeqSpec::Kind::Constant, 1.0}
                     : s;
  Nat off((unsigned long)shift);
  switch (core.kind) {
    case SeqSpec::Kind::Harmonic: {
      double p = core.param;
      // 1/(n+1+p) <= 1/(k+1) iff n >= k - p; a(k) = k suffices for p >= 1
      m.has_a = true;
      m.a = Counterfunction("a.harmonic", [off](const Nat& k) { return k + off; });
      m.has_A = true;
      // sum_{i<=m} 1/(i+1+p) >= ln((m+2+p)/(1+p)); ceil(p*e^{k+1}) suffices
      unsigned long pc = (unsigned long)std::ceil(p);
      m.A = Counterfunction("A.harmonic", [pc, off](const Nat& k) {
        return Nat(pc) * ceil_exp(k + Nat(1ul)) + off;
      });
      m.has_Aprime = true;
      // prod_{i=m}^{n} (1-1/(i+1+p)) = (m+p)/(n+1+p) for integer p
      unsigned long pi = (unsigned long)std::ceil(p);
      m.Aprime = [pi, off](const Nat& mm, const Nat& k) {
        return (mm + Nat(pi)) * (k + Nat(1ul)) + off;
      };
      m.Pbound = Counterfunction("P.harmonic", [p, off](const Nat& n) {
        return n + Nat((unsigned long)std::ceil(1.0 + p)) + off;
      });
      break;
    }
    case SeqSpec::Kind::Constant: {
      double c = core.param;
      if (c >= 1.0)
        throw std::invalid_argument("constant alpha/lambda must lie in (0,1)");
      // no rate of convergence to 0 exists for a constant sequence
      m.has_A = true;
      m.A = Counterfunction("A.constant", [c, off](const Nat& k) {
        // (m+1)c >= k  iff  m >= k/c - 1
        return follow_exactness(k, pow_ceil_upper(1.0 / c, k.lb(), 0.0, 1.0)) + off;
      });
      m.has_Aprime = true;
      double rate = 1.0 / std::log(1.0 / (1.0 - c));
      m.Aprime = [rate, off](const Nat& mm, const Nat& k) {
        return mm + follow_exactness(k, log_ceil_upper(rate, k.lb(), 1.0)) + off;
      };
      m.Pbound = Counterfunction("P.constant", [c](const Nat&) {
        return Nat((unsigned long)std::ceil(1.0 / c));
      });
      break;
    }
    case SeqSpec::Kind::Power: {
      double q = core.param;
      m.has_a = true;
      // (n+2)^q >= k+1 iff n >= (k+1)^{1/q} - 2
      m.a = Counterfunction("a.power", [q, off](const Nat& k) {
        return follow_exactness(k, pow_ceil_upper(1.0, k.lb(), 1.0, 1.0 / q)) + off;
      });
      m.has_A = true;
      if (q < 1.0) {
        // sum_{i<=m} (i+2)^{-q} >= ((m+3)^{1-q} - 2^{1-q})/(1-q)
        m.A = Counterfunction("A.power", [q, off](const Nat& k) {
          return follow_exactness(
                     k, pow_ceil_upper(1.0 - q, k.lb(), 2.0, 1.0 / (1.0 - q))) +
                 off;
        });
      } else {
        m.A = Counterfunction("A.power1", [off](const Nat& k) {
          return ceil_exp(k + Nat(1ul)) + off;
        });
      }
      m.Pbound = Counterfunction("P.power",
                                 [off](const Nat& n) { return n + Nat(2ul) + off; });
      break;
    }
    case SeqSpec::Kind::Table:
      throw std::logic_error("alpha_moduli: nested table");
  }
  return m;
}

}  // namespace detail

/// Assemble a bundle from the four family specs, deriving all moduli.
inline ScheduleBundle make_bundle(const SeqSpec& alpha, const SeqSpec& lambda,
                                  const SeqSpec& beta, const SeqSpec& mu,
                                  SeriesFlag series = SeriesFlag::Alpha) {
  ScheduleBundle b;
  b.alpha_spec = alpha;
  b.lambda_spec = lambda;
  b.beta_spec = beta;
  b.mu_spec = mu;
  b.alpha = [alpha](long n) { return alpha.eval(n); };
  b.lambda = [lambda](long n) { return lambda.eval(n); };
  b.beta = [beta](long n) { return beta.eval(n); };
  b.mu = [mu](long n) { return mu.eval(n); };
  b.series = series;

  auto ma = detail::alpha_moduli(alpha);
  auto ml = detail::alpha_moduli(lambda);
  b.has_a = ma.has_a;
  if (ma.has_a) b.a = ma.a;
  b.has_ell = ml.has_a;
  if (ml.has_a) b.ell = ml.a;
  const auto& md = series == SeriesFlag::Alpha ? ma : ml;
  b.has_A = md.has_A;
  if (md.has_A) b.A = md.A;
  b.has_Aprime = md.has_Aprime;
  if (md.has_Aprime) b.Aprime = md.Aprime;
  Counterfunction Pa = ma.Pbound, Pl = ml.Pbound;
  // alpha_n + lambda_n >= max{alpha_n, lambda_n} >= 1/min{Pa(n), Pl(n)}
  b.P = Counterfunction("P", [Pa, Pl](const Nat& n) { return min_of(Pa(n), Pl(n)); });

  // beta / mu slots: must stay in [1/R, t(n)]
  auto stiffness = [](const SeqSpec& s, const char* slot)
      -> std::pair<double, double> {  // (min over n, max over n)
    auto core_bounds = [&](SeqSpec::Kind k, double p) -> std::pair<double, double> {
      switch (k) {
        case SeqSpec::Kind::Constant: return {p, p};
        default:
          throw std::invalid_argument(std::string(slot) +
                                      ": family not bounded away from zero");
      }
    };
    if (s.kind == SeqSpec::Kind::Table) {
      auto [lo, hi] = core_bounds(s.tail_kind, s.tail_param);
      for (double v : s.table) {
        if (v <= 0) throw std::invalid_argument(std::string(slot) + ": nonpositive");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      return {lo, hi};
    }
    return core_bounds(s.kind, s.param);
  };
  auto [blo, bhi] = stiffness(beta, "beta");
  auto [mlo, mhi] = stiffness(mu, "mu");
  b.R = (unsigned long)std::ceil(1.0 / std::min(blo, mlo) - 1e-12);
  if (b.R == 0) b.R = 1;
  unsigned long tval = (unsigned long)std::ceil(std::max(bhi, mhi));
  b.t = Counterfunction("t", [tval](const Nat&) { return Nat(tval); });

  // step-gap rates: constants have zero gaps; tables settle after the prefix
  auto gap_rate = [](const SeqSpec& s) -> std::optional<Counterfunction> {
    if (s.kind == SeqSpec::Kind::Constant)
      return Counterfunction("r.const", [](const Nat&) { return Nat(0ul); });
    if (s.kind == SeqSpec::Kind::Table && s.tail_kind == SeqSpec::Kind::Constant) {
      unsigned long len = s.table.size();
      return Counterfunction("r.table", [len](const Nat&) { return Nat(len); });
    }
    return std::nullopt;
  };
  if (auto r = gap_rate(beta)) {
    b.has_rbeta = true;
    b.r_beta = *r;
  }
  if (auto r = gap_rate(mu)) {
    b.has_rmu = true;
    b.r_mu = *r;
  }
  return b;
}

// ---- error schedules -------------------------------------------------------

struct ErrorSchedule {
  std::function<Eigen::VectorXd(long)> e, eprime;
  Counterfunction E, Eprime;
  unsigned long M = 1;
  bool zero_errors = true;

  static ErrorSchedule zero(int dim) {
    ErrorSchedule s;
    auto z = [dim](long) { return Eigen::VectorXd::Zero(dim).eval(); };
    s.e = z;
    s.eprime = z;
    s.E = Counterfunction("E.zero", [](const Nat&) { return Nat(0ul); });
    s.Eprime = s.E;
    s.M = 1;
    s.zero_errors = true;
    return s;
  }

  /// e_n = ratio^n * dir (same shape for e'); exact closed-form Cauchy rates.
  static ErrorSchedule geometric(Eigen::VectorXd dir, double ratio,
                                 Eigen::VectorXd dir2, double ratio2) {
    if (ratio <= 0 || ratio >= 1 || ratio2 <= 0 || ratio2 >= 1)
      throw std::invalid_argument("geometric errors: ratio must lie in (0,1)");
    ErrorSchedule s;
    s.zero_errors = false;
    s.e = [dir, ratio](long n) { return (std::pow(ratio, n) * dir).eval(); };
    s.eprime = [dir2, ratio2](long n) { return (std::pow(ratio2, n) * dir2).eval(); };
    auto rate_for = [](double nrm, double r) {
      // sum_{i>E} nrm r^i = nrm r^{E+1}/(1-r) <= 1/(k+1)
      double scale = nrm / (1.0 - r) / r;  // so need r^E <= 1/(scale (k+1))
      double invlog = 1.0 / std::log(1.0 / r);
      return Counterfunction("E.geom", [scale, invlog](const Nat& k) {
        if (scale <= 0) return Nat(0ul);
        Nat v = detail::log_ceil_upper(invlog, k.lb(),
                                       std::log(std::max(scale, 1e-300)) * invlog + 1.0);
        return k.exact() && v.exact() ? v : Nat::top(v.lb());
      });
    };
    s.E = rate_for(dir.norm(), ratio);
    s.Eprime = rate_for(dir2.norm(), ratio2);
    // M >= sum_{i<=E(1)} ||e_i|| + sum_{i<=E'(1)} ||e'_i|| + 1
    double total = 0;
    auto add_prefix = [&](const Counterfunction& E,
                          const std::function<Eigen::VectorXd(long)>& seq) {
      unsigned long upto = E(Nat(1ul)).to_ulong();
      for (unsigned long i = 0; i <= upto; ++i) total += seq((long)i).norm();
    };
    add_prefix(s.E, s.e);
    add_prefix(s.Eprime, s.eprime);
    s.M = (unsigned long)std::ceil(total + 1.0);
    return s;
  }
};

// ---- finite-prefix validation ---------------------------------------------

struct Violation {
  std::string which;
  long k = -1;
  long n = -1;
  std::string detail;
};

inline std::vector<Violation> validate_moduli(const ScheduleBundle& b, long horizon,
                                              long k_max) {
  std::vector<Violation> out;
  auto add = [&out](std::string which, long k, long n, std::string detail) {
    out.push_back({std::move(which), k, n, std::move(detail)});
  };

  std::vector<double> al(horizon + 2), la(horizon + 2), be(horizon + 2),
      muv(horizon + 2);
  for (long n = 0; n <= horizon + 1; ++n) {
    al[n] = b.alpha(n);
    la[n] = b.lambda(n);
    be[n] = b.beta(n);
    muv[n] = b.mu(n);
  }

  for (long n = 0; n <= horizon; ++n) {
    if (!(al[n] > 0 && al[n] < 1))
      add("Q1.alpha", -1, n, "alpha_n outside (0,1)");
    if (!(la[n] > 0 && la[n] < 1))
      add("Q1.lambda", -1, n, "lambda_n outside (0,1)");
    double mn = std::min(be[n], muv[n]), mx = std::max(be[n], muv[n]);
    if (mn < 1.0 / (double)b.R - 1e-12) add("Q4", -1, n, "min{beta,mu} < 1/R");
    Nat tn = b.t(Nat((unsigned long)n));
    if (tn.exact() && mx > tn.value().get_d() + 1e-12)
      add("Q5", -1, n, "max{beta,mu} > t(n)");
    Nat pn = b.P(Nat((unsigned long)n));
    if (pn.exact() &&
        al[n] + la[n] < 1.0 / std::max(1.0, pn.value().get_d()) - 1e-12)
      add("Q8", -1, n, "alpha_n + lambda_n < 1/P(n)");
  }

  auto check_conv = [&](const char* tag, const Counterfunction& rate,
                        const std::vector<double>& seq) {
    for (long k = 0; k <= k_max; ++k) {
      Nat rk = rate(Nat((unsigned long)k));
      if (!rk.fits_ulong() || (long)rk.to_ulong() > horizon) continue;
      for (long n = (long)rk.to_ulong(); n <= horizon; ++n)
        if (std::abs(seq[n]) > 1.0 / (k + 1) + 1e-12) {
          add(tag, k, n, "value exceeds 1/(k+1) past the rate");
          break;
        }
    }
  };
  if (b.has_a) check_conv("Q2.a", b.a, al);
  if (b.has_ell) check_conv("Q2.ell", b.ell, la);
  // (Q6)/(Q7): r_beta, r_mu are rates of convergence for the ratios
  // beta_{n+1}/beta_n -> 1 and mu_{n+1}/mu_n -> 1.
  if (b.has_rbeta) {
    std::vector<double> gaps(horizon + 1);
    for (long n = 0; n <= horizon; ++n) gaps[n] = std::abs(1.0 - be[n + 1] / be[n]);
    check_conv("Q6.r_beta", b.r_beta, gaps);
  }
  if (b.has_rmu) {
    std::vector<double> gaps(horizon + 1);
    for (long n = 0; n <= horizon; ++n)
      gaps[n] = std::abs(1.0 - muv[n + 1] / muv[n]);
    check_conv("Q7.r_mu", b.r_mu, gaps);
  }

  const std::vector<double>& series = b.series == SeriesFlag::Alpha ? al : la;
  if (b.has_A) {
    std::vector<double> prefix(horizon + 1);
    double acc = 0;
    for (long n = 0; n <= horizon; ++n) {
      acc += series[n];
      prefix[n] = acc;
    }
    for (long k = 0; k <= k_max; ++k) {
      Nat Ak = b.A(Nat((unsigned long)k));
      if (!Ak.fits_ulong() || (long)Ak.to_ulong() > horizon) continue;
      for (long n = (long)Ak.to_ulong(); n <= horizon; ++n)
        if (prefix[n] < (double)k - 1e-12) {
          add("Q3.A", k, n, "partial sum below k at A(k)+...");
          break;
        }
    }
  }
  if (b.has_Aprime) {
    for (long m = 0; m <= std::min<long>(horizon, 64); ++m) {
      for (long k = 0; k <= k_max; ++k) {
        Nat Am = b.Aprime(Nat((unsigned long)m), Nat((unsigned long)k));
        if (!Am.fits_ulong() || (long)Am.to_ulong() > horizon) continue;
        double prod = 1.0;
        for (long i = m; i <= (long)Am.to_ulong(); ++i) prod *= 1.0 - series[i];
        if (prod > 1.0 / (k + 1) + 1e-12)
          add("2.3.Aprime", k, m, "product above 1/(k+1) at A'(m,k)");
      }
    }
  }
  return out;
}

inline std::vector<Violation> validate_errors(const ErrorSchedule& s, long horizon,
                                              long k_max) {
  std::vector<Violation> out;
  auto check = [&](const char* tag, const Counterfunction& E,
                   const std::function<Eigen::VectorXd(long)>& seq) {
    std::vector<double> norms(horizon + 1);
    for (long i = 0; i <= horizon; ++i) norms[i] = seq(i).norm();
    for (long k = 0; k <= k_max; ++k) {
      Nat Ek = E(Nat((unsigned long)k));
      if (!Ek.fits_ulong() || (long)Ek.to_ulong() >= horizon) continue;
      double tail = 0;
      for (long i = (long)Ek.to_ulong() + 1; i <= horizon; ++i) {
        tail += norms[i];
        if (tail > 1.0 / (k + 1) + 1e-12) {
          out.push_back({tag, k, i, "tail sum beyond E(k) exceeds 1/(k+1)"});
          break;
        }
      }
    }
  };
  check("E", s.E, s.e);
  check("Eprime", s.Eprime, s.eprime);
  return out;
}

}  // namespace resmeta
