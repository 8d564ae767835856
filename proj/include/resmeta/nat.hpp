// Saturating arbitrary-precision naturals.
//
// Every quantity in the rate calculus is a natural number, but the closed-form
// bounds compose iterated squarings and exponentials whose exact values are
// astronomically large. A Nat therefore carries a certified lower bound on the
// true value together with an exactness flag: exact Nats are ordinary bignums,
// inexact ones ("top", printed ⊤) stand for "some value >= lb". All arithmetic
// here is monotone, so lower bounds propagate soundly through every formula.

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace resmeta {

namespace detail {

inline mpz_class parse_cap(const char* text) {
  std::string s(text);
  auto caret = s.find('^');
  if (caret != std::string::npos) {
    mpz_class base(s.substr(0, caret));
    unsigned long exp = std::stoul(s.substr(caret + 1));
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
    return out;
  }
  return mpz_class(s);
}

inline mpz_class& cap_storage() {
  static mpz_class cap = [] {
    if (const char* env = std::getenv("RESMETA_CAP")) {
      return parse_cap(env);
    }
    mpz_class c;
    mpz_ui_pow_ui(c.get_mpz_t(), 10, 4000);
    return c;
  }();
  return cap;
}

}  // namespace detail

/// Saturation cap; values known to exceed it collapse to an inexact Nat.
inline const mpz_class& nat_cap() { return detail::cap_storage(); }

/// Override the cap (tests; RESMETA_CAP env var is read once at startup).
inline void set_nat_cap(mpz_class cap) { detail::cap_storage() = std::move(cap); }

class Nat {
 public:
  Nat() : lb_(0), exact_(true) {}
  Nat(unsigned long v) : lb_(v), exact_(true) { clamp(); }  // NOLINT(runtime/explicit)
  explicit Nat(mpz_class v) : lb_(std::move(v)), exact_(true) {
    if (lb_ < 0) throw std::invalid_argument("Nat: negative value");
    clamp();
  }

  /// A saturated value known only to be >= lb.
  static Nat top(mpz_class lb = nat_cap()) {
    Nat n;
    n.lb_ = std::move(lb);
    n.exact_ = false;
    n.clamp();
    return n;
  }

  bool exact() const { return exact_; }
  bool is_top() const { return !exact_; }

  /// Certified lower bound on the true value (the value itself when exact).
  const mpz_class& lb() const { return lb_; }

  const mpz_class& value() const {
    if (!exact_) throw std::logic_error("Nat: value() on saturated Nat");
    return lb_;
  }

  bool fits_ulong() const { return exact_ && lb_.fits_ulong_p(); }
  unsigned long to_ulong() const {
    if (!fits_ulong()) throw std::overflow_error("Nat: does not fit ulong");
    return lb_.get_ui();
  }

  std::string str() const {
    if (exact_) return lb_.get_str();
    return "top(>=" + lb_.get_str() + ")";
  }

  friend bool operator==(const Nat& a, const Nat& b) {
    return a.exact_ == b.exact_ && a.lb_ == b.lb_;
  }
  friend bool operator!=(const Nat& a, const Nat& b) { return !(a == b); }

  /// Total order used for memo keys and for max/min on lower bounds only.
  friend bool lb_less(const Nat& a, const Nat& b) { return a.lb_ < b.lb_; }

  friend Nat operator+(const Nat& a, const Nat& b) {
    Nat r;
    r.lb_ = a.lb_ + b.lb_;
    r.exact_ = a.exact_ && b.exact_;
    r.clamp();
    return r;
  }

  friend Nat operator*(const Nat& a, const Nat& b) {
    Nat r;
    r.lb_ = a.lb_ * b.lb_;
    r.exact_ = a.exact_ && b.exact_;
    // 0 * top is genuinely 0 only if the exact side is 0.
    if ((a.exact_ && a.lb_ == 0) || (b.exact_ && b.lb_ == 0)) {
      r.lb_ = 0;
      r.exact_ = true;
    }
    r.clamp();
    return r;
  }

  /// Truncated subtraction a -. b = max{a-b, 0}.
  friend Nat monus(const Nat& a, const Nat& b) {
    Nat r;
    if (b.exact_) {
      r.lb_ = a.lb_ > b.lb_ ? mpz_class(a.lb_ - b.lb_) : mpz_class(0);
      r.exact_ = a.exact_;
    } else {
      // Subtrahend only bounded below: no useful lower bound on the result.
      r.lb_ = 0;
      r.exact_ = false;
    }
    r.clamp();
    return r;
  }

  friend Nat max_of(const Nat& a, const Nat& b) {
    Nat r;
    r.lb_ = a.lb_ >= b.lb_ ? a.lb_ : b.lb_;
    r.exact_ = a.exact_ && b.exact_;
    // max(exact v, top(lb)) is exactly v once v >= any possible b... only
    // when b is exact; a saturated argument keeps the max saturated.
    r.clamp();
    return r;
  }

  friend Nat min_of(const Nat& a, const Nat& b) {
    if (a.exact_ && b.exact_) return a.lb_ <= b.lb_ ? a : b;
    if (a.exact_ && !b.exact_ && b.lb_ >= a.lb_) return a;  // min is a exactly
    if (b.exact_ && !a.exact_ && a.lb_ >= b.lb_) return b;
    Nat r;
    r.lb_ = a.lb_ <= b.lb_ ? a.lb_ : b.lb_;
    r.exact_ = false;
    r.clamp();
    return r;
  }

  /// Least j with e^j >= x (so ceil(ln x), exact on naturals; ln of a
  /// saturated Nat is the ln of its lower bound, still a lower bound).
  friend Nat ceil_ln(const Nat& x) {
    if (x.lb_ <= 1) return x.exact_ ? Nat(0ul) : Nat::top(0);
    unsigned long j = detail_ceil_ln(x.lb_);
    Nat r(j);
    r.exact_ = x.exact_;
    return r;
  }

  /// ceil(e^{n}), saturating: used by divergence moduli of harmonic schedules.
  friend Nat ceil_exp(const Nat& n) {
    // e^n >= cap  iff  n >= ceil_ln(cap); compare against that threshold.
    static const unsigned long ln_cap = detail_ceil_ln(nat_cap());
    if (n.lb_ >= ln_cap) return Nat::top();
    if (!n.exact_) {
      Nat r = ceil_exp(Nat(n.lb_));
      return Nat::top(r.lb_);
    }
    unsigned long e = n.lb_.get_ui();
    mpz_class out = detail_ceil_exp(e);
    return Nat(out);
  }

 private:
  void clamp() {
    const mpz_class& cap = nat_cap();
    if (lb_ > cap) {
      lb_ = cap;
      exact_ = false;
    }
  }

  static unsigned long detail_ceil_ln(const mpz_class& x) {
    // least j with e^j >= x; iterate precision until rounding modes agree
    for (mpfr_prec_t prec = 128;; prec *= 2) {
      mpfr_t mx, lo, hi;
      mpfr_init2(mx, std::max<mpfr_prec_t>(prec, mpz_sizeinbase(x.get_mpz_t(), 2) + 8));
      mpfr_init2(lo, prec);
      mpfr_init2(hi, prec);
      mpfr_set_z(mx, x.get_mpz_t(), MPFR_RNDN);
      mpfr_log(lo, mx, MPFR_RNDD);
      mpfr_log(hi, mx, MPFR_RNDU);
      unsigned long jlo = mpfr_get_ui(lo, MPFR_RNDU);  // ceil of lower bound
      mpfr_t tmp;
      mpfr_init2(tmp, prec);
      mpfr_ceil(tmp, lo);
      unsigned long a = mpfr_get_ui(tmp, MPFR_RNDN);
      mpfr_ceil(tmp, hi);
      unsigned long b = mpfr_get_ui(tmp, MPFR_RNDN);
      mpfr_clears(mx, lo, hi, tmp, (mpfr_ptr) nullptr);
      (void)jlo;
      if (a == b) return a;
      if (prec > 1 << 20) throw std::runtime_error("ceil_ln: precision blowup");
    }
  }

  static mpz_class detail_ceil_exp(unsigned long e) {
    for (mpfr_prec_t prec = 256;; prec *= 2) {
      mpfr_t v, lo, hi, c;
      mpfr_inits2(prec, v, lo, hi, c, (mpfr_ptr) nullptr);
      mpfr_set_ui(v, e, MPFR_RNDN);
      mpfr_exp(lo, v, MPFR_RNDD);
      mpfr_exp(hi, v, MPFR_RNDU);
      mpz_class a, b;
      mpfr_ceil(c, lo);
      mpfr_get_z(a.get_mpz_t(), c, MPFR_RNDN);
      mpfr_ceil(c, hi);
      mpfr_get_z(b.get_mpz_t(), c, MPFR_RNDN);
      mpfr_clears(v, lo, hi, c, (mpfr_ptr) nullptr);
      if (a == b) return a;
      if (prec > 1 << 22) throw std::runtime_error("ceil_exp: precision blowup");
    }
  }

  mpz_class lb_;
  bool exact_;
};

/// Domination order used by the oracle. A saturated bound stands for an
/// unknown value that is at least its lb but in any case a genuine natural
/// number produced by a total functional, so it dominates any witness the
/// search can produce (witness caps sit far below the saturation cap).
inline bool dominates(const Nat& bound, const mpz_class& witness) {
  if (bound.is_top()) return witness <= nat_cap();
  return witness <= bound.value();
}

}  // namespace resmeta
