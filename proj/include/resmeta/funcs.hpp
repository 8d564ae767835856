// Counterfunctions and rate functionals.
//
// A counterfunction f : N -> N is the quantifier-free datum a metastability
// bound is evaluated against. A rate functional takes (k, f) and yields the
// bound. Both are wrappers around std::function over Nat with three extras:
//  - sound propagation through saturated arguments (monotone case),
//  - an optional lazy majorant n |-> max_{i<=n} f(i) for non-monotone input,
//  - memoisation, since the closed-form bounds re-evaluate f heavily.

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resmeta/nat.hpp"

namespace resmeta {

class Counterfunction {
 public:
  using Rule = std::function<Nat(const Nat&)>;

  Counterfunction() = default;
  Counterfunction(std::string name, Rule rule, bool monotone = true)
      : state_(std::make_shared<State>()) {
    state_->name = std::move(name);
    state_->rule = std::move(rule);
    state_->monotone = monotone;
  }

  bool valid() const { return static_cast<bool>(state_); }
  bool monotone() const { return state_->monotone; }
  const std::string& name() const { return state_->name; }

  Nat operator()(const Nat& n) const {
    if (!state_) throw std::logic_error("Counterfunction: empty");
    if (n.is_top()) {
      if (!state_->monotone)
        throw std::domain_error("Counterfunction: saturated argument to non-monotone " +
                                state_->name);
      // f(true n) >= f(lb) >= lb of f(lb) by monotonicity.
      Nat at_lb = eval(n.lb());
      return Nat::top(at_lb.lb());
    }
    return eval(n.value());
  }

  Nat operator()(unsigned long n) const { return (*this)(Nat(n)); }

  /// Lazy majorant f^maj(n) = max_{i<=n} f(i); identity for monotone f.
  Counterfunction majorized(unsigned long scan_limit = 200000) const {
    if (state_->monotone) return *this;
    auto self = *this;
    auto cache = std::make_shared<std::vector<Nat>>();
    return Counterfunction(
        state_->name + "^maj",
        [self, cache, scan_limit](const Nat& n) -> Nat {
          if (!n.fits_ulong() || n.to_ulong() > scan_limit)
            throw std::domain_error("majorized: argument beyond scan limit for " +
                                    self.name());
          unsigned long m = n.to_ulong();
          while (cache->size() <= m) {
            Nat v = self(Nat((unsigned long)cache->size()));
            if (!cache->empty()) v = max_of(v, cache->back());
            cache->push_back(v);
          }
          return (*cache)[m];
        },
        /*monotone=*/true);
  }

  static Counterfunction identity() {
    return Counterfunction("id", [](const Nat& n) { return n; });
  }
  static Counterfunction constant(Nat c) {
    return Counterfunction("const", [c](const Nat&) { return c; });
  }
  static Counterfunction affine(unsigned long a, unsigned long b) {
    return Counterfunction("affine",
                           [a, b](const Nat& n) { return Nat(a) * n + Nat(b); });
  }

 private:
  struct State {
    std::string name;
    Rule rule;
    bool monotone = true;
    std::map<mpz_class, Nat> memo;
  };

  Nat eval(const mpz_class& n) const {
    auto it = state_->memo.find(n);
    if (it != state_->memo.end()) return it->second;
    Nat v = state_->rule(Nat(mpz_class(n)));
    if (state_->memo.size() < 1 << 16) state_->memo.emplace(n, v);
    return v;
  }

  std::shared_ptr<State> state_;
};

// ---- standard counterfunction transforms ----------------------------------

/// g_f(m) = f(2m+1): pushes an even/odd-indexed bound through index halving.
inline Counterfunction double_shift(const Counterfunction& f) {
  return Counterfunction(
      "g[" + f.name() + "]",
      [f](const Nat& m) { return f(Nat(2ul) * m + Nat(1ul)); }, f.monotone());
}

/// f~[M](m) = f(max{m, M}).
inline Counterfunction clip_below(const Counterfunction& f, const Nat& floor) {
  return Counterfunction(
      "clip[" + f.name() + "]",
      [f, floor](const Nat& m) { return f(max_of(m, floor)); }, f.monotone());
}

/// n |-> a*f(n) + b, for the frequent "2f", "2f+2", "f+1" wrappers.
inline Counterfunction scale_shift(const Counterfunction& f, unsigned long a,
                                   unsigned long b) {
  return Counterfunction(
      "ss[" + f.name() + "]",
      [f, a, b](const Nat& n) { return Nat(a) * f(n) + Nat(b); }, f.monotone());
}

/// Compose outer(inner(n)).
inline Counterfunction compose(const Counterfunction& outer,
                               const Counterfunction& inner) {
  return Counterfunction(
      outer.name() + "." + inner.name(),
      [outer, inner](const Nat& n) { return outer(inner(n)); },
      outer.monotone() && inner.monotone());
}

/// g^(count)(start): iterate a monotone self-map, fast-forwarding soundly.
///
/// Stops early at a fixed point (then extra iterations are free) or at the
/// saturation cap. If the step budget runs out the result degrades to a
/// saturated Nat whose lower bound is the last value reached — valid as long
/// as the orbit was nondecreasing, which holds for nondecreasing g with
/// g(start) >= start and is checked step by step. `expansive` asserts
/// g(x) >= x + 1 for all x (caller-supplied analytic fact); with it the
/// remaining step count can be added to the lower bound.
inline Nat iterate_self_map(const std::function<Nat(const Nat&)>& g, const Nat& count,
                            Nat v, bool expansive = false,
                            unsigned long budget = 200000) {
  mpz_class steps = count.lb();
  mpz_class done = 0;
  bool nondecreasing = true;
  while (done < steps) {
    if (done >= budget) {
      if (!nondecreasing) return Nat::top(0);
      mpz_class lb = v.lb();
      if (expansive) lb += steps - done;
      return Nat::top(lb);
    }
    Nat next = g(v);
    if (next == v) return count.exact() ? v : (v.exact() ? v : Nat::top(v.lb()));
    if (next.lb() < v.lb()) nondecreasing = false;
    v = next;
    ++done;
  }
  if (count.exact()) return v;
  // True count may exceed lb: the value reached is only a lower bound.
  return nondecreasing ? Nat::top(v.lb()) : Nat::top(0);
}

// ---- rate functionals ------------------------------------------------------

/// A metastability bound (k, f) |-> Nat. Callers pass arbitrary
/// counterfunctions; the wrapper majorizes non-monotone input on entry.
class RateFunctional {
 public:
  using Rule = std::function<Nat(const Nat&, const Counterfunction&)>;

  RateFunctional() = default;
  RateFunctional(std::string name, Rule rule)
      : name_(std::move(name)), rule_(std::move(rule)) {}

  bool valid() const { return static_cast<bool>(rule_); }
  const std::string& name() const { return name_; }

  Nat operator()(const Nat& k, const Counterfunction& f) const {
    if (!rule_) throw std::logic_error("RateFunctional: empty");
    return rule_(k, f.majorized());
  }
  Nat operator()(unsigned long k, const Counterfunction& f) const {
    return (*this)(Nat(k), f);
  }

 private:
  std::string name_;
  Rule rule_;
};

/// Parity merge: lifts a bound for the even-indexed subsequence to the full
/// sequence, Psi[psi](k, f) = 2*psi(k, m |-> f(2m+1)) + 1.
inline RateFunctional parity_merge(const RateFunctional& psi) {
  return RateFunctional("parity_merge[" + psi.name() + "]",
                        [psi](const Nat& k, const Counterfunction& f) {
                          return Nat(2ul) * psi(k, double_shift(f)) + Nat(1ul);
                        });
}

namespace detail {

// One orientation of the two-property merge: theta = phi1(k, fbar) where
// fbar(m) = ftil[phi2(k, ftil[m])](m), result max{theta, phi2(k, ftil[theta])}.
inline Nat combine_meta_ordered(const RateFunctional& phi1, const RateFunctional& phi2,
                                const Nat& k, const Counterfunction& f) {
  auto ftil = [f](const Nat& M) { return clip_below(f, M); };
  Counterfunction fbar(
      "fbar",
      [phi1, phi2, k, f, ftil](const Nat& m) {
        return ftil(phi2(k, ftil(m)))(m);
      },
      f.monotone());
  Nat theta = phi1(k, fbar);
  return max_of(theta, phi2(k, ftil(theta)));
}

}  // namespace detail

/// Simultaneous metastability for two bounds on the same sequence:
/// Phi[phi1, phi2](k, f) admits a common witness interval for both
/// properties. Both orientations are valid; take the smaller.
inline RateFunctional combine_meta(const RateFunctional& phi1,
                                   const RateFunctional& phi2) {
  return RateFunctional(
      "combine_meta[" + phi1.name() + "," + phi2.name() + "]",
      [phi1, phi2](const Nat& k, const Counterfunction& f) {
        Nat a = detail::combine_meta_ordered(phi1, phi2, k, f);
        Nat b = detail::combine_meta_ordered(phi2, phi1, k, f);
        return min_of(a, b);
      });
}

}  // namespace resmeta
