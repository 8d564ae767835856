// Named bound evaluation with fixed, documented reference parameters.
//
// The CLI `bound` subcommand and the acceptance suite evaluate the same
// catalogue through eval_bound, so the frozen hand values are checked against
// exactly the code path users reach. Reference parameters per entry:
//   sigma1 / rho1      divergence modulus A(m) = 2m; M = 4 (sigma1), 1 (rho1)
//   sigma2 / rho2      product modulus A'(m,k) = (m+1)(k+1); M = 1
//   nu                 a = ell = r_beta = r_mu = identity; N = 1
//   phi1 / phi2        D = 2
//   w2 / zeta          N = 1 (w2 is the twice-iterated orbit map at 0)
//   rho_error          A(m) = 2m, zero errors, M = 1
//   rho_error_zero     A == 0, zero errors, M = 1
//   gamma_fwd/back     a = ell = identity, N = 1
//   parity             inner bound constantly 3
//   combine            inner bounds constantly 1 and 2
//   M0 / frak_m / mu4 / vartheta
//                      tower over the harmonic reference bundle
//                      (a = ell = id, A = divergence modulus of the harmonic
//                      family, P(n) = n + 2) with N = 1
//   mu_tilde / mu_meta3
//                      harmonic reference bundle, scenario-derived N,
//                      regularity hooks
//                      certified empirically on the "half1" builtin orbit
//   rho_tilde_fwd/back transfer of the empirical metastability rate of the
//                      "half1" orbit, scenario moduli and N

#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "resmeta/oracle.hpp"
#include "resmeta/rates.hpp"
#include "resmeta/scenarios.hpp"

namespace resmeta {
namespace registry {

struct BoundReport {
  std::string name;
  Nat value;
  std::string provenance;
};

namespace detail {

inline Counterfunction doubling() { return Counterfunction::affine(2, 0); }
inline Counterfunction zero() { return Counterfunction::constant(Nat(0ul)); }
inline std::function<Nat(const Nat&, const Nat&)> product_modulus() {
  return [](const Nat& m, const Nat& k) { return (m + Nat(1ul)) * (k + Nat(1ul)); };
}

/// Tower over the harmonic reference bundle with N = 1.
inline const rates::Tower& reference_tower() {
  static rates::Tower tw = [] {
    ScheduleBundle b = scenarios::harmonic_bundle();
    return rates::Tower(b.a, b.ell, b.A, b.P, Nat(1ul));
  }();
  return tw;
}

struct EmpiricalHooks {
  QuasiRateHook eta, etaprime;
  std::shared_ptr<Scenario> scenario;
};

/// Regularity hooks certified by witness search on the "half1" orbit.
inline const EmpiricalHooks& reference_hooks() {
  static EmpiricalHooks h = [] {
    EmpiricalHooks out;
    out.scenario = scenarios::find_scenario("half1");
    auto traj = std::make_shared<Trajectory>(out.scenario, IterTag::MarStar);
    out.eta = oracle::empirical_trajectory_rate(
        "eta.half1", traj, oracle::Metric::ResidualBoth, out.scenario->bundle.R);
    out.etaprime = oracle::empirical_trajectory_rate(
        "etaprime.half1", traj, oracle::Metric::CauchyPair, out.scenario->bundle.R);
    return out;
  }();
  return h;
}

}  // namespace detail

inline std::vector<std::string> bound_names() {
  return {"sigma1",  "rho1",     "sigma2",        "rho2",          "nu",
          "phi1",    "phi2",     "w2",            "zeta",          "rho_error",
          "rho_error_zero",      "gamma_fwd",     "gamma_back",    "parity",
          "combine", "M0",       "frak_m",        "mu4",           "vartheta",
          "mu_tilde", "mu_meta3", "rho_tilde_fwd", "rho_tilde_back"};
}

/// Evaluate the named bound at (k, n, f); entries ignore arguments they do
/// not take. Throws std::invalid_argument for unknown names.
inline BoundReport eval_bound(const std::string& name, const Nat& k, const Nat& n,
                              const Counterfunction& f) {
  using namespace detail;
  if (name == "sigma1")
    return {name, rates::sigma1(doubling(), Nat(4ul))(k, n),
            "summable-perturbation recurrence, interval form"};
  if (name == "rho1")
    return {name, rates::rho1(doubling(), zero(), zero(), zero(), Nat(1ul))(k),
            "summable-perturbation recurrence, rate form"};
  if (name == "sigma2")
    return {name, rates::sigma2(product_modulus(), Nat(1ul))(k, n),
            "product-condition recurrence, interval form"};
  if (name == "rho2")
    return {name, rates::rho2(product_modulus(), zero(), zero(), zero(), Nat(1ul))(k),
            "product-condition recurrence, rate form"};
  if (name == "nu") {
    auto id = Counterfunction::identity();
    return {name, rates::nu_rate(id, id, id, id, Nat(1ul))(k),
            "step-condition threshold"};
  }
  if (name == "phi1")
    return {name, rates::phi1(Nat(2ul), k, n, f),
            "difference-sequence iteration functional"};
  if (name == "phi2")
    return {name, rates::phi2(Nat(2ul), k, n, f),
            "difference-sequence iteration functional"};
  if (name == "w2") {
    auto w = [&f](const Nat& m) {
      Nat sq = Nat(24ul) * (m + Nat(1ul)) * (m + Nat(1ul));
      return max_of(f(sq), sq);
    };
    return {name, w(w(Nat(0ul))), "projection-point orbit map, two steps"};
  }
  if (name == "zeta")
    return {name, rates::zeta(Nat(1ul))(k, f), "projection-point counterfunction"};
  if (name == "rho_error")
    return {name,
            rates::rho_error(rates::ErrorVariant::DivergenceA, doubling(), nullptr,
                             zero(), zero(), Nat(1ul))(k),
            "error-reduction rate, divergence modulus"};
  if (name == "rho_error_zero")
    return {name,
            rates::rho_error(rates::ErrorVariant::DivergenceA, zero(), nullptr,
                             zero(), zero(), Nat(1ul))(k),
            "error-reduction rate, trivial divergence modulus"};
  if (name == "gamma_fwd" || name == "gamma_back") {
    auto id = Counterfunction::identity();
    RateFunctional probe("probe", [](const Nat& kk, const Counterfunction& ff) {
      return max_of(kk, ff(Nat(0ul)));
    });
    auto dir = name == "gamma_fwd" ? rates::TransferDirection::MarToHalpern
                                   : rates::TransferDirection::HalpernToMar;
    return {name, rates::halpern_transfer(dir, id, id, Nat(1ul), probe).gamma(k),
            "orbit-gap rate for the form transfer"};
  }
  if (name == "parity") {
    RateFunctional c3("c3", [](const Nat&, const Counterfunction&) { return Nat(3ul); });
    return {name, parity_merge(c3)(k, f), "even-subsequence parity merge"};
  }
  if (name == "combine") {
    RateFunctional c1("c1", [](const Nat&, const Counterfunction&) { return Nat(1ul); });
    RateFunctional c2("c2", [](const Nat&, const Counterfunction&) { return Nat(2ul); });
    return {name, combine_meta(c1, c2)(k, f), "two-property merge"};
  }
  if (name == "M0")
    return {name, reference_tower().M0(k), "unconditional tower constant"};
  if (name == "frak_m")
    return {name, reference_tower().frak_m(n), "unconditional tower constant"};
  if (name == "mu4")
    return {name, reference_tower().mu4()(k, f), "unconditional metastability tower"};
  if (name == "vartheta")
    return {name, reference_tower().vartheta()(k, f),
            "joint residual quasi-rate corollary"};
  if (name == "mu_tilde" || name == "mu_meta3") {
    const auto& h = reference_hooks();
    const ScheduleBundle& b = h.scenario->bundle;
    Nat N((unsigned long)h.scenario->N);
    Nat v = name == "mu_tilde"
                ? rates::mu_tilde(h.eta.rule, N, Nat(b.R), b.A, b.t)(k, f)
                : rates::mu_meta3(h.eta.rule, h.etaprime.rule, N, Nat(b.R), b.A,
                                  b.t)(k, f);
    return {name, v, "conditional metastability bound, empirical regularity hook"};
  }
  if (name == "rho_tilde_fwd" || name == "rho_tilde_back") {
    const auto& h = reference_hooks();
    const ScheduleBundle& b = h.scenario->bundle;
    auto traj = std::make_shared<Trajectory>(
        h.scenario, name == "rho_tilde_fwd" ? IterTag::MarStar : IterTag::HalpernStar);
    RateFunctional rho(
        "rho.emp", [traj](const Nat& kk, const Counterfunction& ff) {
          if (!kk.exact() || !kk.fits_ulong()) return Nat::top(0);
          oracle::WitnessQuery q;
          q.k = kk;
          q.f = ff;
          q.cap = 100000;
          auto w = oracle::find_meta_witness(*traj, q);
          return w.found ? Nat((unsigned long)w.n_star) : Nat::top(mpz_class(q.cap));
        });
    auto dir = name == "rho_tilde_fwd" ? rates::TransferDirection::MarToHalpern
                                       : rates::TransferDirection::HalpernToMar;
    Nat N((unsigned long)h.scenario->N);
    return {name, rates::halpern_transfer(dir, b.a, b.ell, N, rho).rho_tilde(k, f),
            "transferred metastability bound"};
  }
  throw std::invalid_argument("unknown bound name: " + name);
}

}  // namespace registry
}  // namespace resmeta
