// The full rate calculus over saturating naturals.
//
// Layout mirrors the derivation structure:
//  - quantitative Xu lemmas (rho1/sigma1 for a divergence modulus A,
//    rho2/sigma2 for the product-condition modulus A'),
//  - the projection-point functional zeta and the removal lemma omega_eta,
//  - the conditional metastability bound mu_tilde and its corollary mu_meta3,
//  - the eta-family of quasi-rates of asymptotic regularity (parametric in a
//    pluggable quasi-rate hook for the underlying Suzuki-type lemma),
//  - the Halpern-relation transfer (gamma, rho_tilde),
//  - the unconditional tower (constants M0..M2, phi/Psi/xi/frak_m/r/Xi) with
//    the main bound mu_meta4 and the regularity corollary vartheta,
//  - the error-reduction rate rho_error and the combined bound
//    meta_with_errors, plus the "last ascent" index map tau.

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "resmeta/funcs.hpp"
#include "resmeta/nat.hpp"

namespace resmeta {

/// Two-argument rate (k, n) -> Nat, as produced by sigma1 / sigma2.
using TwoArgRate = std::function<Nat(const Nat&, const Nat&)>;

/// Pluggable quasi-rate (Suzuki-type lemma): the closed form lives in
/// external work, so callers install either an external formula or an
/// empirical functional certified by oracle search on the concrete orbit.
struct QuasiRateHook {
  enum class Impl { External, Empirical };
  Impl impl = Impl::Empirical;
  RateFunctional rule;
  std::string note;

  bool valid() const { return rule.valid(); }
};

namespace rates {

// ---- quantitative Xu lemmas ------------------------------------------------

namespace detail {
inline Nat n_tilde(const Counterfunction& B, const Counterfunction& C,
                   const Counterfunction& D, const Nat& k) {
  Nat arg = Nat(4ul) * k + Nat(3ul);
  return max_of(max_of(B(arg), C(arg)), D(arg) + Nat(1ul));
}
}  // namespace detail

/// rho1(k) = A(ntilde + ceil_ln(4M(k+1))) + 1,
/// ntilde = max{B(4k+3), C(4k+3), D(4k+3)+1}.
inline Counterfunction rho1(const Counterfunction& A, const Counterfunction& B,
                            const Counterfunction& C, const Counterfunction& D,
                            const Nat& M) {
  return Counterfunction("rho1", [A, B, C, D, M](const Nat& k) {
    Nat nt = detail::n_tilde(B, C, D, k);
    return A(nt + ceil_ln(Nat(4ul) * M * (k + Nat(1ul)))) + Nat(1ul);
  });
}

/// sigma1(k, n) = A(n + ceil_ln(4M(k+1))) + 1.
inline TwoArgRate sigma1(const Counterfunction& A, const Nat& M) {
  return [A, M](const Nat& k, const Nat& n) {
    return A(n + ceil_ln(Nat(4ul) * M * (k + Nat(1ul)))) + Nat(1ul);
  };
}

/// rho2(k) = A'(ntilde, 4M(k+1)-1) + ntilde + 1.
inline Counterfunction rho2(const std::function<Nat(const Nat&, const Nat&)>& Aprime,
                            const Counterfunction& B, const Counterfunction& C,
                            const Counterfunction& D, const Nat& M) {
  return Counterfunction("rho2", [Aprime, B, C, D, M](const Nat& k) {
    Nat nt = detail::n_tilde(B, C, D, k);
    return Aprime(nt, monus(Nat(4ul) * M * (k + Nat(1ul)), Nat(1ul))) + nt + Nat(1ul);
  });
}

/// sigma2(k, n) = A'(n, 4M(k+1)-1) + 1.
inline TwoArgRate sigma2(const std::function<Nat(const Nat&, const Nat&)>& Aprime,
                         const Nat& M) {
  return [Aprime, M](const Nat& k, const Nat& n) {
    return Aprime(n, monus(Nat(4ul) * M * (k + Nat(1ul)), Nat(1ul))) + Nat(1ul);
  };
}

// ---- projection functional and removal lemma -------------------------------

/// zeta(k,f) = 24N (w^{(E)}(0) + 1)^2, w(m) = max{f(24N(m+1)^2), 24N(m+1)^2},
/// E = 4N^4(k+1)^2. w is strictly expansive (w(m) >= 24N(m+1)^2 > m), which
/// licenses fast-forwarding the iterate once the budget runs out.
inline RateFunctional zeta(const Nat& N) {
  return RateFunctional("zeta", [N](const Nat& k, const Counterfunction& f) {
    Nat E = Nat(4ul) * N * N * N * N * (k + Nat(1ul)) * (k + Nat(1ul));
    auto w = [&](const Nat& m) {
      Nat sq = Nat(24ul) * N * (m + Nat(1ul)) * (m + Nat(1ul));
      return max_of(f(sq), sq);
    };
    Nat it = iterate_self_map(w, E, Nat(0ul), /*expansive=*/true);
    return Nat(24ul) * N * (it + Nat(1ul)) * (it + Nat(1ul));
  });
}

/// omega_eta(k,f) = eta(zeta(k, fhat), f), fhat(m) = f(eta(m, f)).
inline RateFunctional omega_eta(const Nat& N, const RateFunctional& eta) {
  RateFunctional z = zeta(N);
  return RateFunctional("omega_eta", [z, eta](const Nat& k, const Counterfunction& f) {
    Counterfunction fhat(
        "fhat", [eta, f](const Nat& m) { return f(eta(m, f)); }, f.monotone());
    return eta(z(k, fhat), f);
  });
}

// ---- conditional metastability ---------------------------------------------

/// mu_tilde(k,f) = sigma1(ktil, Omega_eta(k', 2g+2)) with sigma1 = sigma1[A, 4N^2],
/// ktil = (k+1)^2 - 1, k' = 16(k+1)^2 - 1, p(n) = f(sigma1(ktil, n)),
/// g(n) = 64 N R (k+1)^2 (p(n)+1) t(p(n)) - 1.
inline RateFunctional mu_tilde(const RateFunctional& eta, const Nat& N, const Nat& R,
                               const Counterfunction& A, const Counterfunction& t) {
  RateFunctional Om = omega_eta(N, eta);
  TwoArgRate s1 = sigma1(A, Nat(4ul) * N * N);
  return RateFunctional(
      "mu_tilde", [Om, s1, N, R, t](const Nat& k, const Counterfunction& f) {
        Nat k1 = k + Nat(1ul);
        Nat ktil = monus(k1 * k1, Nat(1ul));
        Nat kprime = monus(Nat(16ul) * k1 * k1, Nat(1ul));
        Counterfunction g2(
            "2g+2",
            [s1, N, R, t, f, k1, ktil](const Nat& n) {
              Nat p = f(s1(ktil, n));
              Nat g = monus(Nat(64ul) * N * R * k1 * k1 * (p + Nat(1ul)) * t(p),
                            Nat(1ul));
              return Nat(2ul) * g + Nat(2ul);
            },
            f.monotone());
        return s1(ktil, Om(kprime, g2));
      });
}

/// mu_meta3 = parity_merge(combine_meta(psi1, psi2)),
/// psi1(k,f) = eta'(4k+3, 2f), psi2(k,f) = mu_tilde(4k+3, f).
inline RateFunctional mu_meta3(const RateFunctional& eta, const RateFunctional& etaprime,
                               const Nat& N, const Nat& R, const Counterfunction& A,
                               const Counterfunction& t) {
  RateFunctional mt = mu_tilde(eta, N, R, A, t);
  RateFunctional psi1("psi1", [etaprime](const Nat& k, const Counterfunction& f) {
    return etaprime(Nat(4ul) * k + Nat(3ul), scale_shift(f, 2, 0));
  });
  RateFunctional psi2("psi2", [mt](const Nat& k, const Counterfunction& f) {
    return mt(Nat(4ul) * k + Nat(3ul), f);
  });
  return parity_merge(combine_meta(psi1, psi2));
}

// ---- eta family (quasi-rates of asymptotic regularity) ---------------------

/// nu(k) = max{a(38N(k+1)-1), ell(22N(k+1)-1)+1,
///             r_beta(11N(k+1)-1), r_mu(16N(k+1)-1)+1}.
inline Counterfunction nu_rate(const Counterfunction& a, const Counterfunction& ell,
                               const Counterfunction& r_beta,
                               const Counterfunction& r_mu, const Nat& N) {
  return Counterfunction("nu", [a, ell, r_beta, r_mu, N](const Nat& k) {
    auto arg = [&](unsigned long c) {
      return monus(Nat(c) * N * (k + Nat(1ul)), Nat(1ul));
    };
    Nat v = max_of(a(arg(38)), ell(arg(22)) + Nat(1ul));
    v = max_of(v, r_beta(arg(11)));
    return max_of(v, r_mu(arg(16)) + Nat(1ul));
  });
}

/// Forward the installed Suzuki-type hook with its parameters pinned.
inline RateFunctional suzuki_hook(unsigned long a_param, const Counterfunction& nu,
                                  const Nat& bound, const QuasiRateHook& hook) {
  if (!hook.valid())
    throw std::logic_error("suzuki_hook: no quasi-rate hook installed");
  (void)a_param;
  (void)nu;
  (void)bound;
  return hook.rule;
}

/// The staged quasi-rates for step gaps and residuals. Every "constant"
/// N1..N4 is read as a function of the incoming k, matching its use sites.
class EtaFamily {
 public:
  EtaFamily(Counterfunction a, Counterfunction ell, Counterfunction r_beta,
            Counterfunction r_mu, Nat N, QuasiRateHook chi)
      : a_(std::move(a)),
        ell_(std::move(ell)),
        r_beta_(std::move(r_beta)),
        r_mu_(std::move(r_mu)),
        N_(std::move(N)),
        chi_(std::move(chi)) {}

  Counterfunction nu() const { return nu_rate(a_, ell_, r_beta_, r_mu_, N_); }

  /// eta0 = chi[4, nu, 3N]: quasi-rate for the odd-step gaps.
  RateFunctional eta0() const {
    return suzuki_hook(4, nu(), Nat(3ul) * N_, chi_);
  }

  Nat N1(const Nat& k) const {
    Nat arg = monus(Nat(16ul) * N_ * (k + Nat(1ul)), Nat(1ul));
    return max_of(ell_(arg) + Nat(1ul), r_mu_(arg) + Nat(1ul));
  }

  /// eta1(k,f) = max{eta0(2k+1, ftil[N1]), N1}: even-step gaps.
  RateFunctional eta1() const {
    RateFunctional e0 = eta0();
    auto self = *this;
    return RateFunctional("eta1", [e0, self](const Nat& k, const Counterfunction& f) {
      Nat n1 = self.N1(k);
      return max_of(e0(Nat(2ul) * k + Nat(1ul), clip_below(f, n1)), n1);
    });
  }

  Nat N2(const Nat& k) const {
    Nat arg = monus(Nat(32ul) * N_ * N_ * (k + Nat(1ul)) * (k + Nat(1ul)), Nat(1ul));
    return max_of(a_(arg), ell_(arg));
  }

  /// eta2(k,f) = 2 max{eta1(8N(k+1)^2-1, fcheck), N2} + 1,
  /// fcheck(n) = f(2 max{n, N2} + 1): consecutive-step gaps.
  RateFunctional eta2() const {
    RateFunctional e1 = eta1();
    auto self = *this;
    return RateFunctional("eta2", [e1, self](const Nat& k, const Counterfunction& f) {
      Nat n2 = self.N2(k);
      Nat kk = monus(Nat(8ul) * self.N_ * (k + Nat(1ul)) * (k + Nat(1ul)), Nat(1ul));
      Counterfunction fcheck(
          "fcheck",
          [f, n2](const Nat& n) {
            return f(Nat(2ul) * max_of(n, n2) + Nat(1ul));
          },
          f.monotone());
      return Nat(2ul) * max_of(e1(kk, fcheck), n2) + Nat(1ul);
    });
  }

  Nat N3(const Nat& k) const {
    return a_(monus(Nat(8ul) * N_ * (k + Nat(1ul)), Nat(1ul)));
  }
  Nat N4(const Nat& k) const {
    return ell_(monus(Nat(8ul) * N_ * (k + Nat(1ul)), Nat(1ul)));
  }

  /// eta3(k,f) = max{eta2(4k+3, ftil[N3]), N3}: residual at odd iterates.
  RateFunctional eta3() const {
    RateFunctional e2 = eta2();
    auto self = *this;
    return RateFunctional("eta3", [e2, self](const Nat& k, const Counterfunction& f) {
      Nat n3 = self.N3(k);
      return max_of(e2(Nat(4ul) * k + Nat(3ul), clip_below(f, n3)), n3);
    });
  }

  /// eta4: as eta3 with N4, residual at even iterates.
  RateFunctional eta4() const {
    RateFunctional e2 = eta2();
    auto self = *this;
    return RateFunctional("eta4", [e2, self](const Nat& k, const Counterfunction& f) {
      Nat n4 = self.N4(k);
      return max_of(e2(Nat(4ul) * k + Nat(3ul), clip_below(f, n4)), n4);
    });
  }

  /// eta5 = Psi[Phi[eta2~, eta3~]], eta6 = Psi[Phi[eta2~, eta4~]] with
  /// eta2~(k,f) = eta2(4k+3, 2f), eta3~(k,f) = eta3(2k+1, f),
  /// eta4~(k,f) = eta4(2k+1, h_f) + 1, h_f(n) = f(n+1).
  RateFunctional eta5() const {
    return parity_merge(combine_meta(tilde2(), tilde3()));
  }
  RateFunctional eta6() const {
    return parity_merge(combine_meta(tilde2(), tilde4()));
  }

  /// The full residual quasi-rate eta = Phi[eta5, eta6].
  RateFunctional eta() const { return combine_meta(eta5(), eta6()); }

 private:
  RateFunctional tilde2() const {
    RateFunctional e2 = eta2();
    return RateFunctional("eta2~", [e2](const Nat& k, const Counterfunction& f) {
      return e2(Nat(4ul) * k + Nat(3ul), scale_shift(f, 2, 0));
    });
  }
  RateFunctional tilde3() const {
    RateFunctional e3 = eta3();
    return RateFunctional("eta3~", [e3](const Nat& k, const Counterfunction& f) {
      return e3(Nat(2ul) * k + Nat(1ul), f);
    });
  }
  RateFunctional tilde4() const {
    RateFunctional e4 = eta4();
    return RateFunctional("eta4~", [e4](const Nat& k, const Counterfunction& f) {
      Counterfunction hf(
          "h_f", [f](const Nat& n) { return f(n + Nat(1ul)); }, f.monotone());
      return e4(Nat(2ul) * k + Nat(1ul), hf) + Nat(1ul);
    });
  }

  Counterfunction a_, ell_, r_beta_, r_mu_;
  Nat N_;
  QuasiRateHook chi_;
};

// ---- Halpern-relation transfer ---------------------------------------------

struct HalpernTransfer {
  Counterfunction gamma;       // rate of convergence of the orbit gap
  RateFunctional rho_tilde;    // transferred metastability bound
};

enum class TransferDirection { MarToHalpern, HalpernToMar };

/// gamma(k) = 2 max{a(2N(k+1)-1), ell(2N(k+1)-1)} + (2 or 1);
/// rho_tilde(k,f) = max{rho(2k+1, F), gamma(4k+3)}, where F = ftil[gamma(4k+3)]
/// toward the Halpern form and F = ftil[gamma(4k+3)] + 1 back.
inline HalpernTransfer halpern_transfer(TransferDirection dir, const Counterfunction& a,
                                        const Counterfunction& ell, const Nat& N,
                                        const RateFunctional& rho) {
  bool to_halpern = dir == TransferDirection::MarToHalpern;
  Counterfunction gamma(
      "gamma", [a, ell, N, to_halpern](const Nat& k) {
        Nat arg = monus(Nat(2ul) * N * (k + Nat(1ul)), Nat(1ul));
        return Nat(2ul) * max_of(a(arg), ell(arg)) +
               Nat(to_halpern ? 2ul : 1ul);
      });
  RateFunctional rt(
      "rho_tilde", [gamma, rho, to_halpern](const Nat& k, const Counterfunction& f) {
        Nat g = gamma(Nat(4ul) * k + Nat(3ul));
        Counterfunction F = clip_below(f, g);
        if (!to_halpern) F = scale_shift(F, 1, 1);
        return max_of(rho(Nat(2ul) * k + Nat(1ul), F), g);
      });
  return {gamma, rt};
}

// ---- the unconditional tower (Mainge route) --------------------------------

/// phi2[D](k,n,f) = max{n, (f+1)^(D(k+1))(n)}; phi1 = f(phi2)+1. The
/// iteration count is the product D*(k+1).
inline Nat phi2(const Nat& D, const Nat& k, const Nat& n, const Counterfunction& f) {
  Nat count = D * (k + Nat(1ul));
  auto step = [&f](const Nat& m) { return f(m) + Nat(1ul); };
  return max_of(n, iterate_self_map(step, count, n));
}

inline Nat phi1(const Nat& D, const Nat& k, const Nat& n, const Counterfunction& f) {
  return f(phi2(D, k, n, f)) + Nat(1ul);
}

class Tower {
 public:
  Tower(Counterfunction a, Counterfunction ell, Counterfunction A, Counterfunction P,
        Nat N)
      : a_(std::move(a)),
        ell_(std::move(ell)),
        A_(std::move(A)),
        P_(std::move(P)),
        N_(std::move(N)),
        s1_(sigma1(A_, Nat(4ul) * N_ * N_)) {}

  Nat M0(const Nat& k) const {
    Nat arg = monus(Nat(16ul) * N_ * (k + Nat(1ul)), Nat(1ul));
    return max_of(a_(arg), ell_(arg));
  }
  Nat M1(const Nat& k) const {
    Nat b = Nat(8ul) * N_ * (k + Nat(1ul));
    Nat c = Nat(4ul) * N_ * (k + Nat(1ul));
    return max_of(monus(a_(b * b), Nat(1ul)), monus(ell_(Nat(3ul) * c * c), Nat(1ul)));
  }
  Nat M2(const Nat& k) const {
    Nat b = Nat(64ul) * N_ * (k + Nat(1ul));
    Nat c = Nat(32ul) * N_ * (k + Nat(1ul));
    return max_of(monus(a_(b * b), Nat(1ul)), monus(ell_(Nat(3ul) * c * c), Nat(1ul)));
  }

  Nat D() const { return Nat(4ul) * N_ * N_; }

  Nat Psi1(const Nat& k, const Nat& n, const Counterfunction& f) const {
    Nat kk = monus(Nat(2ul) * (k + Nat(1ul)) * (k + Nat(1ul)), Nat(1ul));
    return phi1(D(), kk, n, clip_below(f, M1(k)));
  }
  Nat Psi2(const Nat& k, const Nat& n, const Counterfunction& f) const {
    Nat kk = monus(Nat(2ul) * (k + Nat(1ul)) * (k + Nat(1ul)), Nat(1ul));
    return max_of(phi2(D(), kk, n, clip_below(f, M1(k))), M1(k));
  }
  Nat Psi3(const Nat& k, const Nat& n, const Counterfunction& f) const {
    Nat kk = monus(Nat(128ul) * (k + Nat(1ul)) * (k + Nat(1ul)), Nat(1ul));
    return phi1(D(), kk, n, clip_below(f, M2(k)));
  }
  Nat Psi4(const Nat& k, const Nat& n, const Counterfunction& f) const {
    Nat kk = monus(Nat(128ul) * (k + Nat(1ul)) * (k + Nat(1ul)), Nat(1ul));
    return max_of(phi2(D(), kk, n, clip_below(f, M2(k))), M2(k));
  }

  Nat ktil(const Nat& k) const {
    return monus(Nat(16ul) * (k + Nat(1ul)) * (k + Nat(1ul)), Nat(1ul));
  }

  Counterfunction j_f(const Nat& k, const Counterfunction& f) const {
    auto s1 = s1_;
    Nat kt = ktil(k);
    return Counterfunction(
        "j_f", [s1, kt, f](const Nat& n) {
          return f(Nat(2ul) * s1(kt, n) + Nat(1ul));
        },
        f.monotone());
  }

  Nat Psi5(const Nat& k, const Nat& n, const Counterfunction& f) const {
    return Psi3(max_of(k, n), n, j_f(k, f));
  }
  Nat Psi6(const Nat& k, const Nat& n, const Counterfunction& f) const {
    Nat nt = Psi4(max_of(k, n), n, j_f(k, f));
    return Nat(2ul) * s1_(ktil(k), nt) + Nat(1ul);
  }

  Nat xi1(const Nat& k, const Counterfunction& f, const Nat& n) const {
    return monus(Nat(16ul * 64ul) * N_ * (k + Nat(1ul)) * (k + Nat(1ul)) *
                     (f(Psi6(k, n, f)) + Nat(1ul)),
                 Nat(1ul));
  }
  Nat xi2(const Nat& k, const Counterfunction& f, const Nat& n) const {
    return monus(Nat(16ul * 96ul) * N_ * P_(f(Nat(2ul) * n + Nat(1ul))) *
                     (k + Nat(1ul)) * (k + Nat(1ul)),
                 Nat(1ul));
  }

  Nat frak_m(const Nat& n) const {
    return max_of(a_(monus(Nat(16ul * 64ul) * N_ * N_ * n, Nat(1ul))),
                  ell_(monus(Nat(12ul * 64ul) * N_ * N_ * n, Nat(1ul))));
  }
  Nat r(const Nat& n, const Nat& k) const {
    return max_of(frak_m(Nat(2ul) * (n + Nat(1ul)) * (n + Nat(1ul))),
                  frak_m((k + Nat(1ul)) * (k + Nat(1ul))));
  }
  Nat r_plus(const Nat& n, const Nat& k) const { return max_of(r(n, k), n); }

  Counterfunction Xi(const Nat& k, const Counterfunction& f) const {
    auto self = *this;
    return Counterfunction(
        "Xi", [self, k, f](const Nat& n) {
          Nat rp = self.r_plus(n, k);
          Nat x1 = self.xi1(k, f, rp);
          Nat x2 = self.xi2(k, f, self.Psi5(k, rp, f));
          return max_of(x1, x2);
        },
        f.monotone());
  }

  /// mu(k,f) = max{Psi6(k, n*, f), 2 Psi5(k, n*, f) + 1},
  /// n* = r_plus(zeta(kbar, Xi), k), kbar = 3*96(k+1)^2 - 1.
  RateFunctional mu4() const {
    auto self = *this;
    RateFunctional z = zeta(N_);
    return RateFunctional("mu_meta4", [self, z](const Nat& k, const Counterfunction& f) {
      Nat kbar = monus(Nat(3ul * 96ul) * (k + Nat(1ul)) * (k + Nat(1ul)), Nat(1ul));
      Nat zx = z(kbar, self.Xi(k, f));
      Nat nstar = self.r_plus(zx, k);
      return max_of(self.Psi6(k, nstar, f),
                    Nat(2ul) * self.Psi5(k, nstar, f) + Nat(1ul));
    });
  }

  /// vartheta(k,f) = 2 max{mu(8k+7, 2 g~_f[M0] + 2), M0} + 1, with
  /// g~_f[M0](n) = f(2 max{n, M0} + 1) and M0 taken at the incoming k.
  RateFunctional vartheta() const {
    auto self = *this;
    RateFunctional mu = mu4();
    return RateFunctional("vartheta", [self, mu](const Nat& k, const Counterfunction& f) {
      Nat m0 = self.M0(k);
      Counterfunction inner(
          "2g~_f+2",
          [f, m0](const Nat& n) {
            return Nat(2ul) * f(Nat(2ul) * max_of(n, m0) + Nat(1ul)) + Nat(2ul);
          },
          f.monotone());
      return Nat(2ul) * max_of(mu(Nat(8ul) * k + Nat(7ul), inner), m0) + Nat(1ul);
    });
  }

 private:
  Counterfunction a_, ell_, A_, P_;
  Nat N_;
  TwoArgRate s1_;
};

// ---- error reduction and combination ---------------------------------------

enum class ErrorVariant { DivergenceA, ProductAprime };

/// rho(k) = max{2 rho_inner(2k+1) + 1, 2 E(2k+1) + 3} where rho_inner is
/// rho1[A, 0, 0, D, M] (or rho2[A', ...]) with D(k) = max{E(2k+1), E'(2k+1)}.
inline Counterfunction rho_error(ErrorVariant variant, const Counterfunction& A,
                                 const std::function<Nat(const Nat&, const Nat&)>& Aprime,
                                 const Counterfunction& E, const Counterfunction& Eprime,
                                 const Nat& M) {
  Counterfunction zero = Counterfunction::constant(Nat(0ul));
  Counterfunction D("D", [E, Eprime](const Nat& k) {
    Nat arg = Nat(2ul) * k + Nat(1ul);
    return max_of(E(arg), Eprime(arg));
  });
  Counterfunction inner = variant == ErrorVariant::DivergenceA
                              ? rho1(A, zero, zero, D, M)
                              : rho2(Aprime, zero, zero, D, M);
  return Counterfunction("rho_error", [inner, E](const Nat& k) {
    Nat arg = Nat(2ul) * k + Nat(1ul);
    return max_of(Nat(2ul) * inner(arg) + Nat(1ul), Nat(2ul) * E(arg) + Nat(3ul));
  });
}

/// Combined metastability for the error-bearing orbit:
/// (k,f) -> max{mu(2k+1, ftil[rho(4k+3)]), rho(4k+3)}.
inline RateFunctional meta_with_errors(const RateFunctional& mu,
                                       const Counterfunction& rho) {
  return RateFunctional(
      "meta_with_errors", [mu, rho](const Nat& k, const Counterfunction& f) {
        Nat rk = rho(Nat(4ul) * k + Nat(3ul));
        return max_of(mu(Nat(2ul) * k + Nat(1ul), clip_below(f, rk)), rk);
      });
}

// ---- the "last ascent" index map -------------------------------------------

/// tau^s_m(n): n if n < m; the largest ascent index in [m, n] if one exists;
/// n if s is nonincreasing on [m, n]. Requires s defined on [0, n+1].
inline long tau(const std::vector<double>& s, long m, long n) {
  if (n + 1 >= (long)s.size() || m < 0 || n < 0)
    throw std::out_of_range("tau: sequence too short");
  if (n < m) return n;
  long best = -1;
  for (long i = m; i <= n; ++i)
    if (s[(size_t)i] < s[(size_t)i + 1]) best = i;
  return best >= 0 ? best : n;
}

}  // namespace rates
}  // namespace resmeta
