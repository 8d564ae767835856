// The four iterations and the cross-translations between them.
//
// Alternating-resolvent form (prev = previous point, errors inside the
// resolvent argument):
//   y_{2n+1} = J^A_{beta_n}(alpha_n u + (1-alpha_n) y_{2n}  [+ e_n])
//   y_{2n+2} = J^B_{mu_n} (lambda_n u + (1-lambda_n) y_{2n+1} [+ e'_n])
// Halpern-type form (errors added after the resolvent):
//   z_{2n+1} = alpha_n u + (1-alpha_n) J^A_{beta_n}(z_{2n})  [+ e_n]
//   z_{2n+2} = lambda_n u + (1-lambda_n) J^B_{mu_n}(z_{2n+1}) [+ e'_n]
// The translations set up the parameter identifications under which a
// Halpern-type orbit is an affine reshuffle of an alternating-resolvent one.

#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "resmeta/operators.hpp"
#include "resmeta/schedules.hpp"

namespace resmeta {

enum class IterTag { MarStar, Mar, HalpernStar, Halpern };

inline const char* iter_tag_name(IterTag t) {
  switch (t) {
    case IterTag::MarStar: return "mar_star";
    case IterTag::Mar: return "mar";
    case IterTag::HalpernStar: return "halpern_star";
    case IterTag::Halpern: return "halpern";
  }
  return "?";
}

struct Scenario {
  std::string name;
  MonotoneOp opA, opB;
  Vec u, x0, q;  // anchor, start, known common zero
  ScheduleBundle bundle;
  ErrorSchedule errors;
  unsigned long N = 1;
  std::optional<Vec> projection_ref;

  int dim() const { return (int)u.size(); }
};

/// Build a scenario, computing N as the least positive integer with
/// N >= max{2||u-q||, ||x0-q||, ||q||} and verifying q is a common zero.
inline Scenario make_scenario(std::string name, MonotoneOp opA, MonotoneOp opB, Vec u,
                              Vec x0, Vec q, ScheduleBundle bundle,
                              ErrorSchedule errors,
                              std::optional<Vec> projection_ref = std::nullopt) {
  if (u.size() != x0.size() || u.size() != q.size() || opA.dim() != (int)u.size() ||
      opB.dim() != (int)u.size())
    throw std::invalid_argument("make_scenario: dimension mismatch");
  for (double gamma : {0.5, 1.0, 2.0}) {
    if ((opA.resolvent(gamma, q) - q).norm() > 1e-10 ||
        (opB.resolvent(gamma, q) - q).norm() > 1e-10)
      throw std::invalid_argument("make_scenario: q is not a common zero");
  }
  double need = std::max({2.0 * (u - q).norm(), (x0 - q).norm(), q.norm()});
  unsigned long N = (unsigned long)std::max(1.0, std::ceil(need - 1e-12));
  Scenario s{std::move(name), std::move(opA), std::move(opB), std::move(u),
             std::move(x0),   std::move(q),   std::move(bundle),
             std::move(errors), N,            std::move(projection_ref)};
  return s;
}

class Trajectory {
 public:
  Trajectory(std::shared_ptr<const Scenario> scenario, IterTag tag)
      : scenario_(std::move(scenario)), tag_(tag) {
    points_.push_back(scenario_->x0);
  }

  const Scenario& scenario() const { return *scenario_; }
  IterTag tag() const { return tag_; }
  long size() const { return (long)points_.size(); }

  void extend(long upto) {
    if (upto < 0 || upto > (1L << 40))
      throw std::invalid_argument("Trajectory::extend: bad index");
    const Scenario& s = *scenario_;
    const ScheduleBundle& b = s.bundle;
    while ((long)points_.size() <= upto) {
      long i = (long)points_.size();  // index being produced
      long n = (i - 1) / 2;           // recursion step
      bool odd = i % 2 == 1;          // odd: A-step, even: B-step
      const Vec& prev = points_.back();
      double mix = odd ? b.alpha(n) : b.lambda(n);
      double res_param = odd ? b.beta(n) : b.mu(n);
      const MonotoneOp& op = odd ? s.opA : s.opB;
      Vec err = odd ? s.errors.e(n) : s.errors.eprime(n);
      Vec next;
      switch (tag_) {
        case IterTag::MarStar:
          next = op.resolvent(res_param, mix * s.u + (1.0 - mix) * prev);
          break;
        case IterTag::Mar:
          next = op.resolvent(res_param, mix * s.u + (1.0 - mix) * prev + err);
          break;
        case IterTag::HalpernStar:
          next = mix * s.u + (1.0 - mix) * op.resolvent(res_param, prev);
          break;
        case IterTag::Halpern:
          next = mix * s.u + (1.0 - mix) * op.resolvent(res_param, prev) + err;
          break;
      }
      points_.push_back(std::move(next));
    }
  }

  /// References stay valid across later extensions (deque storage), so
  /// expressions may mix `at` calls with different indices safely.
  const Vec& at(long i) {
    extend(i);
    return points_[(size_t)i];
  }

  /// (||J^A_{1/R}(p_n) - p_n||, ||J^B_{1/R}(p_n) - p_n||).
  std::pair<double, double> residuals(unsigned long R, long n) {
    const Vec& p = at(n);
    double g = 1.0 / (double)R;
    return {(scenario_->opA.resolvent(g, p) - p).norm(),
            (scenario_->opB.resolvent(g, p) - p).norm()};
  }

 private:
  std::shared_ptr<const Scenario> scenario_;
  IterTag tag_;
  std::deque<Vec> points_;
};

// ---- translations (Halpern relation) --------------------------------------

namespace detail {

inline std::function<double(long)> shift_seq(std::function<double(long)> f,
                                             long offset) {
  return [f = std::move(f), offset](long n) { return f(n + offset); };
}

}  // namespace detail

struct Translation {
  std::shared_ptr<const Scenario> derived;  // scenario generating the new orbit
  Trajectory trajectory;                    // orbit generated by the new recursion

  /// Max deviation of the affine identity linking the two orbits on [0, upto].
  std::function<double(Trajectory&, long)> identity_residual;
};

/// Alternating-resolvent orbit -> Halpern-type orbit: same operators, with
/// tilde-alpha_n = lambda_n, tilde-lambda_n = alpha_{n+1}, tilde-beta = beta,
/// tilde-mu = mu, and z_0 = alpha_0 u + (1-alpha_0) y_0. The identity is
///   z_{2n+1} = tilde-alpha_n u + (1-tilde-alpha_n) y_{2n+1},
///   z_{2n+2} = tilde-lambda_n u + (1-tilde-lambda_n) y_{2n+2}.
inline Translation translate_mar_to_halpern(const Trajectory& mar) {
  if (mar.tag() != IterTag::MarStar)
    throw std::invalid_argument("translate_mar_to_halpern: expected a MAR* orbit");
  const Scenario& s = mar.scenario();
  auto d = std::make_shared<Scenario>(s);
  d->name = s.name + ".halpern";
  ScheduleBundle& b = d->bundle;
  auto old_alpha = s.bundle.alpha;
  auto old_lambda = s.bundle.lambda;
  b.alpha = old_lambda;
  b.lambda = detail::shift_seq(old_alpha, 1);
  // convergence moduli swap roles; a(k) still works for the shifted sequence
  // because alpha_n is nonincreasing for every supported family
  std::swap(b.has_a, b.has_ell);
  std::swap(b.a, b.ell);
  double a0 = old_alpha(0);
  d->x0 = a0 * s.u + (1.0 - a0) * s.x0;
  auto dc = std::static_pointer_cast<const Scenario>(d);
  Trajectory z(dc, IterTag::HalpernStar);

  auto base = std::make_shared<Trajectory>(mar);
  auto residual = [base, old_alpha, old_lambda, u = s.u](Trajectory& z, long upto) {
    double worst = 0.0;
    for (long n = 0; 2 * n + 2 <= upto; ++n) {
      double ta = old_lambda(n), tl = old_alpha(n + 1);
      worst = std::max(
          worst, (z.at(2 * n + 1) - (ta * u + (1.0 - ta) * base->at(2 * n + 1))).norm());
      worst = std::max(
          worst, (z.at(2 * n + 2) - (tl * u + (1.0 - tl) * base->at(2 * n + 2))).norm());
    }
    return worst;
  };
  return Translation{dc, std::move(z), residual};
}

/// Halpern-type orbit -> alternating-resolvent orbit: A = B', B = A',
/// alpha = tilde-alpha, lambda = tilde-lambda, beta_n = tilde-mu_n,
/// mu_n = tilde-beta_{n+1}, y_0 = J^{A'}_{tilde-beta_0}(z_0). The identity is
///   z_{2n+1} = alpha_n u + (1-alpha_n) y_{2n},
///   z_{2n+2} = lambda_n u + (1-lambda_n) y_{2n+1}.
inline Translation translate_halpern_to_mar(const Trajectory& hal) {
  if (hal.tag() != IterTag::HalpernStar)
    throw std::invalid_argument("translate_halpern_to_mar: expected a Halpern orbit");
  const Scenario& s = hal.scenario();
  auto d = std::make_shared<Scenario>(s);
  d->name = s.name + ".mar";
  d->opA = s.opB;
  d->opB = s.opA;
  ScheduleBundle& b = d->bundle;
  auto old_beta = s.bundle.beta;
  auto old_mu = s.bundle.mu;
  b.beta = old_mu;
  b.mu = detail::shift_seq(old_beta, 1);
  d->x0 = s.opA.resolvent(s.bundle.beta(0), s.x0);
  auto dc = std::static_pointer_cast<const Scenario>(d);
  Trajectory y(dc, IterTag::MarStar);

  auto base = std::make_shared<Trajectory>(hal);
  auto alpha = s.bundle.alpha;
  auto lambda = s.bundle.lambda;
  auto residual = [base, alpha, lambda, u = s.u](Trajectory& y, long upto) {
    double worst = 0.0;
    for (long n = 0; 2 * n + 2 <= upto; ++n) {
      double an = alpha(n), ln = lambda(n);
      worst = std::max(
          worst, (base->at(2 * n + 1) - (an * u + (1.0 - an) * y.at(2 * n))).norm());
      worst = std::max(
          worst, (base->at(2 * n + 2) - (ln * u + (1.0 - ln) * y.at(2 * n + 1))).norm());
    }
    return worst;
  };
  return Translation{dc, std::move(y), residual};
}

}  // namespace resmeta
