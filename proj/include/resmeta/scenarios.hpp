// Builtin scenario catalogue and the counterfunction grid.
//
// Six error-free scenarios with analytic projection references, built so the
// alternating orbit either lands on the reference exactly after one round
// (projection kinds whose images snap mixes on the anchor ray) or contracts
// geometrically toward it (quadratic kinds with the anchor inside the
// intersection). All use harmonic alpha = lambda and constant beta = mu, so
// the full modulus bundle is available. A seventh scenario uses constant
// alpha = lambda plus geometric errors for the error-reduction checks.

#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "resmeta/iterations.hpp"

namespace resmeta {
namespace scenarios {

inline Vec vec1(double a) {
  Vec v(1);
  v << a;
  return v;
}

inline Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

inline ScheduleBundle harmonic_bundle() {
  return make_bundle(SeqSpec::harmonic(1), SeqSpec::harmonic(1),
                     SeqSpec::constant(1.0), SeqSpec::constant(1.0));
}

/// The six convergence scenarios (error-free).
inline std::vector<std::shared_ptr<Scenario>> builtin_scenarios() {
  std::vector<std::shared_ptr<Scenario>> out;
  auto add = [&out](Scenario s) {
    out.push_back(std::make_shared<Scenario>(std::move(s)));
  };
  ScheduleBundle b = harmonic_bundle();

  // R^1, both operators the same halfspace cone x <= 0: every point on the
  // anchor ray projects exactly onto the boundary zero.
  add(make_scenario("half1", MonotoneOp::halfspace_cone(vec1(1), 0.0),
                    MonotoneOp::halfspace_cone(vec1(1), 0.0), vec1(1), vec1(2),
                    vec1(0), b, ErrorSchedule::zero(1), vec1(0)));

  // R^1, two interval cones sharing the upper face at 1; anchor above it, so
  // both projections clamp to 1 exactly.
  add(make_scenario("box1", MonotoneOp::box_cone(vec1(0), vec1(1)),
                    MonotoneOp::box_cone(vec1(-1), vec1(1)), vec1(1.5), vec1(2),
                    vec1(0), b, ErrorSchedule::zero(1), vec1(1)));

  // R^2, unit-ball cone inside a box cone; orbit lives on the positive
  // x-axis and clamps to the ball boundary point (1, 0).
  add(make_scenario("ball2", MonotoneOp::ball_cone(vec2(0, 0), 1.0),
                    MonotoneOp::box_cone(vec2(-1, -1), vec2(1, 1)), vec2(2, 0),
                    vec2(3, 0), vec2(0, 0), b, ErrorSchedule::zero(2),
                    vec2(1, 0)));

  // R^2, quadratic with zero set = x-axis, box cone; anchor inside the
  // intersection, vertical coordinate contracts geometrically.
  {
    Mat Q(2, 2);
    Q << 0, 0, 0, 1;
    add(make_scenario("quad2", MonotoneOp::quadratic(vec2(0, 0), Q),
                      MonotoneOp::box_cone(vec2(-1, -1), vec2(1, 1)),
                      vec2(0.5, 0), vec2(0.5, 1), vec2(0, 0), b,
                      ErrorSchedule::zero(2), vec2(0.5, 0)));
  }

  // R^2, two quadratics whose zero sets are the coordinate axes; the orbit
  // contracts to the origin, which is also the anchor.
  {
    Mat Qx(2, 2), Qy(2, 2);
    Qx << 1, 0, 0, 0;  // zero set: vertical line x = 0
    Qy << 0, 0, 0, 1;  // zero set: horizontal line y = 0
    add(make_scenario("lines2", MonotoneOp::quadratic(vec2(0, 1), Qx),
                      MonotoneOp::quadratic(vec2(2, 0), Qy), vec2(0, 0),
                      vec2(1, 1), vec2(0, 0), b, ErrorSchedule::zero(2),
                      vec2(0, 0)));
  }

  // R^2, both operators the same diagonal halfspace cone x + y <= 0; mixes on
  // the anchor ray project exactly to the origin.
  add(make_scenario("half2", MonotoneOp::halfspace_cone(vec2(1, 1), 0.0),
                    MonotoneOp::halfspace_cone(vec2(1, 1), 0.0), vec2(1, 1),
                    vec2(2, 2), vec2(0, 0), b, ErrorSchedule::zero(2),
                    vec2(0, 0)));
  return out;
}

/// Constant-mix scenario with geometric errors e_n = e'_n = 2^{-n}: the only
/// builtin whose divergence modulus is linear, keeping the error-reduction
/// rate small enough to check non-vacuously within 10^3 steps.
inline std::shared_ptr<Scenario> error_scenario() {
  ScheduleBundle b = make_bundle(SeqSpec::constant(0.5), SeqSpec::constant(0.5),
                                 SeqSpec::constant(1.0), SeqSpec::constant(1.0));
  return std::make_shared<Scenario>(make_scenario(
      "const1e", MonotoneOp::linear_psd(Mat::Identity(1, 1)),
      MonotoneOp::linear_psd(Mat::Identity(1, 1)), vec1(1), vec1(2), vec1(0), b,
      ErrorSchedule::geometric(vec1(1), 0.5, vec1(1), 0.5), vec1(0)));
}

/// The harmonic halfspace scenario with geometric errors, for the combined
/// (error-bearing) metastability bound.
inline std::shared_ptr<Scenario> error_scenario_harmonic() {
  return std::make_shared<Scenario>(make_scenario(
      "half1e", MonotoneOp::halfspace_cone(vec1(1), 0.0),
      MonotoneOp::halfspace_cone(vec1(1), 0.0), vec1(1), vec1(2), vec1(0),
      harmonic_bundle(), ErrorSchedule::geometric(vec1(1), 0.5, vec1(1), 0.5),
      vec1(0)));
}

inline std::shared_ptr<Scenario> find_scenario(const std::string& name) {
  for (auto& s : builtin_scenarios())
    if (s->name == name) return s;
  if (name == "const1e") return error_scenario();
  if (name == "half1e") return error_scenario_harmonic();
  throw std::invalid_argument("unknown builtin scenario: " + name);
}

// ---- counterfunction grid ---------------------------------------------------

struct NamedCounterfunction {
  std::string name;
  Counterfunction f;
};

/// Parse "identity", "doubling", or "affine:a:b" (n -> a*n + b).
inline Counterfunction parse_family(const std::string& spec) {
  if (spec == "identity") return Counterfunction::identity();
  if (spec == "doubling") return Counterfunction::affine(2, 0);
  if (spec.rfind("affine:", 0) == 0) {
    auto rest = spec.substr(7);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("affine family needs affine:a:b");
    unsigned long a = std::stoul(rest.substr(0, colon));
    unsigned long bb = std::stoul(rest.substr(colon + 1));
    return Counterfunction::affine(a, bb);
  }
  throw std::invalid_argument("unknown counterfunction family: " + spec);
}

/// The acceptance grid: id, n+10, 2n.
inline std::vector<NamedCounterfunction> default_grid() {
  return {{"identity", Counterfunction::identity()},
          {"affine:1:10", Counterfunction::affine(1, 10)},
          {"doubling", Counterfunction::affine(2, 0)}};
}

}  // namespace scenarios
}  // namespace resmeta
