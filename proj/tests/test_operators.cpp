#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "resmeta/operators.hpp"

using resmeta::Mat;
using resmeta::MonotoneOp;
using resmeta::Vec;

namespace {
Vec v1(double a) {
  Vec v(1);
  v << a;
  return v;
}
Vec v2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}
}  // namespace

TEST_CASE("resolvent closed forms") {
  SECTION("zero operator: J = Id") {
    auto op = MonotoneOp::zero(2);
    CHECK((op.resolvent(1.0, v2(3, -4)) - v2(3, -4)).norm() == 0.0);
  }
  SECTION("identity linear map: J_g(x) = x / (1+g)") {
    auto op = MonotoneOp::linear_psd(Mat::Identity(1, 1));
    CHECK(op.resolvent(1.0, v1(3))(0) == Catch::Approx(1.5));
    CHECK(op.resolvent(3.0, v1(8))(0) == Catch::Approx(2.0));
  }
  SECTION("shifted quadratic: J_g(x) = c + (x - c)/(1 + g q)") {
    auto op = MonotoneOp::quadratic(v1(2), 3.0 * Mat::Identity(1, 1));
    CHECK(op.resolvent(1.0, v1(6))(0) == Catch::Approx(2.0 + 4.0 / 4.0));
  }
  SECTION("normal cones project onto their set for every gamma") {
    auto box = MonotoneOp::box_cone(v2(0, 0), v2(1, 2));
    CHECK((box.resolvent(0.5, v2(3, -1)) - v2(1, 0)).norm() < 1e-12);
    CHECK((box.resolvent(7.0, v2(3, -1)) - v2(1, 0)).norm() < 1e-12);
    auto ball = MonotoneOp::ball_cone(v2(0, 0), 1.0);
    CHECK((ball.resolvent(1.0, v2(2, 0)) - v2(1, 0)).norm() < 1e-12);
    auto half = MonotoneOp::halfspace_cone(v2(1, 0), 0.0);
    CHECK((half.resolvent(1.0, v2(2, 5)) - v2(0, 5)).norm() < 1e-12);
    CHECK((half.resolvent(1.0, v2(-2, 5)) - v2(-2, 5)).norm() < 1e-12);
  }
  SECTION("translated operator shifts the graph") {
    auto op = MonotoneOp::translated(MonotoneOp::linear_psd(Mat::Identity(1, 1)), v1(2));
    // J_1(x) = 2 + (x-2)/2
    CHECK(op.resolvent(1.0, v1(6))(0) == Catch::Approx(4.0));
    CHECK((op.resolvent(1.0, v1(2)) - v1(2)).norm() < 1e-12);
  }
}

TEST_CASE("resolvents are firmly nonexpansive") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coord(-5, 5);
  auto rand2 = [&] { return v2(coord(rng), coord(rng)); };

  Mat Q(2, 2);
  Q << 2, 1, 1, 2;  // eigenvalues 1, 3
  std::vector<MonotoneOp> zoo = {
      MonotoneOp::zero(2),
      MonotoneOp::linear_psd(Q),
      MonotoneOp::quadratic(v2(1, -1), Q),
      MonotoneOp::box_cone(v2(-1, -1), v2(1, 1)),
      MonotoneOp::ball_cone(v2(0.5, 0), 2.0),
      MonotoneOp::halfspace_cone(v2(1, 1), 1.0),
      MonotoneOp::translated(MonotoneOp::ball_cone(v2(0, 0), 1.0), v2(2, 2)),
  };
  for (const auto& op : zoo) {
    for (int trial = 0; trial < 50; ++trial) {
      Vec x = rand2(), y = rand2();
      for (double g : {0.25, 1.0, 4.0}) {
        Vec jx = op.resolvent(g, x), jy = op.resolvent(g, y);
        // firm nonexpansiveness: ||Jx - Jy||^2 <= <x - y, Jx - Jy>
        CHECK((jx - jy).squaredNorm() <= (x - y).dot(jx - jy) + 1e-10);
      }
    }
  }
}

TEST_CASE("zero sets and fixed points agree") {
  Mat Q(2, 2);
  Q << 1, 0, 0, 0;  // kernel = second axis
  auto op = MonotoneOp::linear_psd(Q);
  auto zs = op.zero_set();
  auto* aff = std::get_if<resmeta::SetAffine>(&zs);
  REQUIRE(aff != nullptr);
  CHECK(aff->basis.cols() == 1);
  Vec z = resmeta::project_onto(zs, v2(3, 4));
  CHECK((z - v2(0, 4)).norm() < 1e-10);
  CHECK((op.resolvent(1.0, z) - z).norm() < 1e-10);

  auto ball = MonotoneOp::ball_cone(v2(0, 0), 1.0);
  CHECK(resmeta::set_contains(ball.zero_set(), v2(0.5, 0.5)));
  CHECK_FALSE(resmeta::set_contains(ball.zero_set(), v2(2, 0)));
}

TEST_CASE("psd validation rejects bad matrices") {
  Mat neg(1, 1);
  neg << -1;
  CHECK_THROWS_AS(MonotoneOp::linear_psd(neg), std::invalid_argument);
  Mat asym(2, 2);
  asym << 1, 2, 0, 1;
  CHECK_THROWS_AS(MonotoneOp::linear_psd(asym), std::invalid_argument);
}

TEST_CASE("set intersections used for reference projections") {
  using resmeta::intersect_sets;
  using resmeta::SetDesc;

  SECTION("box with box") {
    SetDesc a = resmeta::SetBox{v2(0, 0), v2(2, 2)};
    SetDesc b = resmeta::SetBox{v2(1, -1), v2(3, 1)};
    auto r = std::get<resmeta::SetBox>(intersect_sets(a, b));
    CHECK((r.lo - v2(1, 0)).norm() == 0.0);
    CHECK((r.hi - v2(2, 1)).norm() == 0.0);
  }
  SECTION("point inside / outside") {
    SetDesc p = resmeta::SetPoint{v2(0.5, 0.5)};
    SetDesc box = resmeta::SetBox{v2(0, 0), v2(1, 1)};
    CHECK(std::holds_alternative<resmeta::SetPoint>(intersect_sets(p, box)));
    SetDesc q = resmeta::SetPoint{v2(5, 5)};
    CHECK_THROWS(intersect_sets(q, box));
  }
  SECTION("ball inside box reduces to the ball") {
    SetDesc ball = resmeta::SetBall{v2(0, 0), 1.0};
    SetDesc box = resmeta::SetBox{v2(-2, -2), v2(2, 2)};
    CHECK(std::holds_alternative<resmeta::SetBall>(intersect_sets(ball, box)));
  }
  SECTION("axis-aligned halfspace clips a box") {
    SetDesc box = resmeta::SetBox{v2(0, 0), v2(2, 2)};
    SetDesc hs = resmeta::SetHalfspace{v2(1, 0), 1.0};  // x <= 1
    auto r = std::get<resmeta::SetBox>(intersect_sets(box, hs));
    CHECK(r.hi(0) == Catch::Approx(1.0));
    CHECK(r.hi(1) == Catch::Approx(2.0));
  }
  SECTION("parallel halfspaces keep the tighter constraint") {
    SetDesc a = resmeta::SetHalfspace{v2(1, 1), 2.0};
    SetDesc b = resmeta::SetHalfspace{v2(2, 2), 2.0};  // same direction, x+y <= 1
    auto r = std::get<resmeta::SetHalfspace>(intersect_sets(a, b));
    CHECK(r.offset / r.normal.norm() == Catch::Approx(2.0 / v2(2, 2).norm()));
    SetDesc same = resmeta::SetHalfspace{v2(1, 1), 2.0};
    auto s = std::get<resmeta::SetHalfspace>(intersect_sets(a, same));
    CHECK(s.offset == Catch::Approx(2.0));
    SetDesc opposite = resmeta::SetHalfspace{v2(-1, 0), 0.0};
    CHECK_THROWS(intersect_sets(a, opposite));  // no closed form here
  }
  SECTION("two affine lines meet in a point") {
    Mat bx(2, 1), by(2, 1);
    bx << 1, 0;  // horizontal line through (0, 1)
    by << 0, 1;  // vertical line through (2, 0)
    SetDesc a = resmeta::SetAffine{v2(0, 1), bx};
    SetDesc b = resmeta::SetAffine{v2(2, 0), by};
    auto r = std::get<resmeta::SetPoint>(intersect_sets(a, b));
    CHECK((r.p - v2(2, 1)).norm() < 1e-9);
  }
}
