// Maximal monotone operators on R^d with exact resolvents.
//
// Supported operator kinds: the zero operator, positive-semidefinite linear
// maps, subdifferentials of shifted quadratics x |-> (1/2)<Q(x-a), x-a>, and
// normal cones of boxes, Euclidean balls and halfspaces (whose resolvents are
// the metric projections). A translation wrapper relocates any operator's
// graph. Each kind also reports a zero-set descriptor so reference
// projections onto zer(A) ∩ zer(B) are available in closed form.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace resmeta {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// ---- zero-set descriptors --------------------------------------------------

struct SetAll {};
struct SetPoint {
  Vec p;
};
struct SetBox {
  Vec lo, hi;
};
struct SetBall {
  Vec center;
  double radius;
};
struct SetHalfspace {  // { x : <normal, x> <= offset }
  Vec normal;
  double offset;
};
struct SetAffine {  // { base + basis * s }, basis columns orthonormal
  Vec base;
  Mat basis;
};

using SetDesc =
    std::variant<SetAll, SetPoint, SetBox, SetBall, SetHalfspace, SetAffine>;

inline Vec project_onto(const SetDesc& set, const Vec& u) {
  return std::visit(
      [&u](const auto& s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SetAll>) {
          return u;
        } else if constexpr (std::is_same_v<T, SetPoint>) {
          return s.p;
        } else if constexpr (std::is_same_v<T, SetBox>) {
          return u.cwiseMax(s.lo).cwiseMin(s.hi);
        } else if constexpr (std::is_same_v<T, SetBall>) {
          Vec d = u - s.center;
          double n = d.norm();
          return n <= s.radius ? u : Vec(s.center + (s.radius / n) * d);
        } else if constexpr (std::is_same_v<T, SetHalfspace>) {
          double g = s.normal.dot(u) - s.offset;
          return g <= 0 ? u : Vec(u - (g / s.normal.squaredNorm()) * s.normal);
        } else {
          static_assert(std::is_same_v<T, SetAffine>);
          if (s.basis.cols() == 0) return s.base;
          return s.base + s.basis * (s.basis.transpose() * (u - s.base));
        }
      },
      set);
}

inline bool set_contains(const SetDesc& set, const Vec& x, double tol = 1e-9) {
  return (project_onto(set, x) - x).norm() <= tol;
}

namespace detail {

inline Mat orthonormal_kernel(const Mat& M, double tol = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Mat> es(M);
  std::vector<int> idx;
  for (int i = 0; i < M.rows(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= tol) idx.push_back(i);
  Mat K(M.rows(), (int)idx.size());
  for (size_t j = 0; j < idx.size(); ++j) K.col((int)j) = es.eigenvectors().col(idx[j]);
  return K;
}

inline SetDesc affine_or_point(const Vec& base, const Mat& basis) {
  if (basis.cols() == 0) return SetPoint{base};
  if (basis.cols() == basis.rows()) return SetAll{};
  return SetAffine{base, basis};
}

inline SetDesc shift_set(const SetDesc& set, const Vec& s) {
  return std::visit(
      [&s](const auto& d) -> SetDesc {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, SetAll>) {
          return d;
        } else if constexpr (std::is_same_v<T, SetPoint>) {
          return SetPoint{d.p + s};
        } else if constexpr (std::is_same_v<T, SetBox>) {
          return SetBox{d.lo + s, d.hi + s};
        } else if constexpr (std::is_same_v<T, SetBall>) {
          return SetBall{d.center + s, d.radius};
        } else if constexpr (std::is_same_v<T, SetHalfspace>) {
          return SetHalfspace{d.normal, d.offset + d.normal.dot(s)};
        } else {
          static_assert(std::is_same_v<T, SetAffine>);
          return SetAffine{d.base + s, d.basis};
        }
      },
      set);
}

}  // namespace detail

// ---- operator kinds --------------------------------------------------------

struct ZeroOp {};
struct LinearPsdOp {
  Mat M;
};
struct QuadraticOp {  // subdifferential of (1/2)<Q(x-center), x-center>
  Vec center;
  Mat Q;
};
struct BoxConeOp {  // normal cone of [lo, hi]
  Vec lo, hi;
};
struct BallConeOp {  // normal cone of a closed Euclidean ball
  Vec center;
  double radius;
};
struct HalfspaceConeOp {  // normal cone of { <normal, x> <= offset }
  Vec normal;
  double offset;
};

class MonotoneOp;

struct TranslatedOp {  // graph of inner shifted by `shift`: A(x) = inner(x - shift)
  std::shared_ptr<MonotoneOp> inner;
  Vec shift;
};

using OpKind = std::variant<ZeroOp, LinearPsdOp, QuadraticOp, BoxConeOp, BallConeOp,
                            HalfspaceConeOp, TranslatedOp>;

class MonotoneOp {
 public:
  MonotoneOp(int dim, OpKind kind, std::string label)
      : dim_(dim), kind_(std::move(kind)), label_(std::move(label)) {
    validate();
  }

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  const OpKind& kind() const { return kind_; }

  /// Resolvent J_gamma = (I + gamma A)^{-1}, single-valued and total.
  Vec resolvent(double gamma, const Vec& x) const {
    if (gamma <= 0) throw std::invalid_argument("resolvent: gamma must be positive");
    if (x.size() != dim_) throw std::invalid_argument("resolvent: dimension mismatch");
    return std::visit(
        [&](const auto& op) -> Vec {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, ZeroOp>) {
            return x;
          } else if constexpr (std::is_same_v<T, LinearPsdOp>) {
            return solver_for(gamma, op.M).solve(x);
          } else if constexpr (std::is_same_v<T, QuadraticOp>) {
            return solver_for(gamma, op.Q).solve(x + gamma * (op.Q * op.center));
          } else if constexpr (std::is_same_v<T, BoxConeOp>) {
            return project_onto(SetBox{op.lo, op.hi}, x);
          } else if constexpr (std::is_same_v<T, BallConeOp>) {
            return project_onto(SetBall{op.center, op.radius}, x);
          } else if constexpr (std::is_same_v<T, HalfspaceConeOp>) {
            return project_onto(SetHalfspace{op.normal, op.offset}, x);
          } else {
            static_assert(std::is_same_v<T, TranslatedOp>);
            return op.shift + op.inner->resolvent(gamma, x - op.shift);
          }
        },
        kind_);
  }

  /// 2 J_gamma - Id (nonexpansive iff J_gamma is firmly nonexpansive).
  Vec reflected_resolvent(double gamma, const Vec& x) const {
    return 2.0 * resolvent(gamma, x) - x;
  }

  /// Descriptor of zer(A) = { x : 0 in A(x) }.
  SetDesc zero_set() const {
    return std::visit(
        [&](const auto& op) -> SetDesc {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, ZeroOp>) {
            return SetAll{};
          } else if constexpr (std::is_same_v<T, LinearPsdOp>) {
            return detail::affine_or_point(Vec::Zero(dim_),
                                           detail::orthonormal_kernel(op.M));
          } else if constexpr (std::is_same_v<T, QuadraticOp>) {
            return detail::affine_or_point(op.center,
                                           detail::orthonormal_kernel(op.Q));
          } else if constexpr (std::is_same_v<T, BoxConeOp>) {
            return SetBox{op.lo, op.hi};
          } else if constexpr (std::is_same_v<T, BallConeOp>) {
            return SetBall{op.center, op.radius};
          } else if constexpr (std::is_same_v<T, HalfspaceConeOp>) {
            return SetHalfspace{op.normal, op.offset};
          } else {
            static_assert(std::is_same_v<T, TranslatedOp>);
            return detail::shift_set(op.inner->zero_set(), op.shift);
          }
        },
        kind_);
  }

  // -- factories --
  static MonotoneOp zero(int dim) { return MonotoneOp(dim, ZeroOp{}, "zero"); }
  static MonotoneOp linear_psd(Mat M) {
    int d = (int)M.rows();
    return MonotoneOp(d, LinearPsdOp{std::move(M)}, "linear_psd");
  }
  static MonotoneOp quadratic(Vec center, Mat Q) {
    int d = (int)center.size();
    return MonotoneOp(d, QuadraticOp{std::move(center), std::move(Q)}, "quadratic");
  }
  static MonotoneOp box_cone(Vec lo, Vec hi) {
    int d = (int)lo.size();
    return MonotoneOp(d, BoxConeOp{std::move(lo), std::move(hi)}, "box_cone");
  }
  static MonotoneOp ball_cone(Vec center, double radius) {
    int d = (int)center.size();
    return MonotoneOp(d, BallConeOp{std::move(center), radius}, "ball_cone");
  }
  static MonotoneOp halfspace_cone(Vec normal, double offset) {
    int d = (int)normal.size();
    return MonotoneOp(d, HalfspaceConeOp{std::move(normal), offset}, "halfspace_cone");
  }
  static MonotoneOp translated(MonotoneOp inner, Vec shift) {
    int d = inner.dim();
    return MonotoneOp(
        d, TranslatedOp{std::make_shared<MonotoneOp>(std::move(inner)), std::move(shift)},
        "translated");
  }

 private:
  void validate() const {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, LinearPsdOp>) {
            check_psd(op.M, "linear_psd");
          } else if constexpr (std::is_same_v<T, QuadraticOp>) {
            if (op.Q.rows() != dim_ || op.center.size() != dim_)
              throw std::invalid_argument("quadratic: dimension mismatch");
            check_psd(op.Q, "quadratic");
          } else if constexpr (std::is_same_v<T, BoxConeOp>) {
            if (op.lo.size() != op.hi.size() || (op.lo.array() > op.hi.array()).any())
              throw std::invalid_argument("box_cone: empty box");
          } else if constexpr (std::is_same_v<T, BallConeOp>) {
            if (op.radius <= 0) throw std::invalid_argument("ball_cone: radius <= 0");
          } else if constexpr (std::is_same_v<T, HalfspaceConeOp>) {
            if (op.normal.norm() == 0)
              throw std::invalid_argument("halfspace_cone: zero normal");
          }
        },
        kind_);
  }

  static void check_psd(const Mat& M, const char* what) {
    if (M.rows() != M.cols() || !M.isApprox(M.transpose(), 1e-12))
      throw std::invalid_argument(std::string(what) + ": matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<Mat> es(M);
    if (es.eigenvalues().minCoeff() < -1e-12)
      throw std::invalid_argument(std::string(what) +
                                  ": matrix not positive semidefinite");
  }

  struct SolverCache {
    std::mutex mutex;
    std::map<double, Eigen::LDLT<Mat>> by_gamma;
  };

  // LDLT of (I + gamma M), cached per gamma; cache shared across copies.
  Eigen::LDLT<Mat> solver_for(double gamma, const Mat& M) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->by_gamma.find(gamma);
    if (it == cache_->by_gamma.end()) {
      Mat S = Mat::Identity(dim_, dim_) + gamma * M;
      it = cache_->by_gamma.emplace(gamma, S.ldlt()).first;
    }
    return it->second;
  }

  int dim_;
  OpKind kind_;
  std::string label_;
  std::shared_ptr<SolverCache> cache_ = std::make_shared<SolverCache>();
};

// ---- intersections for reference projections -------------------------------

/// Closed-form descriptor of the intersection of two zero sets, for the
/// scenario families supported here. Throws if the combination has no
/// closed form or the intersection is detectably empty.
inline SetDesc intersect_sets(const SetDesc& a, const SetDesc& b) {
  if (std::holds_alternative<SetAll>(a)) return b;
  if (std::holds_alternative<SetAll>(b)) return a;
  auto check_point = [](const Vec& p, const SetDesc& s) -> SetDesc {
    if (!set_contains(s, p))
      throw std::runtime_error("intersect_sets: empty intersection");
    return SetPoint{p};
  };
  if (auto* pa = std::get_if<SetPoint>(&a)) return check_point(pa->p, b);
  if (auto* pb = std::get_if<SetPoint>(&b)) return check_point(pb->p, a);

  if (auto* ba = std::get_if<SetBox>(&a)) {
    if (auto* bb = std::get_if<SetBox>(&b)) {
      Vec lo = ba->lo.cwiseMax(bb->lo), hi = ba->hi.cwiseMin(bb->hi);
      if ((lo.array() > hi.array()).any())
        throw std::runtime_error("intersect_sets: empty box intersection");
      return SetBox{lo, hi};
    }
  }
  // Containment reductions: if one set lies inside the other, keep the inner.
  auto try_contained = [](const SetDesc& inner, const SetDesc& outer) -> bool {
    if (auto* bi = std::get_if<SetBall>(&inner)) {
      if (auto* bo = std::get_if<SetBall>(&outer))
        return (bi->center - bo->center).norm() + bi->radius <= bo->radius + 1e-12;
      if (auto* bx = std::get_if<SetBox>(&outer)) {
        for (int i = 0; i < bi->center.size(); ++i)
          if (bi->center(i) - bi->radius < bx->lo(i) - 1e-12 ||
              bi->center(i) + bi->radius > bx->hi(i) + 1e-12)
            return false;
        return true;
      }
      if (auto* hs = std::get_if<SetHalfspace>(&outer))
        return hs->normal.dot(bi->center) + bi->radius * hs->normal.norm() <=
               hs->offset + 1e-12;
    }
    if (auto* bx = std::get_if<SetBox>(&inner)) {
      if (std::holds_alternative<SetBall>(outer) ||
          std::holds_alternative<SetHalfspace>(outer)) {
        // check all corners of the box (dim here is tiny)
        int d = (int)bx->lo.size();
        if (d > 20) return false;
        for (long mask = 0; mask < (1L << d); ++mask) {
          Vec c(d);
          for (int i = 0; i < d; ++i) c(i) = (mask >> i) & 1 ? bx->hi(i) : bx->lo(i);
          if (!set_contains(outer, c, 1e-9)) return false;
        }
        return true;
      }
    }
    return false;
  };
  if (try_contained(a, b)) return a;
  if (try_contained(b, a)) return b;

  // Two halfspaces with positively parallel normals: keep the tighter one.
  if (auto* ha = std::get_if<SetHalfspace>(&a))
    if (auto* hb = std::get_if<SetHalfspace>(&b)) {
      double na = ha->normal.norm(), nb = hb->normal.norm();
      Vec ua = ha->normal / na, ub = hb->normal / nb;
      if ((ua - ub).norm() <= 1e-12) {
        double oa = ha->offset / na, ob = hb->offset / nb;
        return oa <= ob ? a : b;
      }
    }

  // Axis-aligned halfspace clips a box to a box.
  auto clip_box = [](const SetBox& bx, const SetHalfspace& hs) -> SetDesc {
    int axis = -1;
    for (int i = 0; i < hs.normal.size(); ++i)
      if (hs.normal(i) != 0) {
        if (axis >= 0) return SetAll{};  // sentinel: not axis-aligned
        axis = i;
      }
    if (axis < 0) return SetAll{};
    Vec lo = bx.lo, hi = bx.hi;
    double bound = hs.offset / hs.normal(axis);
    if (hs.normal(axis) > 0)
      hi(axis) = std::min(hi(axis), bound);
    else
      lo(axis) = std::max(lo(axis), bound);
    if (lo(axis) > hi(axis))
      throw std::runtime_error("intersect_sets: empty box/halfspace intersection");
    return SetBox{lo, hi};
  };
  if (auto* bx = std::get_if<SetBox>(&a))
    if (auto* hs = std::get_if<SetHalfspace>(&b)) {
      SetDesc r = clip_box(*bx, *hs);
      if (!std::holds_alternative<SetAll>(r)) return r;
    }
  if (auto* bx = std::get_if<SetBox>(&b))
    if (auto* hs = std::get_if<SetHalfspace>(&a)) {
      SetDesc r = clip_box(*bx, *hs);
      if (!std::holds_alternative<SetAll>(r)) return r;
    }

  if (auto* aa = std::get_if<SetAffine>(&a))
    if (auto* ab = std::get_if<SetAffine>(&b)) {
      // Common point via least squares on B1 s - B2 t = base2 - base1.
      int d = (int)aa->base.size();
      Mat Bstack(d, aa->basis.cols() + ab->basis.cols());
      Bstack << aa->basis, -ab->basis;
      Vec rhs = ab->base - aa->base;
      Vec st = Bstack.colPivHouseholderQr().solve(rhs);
      Vec common = aa->base + aa->basis * st.head(aa->basis.cols());
      if ((Bstack * st - rhs).norm() > 1e-8)
        throw std::runtime_error("intersect_sets: affine sets do not meet");
      // Direction space: kernel of (I - P1) + (I - P2).
      Mat P1 = aa->basis * aa->basis.transpose();
      Mat P2 = ab->basis * ab->basis.transpose();
      Mat K = detail::orthonormal_kernel(2.0 * Mat::Identity(d, d) - P1 - P2);
      return detail::affine_or_point(common, K);
    }
  throw std::runtime_error("intersect_sets: no closed form for this combination");
}

}  // namespace resmeta
