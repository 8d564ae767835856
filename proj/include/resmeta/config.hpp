// Line-oriented scenario configuration and run artifacts.
//
// Grammar (one directive per line, '#' starts a comment, blank lines are
// skipped; all numbers are decimal literals):
//
//   scenario NAME                     use a builtin scenario
//   iteration mar_star|mar|halpern_star|halpern
//   dim D                             must precede vectors and operators
//   opA KIND ARGS... / opB KIND ARGS...
//     zero | linear M(d*d, row-major) | quadratic CENTER(d) Q(d*d)
//     box LO(d) HI(d) | ball CENTER(d) RADIUS | halfspace NORMAL(d) OFFSET
//   u X... / x0 X... / q X...         vectors of length dim
//   alpha|lambda|beta|mu FAMILY P     harmonic P | constant C | power Q
//   errors zero
//   errors geometric RATIO1 DIR1(d) RATIO2 DIR2(d)
//   steps N / kmax K / cap N / seed N / out DIR
//   fgrid NAME...                     identity | affine:a:b | doubling
//
// Unknown keys and malformed values fail with the offending line number.

#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "resmeta/scenarios.hpp"

namespace resmeta {
namespace config {

struct ConfigError : std::runtime_error {
  explicit ConfigError(long line, const std::string& msg)
      : std::runtime_error("config line " + std::to_string(line) + ": " + msg) {}
};

struct Config {
  std::optional<std::string> builtin;
  std::string iteration = "mar_star";
  int dim = 0;
  std::optional<MonotoneOp> opA, opB;
  std::optional<Vec> u, x0, q;
  SeqSpec alpha = SeqSpec::harmonic(1), lambda = SeqSpec::harmonic(1);
  SeqSpec beta = SeqSpec::constant(1.0), mu = SeqSpec::constant(1.0);
  bool geometric_errors = false;
  double ratio1 = 0.5, ratio2 = 0.5;
  Vec dir1, dir2;
  long steps = 10000;
  unsigned long kmax = 4;
  unsigned long cap = 100000;
  unsigned long seed = 42;
  std::vector<std::string> fgrid = {"identity", "affine:1:10", "doubling"};
  std::string out_dir = ".";
};

namespace detail {

inline bool decimal_token(const std::string& t) {
  if (t.empty()) return false;
  size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
  bool digits = false, dot = false, exp = false;
  for (; i < t.size(); ++i) {
    char c = t[i];
    if (c >= '0' && c <= '9') {
      digits = true;
    } else if (c == '.' && !dot && !exp) {
      dot = true;
    } else if ((c == 'e' || c == 'E') && digits && !exp) {
      exp = true;
      if (i + 1 < t.size() && (t[i + 1] == '+' || t[i + 1] == '-')) ++i;
    } else {
      return false;
    }
  }
  return digits;
}

struct TokenStream {
  std::vector<std::string> toks;
  size_t pos = 1;  // 0 is the key
  long line;

  std::string next(const char* what) {
    if (pos >= toks.size()) throw ConfigError(line, std::string("missing ") + what);
    return toks[pos++];
  }
  double num(const char* what) {
    std::string t = next(what);
    if (!decimal_token(t))
      throw ConfigError(line, std::string("expected decimal literal for ") + what +
                                  ", got '" + t + "'");
    return std::stod(t);
  }
  long integer(const char* what) {
    double v = num(what);
    long r = (long)v;
    if ((double)r != v) throw ConfigError(line, std::string(what) + " must be an integer");
    return r;
  }
  Vec vec(int d, const char* what) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = num(what);
    return v;
  }
  Mat mat(int d, const char* what) {
    Mat m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = num(what);
    return m;
  }
  void done() {
    if (pos != toks.size())
      throw ConfigError(line, "trailing tokens after '" + toks[pos] + "'");
  }
};

inline MonotoneOp parse_op(TokenStream& ts, int dim) {
  if (dim <= 0) throw ConfigError(ts.line, "dim must be set before operators");
  std::string kind = ts.next("operator kind");
  if (kind == "zero") return MonotoneOp::zero(dim);
  if (kind == "linear") return MonotoneOp::linear_psd(ts.mat(dim, "matrix entry"));
  if (kind == "quadratic") {
    Vec c = ts.vec(dim, "center");
    return MonotoneOp::quadratic(c, ts.mat(dim, "matrix entry"));
  }
  if (kind == "box") {
    Vec lo = ts.vec(dim, "lo");
    return MonotoneOp::box_cone(lo, ts.vec(dim, "hi"));
  }
  if (kind == "ball") {
    Vec c = ts.vec(dim, "center");
    return MonotoneOp::ball_cone(c, ts.num("radius"));
  }
  if (kind == "halfspace") {
    Vec n = ts.vec(dim, "normal");
    return MonotoneOp::halfspace_cone(n, ts.num("offset"));
  }
  throw ConfigError(ts.line, "unknown operator kind: " + kind);
}

inline SeqSpec parse_seq(TokenStream& ts) {
  std::string fam = ts.next("sequence family");
  double p = ts.num("family parameter");
  if (fam == "harmonic") return SeqSpec::harmonic(p);
  if (fam == "constant") return SeqSpec::constant(p);
  if (fam == "power") return SeqSpec::power(p);
  throw ConfigError(ts.line, "unknown sequence family: " + fam);
}

}  // namespace detail

inline Config parse_config(std::istream& in) {
  Config c;
  std::string raw;
  long lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    detail::TokenStream ts;
    ts.line = lineno;
    std::string tok;
    while (ls >> tok) ts.toks.push_back(tok);
    if (ts.toks.empty()) continue;
    const std::string& key = ts.toks[0];

    if (key == "scenario") {
      c.builtin = ts.next("scenario name");
    } else if (key == "iteration") {
      c.iteration = ts.next("iteration tag");
    } else if (key == "dim") {
      c.dim = (int)ts.integer("dim");
    } else if (key == "opA") {
      c.opA = detail::parse_op(ts, c.dim);
    } else if (key == "opB") {
      c.opB = detail::parse_op(ts, c.dim);
    } else if (key == "u" || key == "x0" || key == "q") {
      if (c.dim <= 0) throw ConfigError(lineno, "dim must be set before vectors");
      Vec v = ts.vec(c.dim, key.c_str());
      (key == "u" ? c.u : key == "x0" ? c.x0 : c.q) = v;
    } else if (key == "alpha") {
      c.alpha = detail::parse_seq(ts);
    } else if (key == "lambda") {
      c.lambda = detail::parse_seq(ts);
    } else if (key == "beta") {
      c.beta = detail::parse_seq(ts);
    } else if (key == "mu") {
      c.mu = detail::parse_seq(ts);
    } else if (key == "errors") {
      std::string kind = ts.next("error kind");
      if (kind == "zero") {
        c.geometric_errors = false;
      } else if (kind == "geometric") {
        if (c.dim <= 0) throw ConfigError(lineno, "dim must be set before errors");
        c.geometric_errors = true;
        c.ratio1 = ts.num("ratio1");
        c.dir1 = ts.vec(c.dim, "dir1");
        c.ratio2 = ts.num("ratio2");
        c.dir2 = ts.vec(c.dim, "dir2");
      } else {
        throw ConfigError(lineno, "unknown error kind: " + kind);
      }
    } else if (key == "steps") {
      c.steps = ts.integer("steps");
    } else if (key == "kmax") {
      c.kmax = (unsigned long)ts.integer("kmax");
    } else if (key == "cap") {
      c.cap = (unsigned long)ts.integer("cap");
    } else if (key == "seed") {
      c.seed = (unsigned long)ts.integer("seed");
    } else if (key == "out") {
      c.out_dir = ts.next("output directory");
    } else if (key == "fgrid") {
      c.fgrid.clear();
      while (ts.pos < ts.toks.size()) {
        std::string f = ts.next("family");
        scenarios::parse_family(f);  // validate eagerly
        c.fgrid.push_back(f);
      }
      if (c.fgrid.empty()) throw ConfigError(lineno, "fgrid needs at least one family");
    } else {
      throw ConfigError(lineno, "unknown key: " + key);
    }
    ts.done();
  }
  return c;
}

inline IterTag parse_iter_tag(const std::string& s) {
  if (s == "mar_star") return IterTag::MarStar;
  if (s == "mar") return IterTag::Mar;
  if (s == "halpern_star") return IterTag::HalpernStar;
  if (s == "halpern") return IterTag::Halpern;
  throw std::invalid_argument("unknown iteration tag: " + s);
}

/// Materialise the scenario: a builtin by name, or a custom one from the
/// operator/vector/schedule directives.
inline std::shared_ptr<Scenario> build_scenario(const Config& c) {
  if (c.builtin) {
    auto s = scenarios::find_scenario(*c.builtin);
    if (c.geometric_errors) {
      auto copy = std::make_shared<Scenario>(*s);
      copy->errors = ErrorSchedule::geometric(c.dir1, c.ratio1, c.dir2, c.ratio2);
      return copy;
    }
    return s;
  }
  if (!c.opA || !c.opB || !c.u || !c.x0 || !c.q)
    throw std::invalid_argument(
        "custom scenario needs opA, opB, u, x0 and q (or use 'scenario NAME')");
  ScheduleBundle b = make_bundle(c.alpha, c.lambda, c.beta, c.mu);
  ErrorSchedule e = c.geometric_errors
                        ? ErrorSchedule::geometric(c.dir1, c.ratio1, c.dir2, c.ratio2)
                        : ErrorSchedule::zero(c.dim);
  return std::make_shared<Scenario>(make_scenario(
      "custom", *c.opA, *c.opB, *c.u, *c.x0, *c.q, std::move(b), std::move(e)));
}

// ---- artifacts ---------------------------------------------------------------

/// Trajectory CSV: header row, '.' decimal separator, '\n' line endings.
/// Columns: n, coord_*, resA, resB, dist_to_ref, and gap (to the error-free
/// orbit) when the scenario carries errors.
inline void write_trajectory_csv(std::ostream& os, Trajectory& traj, long steps,
                                 const Vec& ref) {
  const Scenario& s = traj.scenario();
  bool with_gap = !s.errors.zero_errors;
  std::shared_ptr<Trajectory> clean;
  if (with_gap)
    clean = std::make_shared<Trajectory>(
        std::make_shared<Scenario>(s),
        traj.tag() == IterTag::Mar ? IterTag::MarStar : IterTag::HalpernStar);

  os << "n";
  for (int i = 0; i < s.dim(); ++i) os << ",coord_" << i;
  os << ",resA,resB,dist_to_ref";
  if (with_gap) os << ",gap";
  os << "\n";
  os.precision(17);
  for (long n = 0; n <= steps; ++n) {
    const Vec& p = traj.at(n);
    auto [ra, rb] = traj.residuals(s.bundle.R, n);
    os << n;
    for (int i = 0; i < s.dim(); ++i) os << "," << p(i);
    os << "," << ra << "," << rb << "," << (p - ref).norm();
    if (with_gap) os << "," << (p - clean->at(n)).norm();
    os << "\n";
  }
}

}  // namespace config
}  // namespace resmeta
