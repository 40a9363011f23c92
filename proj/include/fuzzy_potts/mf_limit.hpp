#ifndef FUZZY_POTTS_MF_LIMIT_HPP
#define FUZZY_POTTS_MF_LIMIT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzy_potts/mf_exact.hpp"
#include "fuzzy_potts/model.hpp"

namespace fuzzy_potts {

// Inverse critical temperature of the r-state complete-graph model,
// 2 (r-1) log(r-1) / (r-2); the removable singularity at r = 2 has limit 2.
// Defined for real r >= 2 so the auxiliary inequality checks can scan it.
inline double beta_c(double r) {
  if (!(r >= 2.0 - 1e-12))
    throw std::invalid_argument("beta_c: r=" + std::to_string(r) +
                                " violates r >= 2");
  if (std::fabs(r - 2.0) < 1e-9) return 2.0;
  return 2.0 * (r - 1.0) * std::log(r - 1.0) / (r - 2.0);
}

inline double beta_c_prime(double q) {
  return 2.0 * ((q - 2.0) - std::log(q - 1.0)) / ((q - 2.0) * (q - 2.0));
}

// Second derivative in the closed form whose numerator is negative exactly
// when beta_c(q) < q.
inline double beta_c_second(double q) {
  const double num = -2.0 * q * (q - 2.0) + 4.0 * (q - 1.0) * std::log(q - 1.0);
  const double den = (q - 2.0) * (q - 2.0) * (q - 2.0) * (q - 1.0);
  return num / den;
}

namespace detail {
inline double mean_field_rhs(double u, double beta, double r) {
  const double e = std::exp(-beta * u);
  return (1.0 - e) / (1.0 + (r - 1.0) * e);
}
inline double mean_field_rhs_prime(double u, double beta, double r) {
  const double e = std::exp(-beta * u);
  const double d = 1.0 + (r - 1.0) * e;
  return r * beta * e / (d * d);
}
}  // namespace detail

// Largest solution u in (0, 1] of u = (1 - e^{-beta u}) / (1 + (r-1) e^{-beta u}),
// defined for beta >= beta_c(r). Located by a downward scan from u = 1 for the
// first sign change, then bisection and a Newton polish; returns 0 only in the
// r = 2, beta = 2 limit where the positive branch degenerates.
inline double solve_u(double beta, int r, double tol = 1e-10) {
  if (r < 2) throw std::invalid_argument("solve_u: r must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("solve_u: tol must be > 0");
  const double bc = beta_c(r);
  if (beta < bc * (1.0 - 1e-12))
    throw std::domain_error("solve_u: beta=" + std::to_string(beta) +
                            " below beta_c(" + std::to_string(r) + ")=" +
                            std::to_string(bc));
  // r = 2 at its critical point is the second-order case: the positive branch
  // degenerates and the largest solution is 0.
  if (r == 2 && beta <= bc * (1.0 + 1e-12)) return 0.0;
  const auto h = [&](double u) {
    return u - detail::mean_field_rhs(u, beta, r);
  };
  double hi = 1.0, lo = -1.0;
  for (double step : {1e-3, 1e-6}) {
    const double top = (step == 1e-3) ? 1.0 : 2e-3;
    double prev = top;
    for (double u = top - step; u > 0.5 * step; u -= step) {
      if (h(u) <= 0.0) {
        lo = u;
        hi = prev;
        break;
      }
      prev = u;
    }
    if (lo > 0.0) break;
  }
  if (lo < 0.0) {
    // Only the degenerate second-order endpoint has no positive branch.
    if (r == 2 && beta <= bc * (1.0 + 1e-12)) return 0.0;
    throw std::runtime_error("solve_u: no bracket found for beta=" +
                             std::to_string(beta) + ", r=" + std::to_string(r));
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) <= 0.0 ? lo : hi) = mid;
  }
  double u = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double deriv = 1.0 - detail::mean_field_rhs_prime(u, beta, r);
    if (deriv == 0.0) break;
    const double step = h(u) / deriv;
    const double next = u - step;
    if (next < lo || next > hi) break;
    u = next;
  }
  if (std::fabs(h(u)) > tol)
    throw std::runtime_error("solve_u: residual above tolerance");
  return u;
}

// One- or two-sided value of
//   C(t, r) = e^{t/r} * r                                    for t < beta_c(r)
//   C(t, r) = e^{t/r} * (e^{t(r-1)u/r} + (r-1) e^{-t u/r})   for t > beta_c(r)
// with u = u(t, r). Away from beta_c(r) both sides coincide; exactly at it the
// two one-sided limits are returned (they differ iff r >= 3).
struct TwoSided {
  double left = 0.0;
  double right = 0.0;

  bool jump() const { return left != right; }
};

inline TwoSided big_c(double beta_tilde, int r) {
  if (r < 1) throw std::invalid_argument("big_c: r must be >= 1");
  if (r == 1) {
    const double v = std::exp(beta_tilde);
    return {v, v};
  }
  const auto low = [&](double t) { return std::exp(t / r) * r; };
  const auto high = [&](double t) {
    const double u = solve_u(t, r);
    return std::exp(t / r) *
           (std::exp(t * (r - 1.0) * u / r) + (r - 1.0) * std::exp(-t * u / r));
  };
  const double bc = beta_c(r);
  const double eps = 1e-12 * std::max(1.0, bc);
  if (beta_tilde < bc - eps) {
    const double v = low(beta_tilde);
    return {v, v};
  }
  if (beta_tilde > bc + eps) {
    const double v = high(beta_tilde);
    return {v, v};
  }
  return {low(bc), high(bc)};
}

// Single value of C, throwing when called exactly at a jump of class r >= 3.
inline double big_c_value(double beta_tilde, int r) {
  const TwoSided c = big_c(beta_tilde, r);
  if (c.jump())
    throw std::domain_error(
        "big_c: two-sided at the critical point of r=" + std::to_string(r) +
        "; use the two-sided evaluation");
  return c.left;
}

namespace detail {
inline void check_probability_vector(const std::vector<double>& n, int s) {
  if (static_cast<int>(n.size()) != s)
    throw std::invalid_argument("kernel: frequency vector has wrong length");
  double sum = 0.0;
  for (double v : n) {
    if (v < -1e-12) throw std::invalid_argument("kernel: negative frequency");
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("kernel: frequencies sum to " +
                                std::to_string(sum) + ", expected 1");
}
}  // namespace detail

// Limiting kernel Q(k | n) = C(beta n_k, r_k) / sum_l C(beta n_l, r_l).
// Throws when some n_k with r_k >= 3 sits exactly on its jump location.
inline KernelValue limiting_fuzzy_kernel(const ModelParams& params,
                                         const std::vector<double>& n) {
  const int s = params.s();
  detail::check_probability_vector(n, s);
  KernelValue out;
  out.probs.resize(static_cast<std::size_t>(s));
  double z = 0.0;
  for (int k = 0; k < s; ++k) {
    const double c = big_c_value(params.beta * n[static_cast<std::size_t>(k)],
                                 params.partition[static_cast<std::size_t>(k)]);
    out.probs[static_cast<std::size_t>(k)] = c;
    z += c;
  }
  for (double& p : out.probs) p /= z;
  return out;
}

// Same kernel with the named class evaluated on one side of its jump.
inline KernelValue limiting_kernel_one_sided(const ModelParams& params,
                                             const std::vector<double>& n,
                                             int jump_class, bool right_side) {
  const int s = params.s();
  detail::check_probability_vector(n, s);
  if (jump_class < 1 || jump_class > s)
    throw std::invalid_argument("kernel: jump class out of range");
  KernelValue out;
  out.probs.resize(static_cast<std::size_t>(s));
  double z = 0.0;
  for (int k = 0; k < s; ++k) {
    const TwoSided c = big_c(params.beta * n[static_cast<std::size_t>(k)],
                             params.partition[static_cast<std::size_t>(k)]);
    const double v = (k == jump_class - 1) ? (right_side ? c.right : c.left)
                                           : c.left;
    out.probs[static_cast<std::size_t>(k)] = v;
    z += v;
  }
  for (double& p : out.probs) p /= z;
  return out;
}

// Discontinuity of Q(.|n) in coordinate k: a class of size r_k >= 3 jumps at
// n_k = beta_c(r_k)/beta once beta >= beta_c(r_k) (location 1 included at
// equality).
struct JumpPoint {
  int class_index = 0;  // 1-based
  double location = 0.0;
  double left_c = 0.0;
  double right_c = 0.0;
};

inline std::vector<JumpPoint> discontinuity_set(const ModelParams& params) {
  std::vector<JumpPoint> jumps;
  for (int k = 0; k < params.s(); ++k) {
    const int r = params.partition[static_cast<std::size_t>(k)];
    if (r < 3) continue;
    const double bc = beta_c(r);
    if (params.beta < bc * (1.0 - 1e-12)) continue;
    const TwoSided c = big_c(bc, r);
    jumps.push_back(JumpPoint{k + 1, bc / params.beta, c.left, c.right});
  }
  return jumps;
}

// Weak limit of the empirical spin distribution. Off the critical point the
// atom weights are plain numbers; at beta = beta_c(q) the disordered atom
// carries the opaque weight lambda0 in (0,1) and each ordered atom carries
// (1 - lambda0)/q, so weights are stored as coeff * {1, lambda0, 1-lambda0}.
enum class AtomWeight { kNumeric, kLambda0, kOneMinusLambda0 };

struct LimitAtom {
  AtomWeight kind = AtomWeight::kNumeric;
  double coeff = 1.0;
  std::vector<double> location;
};

struct LimitAtoms {
  bool critical = false;
  std::vector<LimitAtom> atoms;
};

inline LimitAtoms ellis_wang_atoms(int q, double beta) {
  if (q < 2) throw std::invalid_argument("ellis_wang_atoms: q must be >= 2");
  const double bc = beta_c(q);
  const double eps = 1e-12 * std::max(1.0, bc);
  LimitAtoms out;
  const std::vector<double> uniform(static_cast<std::size_t>(q), 1.0 / q);
  if (beta < bc - eps) {
    out.atoms.push_back({AtomWeight::kNumeric, 1.0, uniform});
    return out;
  }
  const bool critical = beta <= bc + eps;
  const double u = critical ? (q - 2.0) / (q - 1.0) : solve_u(beta, q);
  out.critical = critical;
  if (critical)
    out.atoms.push_back({AtomWeight::kLambda0, 1.0, uniform});
  for (int nu = 0; nu < q; ++nu) {
    std::vector<double> loc(static_cast<std::size_t>(q), (1.0 - u) / q);
    loc[static_cast<std::size_t>(nu)] += u;
    out.atoms.push_back({critical ? AtomWeight::kOneMinusLambda0
                                  : AtomWeight::kNumeric,
                         1.0 / q, std::move(loc)});
  }
  return out;
}

// Typical values of the class frequency containing / not containing the
// dominant spin value, for beta >= beta_c(q).
inline double n_plus(double beta, int q, int r) {
  const double u = solve_u(beta, q);
  return u + (1.0 - u) * r / q;
}
inline double n_minus(double beta, int q, int r) {
  const double u = solve_u(beta, q);
  return (1.0 - u) * r / q;
}

// Image of the spin atoms under the class projection.
inline LimitAtoms fuzzy_atoms(const ModelParams& params) {
  const int q = params.q, s = params.s();
  const double bc = beta_c(q);
  const double eps = 1e-12 * std::max(1.0, bc);
  LimitAtoms out;
  std::vector<double> disordered(static_cast<std::size_t>(s));
  for (int l = 0; l < s; ++l)
    disordered[static_cast<std::size_t>(l)] =
        static_cast<double>(params.partition[static_cast<std::size_t>(l)]) / q;
  if (params.beta < bc - eps) {
    out.atoms.push_back({AtomWeight::kNumeric, 1.0, disordered});
    return out;
  }
  const bool critical = params.beta <= bc + eps;
  const double u =
      critical ? (q - 2.0) / (q - 1.0) : solve_u(params.beta, q);
  out.critical = critical;
  if (critical)
    out.atoms.push_back({AtomWeight::kLambda0, 1.0, disordered});
  for (int l = 0; l < s; ++l) {
    std::vector<double> loc(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j)
      loc[static_cast<std::size_t>(j)] =
          (1.0 - u) * params.partition[static_cast<std::size_t>(j)] / q;
    loc[static_cast<std::size_t>(l)] += u;
    out.atoms.push_back(
        {critical ? AtomWeight::kOneMinusLambda0 : AtomWeight::kNumeric,
         static_cast<double>(params.partition[static_cast<std::size_t>(l)]) / q,
         std::move(loc)});
  }
  return out;
}

// Do the typical class frequencies avoid the jump location beta_c(r)/beta?
// Case 1 (beta <= beta_c(q)):   r/q < beta_c(r)/beta.
// Case 2 (beta >  beta_c(q)):   n^-(beta,q,r) < beta_c(r)/beta < n^+(beta,q,r).
struct TypicalityResult {
  int case_id = 0;
  double lower = 0.0;  // r/q in case 1, n^- in case 2
  double jump = 0.0;   // beta_c(r)/beta
  double upper = std::numeric_limits<double>::quiet_NaN();  // n^+ in case 2
  bool holds = false;
};

inline TypicalityResult typicality_check(int q, int r, double beta) {
  if (!(q > r && r >= 2))
    throw std::invalid_argument("typicality_check: requires q > r >= 2");
  if (!(beta > 0.0))
    throw std::invalid_argument("typicality_check: requires beta > 0");
  TypicalityResult res;
  res.jump = beta_c(r) / beta;
  if (beta <= beta_c(q)) {
    res.case_id = 1;
    res.lower = static_cast<double>(r) / q;
    res.holds = res.lower < res.jump;
  } else {
    res.case_id = 2;
    res.lower = n_minus(beta, q, r);
    res.upper = n_plus(beta, q, r);
    res.holds = res.lower < res.jump && res.jump < res.upper;
  }
  return res;
}

// Grid verification of the elementary facts behind the typicality proof:
// beta_c(q) < q, concavity of beta_c, the tangent-line bound, and the
// adjacent-ratio bound beta_c(q)/beta_c(q-1) < q.
struct InequalityReport {
  struct Item {
    std::string name;
    std::int64_t points = 0;
    double margin = 0.0;  // distance into the valid region; > 0 passes
    bool pass = false;
  };
  std::vector<Item> items;
  bool all_pass = false;
};

inline InequalityReport auxiliary_inequalities(double q_max = 100.0,
                                               double step = 0.01) {
  InequalityReport rep;
  const auto add = [&](std::string name, std::int64_t pts, double margin,
                       double slack = 0.0) {
    rep.items.push_back({std::move(name), pts, margin, margin > -slack});
  };
  const std::int64_t steps =
      static_cast<std::int64_t>(std::llround((q_max - 2.0) / step));

  double m1 = std::numeric_limits<double>::infinity();
  double m2 = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 1; i <= steps; ++i) {
    const double q = 2.0 + step * static_cast<double>(i);
    m1 = std::min(m1, q - beta_c(q));
    m2 = std::min(m2, -beta_c_second(q));
  }
  add("beta_c(q) < q", steps, m1);
  add("beta_c''(q) < 0", steps, m2);

  double m3 = std::numeric_limits<double>::infinity();
  std::int64_t pts3 = 0;
  for (double q : {2.5, 3.0, 4.0, 6.0, 10.0, 20.0, 50.0, 100.0}) {
    if (q > q_max) continue;
    for (int j = 0; j <= 24; ++j) {
      const double r = 2.0 + (q - 2.0) * static_cast<double>(j) / 25.0;
      const double tangent = beta_c(q) + beta_c_prime(q) * (r - q);
      m3 = std::min(m3, tangent - beta_c(r));
      ++pts3;
    }
  }
  add("beta_c(r) <= tangent at q", pts3, m3, 1e-12);

  double m4 = std::numeric_limits<double>::infinity();
  std::int64_t pts4 = 0;
  for (std::int64_t i = 0; i <= steps; ++i) {
    const double q = 3.0 + step * static_cast<double>(i);
    if (q > q_max + 1e-9) break;
    m4 = std::min(m4, q - beta_c(q) / beta_c(q - 1.0));
    ++pts4;
  }
  add("beta_c(q)/beta_c(q-1) < q", pts4, m4);

  rep.all_pass = true;
  for (const auto& item : rep.items) rep.all_pass = rep.all_pass && item.pass;
  return rep;
}

// One-parameter scan of the limiting kernel along the path
//   n(t) = (t, (1-t) r_2/(q-r_1), ..., (1-t) r_s/(q-r_1)),  t in [0,1],
// on a uniform grid. A row is flagged when a jump location was crossed since
// the previous row; each crossing also gets a record with both one-sided
// kernel values at the exact location.
struct ScanRow {
  double t = 0.0;
  std::vector<double> n;
  std::vector<double> Q;
  bool jump_flag = false;
};

struct ScanJump {
  int class_index = 0;  // 1-based
  double t = 0.0;
  std::vector<double> n;
  KernelValue left;
  KernelValue right;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  std::vector<ScanJump> jumps;
};

inline ScanResult scan_limiting_kernel(const ModelParams& params,
                                       int grid_points) {
  if (grid_points < 2)
    throw std::invalid_argument("scan: need at least 2 grid points");
  const int s = params.s();
  const double tail = static_cast<double>(params.q - params.partition[0]);
  const auto path = [&](double t) {
    std::vector<double> n(static_cast<std::size_t>(s));
    n[0] = t;
    for (int j = 1; j < s; ++j)
      n[static_cast<std::size_t>(j)] =
          (1.0 - t) * params.partition[static_cast<std::size_t>(j)] / tail;
    return n;
  };

  // Jump crossings in t, from the class whose frequency passes its critical
  // value along the path.
  std::vector<ScanJump> crossings;
  if (params.beta > 0.0) {
    for (int k = 0; k < s; ++k) {
      const int r = params.partition[static_cast<std::size_t>(k)];
      if (r < 3) continue;
      const double loc = beta_c(r) / params.beta;  // critical value of n_k
      double t_star = -1.0;
      if (k == 0) {
        t_star = loc;
      } else {
        const double c = static_cast<double>(r) / tail;
        t_star = 1.0 - loc / c;
      }
      if (t_star < 0.0 || t_star > 1.0) continue;
      ScanJump j;
      j.class_index = k + 1;
      j.t = t_star;
      j.n = path(t_star);
      j.left = limiting_kernel_one_sided(params, j.n, k + 1, k != 0);
      j.right = limiting_kernel_one_sided(params, j.n, k + 1, k == 0);
      crossings.push_back(std::move(j));
    }
  }

  ScanResult out;
  out.jumps = crossings;
  out.rows.resize(static_cast<std::size_t>(grid_points));
  double prev_t = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    const double t = static_cast<double>(i) / (grid_points - 1);
    ScanRow& row = out.rows[static_cast<std::size_t>(i)];
    row.t = t;
    row.n = path(t);
    try {
      row.Q = limiting_fuzzy_kernel(params, row.n).probs;
    } catch (const std::domain_error&) {
      // grid point exactly on a jump: flag it, no single value exists
      row.Q.assign(static_cast<std::size_t>(s),
                   std::numeric_limits<double>::quiet_NaN());
      row.jump_flag = true;
    }
    for (const ScanJump& j : crossings)
      if (i > 0 && j.t > prev_t && j.t <= t) row.jump_flag = true;
    prev_t = t;
  }
  return out;
}

}  // namespace fuzzy_potts

#endif
