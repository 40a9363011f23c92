#ifndef FUZZY_POTTS_TREE_HPP
#define FUZZY_POTTS_TREE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzy_potts/model.hpp"
#include "fuzzy_potts/numeric.hpp"
#include "fuzzy_potts/rng.hpp"

namespace fuzzy_potts {

// Finite rooted tree stored as a parent vector plus derived children lists
// and depths. Node ids are 0-based; parent[root] == -1.
struct RootedTree {
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
  std::vector<int> depth;
  int root = 0;

  int size() const { return static_cast<int>(parent.size()); }
  bool is_leaf(int x) const { return children[static_cast<std::size_t>(x)].empty(); }

  // Nodes ordered root first, then depth layer by depth layer.
  std::vector<int> bfs_order() const {
    std::vector<int> order;
    order.reserve(parent.size());
    std::vector<int> frontier{root};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int x : frontier) {
        order.push_back(x);
        next.insert(next.end(), children[static_cast<std::size_t>(x)].begin(),
                    children[static_cast<std::size_t>(x)].end());
      }
      frontier = std::move(next);
    }
    return order;
  }
};

// Builds and checks a tree from a parent vector (-1 marks the root).
inline RootedTree make_tree(const std::vector<int>& parent_of) {
  const int n = static_cast<int>(parent_of.size());
  if (n == 0) throw std::invalid_argument("tree: empty node set");
  RootedTree t;
  t.parent = parent_of;
  t.children.assign(static_cast<std::size_t>(n), {});
  t.depth.assign(static_cast<std::size_t>(n), -1);
  int root = -1;
  for (int x = 0; x < n; ++x) {
    const int p = parent_of[static_cast<std::size_t>(x)];
    if (p < 0) {
      if (root >= 0) throw std::invalid_argument("tree: more than one root");
      root = x;
    } else if (p >= n) {
      throw std::invalid_argument("tree: parent index out of range");
    } else {
      t.children[static_cast<std::size_t>(p)].push_back(x);
    }
  }
  if (root < 0) throw std::invalid_argument("tree: no root (parent null) found");
  t.root = root;
  t.depth[static_cast<std::size_t>(root)] = 0;
  int seen = 0;
  for (int x : t.bfs_order()) {
    ++seen;
    if (x != root)
      t.depth[static_cast<std::size_t>(x)] =
          t.depth[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(x)])] + 1;
  }
  if (seen != n)
    throw std::invalid_argument("tree: not connected or contains a cycle");
  return t;
}

// Rooted d-ary tree truncated at the given depth. By default the root has d
// children like every interior node; root_degree_plus_one gives it d+1.
inline RootedTree regular_tree(int d, int depth, bool root_degree_plus_one = false,
                               std::int64_t node_cap = 10'000'000) {
  if (d < 2) throw std::invalid_argument("regular_tree: d must be >= 2");
  if (depth < 1) throw std::invalid_argument("regular_tree: depth must be >= 1");
  const std::int64_t root_deg = root_degree_plus_one ? d + 1 : d;
  std::int64_t count = 1, layer = root_deg;
  for (int l = 1; l <= depth; ++l) {
    count += layer;
    if (count > node_cap)
      throw std::invalid_argument("regular_tree: node count exceeds cap " +
                                  std::to_string(node_cap));
    layer *= d;
  }
  std::vector<int> parent;
  parent.reserve(static_cast<std::size_t>(count));
  parent.push_back(-1);
  int layer_begin = 0, layer_end = 1;
  for (int l = 1; l <= depth; ++l) {
    const int deg = (l == 1) ? static_cast<int>(root_deg) : d;
    for (int p = layer_begin; p < layer_end; ++p)
      for (int c = 0; c < deg; ++c) parent.push_back(p);
    layer_begin = layer_end;
    layer_end = static_cast<int>(parent.size());
  }
  return make_tree(parent);
}

// Row-stochastic k x k matrix, row-major.
struct TransitionMatrix {
  int k = 0;
  std::vector<double> p;

  double& at(int i, int j) { return p[static_cast<std::size_t>(i) * k + j]; }
  double at(int i, int j) const { return p[static_cast<std::size_t>(i) * k + j]; }

  bool row_stochastic(double tol = 1e-12) const {
    for (int i = 0; i < k; ++i) {
      double sum = 0.0;
      for (int j = 0; j < k; ++j) {
        if (at(i, j) < 0.0) return false;
        sum += at(i, j);
      }
      if (std::fabs(sum - 1.0) > tol) return false;
    }
    return true;
  }
};

// Single-site chain matrix of the free-boundary Potts chain:
// diagonal e^{2 beta}/(e^{2 beta}+q-1), off-diagonal 1/(e^{2 beta}+q-1).
inline TransitionMatrix free_potts_matrix(const ModelParams& params) {
  const int q = params.q;
  const double a = std::exp(2.0 * params.beta);
  const double denom = a + q - 1.0;
  TransitionMatrix m{q, std::vector<double>(static_cast<std::size_t>(q) * q,
                                            1.0 / denom)};
  for (int i = 0; i < q; ++i) m.at(i, i) = a / denom;
  return m;
}

struct FuzzyChain {
  std::vector<double> init;  // (r_1/q, ..., r_s/q)
  TransitionMatrix matrix;   // s x s
};

// Chain for the projected classes under free boundary:
// P_{kl} = (e^{2 beta}+r_l-1)/(e^{2 beta}+q-1) on the diagonal, r_l/(e^{2 beta}+q-1) off it.
inline FuzzyChain free_fuzzy_matrix(const ModelParams& params) {
  const int q = params.q, s = params.s();
  const double a = std::exp(2.0 * params.beta);
  const double denom = a + q - 1.0;
  FuzzyChain chain;
  chain.init.resize(static_cast<std::size_t>(s));
  chain.matrix.k = s;
  chain.matrix.p.assign(static_cast<std::size_t>(s) * s, 0.0);
  for (int k = 0; k < s; ++k) {
    chain.init[static_cast<std::size_t>(k)] =
        static_cast<double>(params.partition[static_cast<std::size_t>(k)]) / q;
    for (int l = 0; l < s; ++l) {
      const double rl = params.partition[static_cast<std::size_t>(l)];
      chain.matrix.at(k, l) = (k == l) ? (a + rl - 1.0) / denom : rl / denom;
    }
  }
  return chain;
}

// Spin-1 to spin-2 probability ratios of the wired subtree measures.
// Leaves of a finite tree stand for the wired boundary itself and carry
// b = +inf; each such child contributes the limiting factor e^{2 beta} to its
// parent's product.
struct BoundaryWeights {
  std::vector<double> b;

  bool is_boundary(int x) const { return std::isinf(b[static_cast<std::size_t>(x)]); }
};

inline double wired_child_factor(double b_child, double a /* = e^{2beta} */,
                                 int q) {
  if (std::isinf(b_child)) return a;
  return (a * b_child + q - 1.0) / (a + b_child + q - 2.0);
}

// Bottom-up product recursion b_x = prod_children (e^{2 beta} b_y + q-1)/(e^{2 beta} + b_y + q-2).
inline BoundaryWeights b_recursion_finite(const RootedTree& tree,
                                          const ModelParams& params) {
  if (tree.size() == 0) throw std::invalid_argument("b_recursion: empty tree");
  const double a = std::exp(2.0 * params.beta);
  const int q = params.q;
  BoundaryWeights w;
  w.b.assign(static_cast<std::size_t>(tree.size()),
             std::numeric_limits<double>::infinity());
  const std::vector<int> order = tree.bfs_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int x = *it;
    if (tree.is_leaf(x)) continue;  // wired boundary, b stays +inf
    double prod = 1.0;
    for (int y : tree.children[static_cast<std::size_t>(x)])
      prod *= wired_child_factor(w.b[static_cast<std::size_t>(y)], a, q);
    w.b[static_cast<std::size_t>(x)] = prod;
  }
  return w;
}

// Largest fixed point b* in [1, e^{2 beta d}] of b = f(b)^d with
// f(b) = (e^{2 beta} b + q-1)/(e^{2 beta} + b + q-2), located by monotone downward
// iteration from the upper bound. The optional observer sees every iterate.
//
// Near a tangency of the map the plain iteration decays only algebraically,
// so an extrapolated candidate is tried periodically; it is used only when
// g(cand) > cand certifies that cand lies strictly below b* but above the
// unstable fixed point, in which case bisection on [cand, b] finishes the job
// without ever leaving the basin of the largest fixed point.
inline double fixed_point_b(int d, int q, double beta, double tol = 1e-6,
                            std::int64_t max_iter = 1'000'000,
                            const std::function<void(double)>& observer = {}) {
  if (d < 1) throw std::invalid_argument("fixed_point_b: d must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("fixed_point_b: tol must be > 0");
  const double a = std::exp(2.0 * beta);
  const auto g = [&](double b) {
    double f = (a * b + q - 1.0) / (a + b + q - 2.0);
    double out = 1.0;
    for (int i = 0; i < d; ++i) out *= f;
    return out;
  };
  double b = (2.0 * beta * d > 700.0) ? 1e300 : std::pow(a, d);
  if (observer) observer(b);
  double gap_prev = std::numeric_limits<double>::infinity();
  double p0 = 0.0, p1 = 0.0;  // previous two iterates once it >= 2
  for (std::int64_t it = 0; it < max_iter; ++it) {
    const double next = g(b);
    const double gap = std::fabs(b - next);
    if (gap < tol) return next;
    // the residual cannot improve once it stagnates at the rounding floor
    if (next == b ||
        (gap >= gap_prev &&
         gap <= 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, b)))
      return next;
    if (it >= 2 && it % 4 == 2) {
      const double denom = (next - p1) - (p1 - p0);
      if (denom != 0.0) {
        const double cand = p0 - (p1 - p0) * (p1 - p0) / denom;
        if (cand >= 1.0 && cand < next && g(cand) > cand) {
          double lo = cand, hi = next;
          while (hi - lo > 1e-15 * std::max(1.0, hi)) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) >= mid ? lo : hi) = mid;
          }
          return 0.5 * (lo + hi);
        }
      }
    }
    gap_prev = gap;
    p0 = p1;
    p1 = next;
    b = next;
    if (observer) observer(b);
  }
  throw std::runtime_error("fixed_point_b: no convergence after " +
                           std::to_string(max_iter) + " iterations");
}

inline double fixed_point_b(int d, const ModelParams& params, double tol = 1e-6,
                            std::int64_t max_iter = 1'000'000) {
  return fixed_point_b(d, params.q, params.beta, tol, max_iter);
}

// Root distribution and per-node matrices of the wired chain. P^x depends on
// the weight b_x of the node being generated; a boundary node (b = +inf) is
// forced to spin 1 from any parent state.
struct WiredChain {
  std::vector<double> init;          // length q, from b_root
  std::vector<TransitionMatrix> P;   // per node; P[root] is unused (k == 0)
};

inline TransitionMatrix wired_node_matrix(double b, double a /* e^{2beta} */,
                                          int q) {
  TransitionMatrix m{q,
                     std::vector<double>(static_cast<std::size_t>(q) * q, 0.0)};
  if (std::isinf(b)) {
    for (int i = 0; i < q; ++i) m.at(i, 0) = 1.0;
    return m;
  }
  const double top = b * a + q - 1.0;      // parent spin 1
  const double other = b + a + q - 2.0;    // parent spin != 1
  for (int j = 0; j < q; ++j) m.at(0, j) = (j == 0) ? b * a / top : 1.0 / top;
  for (int i = 1; i < q; ++i)
    for (int j = 0; j < q; ++j)
      m.at(i, j) = (j == 0) ? b / other : (j == i) ? a / other : 1.0 / other;
  return m;
}

inline WiredChain wired_chain_matrices(const RootedTree& tree,
                                       const BoundaryWeights& w,
                                       const ModelParams& params) {
  if (w.b.size() != static_cast<std::size_t>(tree.size()))
    throw std::invalid_argument("wired_chain: boundary weights missing for some node");
  const int q = params.q;
  const double a = std::exp(2.0 * params.beta);
  WiredChain chain;
  const double b_root = w.b[static_cast<std::size_t>(tree.root)];
  chain.init.assign(static_cast<std::size_t>(q), 0.0);
  if (std::isinf(b_root)) {
    chain.init[0] = 1.0;
  } else {
    for (int i = 0; i < q; ++i)
      chain.init[static_cast<std::size_t>(i)] =
          (i == 0) ? b_root / (b_root + q - 1.0) : 1.0 / (b_root + q - 1.0);
  }
  chain.P.resize(static_cast<std::size_t>(tree.size()));
  for (int x = 0; x < tree.size(); ++x) {
    if (x == tree.root) continue;
    if (std::isnan(w.b[static_cast<std::size_t>(x)]))
      throw std::invalid_argument("wired_chain: boundary weight missing for node " +
                                  std::to_string(x));
    chain.P[static_cast<std::size_t>(x)] =
        wired_node_matrix(w.b[static_cast<std::size_t>(x)], a, q);
  }
  return chain;
}

namespace detail {
inline int draw_row(const double* row, int k, double u) {
  double acc = 0.0;
  for (int j = 0; j < k; ++j) {
    acc += row[j];
    if (u < acc) return j;
  }
  return k - 1;
}
}  // namespace detail

// One exact sample of the (possibly inhomogeneous) tree-indexed chain, in
// breadth-first order. States are 1-based. Deterministic for a fixed seed.
inline std::vector<int> sample_chain(const RootedTree& tree,
                                     const std::vector<TransitionMatrix>& per_node,
                                     const std::vector<double>& init,
                                     std::uint64_t seed) {
  const int k = static_cast<int>(init.size());
  std::vector<int> state(static_cast<std::size_t>(tree.size()), 0);
  Philox rng(seed);
  for (int x : tree.bfs_order()) {
    if (x == tree.root) {
      state[static_cast<std::size_t>(x)] =
          detail::draw_row(init.data(), k, rng.uniform01()) + 1;
      continue;
    }
    const TransitionMatrix& m = per_node[static_cast<std::size_t>(x)];
    if (m.k != k) throw std::invalid_argument("sample_chain: matrix size mismatch");
    const int pi = state[static_cast<std::size_t>(tree.parent[static_cast<std::size_t>(x)])] - 1;
    state[static_cast<std::size_t>(x)] =
        detail::draw_row(&m.p[static_cast<std::size_t>(pi) * k], k, rng.uniform01()) + 1;
  }
  return state;
}

inline std::vector<int> sample_chain(const RootedTree& tree,
                                     const TransitionMatrix& homogeneous,
                                     const std::vector<double>& init,
                                     std::uint64_t seed) {
  std::vector<TransitionMatrix> per(static_cast<std::size_t>(tree.size()),
                                    homogeneous);
  return sample_chain(tree, per, init, seed);
}

// Conditioning ratios at a root with two distinguished children carrying
// weights b1, b2 plus extra_children further children pinned to class 1 with
// all their children outside class 1.
//
//   a            = (b1 b2 + r1-1) / ((b1 + r1-1)(b2 + r1-1))
//   wired_ratio  = [a (e^{4 beta} + r1-1) + (1-a)(2 e^{2 beta} + r1-2)] / (q - r1)
//   free_ratio   = same with a -> 1/r1
//
// both multiplied by ((e^{2 beta} + r1 - 1)/r1)^extra_children; the gap compares
// the implied probabilities of class 1 at the root.
struct GapResult {
  double a = 0.0;
  double wired_ratio = 0.0;
  double free_ratio = 0.0;
  double p_wired = 0.0;
  double p_free = 0.0;
  double gap = 0.0;
};

inline GapResult wired_gap(double b1, double b2, const ModelParams& params,
                           int extra_children = 0) {
  const int r1 = params.partition.at(0);
  if (r1 < 2)
    throw std::invalid_argument("wired_gap: requires r_1 >= 2, got r_1 = " +
                                std::to_string(r1));
  if (!(b1 >= 1.0) || !(b2 >= 1.0))
    throw std::invalid_argument("wired_gap: requires b1, b2 >= 1");
  if (extra_children < 0)
    throw std::invalid_argument("wired_gap: extra_children must be >= 0");
  const int q = params.q;
  const double e2 = std::exp(2.0 * params.beta);
  const double e4 = e2 * e2;
  GapResult res;
  res.a = (b1 * b2 + r1 - 1.0) / ((b1 + r1 - 1.0) * (b2 + r1 - 1.0));
  const double mult = std::pow((e2 + r1 - 1.0) / r1, extra_children);
  const auto ratio_for = [&](double mix) {
    return mix * (e4 + r1 - 1.0) + (1.0 - mix) * (2.0 * e2 + r1 - 2.0);
  };
  res.wired_ratio = ratio_for(res.a) / (q - r1) * mult;
  res.free_ratio = ratio_for(1.0 / r1) / (q - r1) * mult;
  res.p_wired = res.wired_ratio / (1.0 + res.wired_ratio);
  res.p_free = res.free_ratio / (1.0 + res.free_ratio);
  res.gap = res.p_wired - res.p_free;
  return res;
}

// Checks that the two-children product form of the wired conditioning ratio,
//   [prod_i (b_i e^{2 beta} + r1-1) + (r1-1) prod_i (b_i + e^{2 beta} + r1-2)]
//   / [(q-r1) prod_i (b_i + r1-1)],
// agrees with the mixed form used by wired_gap.
inline bool verify_ratio_identity(double b1, double b2,
                                  const ModelParams& params,
                                  double rel_tol = 1e-10) {
  const int q = params.q;
  const int r1 = params.partition.at(0);
  const double e2 = std::exp(2.0 * params.beta);
  const double product_form =
      ((b1 * e2 + r1 - 1.0) * (b2 * e2 + r1 - 1.0) +
       (r1 - 1.0) * (b1 + e2 + r1 - 2.0) * (b2 + e2 + r1 - 2.0)) /
      ((q - r1) * (b1 + r1 - 1.0) * (b2 + r1 - 1.0));
  const double mixed_form = wired_gap(b1, b2, params).wired_ratio;
  return nearly_equal(product_form, mixed_form, rel_tol);
}

namespace detail {
// Does the largest fixed point of b -> f(b)^d exceed 1 + tol? Decided with
// certificates rather than full convergence: every iterate bounds b* from
// above, so one iterate at or below 1 + tol proves "no"; any point x > 1 + tol
// with g(x) > x proves "yes" since a fixed point then lies above x. Extrapolated
// candidates supply such points once the iteration has slowed down.
inline bool fixed_point_exceeds(int d, int q, double beta, double tol) {
  const double a = std::exp(2.0 * beta);
  const auto g = [&](double b) {
    double f = (a * b + q - 1.0) / (a + b + q - 2.0);
    double out = 1.0;
    for (int i = 0; i < d; ++i) out *= f;
    return out;
  };
  const double threshold = 1.0 + tol;
  if (g(threshold) > threshold) return true;
  double b = (2.0 * beta * d > 700.0) ? 1e300 : std::pow(a, d);
  double p0 = 0.0, p1 = 0.0;
  const std::int64_t max_iter = 2'000'000;
  double next = b;
  for (std::int64_t it = 0; it < max_iter; ++it) {
    next = g(b);
    if (next <= threshold) return false;
    const double gap = std::fabs(b - next);
    if (gap <= 8.0 * std::numeric_limits<double>::epsilon() * next)
      return true;  // numerical fixed point above the threshold
    if (it >= 2 && it % 4 == 2) {
      const double denom = (next - p1) - (p1 - p0);
      if (denom != 0.0) {
        const double cand = p0 - (p1 - p0) * (p1 - p0) / denom;
        if (cand > threshold && cand < next && g(cand) > cand) return true;
      }
    }
    p0 = p1;
    p1 = next;
    b = next;
  }
  // Degenerate probe: b* passes through 1 + tol continuously, so whatever
  // side the iterate is on after the cap decides; the bias this introduces in
  // the bracket is far below the bracket width.
  return next > threshold;
}
}  // namespace detail

// Smallest beta at which the largest fixed point exceeds 1 + tol, located by
// bisection after a geometric sweep.
inline double tree_critical_beta(int d, int q, double tol = 1e-6,
                                 double beta_max = 16.0) {
  if (d < 2) throw std::invalid_argument("tree_critical_beta: d must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("tree_critical_beta: tol must be > 0");
  const auto exceeds = [&](double beta) {
    return detail::fixed_point_exceeds(d, q, beta, tol);
  };
  double lo = 0.0, hi = 0.125;
  while (!exceeds(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > beta_max)
      throw std::runtime_error("tree_critical_beta: no transition below beta_max=" +
                               std::to_string(beta_max));
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (exceeds(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace fuzzy_potts

#endif
