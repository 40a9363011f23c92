#ifndef FUZZY_POTTS_MF_EXACT_HPP
#define FUZZY_POTTS_MF_EXACT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzy_potts/model.hpp"
#include "fuzzy_potts/numeric.hpp"

// Complete-graph model on N sites with weight exp((beta/N) sum_{x<y} 1{xi(x)=xi(y)}),
// i.e. every unordered pair interacts once; in occupation numbers the exponent
// is (beta/(2N)) sum_i M_i (M_i - 1). All kernels below condition on the
// classes of sites 2..N and ask for the class of site 1.

namespace fuzzy_potts {

// Occupation of a conditioning: counts over classes, summing to N-1.
struct EmpiricalCounts {
  std::int64_t N = 0;
  std::vector<std::int64_t> counts;

  std::int64_t sum() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  }
};

inline void check_counts(const EmpiricalCounts& c, int expected_len) {
  if (c.N < 2)
    throw std::invalid_argument("counts: N=" + std::to_string(c.N) +
                                " violates N >= 2");
  if (static_cast<int>(c.counts.size()) != expected_len)
    throw std::invalid_argument("counts: expected " +
                                std::to_string(expected_len) + " entries, got " +
                                std::to_string(c.counts.size()));
  for (std::int64_t m : c.counts)
    if (m < 0) throw std::invalid_argument("counts: negative entry");
  if (c.sum() != c.N - 1)
    throw std::invalid_argument("counts: sum " + std::to_string(c.sum()) +
                                " violates sum = N-1 = " +
                                std::to_string(c.N - 1));
}

// Probability vector over classes (or states); normalized to 1e-12.
struct KernelValue {
  std::vector<double> probs;

  bool normalized(double tol = 1e-12) const {
    double sum = 0.0;
    for (double p : probs) {
      if (p < 0.0) return false;
      sum += p;
    }
    return std::fabs(sum - 1.0) <= tol;
  }
};

namespace detail {
inline KernelValue normalize_logs(const std::vector<double>& log_terms) {
  const double shift = *std::max_element(log_terms.begin(), log_terms.end());
  KernelValue out;
  out.probs.resize(log_terms.size());
  double z = 0.0;
  for (std::size_t i = 0; i < log_terms.size(); ++i) {
    out.probs[i] = std::exp(log_terms[i] - shift);
    z += out.probs[i];
  }
  for (double& p : out.probs) p /= z;
  return out;
}
}  // namespace detail

// Single-site kernel of the plain q-state model:
// Q^N(i | counts) = exp(beta (1-1/N) n_i) / sum_j exp(beta (1-1/N) n_j)
// with n_i = counts_i/(N-1); the exponent equals (beta/N) counts_i.
inline KernelValue potts_kernel(int q, double beta, const EmpiricalCounts& c) {
  check_counts(c, q);
  std::vector<double> logs(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i)
    logs[static_cast<std::size_t>(i)] =
        beta / static_cast<double>(c.N) * static_cast<double>(c.counts[static_cast<std::size_t>(i)]);
  return detail::normalize_logs(logs);
}

// Partition sum and tilted average over the r-state model on M sites at
// inverse temperature beta_tilde:
//
//   Z = sum over occupations (M_1..M_r) of
//         multinomial(M; M_1..M_r) * exp((beta_tilde/(2M)) sum_i M_i (M_i-1))
//   A = <exp((beta_tilde/M) M_1)> under those weights,  A(.., M=0) = 1.
//
// Compositions are enumerated lazily and accumulated in log space, so Z is
// returned as log_z (it overflows double well before M reaches 10^3).
struct WeightSum {
  double log_z = 0.0;
  double a = 1.0;
};

inline WeightSum partition_weight_sum(double beta_tilde, int r, std::int64_t M,
                                      std::int64_t max_terms = 2'200'000) {
  if (r < 1) throw std::invalid_argument("partition_weight_sum: r must be >= 1");
  if (M < 0) throw std::invalid_argument("partition_weight_sum: M must be >= 0");
  if (M == 0) return {0.0, 1.0};
  if (composition_count(M, r) > static_cast<double>(max_terms))
    throw std::domain_error("partition_weight_sum: enumeration of " +
                            std::to_string(M) + " sites into " +
                            std::to_string(r) + " states exceeds term cap " +
                            std::to_string(max_terms));
  const std::vector<double> lfact = log_factorial_table(M);
  const double pair_coupling = beta_tilde / (2.0 * static_cast<double>(M));
  const double obs_coupling = beta_tilde / static_cast<double>(M);
  LogSumExp z, z_tilted;
  std::vector<std::int64_t> k(static_cast<std::size_t>(r), 0);
  k[0] = M;
  while (true) {
    double log_w = lfact[static_cast<std::size_t>(M)];
    double pairs2 = 0.0;  // sum_i M_i (M_i - 1)
    for (int i = 0; i < r; ++i) {
      log_w -= lfact[static_cast<std::size_t>(k[static_cast<std::size_t>(i)])];
      pairs2 += static_cast<double>(k[static_cast<std::size_t>(i)]) *
                static_cast<double>(k[static_cast<std::size_t>(i)] - 1);
    }
    log_w += pair_coupling * pairs2;
    z.add(log_w);
    z_tilted.add(log_w + obs_coupling * static_cast<double>(k[0]));
    if (!next_composition(k)) break;
  }
  return {z.value(), std::exp(z_tilted.value() - z.value())};
}

// Conditional class distribution of one site given class counts of the rest:
//
//   Q^N(k | counts) = r_k A(beta_k, r_k, m_k) / sum_l r_l A(beta_l, r_l, m_l)
//
// with beta_k = beta m_k / N. Reduces to potts_kernel when all r_l = 1.
inline KernelValue fuzzy_kernel(const ModelParams& params,
                                const EmpiricalCounts& c,
                                std::int64_t max_terms = 2'200'000) {
  const int s = params.s();
  check_counts(c, s);
  std::vector<double> logs(static_cast<std::size_t>(s));
  for (int k = 0; k < s; ++k) {
    const std::int64_t m = c.counts[static_cast<std::size_t>(k)];
    const int r = params.partition[static_cast<std::size_t>(k)];
    const double beta_k =
        params.beta * static_cast<double>(m) / static_cast<double>(c.N);
    const WeightSum ws = partition_weight_sum(beta_k, r, m, max_terms);
    logs[static_cast<std::size_t>(k)] = std::log(static_cast<double>(r)) + std::log(ws.a);
  }
  return detail::normalize_logs(logs);
}

// Enumeration oracle. Sums the full-model weights over every spin assignment
// compatible with an explicit conditioning eta (classes of sites 2..N) and
// normalizes the class of site 1. Assignments are tallied per occupation
// vector with integer counts first, so the result is bitwise independent of
// the ordering of eta.
inline KernelValue brute_force_kernel_conditioned(const ModelParams& params,
                                                  const std::vector<int>& eta,
                                                  std::int64_t cap = 10'000'000) {
  const int q = params.q, s = params.s();
  const std::int64_t N = static_cast<std::int64_t>(eta.size()) + 1;
  if (std::pow(static_cast<double>(q), static_cast<double>(N)) >
      static_cast<double>(cap))
    throw std::domain_error("brute_force_kernel: q^N exceeds cap " +
                            std::to_string(cap));
  const FuzzyMap map = fuzzy_map(params);
  for (int cls : eta)
    if (cls < 1 || cls > s)
      throw std::invalid_argument("brute_force_kernel: conditioning class out of range");

  // Assignments of sites 2..N, each restricted to the block of eta[x], are
  // tallied by their occupation vector; site 1 ranges over all q states on
  // top of each tally. Integer tallies over canonically ordered keys make the
  // final sums independent of how eta arranges the classes over sites.
  std::map<std::vector<int>, std::int64_t> bins;
  const std::size_t n_cond = eta.size();
  std::vector<int> offset(n_cond), size(n_cond), digit(n_cond, 0);
  for (std::size_t x = 0; x < n_cond; ++x) {
    offset[x] = map.block_first(eta[x]) - 1;  // 0-based first state of block
    size[x] = map.block_size(eta[x]);
  }
  std::vector<int> occ(static_cast<std::size_t>(q), 0);
  for (std::size_t x = 0; x < n_cond; ++x) ++occ[static_cast<std::size_t>(offset[x])];
  while (true) {
    ++bins[occ];
    // odometer step over the conditioned sites
    std::size_t x = 0;
    while (x < n_cond) {
      --occ[static_cast<std::size_t>(offset[x] + digit[x])];
      if (++digit[x] < size[x]) {
        ++occ[static_cast<std::size_t>(offset[x] + digit[x])];
        break;
      }
      digit[x] = 0;
      ++occ[static_cast<std::size_t>(offset[x])];
      ++x;
    }
    if (x == n_cond) break;
  }

  // The weight of a full configuration depends only on its occupation vector:
  // log w = (beta/(2N)) sum_i M_i (M_i - 1); adding site 1 in state i shifts
  // the pair sum by 2 occ_i.
  const double coupling = params.beta / (2.0 * static_cast<double>(N));
  std::vector<LogSumExp> bucket(static_cast<std::size_t>(s));
  for (const auto& [occ2, cnt] : bins) {
    double pairs2 = 0.0;
    for (int i = 0; i < q; ++i)
      pairs2 += static_cast<double>(occ2[static_cast<std::size_t>(i)]) *
                static_cast<double>(occ2[static_cast<std::size_t>(i)] - 1);
    const double log_cnt = std::log(static_cast<double>(cnt));
    for (int i = 0; i < q; ++i) {
      const double log_w =
          coupling * (pairs2 + 2.0 * occ2[static_cast<std::size_t>(i)]) + log_cnt;
      bucket[static_cast<std::size_t>(fuzzy_project(i + 1, map) - 1)].add(log_w);
    }
  }
  std::vector<double> logs(static_cast<std::size_t>(s));
  for (int k = 0; k < s; ++k) logs[static_cast<std::size_t>(k)] = bucket[static_cast<std::size_t>(k)].value();
  return detail::normalize_logs(logs);
}

// Canonical conditioning with the given counts: m_1 sites of class 1 first,
// then m_2 of class 2, and so on.
inline std::vector<int> canonical_conditioning(const EmpiricalCounts& c) {
  std::vector<int> eta;
  eta.reserve(static_cast<std::size_t>(c.N - 1));
  for (std::size_t l = 0; l < c.counts.size(); ++l)
    eta.insert(eta.end(), static_cast<std::size_t>(c.counts[l]),
               static_cast<int>(l) + 1);
  return eta;
}

inline KernelValue brute_force_kernel(const ModelParams& params,
                                      const EmpiricalCounts& c,
                                      std::int64_t cap = 10'000'000) {
  check_counts(c, params.s());
  return brute_force_kernel_conditioned(params, canonical_conditioning(c), cap);
}

}  // namespace fuzzy_potts

#endif
