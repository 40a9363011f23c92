#ifndef FUZZY_POTTS_MC_HPP
#define FUZZY_POTTS_MC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fuzzy_potts/mf_exact.hpp"
#include "fuzzy_potts/model.hpp"
#include "fuzzy_potts/rng.hpp"

namespace fuzzy_potts {

// Spin configuration of the complete-graph chain with its occupation vector
// maintained incrementally. Spins are 1-based.
struct ChainState {
  int q = 0;
  std::vector<int> spins;
  std::vector<std::int64_t> counts;  // length q
  std::uint64_t step = 0;

  bool counts_consistent() const {
    std::vector<std::int64_t> tally(static_cast<std::size_t>(q), 0);
    for (int spin : spins) {
      if (spin < 1 || spin > q) return false;
      ++tally[static_cast<std::size_t>(spin - 1)];
    }
    return tally == counts;
  }
};

inline ChainState init_chain_constant(int q, std::int64_t n, int spin) {
  if (spin < 1 || spin > q)
    throw std::invalid_argument("init_chain: spin out of range");
  ChainState st;
  st.q = q;
  st.spins.assign(static_cast<std::size_t>(n), spin);
  st.counts.assign(static_cast<std::size_t>(q), 0);
  st.counts[static_cast<std::size_t>(spin - 1)] = n;
  return st;
}

inline ChainState init_chain_uniform(int q, std::int64_t n, Philox& rng) {
  ChainState st;
  st.q = q;
  st.spins.resize(static_cast<std::size_t>(n));
  st.counts.assign(static_cast<std::size_t>(q), 0);
  for (auto& spin : st.spins) {
    spin = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(q))) + 1;
    ++st.counts[static_cast<std::size_t>(spin - 1)];
  }
  return st;
}

namespace detail {
// Resamples one site from p(i) proportional to exp((beta/N)(M_i - 1{spin=i}))
// over the allowed states; with every unordered pair interacting once, the
// conditional field per matching neighbour is beta/N.
inline void heat_bath_site(ChainState& st, std::size_t x, double coupling,
                           const int* allowed, int n_allowed, Philox& rng) {
  const int old = st.spins[x];
  double w[64];
  double max_e = -1e300;
  for (int j = 0; j < n_allowed; ++j) {
    const int i = allowed[j];
    const double e =
        coupling * static_cast<double>(st.counts[static_cast<std::size_t>(i - 1)] -
                                       (i == old ? 1 : 0));
    w[j] = e;
    if (e > max_e) max_e = e;
  }
  double z = 0.0;
  for (int j = 0; j < n_allowed; ++j) {
    w[j] = std::exp(w[j] - max_e);
    z += w[j];
  }
  const double u = rng.uniform01() * z;
  double acc = 0.0;
  int pick = allowed[n_allowed - 1];
  for (int j = 0; j < n_allowed; ++j) {
    acc += w[j];
    if (u < acc) {
      pick = allowed[j];
      break;
    }
  }
  if (pick != old) {
    --st.counts[static_cast<std::size_t>(old - 1)];
    ++st.counts[static_cast<std::size_t>(pick - 1)];
    st.spins[x] = pick;
  }
}
}  // namespace detail

// One sweep of single-site heat-bath updates over all N sites.
inline void heat_bath_sweep(ChainState& st, double beta, Philox& rng) {
  if (st.q < 2 || st.q > 64)
    throw std::invalid_argument("heat_bath_sweep: unsupported q");
  const std::int64_t n = static_cast<std::int64_t>(st.spins.size());
  const double coupling = beta / static_cast<double>(n);
  int all[64];
  for (int i = 0; i < st.q; ++i) all[i] = i + 1;
  for (std::size_t x = 0; x < st.spins.size(); ++x)
    detail::heat_bath_site(st, x, coupling, all, st.q, rng);
  ++st.step;
}

// Sweep with every site x >= 1 restricted to the block of frozen_class[x];
// site 0 stays unrestricted. frozen_class[0] is ignored.
inline void heat_bath_sweep_conditional(ChainState& st, double beta,
                                        const FuzzyMap& map,
                                        const std::vector<int>& frozen_class,
                                        Philox& rng) {
  if (frozen_class.size() != st.spins.size())
    throw std::invalid_argument("conditional sweep: class vector size mismatch");
  const std::int64_t n = static_cast<std::int64_t>(st.spins.size());
  const double coupling = beta / static_cast<double>(n);
  int allowed[64];
  for (std::size_t x = 0; x < st.spins.size(); ++x) {
    int n_allowed;
    if (x == 0) {
      n_allowed = st.q;
      for (int i = 0; i < st.q; ++i) allowed[i] = i + 1;
    } else {
      const int cls = frozen_class[x];
      n_allowed = map.block_size(cls);
      for (int i = 0; i < n_allowed; ++i) allowed[i] = map.block_first(cls) + i;
    }
    detail::heat_bath_site(st, x, coupling, allowed, n_allowed, rng);
  }
  ++st.step;
}

// Pooled occupation-fraction samples, one per sweep after burn-in. Replica j
// owns stream j; starts alternate between uniform-random and each constant
// configuration so that all ordered phases are reached above the transition.
struct OccupationSamples {
  int replicas = 0;
  std::int64_t per_replica = 0;
  std::vector<std::vector<double>> samples;  // replica-major

  const std::vector<double>& sample(int replica, std::int64_t t) const {
    return samples[static_cast<std::size_t>(replica) *
                       static_cast<std::size_t>(per_replica) +
                   static_cast<std::size_t>(t)];
  }
};

inline OccupationSamples estimate_occupation(int q, double beta, std::int64_t N,
                                             std::int64_t sweeps,
                                             std::int64_t burn_in, int replicas,
                                             std::uint64_t seed,
                                             int threads = 0) {
  if (N < 10) throw std::invalid_argument("estimate_occupation: N must be >= 10");
  if (replicas < 1 || sweeps < 1)
    throw std::invalid_argument("estimate_occupation: bad replica/sweep count");
  OccupationSamples out;
  out.replicas = replicas;
  out.per_replica = sweeps;
  out.samples.assign(static_cast<std::size_t>(replicas) *
                         static_cast<std::size_t>(sweeps),
                     {});
  const auto run_replica = [&](int j) {
    Philox rng(seed, static_cast<std::uint64_t>(j));
    const int phase = j % (q + 1);
    ChainState st = (phase == 0) ? init_chain_uniform(q, N, rng)
                                 : init_chain_constant(q, N, phase);
    for (std::int64_t t = 0; t < burn_in; ++t) heat_bath_sweep(st, beta, rng);
    for (std::int64_t t = 0; t < sweeps; ++t) {
      heat_bath_sweep(st, beta, rng);
      std::vector<double> frac(static_cast<std::size_t>(q));
      for (int i = 0; i < q; ++i)
        frac[static_cast<std::size_t>(i)] =
            static_cast<double>(st.counts[static_cast<std::size_t>(i)]) /
            static_cast<double>(N);
      out.samples[static_cast<std::size_t>(j) * static_cast<std::size_t>(sweeps) +
                  static_cast<std::size_t>(t)] = std::move(frac);
    }
  };
  int n_threads = threads > 0 ? threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min(n_threads, replicas);
  if (n_threads == 1) {
    for (int j = 0; j < replicas; ++j) run_replica(j);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&, t] {
        for (int j = t; j < replicas; j += n_threads) run_replica(j);
      });
    for (auto& th : pool) th.join();
  }
  return out;
}

// Estimates the conditional class kernel by simulating the model restricted
// to the configurations whose sites 2..N keep the classes of a conditioning
// with the given counts; reports class frequencies of site 1.
inline KernelValue estimate_kernel(const ModelParams& params, std::int64_t N,
                                   const EmpiricalCounts& counts,
                                   std::int64_t sweeps, std::uint64_t seed,
                                   std::int64_t burn_in = -1) {
  check_counts(counts, params.s());
  if (counts.N != N)
    throw std::invalid_argument("estimate_kernel: counts.N != N");
  if (sweeps < 1) throw std::invalid_argument("estimate_kernel: sweeps must be >= 1");
  if (burn_in < 0) burn_in = sweeps / 5;
  const FuzzyMap map = fuzzy_map(params);
  std::vector<int> frozen(static_cast<std::size_t>(N), 0);
  {
    const std::vector<int> eta = canonical_conditioning(counts);
    for (std::size_t i = 0; i < eta.size(); ++i) frozen[i + 1] = eta[i];
  }
  Philox rng(seed);
  ChainState st;
  st.q = params.q;
  st.spins.resize(static_cast<std::size_t>(N));
  st.counts.assign(static_cast<std::size_t>(params.q), 0);
  for (std::size_t x = 0; x < st.spins.size(); ++x) {
    int spin;
    if (x == 0) {
      spin = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(params.q))) + 1;
    } else {
      const int cls = frozen[x];
      spin = map.block_first(cls) +
             static_cast<int>(rng.uniform_below(
                 static_cast<std::uint64_t>(map.block_size(cls))));
    }
    st.spins[x] = spin;
    ++st.counts[static_cast<std::size_t>(spin - 1)];
  }
  std::vector<std::int64_t> freq(static_cast<std::size_t>(params.s()), 0);
  for (std::int64_t t = 0; t < burn_in + sweeps; ++t) {
    heat_bath_sweep_conditional(st, params.beta, map, frozen, rng);
    // frozen sites must never leave their class
    for (std::size_t x = 1; x < st.spins.size(); ++x)
      if (fuzzy_project(st.spins[x], map) != frozen[x])
        throw std::logic_error("estimate_kernel: frozen class violated");
    if (t >= burn_in)
      ++freq[static_cast<std::size_t>(fuzzy_project(st.spins[0], map) - 1)];
  }
  KernelValue out;
  out.probs.resize(freq.size());
  for (std::size_t k = 0; k < freq.size(); ++k)
    out.probs[k] = static_cast<double>(freq[k]) / static_cast<double>(sweeps);
  return out;
}

}  // namespace fuzzy_potts

#endif
