#ifndef FUZZY_POTTS_CLI_HPP
#define FUZZY_POTTS_CLI_HPP

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "fuzzy_potts/io.hpp"
#include "fuzzy_potts/mc.hpp"
#include "fuzzy_potts/mf_exact.hpp"
#include "fuzzy_potts/mf_limit.hpp"
#include "fuzzy_potts/model.hpp"
#include "fuzzy_potts/tree.hpp"

namespace fuzzy_potts::cli {

// Exit codes: 0 success, 1 domain error (invariant violation, solver failure),
// 2 usage error.

namespace detail {

inline int env_threads() {
  const char* v = std::getenv("FUZZY_POTTS_THREADS");
  if (!v) return 0;
  const long n = std::strtol(v, nullptr, 10);
  return n > 0 ? static_cast<int>(n) : 0;
}

inline std::string fmt(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

// Rounds a value to the requested significant digits so JSON output honours
// --precision; at the default 17 digits values pass through untouched.
inline double jnum(double v, int precision) {
  if (precision >= 17) return v;
  return std::strtod(fmt(v, precision).c_str(), nullptr);
}

inline ordered_json jvec(const std::vector<double>& v, int precision) {
  ordered_json arr = ordered_json::array();
  for (double x : v) arr.push_back(jnum(x, precision));
  return arr;
}

struct Output {
  std::string path;     // empty = stdout
  int precision = 17;

  void emit(const std::string& payload, std::ostream& out) const {
    if (path.empty()) {
      out << payload;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + path);
    f << payload;
  }
};

inline void add_common(CLI::App* sub, Output* o) {
  sub->add_option("-o,--output", o->path, "write output to a file instead of stdout");
  sub->add_option("--precision", o->precision, "significant digits for numeric output")
      ->check(CLI::Range(1, 17));
}

struct ParamArgs {
  int q = 0;
  double beta = -1.0;
  std::vector<int> partition;
  std::string config;

  void add(CLI::App* sub, bool with_partition = true) {
    sub->add_option("--config", config, "JSON config file with q, beta, partition");
    sub->add_option("--q", q, "number of spin states");
    sub->add_option("--beta", beta, "inverse temperature");
    if (with_partition)
      sub->add_option("--partition", partition, "class sizes r_1,...,r_s")
          ->delimiter(',');
  }

  ModelParams resolve() const {
    ModelParams p;
    if (!config.empty()) p = load_params_file(config);
    if (q > 0) p.q = q;
    if (beta >= 0.0) p.beta = beta;
    if (!partition.empty()) p.partition = partition;
    return validate(p);
  }

  // For the plain-Potts subcommands that take no partition.
  void resolve_q_beta(int* out_q, double* out_beta) const {
    int qq = q;
    double bb = beta;
    if (!config.empty()) {
      const ModelParams p = load_params_file(config);
      if (qq <= 0) qq = p.q;
      if (bb < 0.0) bb = p.beta;
    }
    if (qq < 2) throw std::invalid_argument("q must be >= 2");
    if (bb < 0.0) throw std::invalid_argument("beta must be >= 0");
    *out_q = qq;
    *out_beta = bb;
  }
};

inline ordered_json meta_base(const std::string& command) {
  ordered_json m;
  m["version"] = kVersion;
  m["command"] = command;
  return m;
}

inline std::string meta_csv(const ordered_json& meta) {
  std::string s;
  for (const auto& [key, value] : meta.items()) {
    s += "# ";
    s += key;
    s += "=";
    s += value.is_string() ? value.get<std::string>() : value.dump();
    s += "\n";
  }
  return s;
}

// ---- subcommand payload builders ----

inline std::string do_tree_gap(const ModelParams& p, int d, int extra_children,
                               double tol, const Output& o) {
  const double b_star = fixed_point_b(d, p, tol);
  const GapResult g = wired_gap(b_star, b_star, p, extra_children);
  ordered_json j;
  j["meta"] = meta_base("tree-gap");
  j["meta"]["q"] = p.q;
  j["meta"]["beta"] = p.beta;
  j["meta"]["partition"] = p.partition;
  j["meta"]["d"] = d;
  j["meta"]["extra_children"] = extra_children;
  j["meta"]["tol"] = tol;
  j["b_star"] = jnum(b_star, o.precision);
  j["a"] = jnum(g.a, o.precision);
  j["wired_ratio"] = jnum(g.wired_ratio, o.precision);
  j["free_ratio"] = jnum(g.free_ratio, o.precision);
  j["p_wired"] = jnum(g.p_wired, o.precision);
  j["p_free"] = jnum(g.p_free, o.precision);
  j["gap"] = jnum(g.gap, o.precision);
  return j.dump(2) + "\n";
}

inline std::string do_tree_critical(int d, int q, double tol, const Output& o) {
  const double bc = tree_critical_beta(d, q, tol);
  ordered_json j;
  j["meta"] = meta_base("tree-critical");
  j["meta"]["d"] = d;
  j["meta"]["q"] = q;
  j["meta"]["tol"] = tol;
  j["beta_c"] = jnum(bc, o.precision);
  return j.dump(2) + "\n";
}

inline std::string do_mf_kernel(const ModelParams& p, std::int64_t N,
                                const std::vector<std::int64_t>& counts,
                                const Output& o) {
  EmpiricalCounts c{N, counts};
  const KernelValue kv = fuzzy_kernel(p, c);
  ordered_json j;
  j["meta"] = meta_base("mf-kernel");
  j["meta"]["q"] = p.q;
  j["meta"]["beta"] = p.beta;
  j["meta"]["partition"] = p.partition;
  j["meta"]["N"] = N;
  j["meta"]["counts"] = counts;
  j["probs"] = jvec(kv.probs, o.precision);
  return j.dump(2) + "\n";
}

inline std::vector<std::vector<int>> legal_partitions(int q) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  const std::function<void(int)> rec = [&](int rest) {
    if (rest == 0) {
      const int s = static_cast<int>(cur.size());
      if (1 < s && s < q) out.push_back(cur);
      return;
    }
    for (int r = 1; r <= rest; ++r) {
      cur.push_back(r);
      rec(rest - r);
      cur.pop_back();
    }
  };
  rec(q);
  return out;
}

inline std::string do_mf_oracle_check(const std::string& grid, const Output& o,
                                      bool* pass_out) {
  const int n_max = (grid == "full") ? 8 : 6;
  std::ostringstream os;
  ordered_json meta = meta_base("mf-oracle-check");
  meta["grid"] = grid;
  os << meta_csv(meta);
  os << "N,q,partition,beta,max_abs_err\n";
  double worst = 0.0;
  for (std::int64_t N = 3; N <= n_max; ++N) {
    for (int q : {3, 4}) {
      for (const auto& part : legal_partitions(q)) {
        for (double beta : {0.0, 0.5, 1.0, 2.0}) {
          const ModelParams p = make_params(q, beta, part);
          double err = 0.0;
          std::vector<std::int64_t> counts(part.size(), 0);
          counts[0] = N - 1;
          while (true) {
            EmpiricalCounts c{N, counts};
            const KernelValue a = fuzzy_kernel(p, c);
            const KernelValue b = brute_force_kernel(p, c);
            for (std::size_t i = 0; i < a.probs.size(); ++i)
              err = std::max(err, std::fabs(a.probs[i] - b.probs[i]));
            if (!next_composition(counts)) break;
          }
          worst = std::max(worst, err);
          os << N << "," << q << ",";
          for (std::size_t i = 0; i < part.size(); ++i)
            os << (i ? "|" : "") << part[i];
          os << "," << fmt(beta, o.precision) << "," << fmt(err, 3) << "\n";
        }
      }
    }
  }
  const bool pass = worst < 1e-12;
  os << "RESULT," << (pass ? "pass" : "fail") << ",max_err=" << fmt(worst, 3)
     << "\n";
  if (pass_out) *pass_out = pass;
  return os.str();
}

inline std::string do_mf_limit(const ModelParams& p,
                               const std::vector<double>& n, const Output& o) {
  const KernelValue kv = limiting_fuzzy_kernel(p, n);
  ordered_json j;
  j["meta"] = meta_base("mf-limit");
  j["meta"]["q"] = p.q;
  j["meta"]["beta"] = p.beta;
  j["meta"]["partition"] = p.partition;
  j["n"] = jvec(n, o.precision);
  j["Q"] = jvec(kv.probs, o.precision);
  return j.dump(2) + "\n";
}

inline std::string do_mf_scan(const ModelParams& p, int grid, const Output& o) {
  const ScanResult res = scan_limiting_kernel(p, grid);
  std::ostringstream os;
  ordered_json meta = meta_base("mf-scan");
  meta["q"] = p.q;
  meta["beta"] = p.beta;
  meta["partition"] = p.partition;
  meta["grid"] = grid;
  os << meta_csv(meta);
  for (const ScanJump& j : res.jumps) {
    os << "# jump class=" << j.class_index << " t=" << fmt(j.t, o.precision)
       << " Q_left=";
    for (std::size_t i = 0; i < j.left.probs.size(); ++i)
      os << (i ? "|" : "") << fmt(j.left.probs[i], o.precision);
    os << " Q_right=";
    for (std::size_t i = 0; i < j.right.probs.size(); ++i)
      os << (i ? "|" : "") << fmt(j.right.probs[i], o.precision);
    os << "\n";
  }
  const int s = p.s();
  for (int k = 1; k <= s; ++k) os << "n_" << k << ",";
  for (int k = 1; k <= s; ++k) os << "Q_" << k << ",";
  os << "jump_flag\n";
  for (const ScanRow& row : res.rows) {
    for (double v : row.n) os << fmt(v, o.precision) << ",";
    for (double v : row.Q) os << fmt(v, o.precision) << ",";
    os << (row.jump_flag ? 1 : 0) << "\n";
  }
  return os.str();
}

inline std::string do_mc_occupation(int q, double beta, std::int64_t N,
                                    std::int64_t sweeps, std::int64_t burn_in,
                                    int replicas, std::uint64_t seed,
                                    int threads, const Output& o) {
  const OccupationSamples samples =
      estimate_occupation(q, beta, N, sweeps, burn_in, replicas, seed, threads);
  std::ostringstream os;
  ordered_json meta = meta_base("mc-occupation");
  meta["q"] = q;
  meta["beta"] = beta;
  meta["N"] = N;
  meta["sweeps"] = sweeps;
  meta["burn_in"] = burn_in;
  meta["replicas"] = replicas;
  meta["seed"] = seed;
  meta["rng"] = kRngName;
  os << meta_csv(meta);
  os << "replica,sweep";
  for (int i = 1; i <= q; ++i) os << ",frac_" << i;
  os << "\n";
  for (int j = 0; j < samples.replicas; ++j)
    for (std::int64_t t = 0; t < samples.per_replica; ++t) {
      os << j << "," << t;
      for (double v : samples.sample(j, t)) os << "," << fmt(v, o.precision);
      os << "\n";
    }
  return os.str();
}

inline std::string do_mc_kernel(const ModelParams& p, std::int64_t N,
                                const std::vector<std::int64_t>& counts,
                                std::int64_t sweeps, std::uint64_t seed,
                                const Output& o) {
  EmpiricalCounts c{N, counts};
  const KernelValue kv = estimate_kernel(p, N, c, sweeps, seed);
  ordered_json j;
  j["meta"] = meta_base("mc-kernel");
  j["meta"]["q"] = p.q;
  j["meta"]["beta"] = p.beta;
  j["meta"]["partition"] = p.partition;
  j["meta"]["N"] = N;
  j["meta"]["counts"] = counts;
  j["meta"]["sweeps"] = sweeps;
  j["meta"]["seed"] = seed;
  j["meta"]["rng"] = kRngName;
  j["probs"] = jvec(kv.probs, o.precision);
  return j.dump(2) + "\n";
}

// ---- verify suites ----

inline std::string do_verify_typicality(const Output& o, bool* pass_out) {
  ordered_json j;
  j["meta"] = meta_base("verify");
  j["suite"] = "typicality";
  ordered_json failures = ordered_json::array();
  std::int64_t points = 0;
  for (int q = 3; q <= 8; ++q) {
    const double hi = 3.0 * beta_c(q);
    for (int r = 2; r < q; ++r) {
      for (int i = 0; i < 50; ++i) {
        const double beta =
            0.1 * std::pow(hi / 0.1, static_cast<double>(i) / 49.0);
        const TypicalityResult res = typicality_check(q, r, beta);
        ++points;
        if (!res.holds) {
          ordered_json f;
          f["q"] = q;
          f["r"] = r;
          f["beta"] = jnum(beta, o.precision);
          f["case"] = res.case_id;
          failures.push_back(f);
        }
      }
    }
  }
  j["points"] = points;
  j["failures"] = failures;
  j["pass"] = failures.empty();
  if (pass_out) *pass_out = failures.empty();
  return j.dump(2) + "\n";
}

inline std::string do_verify_inequalities(const Output& o, bool* pass_out) {
  const InequalityReport rep = auxiliary_inequalities();
  ordered_json j;
  j["meta"] = meta_base("verify");
  j["suite"] = "inequalities";
  ordered_json items = ordered_json::array();
  for (const auto& it : rep.items) {
    ordered_json e;
    e["name"] = it.name;
    e["points"] = it.points;
    e["margin"] = jnum(it.margin, o.precision);
    e["pass"] = it.pass;
    items.push_back(e);
  }
  j["items"] = items;
  j["pass"] = rep.all_pass;
  if (pass_out) *pass_out = rep.all_pass;
  return j.dump(2) + "\n";
}

struct JumpCaseReport {
  bool pass = true;
  ordered_json detail;
};

inline JumpCaseReport verify_jump_case(int q, const std::vector<int>& part,
                                       double beta, int expected_jumps,
                                       int grid, const Output& o) {
  const ModelParams p = make_params(q, beta, part);
  const ScanResult res = scan_limiting_kernel(p, grid);
  JumpCaseReport rep;
  rep.detail["q"] = q;
  rep.detail["partition"] = part;
  rep.detail["beta"] = beta;
  rep.detail["expected_jumps"] = expected_jumps;
  rep.detail["found_jumps"] = static_cast<int>(res.jumps.size());
  rep.pass = static_cast<int>(res.jumps.size()) == expected_jumps;

  // data-driven cross-check: cells with a large first-difference must be
  // exactly the flagged ones
  int large_cells = 0;
  for (std::size_t i = 1; i < res.rows.size(); ++i) {
    double diff = 0.0;
    for (std::size_t k = 0; k < res.rows[i].Q.size(); ++k)
      diff = std::max(diff,
                      std::fabs(res.rows[i].Q[k] - res.rows[i - 1].Q[k]));
    if (diff > 1e-3) {
      ++large_cells;
      if (!res.rows[i].jump_flag) rep.pass = false;
    }
  }
  rep.detail["large_diff_cells"] = large_cells;
  if (large_cells != expected_jumps) rep.pass = false;

  ordered_json jump_list = ordered_json::array();
  for (const ScanJump& jump : res.jumps) {
    const int k = jump.class_index - 1;
    const int r = part[static_cast<std::size_t>(k)];
    // one-sided kernel values straight from the two-sided C evaluation
    const KernelValue lo = limiting_kernel_one_sided(p, jump.n, jump.class_index,
                                                     jump.class_index != 1);
    const KernelValue hi = limiting_kernel_one_sided(p, jump.n, jump.class_index,
                                                     jump.class_index == 1);
    double dev = 0.0;
    for (std::size_t i = 0; i < lo.probs.size(); ++i) {
      dev = std::max(dev, std::fabs(lo.probs[i] - jump.left.probs[i]));
      dev = std::max(dev, std::fabs(hi.probs[i] - jump.right.probs[i]));
    }
    if (dev > 1e-10) rep.pass = false;
    const double expected_loc = beta_c(r) / beta;
    ordered_json e;
    e["class"] = jump.class_index;
    e["t"] = jnum(jump.t, o.precision);
    e["location_error"] =
        jnum(std::fabs((jump.class_index == 1 ? jump.t : jump.n[static_cast<std::size_t>(k)]) -
                       expected_loc),
             3);
    e["one_sided_dev"] = jnum(dev, 3);
    jump_list.push_back(e);
  }
  rep.detail["jumps"] = jump_list;
  rep.detail["pass"] = rep.pass;
  return rep;
}

inline std::string do_verify_jumps(const Output& o, bool* pass_out) {
  ordered_json j;
  j["meta"] = meta_base("verify");
  j["suite"] = "jumps";
  ordered_json cases = ordered_json::array();
  bool all = true;
  const int grid = 10000;
  for (const auto& [part, beta, expect] :
       std::vector<std::tuple<std::vector<int>, double, int>>{
           {{3, 1}, 3.0, 1}, {{2, 1, 1}, 3.0, 0}, {{3, 1}, 2.0, 0}}) {
    const JumpCaseReport rep = verify_jump_case(4, part, beta, expect, grid, o);
    cases.push_back(rep.detail);
    all = all && rep.pass;
  }
  j["cases"] = cases;
  j["pass"] = all;
  if (pass_out) *pass_out = all;
  return j.dump(2) + "\n";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args,
               std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"fuzzy Potts model kernels on trees and complete graphs"};
  app.name("fuzzy-potts");
  app.require_subcommand(1);

  detail::Output output;
  int exit_code = 0;
  bool suite_pass = true;

  // tree-gap
  auto* tg = app.add_subcommand(
      "tree-gap", "wired/free conditional gap at the regular-tree fixed point");
  detail::ParamArgs tg_params;
  tg_params.add(tg);
  int tg_d = 2, tg_extra = 0;
  double tg_tol = 1e-6;
  tg->add_option("--d", tg_d, "children per interior node")->check(CLI::Range(1, 1 << 20));
  tg->add_option("--extra-children", tg_extra, "further root children pinned to class 1");
  tg->add_option("--tol", tg_tol, "fixed-point residual tolerance");
  detail::add_common(tg, &output);
  tg->callback([&] {
    output.emit(detail::do_tree_gap(tg_params.resolve(), tg_d, tg_extra, tg_tol,
                                    output),
                out);
  });

  // tree-critical
  auto* tc = app.add_subcommand("tree-critical",
                                "onset of a nontrivial boundary-weight fixed point");
  int tc_d = 2, tc_q = 3;
  double tc_tol = 1e-6;
  tc->add_option("--d", tc_d, "children per interior node")->required();
  tc->add_option("--q", tc_q, "number of spin states")->required();
  tc->add_option("--tol", tc_tol, "bracket width");
  detail::add_common(tc, &output);
  tc->callback([&] {
    output.emit(detail::do_tree_critical(tc_d, tc_q, tc_tol, output), out);
  });

  // mf-kernel
  auto* mk = app.add_subcommand("mf-kernel",
                                "exact finite-N conditional class distribution");
  detail::ParamArgs mk_params;
  mk_params.add(mk);
  std::int64_t mk_n = 0;
  std::vector<std::int64_t> mk_counts;
  mk->add_option("--N", mk_n, "system size")->required();
  mk->add_option("--counts", mk_counts, "class counts m_1,...,m_s of the conditioning")
      ->delimiter(',')
      ->required();
  detail::add_common(mk, &output);
  mk->callback([&] {
    output.emit(detail::do_mf_kernel(mk_params.resolve(), mk_n, mk_counts, output),
                out);
  });

  // mf-oracle-check
  auto* oc = app.add_subcommand("mf-oracle-check",
                                "kernel vs. enumeration oracle on a desk-scale grid");
  std::string oc_grid = "small";
  oc->add_option("--grid", oc_grid, "grid size: small (N<=6) or full (N<=8)")
      ->check(CLI::IsMember({"small", "full"}));
  detail::add_common(oc, &output);
  oc->callback([&] {
    bool pass = true;
    output.emit(detail::do_mf_oracle_check(oc_grid, output, &pass), out);
    if (!pass) exit_code = 1;
  });

  // mf-limit
  auto* ml = app.add_subcommand("mf-limit", "limiting conditional class distribution");
  detail::ParamArgs ml_params;
  ml_params.add(ml);
  std::vector<double> ml_n;
  ml->add_option("--n", ml_n, "class frequencies n_1,...,n_s")
      ->delimiter(',')
      ->required();
  detail::add_common(ml, &output);
  ml->callback([&] {
    output.emit(detail::do_mf_limit(ml_params.resolve(), ml_n, output), out);
  });

  // mf-scan
  auto* ms = app.add_subcommand(
      "mf-scan", "scan the limiting kernel along n_1 with jump flags");
  detail::ParamArgs ms_params;
  ms_params.add(ms);
  int ms_grid = 2000;
  ms->add_option("--grid", ms_grid, "number of grid points")->check(CLI::Range(2, 100000000));
  detail::add_common(ms, &output);
  ms->callback([&] {
    output.emit(detail::do_mf_scan(ms_params.resolve(), ms_grid, output), out);
  });

  // mc-occupation
  auto* mo = app.add_subcommand("mc-occupation",
                                "heat-bath samples of the occupation vector");
  detail::ParamArgs mo_params;
  mo_params.add(mo, /*with_partition=*/false);
  std::int64_t mo_n = 1000, mo_sweeps = 1000, mo_burn = 1000;
  int mo_replicas = 8, mo_threads = detail::env_threads();
  std::uint64_t mo_seed = 1;
  mo->add_option("--N", mo_n, "system size")->required();
  mo->add_option("--sweeps", mo_sweeps, "recorded sweeps per replica");
  mo->add_option("--burn-in", mo_burn, "discarded sweeps per replica");
  mo->add_option("--replicas", mo_replicas, "independent replicas");
  mo->add_option("--seed", mo_seed, "RNG seed");
  mo->add_option("--threads", mo_threads,
                 "worker threads (default: FUZZY_POTTS_THREADS or hardware)");
  detail::add_common(mo, &output);
  mo->callback([&] {
    int q = 0;
    double beta = 0.0;
    mo_params.resolve_q_beta(&q, &beta);
    output.emit(detail::do_mc_occupation(q, beta, mo_n, mo_sweeps, mo_burn,
                                         mo_replicas, mo_seed, mo_threads, output),
                out);
  });

  // mc-kernel
  auto* mck = app.add_subcommand("mc-kernel",
                                 "conditional-kernel estimate by constrained heat bath");
  detail::ParamArgs mck_params;
  mck_params.add(mck);
  std::int64_t mck_n = 0, mck_sweeps = 10000;
  std::vector<std::int64_t> mck_counts;
  std::uint64_t mck_seed = 1;
  mck->add_option("--N", mck_n, "system size")->required();
  mck->add_option("--counts", mck_counts, "class counts of the conditioning")
      ->delimiter(',')
      ->required();
  mck->add_option("--sweeps", mck_sweeps, "recorded sweeps");
  mck->add_option("--seed", mck_seed, "RNG seed");
  detail::add_common(mck, &output);
  mck->callback([&] {
    output.emit(detail::do_mc_kernel(mck_params.resolve(), mck_n, mck_counts,
                                     mck_sweeps, mck_seed, output),
                out);
  });

  // verify
  auto* vf = app.add_subcommand("verify", "run a verification suite");
  std::string vf_suite;
  vf->add_option("--suite", vf_suite, "typicality | inequalities | jumps")
      ->check(CLI::IsMember({"typicality", "inequalities", "jumps"}))
      ->required();
  detail::add_common(vf, &output);
  vf->callback([&] {
    std::string payload;
    if (vf_suite == "typicality")
      payload = detail::do_verify_typicality(output, &suite_pass);
    else if (vf_suite == "inequalities")
      payload = detail::do_verify_inequalities(output, &suite_pass);
    else
      payload = detail::do_verify_jumps(output, &suite_pass);
    output.emit(payload, out);
    if (!suite_pass) exit_code = 1;
  });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("fuzzy-potts");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}

}  // namespace fuzzy_potts::cli

#endif
