/**
 * renewal-ldp: command-line front door.
 *
 *   validate       assumption checks and derived constants
 *   free-energy    (k, z, nu, theta, on_theta) over a k-grid
 *   rate           (w, I, branch, dual_k) over a w-grid
 *   phase-diagram  (beta, rho, regime) sweep plus beta_c / w_c / order
 *   exact          finite-horizon DP probabilities and empirical rates
 *   sample         exact conditioned path draws
 *   verify         self-contained oracle suite; nonzero exit on failure
 *
 * Exit codes: 0 ok, 1 verification failure, 2 configuration error,
 * 3 numeric non-convergence. Output is byte-identical for identical
 * configuration and seed, independent of RENEWAL_LDP_THREADS.
 */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "renewal_ldp/exact.hpp"
#include "renewal_ldp/io.hpp"
#include "renewal_ldp/rate.hpp"
#include "renewal_ldp/sampler.hpp"

using namespace renewal_ldp;

namespace {

int thread_budget() {
  if (const char* env = std::getenv("RENEWAL_LDP_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? int(hc) : 1;
}

/// Deterministic parallel map: results land in index order regardless of
/// scheduling.
template <typename F>
void parallel_for(std::size_t n, const F& body) {
  const int workers = std::min<std::size_t>(thread_budget(), n ? n : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = std::size_t(w); i < n; i += std::size_t(workers)) {
        body(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

struct Options {
  std::string model_file;
  std::string preset;
  std::string params = "{}";
  std::string reward = "count";
  std::string k_grid, w_grid, beta_grid;
  std::string t_list;
  double delta = 0.1;
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

Model build_model(const Options& opt) {
  if (!opt.model_file.empty() && !opt.preset.empty()) {
    throw ConfigError("--model and --preset are mutually exclusive");
  }
  if (!opt.model_file.empty()) return load_model_file(opt.model_file);
  if (!opt.preset.empty()) {
    json j;
    j["preset"] = {{"name", opt.preset},
                   {"params", json::parse(opt.params)},
                   {"reward", opt.reward}};
    try {
      return model_from_json(j);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad --params: ") + e.what());
    }
  }
  throw ConfigError("need --model FILE or --preset NAME");
}

std::vector<std::int64_t> parse_t_list(const std::string& spec) {
  std::vector<std::int64_t> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw ConfigError("bad --t list entry '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("--t needs a comma-separated list");
  return out;
}

void emit(const Options& opt, const TableWriter& table) {
  const std::string s = table.str();
  if (opt.out.empty()) {
    std::cout << s;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + opt.out + "'");
  f << s;
}

std::string fmt_vec(const Vec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += (i ? ";" : "") + format_real(v[i]);
  }
  return s;
}

int cmd_validate(const Options& opt) {
  const Model m = build_model(opt);
  const ValidationReport rep = m.validate();
  TableWriter t({"field", "value"}, opt.format);
  t.add_row({"passed", rep.passed ? "true" : "false"});
  t.add_row({"ell", format_real(rep.ell)});
  t.add_row({"z_sup", format_real(rep.z_sup)});
  t.add_row({"reward_bound", format_real(rep.reward_bound)});
  t.add_row({"r", fmt_vec(rep.r)});
  t.add_row({"support_gcd", std::to_string(rep.support_gcd)});
  t.add_row({"s_min", std::to_string(rep.s_min)});
  t.add_row({"dim", std::to_string(rep.dim)});
  for (const std::string& msg : rep.messages) t.add_row({"message", msg});
  emit(opt, t);
  return rep.passed ? 0 : 1;
}

int cmd_free_energy(const Options& opt) {
  const Model m = build_model(opt);
  if (m.dim() != 1) {
    throw ConfigError("free-energy sweep needs scalar rewards");
  }
  const std::vector<double> ks =
      parse_grid(opt.k_grid.empty() ? "-2:2:41" : opt.k_grid);
  std::vector<FreeEnergyPoint> pts(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) {
    pts[i] = free_energy(m, std::vector<double>{ks[i]});
  });
  TableWriter t({"k", "z", "nu", "theta", "on_theta", "subdiff"}, opt.format);
  for (const FreeEnergyPoint& p : pts) {
    const char* sd = p.subdiff == SubdiffKind::point_nu ? "point_nu"
                     : p.subdiff == SubdiffKind::point_r ? "point_r"
                                                         : "segment";
    t.add_row({format_real(p.k[0]), format_real(p.z),
               p.nu ? format_real((*p.nu)[0]) : "",
               format_real(p.theta_value), p.on_theta ? "true" : "false",
               sd});
  }
  emit(opt, t);
  return 0;
}

int cmd_rate(const Options& opt) {
  const Model m = build_model(opt);
  if (m.dim() != 1) throw ConfigError("rate sweep needs scalar rewards");
  const std::vector<double> ws =
      parse_grid(opt.w_grid.empty() ? "0.05:0.95:19" : opt.w_grid);
  std::vector<RateResult> rs(ws.size());
  parallel_for(ws.size(), [&](std::size_t i) {
    rs[i] = rate_at(m, std::vector<double>{ws[i]});
  });
  TableWriter t({"w", "I", "branch", "dual_k"}, opt.format);
  for (const RateResult& r : rs) {
    t.add_row({format_real(r.w[0]), format_real(r.value),
               to_string(r.branch),
               r.dual_k ? format_real((*r.dual_k)[0]) : ""});
  }
  emit(opt, t);
  return 0;
}

int cmd_phase_diagram(const Options& opt) {
  const Model m = build_model(opt);
  if (!m.base() || !m.has_tail()) {
    throw ConfigError("phase-diagram needs a preset with base law and tail");
  }
  const BaseLaw& base = *m.base();
  const std::vector<double> betas =
      parse_grid(opt.beta_grid.empty() ? "-1:1:21" : opt.beta_grid);

  // rebuild the constant-potential count model at each beta
  const auto at_beta = [&](double beta) {
    WeightModel w;
    w.head.resize(base.p_head.size());
    for (std::size_t i = 0; i < base.p_head.size(); ++i) {
      w.head[i] = std::exp(beta) * base.p_head[i];
    }
    TailSpec wt = *base.p_tail;
    wt.amplitude *= std::exp(beta);
    w.tail = wt;
    w.dim = 1;
    BaseLaw b = base;
    b.v_head.assign(base.p_head.size(), beta);
    b.v_tail = beta;
    return Model(std::move(w), unit_reward(std::int64_t(base.p_head.size())),
                 std::move(b));
  };

  const NtSuite ref(at_beta(0.0), 0.0);
  std::vector<std::string> rho(betas.size()), regime(betas.size());
  parallel_for(betas.size(), [&](std::size_t i) {
    const double beta = betas[i];
    const NtSuite nt(at_beta(beta), beta);
    rho[i] = format_real(nt.rho());
    regime[i] = beta < nt.beta_c()    ? "subcritical"
                : beta == nt.beta_c() ? "critical"
                                      : "supercritical";
  });

  TableWriter t({"beta", "rho", "regime"}, opt.format);
  t.add_meta("beta_c", format_real(ref.beta_c()));
  t.add_meta("w_c", format_real(ref.w_c()));
  t.add_meta("transition_order", to_string(ref.order()));
  for (std::size_t i = 0; i < betas.size(); ++i) {
    t.add_row({format_real(betas[i]), rho[i], regime[i]});
  }
  emit(opt, t);
  return 0;
}

int cmd_exact(const Options& opt) {
  const Model m = build_model(opt);
  const std::vector<std::int64_t> ts =
      parse_t_list(opt.t_list.empty() ? "100" : opt.t_list);
  TableWriter t({"t", "n", "w", "probability", "empirical_rate"}, opt.format);
  for (std::int64_t horizon : ts) {
    const DistW d = dist_w(m, horizon);
    for (std::size_t i = 0; i < d.p.size(); ++i) {
      if (d.log_p[i] == kNegInf) continue;
      const std::int64_t n = d.n_min + std::int64_t(i);
      t.add_row({std::to_string(horizon), std::to_string(n),
                 format_real(double(n) / double(horizon)),
                 format_real(d.p[i]),
                 format_real(-d.log_p[i] / double(horizon))});
    }
  }
  emit(opt, t);
  return 0;
}

int cmd_sample(const Options& opt) {
  const Model m = build_model(opt);
  const std::vector<std::int64_t> ts =
      parse_t_list(opt.t_list.empty() ? "100" : opt.t_list);
  std::vector<std::string> cols{"t", "index", "n_renewals"};
  for (int i = 0; i < m.dim(); ++i) cols.push_back("W" + std::to_string(i));
  TableWriter t(cols, opt.format);
  t.add_meta("seed", std::to_string(opt.seed));
  t.add_meta("rng", "mt19937_64/splitmix64-stream");
  for (std::int64_t horizon : ts) {
    const ZcTable zc = zc_table(m, horizon);
    std::vector<PathSample> paths(std::size_t(opt.samples));
    parallel_for(paths.size(), [&](std::size_t i) {
      paths[i] = sample_path(m, zc, horizon,
                             path_seed(opt.seed, std::uint64_t(i)));
    });
    for (std::size_t i = 0; i < paths.size(); ++i) {
      std::vector<std::string> row{
          std::to_string(horizon), std::to_string(i),
          std::to_string(paths[i].waiting_times.size())};
      for (int c = 0; c < m.dim(); ++c) {
        row.push_back(format_real(paths[i].rewards_total[c]));
      }
      t.add_row(row);
    }
  }
  emit(opt, t);
  return 0;
}

int cmd_verify(const Options& opt) {
  const Model m = build_model(opt);
  int failures = 0;
  const auto check = [&](bool ok, const std::string& what) {
    std::cout << (ok ? "ok  " : "FAIL") << "  " << what << "\n";
    if (!ok) ++failures;
  };

  const ValidationReport rep = m.validate();
  check(rep.passed, "assumptions hold");
  if (!rep.passed) return 1;

  const double z0 = free_energy(m, std::vector<double>{0.0}).z;

  // small-horizon triangle
  if (m.dim() == 1) {
    const std::int64_t t = 12;
    const EnumeratedMarginal e = enumerate_marginal(m, t);
    if (e.zc > 0.0) {
      const ZcTable zc = zc_table(m, t);
      check(std::abs(std::log(e.zc) - zc.log_zc[t]) <= 1e-12,
            "enumeration matches the partition recursion");
      bool integer_ok = true;
      try {
        const DistW d = dist_w(m, t);
        double mass = 0.0;
        for (double p : d.p) mass += p;
        check(std::abs(mass - 1.0) <= 1e-10, "reward DP normalizes");
      } catch (const std::invalid_argument&) {
        integer_ok = false;
      }
      if (!integer_ok) {
        std::cout << "skip  reward DP (non-integer rewards)\n";
      }
    }
  }

  // free energy residual and convexity spot checks
  bool resid_ok = true, convex_ok = true;
  for (double k : {-1.0, -0.3, 0.2, 0.8}) {
    const FreeEnergyPoint fe =
        free_energy(m, std::vector<double>(std::size_t(m.dim()), k));
    if (!fe.on_theta) {
      const SeriesValue g = grand_sum(
          m, std::vector<double>(std::size_t(m.dim()), k), fe.z);
      resid_ok = resid_ok && std::abs(g.value - 1.0) <= 1e-10;
    }
  }
  for (double k : {-0.8, 0.0, 0.6}) {
    const double za =
        free_energy(m, std::vector<double>(std::size_t(m.dim()), k - 0.2)).z;
    const double zb =
        free_energy(m, std::vector<double>(std::size_t(m.dim()), k + 0.2)).z;
    const double zm =
        free_energy(m, std::vector<double>(std::size_t(m.dim()), k)).z;
    convex_ok = convex_ok && zm <= 0.5 * (za + zb) + 1e-12;
  }
  check(resid_ok, "free-energy root residual <= 1e-10");
  check(convex_ok, "free energy midpoint-convex");

  // sampler determinism
  {
    const std::int64_t t = 40;
    const ZcTable zc = zc_table(m, t);
    const PathSample a = sample_path(m, zc, t, path_seed(opt.seed, 0));
    const PathSample b = sample_path(m, zc, t, path_seed(opt.seed, 0));
    check(a.waiting_times == b.waiting_times, "sampler deterministic");
    std::int64_t total = 0;
    for (std::int64_t s : a.waiting_times) total += s;
    check(total == t, "sampled path partitions the horizon");
  }

  // rate non-negativity and Fenchel-Young at the mean
  if (m.dim() == 1) {
    const FreeEnergyPoint fe = free_energy(m, std::vector<double>{0.3});
    if (!fe.on_theta) {
      try {
        const RateResult r = rate_at(m, *fe.nu);
        const double expect = (*fe.nu)[0] * 0.3 - fe.z + z0;
        check(std::abs(r.value - expect) <= 1e-8 * (1.0 + std::abs(expect)),
              "duality closure at nu(0.3)");
      } catch (const NonConvergence&) {
        check(false, "duality closure at nu(0.3)");
      }
    }
  }

  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"large-deviation analysis of constrained renewal models"};
  app.require_subcommand(1);
  Options opt;

  app.add_option("--model", opt.model_file, "model JSON file");
  app.add_option("--preset", opt.preset,
                 "preset name (poland_scheraga, cluster, wsme, zeta, "
                 "geometric, dirac)");
  app.add_option("--params", opt.params, "preset parameters as JSON");
  app.add_option("--reward", opt.reward, "preset reward: count/extra/joint");
  app.add_option("--out", opt.out, "output file (default stdout)");
  app.add_option("--format", opt.format, "csv or json");
  app.add_option("--seed", opt.seed, "RNG seed");

  CLI::App* validate = app.add_subcommand("validate", "check assumptions");
  CLI::App* fe = app.add_subcommand("free-energy", "tabulate z over a grid");
  fe->add_option("--k-grid", opt.k_grid, "a:b:n");
  CLI::App* rate = app.add_subcommand("rate", "tabulate I over a grid");
  rate->add_option("--w-grid", opt.w_grid, "a:b:n");
  CLI::App* phase = app.add_subcommand("phase-diagram", "order parameter");
  phase->add_option("--beta", opt.beta_grid, "a:b:n");
  CLI::App* exact = app.add_subcommand("exact", "finite-horizon DP");
  exact->add_option("--t", opt.t_list, "comma-separated horizons");
  CLI::App* sample = app.add_subcommand("sample", "exact path draws");
  sample->add_option("--t", opt.t_list, "comma-separated horizons");
  sample->add_option("--samples", opt.samples, "paths per horizon");
  sample->add_option("--delta", opt.delta, "deviation threshold");
  CLI::App* verify = app.add_subcommand("verify", "oracle self-checks");
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(opt);
    if (fe->parsed()) return cmd_free_energy(opt);
    if (rate->parsed()) return cmd_rate(opt);
    if (phase->parsed()) return cmd_phase_diagram(opt);
    if (exact->parsed()) return cmd_exact(opt);
    if (sample->parsed()) return cmd_sample(opt);
    if (verify->parsed()) return cmd_verify(opt);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const NonConvergence& e) {
    std::cerr << "numeric non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
