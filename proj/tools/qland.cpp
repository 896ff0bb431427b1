// Batch experiment driver for the modulated-Landau reduction engine.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "qland/config.hpp"
#include "qland/constants.hpp"
#include "qland/oracle.hpp"
#include "qland/serialize.hpp"

using namespace qland;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::int64_t seed = -1;
  int jobs = 0;
};

ExperimentConfig load_cfg(const CommonArgs& args) {
  ExperimentConfig cfg = load_experiment_config(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (args.seed >= 0) cfg.seed = static_cast<std::uint64_t>(args.seed);
  if (args.jobs > 0) cfg.jobs = args.jobs;
  std::filesystem::create_directories(cfg.out_dir);
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

int cmd_constants(const CommonArgs& args) {
  ExperimentConfig cfg = load_cfg(args);
  std::string csv = std::string(kConstantsCsvHeader) + "\n";
  for (double w : cfg.omega_list) {
    std::vector<double> om{w};
    csv += constants_csv_row(step_constants(cfg.f, om, cfg.B0)) + "\n";
  }
  write_file(cfg.out_dir + "/constants.csv", csv);
  std::cout << csv;
  return 0;
}

int cmd_reduce(const CommonArgs& args) {
  ExperimentConfig cfg = load_cfg(args);
  json all = json::array();
  std::string conv = "omega,eps,m,q_norm_before,q_norm_after,chi_norm,min_divisor,"
                     "ntilde_a,ntilde_c\n";
  bool any_resonant = false, any_diverged = false;
  for (double w : cfg.omega_list) {
    std::vector<double> om{w};
    for (double eps : cfg.eps_list) {
      Schedule sched = make_schedule(std::max(eps, 1e-16), cfg.sigma0, cfg.M_max);
      KamResult res;
      if (cfg.gauge == Gauge::landau) {
        res = kam_reduce(build_landau(cfg.B0, cfg.f, eps), om, sched);
      } else {
        res = kam_reduce_nondegenerate(build_symmetric(cfg.B0, cfg.f, eps), om, sched);
      }
      json entry;
      entry["omega"] = w;
      entry["eps"] = eps;
      entry["result"] = to_json(res, cfg.emit_generator);
      all.push_back(entry);
      for (const auto& d : res.steps) {
        conv += fmt_g(w) + "," + fmt_g(eps) + "," + std::to_string(d.m) + "," +
                fmt_g(d.q_norm_before) + "," + fmt_g(d.q_norm_after) + "," +
                fmt_g(d.chi_norm) + "," + fmt_g(d.min_divisor) + "," +
                fmt_g(d.ntilde_a) + "," + fmt_g(d.ntilde_c) + "\n";
      }
      if (res.status == KamResult::Status::resonant) any_resonant = true;
      if (res.status == KamResult::Status::diverged ||
          res.status == KamResult::Status::degenerate)
        any_diverged = true;
      std::cout << "omega=" << fmt_g(w) << " eps=" << fmt_g(eps) << " -> "
                << to_json(res)["status"].get<std::string>()
                << " nu1=" << fmt_g(res.normal_form.a)
                << " c=" << fmt_g(res.normal_form.c) << "\n";
    }
  }
  write_file(cfg.out_dir + "/reduce.json", all.dump(2) + "\n");
  write_file(cfg.out_dir + "/convergence.csv", conv);
  if (any_resonant) return 3;
  if (any_diverged) return 4;
  return 0;
}

int cmd_landau_growth(const CommonArgs& args) {
  ExperimentConfig cfg = load_cfg(args);
  double w = cfg.omega_list.front();
  std::vector<double> om{w};
  double cw;
  try {
    cw = c_omega(cfg.f, om, cfg.B0);
  } catch (const resonance_error& e) {
    std::cerr << "resonant frequency: " << e.what() << "\n";
    return 3;
  }
  IntegrateOptions io;
  io.with_fundamental = false;
  io.store_stride = 25;
  std::string csv = "gauge,eps,omega,slope,stderr,predicted,ratio\n";
  bool first = true;
  for (double eps : cfg.eps_list) {
    GaugeSpec spec{Gauge::landau, cfg.B0, cfg.f, eps, om};
    double rate = std::max(2.0 * cfg.B0, std::abs(w));
    double dt = cfg.dt > 0.0 ? cfg.dt : 0.04 / rate;
    auto traj = integrate_flow(spec, cfg.x0, cfg.T, dt, io);
    auto d = drift_rate(traj, 0);
    double predicted = -4.0 / cfg.B0 * cw * eps * eps * cfg.x0(2);
    double ratio = predicted != 0.0 ? d.slope / predicted : 0.0;
    csv += std::string("landau,") + fmt_g(eps) + "," + fmt_g(w) + "," + fmt_g(d.slope) +
           "," + fmt_g(d.stderr_slope) + "," + fmt_g(predicted) + "," + fmt_g(ratio) + "\n";
    if (first) {
      write_file(cfg.out_dir + "/trajectory_landau.csv", trajectory_csv(traj, spec));
      first = false;
    }
  }
  // symmetric-gauge control: same parameters, no drift expected
  {
    double eps = cfg.eps_list.front();
    GaugeSpec spec{Gauge::symmetric, cfg.B0, cfg.f, eps, om};
    double rate = std::max(2.0 * cfg.B0, std::abs(w));
    double dt = cfg.dt > 0.0 ? cfg.dt : 0.04 / rate;
    auto traj = integrate_flow(spec, cfg.x0, cfg.T, dt, io);
    auto d = drift_rate(traj, 0);
    csv += std::string("symmetric,") + fmt_g(eps) + "," + fmt_g(w) + "," +
           fmt_g(d.slope) + "," + fmt_g(d.stderr_slope) + ",0,0\n";
  }
  write_file(cfg.out_dir + "/growth.csv", csv);
  std::cout << csv;
  return 0;
}

int cmd_symmetric_bounded(const CommonArgs& args) {
  ExperimentConfig cfg = load_cfg(args);
  double w = cfg.omega_list.front();
  std::vector<double> om{w};
  IntegrateOptions io;
  io.with_fundamental = false;
  io.store_stride = 50;
  std::string csv = "eps,omega,T,sup,growth_exponent\n";
  bool first = true;
  for (double eps : cfg.eps_list) {
    GaugeSpec spec{Gauge::symmetric, cfg.B0, cfg.f, eps, om};
    double rate = std::max(2.0 * cfg.B0, std::abs(w));
    double dt = cfg.dt > 0.0 ? cfg.dt : 0.04 / rate;
    auto traj = integrate_flow(spec, cfg.x0, cfg.T, dt, io);
    auto b = boundedness_metric(traj);
    csv += fmt_g(eps) + "," + fmt_g(w) + "," + fmt_g(cfg.T) + "," + fmt_g(b.sup) + "," +
           fmt_g(b.growth_exponent) + "\n";
    if (first) {
      write_file(cfg.out_dir + "/trajectory_symmetric.csv", trajectory_csv(traj, spec));
      first = false;
    }
  }
  write_file(cfg.out_dir + "/bounded.csv", csv);
  std::cout << csv;
  return 0;
}

int cmd_measure(const CommonArgs& args) {
  ExperimentConfig cfg = load_cfg(args);
  if (cfg.n_samples < 1) {
    std::cerr << "measure: n_samples must be >= 1\n";
    return 2;
  }
  std::string csv = "eps,N,excluded,fraction,ci_halfwidth\n";
  for (double eps : cfg.eps_list) {
    auto est = measure_excluded(eps, cfg.B0, cfg.f, cfg.n_samples, cfg.seed,
                                std::max(1, cfg.jobs), cfg.sigma0, cfg.M_max);
    csv += fmt_g(eps) + "," + std::to_string(est.total) + "," +
           std::to_string(est.excluded) + "," + fmt_g(est.fraction) + "," +
           fmt_g(est.ci_halfwidth) + "\n";
  }
  write_file(cfg.out_dir + "/measure.csv", csv);
  std::cout << csv;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduction engine for the time-modulated Landau Hamiltonian"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "experiment config file")->required();
    sub->add_option("--out", args.out_dir, "output directory (overrides config)");
    sub->add_option("--seed", args.seed, "RNG seed (overrides config)");
    sub->add_option("--jobs", args.jobs, "worker threads for sweeps");
  };

  auto* c1 = app.add_subcommand("constants", "closed-form constants table over omega");
  auto* c2 = app.add_subcommand("reduce", "KAM reduction, normal form and convergence data");
  auto* c3 = app.add_subcommand("landau-growth", "drift experiment in the Landau gauge");
  auto* c4 = app.add_subcommand("symmetric-bounded", "boundedness run in the symmetric gauge");
  auto* c5 = app.add_subcommand("measure", "Monte-Carlo excluded-frequency fraction");
  for (auto* s : {c1, c2, c3, c4, c5}) add_common(s);

  CLI11_PARSE(app, argc, argv);

  try {
    if (c1->parsed()) return cmd_constants(args);
    if (c2->parsed()) return cmd_reduce(args);
    if (c3->parsed()) return cmd_landau_growth(args);
    if (c4->parsed()) return cmd_symmetric_bounded(args);
    if (c5->parsed()) return cmd_measure(args);
  } catch (const config_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const resonance_error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 4;
  }
  return 0;
}
