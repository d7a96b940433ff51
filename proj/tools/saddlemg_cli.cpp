// Experiment driver: symbol analysis, single solves and table presets.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "saddlemg/analysis.hpp"
#include "saddlemg/error.hpp"
#include "saddlemg/experiment.hpp"
#include "saddlemg/hierarchy.hpp"
#include "saddlemg/solver.hpp"

namespace {

using namespace saddlemg;

constexpr int kExitHypothesis = 2;
constexpr int kExitDivergence = 3;

/// Options shared by every subcommand; each maps to a config-file key.
struct Shared {
  std::string config;
  std::string dump_symbols;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App* app, const std::string& key, const std::string& flag, const std::string& help) {
    options[key] = app->add_option(flag, values[key], help);
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config.empty()) apply_config(cfg, read_config_file(config));
    std::map<std::string, std::string> cli;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) cli[key] = values.at(key);
    }
    apply_config(cfg, cli);
    return cfg;
  }
};

void add_common(CLI::App* app, Shared& s) {
  app->add_option("--config", s.config, "Flat key=value configuration file (flags override it)");
  app->add_option("--dump-symbols", s.dump_symbols,
                  "Directory receiving the level symbols as `j re im` text files");
  s.add(app, "problem", "--problem", "elasticity-circulant | elasticity-toeplitz");
  s.add(app, "rho", "--rho", "Coefficient rho of the C block (fractions such as 1/20 accepted)");
  s.add(app, "t", "--t", "Size exponent: n = 2^t (circulant) or 2^t - 1 (Toeplitz)");
  s.add(app, "t_min", "--t-min", "First size exponent of a sweep");
  s.add(app, "t_max", "--t-max", "Last size exponent of a sweep");
  s.add(app, "cycle", "--cycle", "tgm | v | w");
  s.add(app, "omega", "--omega", "Relaxation: a number, adaptive or optimal");
  s.add(app, "finest_omega", "--finest-omega", "Relaxation on the finest level only");
  s.add(app, "projector", "--projector", "Projector for C-hat: full | trivial");
  s.add(app, "eps", "--eps", "Relative residual tolerance");
  s.add(app, "max_iter", "--max-iter", "Maximum number of cycles");
  s.add(app, "output", "--output,-o", "Output file (stdout when empty)");
}

/// Writes to cfg.output when set, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InvalidArgument("cannot write '" + path + "'");
    }
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void dump_symbols(const std::string& dir, const Hierarchy& h) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  for (const auto& lv : h.levels()) {
    const auto& s = lv.system;
    const std::pair<const char*, const TrigPoly*> items[] = {
        {"fA", &s.fA()}, {"fB", &s.fB()}, {"fC", &s.fC()}, {"fChat", &s.fChat()}};
    for (const auto& [name, p] : items) {
      std::ofstream out(std::filesystem::path(dir) /
                        ("level" + std::to_string(lv.index) + "_" + name + ".txt"));
      write_symbol(out, *p);
    }
  }
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  if (std::isfinite(x)) {
    // Annotate only when a small fraction reproduces the value.
    const std::string q = rational_string(x, 10000);
    const auto slash = q.find('/');
    const double v = slash == std::string::npos
                         ? std::stod(q)
                         : std::stod(q.substr(0, slash)) / std::stod(q.substr(slash + 1));
    if (std::abs(v - x) <= 1e-12 * std::max(1.0, std::abs(x))) os << "  # " << q;
  }
  return os.str();
}

int run_analyze(const ExperimentConfig& cfg, const std::string& dump_dir) {
  const double rho = cfg.problem == Problem::elasticity_circulant ? cfg.rho : 0.5;
  const auto s = elasticity_symbols(rho);
  const Projectors p = projectors_for(cfg.projector);
  TheoryReport r = analyze(s.fA, s.fB, s.fC, p);
  // A fixed relaxation is checked in place of the optimal one.
  if (cfg.omega_mode == OmegaMode::fixed) {
    r.verdicts = check_hypotheses(s.fA, s.fB, s.fC, p.pA, p.pC, r.alpha, cfg.omega);
  }
  Sink sink(cfg.output);
  std::ostream& os = sink.get();
  os << "problem=" << to_string(cfg.problem) << "\n";
  os << "rho=" << num(rho) << "\n";
  os << "projector=" << to_string(cfg.projector) << "\n";
  os << "alpha=" << num(r.alpha) << "\n";
  os << "a0_fChat=" << num(r.a0_Chat) << "\n";
  for (int j = -r.fChat.degree(); j <= r.fChat.degree(); ++j) {
    os << "fChat[" << j << "]=" << num(r.fChat.coeff(j).real()) << "\n";
  }
  const auto& k = r.constants;
  os << "kappa_A=" << num(k.kappa_A) << "\n";
  os << "kappa_Chat=" << num(k.kappa_Chat) << "\n";
  os << "kappa_tilde=" << num(k.kappa_tilde()) << "\n";
  os << "gamma_A=" << num(k.gamma_A) << "\n";
  os << "gamma_Chat=" << num(k.gamma_Chat) << "\n";
  os << "gamma_tilde=" << num(k.gamma_tilde()) << "\n";
  os << "omega_upper=" << num(r.omega_hi) << "\n";
  os << "omega_opt=" << num(r.opt.omega) << "\n";
  os << "mu_opt=" << num(r.opt.mu) << "\n";
  os << "limit_fA0_over_fA1=" << num(r.c1) << "\n";
  os << "limit_fB1_over_fB0=" << num(r.c2) << "\n";
  os << "limit_fChat0_over_fChat1=" << num(r.chat_ratio) << "\n";
  for (const auto& v : r.verdicts) {
    os << "check[" << v.name << "]=" << (v.passed ? (v.warning ? "warn" : "pass") : "fail")
       << " value=" << v.value << " witness=" << v.witness;
    if (!v.detail.empty()) os << " (" << v.detail << ")";
    os << "\n";
  }
  if (!dump_dir.empty()) {
    HierarchyOptions ho;
    ho.max_levels = 1;
    ho.validate = false;
    dump_symbols(dump_dir, build_hierarchy(assemble_problem(cfg, cfg.t_min), projectors_for(cfg.projector), ho));
  }
  return all_passed(r.verdicts) ? 0 : kExitHypothesis;
}

int run_solve(const ExperimentConfig& cfg, const std::string& residuals, const std::string& dump_dir) {
  const int t = cfg.t_min;
  const SaddleSystem s = assemble_problem(cfg, t);
  HierarchyOptions ho;
  if (cfg.cycle == CycleKind::tgm) ho.max_levels = 2;
  const Hierarchy h = build_hierarchy(s, projectors_for(cfg.projector), ho);
  dump_symbols(dump_dir, h);
  CycleSpec spec;
  spec.kind = cfg.cycle;
  spec.fixed_omega = resolve_omega(cfg);
  spec.finest_omega = cfg.finest_omega;
  SolveOptions so;
  so.tol = cfg.eps;
  so.max_iter = cfg.max_iter;
  const SolveReport r = solve(h, build_rhs(s, sine_samples(s.size())), spec, so);
  Sink sink(cfg.output);
  sink.get() << "t=" << t << "\nN=" << s.size() << "\nlevels=" << h.depth()
             << "\ncycle=" << to_string(cfg.cycle) << "\niterations=" << r.iterations
             << "\nconverged=" << (r.converged ? "true" : "false")
             << "\nfinal_relres=" << r.history.back() << "\n";
  if (!residuals.empty()) {
    std::ofstream out(residuals);
    if (!out) throw InvalidArgument("cannot write '" + residuals + "'");
    write_residual_csv(out, r);
  }
  return 0;
}

int run_table_cmd(const std::string& preset, const Shared& shared) {
  const ExperimentConfig user = shared.resolve();
  auto cols = table_preset(preset);
  std::vector<TableRow> rows;
  for (auto& c : cols) {
    // Only the sweep range, tolerance and iteration cap may be changed on a preset.
    if (shared.options.at("t")->count() || shared.options.at("t_min")->count() || !shared.config.empty()) {
      c.t_min = user.t_min;
    }
    if (shared.options.at("t")->count() || shared.options.at("t_max")->count() || !shared.config.empty()) {
      c.t_max = user.t_max;
    }
    c.eps = user.eps;
    c.max_iter = user.max_iter;
    auto part = run_table(c);
    for (const auto& r : part) {
      if (!r.error.empty()) std::cerr << "t=" << r.t << ": " << r.error << "\n";
    }
    rows.insert(rows.end(), part.begin(), part.end());
  }
  Sink sink(user.output);
  write_table_csv(sink.get(), rows);
  return 0;
}

int run_curve(const ExperimentConfig& cfg, int points) {
  const double rho = cfg.problem == Problem::elasticity_circulant ? cfg.rho : 0.5;
  const auto s = elasticity_symbols(rho);
  const TheoryReport r = analyze(s.fA, s.fB, s.fC, projectors_for(cfg.projector));
  if (!std::isfinite(r.opt.omega)) throw HypothesisFailure("curve-mu: bound undefined", 0);
  Sink sink(cfg.output);
  std::ostream& os = sink.get();
  os.precision(17);
  const auto& k = r.constants;
  os << "omega,mu,branch_A,branch_Chat,branch_gA,branch_gChat,branch_sqrt\n";
  for (const auto& [w, mu] : mu_curve(k, points)) {
    const double sq = 1.0 - w * (2.0 - w * k.gamma_tilde()) / k.kappa_tilde();
    os << w << ',' << mu << ',' << 1.0 - w / k.kappa_A << ',' << 1.0 - w / k.kappa_Chat << ','
       << w * k.gamma_A - 1.0 << ',' << w * k.gamma_Chat - 1.0 << ','
       << std::sqrt(std::max(sq, 0.0)) << '\n';
  }
  return 0;
}

int run_dump(const ExperimentConfig& cfg, const std::string& dump_dir) {
  HierarchyOptions ho;
  const Hierarchy h = build_hierarchy(assemble_problem(cfg, cfg.t_min), projectors_for(cfg.projector), ho);
  dump_symbols(dump_dir, h);
  Sink sink(cfg.output);
  write_hierarchy_csv(sink.get(), h);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multigrid for circulant and Toeplitz saddle-point systems"};
  app.require_subcommand(1);

  Shared analyze_opts, solve_opts, table_opts, curve_opts, dump_opts;

  auto* analyze = app.add_subcommand("analyze", "Symbol analysis: constants, omega_opt and hypothesis checks");
  add_common(analyze, analyze_opts);

  auto* solve_cmd = app.add_subcommand("solve", "Solve one system and report the iteration count");
  add_common(solve_cmd, solve_opts);
  std::string residuals;
  solve_cmd->add_option("--residuals", residuals, "Write the residual history (iter,relres) here");

  auto* table = app.add_subcommand("table", "Run a table preset and emit CSV");
  add_common(table, table_opts);
  std::string preset;
  table->add_option("preset", preset, "table1 | table2 | table3 | table4 | table5")->required();

  auto* curve = app.add_subcommand("curve-mu", "Convergence bound mu(omega) as CSV");
  add_common(curve, curve_opts);
  int points = 201;
  curve->add_option("--points", points, "Number of omega samples");

  auto* dump = app.add_subcommand("dump-hierarchy", "Per-level sizes, parameters and degrees as CSV");
  add_common(dump, dump_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) {
      const auto cfg = analyze_opts.resolve();
      cfg.validate();
      return run_analyze(cfg, analyze_opts.dump_symbols);
    }
    if (*solve_cmd) {
      const auto cfg = solve_opts.resolve();
      cfg.validate();
      return run_solve(cfg, residuals, solve_opts.dump_symbols);
    }
    if (*table) return run_table_cmd(preset, table_opts);
    if (*curve) {
      const auto cfg = curve_opts.resolve();
      cfg.validate();
      return run_curve(cfg, points);
    }
    if (*dump) {
      const auto cfg = dump_opts.resolve();
      cfg.validate();
      return run_dump(cfg, dump_opts.dump_symbols);
    }
  } catch (const HypothesisFailure& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const UnboundedRatio& e) {
    std::cerr << "hypothesis failure: " << e.what() << " (witness theta=" << e.witness() << ")\n";
    return kExitHypothesis;
  } catch (const Divergence& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
