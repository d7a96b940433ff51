#include "saddlemg/experiment.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "saddlemg/analysis.hpp"
#include "saddlemg/error.hpp"

namespace saddlemg {

void ExperimentConfig::validate() const {
  if (t_min < 4 || t_max > 20 || t_min > t_max) throw InvalidArgument("config: t must lie in [4, 20]");
  if (!(rho > 0.0)) throw InvalidArgument("config: rho must be positive");
  if (!(eps > 0.0)) throw InvalidArgument("config: eps must be positive");
  if (max_iter < 1) throw InvalidArgument("config: max_iter must be positive");
  if (omega_mode == OmegaMode::fixed && !(omega > 0.0)) {
    throw InvalidArgument("config: omega must be positive");
  }
}

Problem parse_problem(const std::string& s) {
  if (s == "elasticity-circulant" || s == "circulant") return Problem::elasticity_circulant;
  if (s == "elasticity-toeplitz" || s == "toeplitz") return Problem::elasticity_toeplitz;
  throw InvalidArgument("unknown problem '" + s + "'");
}

CycleKind parse_cycle(const std::string& s) {
  if (s == "tgm" || s == "TGM") return CycleKind::tgm;
  if (s == "v" || s == "V") return CycleKind::v;
  if (s == "w" || s == "W") return CycleKind::w;
  throw InvalidArgument("unknown cycle '" + s + "'");
}

ProjectorChoice parse_projector(const std::string& s) {
  if (s == "full") return ProjectorChoice::full;
  if (s == "trivial") return ProjectorChoice::trivial;
  throw InvalidArgument("unknown projector '" + s + "'");
}

std::string to_string(Problem p) {
  return p == Problem::elasticity_circulant ? "elasticity-circulant" : "elasticity-toeplitz";
}

std::string to_string(CycleKind k) {
  switch (k) {
    case CycleKind::tgm:
      return "tgm";
    case CycleKind::v:
      return "v";
    case CycleKind::w:
      return "w";
  }
  return "?";
}

std::string to_string(ProjectorChoice p) { return p == ProjectorChoice::full ? "full" : "trivial"; }

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& v) {
  // Accept fractions such as 55/96.
  const auto slash = v.find('/');
  try {
    size_t used = 0;
    if (slash != std::string::npos) {
      const double num = std::stod(v.substr(0, slash));
      const double den = std::stod(v.substr(slash + 1), &used);
      if (used != v.size() - slash - 1 || den == 0.0) throw std::invalid_argument(v);
      return num / den;
    }
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw InvalidArgument("config: '" + key + "' expects a number, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  const double x = parse_number(key, v);
  if (x != std::floor(x)) throw InvalidArgument("config: '" + key + "' expects an integer");
  return static_cast<int>(x);
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "problem") {
      cfg.problem = parse_problem(v);
    } else if (k == "rho") {
      cfg.rho = parse_number(k, v);
    } else if (k == "t") {
      cfg.t_min = cfg.t_max = parse_int(k, v);
    } else if (k == "t_min") {
      cfg.t_min = parse_int(k, v);
    } else if (k == "t_max") {
      cfg.t_max = parse_int(k, v);
    } else if (k == "cycle") {
      cfg.cycle = parse_cycle(v);
    } else if (k == "omega") {
      if (v == "adaptive") {
        cfg.omega_mode = OmegaMode::adaptive;
      } else if (v == "optimal") {
        cfg.omega_mode = OmegaMode::optimal;
      } else {
        cfg.omega_mode = OmegaMode::fixed;
        cfg.omega = parse_number(k, v);
      }
    } else if (k == "finest_omega") {
      if (v == "none" || v.empty()) {
        cfg.finest_omega.reset();
      } else {
        cfg.finest_omega = parse_number(k, v);
      }
    } else if (k == "projector") {
      cfg.projector = parse_projector(v);
    } else if (k == "eps") {
      cfg.eps = parse_number(k, v);
    } else if (k == "max_iter") {
      cfg.max_iter = parse_int(k, v);
    } else if (k == "output") {
      cfg.output = v;
    } else {
      throw InvalidArgument("config: unknown key '" + k + "'");
    }
  }
}

ElasticitySymbols elasticity_symbols(double rho) {
  ElasticitySymbols s;
  s.fA = TrigPoly{{-1, -1.0}, {0, 2.0}, {1, -1.0}};
  s.fB = TrigPoly{{0, 1.0}, {1, -1.0}};
  const double c = 2.0 * rho / 3.0;
  s.fC = TrigPoly{{-1, c / 2.0}, {0, 2.0 * c}, {1, c / 2.0}};
  return s;
}

Projectors projectors_for(ProjectorChoice c) {
  return c == ProjectorChoice::full ? Projectors::elasticity() : Projectors::trivial_chat();
}

int block_size(Problem p, int t) {
  return p == Problem::elasticity_circulant ? (1 << t) : (1 << t) - 1;
}

SaddleSystem assemble_problem(const ExperimentConfig& cfg, int t) {
  if (t < 2 || t > 24) throw InvalidArgument("assemble_problem: invalid size exponent");
  const int n = block_size(cfg.problem, t);
  if (cfg.problem == Problem::elasticity_circulant) {
    const auto s = elasticity_symbols(cfg.rho);
    return SaddleSystem::circulant(n, s.fA, s.fB, s.fC,
                                   alpha_level(s.fA, Structure::circulant, n));
  }
  const auto s = elasticity_symbols(0.5);
  return SaddleSystem::toeplitz(BandMatrix::toeplitz(n, s.fA), BandMatrix::toeplitz(n, s.fB),
                                BandMatrix::toeplitz(n, s.fC), s.fA, s.fB, s.fC,
                                alpha_level(s.fA, Structure::toeplitz, n));
}

std::optional<double> resolve_omega(const ExperimentConfig& cfg) {
  switch (cfg.omega_mode) {
    case OmegaMode::adaptive:
      return std::nullopt;
    case OmegaMode::fixed:
      return cfg.omega;
    case OmegaMode::optimal: {
      const double rho = cfg.problem == Problem::elasticity_circulant ? cfg.rho : 0.5;
      const auto s = elasticity_symbols(rho);
      const TheoryReport r = analyze(s.fA, s.fB, s.fC, projectors_for(cfg.projector));
      if (!std::isfinite(r.opt.omega)) throw InvalidArgument("optimal omega undefined for this setup");
      return r.opt.omega;
    }
  }
  return std::nullopt;
}

SolveReport run_single(const ExperimentConfig& cfg, int t) {
  const SaddleSystem s = assemble_problem(cfg, t);
  HierarchyOptions ho;
  if (cfg.cycle == CycleKind::tgm) ho.max_levels = 2;
  const Hierarchy h = build_hierarchy(s, projectors_for(cfg.projector), ho);
  CycleSpec spec;
  spec.kind = cfg.cycle;
  spec.fixed_omega = resolve_omega(cfg);
  spec.finest_omega = cfg.finest_omega;
  SolveOptions so;
  so.tol = cfg.eps;
  so.max_iter = cfg.max_iter;
  const cvec b = build_rhs(s, sine_samples(s.size()));
  return solve(h, b, spec, so);
}

std::vector<TableRow> run_table(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<TableRow> rows;
  const auto omega = resolve_omega(cfg);
  for (int t = cfg.t_min; t <= cfg.t_max; ++t) {
    TableRow row;
    row.t = t;
    row.N = 2 * block_size(cfg.problem, t);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.omega_coarse = omega ? *omega : nan;
    row.omega = cfg.finest_omega ? *cfg.finest_omega : row.omega_coarse;
    row.cycle = cfg.cycle;
    row.rho = cfg.problem == Problem::elasticity_circulant ? cfg.rho : 0.5;
    row.projector = cfg.projector;
    try {
      const SolveReport r = run_single(cfg, t);
      row.iterations = r.iterations;
      row.converged = r.converged;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::string> preset_names() { return {"table1", "table2", "table3", "table4", "table5"}; }

std::vector<ExperimentConfig> table_preset(const std::string& name) {
  std::vector<ExperimentConfig> cols;
  ExperimentConfig base;
  if (name == "table1") {
    base.cycle = CycleKind::tgm;
    for (const double w : {0.25, 0.5, 55.0 / 96.0, 0.75}) {
      ExperimentConfig c = base;
      c.omega_mode = OmegaMode::fixed;
      c.omega = w;
      cols.push_back(c);
    }
  } else if (name == "table2") {
    base.cycle = CycleKind::w;
    cols.push_back(base);
    ExperimentConfig c = base;
    c.omega_mode = OmegaMode::fixed;
    c.omega = 0.5;
    cols.push_back(c);
  } else if (name == "table3") {
    base.cycle = CycleKind::w;
    for (const auto proj : {ProjectorChoice::full, ProjectorChoice::trivial}) {
      for (const double rho : {0.5, 0.05, 0.005}) {
        ExperimentConfig c = base;
        c.rho = rho;
        c.projector = proj;
        cols.push_back(c);
      }
    }
  } else if (name == "table4") {
    base.problem = Problem::elasticity_toeplitz;
    base.cycle = CycleKind::tgm;
    base.omega_mode = OmegaMode::fixed;
    base.omega = 55.0 / 96.0;
    cols.push_back(base);
  } else if (name == "table5") {
    base.problem = Problem::elasticity_toeplitz;
    // The finest level keeps the two-grid optimum of table4; coarser levels are adaptive.
    base.finest_omega = 55.0 / 96.0;
    for (const auto k : {CycleKind::w, CycleKind::v}) {
      ExperimentConfig c = base;
      c.cycle = k;
      cols.push_back(c);
    }
  } else {
    throw InvalidArgument("unknown table preset '" + name + "'");
  }
  return cols;
}

void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows) {
  const auto old = os.precision(17);
  auto put = [&](double w) {
    if (std::isnan(w)) {
      os << "adaptive";
    } else {
      os << w;
    }
  };
  os << "t,N,omega,iterations,converged,cycle,rho,projector,omega_coarse\n";
  for (const auto& r : rows) {
    os << r.t << ',' << r.N << ',';
    put(r.omega);
    os << ',' << r.iterations << ',' << (r.converged ? "true" : "false") << ',' << to_string(r.cycle)
       << ',' << r.rho << ',' << to_string(r.projector) << ',';
    put(r.omega_coarse);
    os << '\n';
  }
  os.precision(old);
}

}  // namespace saddlemg
