#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "saddlemg/hierarchy.hpp"
#include "saddlemg/saddle.hpp"
#include "saddlemg/solver.hpp"

namespace saddlemg {

enum class Problem { elasticity_circulant, elasticity_toeplitz };
enum class OmegaMode { adaptive, fixed, optimal };
enum class ProjectorChoice { full, trivial };

struct ExperimentConfig {
  Problem problem = Problem::elasticity_circulant;
  double rho = 0.5;
  int t_min = 9;
  int t_max = 14;
  CycleKind cycle = CycleKind::w;
  OmegaMode omega_mode = OmegaMode::adaptive;
  /// Used when omega_mode is fixed.
  double omega = 0.5;
  /// ω on the finest level only; coarser levels follow omega_mode.
  std::optional<double> finest_omega;
  ProjectorChoice projector = ProjectorChoice::full;
  double eps = 1e-6;
  int max_iter = 2000;
  std::string output;

  /// Throws InvalidArgument unless 4 ≤ t_min ≤ t_max ≤ 20 and ρ > 0.
  void validate() const;
};

/// Parsing helpers shared by the config file reader and the command line.
Problem parse_problem(const std::string& s);
CycleKind parse_cycle(const std::string& s);
ProjectorChoice parse_projector(const std::string& s);
std::string to_string(Problem p);
std::string to_string(CycleKind k);
std::string to_string(ProjectorChoice p);

/// Flat `key = value` text; `#` starts a comment. Unknown keys are rejected.
std::map<std::string, std::string> read_config_file(const std::string& path);
/// Applies recognised keys (problem, rho, t, t_min, t_max, cycle, omega, projector, eps,
/// max_iter, output) to `cfg`. `omega` accepts a number, `adaptive` or `optimal`.
void apply_config(ExperimentConfig& cfg, const std::map<std::string, std::string>& kv);

struct ElasticitySymbols {
  TrigPoly fA;
  TrigPoly fB;
  TrigPoly fC;
};

/// f_A = 2 − 2cosθ, f_B = 1 − e^{iθ}, f_C = (2ρ/3)(2 + cosθ).
ElasticitySymbols elasticity_symbols(double rho);
Projectors projectors_for(ProjectorChoice c);

/// Block size n: 2^t (circulant) or 2^t − 1 (Toeplitz).
int block_size(Problem p, int t);
/// Finest saddle system; the Toeplitz problem always uses ρ = 1/2.
SaddleSystem assemble_problem(const ExperimentConfig& cfg, int t);
/// ω used for the cycles of `cfg` (nullopt: adaptive ω_ℓ).
std::optional<double> resolve_omega(const ExperimentConfig& cfg);

struct TableRow {
  int t = 0;
  int N = 0;
  /// ω on the finest level, or NaN for adaptive runs.
  double omega = 0.0;
  /// ω on the coarser levels, or NaN for adaptive runs.
  double omega_coarse = 0.0;
  int iterations = 0;
  bool converged = false;
  CycleKind cycle = CycleKind::w;
  double rho = 0.5;
  ProjectorChoice projector = ProjectorChoice::full;
  std::string error;
};

/// One solve with b = Â x_true and a zero initial guess.
SolveReport run_single(const ExperimentConfig& cfg, int t);
std::vector<TableRow> run_table(const ExperimentConfig& cfg);

/// Column configurations of the presets table1..table5.
std::vector<ExperimentConfig> table_preset(const std::string& name);
std::vector<std::string> preset_names();

/// Header `t,N,omega,iterations,converged,cycle,rho,projector,omega_coarse`.
void write_table_csv(std::ostream& os, const std::vector<TableRow>& rows);

}  // namespace saddlemg
