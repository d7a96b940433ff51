#pragma once

#include <string>
#include <utility>
#include <vector>

#include "saddlemg/hierarchy.hpp"
#include "saddlemg/trig_poly.hpp"

namespace saddlemg {

/// â₀(f), the real part of the constant coefficient.
double a0(const TrigPoly& f);

/// Sampling grid for sup norms: [0, π] when the coefficients are real (the
/// symbol is even), [0, 2π] otherwise, with the given step rounded to hit π.
SampleGrid sup_grid(const TrigPoly& p, double step = 1.0 / 100.0);
double symbol_sup(const TrigPoly& p, double step = 1.0 / 100.0);

/// ‖f_C + |f_B|²/f_A‖_∞, the singular quotient evaluated through its removable limit.
double coupling_sup(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC,
                    double step = 1.0 / 100.0);

/// κ = 2â₀(f)‖|p|²(θ+π)/f(θ)‖_∞ ‖1/(|p|²(θ)+|p|²(θ+π))‖_∞.
/// Throws UnboundedRatio when either factor is infinite.
double kappa_bound(const TrigPoly& f, const TrigPoly& p);

struct GammaBounds {
  double gamma_A = 0.0;
  double gamma_Chat = 0.0;
  double gamma_tilde() const noexcept {
    return 2.0 * gamma_A * gamma_Chat / (gamma_A + gamma_Chat);
  }
};

/// γ̂_A ≤ (2α − α²‖f_A‖/â₀(f_A))⁻¹ and γ̂_Ĉ ≤ ‖f_C + |f_B|²/f_A‖/â₀(f_Ĉ).
GammaBounds gamma_bounds(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC,
                         const TrigPoly& fChat, double alpha);

struct MuConstants {
  double kappa_A = 0.0;
  double kappa_Chat = 0.0;
  double gamma_A = 0.0;
  double gamma_Chat = 0.0;

  double kappa_tilde() const noexcept {
    return 2.0 * kappa_A * kappa_Chat / (kappa_A + kappa_Chat);
  }
  double gamma_tilde() const noexcept {
    return 2.0 * gamma_A * gamma_Chat / (gamma_A + gamma_Chat);
  }
  /// Smoothing parameters allowed by the bound: (0, 2/max(γ̂_A, γ̂_Ĉ)).
  double omega_upper() const noexcept;
};

/// max(1 − ω/κ_A, 1 − ω/κ_Ĉ, ωγ̂_A − 1, ωγ̂_Ĉ − 1, √(1 − ω(2 − ωγ̃)/κ̃)),
/// with the square-root argument clamped at zero.
double mu_bound(double omega, const MuConstants& k);

struct OmegaOpt {
  double omega = 0.0;
  double mu = 0.0;
};

/// Minimiser of mu_bound over the admissible interval. Candidates: the vertex
/// of the parabola under the square root, every pairwise crossing of the five
/// branches, the interval end points and a 10⁴-point grid.
OmegaOpt omega_opt(const MuConstants& k, int grid_points = 10000);

/// (ω, μ(ω)) on `points` uniformly spaced values of [0, omega_upper].
std::vector<std::pair<double, double>> mu_curve(const MuConstants& k, int points = 201);

struct Verdict {
  std::string name;
  bool passed = false;
  /// Finite but above the warning threshold.
  bool warning = false;
  /// The angle where the condition is violated (or the relevant zero).
  double witness = 0.0;
  double value = 0.0;
  std::string detail;
};

inline constexpr double kWarningThreshold = 1e3;

/// The symbol hypotheses of the two-grid and multigrid theorems.
std::vector<Verdict> check_hypotheses(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC,
                                      const TrigPoly& pA, const TrigPoly& pC, double alpha,
                                      double omega);
bool all_passed(const std::vector<Verdict>& v);

struct LimitEstimate {
  int level = 0;
  /// "fA_l/fA_l+1", "|fB_l+1|^2/|fB_l|^2" or "fChat_l/fChat_l+1".
  std::string name;
  /// Dyadic approach at θ = π·2^-k, k = 8..20.
  DyadicTail tail;
  /// Limit at θ = 0 from exact derivatives.
  double limit = 0.0;
  bool bounded_nonzero = false;
};

/// Ratios of consecutive level symbols near θ = 0.
std::vector<LimitEstimate> level_independency_check(const Hierarchy& h);
std::vector<LimitEstimate> level_independency_check(const std::vector<CoarseSymbols>& levels,
                                                    const std::vector<double>& alphas);

struct TheoryReport {
  double alpha = 0.0;
  TrigPoly fChat;
  double a0_Chat = 0.0;
  MuConstants constants;
  double omega_lo = 0.0;
  double omega_hi = 0.0;
  OmegaOpt opt;
  std::vector<Verdict> verdicts;
  /// Level 0 → 1 limits c₁, c₂ and the Ĉ ratio.
  double c1 = 0.0;
  double c2 = 0.0;
  double chat_ratio = 0.0;
};

/// Full symbol analysis of the finest level. α defaults to â₀(f_A)/‖f_A‖.
TheoryReport analyze(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC,
                     const Projectors& p, double alpha = 0.0);

/// Closest fraction p/q with q ≤ max_den (continued fractions), e.g. "55/96".
std::string rational_string(double x, long max_den = 100000);

}  // namespace saddlemg
