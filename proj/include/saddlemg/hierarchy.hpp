#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "saddlemg/coarse_solve.hpp"
#include "saddlemg/saddle.hpp"
#include "saddlemg/transfer.hpp"
#include "saddlemg/trig_poly.hpp"

namespace saddlemg {

/// Smoothing symbols of P_A and P_Ĉ, fixed across levels.
struct Projectors {
  TrigPoly pA;
  TrigPoly pC;

  /// √2(1 + cosθ) for both blocks.
  static Projectors elasticity();
  /// √2(1 + cosθ) for A, plain down-sampling for Ĉ.
  static Projectors trivial_chat();
};

struct CoarseSymbols {
  TrigPoly fA;
  TrigPoly fB;
  TrigPoly fC;
};

/// f_A' = ψ(|p_A|² f_A), f_B' = ψ(conj(p_Ĉ) f_B (1 − α f_A/â₀) p_A), f_C' = ψ(|p_Ĉ|² f_Ĉ).
CoarseSymbols coarsen_symbols(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC,
                              double alpha, const Projectors& p);

/// α = â₀(f_A)/max f_A: the maximum over θ_{j,n} on the circulant path and the
/// sup-norm sample otherwise.
double alpha_level(const TrigPoly& fA, Structure structure, int n);

/// ω = min(2α − α²‖f_A‖/â₀(f_A), â₀(f_Ĉ)/‖f_C + |f_B|²/f_A‖), the midpoint of the
/// admissible smoothing interval.
double omega_level(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC, double alpha);

struct Level {
  int index = 0;
  int n = 0;
  SaddleSystem system;
  /// Transfers to the next coarser level (unset on the coarsest level).
  GridTransfer PA;
  GridTransfer PC;
  double omega = 0.0;
};

struct HierarchyOptions {
  /// Upper limit on the number of levels; 0 coarsens down to the smallest size.
  int max_levels = 0;
  /// Run the hypothesis checks on every level and throw HypothesisFailure on a violation.
  bool validate = true;
};

class Hierarchy {
 public:
  Hierarchy() = default;
  Hierarchy(std::vector<Level> levels, Projectors projectors);

  int depth() const noexcept { return static_cast<int>(levels_.size()); }
  const Level& level(int l) const { return levels_.at(static_cast<size_t>(l)); }
  const std::vector<Level>& levels() const noexcept { return levels_; }
  Structure structure() const noexcept { return levels_.front().system.structure(); }
  const Projectors& projectors() const noexcept { return projectors_; }
  const ExactSolver& coarsest_solver() const noexcept { return *coarsest_; }

 private:
  std::vector<Level> levels_;
  Projectors projectors_;
  std::shared_ptr<const ExactSolver> coarsest_;
};

/// True when a level of size n is coarsened further by default
/// (n > 4 on the circulant path, n > 3 on the Toeplitz path).
bool can_coarsen(Structure structure, int n) noexcept;

/// Galerkin coarsening of one level (symbols on the circulant path, band
/// products on the Toeplitz path). `fine` gains its transfers.
Level coarsen_level(Level& fine, const Projectors& p);

Hierarchy build_hierarchy(const SaddleSystem& finest, const Projectors& p,
                          const HierarchyOptions& opts = {});

/// CSV with header `level,n,alpha,omega,zA,zB,zC`.
void write_hierarchy_csv(std::ostream& os, const Hierarchy& h);

struct DegreeCheck {
  int level = 0;
  int zA = 0, zB = 0, zC = 0;
  int boundA = 0, boundB = 0, boundC = 0;
  /// Bounds are enforced only from `from_level` on.
  bool enforced = false;
  bool ok = true;
};

/// Degree bounds z_A ≤ max(z_A⁰, 2q_A), z_B ≤ max(2z_B⁰, 4q), z_C ≤ max(4z_B⁰, 6q, 2z_C⁰)
/// with q = max(deg p_A, deg p_Ĉ).
std::vector<DegreeCheck> degree_checks(const Hierarchy& h, int from_level = 3);
std::vector<DegreeCheck> degree_checks(const std::vector<CoarseSymbols>& levels, const Projectors& p,
                                       int from_level = 3);

}  // namespace saddlemg
