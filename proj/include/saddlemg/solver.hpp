#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "saddlemg/hierarchy.hpp"

namespace saddlemg {

enum class CycleKind { tgm, v, w };

struct CycleSpec {
  CycleKind kind = CycleKind::w;
  int pre_smooth = 0;
  int post_smooth = 1;
  /// Overrides the per-level ω_ℓ on every level.
  std::optional<double> fixed_omega;
  /// Overrides ω on the finest level only (takes precedence over fixed_omega there).
  std::optional<double> finest_omega;

  /// Recursive calls per level (TGM solves exactly on level 1).
  int gamma() const noexcept { return kind == CycleKind::w ? 2 : 1; }
};

struct SolveOptions {
  double tol = 1e-6;
  int max_iter = 2000;
  /// Relative residual above which the iteration is declared divergent.
  double divergence = 1e8;
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  /// ‖r_k‖₂/‖b‖₂ for k = 0..iterations.
  std::vector<double> history;
  /// history[k]/history[k−1].
  std::vector<double> contraction;
  cvec x;
};

/// Runs cycles from a zero initial guess until ‖r‖₂/‖b‖₂ < tol or max_iter.
/// Throws Divergence when the ratio exceeds opts.divergence or turns non-finite.
class Solver {
 public:
  Solver(const Hierarchy& h, CycleSpec spec);

  const CycleSpec& spec() const noexcept { return spec_; }

  /// One cycle on level `l` for Â{l} x = b.
  void cycle(int l, std::span<cplx> x, std::span<const cplx> b) const;
  SolveReport solve(std::span<const cplx> b, const SolveOptions& opts = {}) const;

 private:
  double omega(int l) const;
  void coarse_correction(int l, std::span<cplx> x, std::span<const cplx> b) const;
  const ExactSolver& exact(int l) const;

  const Hierarchy& h_;
  CycleSpec spec_;
  /// Level-1 solver for TGM when the hierarchy is deeper than two levels.
  std::optional<ExactSolver> tgm_exact_;
};

SolveReport solve(const Hierarchy& h, std::span<const cplx> b, const CycleSpec& spec,
                  const SolveOptions& opts = {});

/// CSV with header `iter,relres`.
void write_residual_csv(std::ostream& os, const SolveReport& r);

}  // namespace saddlemg
