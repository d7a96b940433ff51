#pragma once

#include <span>
#include <vector>

#include "saddlemg/trig_poly.hpp"

namespace saddlemg {

using cvec = std::vector<cplx>;

/// θ_{j,n} = 2πj/n, j = 0..n-1.
double grid_angle(int j, int n) noexcept;

/// The circulant matrix C_n(f) = F_n diag(f(θ_{j,n})) F_nᴴ, applied by FFT.
///
/// The eigenvalues are the samples of the symbol on the grid, so a symbol of
/// degree ≥ n acts through its aliased coefficients Σ_{k≡j mod n} a_k. This
/// is exactly the matrix produced by Galerkin coarsening, whatever the degree.
/// Immutable after construction; concurrent matvecs are safe.
class CirculantOp {
 public:
  CirculantOp() = default;
  CirculantOp(int n, TrigPoly symbol);

  int size() const noexcept { return n_; }
  const TrigPoly& symbol() const noexcept { return symbol_; }
  std::span<const cplx> eigenvalues() const noexcept { return eig_; }

  /// Entry (i, k) = Σ_j a_j [i - k ≡ j mod n].
  cplx entry(int i, int k) const;
  /// The common diagonal value.
  cplx diagonal_value() const { return entry(0, 0); }
  cvec first_column() const;

  /// y = C x; `y` may alias `x`.
  void matvec(std::span<const cplx> x, std::span<cplx> y) const;
  cvec matvec(std::span<const cplx> x) const;
  /// y = Cᴴ x.
  void adjoint_matvec(std::span<const cplx> x, std::span<cplx> y) const;

 private:
  void apply_spectrum(std::span<const cplx> x, std::span<cplx> y, bool conjugate) const;

  int n_ = 0;
  TrigPoly symbol_;
  cvec eig_;
};

struct PseudoSolution {
  cvec x;
  /// Share of ‖b‖ lying on eigenvectors treated as null.
  double null_fraction = 0.0;
  /// null_fraction < 1e-8.
  bool consistent = true;
};

/// Minimum-norm solve: inverts only eigenvalues with |λ| > kernel_tol·max|λ|.
PseudoSolution solve_pseudo(const CirculantOp& op, std::span<const cplx> b,
                            double kernel_tol = 1e-10);

}  // namespace saddlemg
