#pragma once

#include <memory>
#include <span>

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include "saddlemg/saddle.hpp"

namespace saddlemg {

/// Exact (minimum-norm where singular) solver for Â y = c on one level.
///
/// Circulant path: Â is block-diagonalised by the Fourier transform, so each
/// frequency carries a 2×2 block that is pseudo-inverted with singular values
/// below rank_tol·(largest singular value over all frequencies) dropped.
/// Toeplitz path: complete orthogonal decomposition of the dense Â for small
/// systems; sparse LU of the assembled Â otherwise.
class ExactSolver {
 public:
  static constexpr double kRankTolerance = 1e-10;
  /// Toeplitz systems up to this total size use the dense rank-revealing path.
  static constexpr int kDenseLimit = 2048;

  ExactSolver() = default;
  explicit ExactSolver(const SaddleSystem& s, double rank_tol = kRankTolerance);

  int size() const noexcept { return 2 * n_; }
  /// Numerical rank of Â found during factorisation.
  int rank() const noexcept { return rank_; }
  void solve(std::span<const cplx> c, std::span<cplx> y) const;
  cvec solve(std::span<const cplx> c) const;

 private:
  Structure structure_ = Structure::circulant;
  int n_ = 0;
  int rank_ = 0;
  // Per-frequency pseudo-inverse entries.
  cvec q11_, q12_, q21_, q22_;
  std::shared_ptr<Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd>> dense_;
  std::shared_ptr<Eigen::SparseLU<Eigen::SparseMatrix<cplx>>> sparse_;
};

}  // namespace saddlemg
