#pragma once

#include <span>

#include "saddlemg/band_matrix.hpp"
#include "saddlemg/circulant.hpp"
#include "saddlemg/transfer.hpp"
#include "saddlemg/trig_poly.hpp"

namespace saddlemg {

/// T_n(f) applied through a circulant embedding of size 2^k ≥ 2n.
class ToeplitzOp {
 public:
  ToeplitzOp() = default;
  ToeplitzOp(int n, TrigPoly symbol);

  int size() const noexcept { return n_; }
  int embedding_size() const noexcept { return m_; }
  const TrigPoly& symbol() const noexcept { return symbol_; }
  /// a_{i-k}.
  cplx entry(int i, int k) const noexcept { return symbol_.coeff(i - k); }

  void matvec(std::span<const cplx> x, std::span<cplx> y) const;
  cvec matvec(std::span<const cplx> x) const;
  BandMatrix to_band() const { return BandMatrix::toeplitz(n_, symbol_); }

 private:
  int n_ = 0;
  int m_ = 0;
  TrigPoly symbol_;
  cvec embedded_eig_;
};

/// Pᴴ_l M P_r for tau-structured transfers, assembled exactly as a band matrix.
BandMatrix galerkin_band(const GridTransfer& left, const BandMatrix& m, const GridTransfer& right);

}  // namespace saddlemg
