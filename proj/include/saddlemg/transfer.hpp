#pragma once

#include <span>
#include <variant>

#include "saddlemg/band_matrix.hpp"
#include "saddlemg/circulant.hpp"
#include "saddlemg/trig_poly.hpp"

namespace saddlemg {

enum class TransferStructure { circulant, tau };

/// Grid transfer P = M(p)·Kᵀ with M(p) = C_n(p) or T_n(p).
///
/// Circulant: n even, coarse size n/2, coarse index c sits at fine index 2c.
/// Tau: n = 2^t - 1, coarse size (n - 1)/2, coarse index c sits at fine 2c + 1.
class GridTransfer {
 public:
  GridTransfer() = default;
  static GridTransfer circulant(int n, TrigPoly p);
  static GridTransfer tau(int n, TrigPoly p);

  int fine_size() const noexcept { return fine_; }
  int coarse_size() const noexcept { return coarse_; }
  /// Fine index of coarse point 0 (0 for circulant, 1 for tau).
  int offset() const noexcept { return structure_ == TransferStructure::tau ? 1 : 0; }
  const TrigPoly& symbol() const noexcept { return symbol_; }
  TransferStructure structure() const noexcept { return structure_; }
  /// T_n(p) for the tau structure.
  const BandMatrix& band() const;

  /// out = P e.
  void prolong(std::span<const cplx> e, std::span<cplx> out) const;
  cvec prolong(std::span<const cplx> e) const;
  /// out = Pᴴ r.
  void restrict(std::span<const cplx> r, std::span<cplx> out) const;
  cvec restrict(std::span<const cplx> r) const;

 private:
  int fine_ = 0;
  int coarse_ = 0;
  TrigPoly symbol_;
  TransferStructure structure_ = TransferStructure::circulant;
  std::variant<CirculantOp, BandMatrix> smoother_;
};

/// True when n = 2^t - 1 with t ≥ 2.
bool is_tau_size(int n) noexcept;

}  // namespace saddlemg
