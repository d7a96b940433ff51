#pragma once

#include <span>
#include <vector>

#include "saddlemg/circulant.hpp"
#include "saddlemg/trig_poly.hpp"

namespace saddlemg {

/// Square banded matrix stored by diagonals: diagonal d ∈ [-lower, upper]
/// holds M(i, i + d) at position i.
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(int n, int lower, int upper);

  static BandMatrix identity(int n);
  static BandMatrix diagonal(std::span<const cplx> d);
  /// T_n(f): entry (i, k) = a_{i-k}.
  static BandMatrix toeplitz(int n, const TrigPoly& f);

  int size() const noexcept { return n_; }
  int lower() const noexcept { return lower_; }
  int upper() const noexcept { return upper_; }

  /// Zero outside the band.
  cplx operator()(int i, int k) const noexcept;
  /// Entry inside the band (throws otherwise).
  cplx& at(int i, int k);

  std::vector<cplx> diagonal_entries() const;

  /// y = M x; `y` must not alias `x`.
  void matvec(std::span<const cplx> x, std::span<cplx> y) const;
  cvec matvec(std::span<const cplx> x) const;
  /// y = Mᴴ x.
  void adjoint_matvec(std::span<const cplx> x, std::span<cplx> y) const;

  BandMatrix adjoint() const;
  /// diag(d)·M.
  BandMatrix scale_rows(std::span<const cplx> d) const;
  /// K M Kᵀ for the cutting matrix that keeps indices `offset`, `offset`+2, ...
  BandMatrix downsample(int coarse_size, int offset) const;
  /// Drops outer diagonals whose entries are all below tol·max|entry|.
  BandMatrix trimmed(double tol = 1e-14) const;

  friend BandMatrix operator*(const BandMatrix& a, const BandMatrix& b);
  friend BandMatrix operator+(const BandMatrix& a, const BandMatrix& b);
  friend BandMatrix operator-(const BandMatrix& a, const BandMatrix& b);
  friend BandMatrix operator*(cplx s, const BandMatrix& a);

 private:
  std::vector<cplx>& diag(int d) { return diags_[d + lower_]; }
  const std::vector<cplx>& diag(int d) const { return diags_[d + lower_]; }

  int n_ = 0;
  int lower_ = 0;
  int upper_ = 0;
  std::vector<std::vector<cplx>> diags_;
};

}  // namespace saddlemg
