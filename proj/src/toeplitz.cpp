#include "saddlemg/toeplitz.hpp"

#include <algorithm>

#include "saddlemg/error.hpp"
#include "saddlemg/fft.hpp"

namespace saddlemg {

ToeplitzOp::ToeplitzOp(int n, TrigPoly symbol) : n_(n), symbol_(std::move(symbol)) {
  if (n <= 0) throw InvalidArgument("ToeplitzOp: size must be positive");
  m_ = 1;
  while (m_ < 2 * n) m_ *= 2;
  cvec col(static_cast<size_t>(m_));
  for (int i = 0; i < n; ++i) col[i] = symbol_.coeff(i);
  for (int i = 1; i < n; ++i) col[m_ - i] = symbol_.coeff(-i);
  embedded_eig_.resize(col.size());
  fft::forward(col, embedded_eig_);
}

void ToeplitzOp::matvec(std::span<const cplx> x, std::span<cplx> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_) {
    throw SizeMismatch("ToeplitzOp: vector length does not match operator size");
  }
  cvec work(static_cast<size_t>(m_));
  std::copy(x.begin(), x.end(), work.begin());
  fft::forward(work, work);
  for (int j = 0; j < m_; ++j) work[j] *= embedded_eig_[j];
  fft::inverse(work, work);
  std::copy(work.begin(), work.begin() + n_, y.begin());
}

cvec ToeplitzOp::matvec(std::span<const cplx> x) const {
  cvec y(x.size());
  matvec(x, y);
  return y;
}

BandMatrix galerkin_band(const GridTransfer& left, const BandMatrix& m, const GridTransfer& right) {
  if (left.structure() != TransferStructure::tau || right.structure() != TransferStructure::tau) {
    throw InvalidArgument("galerkin_band: transfers must be tau-structured");
  }
  if (left.fine_size() != m.size() || right.fine_size() != m.size()) {
    throw SizeMismatch("galerkin_band: transfer and matrix sizes differ");
  }
  const BandMatrix full = left.band().adjoint() * m * right.band();
  return full.downsample(left.coarse_size(), left.offset()).trimmed();
}

}  // namespace saddlemg
