#include "saddlemg/transfer.hpp"

#include <algorithm>

#include "saddlemg/error.hpp"

namespace saddlemg {

bool is_tau_size(int n) noexcept { return n >= 3 && ((n + 1) & n) == 0; }

GridTransfer GridTransfer::circulant(int n, TrigPoly p) {
  if (n < 2 || n % 2 != 0) throw InvalidArgument("circulant transfer: fine size must be even");
  GridTransfer t;
  t.fine_ = n;
  t.coarse_ = n / 2;
  t.structure_ = TransferStructure::circulant;
  t.smoother_ = CirculantOp(n, p);
  t.symbol_ = std::move(p);
  return t;
}

GridTransfer GridTransfer::tau(int n, TrigPoly p) {
  if (!is_tau_size(n)) throw InvalidArgument("tau transfer: fine size must be 2^t - 1");
  GridTransfer t;
  t.fine_ = n;
  t.coarse_ = (n - 1) / 2;
  t.structure_ = TransferStructure::tau;
  t.smoother_ = BandMatrix::toeplitz(n, p);
  t.symbol_ = std::move(p);
  return t;
}

const BandMatrix& GridTransfer::band() const {
  if (const auto* b = std::get_if<BandMatrix>(&smoother_)) return *b;
  throw InvalidArgument("GridTransfer::band: circulant transfer has no band form");
}

void GridTransfer::prolong(std::span<const cplx> e, std::span<cplx> out) const {
  if (static_cast<int>(e.size()) != coarse_ || static_cast<int>(out.size()) != fine_) {
    throw SizeMismatch("GridTransfer::prolong: size mismatch");
  }
  cvec up(static_cast<size_t>(fine_));
  for (int c = 0; c < coarse_; ++c) up[2 * c + offset()] = e[c];
  std::visit([&](const auto& m) { m.matvec(up, out); }, smoother_);
}

cvec GridTransfer::prolong(std::span<const cplx> e) const {
  cvec out(static_cast<size_t>(fine_));
  prolong(e, out);
  return out;
}

void GridTransfer::restrict(std::span<const cplx> r, std::span<cplx> out) const {
  if (static_cast<int>(r.size()) != fine_ || static_cast<int>(out.size()) != coarse_) {
    throw SizeMismatch("GridTransfer::restrict: size mismatch");
  }
  cvec tmp(static_cast<size_t>(fine_));
  std::visit([&](const auto& m) { m.adjoint_matvec(r, tmp); }, smoother_);
  for (int c = 0; c < coarse_; ++c) out[c] = tmp[2 * c + offset()];
}

cvec GridTransfer::restrict(std::span<const cplx> r) const {
  cvec out(static_cast<size_t>(coarse_));
  restrict(r, out);
  return out;
}

}  // namespace saddlemg
