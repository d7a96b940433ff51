#include "saddlemg/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "saddlemg/error.hpp"
#include "saddlemg/fft.hpp"

namespace saddlemg {

double grid_angle(int j, int n) noexcept {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
}

CirculantOp::CirculantOp(int n, TrigPoly symbol) : n_(n), symbol_(std::move(symbol)) {
  if (n <= 0) throw InvalidArgument("CirculantOp: size must be positive");
  eig_.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) eig_[j] = symbol_(grid_angle(j, n));
}

cplx CirculantOp::entry(int i, int k) const {
  cplx v{};
  const int z = symbol_.degree();
  for (int j = -z; j <= z && !symbol_.is_zero(); ++j) {
    if ((((i - k - j) % n_) + n_) % n_ == 0) v += symbol_.coeff(j);
  }
  return v;
}

cvec CirculantOp::first_column() const {
  cvec col(static_cast<size_t>(n_));
  for (int i = 0; i < n_; ++i) col[i] = entry(i, 0);
  return col;
}

void CirculantOp::apply_spectrum(std::span<const cplx> x, std::span<cplx> y,
                                 bool conjugate) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_) {
    throw SizeMismatch("CirculantOp: vector length does not match operator size");
  }
  fft::forward(x, y);
  if (conjugate) {
    for (int j = 0; j < n_; ++j) y[j] *= std::conj(eig_[j]);
  } else {
    for (int j = 0; j < n_; ++j) y[j] *= eig_[j];
  }
  fft::inverse(y, y);
}

void CirculantOp::matvec(std::span<const cplx> x, std::span<cplx> y) const {
  apply_spectrum(x, y, false);
}

cvec CirculantOp::matvec(std::span<const cplx> x) const {
  cvec y(x.size());
  matvec(x, y);
  return y;
}

void CirculantOp::adjoint_matvec(std::span<const cplx> x, std::span<cplx> y) const {
  apply_spectrum(x, y, true);
}

PseudoSolution solve_pseudo(const CirculantOp& op, std::span<const cplx> b, double kernel_tol) {
  const int n = op.size();
  if (static_cast<int>(b.size()) != n) throw SizeMismatch("solve_pseudo: length mismatch");
  PseudoSolution out;
  out.x.assign(b.begin(), b.end());
  fft::forward(out.x, out.x);
  const auto eig = op.eigenvalues();
  double lmax = 0.0;
  for (const auto& l : eig) lmax = std::max(lmax, std::abs(l));
  double total = 0.0;
  double null_part = 0.0;
  for (int j = 0; j < n; ++j) {
    const double w = std::norm(out.x[j]);
    total += w;
    if (lmax > 0.0 && std::abs(eig[j]) > kernel_tol * lmax) {
      out.x[j] /= eig[j];
    } else {
      null_part += w;
      out.x[j] = 0.0;
    }
  }
  fft::inverse(out.x, out.x);
  out.null_fraction = total > 0.0 ? std::sqrt(null_part / total) : 0.0;
  out.consistent = out.null_fraction < 1e-8;
  return out;
}

}  // namespace saddlemg
