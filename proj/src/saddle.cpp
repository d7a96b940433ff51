#include "saddlemg/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "saddlemg/error.hpp"
#include "saddlemg/fft.hpp"

namespace saddlemg {

int Block::size() const noexcept {
  return std::visit([](const auto& m) { return m.size(); }, op_);
}

cplx Block::entry(int i, int k) const {
  if (is_circulant()) return circulant().entry(i, k);
  return band()(i, k);
}

cvec Block::diagonal() const {
  if (is_circulant()) return cvec(static_cast<size_t>(size()), circulant().diagonal_value());
  return band().diagonal_entries();
}

void Block::matvec(std::span<const cplx> x, std::span<cplx> y) const {
  std::visit([&](const auto& m) { m.matvec(x, y); }, op_);
}

void Block::adjoint_matvec(std::span<const cplx> x, std::span<cplx> y) const {
  std::visit([&](const auto& m) { m.adjoint_matvec(x, y); }, op_);
}

TrigPoly hatC_symbol(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC, double alpha) {
  const double a0 = fA.coeff(0).real();
  if (!(a0 > 0.0)) throw InvalidArgument("hatC_symbol: a0(f_A) must be positive");
  const double s = alpha / a0;
  return fC + s * (modulus_squared(fB) * (TrigPoly(2.0) - s * fA));
}

SaddleSystem SaddleSystem::circulant(int n, TrigPoly fA, TrigPoly fB, TrigPoly fC, double alpha) {
  SaddleSystem s;
  s.structure_ = Structure::circulant;
  s.n_ = n;
  s.alpha_ = alpha;
  const double a0 = fA.coeff(0).real();
  if (!(a0 > 0.0)) throw InvalidArgument("SaddleSystem: a0(f_A) must be positive");
  s.fChat_ = hatC_symbol(fA, fB, fC, alpha);
  const TrigPoly damp = TrigPoly(1.0) - (alpha / a0) * fA;
  s.A_ = CirculantOp(n, fA);
  s.B_ = CirculantOp(n, fB);
  s.C_ = CirculantOp(n, fC);
  s.Chat_ = CirculantOp(n, s.fChat_);
  s.hat12_ = CirculantOp(n, damp * conj(fB));
  s.hat21_ = CirculantOp(n, -(fB * damp));
  s.dA_.assign(static_cast<size_t>(n), cplx(a0));
  s.dChat_.assign(static_cast<size_t>(n), s.fChat_.coeff(0));
  s.fA_ = std::move(fA);
  s.fB_ = std::move(fB);
  s.fC_ = std::move(fC);
  s.finish();
  return s;
}

SaddleSystem SaddleSystem::toeplitz(BandMatrix A, BandMatrix B, BandMatrix C, TrigPoly fA,
                                    TrigPoly fB, TrigPoly fC, double alpha) {
  const int n = A.size();
  if (B.size() != n || C.size() != n) throw SizeMismatch("SaddleSystem: block sizes differ");
  SaddleSystem s;
  s.structure_ = Structure::toeplitz;
  s.n_ = n;
  s.alpha_ = alpha;
  s.fChat_ = hatC_symbol(fA, fB, fC, alpha);
  s.dA_ = A.diagonal_entries();
  cvec dinv(s.dA_.size());
  for (size_t i = 0; i < dinv.size(); ++i) {
    if (s.dA_[i] == cplx{}) throw InvalidArgument("SaddleSystem: zero diagonal entry in A");
    dinv[i] = 1.0 / s.dA_[i];
  }
  const BandMatrix Dinv = BandMatrix::diagonal(dinv);
  const BandMatrix I = BandMatrix::identity(n);
  const BandMatrix Bh = B.adjoint();
  const BandMatrix middle = cplx(2.0 * alpha) * Dinv - cplx(alpha * alpha) * (Dinv * A * Dinv);
  s.Chat_ = (C + B * middle * Bh).trimmed();
  s.hat12_ = ((I - cplx(alpha) * (A * Dinv)) * Bh).trimmed();
  s.hat21_ = (cplx(-1.0) * (B * (I - cplx(alpha) * (Dinv * A)))).trimmed();
  s.dChat_ = s.Chat_.diagonal();
  s.A_ = std::move(A);
  s.B_ = std::move(B);
  s.C_ = std::move(C);
  s.fA_ = std::move(fA);
  s.fB_ = std::move(fB);
  s.fC_ = std::move(fC);
  s.finish();
  return s;
}

void SaddleSystem::finish() {
  inv_dA_.resize(dA_.size());
  inv_dChat_.resize(dChat_.size());
  for (size_t i = 0; i < dA_.size(); ++i) {
    if (dA_[i] == cplx{}) throw InvalidArgument("SaddleSystem: zero diagonal entry in A");
    if (dChat_[i] == cplx{}) throw InvalidArgument("SaddleSystem: zero diagonal entry in C-hat");
    inv_dA_[i] = 1.0 / dA_[i];
    inv_dChat_[i] = 1.0 / dChat_[i];
  }
}

namespace {

void check_len(std::span<const cplx> x, std::span<cplx> y, int m, const char* what) {
  if (static_cast<int>(x.size()) != m || static_cast<int>(y.size()) != m) throw SizeMismatch(what);
}

}  // namespace

void SaddleSystem::apply_hatA(std::span<const cplx> x, std::span<cplx> y) const {
  check_len(x, y, size(), "apply_hatA: size mismatch");
  const auto n = static_cast<size_t>(n_);
  if (structure_ == Structure::circulant) {
    cvec X(2 * n);
    std::span<cplx> X1(X.data(), n), X2(X.data() + n, n);
    fft::forward(x.first(n), X1);
    fft::forward(x.subspan(n), X2);
    const auto eA = A_.circulant().eigenvalues();
    const auto e12 = hat12_.circulant().eigenvalues();
    const auto e21 = hat21_.circulant().eigenvalues();
    const auto eC = Chat_.circulant().eigenvalues();
    for (size_t j = 0; j < n; ++j) {
      const cplx a = X1[j];
      const cplx b = X2[j];
      X1[j] = eA[j] * a + e12[j] * b;
      X2[j] = e21[j] * a + eC[j] * b;
    }
    fft::inverse(X1, y.first(n));
    fft::inverse(X2, y.subspan(n));
    return;
  }
  cvec tmp(n);
  A_.matvec(x.first(n), y.first(n));
  hat12_.matvec(x.subspan(n), tmp);
  for (size_t i = 0; i < n; ++i) y[i] += tmp[i];
  hat21_.matvec(x.first(n), y.subspan(n));
  Chat_.matvec(x.subspan(n), tmp);
  for (size_t i = 0; i < n; ++i) y[n + i] += tmp[i];
}

cvec SaddleSystem::apply_hatA(std::span<const cplx> x) const {
  cvec y(x.size());
  apply_hatA(x, y);
  return y;
}

void SaddleSystem::apply_saddle(std::span<const cplx> x, std::span<cplx> y) const {
  check_len(x, y, size(), "apply_saddle: size mismatch");
  const auto n = static_cast<size_t>(n_);
  cvec tmp(n);
  A_.matvec(x.first(n), y.first(n));
  B_.adjoint_matvec(x.subspan(n), tmp);
  for (size_t i = 0; i < n; ++i) y[i] += tmp[i];
  B_.matvec(x.first(n), y.subspan(n));
  C_.matvec(x.subspan(n), tmp);
  for (size_t i = 0; i < n; ++i) y[n + i] -= tmp[i];
}

void SaddleSystem::apply_L(std::span<const cplx> x, std::span<cplx> y) const {
  check_len(x, y, size(), "apply_L: size mismatch");
  const auto n = static_cast<size_t>(n_);
  cvec t(n);
  for (size_t i = 0; i < n; ++i) t[i] = x[i] * inv_dA_[i];
  cvec bt(n);
  B_.matvec(t, bt);
  for (size_t i = 0; i < n; ++i) {
    y[n + i] = alpha_ * bt[i] - x[n + i];
    y[i] = x[i];
  }
}

void SaddleSystem::apply_U(std::span<const cplx> x, std::span<cplx> y) const {
  check_len(x, y, size(), "apply_U: size mismatch");
  const auto n = static_cast<size_t>(n_);
  cvec t(n);
  B_.adjoint_matvec(x.subspan(n), t);
  for (size_t i = 0; i < n; ++i) {
    y[i] = x[i] - alpha_ * t[i] * inv_dA_[i];
    y[n + i] = x[n + i];
  }
}

void SaddleSystem::apply_hatA_factored(std::span<const cplx> x, std::span<cplx> y) const {
  cvec u(x.size());
  cvec z(x.size());
  apply_U(x, u);
  apply_saddle(u, z);
  apply_L(z, y);
}

Eigen::SparseMatrix<cplx> SaddleSystem::assemble_sparse() const {
  const int n = n_;
  std::vector<Eigen::Triplet<cplx>> trip;
  auto add_block = [&](const Block& blk, int r0, int c0) {
    if (blk.is_circulant()) {
      for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
          const cplx v = blk.entry(i, k);
          if (v != cplx{}) trip.emplace_back(r0 + i, c0 + k, v);
        }
      }
      return;
    }
    const BandMatrix& m = blk.band();
    for (int i = 0; i < n; ++i) {
      for (int k = std::max(0, i - m.lower()); k <= std::min(n - 1, i + m.upper()); ++k) {
        const cplx v = m(i, k);
        if (v != cplx{}) trip.emplace_back(r0 + i, c0 + k, v);
      }
    }
  };
  add_block(A_, 0, 0);
  add_block(hat12_, 0, n);
  add_block(hat21_, n, 0);
  add_block(Chat_, n, n);
  Eigen::SparseMatrix<cplx> m(2 * n, 2 * n);
  m.setFromTriplets(trip.begin(), trip.end());
  return m;
}

void residual(const SaddleSystem& s, std::span<const cplx> x, std::span<const cplx> b,
              std::span<cplx> r) {
  if (b.size() != x.size()) throw SizeMismatch("residual: size mismatch");
  s.apply_hatA(x, r);
  for (size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
}

cvec residual(const SaddleSystem& s, std::span<const cplx> x, std::span<const cplx> b) {
  cvec r(x.size());
  residual(s, x, b, r);
  return r;
}

void jacobi_post_smooth(const SaddleSystem& s, std::span<cplx> x, std::span<const cplx> b,
                        double omega) {
  const cvec r = residual(s, x, b);
  const auto n = static_cast<size_t>(s.n());
  const auto iA = s.inv_diag_A();
  const auto iC = s.inv_diag_Chat();
  for (size_t i = 0; i < n; ++i) {
    x[i] += omega * r[i] * iA[i];
    x[n + i] += omega * r[n + i] * iC[i];
  }
}

cvec build_rhs(const SaddleSystem& s, std::span<const cplx> x_true) { return s.apply_hatA(x_true); }

cvec sine_samples(int m) {
  cvec x(static_cast<size_t>(m));
  if (m == 1) return x;
  for (int i = 0; i < m; ++i) x[i] = std::sin(std::numbers::pi * i / (m - 1));
  return x;
}

double norm2(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& a : v) s += std::norm(a);
  return std::sqrt(s);
}

}  // namespace saddlemg
