#include "saddlemg/band_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "saddlemg/error.hpp"

namespace saddlemg {

BandMatrix::BandMatrix(int n, int lower, int upper)
    : n_(n), lower_(std::max(0, lower)), upper_(std::max(0, upper)) {
  if (n <= 0) throw InvalidArgument("BandMatrix: size must be positive");
  lower_ = std::min(lower_, n - 1);
  upper_ = std::min(upper_, n - 1);
  diags_.assign(static_cast<size_t>(lower_ + upper_ + 1), std::vector<cplx>(n));
}

BandMatrix BandMatrix::identity(int n) {
  BandMatrix m(n, 0, 0);
  std::fill(m.diag(0).begin(), m.diag(0).end(), cplx(1.0));
  return m;
}

BandMatrix BandMatrix::diagonal(std::span<const cplx> d) {
  BandMatrix m(static_cast<int>(d.size()), 0, 0);
  std::copy(d.begin(), d.end(), m.diag(0).begin());
  return m;
}

BandMatrix BandMatrix::toeplitz(int n, const TrigPoly& f) {
  const int z = f.degree();
  BandMatrix m(n, z, z);
  for (int d = -m.lower_; d <= m.upper_; ++d) {
    // M(i, i + d) = a_{-d}
    const cplx a = f.coeff(-d);
    auto& v = m.diag(d);
    for (int i = 0; i < n; ++i) {
      if (i + d >= 0 && i + d < n) v[i] = a;
    }
  }
  return m;
}

cplx BandMatrix::operator()(int i, int k) const noexcept {
  const int d = k - i;
  if (d < -lower_ || d > upper_ || i < 0 || i >= n_ || k < 0 || k >= n_) return {};
  return diag(d)[i];
}

cplx& BandMatrix::at(int i, int k) {
  const int d = k - i;
  if (d < -lower_ || d > upper_ || i < 0 || i >= n_ || k < 0 || k >= n_) {
    throw InvalidArgument("BandMatrix::at: entry outside the band");
  }
  return diag(d)[i];
}

std::vector<cplx> BandMatrix::diagonal_entries() const { return diag(0); }

void BandMatrix::matvec(std::span<const cplx> x, std::span<cplx> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_) {
    throw SizeMismatch("BandMatrix: vector length does not match matrix size");
  }
  std::fill(y.begin(), y.end(), cplx{});
  for (int d = -lower_; d <= upper_; ++d) {
    const auto& v = diag(d);
    const int lo = std::max(0, -d);
    const int hi = std::min(n_, n_ - d);
    for (int i = lo; i < hi; ++i) y[i] += v[i] * x[i + d];
  }
}

cvec BandMatrix::matvec(std::span<const cplx> x) const {
  cvec y(x.size());
  matvec(x, y);
  return y;
}

void BandMatrix::adjoint_matvec(std::span<const cplx> x, std::span<cplx> y) const {
  if (static_cast<int>(x.size()) != n_ || static_cast<int>(y.size()) != n_) {
    throw SizeMismatch("BandMatrix: vector length does not match matrix size");
  }
  std::fill(y.begin(), y.end(), cplx{});
  for (int d = -lower_; d <= upper_; ++d) {
    const auto& v = diag(d);
    const int lo = std::max(0, -d);
    const int hi = std::min(n_, n_ - d);
    for (int i = lo; i < hi; ++i) y[i + d] += std::conj(v[i]) * x[i];
  }
}

BandMatrix BandMatrix::adjoint() const {
  BandMatrix m(n_, upper_, lower_);
  for (int d = -lower_; d <= upper_; ++d) {
    const auto& v = diag(d);
    auto& w = m.diag(-d);
    const int lo = std::max(0, -d);
    const int hi = std::min(n_, n_ - d);
    for (int i = lo; i < hi; ++i) w[i + d] = std::conj(v[i]);
  }
  return m;
}

BandMatrix BandMatrix::scale_rows(std::span<const cplx> d) const {
  if (static_cast<int>(d.size()) != n_) throw SizeMismatch("BandMatrix::scale_rows");
  BandMatrix m = *this;
  for (auto& v : m.diags_) {
    for (int i = 0; i < n_; ++i) v[i] *= d[i];
  }
  return m;
}

BandMatrix BandMatrix::downsample(int coarse_size, int offset) const {
  if (offset + 2 * (coarse_size - 1) >= n_) throw SizeMismatch("BandMatrix::downsample");
  BandMatrix m(coarse_size, lower_ / 2, upper_ / 2);
  for (int d = -m.lower_; d <= m.upper_; ++d) {
    auto& w = m.diag(d);
    for (int c = 0; c < coarse_size; ++c) {
      if (c + d < 0 || c + d >= coarse_size) continue;
      w[c] = (*this)(2 * c + offset, 2 * (c + d) + offset);
    }
  }
  return m;
}

BandMatrix BandMatrix::trimmed(double tol) const {
  double mx = 0.0;
  for (const auto& v : diags_) {
    for (const auto& x : v) mx = std::max(mx, std::abs(x));
  }
  const double cut = tol * mx;
  auto negligible = [&](int d) {
    return std::all_of(diag(d).begin(), diag(d).end(),
                       [&](const cplx& x) { return std::abs(x) <= cut; });
  };
  int lo = lower_;
  int up = upper_;
  while (lo > 0 && negligible(-lo)) --lo;
  while (up > 0 && negligible(up)) --up;
  BandMatrix m(n_, lo, up);
  for (int d = -lo; d <= up; ++d) m.diag(d) = diag(d);
  return m;
}

BandMatrix operator*(const BandMatrix& a, const BandMatrix& b) {
  if (a.n_ != b.n_) throw SizeMismatch("BandMatrix product: size mismatch");
  const int n = a.n_;
  BandMatrix m(n, a.lower_ + b.lower_, a.upper_ + b.upper_);
  for (int da = -a.lower_; da <= a.upper_; ++da) {
    const auto& va = a.diag(da);
    for (int db = -b.lower_; db <= b.upper_; ++db) {
      const int d = da + db;
      if (d < -m.lower_ || d > m.upper_) continue;
      const auto& vb = b.diag(db);
      auto& w = m.diag(d);
      // (AB)(i, i+d) += A(i, i+da) B(i+da, i+da+db)
      const int lo = std::max({0, -da, -d});
      const int hi = std::min({n, n - da, n - d});
      for (int i = lo; i < hi; ++i) w[i] += va[i] * vb[i + da];
    }
  }
  return m;
}

BandMatrix operator+(const BandMatrix& a, const BandMatrix& b) {
  if (a.n_ != b.n_) throw SizeMismatch("BandMatrix sum: size mismatch");
  BandMatrix m(a.n_, std::max(a.lower_, b.lower_), std::max(a.upper_, b.upper_));
  for (int d = -a.lower_; d <= a.upper_; ++d) {
    for (int i = 0; i < a.n_; ++i) m.diag(d)[i] += a.diag(d)[i];
  }
  for (int d = -b.lower_; d <= b.upper_; ++d) {
    for (int i = 0; i < b.n_; ++i) m.diag(d)[i] += b.diag(d)[i];
  }
  return m;
}

BandMatrix operator*(cplx s, const BandMatrix& a) {
  BandMatrix m = a;
  for (auto& v : m.diags_) {
    for (auto& x : v) x *= s;
  }
  return m;
}

BandMatrix operator-(const BandMatrix& a, const BandMatrix& b) { return a + cplx(-1.0) * b; }

}  // namespace saddlemg
