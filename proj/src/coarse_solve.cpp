#include "saddlemg/coarse_solve.hpp"

#include <algorithm>

#include "saddlemg/error.hpp"
#include "saddlemg/fft.hpp"

namespace saddlemg {

ExactSolver::ExactSolver(const SaddleSystem& s, double rank_tol)
    : structure_(s.structure()), n_(s.n()) {
  const auto n = static_cast<size_t>(n_);
  if (structure_ == Structure::circulant) {
    const auto eA = s.A().circulant().eigenvalues();
    const auto e12 = s.hat12().circulant().eigenvalues();
    const auto e21 = s.hat21().circulant().eigenvalues();
    const auto eC = s.Chat().circulant().eigenvalues();
    std::vector<Eigen::JacobiSVD<Eigen::Matrix2cd>> svd;
    svd.reserve(n);
    double smax = 0.0;
    for (size_t j = 0; j < n; ++j) {
      Eigen::Matrix2cd m;
      m << eA[j], e12[j], e21[j], eC[j];
      svd.emplace_back(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
      smax = std::max(smax, svd.back().singularValues()(0));
    }
    const double cut = rank_tol * smax;
    q11_.resize(n);
    q12_.resize(n);
    q21_.resize(n);
    q22_.resize(n);
    for (size_t j = 0; j < n; ++j) {
      const auto& d = svd[j];
      Eigen::Matrix2cd pinv = Eigen::Matrix2cd::Zero();
      for (int k = 0; k < 2; ++k) {
        const double sv = d.singularValues()(k);
        if (sv <= cut) continue;
        ++rank_;
        pinv += d.matrixV().col(k) * d.matrixU().col(k).adjoint() / sv;
      }
      q11_[j] = pinv(0, 0);
      q12_[j] = pinv(0, 1);
      q21_[j] = pinv(1, 0);
      q22_[j] = pinv(1, 1);
    }
    return;
  }
  const Eigen::SparseMatrix<cplx> m = s.assemble_sparse();
  if (2 * n_ <= kDenseLimit) {
    dense_ = std::make_shared<Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd>>();
    dense_->setThreshold(rank_tol);
    dense_->compute(Eigen::MatrixXcd(m));
    rank_ = static_cast<int>(dense_->rank());
    return;
  }
  sparse_ = std::make_shared<Eigen::SparseLU<Eigen::SparseMatrix<cplx>>>();
  sparse_->compute(m);
  if (sparse_->info() != Eigen::Success) {
    throw Error("ExactSolver: sparse factorisation failed (singular Toeplitz system)");
  }
  rank_ = 2 * n_;
}

void ExactSolver::solve(std::span<const cplx> c, std::span<cplx> y) const {
  if (static_cast<int>(c.size()) != size() || static_cast<int>(y.size()) != size()) {
    throw SizeMismatch("ExactSolver::solve: size mismatch");
  }
  const auto n = static_cast<size_t>(n_);
  if (structure_ == Structure::circulant) {
    cvec X(2 * n);
    std::span<cplx> X1(X.data(), n), X2(X.data() + n, n);
    fft::forward(c.first(n), X1);
    fft::forward(c.subspan(n), X2);
    for (size_t j = 0; j < n; ++j) {
      const cplx a = X1[j];
      const cplx b = X2[j];
      X1[j] = q11_[j] * a + q12_[j] * b;
      X2[j] = q21_[j] * a + q22_[j] * b;
    }
    fft::inverse(X1, y.first(n));
    fft::inverse(X2, y.subspan(n));
    return;
  }
  const Eigen::Map<const Eigen::VectorXcd> rhs(c.data(), static_cast<Eigen::Index>(c.size()));
  Eigen::Map<Eigen::VectorXcd> out(y.data(), static_cast<Eigen::Index>(y.size()));
  if (dense_) {
    out = dense_->solve(rhs);
  } else {
    out = sparse_->solve(rhs);
  }
}

cvec ExactSolver::solve(std::span<const cplx> c) const {
  cvec y(c.size());
  solve(c, y);
  return y;
}

}  // namespace saddlemg
