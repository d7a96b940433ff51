#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "saddlemg/error.hpp"
#include "saddlemg/experiment.hpp"
#include "saddlemg/saddle.hpp"

using namespace saddlemg;

namespace {

oracle::Saddle dense_saddle(const SaddleSystem& s) {
  const int n = s.n();
  if (s.structure() == Structure::circulant) {
    return {oracle::circulant(n, s.fA()), oracle::circulant(n, s.fB()), oracle::circulant(n, s.fC())};
  }
  return {oracle::toeplitz(n, s.fA()), oracle::toeplitz(n, s.fB()), oracle::toeplitz(n, s.fC())};
}

SaddleSystem toeplitz_system(int n, double rho, double alpha) {
  const auto e = elasticity_symbols(rho);
  return SaddleSystem::toeplitz(BandMatrix::toeplitz(n, e.fA), BandMatrix::toeplitz(n, e.fB),
                                BandMatrix::toeplitz(n, e.fC), e.fA, e.fB, e.fC, alpha);
}

oracle::Vec apply(const SaddleSystem& s, void (SaddleSystem::*f)(std::span<const cplx>, std::span<cplx>) const,
                  const cvec& x) {
  cvec y(x.size());
  (s.*f)(x, y);
  return oracle::to_eigen(y);
}

}  // namespace

TEST_SUITE("saddle") {
  TEST_CASE("f_Chat closed form") {
    for (double rho : {0.5, 0.05, 0.005}) {
      const auto e = elasticity_symbols(rho);
      const TrigPoly f = hatC_symbol(e.fA, e.fB, e.fC, 0.5);
      CHECK(std::abs(f.coeff(0) - (32 * rho + 15) / 24) < 1e-14);
      CHECK(std::abs(f.coeff(1) - (4 * rho - 3) / 12) < 1e-14);
      CHECK(std::abs(f.coeff(-1) - (4 * rho - 3) / 12) < 1e-14);
      CHECK(std::abs(f.coeff(2) + 1.0 / 16) < 1e-14);
      CHECK(std::abs(f.coeff(-2) + 1.0 / 16) < 1e-14);
      CHECK(f.degree() == 2);
    }
    const auto e = elasticity_symbols(0.5);
    CHECK(approx_equal(hatC_symbol(e.fA, TrigPoly{}, e.fC, 0.5), e.fC, 0.0));
    CHECK(approx_equal(hatC_symbol(e.fA, e.fB, e.fC, 0.0), e.fC, 0.0));
    CHECK_THROWS(hatC_symbol(TrigPoly{}, e.fB, e.fC, 0.5));
  }

  TEST_CASE("circulant transformed operator against dense") {
    for (int n : {8, 16, 32}) {
      const auto e = elasticity_symbols(0.05);
      const auto s = SaddleSystem::circulant(n, e.fA, e.fB, e.fC, 0.5);
      const oracle::Hat h = oracle::transform(dense_saddle(s), 0.5);
      CHECK(oracle::max_diff(oracle::dense_of(s.Chat()), h.Chat) < 1e-13);
      CHECK(oracle::max_diff(oracle::dense_of(s.hat12()), h.hat12) < 1e-13);
      CHECK(oracle::max_diff(oracle::dense_of(s.hat21()), h.hat21) < 1e-13);
      CHECK(oracle::max_diff(oracle::circulant(n, s.fChat()), h.Chat) < 1e-13);
      const auto x = oracle::test_vector(2 * n);
      const oracle::Vec ref = h.full() * oracle::to_eigen(x);
      CHECK((apply(s, &SaddleSystem::apply_hatA, x) - ref).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((apply(s, &SaddleSystem::apply_hatA_factored, x) - ref).cwiseAbs().maxCoeff() < 1e-12);
      const oracle::Vec sad = oracle::saddle_matrix(dense_saddle(s)) * oracle::to_eigen(x);
      CHECK((apply(s, &SaddleSystem::apply_saddle, x) - sad).cwiseAbs().maxCoeff() < 1e-12);
      const oracle::Mat sparse = oracle::Mat(s.assemble_sparse());
      CHECK(oracle::max_diff(sparse, h.full()) < 1e-13);
    }
  }

  TEST_CASE("Toeplitz transformed operator against dense") {
    for (int n : {7, 15, 31}) {
      const auto s = toeplitz_system(n, 0.5, 0.5);
      const oracle::Hat h = oracle::transform(dense_saddle(s), 0.5);
      CHECK(oracle::max_diff(oracle::dense_of(s.Chat()), h.Chat) < 1e-13);
      const auto x = oracle::test_vector(2 * n, 0.4);
      const oracle::Vec ref = h.full() * oracle::to_eigen(x);
      CHECK((apply(s, &SaddleSystem::apply_hatA, x) - ref).cwiseAbs().maxCoeff() < 1e-12);
      CHECK((apply(s, &SaddleSystem::apply_hatA_factored, x) - ref).cwiseAbs().maxCoeff() < 1e-12);
      // Boundary rows of Ĉ differ from the symbol.
      CHECK(std::abs(s.diag_Chat()[0] - h.Chat(0, 0)) < 1e-14);
      CHECK(std::abs(s.diag_Chat()[n / 2] - s.fChat().coeff(0)) < 1e-14);
    }
  }

  TEST_CASE("triangular factors") {
    const int n = 16;
    const auto e = elasticity_symbols(0.5);
    const auto s = SaddleSystem::circulant(n, e.fA, e.fB, e.fC, 0.5);
    const oracle::Saddle d = dense_saddle(s);
    const oracle::Mat Dinv = d.A.diagonal().cwiseInverse().asDiagonal();
    const oracle::Mat I = oracle::Mat::Identity(n, n);
    const oracle::Mat Z = oracle::Mat::Zero(n, n);
    const oracle::Mat L = oracle::blocks(I, Z, 0.5 * d.B * Dinv, -I);
    const oracle::Mat U = oracle::blocks(I, -0.5 * Dinv * d.B.adjoint(), Z, I);
    const auto x = oracle::test_vector(2 * n);
    CHECK((apply(s, &SaddleSystem::apply_L, x) - L * oracle::to_eigen(x)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((apply(s, &SaddleSystem::apply_U, x) - U * oracle::to_eigen(x)).cwiseAbs().maxCoeff() < 1e-13);
    // L is its own inverse.
    const oracle::Vec y = apply(s, &SaddleSystem::apply_L, x);
    CHECK((apply(s, &SaddleSystem::apply_L, oracle::to_std(y)) - oracle::to_eigen(x)).cwiseAbs().maxCoeff() < 1e-13);
  }

  TEST_CASE("alpha zero leaves the blocks unchanged") {
    const auto e = elasticity_symbols(0.5);
    const auto s = SaddleSystem::circulant(8, e.fA, e.fB, e.fC, 0.0);
    const oracle::Saddle d = dense_saddle(s);
    CHECK(oracle::max_diff(oracle::dense_of(s.Chat()), d.C) < 1e-14);
    CHECK(oracle::max_diff(oracle::dense_of(s.hat12()), d.B.adjoint()) < 1e-14);
    CHECK(oracle::max_diff(oracle::dense_of(s.hat21()), -d.B) < 1e-14);
  }

  TEST_CASE("admissible alpha keeps Chat positive semidefinite") {
    // For α ∈ (0, 2/λmax(D⁻¹A)) the middle factor 2αD⁻¹ − α²D⁻¹AD⁻¹ is positive semidefinite.
    const auto s0 = toeplitz_system(15, 0.005, 0.5);
    const oracle::Saddle d = dense_saddle(s0);
    const double lmax = (d.A / 2.0).selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff();
    for (double alpha : {0.1, 0.5, 1.9 / lmax}) {
      const oracle::Hat h = oracle::transform(d, alpha);
      CHECK(h.Chat.selfadjointView<Eigen::Lower>().eigenvalues().minCoeff() > 0.0);
    }
  }

  TEST_CASE("Jacobi post-smoothing") {
    for (Structure st : {Structure::circulant, Structure::toeplitz}) {
      const int n = st == Structure::circulant ? 16 : 15;
      const auto e = elasticity_symbols(0.5);
      const auto s = st == Structure::circulant ? SaddleSystem::circulant(n, e.fA, e.fB, e.fC, 0.5)
                                                : toeplitz_system(n, 0.5, 0.5);
      const oracle::Mat hat = oracle::transform(dense_saddle(s), 0.5).full();
      const auto x0 = oracle::test_vector(2 * n, 0.1);
      const auto b = oracle::test_vector(2 * n, 2.0);
      cvec x = x0;
      jacobi_post_smooth(s, x, b, 0.6);
      const oracle::Vec r = oracle::to_eigen(b) - hat * oracle::to_eigen(x0);
      const oracle::Vec ref = oracle::to_eigen(x0) + 0.6 * hat.diagonal().cwiseInverse().cwiseProduct(r);
      CHECK((oracle::to_eigen(x) - ref).cwiseAbs().maxCoeff() < 1e-12);
      cvec zero(2 * n, 0.0);
      jacobi_post_smooth(s, zero, cvec(2 * n, 0.0), 0.6);
      for (const auto& v : zero) CHECK(v == cplx{});
    }
  }

  TEST_CASE("right-hand side and residual") {
    const auto e = elasticity_symbols(0.5);
    const auto s = SaddleSystem::circulant(32, e.fA, e.fB, e.fC, 0.5);
    const cvec xt = sine_samples(64);
    CHECK(xt.size() == 64);
    CHECK(std::abs(xt[1] - std::sin(M_PI / 63)) < 1e-15);
    const cvec b = build_rhs(s, xt);
    CHECK(norm2(residual(s, xt, b)) < 1e-13);
    for (const auto& v : build_rhs(s, cvec(64, 0.0))) CHECK(v == cplx{});
    CHECK_THROWS_AS(residual(s, cvec(10), b), SizeMismatch);
  }
}
