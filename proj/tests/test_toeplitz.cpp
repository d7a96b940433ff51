#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle.hpp"
#include "saddlemg/band_matrix.hpp"
#include "saddlemg/toeplitz.hpp"
#include "saddlemg/transfer.hpp"

using namespace saddlemg;

namespace {

const TrigPoly fA{{-1, -1.0}, {0, 2.0}, {1, -1.0}};
const TrigPoly fB{{0, 1.0}, {1, -1.0}};
const TrigPoly fC{{-1, 1.0 / 6}, {0, 2.0 / 3}, {1, 1.0 / 6}};
const double s2 = std::numbers::sqrt2;
const TrigPoly pA{{-1, s2 / 2}, {0, s2}, {1, s2 / 2}};

}  // namespace

TEST_SUITE("toeplitz") {
  TEST_CASE("boundary stencil") {
    const ToeplitzOp t(8, fA);
    const auto y = t.matvec(cvec(8, 1.0));
    const double expect[] = {1, 0, 0, 0, 0, 0, 0, 1};
    for (int i = 0; i < 8; ++i) CHECK(std::abs(y[i] - expect[i]) < 1e-14);
  }

  TEST_CASE("FFT matvec equals dense multiply") {
    const TrigPoly g = fB * pA + TrigPoly{{-4, cplx(0.1, 0.2)}};
    for (int n : {3, 7, 15, 31, 100}) {
      const ToeplitzOp op(n, g);
      CHECK(op.embedding_size() >= 2 * n);
      const auto x = oracle::test_vector(n);
      const oracle::Vec y = oracle::to_eigen(op.matvec(x));
      CHECK((y - oracle::toeplitz(n, g) * oracle::to_eigen(x)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(oracle::max_diff(oracle::to_dense(n, [&](int i, int k) { return op.to_band()(i, k); }),
                             oracle::toeplitz(n, g)) == 0.0);
    }
  }

  TEST_CASE("band matrix algebra") {
    const int n = 9;
    const BandMatrix a = BandMatrix::toeplitz(n, fA);
    const BandMatrix b = BandMatrix::toeplitz(n, fB);
    const oracle::Mat da = oracle::toeplitz(n, fA);
    const oracle::Mat db = oracle::toeplitz(n, fB);
    auto dense = [&](const BandMatrix& m) { return oracle::to_dense(n, [&](int i, int k) { return m(i, k); }); };
    CHECK(oracle::max_diff(dense(a * b), da * db) < 1e-15);
    CHECK(oracle::max_diff(dense(a + b), da + db) < 1e-15);
    CHECK(oracle::max_diff(dense(a - b), da - db) < 1e-15);
    CHECK(oracle::max_diff(dense(b.adjoint()), db.adjoint()) < 1e-15);
    const auto x = oracle::test_vector(n);
    cvec y(n);
    b.adjoint_matvec(x, y);
    CHECK((oracle::to_eigen(y) - db.adjoint() * oracle::to_eigen(x)).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("tau cutting keeps odd 1-based indices") {
    const auto P = GridTransfer::tau(7, TrigPoly(1.0));
    CHECK(P.coarse_size() == 3);
    const cvec r{10, 11, 12, 13, 14, 15, 16};
    const auto c = P.restrict(r);
    CHECK(c[0] == cplx(11));
    CHECK(c[1] == cplx(13));
    CHECK(c[2] == cplx(15));
    CHECK(is_tau_size(511));
    CHECK_FALSE(is_tau_size(512));
  }

  TEST_CASE("tau prolongation matches dense columns") {
    const int n = 7;
    const auto P = GridTransfer::tau(n, pA);
    const oracle::Mat dense = oracle::prolongation(n, pA, true);
    for (int j = 0; j < 3; ++j) {
      cvec e(3, 0.0);
      e[j] = 1.0;
      const auto col = P.prolong(e);
      for (int i = 0; i < n; ++i) CHECK(std::abs(col[i] - dense(i, j)) < 1e-14);
    }
  }

  TEST_CASE("tau restrict is the adjoint of prolong") {
    for (int n : {7, 63, 1023}) {
      const auto P = GridTransfer::tau(n, pA * fB);
      const auto u = oracle::test_vector(P.coarse_size(), 0.9);
      const auto v = oracle::test_vector(n, 0.2);
      const cplx lhs = oracle::to_eigen(v).dot(oracle::to_eigen(P.prolong(u)));
      const cplx rhs = oracle::to_eigen(P.restrict(v)).dot(oracle::to_eigen(u));
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }

  TEST_CASE("galerkin_band equals dense triple product") {
    const auto I = GridTransfer::tau(15, TrigPoly(1.0));
    const BandMatrix id = galerkin_band(I, BandMatrix::identity(15), I);
    CHECK(id.size() == 7);
    for (int i = 0; i < 7; ++i)
      for (int k = 0; k < 7; ++k) CHECK(id(i, k) == cplx(i == k ? 1.0 : 0.0));

    for (int n : {7, 15, 31}) {
      const auto PA = GridTransfer::tau(n, pA);
      const oracle::Mat dP = oracle::prolongation(n, pA, true);
      const int nc = PA.coarse_size();
      for (const TrigPoly& f : {fA, fC, fB}) {
        const BandMatrix g = galerkin_band(PA, BandMatrix::toeplitz(n, f), PA);
        const oracle::Mat ref = dP.adjoint() * oracle::toeplitz(n, f) * dP;
        CHECK(oracle::max_diff(oracle::to_dense(nc, [&](int i, int k) { return g(i, k); }), ref) < 1e-13);
      }
    }
    const BandMatrix a = galerkin_band(GridTransfer::tau(15, pA), BandMatrix::toeplitz(15, fA),
                                       GridTransfer::tau(15, pA));
    CHECK(a.lower() == 1);
    CHECK(a.upper() == 1);
  }
}
