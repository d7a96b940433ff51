#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracle.hpp"
#include "saddlemg/error.hpp"
#include "saddlemg/hierarchy.hpp"
#include "saddlemg/trig_poly.hpp"

using namespace saddlemg;
using std::numbers::pi;

namespace {

const TrigPoly fA{{-1, -1.0}, {0, 2.0}, {1, -1.0}};
const TrigPoly fB{{0, 1.0}, {1, -1.0}};
const double s2 = std::numbers::sqrt2;
const TrigPoly pA{{-1, s2 / 2}, {0, s2}, {1, s2 / 2}};

TrigPoly fChat_half() {
  return TrigPoly{{-2, -1.0 / 16}, {-1, -1.0 / 12}, {0, 31.0 / 24}, {1, -1.0 / 12}, {2, -1.0 / 16}};
}

}  // namespace

TEST_SUITE("symbol") {
  TEST_CASE("evaluation") {
    CHECK(std::abs(fA(0.0)) < 1e-15);
    CHECK(fA.real_at(pi) == doctest::Approx(4.0).epsilon(1e-15));
    const cplx v = fB(pi / 2);
    CHECK(std::abs(v - cplx(1.0, -1.0)) < 1e-15);
    CHECK(fA.is_real_symmetric());
    CHECK_FALSE(fB.is_real_symmetric());
  }

  TEST_CASE("arithmetic") {
    CHECK(approx_equal(modulus_squared(fB), fA, 1e-15));
    CHECK(approx_equal(pA * TrigPoly(1.0), pA, 0.0));
    const TrigPoly expect{{-2, 0.5}, {-1, 2.0}, {0, 3.0}, {1, 2.0}, {2, 0.5}};
    CHECK(approx_equal(modulus_squared(pA), expect, 1e-14));
    CHECK((fA - fA).is_zero());
    CHECK(approx_equal(conj(fB), TrigPoly{{0, 1.0}, {-1, -1.0}}, 0.0));
    // Pointwise check of the product against sampled values.
    const TrigPoly prod = fA * fB;
    for (double t : {0.1, 1.0, 2.5, -3.0}) CHECK(std::abs(prod(t) - fA(t) * fB(t)) < 1e-14);
  }

  TEST_CASE("psi coarsening") {
    CHECK(psi_coarsen(TrigPoly::cosine(1)).is_zero());
    CHECK(approx_equal(psi_coarsen(TrigPoly(3.5)), TrigPoly(3.5), 0.0));
    CHECK(approx_equal(psi_coarsen(modulus_squared(pA) * fA), fA, 1e-14));
    CHECK(approx_equal(galerkin_coarse_symbol(pA, fA, pA), fA, 1e-14));
    const TrigPoly g = fChat_half() * fB;
    CHECK(approx_equal(galerkin_coarse_symbol(TrigPoly(1.0), g, TrigPoly(1.0)), psi_coarsen(g), 0.0));
    // Coefficient rule against the pointwise definition.
    const TrigPoly h = psi_coarsen(g);
    for (double t : {0.0, 0.4, 1.7, 3.1}) {
      const cplx ref = 0.5 * (g(t / 2) + g(t / 2 + pi));
      CHECK(std::abs(h(t) - ref) < 1e-14);
    }
  }

  TEST_CASE("galerkin symbol matches dense product") {
    const TrigPoly f = fChat_half();
    const TrigPoly c = galerkin_coarse_symbol(pA, f, pA);
    for (int n : {8, 16, 32}) {
      const oracle::Mat P = oracle::prolongation(n, pA, false);
      const oracle::Mat dense = P.adjoint() * oracle::circulant(n, f) * P;
      CHECK(oracle::max_diff(dense, oracle::circulant(n / 2, c)) < 1e-12);
    }
    // Non-Hermitian middle symbol and distinct projectors.
    const TrigPoly p2{{0, 1.0}, {1, 0.5}};
    const TrigPoly c2 = galerkin_coarse_symbol(p2, fB, pA);
    const oracle::Mat P1 = oracle::prolongation(16, pA, false);
    const oracle::Mat P2 = oracle::prolongation(16, p2, false);
    const oracle::Mat dense = P2.adjoint() * oracle::circulant(16, fB) * P1;
    CHECK(oracle::max_diff(dense, oracle::circulant(8, c2)) < 1e-12);
  }

  TEST_CASE("degree bound of the coarse symbol") {
    const TrigPoly f = fChat_half();
    const TrigPoly c = galerkin_coarse_symbol(pA, f, pA);
    CHECK(c.degree() <= (f.degree() + 2 * pA.degree()) / 2);
  }

  TEST_CASE("zero detection and propagation") {
    const auto z = find_zeros(fA);
    REQUIRE(z.size() == 1);
    CHECK(std::abs(z[0].location) < 1e-12);
    CHECK(z[0].order == 2);
    CHECK(zero_order(fB, 0.0) == 1);
    // The Galerkin symbol keeps the zero of f_A at the origin.
    const TrigPoly c = galerkin_coarse_symbol(pA, fA, pA);
    CHECK(zero_order(c, 0.0) == 2);
    CHECK(find_zeros(TrigPoly(3.0)).empty());
  }

  TEST_CASE("sup norm") {
    CHECK(sup_norm(fA) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(sup_norm(TrigPoly(2.5)) == doctest::Approx(2.5));
    const SampleGrid g = SampleGrid::half_period();
    CHECK(g.at(0) == 0.0);
    CHECK(g.at(g.size() - 1) == doctest::Approx(pi).epsilon(1e-15));
  }

  TEST_CASE("ratio suprema") {
    const TrigPoly num = modulus_squared(pA).shifted_by_pi();
    CHECK(ratio_sup(num, fA, find_zeros(fA)) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(ratio_sup(fA, fA, find_zeros(fA)) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(removable_limit(fA, fA, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double rho : {0.5, 0.05, 0.005}) {
      const TrigPoly f{{-2, -1.0 / 16}, {-1, (4 * rho - 3) / 12}, {0, (32 * rho + 15) / 24},
                       {1, (4 * rho - 3) / 12}, {2, -1.0 / 16}};
      CHECK(1.0 / f.real_at(0.0) == doctest::Approx(1.0 / (2 * rho)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(ratio_sup(TrigPoly(1.0), fA, find_zeros(fA)), UnboundedRatio);
    const auto tail = dyadic_tail(modulus_squared(fB), fA, 0.0);
    CHECK(tail.stabilized);
    CHECK(tail.last == doctest::Approx(1.0).epsilon(1e-6));
    // Ratio decaying like h²/2 near the origin, sampled above the rounding floor.
    const auto decay = dyadic_tail(num, fA, 0.0, 4, 10);
    for (size_t k = 0; k < decay.value.size(); ++k) {
      const double h = decay.theta[k];
      CHECK(decay.value[k] == doctest::Approx((1 - std::cos(h))).epsilon(1e-6));
    }
  }

  TEST_CASE("text round trip") {
    std::stringstream ss;
    write_symbol(ss, fB * pA);
    const TrigPoly back = read_symbol(ss);
    CHECK(approx_equal(back, fB * pA, 1e-16));
  }

  TEST_CASE("elasticity projector") {
    const auto p = Projectors::elasticity();
    CHECK(approx_equal(p.pA, pA, 1e-15));
    CHECK(p.pA.real_at(pi) == doctest::Approx(0.0).epsilon(1e-15));
  }
}
