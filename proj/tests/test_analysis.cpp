#include <doctest.h>

#include <cmath>
#include <random>

#include "random_symbols.hpp"
#include "saddlemg/analysis.hpp"
#include "saddlemg/error.hpp"
#include "saddlemg/experiment.hpp"

using namespace saddlemg;

namespace {

const Verdict& find(const std::vector<Verdict>& v, const std::string& prefix) {
  for (const auto& x : v)
    if (x.name.rfind(prefix, 0) == 0) return x;
  throw std::runtime_error("no verdict " + prefix);
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("approximation constants") {
    const auto e = elasticity_symbols(0.5);
    const auto p = Projectors::elasticity();
    CHECK(kappa_bound(e.fA, p.pA) == doctest::Approx(2.0).epsilon(1e-12));
    const TrigPoly fChat = hatC_symbol(e.fA, e.fB, e.fC, 0.5);
    CHECK(kappa_bound(fChat, p.pC) == doctest::Approx(31.0 / 8).epsilon(1e-12));
    // 2·â₀·‖1/f‖·‖1/(1+1)‖ = 2·3·(1/2)·(1/2).
    CHECK(kappa_bound(TrigPoly(3.0) + TrigPoly::cosine(1), TrigPoly(1.0)) ==
          doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(kappa_bound(e.fA, TrigPoly(1.0)), UnboundedRatio);
  }

  TEST_CASE("sup norms") {
    const auto e = elasticity_symbols(0.5);
    CHECK(symbol_sup(e.fA) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(symbol_sup(TrigPoly(1.5)) == doctest::Approx(1.5));
    CHECK(coupling_sup(e.fA, e.fB, e.fC) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(a0(e.fA) == 2.0);
  }

  TEST_CASE("smoothing constants") {
    const auto e = elasticity_symbols(0.5);
    const TrigPoly fChat = hatC_symbol(e.fA, e.fB, e.fC, 0.5);
    const GammaBounds g = gamma_bounds(e.fA, e.fB, e.fC, fChat, 0.5);
    CHECK(g.gamma_A == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g.gamma_Chat == doctest::Approx(48.0 / 31).epsilon(1e-12));
    CHECK(g.gamma_tilde() == doctest::Approx(96.0 / 55).epsilon(1e-12));
  }

  TEST_CASE("optimal relaxation") {
    const MuConstants k{2.0, 31.0 / 8, 2.0, 48.0 / 31};
    CHECK(k.kappa_tilde() == doctest::Approx(124.0 / 47).epsilon(1e-14));
    CHECK(k.omega_upper() == doctest::Approx(1.0));
    const OmegaOpt o = omega_opt(k);
    CHECK(std::abs(o.omega - 55.0 / 96) < 1e-15);
    CHECK(rational_string(o.omega) == "55/96");
    CHECK(std::abs(o.mu - 0.8848) < 5e-4);
    const double ref = std::sqrt(1128.0 / 1705 * 0.25 - 47.0 / 124 + 1);
    CHECK(mu_bound(0.5, k) == doctest::Approx(ref).epsilon(1e-14));
    for (const auto& [w, mu] : mu_curve(k, 101)) CHECK(mu >= o.mu - 1e-12);
  }

  TEST_CASE("full report") {
    const auto e = elasticity_symbols(0.5);
    const TheoryReport r = analyze(e.fA, e.fB, e.fC, Projectors::elasticity());
    CHECK(r.alpha == 0.5);
    CHECK(r.a0_Chat == doctest::Approx(31.0 / 24).epsilon(1e-14));
    CHECK(r.constants.kappa_A == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.constants.kappa_Chat == doctest::Approx(31.0 / 8).epsilon(1e-12));
    CHECK(std::abs(r.opt.omega - 55.0 / 96) < 1e-15);
    CHECK(all_passed(r.verdicts));
    CHECK(r.verdicts.size() == 12);
    CHECK(r.c1 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.c2 == doctest::Approx(4.0).epsilon(1e-6));
    CHECK(r.chat_ratio == doctest::Approx(0.25).epsilon(1e-6));
  }

  TEST_CASE("hypothesis checks") {
    const auto e = elasticity_symbols(0.5);
    const auto p = Projectors::elasticity();
    const auto ok = check_hypotheses(e.fA, e.fB, e.fC, p.pA, p.pC, 0.5, 55.0 / 96);
    CHECK(all_passed(ok));
    for (const auto& v : ok) CHECK_FALSE(v.warning);

    const auto bad = check_hypotheses(e.fA, e.fB, e.fC, TrigPoly(1.0), p.pC, 0.5, 55.0 / 96);
    CHECK_FALSE(all_passed(bad));
    const Verdict& v = find(bad, "pA: limsup");
    CHECK_FALSE(v.passed);
    CHECK(std::abs(v.witness) < 1e-3);

    const auto small = elasticity_symbols(0.005);
    const auto triv = check_hypotheses(small.fA, small.fB, small.fC, p.pA, TrigPoly(1.0), 0.5, 0.5);
    CHECK(all_passed(triv));
    CHECK(find(triv, "pChat: limsup").value == doctest::Approx(100.0).epsilon(1e-9));

    CHECK_FALSE(find(check_hypotheses(e.fA, e.fB, e.fC, p.pA, p.pC, 0.5, 1.2), "omega").passed);
    CHECK_FALSE(find(check_hypotheses(e.fA, e.fB, e.fC, p.pA, p.pC, 1.1, 0.5), "alpha").passed);
    CHECK_FALSE(find(check_hypotheses(-1.0 * e.fA, e.fB, e.fC, p.pA, p.pC, 0.5, 0.5), "fA").passed);
    const TrigPoly fB_bad{{0, 1.0}, {1, 0.5}};
    CHECK_FALSE(find(check_hypotheses(e.fA, fB_bad, e.fC, p.pA, p.pC, 0.5, 0.5), "fB vanishes").passed);
  }

  TEST_CASE("level independency limits") {
    const auto e = elasticity_symbols(0.5);
    const oracle::RandomTriple t{e.fA, e.fB, e.fC};
    std::vector<double> alphas;
    const auto good = oracle::symbol_levels(t, Projectors::elasticity(), 6, &alphas);
    for (const auto& est : level_independency_check(good, alphas)) CHECK(est.bounded_nonzero);

    alphas.clear();
    const Projectors sabotaged{TrigPoly(1.0), Projectors::elasticity().pC};
    const auto bad = oracle::symbol_levels(t, sabotaged, 3, &alphas);
    bool any_failed = false;
    for (const auto& est : level_independency_check(bad, alphas)) any_failed |= !est.bounded_nonzero;
    CHECK(any_failed);
  }

  TEST_CASE("rational formatting") {
    CHECK(rational_string(0.5) == "1/2");
    CHECK(rational_string(-31.0 / 24) == "-31/24");
    CHECK(rational_string(3.0) == "3");
  }
}
