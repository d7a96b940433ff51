// Random symbol triples satisfying the smoothing hypotheses by construction.
#pragma once

#include <random>
#include <vector>

#include "saddlemg/analysis.hpp"
#include "saddlemg/hierarchy.hpp"

namespace oracle {

struct RandomTriple {
  saddlemg::TrigPoly fA, fB, fC;
};

// Positive cosine polynomial: c₀ exceeds the sum of the other magnitudes.
inline saddlemg::TrigPoly positive_cosine(std::mt19937& rng, int degree, double margin) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  saddlemg::TrigPoly p;
  double sum = 0.0;
  for (int k = 1; k <= degree; ++k) {
    const double c = u(rng);
    sum += std::abs(c);
    p = p + saddlemg::TrigPoly::cosine(k, c);
  }
  return p + saddlemg::TrigPoly(sum + margin);
}

// f_A = (2 − 2cosθ)s, f_B = (1 − e^{iθ})r, f_C ≥ 0 with s > 0, r arbitrary.
inline RandomTriple random_triple(std::mt19937& rng) {
  using saddlemg::TrigPoly;
  using saddlemg::cplx;
  std::uniform_int_distribution<int> deg(0, 2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RandomTriple t;
  const TrigPoly base{{-1, -1.0}, {0, 2.0}, {1, -1.0}};
  t.fA = base * positive_cosine(rng, deg(rng), 0.2 + std::abs(u(rng)));
  TrigPoly r;
  const int dr = deg(rng);
  for (int j = -dr; j <= dr; ++j) r = r + TrigPoly::monomial(j, cplx(u(rng), u(rng)));
  if (r.is_zero()) r = TrigPoly(1.0);
  t.fB = TrigPoly{{0, 1.0}, {1, -1.0}} * r;
  t.fC = positive_cosine(rng, deg(rng), 0.05 + 0.5 * std::abs(u(rng)));
  return t;
}

// Symbol recursion of a Toeplitz-style hierarchy, α chosen per level from the sup norm.
inline std::vector<saddlemg::CoarseSymbols> symbol_levels(const RandomTriple& t,
                                                          const saddlemg::Projectors& p, int levels,
                                                          std::vector<double>* alphas = nullptr) {
  std::vector<saddlemg::CoarseSymbols> out{{t.fA, t.fB, t.fC}};
  for (int l = 1; l < levels; ++l) {
    const auto& f = out.back();
    const double a = saddlemg::alpha_level(f.fA, saddlemg::Structure::toeplitz, 0);
    if (alphas) alphas->push_back(a);
    out.push_back(saddlemg::coarsen_symbols(f.fA, f.fB, f.fC, a, p));
  }
  if (alphas) {
    alphas->push_back(saddlemg::alpha_level(out.back().fA, saddlemg::Structure::toeplitz, 0));
  }
  return out;
}

}  // namespace oracle
