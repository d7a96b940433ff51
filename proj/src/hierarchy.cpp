#include "saddlemg/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "saddlemg/analysis.hpp"
#include "saddlemg/error.hpp"
#include "saddlemg/toeplitz.hpp"

namespace saddlemg {

Projectors Projectors::elasticity() {
  const double s = std::numbers::sqrt2;
  const TrigPoly p{{-1, s / 2.0}, {0, s}, {1, s / 2.0}};
  return {p, p};
}

Projectors Projectors::trivial_chat() { return {elasticity().pA, TrigPoly(1.0)}; }

CoarseSymbols coarsen_symbols(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC,
                              double alpha, const Projectors& p) {
  const double a = a0(fA);
  const TrigPoly fChat = hatC_symbol(fA, fB, fC, alpha);
  CoarseSymbols c;
  c.fA = galerkin_coarse_symbol(p.pA, fA, p.pA);
  c.fB = galerkin_coarse_symbol(p.pC, fB * (TrigPoly(1.0) - (alpha / a) * fA), p.pA);
  c.fC = galerkin_coarse_symbol(p.pC, fChat, p.pC);
  return c;
}

double alpha_level(const TrigPoly& fA, Structure structure, int n) {
  const double a = a0(fA);
  if (fA.is_zero() || !(a > 0.0)) throw InvalidArgument("alpha_level: f_A must have positive a0");
  double mx = 0.0;
  if (structure == Structure::circulant) {
    for (int j = 0; j < n; ++j) mx = std::max(mx, std::abs(fA(grid_angle(j, n))));
  } else {
    mx = symbol_sup(fA);
  }
  return a / mx;
}

double omega_level(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC, double alpha) {
  const double a = a0(fA);
  const TrigPoly fChat = hatC_symbol(fA, fB, fC, alpha);
  const double t1 = 2.0 * alpha - alpha * alpha * symbol_sup(fA) / a;
  const double t2 = a0(fChat) / coupling_sup(fA, fB, fC);
  return std::min(t1, t2);
}

bool can_coarsen(Structure structure, int n) noexcept {
  if (structure == Structure::circulant) return n > 4 && n % 2 == 0;
  return n > 3 && is_tau_size(n);
}

Hierarchy::Hierarchy(std::vector<Level> levels, Projectors projectors)
    : levels_(std::move(levels)), projectors_(std::move(projectors)) {
  if (levels_.empty()) throw InvalidArgument("Hierarchy: no levels");
  coarsest_ = std::make_shared<const ExactSolver>(levels_.back().system);
}

namespace {

Level make_level(int index, SaddleSystem s) {
  Level lv;
  lv.index = index;
  lv.n = s.n();
  lv.omega = omega_level(s.fA(), s.fB(), s.fC(), s.alpha());
  lv.system = std::move(s);
  return lv;
}

void validate(const Level& lv, const Projectors& p) {
  const auto& s = lv.system;
  const auto verdicts = check_hypotheses(s.fA(), s.fB(), s.fC(), p.pA, p.pC, s.alpha(), lv.omega);
  for (const auto& v : verdicts) {
    if (v.passed) continue;
    std::ostringstream msg;
    msg << "level " << lv.index << ": condition '" << v.name << "' fails (witness theta="
        << v.witness << ")";
    throw HypothesisFailure(msg.str(), lv.index);
  }
}

}  // namespace

Level coarsen_level(Level& fine, const Projectors& p) {
  const SaddleSystem& s = fine.system;
  if (!can_coarsen(s.structure(), s.n())) throw InvalidArgument("coarsen_level: level too small");
  const CoarseSymbols c = coarsen_symbols(s.fA(), s.fB(), s.fC(), s.alpha(), p);
  if (s.structure() == Structure::circulant) {
    fine.PA = GridTransfer::circulant(s.n(), p.pA);
    fine.PC = GridTransfer::circulant(s.n(), p.pC);
    const int nc = s.n() / 2;
    const double alpha = alpha_level(c.fA, Structure::circulant, nc);
    return make_level(fine.index + 1, SaddleSystem::circulant(nc, c.fA, c.fB, c.fC, alpha));
  }
  fine.PA = GridTransfer::tau(s.n(), p.pA);
  fine.PC = GridTransfer::tau(s.n(), p.pC);
  const BandMatrix& A = s.A().band();
  const BandMatrix Ac = galerkin_band(fine.PA, A, fine.PA);
  // B' = P_Ĉᴴ B(I − αD⁻¹A) P_A, and the (2,1) block of Â is −B(I − αD⁻¹A).
  const BandMatrix Bc = galerkin_band(fine.PC, cplx(-1.0) * s.hat21().band(), fine.PA);
  const BandMatrix Cc = galerkin_band(fine.PC, s.Chat().band(), fine.PC);
  const double alpha = alpha_level(c.fA, Structure::toeplitz, Ac.size());
  return make_level(fine.index + 1,
                    SaddleSystem::toeplitz(Ac, Bc, Cc, c.fA, c.fB, c.fC, alpha));
}

Hierarchy build_hierarchy(const SaddleSystem& finest, const Projectors& p,
                          const HierarchyOptions& opts) {
  std::vector<Level> levels;
  levels.push_back(make_level(0, finest));
  if (opts.validate) validate(levels.back(), p);
  while (can_coarsen(levels.back().system.structure(), levels.back().n) &&
         (opts.max_levels <= 0 || static_cast<int>(levels.size()) < opts.max_levels)) {
    Level next = coarsen_level(levels.back(), p);
    if (opts.validate) validate(next, p);
    levels.push_back(std::move(next));
  }
  return Hierarchy(std::move(levels), p);
}

void write_hierarchy_csv(std::ostream& os, const Hierarchy& h) {
  const auto old = os.precision(17);
  os << "level,n,alpha,omega,zA,zB,zC\n";
  for (const auto& lv : h.levels()) {
    const auto& s = lv.system;
    os << lv.index << ',' << lv.n << ',' << s.alpha() << ',' << lv.omega << ',' << s.fA().degree()
       << ',' << s.fB().degree() << ',' << s.fC().degree() << '\n';
  }
  os.precision(old);
}

std::vector<DegreeCheck> degree_checks(const std::vector<CoarseSymbols>& levels, const Projectors& p,
                                       int from_level) {
  std::vector<DegreeCheck> out;
  if (levels.empty()) return out;
  const int qA = p.pA.degree();
  const int q = std::max(qA, p.pC.degree());
  const int zA0 = levels.front().fA.degree();
  const int zB0 = levels.front().fB.degree();
  const int zC0 = levels.front().fC.degree();
  for (size_t l = 0; l < levels.size(); ++l) {
    DegreeCheck d;
    d.level = static_cast<int>(l);
    d.zA = levels[l].fA.degree();
    d.zB = levels[l].fB.degree();
    d.zC = levels[l].fC.degree();
    d.boundA = std::max(zA0, 2 * qA);
    d.boundB = std::max(2 * zB0, 4 * q);
    d.boundC = std::max({4 * zB0, 6 * q, 2 * zC0});
    d.enforced = d.level >= from_level;
    d.ok = d.zA <= d.boundA && d.zB <= d.boundB && d.zC <= d.boundC;
    out.push_back(d);
  }
  return out;
}

std::vector<DegreeCheck> degree_checks(const Hierarchy& h, int from_level) {
  std::vector<CoarseSymbols> syms;
  for (const auto& lv : h.levels()) syms.push_back({lv.system.fA(), lv.system.fB(), lv.system.fC()});
  return degree_checks(syms, h.projectors(), from_level);
}

}  // namespace saddlemg
