#include "saddlemg/solver.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "saddlemg/error.hpp"

namespace saddlemg {

Solver::Solver(const Hierarchy& h, CycleSpec spec) : h_(h), spec_(spec) {
  if (spec_.post_smooth < 1) throw InvalidArgument("CycleSpec: at least one post-smoothing step");
  if (spec_.pre_smooth < 0) throw InvalidArgument("CycleSpec: negative pre-smoothing count");
  if (h_.depth() < 2) throw InvalidArgument("Solver: hierarchy needs at least two levels");
  if (spec_.kind == CycleKind::tgm && h_.depth() > 2) tgm_exact_.emplace(h_.level(1).system);
}

double Solver::omega(int l) const {
  if (l == 0 && spec_.finest_omega) return *spec_.finest_omega;
  return spec_.fixed_omega ? *spec_.fixed_omega : h_.level(l).omega;
}

const ExactSolver& Solver::exact(int l) const {
  if (l == h_.depth() - 1) return h_.coarsest_solver();
  return *tgm_exact_;
}

void Solver::coarse_correction(int l, std::span<cplx> x, std::span<const cplx> b) const {
  const Level& fine = h_.level(l);
  const Level& coarse = h_.level(l + 1);
  const auto n = static_cast<size_t>(fine.n);
  const auto nc = static_cast<size_t>(coarse.n);

  const cvec r = residual(fine.system, x, b);
  // r̃ = [P_Aᴴ r₁; −P_Ĉᴴ r₂] is the right-hand side for 𝒜{l+1}.
  cvec rt(2 * nc);
  fine.PA.restrict(std::span(r).first(n), std::span(rt).first(nc));
  fine.PC.restrict(std::span(r).subspan(n), std::span(rt).subspan(nc));
  for (size_t i = nc; i < 2 * nc; ++i) rt[i] = -rt[i];

  // 𝒜{l+1} e = r̃  ⇔  Â{l+1} y = L{l+1} r̃,  e = U{l+1} y.
  cvec c(2 * nc);
  coarse.system.apply_L(rt, c);
  cvec y(2 * nc);
  const bool direct = spec_.kind == CycleKind::tgm || l + 1 == h_.depth() - 1;
  if (direct) {
    exact(l + 1).solve(c, y);
  } else {
    for (int k = 0; k < spec_.gamma(); ++k) cycle(l + 1, y, c);
  }
  cvec e(2 * nc);
  coarse.system.apply_U(y, e);

  cvec up(n);
  fine.PA.prolong(std::span(e).first(nc), up);
  for (size_t i = 0; i < n; ++i) x[i] += up[i];
  fine.PC.prolong(std::span(e).subspan(nc), up);
  for (size_t i = 0; i < n; ++i) x[n + i] += up[i];
}

void Solver::cycle(int l, std::span<cplx> x, std::span<const cplx> b) const {
  const SaddleSystem& s = h_.level(l).system;
  const double w = omega(l);
  for (int k = 0; k < spec_.pre_smooth; ++k) jacobi_post_smooth(s, x, b, w);
  coarse_correction(l, x, b);
  for (int k = 0; k < spec_.post_smooth; ++k) jacobi_post_smooth(s, x, b, w);
}

SolveReport Solver::solve(std::span<const cplx> b, const SolveOptions& opts) const {
  const SaddleSystem& s = h_.level(0).system;
  if (static_cast<int>(b.size()) != s.size()) throw SizeMismatch("solve: right-hand side size");
  SolveReport rep;
  rep.x.assign(b.size(), cplx{});
  const double nb = norm2(b);
  if (nb == 0.0) {
    rep.history.push_back(0.0);
    rep.converged = true;
    return rep;
  }
  rep.history.push_back(1.0);
  while (rep.iterations < opts.max_iter) {
    cycle(0, rep.x, b);
    ++rep.iterations;
    const double rel = norm2(residual(s, rep.x, b)) / nb;
    rep.contraction.push_back(rel / rep.history.back());
    rep.history.push_back(rel);
    if (!std::isfinite(rel) || rel > opts.divergence) {
      std::ostringstream msg;
      msg << "solve: relative residual " << rel << " after " << rep.iterations << " cycles";
      throw Divergence(msg.str());
    }
    if (rel < opts.tol) {
      rep.converged = true;
      break;
    }
  }
  return rep;
}

SolveReport solve(const Hierarchy& h, std::span<const cplx> b, const CycleSpec& spec,
                  const SolveOptions& opts) {
  return Solver(h, spec).solve(b, opts);
}

void write_residual_csv(std::ostream& os, const SolveReport& r) {
  const auto old = os.precision(17);
  os << "iter,relres\n";
  for (size_t k = 0; k < r.history.size(); ++k) os << k << ',' << r.history[k] << '\n';
  os.precision(old);
}

}  // namespace saddlemg
