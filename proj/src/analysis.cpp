#include "saddlemg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "saddlemg/error.hpp"

namespace saddlemg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool has_real_coeffs(const TrigPoly& p) {
  return std::all_of(p.coeffs().begin(), p.coeffs().end(), [&](const cplx& a) {
    return std::abs(a.imag()) <= TrigPoly::kSymmetryTolerance * std::max(1.0, p.max_abs_coeff());
  });
}

/// min over the dense full-period grid, with the argmin.
std::pair<double, double> grid_min(const TrigPoly& p, const SampleGrid& g) {
  double mn = kInf;
  double at = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double v = p.real_at(g.at(i));
    if (v < mn) {
      mn = v;
      at = g.at(i);
    }
  }
  return {mn, at};
}

Verdict nonnegative(const std::string& name, const TrigPoly& f, const SampleGrid& g) {
  Verdict v;
  v.name = name;
  const auto [mn, at] = grid_min(f, g);
  const double scale = std::max(f.abs_coeff_sum(), 1e-300);
  v.passed = f.is_real_symmetric() && mn >= -1e-12 * scale;
  v.value = mn;
  v.witness = at;
  if (!f.is_real_symmetric()) v.detail = "symbol is not real-valued";
  return v;
}

Verdict positive_sum(const std::string& name, const TrigPoly& a, const TrigPoly& b_shifted,
                     const SampleGrid& g) {
  Verdict v;
  v.name = name;
  const TrigPoly s = a + b_shifted;
  const auto [mn, at] = grid_min(s, g);
  v.value = mn;
  v.witness = at;
  v.passed = mn > 1e-12 * std::max(s.abs_coeff_sum(), 1e-300);
  return v;
}

Verdict finite_ratio(const std::string& name, const TrigPoly& num, const TrigPoly& den) {
  Verdict v;
  v.name = name;
  const auto zeros = find_zeros(den);
  if (!zeros.empty()) v.witness = zeros.front().location;
  try {
    v.value = ratio_sup(num, den, zeros);
    v.passed = std::isfinite(v.value);
    v.warning = v.value > kWarningThreshold;
    if (v.warning) v.detail = "ratio above warning threshold";
  } catch (const UnboundedRatio& e) {
    v.passed = false;
    v.value = kInf;
    v.witness = e.witness();
    v.detail = e.what();
  }
  return v;
}

}  // namespace

double a0(const TrigPoly& f) { return f.coeff(0).real(); }

SampleGrid sup_grid(const TrigPoly& p, double step) {
  SampleGrid g = SampleGrid::half_period(step);
  if (!has_real_coeffs(p)) {
    g.hi = 2.0 * std::numbers::pi;
    g.intervals *= 2;
  }
  return g;
}

double symbol_sup(const TrigPoly& p, double step) { return sup_norm(p, sup_grid(p, step)); }

double coupling_sup(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC, double step) {
  const TrigPoly num = fC * fA + modulus_squared(fB);
  RatioOptions opts;
  opts.grid = sup_grid(num, step);
  if (!has_real_coeffs(fA)) opts.grid = sup_grid(fA, step);
  return ratio_sup(num, fA, find_zeros(fA), opts);
}

double kappa_bound(const TrigPoly& f, const TrigPoly& p) {
  const TrigPoly p2 = modulus_squared(p);
  const TrigPoly shifted = p2.shifted_by_pi();
  const double singular = ratio_sup(shifted, f, find_zeros(f));
  const SampleGrid g = SampleGrid::full_period();
  const TrigPoly sum = p2 + shifted;
  const auto [mn, at] = grid_min(sum, g);
  if (!(mn > 1e-14 * std::max(sum.abs_coeff_sum(), 1e-300))) {
    throw UnboundedRatio("kappa_bound: |p|^2(θ) + |p|^2(θ+π) vanishes", at);
  }
  return 2.0 * a0(f) * singular / mn;
}

GammaBounds gamma_bounds(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC,
                         const TrigPoly& fChat, double alpha) {
  const double a = a0(fA);
  GammaBounds g;
  g.gamma_A = 1.0 / (2.0 * alpha - alpha * alpha * symbol_sup(fA) / a);
  g.gamma_Chat = coupling_sup(fA, fB, fC) / a0(fChat);
  return g;
}

double MuConstants::omega_upper() const noexcept { return 2.0 / std::max(gamma_A, gamma_Chat); }

double mu_bound(double omega, const MuConstants& k) {
  const double s = 1.0 - omega * (2.0 - omega * k.gamma_tilde()) / k.kappa_tilde();
  return std::max({1.0 - omega / k.kappa_A, 1.0 - omega / k.kappa_Chat, omega * k.gamma_A - 1.0,
                   omega * k.gamma_Chat - 1.0, std::sqrt(std::max(s, 0.0))});
}

OmegaOpt omega_opt(const MuConstants& k, int grid_points) {
  const double hi = k.omega_upper();
  if (!(hi > 0.0) || !std::isfinite(hi)) throw InvalidArgument("omega_opt: empty admissible interval");
  const double kt = k.kappa_tilde();
  const double gt = k.gamma_tilde();
  // Linear branches a + bω.
  const double lin[4][2] = {{1.0, -1.0 / k.kappa_A},
                            {1.0, -1.0 / k.kappa_Chat},
                            {-1.0, k.gamma_A},
                            {-1.0, k.gamma_Chat}};
  std::vector<double> cand{1.0 / gt, 0.0, hi};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const double db = lin[i][1] - lin[j][1];
      if (db != 0.0) cand.push_back((lin[j][0] - lin[i][0]) / db);
    }
    // (a + bω)² = 1 − 2ω/κ̃ + ω²γ̃/κ̃.
    const double a = lin[i][0];
    const double b = lin[i][1];
    const double qa = b * b - gt / kt;
    const double qb = 2.0 * a * b + 2.0 / kt;
    const double qc = a * a - 1.0;
    if (qa == 0.0) {
      if (qb != 0.0) cand.push_back(-qc / qb);
      continue;
    }
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) continue;
    cand.push_back((-qb + std::sqrt(disc)) / (2.0 * qa));
    cand.push_back((-qb - std::sqrt(disc)) / (2.0 * qa));
  }
  OmegaOpt best{0.0, kInf};
  for (const double w : cand) {
    if (!(w >= 0.0 && w <= hi)) continue;
    const double m = mu_bound(w, k);
    if (m < best.mu) best = {w, m};
  }
  for (int i = 0; i <= grid_points; ++i) {
    const double w = hi * i / grid_points;
    const double m = mu_bound(w, k);
    if (m < best.mu - 1e-14) best = {w, m};
  }
  return best;
}

std::vector<std::pair<double, double>> mu_curve(const MuConstants& k, int points) {
  std::vector<std::pair<double, double>> out;
  const double hi = k.omega_upper();
  for (int i = 0; i < points; ++i) {
    const double w = points > 1 ? hi * i / (points - 1) : 0.0;
    out.emplace_back(w, mu_bound(w, k));
  }
  return out;
}

std::vector<Verdict> check_hypotheses(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC,
                                      const TrigPoly& pA, const TrigPoly& pC, double alpha,
                                      double omega) {
  const SampleGrid g = SampleGrid::full_period();
  std::vector<Verdict> out;

  Verdict va = nonnegative("fA nonnegative", fA, g);
  const auto zeros = find_zeros(fA);
  if (!zeros.empty()) {
    va.witness = zeros.front().location;
    std::ostringstream d;
    d << zeros.size() << " zero(s), first at theta=" << zeros.front().location
      << " of order " << zeros.front().order;
    va.detail = d.str();
  }
  out.push_back(va);
  out.push_back(nonnegative("fC nonnegative", fC, g));

  {
    Verdict v;
    v.name = "fB vanishes at the zeros of fA";
    v.passed = true;
    const double scale = std::max(fB.abs_coeff_sum(), 1e-300);
    for (const auto& z : zeros) {
      const double val = std::abs(fB(z.location));
      v.value = std::max(v.value, val);
      if (val > 1e-10 * scale) {
        v.passed = false;
        v.witness = z.location;
      }
    }
    out.push_back(v);
  }
  out.push_back(finite_ratio("limsup |fB|^2/fA finite", modulus_squared(fB), fA));

  const TrigPoly pA2 = modulus_squared(pA);
  const TrigPoly pC2 = modulus_squared(pC);
  out.push_back(positive_sum("pA: |pA|^2(t)+|pA|^2(t+pi) > 0", pA2, pA2.shifted_by_pi(), g));
  out.push_back(finite_ratio("pA: limsup |pA|^2(t+pi)/fA finite", pA2.shifted_by_pi(), fA));

  const double a = a0(fA);
  const double norm_A = symbol_sup(fA);
  {
    Verdict v;
    v.name = "alpha admissible";
    v.value = alpha;
    v.passed = a > 0.0 && alpha > 0.0 && alpha < 2.0 * a / norm_A;
    out.push_back(v);
  }
  if (!(a > 0.0)) return out;

  const TrigPoly fChat = hatC_symbol(fA, fB, fC, alpha);
  out.push_back(nonnegative("fChat nonnegative", fChat, g));
  out.push_back(positive_sum("pChat: |pC|^2(t)+|pC|^2(t+pi) > 0", pC2, pC2.shifted_by_pi(), g));
  out.push_back(finite_ratio("pChat: limsup |pC|^2(t+pi)/fChat finite", pC2.shifted_by_pi(), fChat));
  out.push_back(positive_sum("joint: |pA|^2(t)+|pC|^2(t+pi) > 0", pA2, pC2.shifted_by_pi(), g));

  {
    Verdict v;
    v.name = "omega admissible";
    v.value = omega;
    try {
      const double bound =
          2.0 * std::min(2.0 * alpha - alpha * alpha * norm_A / a, a0(fChat) / coupling_sup(fA, fB, fC));
      v.passed = omega > 0.0 && omega < bound;
      std::ostringstream d;
      d << "upper bound " << bound;
      v.detail = d.str();
    } catch (const UnboundedRatio& e) {
      v.passed = false;
      v.witness = e.witness();
      v.detail = e.what();
    }
    out.push_back(v);
  }
  return out;
}

bool all_passed(const std::vector<Verdict>& v) {
  return std::all_of(v.begin(), v.end(), [](const Verdict& x) { return x.passed; });
}

std::vector<LimitEstimate> level_independency_check(const std::vector<CoarseSymbols>& levels,
                                                    const std::vector<double>& alphas) {
  std::vector<LimitEstimate> out;
  auto add = [&](int l, const char* name, const TrigPoly& num, const TrigPoly& den) {
    LimitEstimate e;
    e.level = l;
    e.name = name;
    e.tail = dyadic_tail(num, den, 0.0);
    e.limit = removable_limit(num, den, 0.0);
    e.bounded_nonzero = e.tail.stabilized && e.tail.last > 1e-8 && e.tail.last < 1e8;
    out.push_back(std::move(e));
  };
  for (size_t l = 0; l + 1 < levels.size(); ++l) {
    const auto& f = levels[l];
    const auto& g = levels[l + 1];
    const int li = static_cast<int>(l);
    add(li, "fA_l/fA_l+1", f.fA, g.fA);
    add(li, "|fB_l+1|^2/|fB_l|^2", modulus_squared(g.fB), modulus_squared(f.fB));
    add(li, "fChat_l/fChat_l+1", hatC_symbol(f.fA, f.fB, f.fC, alphas[l]),
        hatC_symbol(g.fA, g.fB, g.fC, alphas[l + 1]));
  }
  return out;
}

std::vector<LimitEstimate> level_independency_check(const Hierarchy& h) {
  std::vector<CoarseSymbols> syms;
  std::vector<double> alphas;
  for (const auto& lv : h.levels()) {
    syms.push_back({lv.system.fA(), lv.system.fB(), lv.system.fC()});
    alphas.push_back(lv.system.alpha());
  }
  return level_independency_check(syms, alphas);
}

TheoryReport analyze(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC,
                     const Projectors& p, double alpha) {
  TheoryReport r;
  r.alpha = alpha > 0.0 ? alpha : a0(fA) / symbol_sup(fA);
  r.fChat = hatC_symbol(fA, fB, fC, r.alpha);
  r.a0_Chat = a0(r.fChat);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.opt = {nan, nan};
  r.c1 = r.c2 = r.chat_ratio = nan;
  try {
    const GammaBounds g = gamma_bounds(fA, fB, fC, r.fChat, r.alpha);
    r.constants.gamma_A = g.gamma_A;
    r.constants.gamma_Chat = g.gamma_Chat;
    r.constants.kappa_A = kappa_bound(fA, p.pA);
    r.constants.kappa_Chat = kappa_bound(r.fChat, p.pC);
    r.omega_hi = r.constants.omega_upper();
    r.opt = omega_opt(r.constants);
  } catch (const UnboundedRatio&) {
    if (r.constants.kappa_A == 0.0) r.constants.kappa_A = kInf;
    if (r.constants.kappa_Chat == 0.0) r.constants.kappa_Chat = kInf;
  }
  const double w = std::isfinite(r.opt.omega) ? r.opt.omega : omega_level(fA, fB, fC, r.alpha);
  r.verdicts = check_hypotheses(fA, fB, fC, p.pA, p.pC, r.alpha, w);

  const CoarseSymbols c = coarsen_symbols(fA, fB, fC, r.alpha, p);
  r.c1 = removable_limit(fA, c.fA, 0.0);
  r.c2 = removable_limit(modulus_squared(c.fB), modulus_squared(fB), 0.0);
  const double alpha1 = c.fA.is_zero() ? 0.0 : a0(c.fA) / symbol_sup(c.fA);
  if (alpha1 > 0.0) r.chat_ratio = removable_limit(r.fChat, hatC_symbol(c.fA, c.fB, c.fC, alpha1), 0.0);
  return r;
}

std::string rational_string(double x, long max_den) {
  const bool neg = x < 0.0;
  double y = std::abs(x);
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double rem = y;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(rem);
    const long p2 = static_cast<long>(a) * p1 + p0;
    const long q2 = static_cast<long>(a) * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(y - static_cast<double>(p1) / q1) <= 1e-12 * std::max(1.0, y)) break;
    const double frac = rem - a;
    if (frac < 1e-15) break;
    rem = 1.0 / frac;
  }
  std::ostringstream os;
  os << (neg ? "-" : "") << p1;
  if (q1 != 1) os << '/' << q1;
  return os.str();
}

}  // namespace saddlemg
