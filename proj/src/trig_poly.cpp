#include "saddlemg/trig_poly.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "saddlemg/error.hpp"

namespace saddlemg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// i^m.
cplx i_power(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

/// e^{ix} - 1 without cancellation for small x.
cplx expm1_i(double x) {
  const double s = std::sin(0.5 * x);
  return {-2.0 * s * s, std::sin(x)};
}

double circular_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

}  // namespace

// ---------------------------------------------------------------------------
// TrigPoly

TrigPoly::TrigPoly(std::vector<cplx> coeffs, int degree)
    : coeffs_(std::move(coeffs)), degree_(degree) {}

TrigPoly::TrigPoly(cplx constant) {
  if (constant != cplx{}) {
    coeffs_ = {constant};
  }
}

TrigPoly::TrigPoly(std::initializer_list<std::pair<int, cplx>> terms) {
  int z = 0;
  for (const auto& [j, c] : terms) z = std::max(z, std::abs(j));
  std::vector<cplx> dense(2 * z + 1);
  for (const auto& [j, c] : terms) dense[j + z] += c;
  *this = pruned(std::move(dense));
}

TrigPoly TrigPoly::from_symmetric_coeffs(std::vector<cplx> coeffs) {
  if (coeffs.size() % 2 == 0) {
    throw InvalidArgument("TrigPoly: coefficient vector must have odd length");
  }
  return pruned(std::move(coeffs));
}

TrigPoly TrigPoly::monomial(int j, cplx c) { return TrigPoly{{j, c}}; }

TrigPoly TrigPoly::cosine(int k, double c) {
  if (k == 0) return TrigPoly(cplx(c));
  return TrigPoly{{-k, 0.5 * c}, {k, 0.5 * c}};
}

TrigPoly TrigPoly::pruned(std::vector<cplx> coeffs) {
  double mx = 0.0;
  for (const auto& c : coeffs) mx = std::max(mx, std::abs(c));
  if (mx == 0.0) return TrigPoly{};
  const double cut = kPruneTolerance * mx;
  for (auto& c : coeffs) {
    if (std::abs(c) < cut) c = 0.0;
  }
  int z = static_cast<int>(coeffs.size() / 2);
  int trim = 0;
  while (trim < z && coeffs[trim] == cplx{} && coeffs[coeffs.size() - 1 - trim] == cplx{}) {
    ++trim;
  }
  if (trim > 0) {
    coeffs = std::vector<cplx>(coeffs.begin() + trim, coeffs.end() - trim);
    z -= trim;
  }
  return TrigPoly(std::move(coeffs), z);
}

cplx TrigPoly::coeff(int j) const noexcept {
  if (coeffs_.empty() || std::abs(j) > degree_) return {};
  return coeffs_[j + degree_];
}

double TrigPoly::max_abs_coeff() const noexcept {
  double mx = 0.0;
  for (const auto& c : coeffs_) mx = std::max(mx, std::abs(c));
  return mx;
}

double TrigPoly::abs_coeff_sum() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

cplx TrigPoly::operator()(double theta) const noexcept {
  cplx sum{};
  for (int j = -degree_; j <= degree_ && !coeffs_.empty(); ++j) {
    const cplx a = coeffs_[j + degree_];
    if (a == cplx{}) continue;
    sum += a * std::polar(1.0, j * theta);
  }
  return sum;
}

double TrigPoly::real_at(double theta) const noexcept { return (*this)(theta).real(); }

cplx TrigPoly::eval_near(double theta0, double h) const noexcept {
  cplx base{};
  cplx inc{};
  for (int j = -degree_; j <= degree_ && !coeffs_.empty(); ++j) {
    const cplx a = coeffs_[j + degree_];
    if (a == cplx{}) continue;
    const cplx rot = a * std::polar(1.0, j * theta0);
    base += rot;
    inc += rot * expm1_i(j * h);
  }
  return base + inc;
}

cplx TrigPoly::derivative(int order, double theta) const noexcept {
  cplx sum{};
  const cplx ip = i_power(order);
  for (int j = -degree_; j <= degree_ && !coeffs_.empty(); ++j) {
    const cplx a = coeffs_[j + degree_];
    if (a == cplx{} || (j == 0 && order > 0)) continue;
    sum += std::pow(static_cast<double>(j), order) * a * std::polar(1.0, j * theta);
  }
  return ip * sum;
}

double TrigPoly::derivative_scale(int order) const noexcept {
  double s = 0.0;
  for (int j = -degree_; j <= degree_ && !coeffs_.empty(); ++j) {
    s += std::pow(static_cast<double>(std::abs(j)), order) * std::abs(coeffs_[j + degree_]);
  }
  return s;
}

bool TrigPoly::is_real_symmetric(double tol) const noexcept {
  const double scale = max_abs_coeff();
  for (int j = 0; j <= degree_ && !coeffs_.empty(); ++j) {
    if (std::abs(coeff(-j) - std::conj(coeff(j))) > tol * scale) return false;
  }
  return true;
}

TrigPoly TrigPoly::shifted_by_pi() const {
  std::vector<cplx> c = coeffs_;
  for (int j = -degree_; j <= degree_ && !c.empty(); ++j) {
    if (j % 2 != 0) c[j + degree_] = -c[j + degree_];
  }
  return TrigPoly(std::move(c), degree_);
}

TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
  const int z = std::max(a.degree(), b.degree());
  std::vector<cplx> c(2 * z + 1);
  for (int j = -z; j <= z; ++j) c[j + z] = a.coeff(j) + b.coeff(j);
  return TrigPoly::pruned(std::move(c));
}

TrigPoly operator-(const TrigPoly& a) { return cplx(-1.0) * a; }

TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) { return a + (-b); }

TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
  if (a.is_zero() || b.is_zero()) return TrigPoly{};
  const int za = a.degree();
  const int zb = b.degree();
  const int z = za + zb;
  std::vector<cplx> c(2 * z + 1);
  for (int j = -za; j <= za; ++j) {
    const cplx x = a.coeff(j);
    if (x == cplx{}) continue;
    for (int k = -zb; k <= zb; ++k) c[j + k + z] += x * b.coeff(k);
  }
  return TrigPoly::pruned(std::move(c));
}

TrigPoly operator*(cplx s, const TrigPoly& a) {
  std::vector<cplx> c(a.coeffs().begin(), a.coeffs().end());
  for (auto& x : c) x *= s;
  if (c.empty()) return TrigPoly{};
  return TrigPoly::pruned(std::move(c));
}

bool approx_equal(const TrigPoly& a, const TrigPoly& b, double tol) {
  const int z = std::max(a.degree(), b.degree());
  for (int j = -z; j <= z; ++j) {
    if (std::abs(a.coeff(j) - b.coeff(j)) > tol) return false;
  }
  return true;
}

TrigPoly conj(const TrigPoly& p) {
  const int z = p.degree();
  if (p.is_zero()) return TrigPoly{};
  std::vector<cplx> c(2 * z + 1);
  for (int j = -z; j <= z; ++j) c[j + z] = std::conj(p.coeff(-j));
  return TrigPoly::from_symmetric_coeffs(std::move(c));
}

TrigPoly modulus_squared(const TrigPoly& p) { return conj(p) * p; }

TrigPoly psi_coarsen(const TrigPoly& g) {
  if (g.is_zero()) return TrigPoly{};
  const int z = g.degree() / 2;
  std::vector<cplx> c(2 * z + 1);
  for (int j = -z; j <= z; ++j) c[j + z] = g.coeff(2 * j);
  return TrigPoly::from_symmetric_coeffs(std::move(c));
}

TrigPoly galerkin_coarse_symbol(const TrigPoly& p1, const TrigPoly& f, const TrigPoly& p2) {
  return psi_coarsen(conj(p1) * f * p2);
}

// ---------------------------------------------------------------------------
// Sampling and sup norms

SampleGrid SampleGrid::half_period(double step) {
  if (!(step > 0.0)) throw InvalidArgument("sample step must be positive");
  const int m = static_cast<int>(std::ceil(kPi / step - 1e-12));
  return SampleGrid{0.0, kPi, std::max(m, 1), true};
}

SampleGrid SampleGrid::full_period(int points) {
  if (points < 4) throw InvalidArgument("full-period grid needs at least 4 points");
  return SampleGrid{0.0, kTwoPi, points, false};
}

double SampleGrid::at(int i) const noexcept {
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(intervals);
}

double sup_norm(const TrigPoly& p, const SampleGrid& grid) {
  double mx = 0.0;
  for (int i = 0; i < grid.size(); ++i) mx = std::max(mx, std::abs(p(grid.at(i))));
  return mx;
}

// ---------------------------------------------------------------------------
// Zeros and removable singularities

namespace {

constexpr double kDerivativeTolerance = 1e-11;

bool derivative_vanishes(const TrigPoly& f, int order, double theta0) {
  const double scale = f.derivative_scale(order);
  if (scale == 0.0) return true;
  return std::abs(f.derivative(order, theta0)) <= kDerivativeTolerance * scale;
}

double snap_angle(double theta) {
  // Symbols in practice vanish at rational multiples of π; snapping removes the
  // last few ulps left by the iterative refinement.
  const double unit = kPi / 12.0;
  const double k = std::round(theta / unit);
  if (std::abs(theta - k * unit) < 1e-9) theta = k * unit;
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  if (kTwoPi - theta < 1e-12) theta = 0.0;
  return theta;
}

}  // namespace

int zero_order(const TrigPoly& f, double theta0, int max_order) {
  for (int m = 0; m <= max_order; ++m) {
    if (!derivative_vanishes(f, m, theta0)) return m;
  }
  return max_order + 1;
}

std::vector<SymbolZero> find_zeros(const TrigPoly& f, int grid_size) {
  std::vector<SymbolZero> zeros;
  if (f.is_zero()) return zeros;
  constexpr int kScan = 4096;
  const double h = kTwoPi / kScan;
  std::vector<double> v(kScan);
  double mx = 0.0;
  for (int i = 0; i < kScan; ++i) {
    v[i] = std::abs(f(i * h));
    mx = std::max(mx, v[i]);
  }
  for (int i = 0; i < kScan; ++i) {
    const double left = v[(i + kScan - 1) % kScan];
    const double right = v[(i + 1) % kScan];
    if (!(v[i] <= left && v[i] <= right) || v[i] > 1e-3 * mx) continue;
    // Golden-section search on |f| in [θ_i - h, θ_i + h].
    double a = (i - 1) * h;
    double b = (i + 1) * h;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a);
    double d = a + g * (b - a);
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
      if (std::abs(f(c)) < std::abs(f(d))) {
        b = d;
      } else {
        a = c;
      }
      c = b - g * (b - a);
      d = a + g * (b - a);
    }
    double theta = 0.5 * (a + b);
    // Newton on the first non-vanishing odd derivative sharpens the location.
    for (int m = 1; m <= 15; m += 2) {
      const cplx den = f.derivative(m + 1, theta);
      if (std::abs(den) <= kDerivativeTolerance * f.derivative_scale(m + 1)) continue;
      for (int it = 0; it < 20; ++it) {
        const cplx step = f.derivative(m, theta) / f.derivative(m + 1, theta);
        theta -= step.real();
        if (std::abs(step) < 1e-16) break;
      }
      break;
    }
    theta = snap_angle(theta);
    if (std::abs(f(theta)) > 1e-12 * mx) continue;
    const bool duplicate = std::any_of(zeros.begin(), zeros.end(), [&](const SymbolZero& z) {
      return circular_distance(z.location, theta) < 1e-6;
    });
    if (duplicate) continue;
    SymbolZero z;
    z.location = theta;
    z.order = zero_order(f, theta);
    if (grid_size > 0) {
      const double k = theta * grid_size / kTwoPi;
      z.is_grid_point = std::abs(k - std::round(k)) < 1e-9;
    }
    zeros.push_back(z);
  }
  std::sort(zeros.begin(), zeros.end(),
            [](const SymbolZero& a, const SymbolZero& b) { return a.location < b.location; });
  return zeros;
}

double removable_limit(const TrigPoly& num, const TrigPoly& den, double theta0) {
  const int m = zero_order(den, theta0);
  if (m > 16) return std::numeric_limits<double>::infinity();
  for (int k = 0; k < m; ++k) {
    if (!derivative_vanishes(num, k, theta0)) return std::numeric_limits<double>::infinity();
  }
  return std::abs(num.derivative(m, theta0) / den.derivative(m, theta0));
}

DyadicTail dyadic_tail(const TrigPoly& num, const TrigPoly& den, double theta0, int k_first,
                       int k_last) {
  DyadicTail tail;
  for (int k = k_first; k <= k_last; ++k) {
    const double h = kPi * std::ldexp(1.0, -k);
    double v = 0.0;
    for (const double s : {h, -h}) {
      const cplx d = den.eval_near(theta0, s);
      const cplx n = num.eval_near(theta0, s);
      const double r = std::abs(d) == 0.0 ? std::numeric_limits<double>::infinity()
                                          : std::abs(n / d);
      v = std::max(v, r);
    }
    tail.theta.push_back(theta0 + h);
    tail.value.push_back(v);
  }
  if (tail.value.size() >= 5) {
    const auto first = tail.value.end() - 5;
    const auto [lo, hi] = std::minmax_element(first, tail.value.end());
    // A tail decaying below 1e-8 counts as converging to zero.
    tail.stabilized = std::isfinite(*hi) && ((*hi - *lo) <= 0.01 * std::abs(*hi) || *hi <= 1e-8);
  }
  tail.last = tail.value.empty() ? 0.0 : tail.value.back();
  return tail;
}

double ratio_sup(const TrigPoly& num, const TrigPoly& den, const std::vector<SymbolZero>& zeros,
                 const RatioOptions& opts) {
  double mx = 0.0;
  std::vector<double> samples;
  samples.reserve(opts.grid.size());
  for (int i = 0; i < opts.grid.size(); ++i) {
    const double theta = opts.grid.at(i);
    bool excluded = false;
    for (const auto& z : zeros) {
      if (circular_distance(theta, z.location) <= opts.exclusion) excluded = true;
    }
    if (excluded) continue;
    const cplx d = den(theta);
    if (std::abs(d) == 0.0) {
      throw UnboundedRatio("ratio_sup: denominator vanishes off its declared zeros", theta);
    }
    const double v = std::abs(num(theta) / d);
    samples.push_back(v);
    mx = std::max(mx, v);
  }
  double median = 0.0;
  if (!samples.empty()) {
    auto mid = samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2);
    std::nth_element(samples.begin(), mid, samples.end());
    median = *mid;
  }
  for (const auto& z : zeros) {
    const DyadicTail tail = dyadic_tail(num, den, z.location);
    const double witness = tail.theta.empty() ? z.location : tail.theta.back();
    const double lim = removable_limit(num, den, z.location);
    if (!std::isfinite(lim)) {
      std::ostringstream msg;
      msg << "ratio_sup: non-removable singularity at theta=" << z.location;
      throw UnboundedRatio(msg.str(), witness);
    }
    const bool growing = std::is_sorted(tail.value.begin(), tail.value.end());
    if (growing && tail.last > opts.blowup_factor * std::max(median, 1e-300)) {
      std::ostringstream msg;
      msg << "ratio_sup: samples approaching theta=" << z.location << " blow up";
      throw UnboundedRatio(msg.str(), witness);
    }
    mx = std::max(mx, lim);
  }
  return mx;
}

// ---------------------------------------------------------------------------
// Text form

void write_symbol(std::ostream& os, const TrigPoly& p) {
  const auto old = os.precision(17);
  for (int j = -p.degree(); j <= p.degree() && !p.is_zero(); ++j) {
    const cplx a = p.coeff(j);
    os << j << ' ' << a.real() << ' ' << a.imag() << '\n';
  }
  os.precision(old);
}

TrigPoly read_symbol(std::istream& is) {
  std::map<int, cplx> terms;
  std::string line;
  int z = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int j = 0;
    double re = 0.0;
    double im = 0.0;
    if (!(ls >> j >> re >> im)) throw InvalidArgument("read_symbol: malformed line '" + line + "'");
    terms[j] += cplx(re, im);
    z = std::max(z, std::abs(j));
  }
  std::vector<cplx> dense(2 * z + 1);
  for (const auto& [j, c] : terms) dense[j + z] = c;
  return TrigPoly::from_symmetric_coeffs(std::move(dense));
}

}  // namespace saddlemg
