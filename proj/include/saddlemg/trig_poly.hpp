#pragma once

#include <complex>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace saddlemg {

using cplx = std::complex<double>;

/// Trigonometric polynomial f(θ) = Σ_{|j|≤z} a_j e^{ijθ}, stored densely over [-z, z].
///
/// Values are immutable once built. Arithmetic prunes coefficients whose
/// modulus falls below kPruneTolerance times the largest one, so the stored
/// degree is always tight (the outermost pair is not both zero).
class TrigPoly {
 public:
  static constexpr double kPruneTolerance = 1e-14;
  static constexpr double kSymmetryTolerance = 1e-13;

  TrigPoly() = default;
  TrigPoly(cplx constant);  // NOLINT(google-explicit-constructor)
  TrigPoly(std::initializer_list<std::pair<int, cplx>> terms);

  /// Coefficients a_{-z}..a_{z}; the vector length must be odd.
  static TrigPoly from_symmetric_coeffs(std::vector<cplx> coeffs);
  /// a_j = 1 at index j, scaled by c.
  static TrigPoly monomial(int j, cplx c = 1.0);
  /// c·cos(kθ).
  static TrigPoly cosine(int k, double c = 1.0);

  int degree() const noexcept { return degree_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  cplx coeff(int j) const noexcept;
  /// a_{-z}..a_{z}.
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  double max_abs_coeff() const noexcept;
  double abs_coeff_sum() const noexcept;

  cplx operator()(double theta) const noexcept;
  /// Value with the imaginary part dropped; meant for real-symmetric symbols.
  double real_at(double theta) const noexcept;
  /// f(θ0 + h) evaluated as f(θ0) + Σ a_j e^{ijθ0}(e^{ijh} - 1) with the
  /// increment written through sines, so |h| ≪ 1 keeps relative accuracy.
  cplx eval_near(double theta0, double h) const noexcept;
  /// m-th derivative at θ: Σ (ij)^m a_j e^{ijθ}.
  cplx derivative(int order, double theta) const noexcept;
  /// Σ |j|^m |a_j|, the natural scale of the m-th derivative.
  double derivative_scale(int order) const noexcept;

  /// a_{-j} = conj(a_j) within the symmetry tolerance (the symbol is real-valued).
  bool is_real_symmetric(double tol = kSymmetryTolerance) const noexcept;
  /// θ ↦ f(θ + π): a_j ↦ (-1)^j a_j.
  TrigPoly shifted_by_pi() const;

  friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b);
  friend TrigPoly operator*(cplx s, const TrigPoly& a);
  friend TrigPoly operator-(const TrigPoly& a);

 private:
  explicit TrigPoly(std::vector<cplx> coeffs, int degree);
  static TrigPoly pruned(std::vector<cplx> coeffs);

  std::vector<cplx> coeffs_;
  int degree_ = 0;
};

/// Coefficient-wise comparison, |a_j - b_j| ≤ tol for every j.
bool approx_equal(const TrigPoly& a, const TrigPoly& b, double tol);

/// The symbol of the adjoint: conj(f)(θ) = conj(f(θ)), i.e. a_j ↦ conj(a_{-j}).
TrigPoly conj(const TrigPoly& p);
/// |p|^2 = conj(p)·p.
TrigPoly modulus_squared(const TrigPoly& p);

/// ψ(g)(θ) = ½[g(θ/2) + g(θ/2 + π)]: keeps the even-indexed coefficients, j → j/2.
TrigPoly psi_coarsen(const TrigPoly& g);

/// Symbol of (C(p1)Kᵀ)ᴴ C(f) (C(p2)Kᵀ): ψ(conj(p1)·f·p2).
TrigPoly galerkin_coarse_symbol(const TrigPoly& p1, const TrigPoly& f, const TrigPoly& p2);

/// Uniform sampling of an interval. `include_end` adds the right endpoint.
struct SampleGrid {
  double lo = 0.0;
  double hi = 0.0;
  int intervals = 0;
  bool include_end = true;

  /// [0, π] with the requested step rounded down to π/M so that π is sampled.
  static SampleGrid half_period(double step = 1.0 / 100.0);
  /// [0, 2π) with M points; M divisible by 4 puts π/2, π and 3π/2 on the grid.
  static SampleGrid full_period(int points = 10000);

  int size() const noexcept { return include_end ? intervals + 1 : intervals; }
  double at(int i) const noexcept;
};

/// max |p(θ)| over the grid (default [0, π], step ≈ 1/100).
double sup_norm(const TrigPoly& p, const SampleGrid& grid = SampleGrid::half_period());

/// A zero of a symbol.
struct SymbolZero {
  double location = 0.0;
  /// Multiplicity: the first non-vanishing derivative order.
  int order = 0;
  bool is_grid_point = false;
};

/// Zeros of a nonnegative real-symmetric symbol, located by scanning the
/// dense grid for local minima below 1e-12·max|f| and refining each.
/// `grid_size`, when positive, marks zeros that coincide with θ_{j,n}.
std::vector<SymbolZero> find_zeros(const TrigPoly& f, int grid_size = 0);

/// Order of the zero of f at θ0: smallest m with |f^(m)(θ0)| above the
/// relative tolerance, capped at `max_order` (returns max_order + 1 if none).
int zero_order(const TrigPoly& f, double theta0, int max_order = 16);

/// lim_{θ→θ0} num/den computed from derivatives at θ0 (L'Hôpital on exact
/// derivative coefficients). Returns +inf when num vanishes to lower order.
double removable_limit(const TrigPoly& num, const TrigPoly& den, double theta0);

/// Dyadic approach values |num/den|(θ0 ± π·2^-k), k = k_first..k_last.
struct DyadicTail {
  std::vector<double> theta;
  std::vector<double> value;
  /// The last five values agree within 1%.
  bool stabilized = false;
  double last = 0.0;
};
DyadicTail dyadic_tail(const TrigPoly& num, const TrigPoly& den, double theta0,
                       int k_first = 8, int k_last = 20);

struct RatioOptions {
  SampleGrid grid = SampleGrid::full_period();
  /// Half-width of the excluded neighbourhood around each zero.
  double exclusion = 1e-9;
  /// Growth factor (relative to the median sample) that marks a blow-up.
  double blowup_factor = 1e8;
};

/// sup |num/den| where den vanishes only at `zeros`. The value at each zero is
/// its removable limit; samples within `exclusion` of a zero are replaced by
/// that limit. Throws UnboundedRatio when a singularity is not removable.
double ratio_sup(const TrigPoly& num, const TrigPoly& den, const std::vector<SymbolZero>& zeros,
                 const RatioOptions& opts = {});

/// Text form: one line `j re im` per stored coefficient, j ascending.
void write_symbol(std::ostream& os, const TrigPoly& p);
TrigPoly read_symbol(std::istream& is);

}  // namespace saddlemg
