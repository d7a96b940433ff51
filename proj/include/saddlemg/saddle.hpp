#pragma once

#include <span>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "saddlemg/band_matrix.hpp"
#include "saddlemg/circulant.hpp"
#include "saddlemg/trig_poly.hpp"

namespace saddlemg {

enum class Structure { circulant, toeplitz };

/// One n×n block: a circulant operator or an explicit band matrix.
class Block {
 public:
  Block() = default;
  Block(CirculantOp op) : op_(std::move(op)) {}  // NOLINT(google-explicit-constructor)
  Block(BandMatrix m) : op_(std::move(m)) {}     // NOLINT(google-explicit-constructor)

  int size() const noexcept;
  bool is_circulant() const noexcept { return std::holds_alternative<CirculantOp>(op_); }
  const CirculantOp& circulant() const { return std::get<CirculantOp>(op_); }
  const BandMatrix& band() const { return std::get<BandMatrix>(op_); }

  cplx entry(int i, int k) const;
  cvec diagonal() const;
  /// y = M x; `y` must not alias `x`.
  void matvec(std::span<const cplx> x, std::span<cplx> y) const;
  void adjoint_matvec(std::span<const cplx> x, std::span<cplx> y) const;

 private:
  std::variant<CirculantOp, BandMatrix> op_;
};

/// f_Ĉ = f_C + (α/â₀)|f_B|²(2 − (α/â₀) f_A), with â₀ = â₀(f_A).
TrigPoly hatC_symbol(const TrigPoly& fA, const TrigPoly& fB, const TrigPoly& fC, double alpha);

/// The saddle matrix 𝒜 = [A Bᴴ; B −C] together with its transform Â = L𝒜U,
///
///   L = [I 0; αBD⁻¹ −I],  U = [I −αD⁻¹Bᴴ; 0 I],  D = diag(A),
///   Â = [A, (I − αAD⁻¹)Bᴴ; −B(I − αD⁻¹A), Ĉ],  Ĉ = C + B(2αD⁻¹ − α²D⁻¹AD⁻¹)Bᴴ.
///
/// Vectors of length 2n are laid out as [x₁; x₂]. Immutable after construction.
/// On the circulant path D = â₀(f_A)·I; on the Toeplitz path D is the actual
/// diagonal of the band matrix A and the symbols are tracked alongside.
class SaddleSystem {
 public:
  SaddleSystem() = default;

  static SaddleSystem circulant(int n, TrigPoly fA, TrigPoly fB, TrigPoly fC, double alpha);
  /// Band blocks; fA, fB, fC are the symbols tracked for parameter selection.
  static SaddleSystem toeplitz(BandMatrix A, BandMatrix B, BandMatrix C, TrigPoly fA, TrigPoly fB,
                               TrigPoly fC, double alpha);

  Structure structure() const noexcept { return structure_; }
  int n() const noexcept { return n_; }
  int size() const noexcept { return 2 * n_; }
  double alpha() const noexcept { return alpha_; }

  const TrigPoly& fA() const noexcept { return fA_; }
  const TrigPoly& fB() const noexcept { return fB_; }
  const TrigPoly& fC() const noexcept { return fC_; }
  const TrigPoly& fChat() const noexcept { return fChat_; }

  const Block& A() const noexcept { return A_; }
  const Block& B() const noexcept { return B_; }
  const Block& C() const noexcept { return C_; }
  const Block& Chat() const noexcept { return Chat_; }
  /// Off-diagonal blocks of Â.
  const Block& hat12() const noexcept { return hat12_; }
  const Block& hat21() const noexcept { return hat21_; }

  /// D_A and the diagonal of Ĉ, as used by L, U and the smoother.
  std::span<const cplx> diag_A() const noexcept { return dA_; }
  std::span<const cplx> diag_Chat() const noexcept { return dChat_; }
  std::span<const cplx> inv_diag_A() const noexcept { return inv_dA_; }
  std::span<const cplx> inv_diag_Chat() const noexcept { return inv_dChat_; }

  /// y = Â x from the assembled blocks (per-frequency 2×2 products on the circulant path).
  void apply_hatA(std::span<const cplx> x, std::span<cplx> y) const;
  cvec apply_hatA(std::span<const cplx> x) const;
  /// y = L(𝒜(U x)) as three successive block operations.
  void apply_hatA_factored(std::span<const cplx> x, std::span<cplx> y) const;
  /// y = 𝒜 x.
  void apply_saddle(std::span<const cplx> x, std::span<cplx> y) const;
  void apply_L(std::span<const cplx> x, std::span<cplx> y) const;
  void apply_U(std::span<const cplx> x, std::span<cplx> y) const;

  /// Â as a sparse matrix (block-by-block assembly of the stored blocks).
  Eigen::SparseMatrix<cplx> assemble_sparse() const;

 private:
  void finish();

  Structure structure_ = Structure::circulant;
  int n_ = 0;
  double alpha_ = 0.0;
  TrigPoly fA_, fB_, fC_, fChat_;
  Block A_, B_, C_, Chat_, hat12_, hat21_;
  cvec dA_, dChat_;
  cvec inv_dA_, inv_dChat_;
};

/// r = b − Â x.
void residual(const SaddleSystem& s, std::span<const cplx> x, std::span<const cplx> b,
              std::span<cplx> r);
cvec residual(const SaddleSystem& s, std::span<const cplx> x, std::span<const cplx> b);

/// x ← x + ω D_Â⁻¹ (b − Â x), D_Â = diag(D_A, diag Ĉ).
void jacobi_post_smooth(const SaddleSystem& s, std::span<cplx> x, std::span<const cplx> b,
                        double omega);

/// b = Â x_true.
cvec build_rhs(const SaddleSystem& s, std::span<const cplx> x_true);

/// sin(t_i), t_i = π·i/(m − 1), i = 0..m−1.
cvec sine_samples(int m);

double norm2(std::span<const cplx> v);

}  // namespace saddlemg
