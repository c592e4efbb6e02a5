#pragma once

// Spectral side of the lattice model: the Dirichlet Hamiltonian H_N, its
// spectral data {lambda_k, rho_k}, and the maps between spectral data and the
// dynamical data (response kernel, connecting matrix) of the half-line system.

#include <utility>
#include <vector>

#include "bcm/bc_ops.hpp"
#include "bcm/execution.hpp"
#include "bcm/lattice_core.hpp"
#include "bcm/linalg.hpp"
#include "bcm/spectral_data.hpp"

namespace bcm {

/// Symmetric tridiagonal H_N with diagonal (-b_1, ..., -b_N) and unit
/// off-diagonal.
class Hamiltonian {
 public:
  explicit Hamiltonian(Sequence diag);

  int order() const noexcept { return static_cast<int>(diag_.size()); }
  const Sequence& diag() const noexcept { return diag_; }
  /// All ones, length N-1.
  Sequence offdiag() const { return Sequence(diag_.empty() ? 0 : diag_.size() - 1, 1.0); }
  Matrix dense() const;
  /// H x for a vector of length N.
  Sequence apply(std::span<const double> x) const;

 private:
  Sequence diag_;
};

Hamiltonian build_hamiltonian(const Potential& b, int interval_n);

/// Number of eigenvalues of H strictly below x (Sturm sequence count).
int sturm_count(const Hamiltonian& h, double x);

/// Eigenpairs by Sturm bisection and inverse iteration. Eigenvectors are
/// scaled to phi^k_1 = 1 and rho_k = |phi^k|^2. Throws ConvergenceFailure when
/// the unit-vector residual |H v - lambda v| exceeds eig_tol * |H|_2.
SpectralData eigen_decompose(const Hamiltonian& h, const Tolerances& tol = {},
                             Execution exec = Execution::serial);

/// (phi_0, ..., phi_{N+1}) with phi_0 = 0, phi_1 = 1 and
/// phi_{i+1} = (lambda + b_i) phi_i - phi_{i-1}.
Sequence phi_polynomial(const Potential& b, double lambda, int interval_n);

/// Half-line kernel from interval spectral data:
/// r_s = sum_k T_{s+1}(lambda_k) / rho_k for s <= 2N-1. With the Dirichlet
/// correction, K may be 2N and r_{2N} gets the first-reflection term +1.
ResponseKernel kernel_from_spectral(const SpectralData& sd, int max_index,
                                    bool dirichlet_correction);

/// Entry (l+1, m+1) = sum_k T_{T-l}(lambda_k) T_{T-m}(lambda_k) / rho_k. Only
/// valid for T <= N.
ConnectingMatrix connecting_from_spectral(const SpectralData& sd, TimeHorizon horizon);

/// Step function rho^N(lambda) = sum_{lambda_k < lambda} 1/rho_k.
class SpectralMeasure {
 public:
  explicit SpectralMeasure(std::vector<std::pair<double, double>> jumps);

  const std::vector<std::pair<double, double>>& jumps() const noexcept { return jumps_; }
  double operator()(double lambda) const;
  double total_mass() const;

 private:
  std::vector<std::pair<double, double>> jumps_;
};

SpectralMeasure spectral_measure(const SpectralData& sd);

/// b_1..b_N from {lambda_k, rho_k}: corrected kernel up to 2N, then the
/// factorization solver at horizon N+1.
Potential invert_spectral(const SpectralData& sd, const Tolerances& tol = {});

}  // namespace bcm
