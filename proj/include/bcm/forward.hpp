#pragma once

// Forward problems for the boundary-controlled lattice
//
//   u_{n,t+1} + u_{n,t-1} - u_{n+1,t} - u_{n-1,t} + b_n u_{n,t} = 0,
//   u_{n,-1} = u_{n,0} = 0 (n >= 1),   u_{0,t} = f_t,
//
// on the half-line and on 0..N+1 with a Dirichlet wall at N+1, together with
// the Goursat kernel w_{n,s} of the representation
//   u_{n,t} = f_{t-n} + sum_{s=n}^{t-1} w_{n,s} f_{t-s-1}.

#include <cstddef>

#include "bcm/lattice_core.hpp"
#include "bcm/linalg.hpp"
#include "bcm/spectral_data.hpp"

namespace bcm {

/// Lattice solution u_{n,t} on n = 0..n_max, t = 0..t_max.
class WaveField {
 public:
  WaveField(int n_max, int t_max) : values_(n_max + 1, t_max + 1) {}

  int n_max() const noexcept { return static_cast<int>(values_.rows()) - 1; }
  int t_max() const noexcept { return static_cast<int>(values_.cols()) - 1; }

  double& operator()(int n, int t) noexcept {
    return values_(static_cast<std::size_t>(n), static_cast<std::size_t>(t));
  }
  double operator()(int n, int t) const noexcept {
    return values_(static_cast<std::size_t>(n), static_cast<std::size_t>(t));
  }
  /// u_{n,t} with zero outside the stored window.
  double at_or_zero(int n, int t) const noexcept {
    return (n < 0 || t < 0 || n > n_max() || t > t_max()) ? 0.0 : (*this)(n, t);
  }
  /// Boundary trace (u_{1,1}, ..., u_{1,t_max}).
  Sequence trace() const;
  const Matrix& matrix() const noexcept { return values_; }

 private:
  Matrix values_;
};

/// w_{n,s} for 1 <= n <= s <= S; zero for n > s and for n = 0.
class GoursatKernel {
 public:
  explicit GoursatKernel(int max_s);

  int max_s() const noexcept { return max_s_; }
  double operator()(int n, int s) const noexcept {
    if (n < 1 || n > s || s > max_s_) return 0.0;
    return table_[index(n, s)];
  }
  void set(int n, int s, double v) noexcept { table_[index(n, s)] = v; }

 private:
  std::size_t index(int n, int s) const noexcept {
    // Column s holds n = 1..s.
    return static_cast<std::size_t>(s - 1) * static_cast<std::size_t>(s) / 2 +
           static_cast<std::size_t>(n - 1);
  }
  int max_s_;
  std::vector<double> table_;
};

/// Half-line solve on 0 <= n <= T, 0 <= t <= T. Potential entries past its
/// length are taken as zero.
WaveField solve_semi_infinite(const Potential& b, const ControlSeq& f, TimeHorizon horizon);

/// Goursat kernel up to S from the diagonal data w_{n,n} = -(b_1+...+b_n).
GoursatKernel solve_goursat(const Potential& b, int max_s);

/// f_{t-n} + sum_{s=n}^{t-1} w_{n,s} f_{t-s-1}.
double apply_representation(const GoursatKernel& w, const ControlSeq& f, int n, int t);

/// Dirichlet problem on 0..N+1 for 0 <= t <= T.
WaveField solve_interval(const Potential& b, int interval_n, const ControlSeq& f,
                         TimeHorizon horizon);

/// Same field as solve_interval, assembled from the eigenvector expansion
/// v_{n,t} = sum_k c^k_t phi^k_n with c^k = (1/rho_k) T(lambda_k) * f.
WaveField interval_fourier_solution(const SpectralData& sd, const ControlSeq& f,
                                    TimeHorizon horizon);

/// The coefficient sequences c^k_0..c^k_T, one row per eigenpair.
Matrix fourier_coefficients(const SpectralData& sd, const ControlSeq& f, TimeHorizon horizon);

}  // namespace bcm
