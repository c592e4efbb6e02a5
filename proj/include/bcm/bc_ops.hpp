#pragma once

// Operators of the boundary control method for the half-line lattice:
//
//   response    (R^T f)_t = u^f_{1,t} = sum_{s<t} r_s f_{t-1-s},   t = 1..T
//   control     W^T f     = (u^f_{1,T}, ..., u^f_{T,T})
//   connecting  C^T       = (W^T)^* W^T, expressed through r alone.
//
// Matrix indices of C follow the 1-based formulas: row/column i pairs with the
// control entry f_{i-1}.

#include <cstddef>
#include <span>

#include "bcm/execution.hpp"
#include "bcm/lattice_core.hpp"
#include "bcm/linalg.hpp"

namespace bcm {

/// r_0..r_K with r_s = w_{1,s}. Only b_1..b_{ceil(K/2)} influence the result;
/// missing entries are read as zero.
ResponseKernel response_kernel(const Potential& b, int max_index);

/// ((R^T f)_1, ..., (R^T f)_T), returned 0-based.
Sequence apply_response(const ResponseKernel& r, const ControlSeq& f);

/// Transpose of the response matrix: out_j = sum_{t=j+1}^{T} r_{t-1-j} g_t,
/// with g passed 0-based as (g_1, ..., g_T).
Sequence apply_response_adjoint(const ResponseKernel& r, std::span<const double> g);

/// Dense T x T response matrix, M(t-1, j) = r_{t-1-j} for j < t.
Matrix response_matrix(const ResponseKernel& r, TimeHorizon horizon);

/// Matrix of W^T in the factored form (I + K) J.
class ControlOperatorMatrix {
 public:
  explicit ControlOperatorMatrix(Matrix unit_upper) : unit_upper_(std::move(unit_upper)) {}

  std::size_t size() const noexcept { return unit_upper_.rows(); }
  /// I + K with K_{n,s+1} = w_{n,s}.
  const Matrix& unit_upper() const noexcept { return unit_upper_; }
  /// Dense W^T = (I + K) J; column j acts on f_j.
  Matrix dense() const;
  Sequence apply(const ControlSeq& f) const;

 private:
  Matrix unit_upper_;
};

ControlOperatorMatrix control_matrix(const Potential& b, TimeHorizon horizon);

/// Symmetric T x T connecting matrix with 1-based element access.
class ConnectingMatrix {
 public:
  explicit ConnectingMatrix(Matrix m);

  int horizon() const noexcept { return static_cast<int>(m_.rows()); }
  /// C_{ij}, 1 <= i, j <= T.
  double at(int i, int j) const noexcept {
    return m_(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// C_{ij} = sum_{k=0}^{T - max(i,j)} r_{|i-j| + 2k}; needs r_0..r_{2T-2}.
ConnectingMatrix connecting_matrix(const ResponseKernel& r, TimeHorizon horizon);

/// Brute-force Gram matrix of the waves u^{e_j}_{.,T}; T independent forward
/// solves. Kept as the oracle for connecting_matrix.
ConnectingMatrix connecting_via_waves(const Potential& b, TimeHorizon horizon,
                                      Execution exec = Execution::serial);

/// Cbar_{ij} = C_{T+1-j, T+1-i}, i.e. J C J.
ConnectingMatrix rotated_connecting(const ConnectingMatrix& c);

}  // namespace bcm
