#pragma once

// Recovery of b_1..b_{T-1} from the response kernel r_0..r_{2T-2}, and the
// admissibility test for candidate kernels.
//
// All three solvers read the kernel only through the connecting matrix C^T,
// which depends on r_0..r_{2T-2}; entries past 2T-2 are ignored.

#include <optional>
#include <vector>

#include "bcm/bc_ops.hpp"
#include "bcm/execution.hpp"
#include "bcm/lattice_core.hpp"
#include "bcm/linalg.hpp"

namespace bcm {

struct KreinConfig {
  double alpha = 0.0;  // y_0
  double beta = 1.0;   // y_1
  double degeneracy_tol = 1e-8;

  void validate() const;
};

/// Output of the Krein solver before the division step.
struct KreinTrace {
  /// y_0..y_T with y_0 = alpha and y_tau = f^tau_0.
  Sequence y;
};

/// Solves C^tau f = beta kappa - alpha (R^tau)^* kappa for tau = 1..T and
/// returns the traced solution y.
KreinTrace krein_trace(const ResponseKernel& r, TimeHorizon horizon, const KreinConfig& cfg,
                       Execution exec = Execution::serial);

/// b_n = (y_{n+1} + y_{n-1}) / y_n, n = 1..T-1. Throws DegenerateTrace when
/// some needed |y_n| <= degeneracy_tol * max|y|.
Potential invert_krein(const ResponseKernel& r, TimeHorizon horizon, const KreinConfig& cfg = {},
                       Execution exec = Execution::serial);

/// Unit-lower factor of ((Wbar^T)^{-1})^*: row i is (k_{i1}, ..., k_{ii}, 1, 0, ...).
class TriangularFactor {
 public:
  explicit TriangularFactor(Matrix rows) : rows_(std::move(rows)) {}
  int size() const noexcept { return static_cast<int>(rows_.rows()); }
  /// k_{ij} for 1 <= j <= i <= T-1.
  double k(int i, int j) const noexcept {
    return rows_(static_cast<std::size_t>(i), static_cast<std::size_t>(j - 1));
  }
  /// (k_{11}, ..., k_{T-1,T-1}).
  Sequence diagonal() const;
  const Matrix& matrix() const noexcept { return rows_; }

 private:
  Matrix rows_;
};

/// Row-by-row solution of K_i Cbar K_j^* = 0 (i < j). Row l+1 comes from the
/// (l+1)-dimensional system with the leading block of Cbar.
TriangularFactor factor_rotated_connecting(const ResponseKernel& r, TimeHorizon horizon,
                                           const Tolerances& tol = {},
                                           Execution exec = Execution::serial);

/// b_n = k_{nn} - k_{n-1,n-1}.
Potential potential_from_diagonal(const Sequence& diagonal);

Potential invert_factorization(const ResponseKernel& r, TimeHorizon horizon,
                               const Tolerances& tol = {}, Execution exec = Execution::serial);

/// The diagonal k~_{tau-1,tau-1} obtained from (I + C~^tau) k~ + C~_tau = 0,
/// tau = 2..T.
Sequence gelfand_levitan_diagonal(const ResponseKernel& r, TimeHorizon horizon,
                                  const Tolerances& tol = {}, Execution exec = Execution::serial);

Potential invert_gelfand_levitan(const ResponseKernel& r, TimeHorizon horizon,
                                 const Tolerances& tol = {}, Execution exec = Execution::serial);

struct CharacterizationVerdict {
  bool admissible = false;
  std::optional<int> first_failing_order;
  /// det Cbar^l, l = 1..T.
  Sequence minor_values;
  /// det Cbar^l / det Cbar^{l-1}: the pivots of elimination without exchanges.
  Sequence pivot_values;
};

CharacterizationVerdict characterize_response(const ResponseKernel& r, TimeHorizon horizon,
                                              const Tolerances& tol = {},
                                              Execution exec = Execution::serial);

}  // namespace bcm
