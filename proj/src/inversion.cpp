#include "bcm/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bcm/errors.hpp"

namespace bcm {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

// The connecting matrices have determinant 1 but entries that grow
// exponentially with the horizon, so a pivot threshold relative to the largest
// entry would reject perfectly regular systems. Singularity is judged on the
// determinant instead.
constexpr double kSolvePivotTol = Tolerances{}.pivot_tol;

Matrix rotated_full(const ResponseKernel& r, TimeHorizon horizon) {
  return rotated_connecting(connecting_matrix(r, horizon)).matrix();
}

// Solves the (order x order) leading block of `a` against `rhs`, or reports
// the block as singular / not positive.
std::vector<double> solve_leading(const Matrix& block, std::span<const double> rhs,
                                  double pivot_tol) {
  const LuFactors lu = lu_factor(block, 0.0);
  const double det = lu.determinant();
  if (lu.singular || !(det > pivot_tol)) {
    throw SingularLeadingMinor(static_cast<int>(block.rows()), det);
  }
  return lu.solve(rhs);
}

}  // namespace

void KreinConfig::validate() const {
  if (alpha == 0.0 && beta == 0.0) {
    throw PreconditionError("Krein configuration needs (alpha, beta) != (0, 0)");
  }
  if (!(degeneracy_tol >= 0.0)) {
    throw PreconditionError("Krein degeneracy tolerance must be nonnegative");
  }
}

KreinTrace krein_trace(const ResponseKernel& r, TimeHorizon horizon, const KreinConfig& cfg,
                       Execution exec) {
  cfg.validate();
  const int T = horizon.value();
  r.require_covers(2 * T - 2, "invert_krein");

  KreinTrace out;
  out.y.assign(idx(T) + 1, 0.0);
  out.y[0] = cfg.alpha;
  for_each_index(exec, idx(T), [&](std::size_t slot) {
    const int tau = static_cast<int>(slot) + 1;
    const TimeHorizon h(tau);
    const Sequence kappa = kappa_seq(h);
    // The adjoint pairs kappa_t with (R g)_t for t = 1..tau; kappa_tau = 0.
    Sequence shifted(idx(tau), 0.0);
    for (int t = 1; t < tau; ++t) shifted[idx(t - 1)] = kappa[idx(t)];
    const Sequence adj = apply_response_adjoint(r, shifted);
    Sequence rhs(idx(tau));
    for (std::size_t j = 0; j < rhs.size(); ++j) rhs[j] = cfg.beta * kappa[j] - cfg.alpha * adj[j];

    const LuFactors lu = lu_factor(connecting_matrix(r, h).matrix(), 0.0);
    if (lu.singular || !(std::abs(lu.determinant()) > kSolvePivotTol)) {
      throw SingularConnecting(tau);
    }
    const Sequence f = lu.solve(rhs);
    out.y[idx(tau)] = f[0];
  });
  return out;
}

Potential invert_krein(const ResponseKernel& r, TimeHorizon horizon, const KreinConfig& cfg,
                       Execution exec) {
  const KreinTrace trace = krein_trace(r, horizon, cfg, exec);
  const Sequence& y = trace.y;
  const int T = horizon.value();
  if (T == 1) return Potential::empty();

  double scale = 0.0;
  for (double v : y) scale = std::max(scale, std::abs(v));
  Sequence b(idx(T - 1));
  for (int n = 1; n <= T - 1; ++n) {
    if (std::abs(y[idx(n)]) <= cfg.degeneracy_tol * scale) throw DegenerateTrace(n, y[idx(n)]);
    b[idx(n - 1)] = (y[idx(n + 1)] + y[idx(n - 1)]) / y[idx(n)];
  }
  return Potential(std::move(b));
}

Sequence TriangularFactor::diagonal() const {
  Sequence d;
  for (int i = 1; i < size(); ++i) d.push_back(k(i, i));
  return d;
}

TriangularFactor factor_rotated_connecting(const ResponseKernel& r, TimeHorizon horizon,
                                           const Tolerances& tol, Execution exec) {
  tol.validate();
  const int T = horizon.value();
  r.require_covers(2 * T - 2, "invert_factorization");
  const Matrix cbar = rotated_full(r, horizon);

  Matrix rows = Matrix::identity(idx(T));
  // Row l+1 only needs the leading (l+1) block, so rows are independent.
  for_each_index(exec, idx(T - 1), [&](std::size_t l) {
    const std::size_t order = l + 1;
    std::vector<double> rhs(order);
    for (std::size_t i = 0; i < order; ++i) rhs[i] = -cbar(i, order);
    const std::vector<double> k = solve_leading(cbar.leading_block(order), rhs, tol.pivot_tol);
    for (std::size_t j = 0; j < order; ++j) rows(order, j) = k[j];
  });
  return TriangularFactor(std::move(rows));
}

Potential potential_from_diagonal(const Sequence& diagonal) {
  if (diagonal.empty()) return Potential::empty();
  Sequence b(diagonal.size());
  double previous = 0.0;
  for (std::size_t n = 0; n < diagonal.size(); ++n) {
    b[n] = diagonal[n] - previous;
    previous = diagonal[n];
  }
  return Potential(std::move(b));
}

Potential invert_factorization(const ResponseKernel& r, TimeHorizon horizon,
                               const Tolerances& tol, Execution exec) {
  return potential_from_diagonal(factor_rotated_connecting(r, horizon, tol, exec).diagonal());
}

Sequence gelfand_levitan_diagonal(const ResponseKernel& r, TimeHorizon horizon,
                                  const Tolerances& tol, Execution exec) {
  tol.validate();
  const int T = horizon.value();
  r.require_covers(2 * T - 2, "invert_gelfand_levitan");
  Sequence diag(idx(std::max(T - 1, 0)));
  for_each_index(exec, diag.size(), [&](std::size_t slot) {
    const int tau = static_cast<int>(slot) + 2;
    // C~^tau = Cbar^tau - I, built for this horizon alone.
    Matrix ctilde = rotated_full(r, TimeHorizon(tau));
    for (int i = 0; i < tau; ++i) ctilde(idx(i), idx(i)) -= 1.0;

    const int m = tau - 1;
    Matrix system(idx(m), idx(m));
    std::vector<double> rhs(idx(m));
    for (int beta = 0; beta < m; ++beta) {
      for (int j = 0; j < m; ++j) system(idx(beta), idx(j)) = ctilde(idx(beta), idx(j));
      system(idx(beta), idx(beta)) += 1.0;
      rhs[idx(beta)] = -ctilde(idx(beta), idx(m));
    }
    const std::vector<double> k = solve_leading(system, rhs, tol.pivot_tol);
    diag[slot] = k.back();
  });
  return diag;
}

Potential invert_gelfand_levitan(const ResponseKernel& r, TimeHorizon horizon,
                                 const Tolerances& tol, Execution exec) {
  return potential_from_diagonal(gelfand_levitan_diagonal(r, horizon, tol, exec));
}

CharacterizationVerdict characterize_response(const ResponseKernel& r, TimeHorizon horizon,
                                              const Tolerances& tol, Execution exec) {
  tol.validate();
  const int T = horizon.value();
  r.require_covers(2 * T - 2, "characterize_response");
  const Matrix cbar = rotated_full(r, horizon);

  CharacterizationVerdict v;
  v.minor_values.assign(idx(T), 0.0);
  for_each_index(exec, idx(T), [&](std::size_t l) {
    v.minor_values[l] = lu_factor(cbar.leading_block(l + 1), 0.0).determinant();
  });

  v.pivot_values.resize(idx(T));
  double previous = 1.0;
  for (int l = 1; l <= T; ++l) {
    const double det = v.minor_values[idx(l - 1)];
    const double pivot =
        previous == 0.0 ? std::numeric_limits<double>::quiet_NaN() : det / previous;
    v.pivot_values[idx(l - 1)] = pivot;
    previous = det;
    const bool ok = pivot > tol.pivot_tol && std::abs(det - 1.0) <= tol.det_tol;
    if (!ok && !v.first_failing_order) v.first_failing_order = l;
  }
  v.admissible = !v.first_failing_order.has_value();
  return v;
}

}  // namespace bcm
