#include "bcm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "bcm/errors.hpp"
#include "bcm/inversion.hpp"

namespace bcm {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxInverseIterations = 8;
constexpr double kMassTolerance = 1e-8;

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// k-th smallest eigenvalue (0-based) by bisection on the Sturm count.
double bisect_eigenvalue(const Hamiltonian& h, int k, double lo, double hi) {
  for (int iter = 0; iter < 256; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(h, mid) <= k) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// LU with partial pivoting of the tridiagonal H - shift I (unit off-diagonals).
// Near-zero pivots are replaced by `floor` so the shifted matrix stays
// invertible; that is what makes inverse iteration converge in one or two steps.
class ShiftedTridiagonalLu {
 public:
  ShiftedTridiagonalLu(const Hamiltonian& h, double shift, double floor) {
    const std::size_t n = h.diag().size();
    d_.resize(n);
    for (std::size_t i = 0; i < n; ++i) d_[i] = h.diag()[i] - shift;
    dl_.assign(n > 0 ? n - 1 : 0, 1.0);
    du_.assign(n > 0 ? n - 1 : 0, 1.0);
    du2_.assign(n > 1 ? n - 2 : 0, 0.0);
    swapped_.assign(n > 0 ? n - 1 : 0, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (std::abs(d_[i]) < floor) d_[i] = std::copysign(floor, d_[i] == 0.0 ? 1.0 : d_[i]);
        const double fact = dl_[i] / d_[i];
        dl_[i] = fact;
        d_[i + 1] -= fact * du_[i];
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    if (n > 0 && std::abs(d_[n - 1]) < floor) {
      d_[n - 1] = std::copysign(floor, d_[n - 1] == 0.0 ? 1.0 : d_[n - 1]);
    }
  }

  void solve_in_place(std::vector<double>& x) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped_[i]) std::swap(x[i], x[i + 1]);
      x[i + 1] -= dl_[i] * x[i];
    }
    for (std::size_t i = n; i-- > 0;) {
      double s = x[i];
      if (i + 1 < n) s -= du_[i] * x[i + 1];
      if (i + 2 < n) s -= du2_[i] * x[i + 2];
      x[i] = s / d_[i];
    }
  }

 private:
  std::vector<double> d_, dl_, du_, du2_;
  std::vector<bool> swapped_;
};

double residual_norm(const Hamiltonian& h, std::span<const double> v, double lambda) {
  const Sequence hv = h.apply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double e = hv[i] - lambda * v[i];
    s += e * e;
  }
  return std::sqrt(s);
}

}  // namespace

Hamiltonian::Hamiltonian(Sequence diag) : diag_(std::move(diag)) {
  if (diag_.empty()) throw PreconditionError("Hamiltonian order must be >= 1");
}

Matrix Hamiltonian::dense() const {
  const std::size_t n = diag_.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = diag_[i];
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = 1.0;
  }
  return m;
}

Sequence Hamiltonian::apply(std::span<const double> x) const {
  const std::size_t n = diag_.size();
  Sequence y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag_[i] * x[i];
    if (i > 0) s += x[i - 1];
    if (i + 1 < n) s += x[i + 1];
    y[i] = s;
  }
  return y;
}

Hamiltonian build_hamiltonian(const Potential& b, int interval_n) {
  if (interval_n < 1) throw PreconditionError("build_hamiltonian: N must be >= 1");
  if (static_cast<int>(b.size()) < interval_n) {
    throw PreconditionError("build_hamiltonian: potential has " + std::to_string(b.size()) +
                            " entries, needs N = " + std::to_string(interval_n));
  }
  Sequence diag(idx(interval_n));
  for (int n = 1; n <= interval_n; ++n) diag[idx(n - 1)] = -b(n);
  return Hamiltonian(std::move(diag));
}

int sturm_count(const Hamiltonian& h, double x) {
  const Sequence& a = h.diag();
  // Pivots of the LDL^T factorisation of H - x I; off-diagonal squares are 1.
  const double tiny = std::numeric_limits<double>::min() / kEps;
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = (a[i] - x) - (i == 0 ? 0.0 : 1.0 / d);
    if (d == 0.0) d = -tiny;
    if (d < 0.0) ++count;
  }
  return count;
}

SpectralData eigen_decompose(const Hamiltonian& h, const Tolerances& tol, Execution exec) {
  tol.validate();
  const int N = h.order();
  const Sequence& a = h.diag();

  // Gershgorin interval, widened so neither end is an eigenvalue.
  double lo = a[0], hi = a[0];
  for (double v : a) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double radius = N > 1 ? 2.0 : 0.0;
  const double pad = 1.0 + std::max(std::abs(lo), std::abs(hi)) * 4 * kEps;
  lo -= radius + pad;
  hi += radius + pad;

  Sequence lambda(idx(N));
  for_each_index(exec, idx(N), [&](std::size_t k) {
    lambda[k] = bisect_eigenvalue(h, static_cast<int>(k), lo, hi);
  });
  for (int k = 1; k < N; ++k) {
    if (!(lambda[idx(k)] > lambda[idx(k - 1)])) {
      throw ConvergenceFailure("eigenvalues " + std::to_string(k) + " and " +
                               std::to_string(k + 1) + " are not separated");
    }
  }
  const double h_norm = std::max(std::abs(lambda.front()), std::abs(lambda.back()));

  // Eigenvalues closer than this share a cluster and get reorthogonalised.
  const double cluster_gap = 1e-3 * std::max(h_norm, 1.0);
  std::vector<std::pair<int, int>> clusters;
  for (int k = 0; k < N; ++k) {
    if (k > 0 && lambda[idx(k)] - lambda[idx(k - 1)] < cluster_gap) {
      clusters.back().second = k + 1;
    } else {
      clusters.emplace_back(k, k + 1);
    }
  }

  Matrix unit(idx(N), idx(N));
  const double pivot_floor = kEps * std::max(h_norm, 1.0);
  const double residual_bound = tol.eig_tol * h_norm;
  for_each_index(exec, clusters.size(), [&](std::size_t c) {
    const auto [first, last] = clusters[c];
    for (int k = first; k < last; ++k) {
      const ShiftedTridiagonalLu lu(h, lambda[idx(k)], pivot_floor);
      std::mt19937 gen(static_cast<std::mt19937::result_type>(k + 1));
      std::vector<double> v(idx(N));
      for (auto& x : v) x = 1.0 + static_cast<double>(gen() % 1024) / 1024.0;

      bool converged = false;
      for (int iter = 0; iter < kMaxInverseIterations && !converged; ++iter) {
        lu.solve_in_place(v);
        for (int j = first; j < k; ++j) {
          double dot = 0.0;
          for (int i = 0; i < N; ++i) dot += v[idx(i)] * unit(idx(j), idx(i));
          for (int i = 0; i < N; ++i) v[idx(i)] -= dot * unit(idx(j), idx(i));
        }
        const double nv = norm2(v);
        for (auto& x : v) x /= nv;
        converged = iter >= 1 && residual_norm(h, v, lambda[idx(k)]) <= residual_bound;
      }
      if (!converged) {
        throw ConvergenceFailure("inverse iteration did not converge for eigenvalue " +
                                 std::to_string(k + 1));
      }
      for (int i = 0; i < N; ++i) unit(idx(k), idx(i)) = v[idx(i)];
    }
  });

  Sequence rho(idx(N));
  Matrix phi(idx(N), idx(N));
  for (int k = 0; k < N; ++k) {
    const double first = unit(idx(k), 0);
    // Localized eigenvectors can have a first component far below any fixed
    // threshold; only an exact zero (which an unreduced tridiagonal matrix
    // cannot have) makes the normalization impossible.
    if (first == 0.0 || !std::isfinite(1.0 / first)) {
      throw ConvergenceFailure("eigenvector " + std::to_string(k + 1) +
                               " has a vanishing first component");
    }
    for (int i = 0; i < N; ++i) phi(idx(k), idx(i)) = unit(idx(k), idx(i)) / first;
    double s = 0.0;
    for (double x : phi.row(idx(k))) s += x * x;
    rho[idx(k)] = s;
  }
  return SpectralData(std::move(lambda), std::move(rho), std::move(phi));
}

Sequence phi_polynomial(const Potential& b, double lambda, int interval_n) {
  if (interval_n < 1) throw PreconditionError("phi_polynomial: N must be >= 1");
  if (static_cast<int>(b.size()) < interval_n) {
    throw PreconditionError("phi_polynomial: potential shorter than N");
  }
  Sequence phi(idx(interval_n) + 2);
  phi[0] = 0.0;
  phi[1] = 1.0;
  for (int i = 1; i <= interval_n; ++i) {
    phi[idx(i + 1)] = (lambda + b(i)) * phi[idx(i)] - phi[idx(i - 1)];
  }
  return phi;
}

ResponseKernel kernel_from_spectral(const SpectralData& sd, int max_index,
                                    bool dirichlet_correction) {
  const int N = sd.order();
  const int limit = dirichlet_correction ? 2 * N : 2 * N - 1;
  if (max_index < 0 || max_index > limit) {
    throw PreconditionError("kernel_from_spectral: K = " + std::to_string(max_index) +
                            " outside 0.." + std::to_string(limit));
  }
  const double mass = sd.total_mass();
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw PreconditionError("kernel_from_spectral: spectral mass sum 1/rho_k = " +
                            std::to_string(mass) + " differs from 1");
  }
  Sequence r(idx(max_index) + 1, 0.0);
  for (int k = 0; k < N; ++k) {
    const Sequence cheb = chebyshev_seq(max_index + 1, sd.eigenvalues()[idx(k)]);
    const double weight = 1.0 / sd.norming()[idx(k)];
    for (int s = 1; s <= max_index; ++s) r[idx(s)] += weight * cheb[idx(s + 1)];
  }
  // r_0 is the spectral mass, exactly 1 for admissible data.
  r[0] = 1.0;
  if (dirichlet_correction && max_index == 2 * N) r[idx(max_index)] += 1.0;
  return ResponseKernel(std::move(r));
}

ConnectingMatrix connecting_from_spectral(const SpectralData& sd, TimeHorizon horizon) {
  const int T = horizon.value();
  const int N = sd.order();
  if (T > N) {
    throw PreconditionError("connecting_from_spectral: T = " + std::to_string(T) +
                            " exceeds N = " + std::to_string(N));
  }
  Matrix c(idx(T), idx(T));
  for (int k = 0; k < N; ++k) {
    const Sequence cheb = chebyshev_seq(T, sd.eigenvalues()[idx(k)]);
    const double weight = 1.0 / sd.norming()[idx(k)];
    for (int l = 0; l < T; ++l) {
      for (int m = 0; m < T; ++m) {
        c(idx(l), idx(m)) += weight * cheb[idx(T - l)] * cheb[idx(T - m)];
      }
    }
  }
  return ConnectingMatrix(std::move(c));
}

SpectralMeasure::SpectralMeasure(std::vector<std::pair<double, double>> jumps)
    : jumps_(std::move(jumps)) {
  std::sort(jumps_.begin(), jumps_.end());
  for (const auto& [at, weight] : jumps_) {
    if (!(weight > 0.0)) throw PreconditionError("spectral measure weights must be positive");
  }
}

double SpectralMeasure::operator()(double lambda) const {
  double s = 0.0;
  for (const auto& [at, weight] : jumps_) {
    if (!(at < lambda)) break;
    s += weight;
  }
  return s;
}

double SpectralMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& jump : jumps_) s += jump.second;
  return s;
}

SpectralMeasure spectral_measure(const SpectralData& sd) {
  std::vector<std::pair<double, double>> jumps;
  for (int k = 0; k < sd.order(); ++k) {
    jumps.emplace_back(sd.eigenvalues()[idx(k)], 1.0 / sd.norming()[idx(k)]);
  }
  return SpectralMeasure(std::move(jumps));
}

Potential invert_spectral(const SpectralData& sd, const Tolerances& tol) {
  const int N = sd.order();
  const ResponseKernel r = kernel_from_spectral(sd, 2 * N, true);
  return invert_factorization(r, TimeHorizon(N + 1), tol);
}

SpectralData::SpectralData(Sequence eigenvalues, Sequence norming,
                           std::optional<Matrix> eigenvectors)
    : eigenvalues_(std::move(eigenvalues)),
      norming_(std::move(norming)),
      eigenvectors_(std::move(eigenvectors)) {
  if (eigenvalues_.empty()) throw PreconditionError("spectral data must be non-empty");
  if (eigenvalues_.size() != norming_.size()) {
    throw PreconditionError("spectral data: eigenvalue and norming counts differ");
  }
  for (std::size_t k = 0; k < eigenvalues_.size(); ++k) {
    if (!std::isfinite(eigenvalues_[k]) || !std::isfinite(norming_[k])) {
      throw PreconditionError("spectral data has a non-finite entry");
    }
    if (!(norming_[k] > 0.0)) throw PreconditionError("norming constants must be positive");
    if (k > 0 && !(eigenvalues_[k] > eigenvalues_[k - 1])) {
      throw PreconditionError("eigenvalues must be strictly increasing");
    }
  }
  if (eigenvectors_ &&
      (eigenvectors_->rows() != eigenvalues_.size() || eigenvectors_->cols() != eigenvalues_.size())) {
    throw PreconditionError("spectral data: eigenvector table must be N x N");
  }
}

const Matrix& SpectralData::eigenvectors() const {
  if (!eigenvectors_) throw PreconditionError("spectral data carries no eigenvectors");
  return *eigenvectors_;
}

double SpectralData::total_mass() const {
  double s = 0.0;
  for (double rho : norming_) s += 1.0 / rho;
  return s;
}

}  // namespace bcm
