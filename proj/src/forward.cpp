#include "bcm/forward.hpp"

#include <string>

#include "bcm/errors.hpp"

namespace bcm {

Sequence WaveField::trace() const {
  Sequence out;
  out.reserve(static_cast<std::size_t>(t_max()));
  for (int t = 1; t <= t_max(); ++t) out.push_back(at_or_zero(1, t));
  return out;
}

GoursatKernel::GoursatKernel(int max_s) : max_s_(max_s) {
  if (max_s < 0) throw PreconditionError("Goursat kernel size must be >= 0");
  const auto s = static_cast<std::size_t>(max_s);
  table_.assign(s * (s + 1) / 2, 0.0);
}

namespace {

// One step of the lattice recursion at node n >= 1, reading neighbours from
// `field` (zero outside the stored window).
double lattice_step(const WaveField& field, const Potential& b, int n, int t) {
  return field.at_or_zero(n + 1, t) + field.at_or_zero(n - 1, t) - b(n) * field(n, t) -
         field.at_or_zero(n, t - 1);
}

}  // namespace

WaveField solve_semi_infinite(const Potential& b, const ControlSeq& f, TimeHorizon horizon) {
  const int T = horizon.value();
  if (static_cast<int>(f.size()) != T) {
    throw PreconditionError("solve_semi_infinite: control length " + std::to_string(f.size()) +
                            " does not match horizon " + std::to_string(T));
  }
  // u_{n,t} = 0 for n > t, so nodes past n = T never feed back into the window.
  WaveField u(T, T);
  for (int t = 0; t <= T; ++t) u(0, t) = f(t);
  for (int t = 0; t < T; ++t) {
    for (int n = 1; n <= T; ++n) u(n, t + 1) = lattice_step(u, b, n, t);
  }
  return u;
}

GoursatKernel solve_goursat(const Potential& b, int max_s) {
  if (max_s < 0) throw PreconditionError("solve_goursat: S must be >= 0");
  if (static_cast<int>(b.size()) < max_s) {
    throw PreconditionError("solve_goursat: potential has " + std::to_string(b.size()) +
                            " entries, needs " + std::to_string(max_s));
  }
  GoursatKernel w(max_s);
  double partial = 0.0;
  for (int s = 1; s <= max_s; ++s) {
    partial += b(s);
    w.set(s, s, -partial);
    // w_{n,s} = w_{n+1,s-1} + w_{n-1,s-1} - b_n w_{n,s-1} - w_{n,s-2}
    for (int n = 1; n < s; ++n) {
      w.set(n, s, w(n + 1, s - 1) + w(n - 1, s - 1) - b(n) * w(n, s - 1) - w(n, s - 2));
    }
  }
  return w;
}

double apply_representation(const GoursatKernel& w, const ControlSeq& f, int n, int t) {
  if (n < 1) throw PreconditionError("apply_representation: n must be >= 1");
  if (t < 0) throw PreconditionError("apply_representation: t must be >= 0");
  if (n <= t - 1 && t - 1 > w.max_s()) {
    throw PreconditionError("apply_representation: kernel covers s <= " +
                            std::to_string(w.max_s()) + ", needs " + std::to_string(t - 1));
  }
  double u = f(t - n);
  for (int s = n; s <= t - 1; ++s) u += w(n, s) * f(t - s - 1);
  return u;
}

WaveField solve_interval(const Potential& b, int interval_n, const ControlSeq& f,
                         TimeHorizon horizon) {
  const int N = interval_n;
  const int T = horizon.value();
  if (N < 1) throw PreconditionError("solve_interval: N must be >= 1");
  if (static_cast<int>(b.size()) < N) {
    throw PreconditionError("solve_interval: potential has " + std::to_string(b.size()) +
                            " entries, needs N = " + std::to_string(N));
  }
  if (static_cast<int>(f.size()) != T) {
    throw PreconditionError("solve_interval: control length " + std::to_string(f.size()) +
                            " does not match horizon " + std::to_string(T));
  }
  WaveField v(N + 1, T);
  for (int t = 0; t <= T; ++t) v(0, t) = f(t);
  for (int t = 0; t < T; ++t) {
    for (int n = 1; n <= N; ++n) v(n, t + 1) = lattice_step(v, b, n, t);
  }
  return v;
}

Matrix fourier_coefficients(const SpectralData& sd, const ControlSeq& f, TimeHorizon horizon) {
  const int T = horizon.value();
  if (static_cast<int>(f.size()) != T) {
    throw PreconditionError("fourier_coefficients: control length does not match horizon");
  }
  const auto N = static_cast<std::size_t>(sd.order());
  Matrix c(N, static_cast<std::size_t>(T) + 1);
  for (std::size_t k = 0; k < N; ++k) {
    const Sequence cheb = chebyshev_seq(T + 1, sd.eigenvalues()[k]);
    const double weight = 1.0 / sd.norming()[k];
    for (int t = 0; t <= T; ++t) {
      double s = 0.0;
      for (int l = 0; l <= t; ++l) s += cheb[static_cast<std::size_t>(l)] * f(t - l);
      c(k, static_cast<std::size_t>(t)) = weight * s;
    }
  }
  return c;
}

WaveField interval_fourier_solution(const SpectralData& sd, const ControlSeq& f,
                                    TimeHorizon horizon) {
  const Matrix& phi = sd.eigenvectors();
  const int N = sd.order();
  if (static_cast<int>(phi.rows()) != N || static_cast<int>(phi.cols()) != N) {
    throw PreconditionError("interval_fourier_solution: eigenvector table is not N x N");
  }
  const Matrix c = fourier_coefficients(sd, f, horizon);
  const int T = horizon.value();
  WaveField v(N + 1, T);
  for (int t = 0; t <= T; ++t) v(0, t) = f(t);
  for (int n = 1; n <= N; ++n) {
    for (int t = 0; t <= T; ++t) {
      double s = 0.0;
      for (int k = 0; k < N; ++k) {
        s += c(static_cast<std::size_t>(k), static_cast<std::size_t>(t)) *
             phi(static_cast<std::size_t>(k), static_cast<std::size_t>(n - 1));
      }
      v(n, t) = s;
    }
  }
  return v;
}

}  // namespace bcm
