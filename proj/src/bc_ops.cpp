#include "bcm/bc_ops.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "bcm/errors.hpp"
#include "bcm/forward.hpp"

namespace bcm {

namespace {

std::size_t idx(int i) { return static_cast<std::size_t>(i); }

Potential padded(const Potential& b, int length) {
  Sequence v(idx(std::max(length, 1)), 0.0);
  for (int n = 1; n <= static_cast<int>(v.size()); ++n) v[idx(n - 1)] = b(n);
  return Potential(std::move(v));
}

}  // namespace

ResponseKernel response_kernel(const Potential& b, int max_index) {
  if (max_index < 0) throw PreconditionError("response_kernel: K must be >= 0");
  Sequence r(idx(max_index) + 1, 0.0);
  r[0] = 1.0;
  if (max_index > 0) {
    const GoursatKernel w = solve_goursat(padded(b, max_index), max_index);
    for (int s = 1; s <= max_index; ++s) r[idx(s)] = w(1, s);
  }
  return ResponseKernel(std::move(r));
}

Sequence apply_response(const ResponseKernel& r, const ControlSeq& f) {
  const int T = static_cast<int>(f.size());
  r.require_covers(T - 1, "apply_response");
  Sequence out(idx(T), 0.0);
  for (int t = 1; t <= T; ++t) {
    double s = 0.0;
    for (int k = 0; k <= t - 1; ++k) s += r[k] * f(t - 1 - k);
    out[idx(t - 1)] = s;
  }
  return out;
}

Sequence apply_response_adjoint(const ResponseKernel& r, std::span<const double> g) {
  const int T = static_cast<int>(g.size());
  if (T < 1) throw PreconditionError("apply_response_adjoint: g must be non-empty");
  r.require_covers(T - 1, "apply_response_adjoint");
  Sequence out(idx(T), 0.0);
  for (int j = 0; j < T; ++j) {
    double s = 0.0;
    for (int t = j + 1; t <= T; ++t) s += r[t - 1 - j] * g[idx(t - 1)];
    out[idx(j)] = s;
  }
  return out;
}

Matrix response_matrix(const ResponseKernel& r, TimeHorizon horizon) {
  const int T = horizon.value();
  r.require_covers(T - 1, "response_matrix");
  Matrix m(idx(T), idx(T));
  for (int t = 1; t <= T; ++t) {
    for (int j = 0; j <= t - 1; ++j) m(idx(t - 1), idx(j)) = r[t - 1 - j];
  }
  return m;
}

Matrix ControlOperatorMatrix::dense() const {
  const std::size_t T = size();
  Matrix w(T, T);
  // Right-multiplying by J reverses the column order.
  for (std::size_t i = 0; i < T; ++i) {
    for (std::size_t j = 0; j < T; ++j) w(i, j) = unit_upper_(i, T - 1 - j);
  }
  return w;
}

Sequence ControlOperatorMatrix::apply(const ControlSeq& f) const {
  if (f.size() != size()) {
    throw PreconditionError("control operator: control length does not match horizon");
  }
  return dense() * f.values();
}

ControlOperatorMatrix control_matrix(const Potential& b, TimeHorizon horizon) {
  const int T = horizon.value();
  if (static_cast<int>(b.size()) < T - 1) {
    throw PreconditionError("control_matrix: potential has " + std::to_string(b.size()) +
                            " entries, needs T-1 = " + std::to_string(T - 1));
  }
  const GoursatKernel w = solve_goursat(b, T - 1);
  Matrix upper = Matrix::identity(idx(T));
  // Row n (1-based) of (I + K): K_{n, s+1} = w_{n,s} for s = n..T-1.
  for (int n = 1; n <= T; ++n) {
    for (int s = n; s <= T - 1; ++s) upper(idx(n - 1), idx(s)) = w(n, s);
  }
  return ControlOperatorMatrix(std::move(upper));
}

ConnectingMatrix::ConnectingMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw PreconditionError("connecting matrix must be square and non-empty");
  }
}

ConnectingMatrix connecting_matrix(const ResponseKernel& r, TimeHorizon horizon) {
  const int T = horizon.value();
  r.require_covers(2 * T - 2, "connecting_matrix");
  Matrix c(idx(T), idx(T));
  for (int i = 1; i <= T; ++i) {
    for (int j = 1; j <= T; ++j) {
      const int offset = std::abs(i - j);
      double s = 0.0;
      for (int k = 0; k <= T - std::max(i, j); ++k) s += r[offset + 2 * k];
      c(idx(i - 1), idx(j - 1)) = s;
    }
  }
  return ConnectingMatrix(std::move(c));
}

ConnectingMatrix connecting_via_waves(const Potential& b, TimeHorizon horizon, Execution exec) {
  const int T = horizon.value();
  if (static_cast<int>(b.size()) < T - 1) {
    throw PreconditionError("connecting_via_waves: potential has " + std::to_string(b.size()) +
                            " entries, needs T-1 = " + std::to_string(T - 1));
  }
  // Column j holds the final state u^{e_j}_{1..T, T}.
  Matrix states(idx(T), idx(T));
  for_each_index(exec, idx(T), [&](std::size_t j) {
    const WaveField u = solve_semi_infinite(b, ControlSeq::unit(horizon, static_cast<int>(j)),
                                            horizon);
    for (int k = 1; k <= T; ++k) states(idx(k - 1), j) = u(k, T);
  });
  Matrix c(idx(T), idx(T));
  for (std::size_t i = 0; i < idx(T); ++i) {
    for (std::size_t j = 0; j < idx(T); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < idx(T); ++k) s += states(k, i) * states(k, j);
      c(i, j) = s;
    }
  }
  return ConnectingMatrix(std::move(c));
}

ConnectingMatrix rotated_connecting(const ConnectingMatrix& c) {
  const int T = c.horizon();
  Matrix out(idx(T), idx(T));
  for (int i = 1; i <= T; ++i) {
    for (int j = 1; j <= T; ++j) out(idx(i - 1), idx(j - 1)) = c.at(T + 1 - j, T + 1 - i);
  }
  return ConnectingMatrix(std::move(out));
}

}  // namespace bcm
