#include "bcm/lattice_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bcm/errors.hpp"

namespace bcm {

TimeHorizon::TimeHorizon(int steps) : steps_(steps) {
  if (steps < 1) {
    throw PreconditionError("time horizon must be >= 1, got " + std::to_string(steps));
  }
}

ControlSeq::ControlSeq(Sequence values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw PreconditionError("control sequence must have at least one entry");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("control sequence has a non-finite entry");
  }
}

ControlSeq ControlSeq::delta(TimeHorizon horizon) { return unit(horizon, 0); }

ControlSeq ControlSeq::unit(TimeHorizon horizon, int j) {
  if (j < 0 || j >= horizon.value()) {
    throw PreconditionError("basis index " + std::to_string(j) + " outside 0..T-1");
  }
  Sequence v(horizon.size(), 0.0);
  v[static_cast<std::size_t>(j)] = 1.0;
  return ControlSeq(std::move(v));
}

Potential::Potential(Sequence values) : values_(std::move(values)) {
  if (values_.empty()) {
    throw PreconditionError("potential must have at least one entry");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("potential has a non-finite entry");
  }
}

ResponseKernel::ResponseKernel(Sequence values) : values_(std::move(values)) {
  if (values_.empty() || values_.front() != 1.0) {
    throw PreconditionError("response kernel must start with r_0 = 1");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw PreconditionError("response kernel has a non-finite entry");
  }
}

void ResponseKernel::require_covers(int needed, const char* what) const {
  if (max_index() < needed) {
    throw PreconditionError(std::string(what) + ": kernel must cover indices 0.." +
                            std::to_string(needed) + ", has 0.." + std::to_string(max_index()));
  }
}

void Tolerances::validate() const {
  if (!(det_tol >= 0.0) || !(pivot_tol >= 0.0) || !(eig_tol >= 0.0)) {
    throw PreconditionError("tolerances must be nonnegative");
  }
}

Sequence convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  Sequence c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Sequence chebyshev_seq(int t_max, double lambda) {
  if (t_max < 1) throw PreconditionError("chebyshev_seq: t_max must be >= 1");
  Sequence out(static_cast<std::size_t>(t_max) + 1);
  out[0] = 0.0;
  out[1] = 1.0;
  for (std::size_t t = 1; t < out.size() - 1; ++t) out[t + 1] = lambda * out[t] - out[t - 1];
  return out;
}

Sequence kappa_seq(TimeHorizon horizon) {
  const int T = horizon.value();
  // Work on 0..T, then drop the stored kappa_T = 0.
  Sequence k(static_cast<std::size_t>(T) + 1, 0.0);
  k[static_cast<std::size_t>(T - 1)] = 1.0;
  for (int t = T - 1; t >= 1; --t) {
    k[static_cast<std::size_t>(t - 1)] = -k[static_cast<std::size_t>(t + 1)];
  }
  k.pop_back();
  return k;
}

}  // namespace bcm
