#pragma once

// Sequence types shared by every module, plus the three elementary sequences
// of the lattice model: full convolution, the Chebyshev-type recurrence and
// the alternating kappa sequence used by the Krein equations.

#include <cstddef>
#include <span>
#include <vector>

namespace bcm {

using Sequence = std::vector<double>;

/// Number of time steps T >= 1.
class TimeHorizon {
 public:
  explicit TimeHorizon(int steps);
  int value() const noexcept { return steps_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(steps_); }

 private:
  int steps_;
};

/// Boundary control (f_0, ..., f_{T-1}).
class ControlSeq {
 public:
  explicit ControlSeq(Sequence values);
  /// Unit impulse (1, 0, ..., 0) of length T.
  static ControlSeq delta(TimeHorizon horizon);
  /// Basis control e_j of length T.
  static ControlSeq unit(TimeHorizon horizon, int j);

  TimeHorizon horizon() const { return TimeHorizon(static_cast<int>(values_.size())); }
  std::size_t size() const noexcept { return values_.size(); }
  /// f_j, zero outside 0..T-1.
  double operator()(int j) const noexcept {
    return (j < 0 || j >= static_cast<int>(values_.size())) ? 0.0
                                                             : values_[static_cast<std::size_t>(j)];
  }
  std::span<const double> values() const noexcept { return values_; }

 private:
  Sequence values_;
};

/// Potential (b_1, ..., b_M), 1-based. Entries past M read as zero, which is
/// the free-lattice extension used by the semi-infinite solvers.
class Potential {
 public:
  explicit Potential(Sequence values);
  /// The zero-length potential. Only produced by inversions at T = 1.
  static Potential empty() { return Potential(); }

  std::size_t size() const noexcept { return values_.size(); }
  bool is_empty() const noexcept { return values_.empty(); }
  double operator()(int n) const noexcept {
    return (n < 1 || n > static_cast<int>(values_.size())) ? 0.0
                                                            : values_[static_cast<std::size_t>(n - 1)];
  }
  std::span<const double> values() const noexcept { return values_; }

 private:
  Potential() = default;
  Sequence values_;
};

/// Response kernel (r_0, ..., r_K) with r_0 = 1 exactly.
class ResponseKernel {
 public:
  explicit ResponseKernel(Sequence values);

  /// Largest stored index K.
  int max_index() const noexcept { return static_cast<int>(values_.size()) - 1; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](int s) const noexcept { return values_[static_cast<std::size_t>(s)]; }
  std::span<const double> values() const noexcept { return values_; }

  /// Throws PreconditionError unless indices 0..needed are present.
  void require_covers(int needed, const char* what) const;

 private:
  Sequence values_;
};

struct Tolerances {
  double det_tol = 1e-9;
  double pivot_tol = 1e-12;
  double eig_tol = 1e-10;

  void validate() const;
};

/// c_t = sum_{s<=t} a_s b_{t-s}, full length len(a)+len(b)-1.
Sequence convolve(std::span<const double> a, std::span<const double> b);

/// (T_0, ..., T_{t_max}) with T_0 = 0, T_1 = 1, T_{t+1} = lambda T_t - T_{t-1}.
Sequence chebyshev_seq(int t_max, double lambda);

/// (kappa_0, ..., kappa_{T-1}) with kappa_T = 0, kappa_{T-1} = 1,
/// kappa_{t-1} = -kappa_{t+1}.
Sequence kappa_seq(TimeHorizon horizon);

}  // namespace bcm
