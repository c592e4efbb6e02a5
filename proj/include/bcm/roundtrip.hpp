#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bcm/execution.hpp"
#include "bcm/lattice_core.hpp"

namespace bcm {

/// Potentials for round-trip experiments. Draws come from std::mt19937_64
/// seeded with `seed`; each 64-bit output x becomes u = (x >> 11) * 2^-53 in
/// [0, 1) and the entry is amplitude * (2u - 1). Instance i consumes draws
/// (T-1)*i .. (T-1)*(i+1)-1, so the sequence is fixed by (seed, T) alone.
std::vector<Potential> draw_potentials(std::uint64_t seed, int instances, int horizon,
                                       double amplitude);

struct MethodStats {
  std::string method;
  int successes = 0;
  /// Largest |b_n - recovered b_n| over the successful instances.
  std::optional<double> max_abs_error;
};

struct RoundTripFailure {
  std::string method;
  int instance = 0;
  std::string error;
};

struct RoundTripReport {
  std::uint64_t seed = 0;
  int instances = 0;
  int horizon = 0;
  double amplitude = 0.0;
  /// factorization, gelfand-levitan, krein, in that order.
  std::vector<MethodStats> methods;
  int admissible = 0;
  int inadmissible = 0;
  /// Sorted by instance, then by method order.
  std::vector<RoundTripFailure> failures;
};

/// Generates the kernels, runs characterization and all three inversions and
/// collects the errors. Instances are evaluated independently (in parallel
/// when requested) and merged by index, so the report does not depend on
/// scheduling.
RoundTripReport run_roundtrip(std::uint64_t seed, int instances, int horizon, double amplitude,
                              const Tolerances& tol = {}, Execution exec = Execution::parallel);

void write_report(std::ostream& out, const RoundTripReport& report);

}  // namespace bcm
