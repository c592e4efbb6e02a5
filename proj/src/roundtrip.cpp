#include "bcm/roundtrip.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "bcm/bc_ops.hpp"
#include "bcm/errors.hpp"
#include "bcm/inversion.hpp"
#include "bcm/problem_file.hpp"

namespace bcm {

namespace {

constexpr const char* kMethods[] = {"factorization", "gelfand-levitan", "krein"};
constexpr std::size_t kMethodCount = 3;

struct InstanceResult {
  bool admissible = false;
  std::optional<double> error[kMethodCount];
  std::string failure[kMethodCount];
};

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const DegenerateTrace*>(&e)) return "DegenerateTrace";
  if (dynamic_cast<const SingularLeadingMinor*>(&e)) return "SingularLeadingMinor";
  if (dynamic_cast<const SingularConnecting*>(&e)) return "SingularConnecting";
  if (dynamic_cast<const ConvergenceFailure*>(&e)) return "ConvergenceFailure";
  if (dynamic_cast<const PreconditionError*>(&e)) return "PreconditionError";
  return "NumericalError";
}

double max_error(const Potential& truth, const Potential& recovered, int count) {
  double e = 0.0;
  for (int n = 1; n <= count; ++n) e = std::max(e, std::abs(truth(n) - recovered(n)));
  return e;
}

}  // namespace

std::vector<Potential> draw_potentials(std::uint64_t seed, int instances, int horizon,
                                       double amplitude) {
  if (instances < 0) throw PreconditionError("instance count must be nonnegative");
  if (horizon < 2) throw PreconditionError("round trips need T >= 2");
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw PreconditionError("amplitude must be positive and finite");
  }
  std::mt19937_64 gen(seed);
  std::vector<Potential> out;
  out.reserve(static_cast<std::size_t>(instances));
  for (int i = 0; i < instances; ++i) {
    Sequence b(static_cast<std::size_t>(horizon - 1));
    for (double& x : b) {
      const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      x = amplitude * (2.0 * u - 1.0);
    }
    out.emplace_back(std::move(b));
  }
  return out;
}

RoundTripReport run_roundtrip(std::uint64_t seed, int instances, int horizon, double amplitude,
                              const Tolerances& tol, Execution exec) {
  tol.validate();
  const std::vector<Potential> potentials = draw_potentials(seed, instances, horizon, amplitude);
  const TimeHorizon h(horizon);
  std::vector<InstanceResult> results(potentials.size());

  for_each_index(exec, potentials.size(), [&](std::size_t i) {
    const Potential& b = potentials[i];
    const ResponseKernel r = response_kernel(b, 2 * horizon - 2);
    InstanceResult& res = results[i];
    res.admissible = characterize_response(r, h, tol).admissible;
    for (std::size_t m = 0; m < kMethodCount; ++m) {
      try {
        Potential rec = m == 0   ? invert_factorization(r, h, tol)
                        : m == 1 ? invert_gelfand_levitan(r, h, tol)
                                 : invert_krein(r, h);
        res.error[m] = max_error(b, rec, horizon - 1);
      } catch (const NumericalError& e) {
        res.failure[m] = error_kind(e);
      }
    }
  });

  RoundTripReport report;
  report.seed = seed;
  report.instances = instances;
  report.horizon = horizon;
  report.amplitude = amplitude;
  for (const char* name : kMethods) report.methods.push_back({name, 0, std::nullopt});
  for (std::size_t i = 0; i < results.size(); ++i) {
    const InstanceResult& res = results[i];
    (res.admissible ? report.admissible : report.inadmissible) += 1;
    for (std::size_t m = 0; m < kMethodCount; ++m) {
      MethodStats& stats = report.methods[m];
      if (res.error[m]) {
        ++stats.successes;
        stats.max_abs_error = std::max(stats.max_abs_error.value_or(0.0), *res.error[m]);
      } else {
        report.failures.push_back({stats.method, static_cast<int>(i), res.failure[m]});
      }
    }
  }
  return report;
}

void write_report(std::ostream& out, const RoundTripReport& report) {
  out << "{\n  \"kind\": \"roundtrip\",\n"
      << "  \"generator\": \"mt19937_64; entry = amplitude * (2 * ((x >> 11) * 2^-53) - 1)\",\n"
      << "  \"seed\": " << report.seed << ",\n"
      << "  \"instances\": " << report.instances << ",\n"
      << "  \"T\": " << report.horizon << ",\n"
      << "  \"amplitude\": " << io::format_number(report.amplitude) << ",\n"
      << "  \"characterization\": {\"admissible\": " << report.admissible
      << ", \"inadmissible\": " << report.inadmissible << "},\n"
      << "  \"methods\": {";
  for (std::size_t m = 0; m < report.methods.size(); ++m) {
    const MethodStats& s = report.methods[m];
    out << (m ? "," : "") << "\n    \"" << s.method << "\": {\"successes\": " << s.successes
        << ", \"failures\": " << report.instances - s.successes << ", \"max_abs_error\": "
        << (s.max_abs_error ? io::format_number(*s.max_abs_error) : "null") << '}';
  }
  out << "\n  },\n  \"failures\": [";
  for (std::size_t k = 0; k < report.failures.size(); ++k) {
    const RoundTripFailure& f = report.failures[k];
    out << (k ? "," : "") << "\n    {\"method\": \"" << f.method << "\", \"instance\": " << f.instance
        << ", \"error\": \"" << f.error << "\"}";
  }
  out << (report.failures.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

}  // namespace bcm
