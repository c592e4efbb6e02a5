#include "bcm/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "bcm/bc_ops.hpp"
#include "bcm/errors.hpp"
#include "bcm/forward.hpp"
#include "bcm/inversion.hpp"
#include "bcm/problem_file.hpp"
#include "bcm/roundtrip.hpp"
#include "bcm/spectral.hpp"

namespace bcm::cli {

namespace {

struct Globals {
  Tolerances tol;
  std::string output;
  std::uint64_t seed = 0;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

io::ProblemFile load(const std::string& path, std::istream& in) {
  if (path == "-") return io::parse_problem(in, "<stdin>");
  std::ifstream file(path);
  if (!file) throw PreconditionError("cannot open " + path);
  return io::parse_problem(file, path);
}

// Sends the primary result to --output when given, else to the out stream.
void emit(const Globals& g, Streams& s, const std::function<void(std::ostream&)>& write) {
  if (g.output.empty()) {
    write(s.out);
    return;
  }
  std::ofstream file(g.output);
  if (!file) throw PreconditionError("cannot write " + g.output);
  write(file);
}

void write_sequence_json(std::ostream& out, const std::string& kind, std::span<const double> v) {
  out << "{\"kind\": \"" << kind << "\", \"values\": [";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << io::format_number(v[i]);
  out << "]}\n";
}

std::string verdict_json(const CharacterizationVerdict& v, int horizon) {
  std::ostringstream os;
  os << "{\"kind\": \"verdict\", \"T\": " << horizon
     << ", \"admissible\": " << (v.admissible ? "true" : "false") << ", \"first_failing_order\": ";
  if (v.first_failing_order) {
    os << *v.first_failing_order;
  } else {
    os << "null";
  }
  os << ", \"minors\": [";
  for (std::size_t i = 0; i < v.minor_values.size(); ++i) {
    os << (i ? ", " : "") << io::format_json_number(v.minor_values[i]);
  }
  os << "], \"pivots\": [";
  for (std::size_t i = 0; i < v.pivot_values.size(); ++i) {
    os << (i ? ", " : "") << io::format_json_number(v.pivot_values[i]);
  }
  os << "]}\n";
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Boundary control method for the discrete wave equation on the half-line lattice",
               "bcm"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol-det", g.tol.det_tol, "tolerance on |det - 1| for leading minors")
      ->capture_default_str();
  app.add_option("--tol-pivot", g.tol.pivot_tol, "smallest acceptable pivot / determinant")
      ->capture_default_str();
  app.add_option("--tol-eig", g.tol.eig_tol, "relative eigenpair residual bound")
      ->capture_default_str();
  app.add_option("-o,--output", g.output, "write the result here instead of stdout");
  app.add_option("--seed", g.seed, "seed for the roundtrip generator")->capture_default_str();

  Streams s{in, out, err};
  std::function<int()> action;

  // forward
  std::string potential_path, control_path;
  int horizon = 0, interval_n = 0;
  auto* forward = app.add_subcommand("forward", "solve the lattice wave equation");
  forward->add_option("--potential", potential_path, "potential file (b_1, b_2, ...)")->required();
  forward->add_option("--control", control_path, "control file (f_0, ..., f_{T-1})")->required();
  forward->add_option("-T,--horizon", horizon, "time horizon (default: control length)");
  forward->add_option("--interval-n", interval_n, "solve on 1..N with a Dirichlet wall at N+1")
      ->check(CLI::PositiveNumber);
  forward->callback([&] {
    action = [&]() -> int {
      if (potential_path == "-" && control_path == "-") {
        throw PreconditionError("only one input may come from stdin");
      }
      const Potential b = io::to_potential(load(potential_path, s.in));
      const ControlSeq f = io::to_control(load(control_path, s.in));
      const TimeHorizon T(horizon > 0 ? horizon : static_cast<int>(f.values().size()));
      const WaveField u =
          interval_n > 0 ? solve_interval(b, interval_n, f, T) : solve_semi_infinite(b, f, T);
      emit(g, s, [&](std::ostream& os) { io::write_csv(os, u.matrix(), "n", 0, 0); });
      // The boundary trace goes wherever the CSV does not.
      std::ostream& trace_out = g.output.empty() ? s.err : s.out;
      const Sequence trace = u.trace();
      write_sequence_json(trace_out, "trace", trace);
      return kSuccess;
    };
  });

  // response
  std::string input = "-";
  int max_index = 0;
  auto* response = app.add_subcommand("response", "response kernel r_0..r_K of a potential");
  response->add_option("input", input, "potential file or - for stdin")->capture_default_str();
  response->add_option("-K,--max-index", max_index, "largest kernel index")->required();
  response->callback([&] {
    action = [&]() -> int {
      const Potential b = io::to_potential(load(input, s.in));
      const ResponseKernel r = response_kernel(b, max_index);
      emit(g, s, [&](std::ostream& os) {
        io::write_problem(os, io::make_problem(io::Kind::kernel, r.values(), {{"K", max_index}}));
      });
      return kSuccess;
    };
  });

  // connect
  bool rotated = false;
  auto* connect = app.add_subcommand("connect", "connecting matrix C^T as CSV");
  connect->add_option("input", input, "kernel file, or a potential file to use the wave Gram matrix")
      ->capture_default_str();
  connect->add_option("-T,--horizon", horizon, "time horizon")->required();
  connect->add_flag("--rotated", rotated, "print the rotated matrix Cbar instead");
  connect->callback([&] {
    action = [&]() -> int {
      const io::ProblemFile file = load(input, s.in);
      const TimeHorizon T(horizon);
      ConnectingMatrix c = file.kind == io::Kind::potential
                               ? connecting_via_waves(io::to_potential(file), T, Execution::parallel)
                               : connecting_matrix(io::to_kernel(file), T);
      if (rotated) c = rotated_connecting(c);
      emit(g, s, [&](std::ostream& os) { io::write_csv(os, c.matrix(), "i", 1, 1); });
      return kSuccess;
    };
  });

  // invert
  std::string method = "factorization";
  KreinConfig krein;
  auto* invert = app.add_subcommand("invert", "recover b_1..b_{T-1} from a response kernel");
  invert->add_option("input", input, "kernel file or - for stdin")->capture_default_str();
  invert->add_option("-T,--horizon", horizon, "time horizon")->required();
  invert->add_option("-m,--method", method, "inversion method")
      ->check(CLI::IsMember({"krein", "factorization", "gelfand-levitan"}))
      ->capture_default_str();
  invert->add_option("--alpha", krein.alpha, "Krein boundary value y_0")->capture_default_str();
  invert->add_option("--beta", krein.beta, "Krein boundary value y_1")->capture_default_str();
  invert->callback([&] {
    action = [&]() -> int {
      const ResponseKernel r = io::to_kernel(load(input, s.in));
      const TimeHorizon T(horizon);
      // Admissibility is decided up front so every method reports
      // inadmissible data the same way.
      const CharacterizationVerdict v = characterize_response(r, T, g.tol, Execution::parallel);
      if (!v.admissible) {
        s.err << "bcm: kernel is not admissible at T=" << horizon << " (first failing order "
              << *v.first_failing_order << ", minor "
              << io::format_json_number(v.minor_values[*v.first_failing_order - 1]) << ")\n";
        return kInadmissible;
      }
      Potential b = Potential::empty();
      if (method == "krein") {
        b = invert_krein(r, T, krein, Execution::parallel);
      } else if (method == "gelfand-levitan") {
        b = invert_gelfand_levitan(r, T, g.tol, Execution::parallel);
      } else {
        b = invert_factorization(r, T, g.tol, Execution::parallel);
      }
      emit(g, s, [&](std::ostream& os) {
        io::write_problem(os, io::make_problem(io::Kind::potential, b.values(),
                                               {{"T", horizon}, {"method", method}}));
      });
      return kSuccess;
    };
  });

  // characterize
  auto* characterize = app.add_subcommand("characterize", "admissibility verdict for a kernel");
  characterize->add_option("input", input, "kernel file or - for stdin")->capture_default_str();
  characterize->add_option("-T,--horizon", horizon, "time horizon")->required();
  characterize->callback([&] {
    action = [&]() -> int {
      const ResponseKernel r = io::to_kernel(load(input, s.in));
      const CharacterizationVerdict v =
          characterize_response(r, TimeHorizon(horizon), g.tol, Execution::parallel);
      const std::string text = verdict_json(v, horizon);
      emit(g, s, [&](std::ostream& os) { os << text; });
      return v.admissible ? kSuccess : kInadmissible;
    };
  });

  // spectral
  auto* spectral = app.add_subcommand("spectral", "eigenvalues and norming constants of H_N");
  spectral->add_option("input", input, "potential file or - for stdin")->capture_default_str();
  spectral->add_option("-N,--interval-n", interval_n, "interval length (default: potential length)");
  spectral->callback([&] {
    action = [&]() -> int {
      const Potential b = io::to_potential(load(input, s.in));
      const int N = interval_n > 0 ? interval_n : static_cast<int>(b.size());
      const SpectralData sd = eigen_decompose(build_hamiltonian(b, N), g.tol, Execution::parallel);
      emit(g, s, [&](std::ostream& os) { io::write_problem(os, io::make_spectral(sd, {{"N", N}})); });
      return kSuccess;
    };
  });

  // spectral-invert
  auto* spectral_invert =
      app.add_subcommand("spectral-invert", "recover b_1..b_N from spectral data");
  spectral_invert->add_option("input", input, "spectral file or - for stdin")->capture_default_str();
  spectral_invert->callback([&] {
    action = [&]() -> int {
      const SpectralData sd = io::to_spectral(load(input, s.in));
      const Potential b = invert_spectral(sd, g.tol);
      emit(g, s, [&](std::ostream& os) {
        io::write_problem(os, io::make_problem(io::Kind::potential, b.values(), {{"N", sd.order()}}));
      });
      return kSuccess;
    };
  });

  // roundtrip
  int instances = 100;
  double amplitude = 2.0;
  auto* roundtrip = app.add_subcommand("roundtrip", "seeded forward/inverse experiment report");
  roundtrip->add_option("-n,--instances", instances, "number of random potentials")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  roundtrip->add_option("-T,--horizon", horizon, "time horizon")->required();
  roundtrip->add_option("-a,--amplitude", amplitude, "entries are uniform in [-a, a]")
      ->capture_default_str();
  roundtrip->callback([&] {
    action = [&]() -> int {
      const RoundTripReport report =
          run_roundtrip(g.seed, instances, horizon, amplitude, g.tol, Execution::parallel);
      emit(g, s, [&](std::ostream& os) { write_report(os, report); });
      return kSuccess;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    g.tol.validate();
    return action();
  } catch (const InadmissibleData& e) {
    err << "bcm: inadmissible data: " << e.what() << '\n';
    return kInadmissible;
  } catch (const DegenerateTrace& e) {
    err << "bcm: degenerate Krein trace: " << e.what() << '\n';
    return kDegenerate;
  } catch (const ConvergenceFailure& e) {
    err << "bcm: " << e.what() << '\n';
    return kDegenerate;
  } catch (const NumericalError& e) {
    err << "bcm: numerical failure: " << e.what() << '\n';
    return kDegenerate;
  } catch (const PreconditionError& e) {
    err << "bcm: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace bcm::cli
