#pragma once

// On-disk formats shared by the command-line tool.
//
// Vectors and spectral data are JSON objects
//   {"kind": "...", "values": [...], "meta": {...}}
// with every number printed to 17 significant digits, so a double survives a
// write/read cycle unchanged. Spectral values are [lambda, rho] pairs. Fields
// and matrices are CSV with a header row of column indices.

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <variant>

#include "bcm/forward.hpp"
#include "bcm/lattice_core.hpp"
#include "bcm/spectral_data.hpp"

namespace bcm::io {

enum class Kind { potential, control, kernel, spectral };

std::string kind_name(Kind kind);

/// Metadata entries are integers, reals or strings.
using MetaValue = std::variant<long long, double, std::string>;
using Meta = std::map<std::string, MetaValue>;

struct ProblemFile {
  Kind kind = Kind::potential;
  /// Payload for potential, control and kernel files.
  Sequence values;
  /// Payload for spectral files: (lambda_k, rho_k) in file order.
  Sequence eigenvalues;
  Sequence norming;
  Meta meta;
};

/// Parses and validates a problem file. Malformed JSON, a wrong "kind" or a
/// payload violating the domain invariants raise PreconditionError.
ProblemFile parse_problem(std::istream& in, const std::string& source_name);

/// Checks the kind and converts to the domain type (which re-validates).
Potential to_potential(const ProblemFile& file);
ControlSeq to_control(const ProblemFile& file);
ResponseKernel to_kernel(const ProblemFile& file);
SpectralData to_spectral(const ProblemFile& file);

ProblemFile make_problem(Kind kind, std::span<const double> values, Meta meta = {});
ProblemFile make_spectral(const SpectralData& sd, Meta meta = {});

void write_problem(std::ostream& out, const ProblemFile& file);

/// printf("%.17g"); callers must not pass non-finite values.
std::string format_number(double x);
/// Like format_number but writes NaN and infinities as JSON null.
std::string format_json_number(double x);

/// CSV with header `corner,c0,c0+1,...` and one row per matrix row labelled
/// row0, row0+1, ...
void write_csv(std::ostream& out, const Matrix& m, const std::string& corner, int row0, int col0);

}  // namespace bcm::io
