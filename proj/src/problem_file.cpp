#include "bcm/problem_file.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "bcm/errors.hpp"

namespace bcm::io {

namespace {

using nlohmann::json;

Kind parse_kind(const std::string& s, const std::string& source) {
  if (s == "potential") return Kind::potential;
  if (s == "control") return Kind::control;
  if (s == "kernel") return Kind::kernel;
  if (s == "spectral") return Kind::spectral;
  throw PreconditionError(source + ": unknown kind \"" + s + "\"");
}

double as_real(const json& v, const std::string& source) {
  if (!v.is_number()) throw PreconditionError(source + ": expected a number, found " + v.dump());
  return v.get<double>();
}

void require_kind(const ProblemFile& file, Kind expected) {
  if (file.kind != expected) {
    throw PreconditionError("expected a " + kind_name(expected) + " file, found " +
                            kind_name(file.kind));
  }
}

}  // namespace

std::string kind_name(Kind kind) {
  switch (kind) {
    case Kind::potential: return "potential";
    case Kind::control: return "control";
    case Kind::kernel: return "kernel";
    case Kind::spectral: return "spectral";
  }
  return "unknown";
}

ProblemFile parse_problem(std::istream& in, const std::string& source) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw PreconditionError(source + ": malformed JSON (" + e.what() + ")");
  }
  if (!doc.is_object()) throw PreconditionError(source + ": top level must be an object");
  if (!doc.contains("kind") || !doc["kind"].is_string()) {
    throw PreconditionError(source + ": missing string field \"kind\"");
  }
  if (!doc.contains("values") || !doc["values"].is_array()) {
    throw PreconditionError(source + ": missing array field \"values\"");
  }

  ProblemFile file;
  file.kind = parse_kind(doc["kind"].get<std::string>(), source);
  for (const json& v : doc["values"]) {
    if (file.kind == Kind::spectral) {
      if (!v.is_array() || v.size() != 2) {
        throw PreconditionError(source + ": spectral entries must be [lambda, rho] pairs");
      }
      file.eigenvalues.push_back(as_real(v[0], source));
      file.norming.push_back(as_real(v[1], source));
    } else {
      file.values.push_back(as_real(v, source));
    }
  }
  if (doc.contains("meta")) {
    if (!doc["meta"].is_object()) throw PreconditionError(source + ": \"meta\" must be an object");
    for (const auto& [key, v] : doc["meta"].items()) {
      if (v.is_number_integer()) {
        file.meta[key] = v.get<long long>();
      } else if (v.is_number()) {
        file.meta[key] = v.get<double>();
      } else if (v.is_string()) {
        file.meta[key] = v.get<std::string>();
      }
    }
  }

  // Validate eagerly so a bad file is reported at load time.
  switch (file.kind) {
    case Kind::potential: (void)to_potential(file); break;
    case Kind::control: (void)to_control(file); break;
    case Kind::kernel: (void)to_kernel(file); break;
    case Kind::spectral: (void)to_spectral(file); break;
  }
  return file;
}

Potential to_potential(const ProblemFile& file) {
  require_kind(file, Kind::potential);
  return Potential(file.values);
}

ControlSeq to_control(const ProblemFile& file) {
  require_kind(file, Kind::control);
  return ControlSeq(file.values);
}

ResponseKernel to_kernel(const ProblemFile& file) {
  require_kind(file, Kind::kernel);
  return ResponseKernel(file.values);
}

SpectralData to_spectral(const ProblemFile& file) {
  require_kind(file, Kind::spectral);
  return SpectralData(file.eigenvalues, file.norming);
}

ProblemFile make_problem(Kind kind, std::span<const double> values, Meta meta) {
  ProblemFile file;
  file.kind = kind;
  file.values.assign(values.begin(), values.end());
  file.meta = std::move(meta);
  return file;
}

ProblemFile make_spectral(const SpectralData& sd, Meta meta) {
  ProblemFile file;
  file.kind = Kind::spectral;
  file.eigenvalues = sd.eigenvalues();
  file.norming = sd.norming();
  file.meta = std::move(meta);
  return file;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string format_json_number(double x) {
  return std::isfinite(x) ? format_number(x) : "null";
}

void write_problem(std::ostream& out, const ProblemFile& file) {
  out << "{\"kind\": \"" << kind_name(file.kind) << "\", \"values\": [";
  if (file.kind == Kind::spectral) {
    for (std::size_t k = 0; k < file.eigenvalues.size(); ++k) {
      out << (k ? ", " : "") << '[' << format_number(file.eigenvalues[k]) << ", "
          << format_number(file.norming[k]) << ']';
    }
  } else {
    for (std::size_t k = 0; k < file.values.size(); ++k) {
      out << (k ? ", " : "") << format_number(file.values[k]);
    }
  }
  out << "], \"meta\": {";
  bool first = true;
  for (const auto& [key, value] : file.meta) {
    out << (first ? "" : ", ") << json(key).dump() << ": ";
    first = false;
    if (const auto* i = std::get_if<long long>(&value)) {
      out << *i;
    } else if (const auto* d = std::get_if<double>(&value)) {
      out << format_json_number(*d);
    } else {
      out << json(std::get<std::string>(value)).dump();
    }
  }
  out << "}}\n";
}

void write_csv(std::ostream& out, const Matrix& m, const std::string& corner, int row0, int col0) {
  out << corner;
  for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << col0 + static_cast<int>(j);
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << row0 + static_cast<int>(i);
    for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << format_number(m(i, j));
    out << '\n';
  }
}

}  // namespace bcm::io
