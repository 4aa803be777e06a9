#pragma once

#include "sympkit/core.hpp"
#include "sympkit/dynamics.hpp"
#include "sympkit/loops.hpp"
#include "sympkit/quantum.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>

// File formats (one self-describing JSON document per file):
//   matrix      {"rows": [[...], ...]}
//   covariance  {"rows": [[...], ...], "hbar": 1.0}          (hbar optional)
//   loop        {"n": 1, "samples": [[x.., p..], ...]}        closed polyline,
//               final row repeats the first; or
//               {"fourier": {"cos": [[...], ...], "sin": [[...], ...]}}
//               with entry m holding the coefficients of cos(m t) / sin(m t)
//   system      {"quadratic": {"M": [[...], ...]}} or
//               {"potential": {"kind": "harmonic|pendulum|quartic",
//                              "params": {...}, "mass": 1.0}}

namespace sympkit::io {

/// Parse or validation failure, with file and line/column context when the
/// document itself is malformed.
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

Matrix read_matrix_file(const std::string& path);

struct CovarianceFile {
    Matrix sigma;
    std::optional<double> hbar;
};

CovarianceFile read_covariance_file(const std::string& path);

Loop read_loop_file(const std::string& path);

using SystemSpec = std::variant<QuadraticHamiltonian, ScalarPotentialSystem>;

SystemSpec read_system_file(const std::string& path);

nlohmann::ordered_json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& rows);

void write_json_file(const std::string& path, const nlohmann::ordered_json& doc);

}  // namespace sympkit::io
