#include "sympkit/io.hpp"

#include <fstream>
#include <sstream>

namespace sympkit::io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": malformed JSON at " + line_column(text, e.byte) + ": " +
                          e.what());
    }
}

Matrix parse_rows(const json& rows, const std::string& what) {
    if (!rows.is_array() || rows.empty())
        throw FormatError(what + ": \"rows\" must be a nonempty array of arrays");
    const std::size_t n_cols = rows.front().is_array() ? rows.front().size() : 0;
    if (n_cols == 0) throw FormatError(what + ": rows must be nonempty arrays");
    Matrix m(rows.size(), n_cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (!row.is_array() || row.size() != n_cols)
            throw FormatError(what + ": row " + std::to_string(i) + " has inconsistent length");
        for (std::size_t k = 0; k < n_cols; ++k) {
            if (!row[k].is_number())
                throw FormatError(what + ": entry (" + std::to_string(i) + "," +
                                  std::to_string(k) + ") is not a number");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k].get<double>();
        }
    }
    return m;
}

Matrix parse_matrix_doc(const json& doc, const std::string& path) {
    if (!doc.is_object() || !doc.contains("rows"))
        throw FormatError(path + ": expected an object with a \"rows\" field");
    const Matrix m = parse_rows(doc["rows"], path);
    if (m.rows() != m.cols()) throw FormatError(path + ": matrix must be square");
    return m;
}

Loop fourier_loop(const json& spec, const std::string& path) {
    auto coeffs = [&](const char* key) -> std::vector<Vector> {
        std::vector<Vector> out;
        if (!spec.contains(key)) return out;
        const Matrix m = parse_rows(spec[key], path + ": fourier." + key);
        out.reserve(static_cast<std::size_t>(m.rows()));
        for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
        return out;
    };
    const std::vector<Vector> cos_c = coeffs("cos");
    const std::vector<Vector> sin_c = coeffs("sin");
    if (cos_c.empty() && sin_c.empty())
        throw FormatError(path + ": fourier loop needs \"cos\" or \"sin\" coefficients");

    const Eigen::Index width = cos_c.empty() ? sin_c.front().size() : cos_c.front().size();
    if (width < 2 || width % 2 != 0)
        throw FormatError(path + ": fourier coefficient width must be 2n");
    for (const auto& v : cos_c)
        if (v.size() != width) throw FormatError(path + ": fourier coefficient widths differ");
    for (const auto& v : sin_c)
        if (v.size() != width) throw FormatError(path + ": fourier coefficient widths differ");

    const int n = static_cast<int>(width) / 2;
    auto value = [cos_c, sin_c, width](double t) -> Vector {
        Vector z = Vector::Zero(width);
        for (std::size_t m = 0; m < cos_c.size(); ++m)
            z += std::cos(static_cast<double>(m) * t) * cos_c[m];
        for (std::size_t m = 1; m < sin_c.size(); ++m)
            z += std::sin(static_cast<double>(m) * t) * sin_c[m];
        return z;
    };
    auto deriv = [cos_c, sin_c, width](double t) -> Vector {
        Vector z = Vector::Zero(width);
        for (std::size_t m = 1; m < cos_c.size(); ++m)
            z -= static_cast<double>(m) * std::sin(static_cast<double>(m) * t) * cos_c[m];
        for (std::size_t m = 1; m < sin_c.size(); ++m)
            z += static_cast<double>(m) * std::cos(static_cast<double>(m) * t) * sin_c[m];
        return z;
    };
    return Loop::from_callable(n, value, deriv);
}

}  // namespace

Matrix read_matrix_file(const std::string& path) { return parse_matrix_doc(load(path), path); }

CovarianceFile read_covariance_file(const std::string& path) {
    const json doc = load(path);
    CovarianceFile out{parse_matrix_doc(doc, path), std::nullopt};
    if (doc.contains("hbar")) {
        if (!doc["hbar"].is_number() || doc["hbar"].get<double>() <= 0.0)
            throw FormatError(path + ": \"hbar\" must be a positive number");
        out.hbar = doc["hbar"].get<double>();
    }
    return out;
}

Loop read_loop_file(const std::string& path) {
    const json doc = load(path);
    if (!doc.is_object()) throw FormatError(path + ": expected a JSON object");
    if (doc.contains("fourier")) return fourier_loop(doc["fourier"], path);
    if (!doc.contains("samples"))
        throw FormatError(path + ": loop needs \"samples\" or \"fourier\"");

    const Matrix samples = parse_rows(doc["samples"], path);
    if (doc.contains("n")) {
        const int n = doc["n"].get<int>();
        if (2 * n != samples.cols())
            throw FormatError(path + ": declared n does not match sample width");
    }
    try {
        return Loop::from_closed_polyline(samples);
    } catch (const std::invalid_argument& e) {
        throw FormatError(path + ": " + e.what());
    }
}

SystemSpec read_system_file(const std::string& path) {
    const json doc = load(path);
    if (doc.is_object() && doc.contains("quadratic")) {
        const auto& q = doc["quadratic"];
        if (!q.is_object() || !q.contains("M"))
            throw FormatError(path + ": \"quadratic\" needs an \"M\" matrix");
        Matrix m = parse_rows(q["M"], path);
        if (m.rows() != m.cols()) throw FormatError(path + ": quadratic M must be square");
        try {
            return QuadraticHamiltonian(std::move(m));
        } catch (const std::invalid_argument& e) {
            throw FormatError(path + ": " + e.what());
        }
    }
    if (doc.is_object() && doc.contains("potential")) {
        const auto& p = doc["potential"];
        if (!p.is_object() || !p.contains("kind"))
            throw FormatError(path + ": \"potential\" needs a \"kind\"");
        const std::string kind = p["kind"].get<std::string>();
        const double mass = p.value("mass", 1.0);
        const json params = p.value("params", json::object());
        auto param = [&params](const char* key, double fallback) {
            return params.contains(key) ? params[key].get<double>() : fallback;
        };
        try {
            if (kind == "harmonic") return harmonic_system(mass, param("k", 1.0));
            if (kind == "pendulum") return pendulum_system(mass, param("g", 1.0));
            if (kind == "quartic") return quartic_system(mass, param("a", 1.0));
        } catch (const std::invalid_argument& e) {
            throw FormatError(path + ": " + e.what());
        }
        throw FormatError(path + ": unknown potential kind \"" + kind + "\"");
    }
    throw FormatError(path + ": system needs \"quadratic\" or \"potential\"");
}

ordered_json matrix_to_json(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& rows) { return parse_rows(rows, "matrix"); }

void write_json_file(const std::string& path, const ordered_json& doc) {
    std::ofstream out(path);
    if (!out) throw FormatError(path + ": cannot open file for writing");
    out << doc.dump(2) << "\n";
}

}  // namespace sympkit::io
