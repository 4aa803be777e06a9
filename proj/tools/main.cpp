// sympkit: batch checks for symplectic matrices, phase-space ellipsoid
// sections, loop action integrals, Hamiltonian flows, and covariance-matrix
// uncertainty diagnostics. JSON in, text or JSON out.
//
// Exit codes: 0 checked property holds, 1 checked property fails,
//             2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include "sympkit/dynamics.hpp"
#include "sympkit/ellipsoid.hpp"
#include "sympkit/io.hpp"
#include "sympkit/loops.hpp"
#include "sympkit/quantum.hpp"
#include "sympkit/symplectic.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
using namespace sympkit;

constexpr double kPi = std::numbers::pi;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void emit(const ordered_json& doc, bool json_mode, const std::string& text) {
    if (json_mode)
        std::cout << doc.dump(2) << "\n";
    else
        std::cout << text;
}

std::string plane_label(int j) { return "x" + std::to_string(j + 1) + ",p" + std::to_string(j + 1); }

// ---------------------------------------------------------------------------

int cmd_check_symplectic(const std::string& path, double tol, bool json_mode) {
    const Matrix m = io::read_matrix_file(path);
    if (m.rows() % 2 != 0) throw io::FormatError(path + ": symplectic check needs an even-sized matrix");

    const auto check = is_symplectic(m, tol);
    const auto blocks = block_conditions_report(m);
    const double det = m.determinant();

    ordered_json doc;
    doc["command"] = "check-symplectic";
    doc["n"] = m.rows() / 2;
    doc["tol"] = tol;
    doc["residual"] = check.residual;
    doc["det"] = det;
    doc["block_conditions"] = {
        {"atc_symmetry", blocks.atc_symmetry},
        {"btd_symmetry", blocks.btd_symmetry},
        {"atd_ctb_identity", blocks.atd_ctb_identity},
        {"abt_symmetry", blocks.abt_symmetry},
        {"cdt_symmetry", blocks.cdt_symmetry},
        {"adt_bct_identity", blocks.adt_bct_identity},
    };
    doc["symplectic"] = check.symplectic;

    std::string text;
    text += "matrix: " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
            " (n=" + std::to_string(m.rows() / 2) + ")\n";
    text += "S^T J S - J residual: " + num(check.residual) + "\n";
    text += "det(S): " + num(det) + "\n";
    text += "block conditions:\n";
    text += "  A^T C symmetric:    " + num(blocks.atc_symmetry) + "\n";
    text += "  B^T D symmetric:    " + num(blocks.btd_symmetry) + "\n";
    text += "  A^T D - C^T B = I:  " + num(blocks.atd_ctb_identity) + "\n";
    text += "  A B^T symmetric:    " + num(blocks.abt_symmetry) + "\n";
    text += "  C D^T symmetric:    " + num(blocks.cdt_symmetry) + "\n";
    text += "  A D^T - B C^T = I:  " + num(blocks.adt_bct_identity) + "\n";
    text += std::string("verdict: ") + (check.symplectic ? "symplectic" : "not symplectic") + "\n";

    emit(doc, json_mode, text);
    return check.symplectic ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_egg_sections(const std::string& path, double radius, const std::string& planes,
                     const std::vector<std::string>& mixed, bool allow_nonsymplectic, double tol,
                     bool json_mode) {
    const Matrix m = io::read_matrix_file(path);
    if (m.rows() % 2 != 0) throw io::FormatError(path + ": egg needs an even-sized matrix");
    const int n = static_cast<int>(m.rows()) / 2;

    const auto check = is_symplectic(m, tol);
    if (!check.symplectic && !allow_nonsymplectic) {
        std::cerr << "input matrix is not symplectic (residual " << num(check.residual)
                  << "); pass --allow-nonsymplectic to proceed\n";
        return 1;
    }
    const CenteredEllipsoid e(m * m.transpose(), radius);

    struct Row {
        std::string label;
        double section, shadow;
    };
    std::vector<Row> rows;

    auto add_conjugate = [&](int j) {
        const PlaneSpec p = conjugate_plane(j, n);
        rows.push_back({plane_label(j), section_area(e, p).area, shadow_area(e, p).area});
    };
    if (planes == "all") {
        for (int j = 0; j < n; ++j) add_conjugate(j);
    } else {
        const int j = std::stoi(planes);
        if (j < 1 || j > n) throw io::FormatError("plane index out of range: " + planes);
        add_conjugate(j - 1);
    }
    for (const std::string& pair : mixed) {
        const auto comma = pair.find(',');
        if (comma == std::string::npos) throw io::FormatError("bad --mixed spec: " + pair);
        const int i = std::stoi(pair.substr(0, comma));
        const int k = std::stoi(pair.substr(comma + 1));
        if (i < 1 || i > 2 * n || k < 1 || k > 2 * n || i == k)
            throw io::FormatError("bad --mixed coordinate indices: " + pair);
        Vector u = Vector::Zero(2 * n), v = Vector::Zero(2 * n);
        u(i - 1) = 1.0;
        v(k - 1) = 1.0;
        const PlaneSpec p{u, v, true};
        auto axis = [n](int c) {
            return c <= n ? "x" + std::to_string(c) : "p" + std::to_string(c - n);
        };
        rows.push_back({axis(i) + "," + axis(k), section_area(e, p).area, shadow_area(e, p).area});
    }

    const double reference = kPi * radius * radius;
    ordered_json doc;
    doc["command"] = "egg-sections";
    doc["n"] = n;
    doc["radius"] = radius;
    doc["symplectic_residual"] = check.residual;
    doc["symplectic"] = check.symplectic;
    doc["reference_area"] = reference;
    doc["planes"] = ordered_json::array();
    std::string text;
    text += "egg radius: " + num(radius) + "  (pi R^2 = " + num(reference) + ")\n";
    text += "plane        section            shadow             section - pi R^2\n";
    for (const Row& r : rows) {
        doc["planes"].push_back({{"plane", r.label},
                                 {"section", r.section},
                                 {"shadow", r.shadow},
                                 {"deviation", r.section - reference}});
        char line[160];
        std::snprintf(line, sizeof(line), "%-12s %-18s %-18s %s\n", r.label.c_str(),
                      num(r.section).c_str(), num(r.shadow).c_str(),
                      num(r.section - reference).c_str());
        text += line;
    }
    emit(doc, json_mode, text);
    return 0;
}

// ---------------------------------------------------------------------------

int cmd_poincare(const std::string& loop_path, const std::string& matrix_path, int n_samples,
                 double tol, bool json_mode) {
    const Loop loop = io::read_loop_file(loop_path);
    const double invariant = poincare_invariant(loop, n_samples);

    ordered_json doc;
    doc["command"] = "poincare";
    doc["n"] = loop.dofs();
    doc["samples"] = loop.is_sampled() ? loop.sample_count() : n_samples;
    doc["invariant"] = invariant;
    std::string text = "I(gamma) = " + num(invariant) + "\n";

    int code = 0;
    if (!matrix_path.empty()) {
        const Matrix m = io::read_matrix_file(matrix_path);
        const Loop mapped = apply_linear(m, loop);
        const double mapped_invariant = poincare_invariant(mapped, n_samples);
        const double diff = std::abs(mapped_invariant - invariant);
        const bool invariant_ok = diff <= tol * (1.0 + std::abs(invariant));
        doc["matrix_symplectic_residual"] = is_symplectic(m, tol).residual;
        doc["mapped_invariant"] = mapped_invariant;
        doc["difference"] = diff;
        doc["invariant_preserved"] = invariant_ok;
        text += "I(M gamma) = " + num(mapped_invariant) + "\n";
        text += "|difference| = " + num(diff) + "\n";
        text += std::string("verdict: ") + (invariant_ok ? "invariant" : "not invariant") + "\n";
        code = invariant_ok ? 0 : 1;
    }
    emit(doc, json_mode, text);
    return code;
}

// ---------------------------------------------------------------------------

int cmd_flow(const std::string& system_path, double t, double dt, double x0, double p0,
             double ball, int plane, const std::vector<double>& times, double tol,
             bool json_mode) {
    const io::SystemSpec spec = io::read_system_file(system_path);

    ordered_json doc;
    doc["command"] = "flow";
    std::string text;
    int code = 0;

    if (std::holds_alternative<QuadraticHamiltonian>(spec)) {
        const auto& h = std::get<QuadraticHamiltonian>(spec);
        const SymplecticMatrix phi = linear_flow(h, t);
        const double residual = phi.residual();

        doc["system"] = "quadratic";
        doc["n"] = h.dofs();
        doc["t"] = t;
        doc["flow_matrix"] = io::matrix_to_json(phi.matrix());
        doc["symplectic_residual"] = residual;
        text += "system: quadratic (n=" + std::to_string(h.dofs()) + ")\n";
        text += "t = " + num(t) + "\n";
        text += "symplectic residual of flow matrix: " + num(residual) + "\n";

        Vector z0(2 * h.dofs());
        if (2 * h.dofs() == 2) {
            z0 << x0, p0;
            const Vector zt = phi.matrix() * z0;
            doc["initial_state"] = {z0(0), z0(1)};
            doc["final_state"] = {zt(0), zt(1)};
            text += "initial state: (" + num(z0(0)) + ", " + num(z0(1)) + ")\n";
            text += "final state:   (" + num(zt(0)) + ", " + num(zt(1)) + ")\n";
        }

        if (ball > 0.0 && !times.empty()) {
            const auto history = shadow_history(h, ball, times, plane - 1);
            doc["ball_radius"] = ball;
            doc["plane"] = plane_label(plane - 1);
            doc["shadow_history"] = ordered_json::array();
            const double reference = kPi * ball * ball;
            text += "shadow history on " + plane_label(plane - 1) +
                    " (pi R^2 = " + num(reference) + "):\n";
            bool squeezed = false;
            for (const auto& [when, area] : history) {
                doc["shadow_history"].push_back({{"t", when}, {"area", area}});
                text += "  t = " + num(when) + "  area = " + num(area) + "\n";
                if (area < reference * (1.0 - 1e-9)) squeezed = true;
            }
            doc["shadow_nonsqueezing"] = !squeezed;
            text += std::string("shadow non-squeezing: ") + (squeezed ? "violated" : "holds") + "\n";
            if (squeezed) code = 1;
        }
        if (residual > tol) code = 1;
        doc["verdict"] = code == 0 ? "ok" : "fail";
        text += std::string("verdict: ") + (code == 0 ? "ok" : "fail") + "\n";
    } else {
        const auto& sys = std::get<ScalarPotentialSystem>(spec);
        Vector z0(2);
        z0 << x0, p0;
        try {
            const auto trajectory = integrate_flow(sys, z0, t, dt);
            const FlowMap& last = trajectory.back();
            const double residual = is_symplectic(last.jacobian, tol).residual;
            const double drift = std::abs(sys.energy(last.state) - sys.energy(z0));

            doc["system"] = "potential";
            doc["t"] = last.t;
            doc["dt"] = dt;
            doc["steps"] = trajectory.size() - 1;
            doc["initial_state"] = {z0(0), z0(1)};
            doc["final_state"] = {last.state(0), last.state(1)};
            doc["jacobian"] = io::matrix_to_json(last.jacobian);
            doc["energy_drift"] = drift;
            doc["jacobian_symplectic_residual"] = residual;
            code = residual <= tol ? 0 : 1;
            doc["verdict"] = code == 0 ? "ok" : "fail";

            text += "system: potential (m=" + num(sys.mass()) + ")\n";
            text += "t = " + num(last.t) + ", dt = " + num(dt) +
                    ", steps = " + std::to_string(trajectory.size() - 1) + "\n";
            text += "initial state: (" + num(z0(0)) + ", " + num(z0(1)) + ")\n";
            text += "final state:   (" + num(last.state(0)) + ", " + num(last.state(1)) + ")\n";
            text += "energy drift: " + num(drift) + "\n";
            text += "jacobian symplectic residual: " + num(residual) + "\n";
            text += std::string("verdict: ") + (code == 0 ? "ok" : "fail") + "\n";
        } catch (const FlowDivergence& e) {
            std::cerr << "trajectory diverged at t = " << num(e.time) << "\n";
            return 1;
        }
    }
    emit(doc, json_mode, text);
    return code;
}

// ---------------------------------------------------------------------------

int cmd_uncertainty(const std::string& path, double hbar_flag, double tol, bool json_mode) {
    const io::CovarianceFile file = io::read_covariance_file(path);
    const double hbar = file.hbar.value_or(hbar_flag);

    CovarianceMatrix sigma = [&] {
        try {
            return CovarianceMatrix(file.sigma);
        } catch (const std::invalid_argument& e) {
            throw io::FormatError(path + ": " + e.what());
        }
    }();

    const UncertaintyReport report = uncertainty_report(sigma, hbar, tol);
    const bool valid = report.quantum_valid;

    ordered_json doc;
    doc["command"] = "uncertainty";
    doc["n"] = sigma.dofs();
    doc["hbar"] = hbar;
    doc["tol"] = tol;
    doc["rs_residuals"] = report.rs_residuals;
    doc["heisenberg_residuals"] = report.heisenberg_residuals;
    doc["min_eigenvalue"] = report.min_eigenvalue;
    doc["symplectic_spectrum"] = report.spectrum;
    doc["section_areas"] = report.section_areas;
    doc["shadow_areas"] = report.shadow_areas;
    doc["saturated_modes"] = report.saturated_modes;
    doc["quantum_valid"] = report.quantum_valid;
    doc["rs_all"] = report.rs_all;
    doc["blob"] = report.blob;

    std::string text;
    text += "covariance: " + std::to_string(2 * sigma.dofs()) + "x" +
            std::to_string(2 * sigma.dofs()) + " (n=" + std::to_string(sigma.dofs()) +
            "), hbar = " + num(hbar) + "\n";
    text += "mode  RS residual        heisenberg         saturated\n";
    for (int j = 0; j < sigma.dofs(); ++j) {
        char line[160];
        std::snprintf(line, sizeof(line), "%-5d %-18s %-18s %s\n", j + 1,
                      num(report.rs_residuals[j]).c_str(),
                      num(report.heisenberg_residuals[j]).c_str(),
                      report.saturated_modes[j] ? "yes" : "no");
        text += line;
    }
    text += "min eigenvalue of Sigma + i hbar/2 J: " + num(report.min_eigenvalue) + "\n";
    text += "symplectic spectrum:";
    for (double v : report.spectrum) text += " " + num(v);
    text += "\nconjugate section areas:";
    for (double v : report.section_areas) text += " " + num(v);
    text += "\nconjugate shadow areas:";
    for (double v : report.shadow_areas) text += " " + num(v);
    text += "\nquantum blob: " + std::string(report.blob ? "yes" : "no") + "\n";
    text += std::string("verdict: ") + (valid ? "quantum-valid" : "invalid") + "\n";

    emit(doc, json_mode, text);
    return valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sympkit: numerical checks in linear symplectic phase-space geometry"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags (--format, --tol) may follow the subcommand

    std::string format = "text";
    app.add_option("--format", format, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    double tol = 1e-9;
    app.add_option("--tol", tol, "Comparison tolerance")->capture_default_str();

    // check-symplectic
    auto* check = app.add_subcommand("check-symplectic", "Test S^T J S = J and block conditions");
    std::string check_matrix;
    check->add_option("matrix", check_matrix, "Matrix JSON file")->required();

    // egg-sections
    auto* sections = app.add_subcommand("egg-sections", "Section and shadow areas of S(B_R)");
    std::string egg_matrix, planes = "all";
    std::vector<std::string> mixed;
    double radius = 1.0;
    bool allow_nonsymplectic = false;
    sections->add_option("matrix", egg_matrix, "Matrix JSON file")->required();
    sections->add_option("--radius", radius, "Ball radius R")->capture_default_str();
    sections->add_option("--planes", planes, "Conjugate planes: 'all' or a 1-based mode index")
        ->capture_default_str();
    sections->add_option("--mixed", mixed,
                         "Extra coordinate plane 'i,k' (1-based, x1..xn then p1..pn)");
    sections->add_flag("--allow-nonsymplectic", allow_nonsymplectic,
                       "Proceed even if the matrix fails the symplectic test");

    // poincare
    auto* poincare = app.add_subcommand("poincare", "First Poincare invariant of a loop");
    std::string loop_path, map_path;
    int n_samples = 1024;
    poincare->add_option("loop", loop_path, "Loop JSON file")->required();
    poincare->add_option("--matrix", map_path, "Also report the invariant of the mapped loop");
    poincare->add_option("--samples", n_samples, "Quadrature sample count for callable loops")
        ->capture_default_str();

    // flow
    auto* flow = app.add_subcommand("flow", "Evolve a Hamiltonian system");
    std::string system_path;
    double t_final = 1.0, dt = 1e-3, x0 = 1.0, p0 = 0.0, ball = 0.0;
    int plane = 1;
    std::vector<double> times;
    flow->add_option("system", system_path, "System JSON file")->required();
    flow->add_option("--t", t_final, "Final time")->capture_default_str();
    flow->add_option("--dt", dt, "Step size (potential systems)")->capture_default_str();
    flow->add_option("--x0", x0, "Initial position")->capture_default_str();
    flow->add_option("--p0", p0, "Initial momentum")->capture_default_str();
    flow->add_option("--ball", ball, "Track shadow areas of the evolved ball of this radius");
    flow->add_option("--plane", plane, "Conjugate plane (1-based) for --ball")->capture_default_str();
    flow->add_option("--times", times, "Times at which to sample the shadow");

    // uncertainty
    auto* uncertainty = app.add_subcommand("uncertainty", "Covariance-matrix quantum diagnostics");
    std::string cov_path;
    double hbar = 1.0;
    uncertainty->add_option("covariance", cov_path, "Covariance JSON file")->required();
    uncertainty->add_option("--hbar", hbar, "Planck constant over 2 pi")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        const bool json_mode = format == "json";
        if (check->parsed()) return cmd_check_symplectic(check_matrix, tol, json_mode);
        if (sections->parsed())
            return cmd_egg_sections(egg_matrix, radius, planes, mixed, allow_nonsymplectic, tol,
                                    json_mode);
        if (poincare->parsed()) return cmd_poincare(loop_path, map_path, n_samples, tol, json_mode);
        if (flow->parsed())
            return cmd_flow(system_path, t_final, dt, x0, p0, ball, plane, times, tol, json_mode);
        if (uncertainty->parsed()) return cmd_uncertainty(cov_path, hbar, tol, json_mode);
    } catch (const sympkit::io::FormatError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
