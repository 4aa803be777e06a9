#include "sympkit/quantum.hpp"

#include <algorithm>
#include <cmath>

namespace sympkit {

CovarianceMatrix::CovarianceMatrix(Matrix sigma) : sigma_(std::move(sigma)) {
    require_square_finite(sigma_, "CovarianceMatrix");
    if (sigma_.rows() % 2 != 0)
        throw std::invalid_argument("CovarianceMatrix: size must be 2n");
    const double scale = std::max(1.0, sigma_.cwiseAbs().maxCoeff());
    if ((sigma_ - sigma_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("CovarianceMatrix: matrix must be symmetric");
    sigma_ = 0.5 * (sigma_ + sigma_.transpose());
    if (sigma_.diagonal().minCoeff() < 0.0)
        throw std::invalid_argument("CovarianceMatrix: variances must be nonnegative");
    n_ = static_cast<int>(sigma_.rows()) / 2;
}

RsReport rs_check(const CovarianceMatrix& sigma, double hbar, double tol) {
    if (!(hbar > 0.0)) throw std::invalid_argument("rs_check: hbar must be positive");
    RsReport out{{}, true};
    out.residuals.reserve(sigma.dofs());
    for (int j = 0; j < sigma.dofs(); ++j) {
        const double c = sigma.cov_xp(j);
        const double r = sigma.var_p(j) * sigma.var_x(j) - c * c - 0.25 * hbar * hbar;
        out.residuals.push_back(r);
        if (r < -tol) out.holds = false;
    }
    return out;
}

QuantumConditionReport quantum_condition(const CovarianceMatrix& sigma, double hbar, double tol) {
    if (!(hbar > 0.0)) throw std::invalid_argument("quantum_condition: hbar must be positive");
    const Matrix j = standard_symplectic_matrix(sigma.dofs());
    const auto eigs = hermitian_eigenvalues(sigma.sigma(), 0.5 * hbar * j);
    const double min_eig = eigs.front();
    return QuantumConditionReport{min_eig, min_eig >= -tol};
}

MinorReport minor_check(const CovarianceMatrix& sigma, double hbar, double tol) {
    if (!(hbar > 0.0)) throw std::invalid_argument("minor_check: hbar must be positive");
    MinorReport out{{}, true};
    out.minors.reserve(sigma.dofs());
    for (int j = 0; j < sigma.dofs(); ++j) {
        // det of (Dx^2, c + i hbar/2; c - i hbar/2, Dp^2), which is real
        const double c = sigma.cov_xp(j);
        const double minor = sigma.var_x(j) * sigma.var_p(j) - (c * c + 0.25 * hbar * hbar);
        out.minors.push_back(minor);
        if (minor < -tol) out.nonnegative = false;
    }
    return out;
}

CenteredEllipsoid covariance_ellipsoid(const CovarianceMatrix& sigma) {
    const Eigen::SelfAdjointEigenSolver<Matrix> es(sigma.sigma());
    const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    if (es.eigenvalues().minCoeff() <= 1e-12 * scale) {
        Eigen::Index which;
        es.eigenvalues().minCoeff(&which);
        throw SingularCovariance("covariance_ellipsoid: singular covariance matrix",
                                 es.eigenvectors().col(which));
    }
    return CenteredEllipsoid(2.0 * sigma.sigma(), 1.0);
}

std::vector<double> symplectic_spectrum(const CovarianceMatrix& sigma) {
    const Matrix j = standard_symplectic_matrix(sigma.dofs());
    const Eigen::EigenSolver<Matrix> es(j * sigma.sigma());
    if (es.info() != Eigen::Success)
        throw std::runtime_error("symplectic_spectrum: eigensolver failed");

    std::vector<double> spectrum;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double im = es.eigenvalues()(k).imag();
        if (im > 0.0) spectrum.push_back(im);
    }
    if (static_cast<int>(spectrum.size()) != sigma.dofs())
        throw std::runtime_error("symplectic_spectrum: eigenvalues did not pair as +-i lambda; "
                                 "matrix may be singular");
    std::sort(spectrum.begin(), spectrum.end());
    return spectrum;
}

BlobReport is_quantum_blob(const CovarianceMatrix& sigma, double hbar, double tol) {
    if (!(hbar > 0.0)) throw std::invalid_argument("is_quantum_blob: hbar must be positive");
    BlobReport out{true, symplectic_spectrum(sigma)};
    for (double lambda : out.spectrum)
        if (std::abs(lambda - 0.5 * hbar) > tol * std::max(1.0, 0.5 * hbar)) out.blob = false;
    return out;
}

SaturationReport saturation_report(const CovarianceMatrix& sigma, double hbar, double tol) {
    const RsReport rs = rs_check(sigma, hbar, tol);
    SaturationReport out;
    out.residuals = rs.residuals;
    out.all_modes_saturated = true;
    const double scale = tol * std::max(1.0, hbar * hbar);
    for (double r : rs.residuals) {
        const bool saturated = std::abs(r) <= scale;
        out.mode_saturated.push_back(saturated);
        if (!saturated) out.all_modes_saturated = false;
    }
    out.blob = is_quantum_blob(sigma, hbar, tol).blob;
    out.fully_saturated = out.all_modes_saturated && out.blob;
    out.notions_agree = out.blob == out.all_modes_saturated;
    return out;
}

CovarianceMatrix transform_covariance(const SymplecticMatrix& s, const CovarianceMatrix& sigma) {
    if (s.dofs() != sigma.dofs())
        throw std::invalid_argument("transform_covariance: dimension mismatch");
    return CovarianceMatrix(s.matrix() * sigma.sigma() * s.matrix().transpose());
}

UncertaintyReport uncertainty_report(const CovarianceMatrix& sigma, double hbar, double tol) {
    UncertaintyReport out;
    out.hbar = hbar;
    out.tol = tol;

    const RsReport rs = rs_check(sigma, hbar, tol);
    out.rs_residuals = rs.residuals;
    out.rs_all = rs.holds;
    for (int j = 0; j < sigma.dofs(); ++j)
        out.heisenberg_residuals.push_back(
            std::sqrt(sigma.var_p(j)) * std::sqrt(sigma.var_x(j)) - 0.5 * hbar);

    out.min_eigenvalue = quantum_condition(sigma, hbar, tol).min_eigenvalue;
    out.quantum_valid = out.min_eigenvalue >= -tol;

    const CenteredEllipsoid omega = covariance_ellipsoid(sigma);
    for (int j = 0; j < sigma.dofs(); ++j) {
        const PlaneSpec plane = conjugate_plane(j, sigma.dofs());
        out.section_areas.push_back(section_area(omega, plane).area);
        out.shadow_areas.push_back(shadow_area(omega, plane).area);
    }

    const SaturationReport sat = saturation_report(sigma, hbar, tol);
    out.saturated_modes = sat.mode_saturated;
    out.blob = sat.blob;
    out.spectrum = symplectic_spectrum(sigma);
    return out;
}

}  // namespace sympkit
