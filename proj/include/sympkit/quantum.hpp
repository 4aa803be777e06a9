#pragma once

#include "sympkit/core.hpp"
#include "sympkit/ellipsoid.hpp"
#include "sympkit/symplectic.hpp"

#include <vector>

namespace sympkit {

/// Second-moment matrix in block form (Dxx, Dxp; Dpx, Dpp); symmetric with
/// nonnegative variances on the diagonal.
class CovarianceMatrix {
public:
    explicit CovarianceMatrix(Matrix sigma);

    const Matrix& sigma() const { return sigma_; }
    int dofs() const { return n_; }

    double var_x(int j) const { return sigma_(j, j); }
    double var_p(int j) const { return sigma_(n_ + j, n_ + j); }
    double cov_xp(int j) const { return sigma_(j, n_ + j); }

private:
    Matrix sigma_;
    int n_;
};

struct RsReport {
    std::vector<double> residuals;  // r_j = Dp_j^2 Dx_j^2 - D(x_j,p_j)^2 - hbar^2/4
    bool holds;
};

RsReport rs_check(const CovarianceMatrix& sigma, double hbar, double tol = 1e-9);

struct QuantumConditionReport {
    double min_eigenvalue;  // of the Hermitian matrix Sigma + i hbar/2 J
    bool valid;
};

QuantumConditionReport quantum_condition(const CovarianceMatrix& sigma, double hbar,
                                         double tol = 1e-9);

struct MinorReport {
    std::vector<double> minors;  // order-2 conjugate minors of Sigma + i hbar/2 J (real valued)
    bool nonnegative;
};

/// Each minor equals the matching rs_check residual identically.
MinorReport minor_check(const CovarianceMatrix& sigma, double hbar, double tol = 1e-9);

/// Raised for singular covariance matrices; carries a null direction.
struct SingularCovariance : std::invalid_argument {
    SingularCovariance(std::string msg, Vector direction)
        : std::invalid_argument(std::move(msg)), null_direction(std::move(direction)) {}
    Vector null_direction;
};

/// The set 1/2 z^T Sigma^{-1} z <= 1, realized as shape E = 2 Sigma, R = 1.
CenteredEllipsoid covariance_ellipsoid(const CovarianceMatrix& sigma);

/// Positive halves of the ±i lambda_j eigenvalue pairs of J Sigma, ascending.
std::vector<double> symplectic_spectrum(const CovarianceMatrix& sigma);

struct BlobReport {
    bool blob;  // all symplectic eigenvalues equal hbar/2 within tol
    std::vector<double> spectrum;
};

BlobReport is_quantum_blob(const CovarianceMatrix& sigma, double hbar, double tol = 1e-9);

/// Per-mode saturation of the Robertson-Schrodinger bound, alongside the
/// blob verdict. The two notions need not agree; `notions_agree` records
/// whether they do for this matrix rather than assuming it.
struct SaturationReport {
    std::vector<double> residuals;
    std::vector<bool> mode_saturated;   // |r_j| <= tol scale
    bool all_modes_saturated;
    bool blob;
    bool fully_saturated;               // all modes saturated AND blob
    bool notions_agree;                 // blob == all_modes_saturated
};

SaturationReport saturation_report(const CovarianceMatrix& sigma, double hbar, double tol = 1e-9);

CovarianceMatrix transform_covariance(const SymplecticMatrix& s, const CovarianceMatrix& sigma);

/// Everything the uncertainty CLI prints; verdicts are derived from the
/// stored residuals and the tolerance, never recomputed elsewhere.
struct UncertaintyReport {
    double hbar;
    double tol;
    std::vector<double> rs_residuals;
    std::vector<double> heisenberg_residuals;  // Dp_j Dx_j - hbar/2
    double min_eigenvalue;
    std::vector<double> section_areas;  // conjugate sections of the covariance ellipsoid
    std::vector<double> shadow_areas;   // conjugate shadows of the same ellipsoid
    std::vector<double> spectrum;
    bool quantum_valid;
    bool rs_all;
    std::vector<bool> saturated_modes;
    bool blob;
};

UncertaintyReport uncertainty_report(const CovarianceMatrix& sigma, double hbar, double tol = 1e-9);

}  // namespace sympkit
