#include "sympkit/core.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace sympkit {

PhaseVector::PhaseVector(Vector coords) : z_(std::move(coords)) {
    if (z_.size() < 2 || z_.size() % 2 != 0)
        throw std::invalid_argument("PhaseVector: length must be 2n with n >= 1");
    if (!z_.allFinite())
        throw std::invalid_argument("PhaseVector: entries must be finite");
    n_ = static_cast<int>(z_.size()) / 2;
}

PhaseVector PhaseVector::from_parts(const Vector& positions, const Vector& momenta) {
    if (positions.size() != momenta.size())
        throw std::invalid_argument("PhaseVector: position/momentum size mismatch");
    Vector z(2 * positions.size());
    z << positions, momenta;
    return PhaseVector(std::move(z));
}

PlaneSpec conjugate_plane(int j, int n) {
    if (n < 1 || j < 0 || j >= n)
        throw std::invalid_argument("conjugate_plane: mode index out of range");
    Vector u = Vector::Zero(2 * n);
    Vector v = Vector::Zero(2 * n);
    u(j) = 1.0;
    v(n + j) = 1.0;
    return PlaneSpec{u, v, true};
}

Matrix standard_symplectic_matrix(int n) {
    if (n < 1) throw std::invalid_argument("standard_symplectic_matrix: n must be >= 1");
    Matrix j = Matrix::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = Matrix::Identity(n, n);
    j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
    return j;
}

std::vector<double> hermitian_eigenvalues(const Matrix& re, const Matrix& im) {
    require_square_finite(re, "hermitian_eigenvalues: real part");
    require_square_finite(im, "hermitian_eigenvalues: imaginary part");
    if (re.rows() != im.rows())
        throw std::invalid_argument("hermitian_eigenvalues: size mismatch");
    const double scale = std::max(1.0, std::max(re.cwiseAbs().maxCoeff(), im.cwiseAbs().maxCoeff()));
    if ((re - re.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("hermitian_eigenvalues: real part not symmetric");
    if ((im + im.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("hermitian_eigenvalues: imaginary part not antisymmetric");

    Eigen::MatrixXcd h = re.cast<std::complex<double>>();
    h += std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");

    const auto& ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

Matrix matrix_exponential(const Matrix& m) {
    require_square_finite(m, "matrix_exponential");
    Matrix e = m.exp();
    if (!e.allFinite())
        throw std::runtime_error("matrix_exponential: overflow in exp");
    return e;
}

PlaneSpec orthonormalize_plane(const PlaneSpec& p) {
    if (p.u.size() != p.v.size() || p.u.size() < 2)
        throw std::invalid_argument("orthonormalize_plane: bad spanning vectors");
    const double nu = p.u.norm();
    const double nv = p.v.norm();
    if (nu == 0.0 || nv == 0.0)
        throw std::invalid_argument("orthonormalize_plane: zero spanning vector");

    Vector u = p.u / nu;
    Vector w = p.v - (u.dot(p.v)) * u;
    // |w| / |v| is the sine of the angle between the spanning vectors
    if (w.norm() < 1e-12 * nv)
        throw std::invalid_argument("orthonormalize_plane: spanning vectors nearly parallel");
    return PlaneSpec{u, w.normalized(), true};
}

void require_square_finite(const Matrix& m, const char* what) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw std::invalid_argument(std::string(what) + ": matrix must be square and nonempty");
    if (!m.allFinite())
        throw std::invalid_argument(std::string(what) + ": matrix entries must be finite");
}

}  // namespace sympkit
