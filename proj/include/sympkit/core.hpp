#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace sympkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Combined absolute/relative comparison tolerance. The default (1e-9 both)
/// is the library-wide notion of "numerically equal"; callers may tighten
/// or loosen it per call.
struct Tolerance {
    double abs = 1e-9;
    double rel = 1e-9;
};

inline bool approx_equal(double a, double b, Tolerance tol = {}) {
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol.abs + tol.rel * scale;
}

/// Phase-space point z = (x_1..x_n; p_1..p_n), positions first.
class PhaseVector {
public:
    explicit PhaseVector(Vector coords);
    static PhaseVector from_parts(const Vector& positions, const Vector& momenta);

    int dofs() const { return n_; }
    const Vector& coords() const { return z_; }
    Vector positions() const { return z_.head(n_); }
    Vector momenta() const { return z_.tail(n_); }

private:
    Vector z_;
    int n_;
};

/// A 2D subspace through the origin, spanned by u and v.
/// `normalized` marks frames known to be orthonormal.
struct PlaneSpec {
    Vector u;
    Vector v;
    bool normalized = false;
};

/// Conjugate coordinate plane span{e_j, e_{n+j}} for mode j (0-based).
PlaneSpec conjugate_plane(int j, int n);

/// The 2n x 2n block matrix (0, I; -I, 0). Entries are exact integers.
Matrix standard_symplectic_matrix(int n);

/// Sorted real spectrum of the Hermitian matrix re + i*im.
/// Requires re symmetric and im antisymmetric.
std::vector<double> hermitian_eigenvalues(const Matrix& re, const Matrix& im);

/// exp(m) by scaling-and-squaring with a Pade kernel.
Matrix matrix_exponential(const Matrix& m);

/// Gram-Schmidt frame spanning the same plane. Rejects near-parallel input
/// (sine of the angle between u and v below 1e-12).
PlaneSpec orthonormalize_plane(const PlaneSpec& p);

/// Throws std::invalid_argument unless m is square with finite entries.
void require_square_finite(const Matrix& m, const char* what);

}  // namespace sympkit
