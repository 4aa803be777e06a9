#pragma once

#include "sympkit/core.hpp"

#include <cstdint>

namespace sympkit {

/// Verdict plus the measured residual, so callers can assert quantitative
/// decay instead of a bare boolean.
struct SymplecticCheck {
    bool symplectic;
    double residual;  // max-norm of M^T J M - J
};

/// True iff ||M^T J M - J||_inf <= tol. Rejects odd-sized matrices.
SymplecticCheck is_symplectic(const Matrix& m, double tol = 1e-9);

/// n x n blocks (A, B; C, D) of a 2n x 2n matrix.
struct BlockDecomposition {
    Matrix a, b, c, d;

    static BlockDecomposition split(const Matrix& m);
    Matrix assemble() const;
};

/// Residuals of the six block conditions equivalent to S^T J S = J:
/// three from the row form (A^T C, B^T D symmetric, A^T D - C^T B = I)
/// and three from the column form (A B^T, C D^T symmetric, A D^T - B C^T = I).
struct BlockConditionsReport {
    double atc_symmetry;
    double btd_symmetry;
    double atd_ctb_identity;
    double abt_symmetry;
    double cdt_symmetry;
    double adt_bct_identity;

    double max_residual() const;
    bool symplectic(double tol = 1e-9) const { return max_residual() <= tol; }
};

BlockConditionsReport block_conditions_report(const Matrix& m);

/// A matrix validated to satisfy S^T J S = J (and det S = 1) within
/// `validation_tol`; the tolerance travels with the value so downstream
/// consumers share one notion of "symplectic enough".
class SymplecticMatrix {
public:
    explicit SymplecticMatrix(Matrix m, double validation_tol = 1e-9);

    const Matrix& matrix() const { return s_; }
    int dofs() const { return n_; }
    double validation_tol() const { return tol_; }
    double residual() const { return residual_; }

private:
    Matrix s_;
    int n_;
    double tol_;
    double residual_;
};

/// Block inverse (D^T, -B^T; -C^T, A^T); no linear solve involved.
SymplecticMatrix symplectic_inverse(const SymplecticMatrix& s);

SymplecticMatrix compose(const SymplecticMatrix& s1, const SymplecticMatrix& s2);

/// exp(J M) for a symmetric M with entries uniform in [-spread, spread],
/// drawn from a seeded generator. Deterministic for a fixed seed.
SymplecticMatrix random_symplectic(int n, std::uint64_t seed, double spread);

/// True iff the symplectic form restricts nondegenerately to the plane,
/// i.e. u^T J v != 0 for a normalized frame. Rejects dependent spans.
bool is_symplectic_plane(const PlaneSpec& p, int n, double tol = 1e-9);

}  // namespace sympkit
