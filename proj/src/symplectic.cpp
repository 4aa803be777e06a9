#include "sympkit/symplectic.hpp"

#include <cmath>
#include <random>

namespace sympkit {

namespace {

void require_even_square(const Matrix& m, const char* what) {
    require_square_finite(m, what);
    if (m.rows() % 2 != 0)
        throw std::invalid_argument(std::string(what) + ": symplectic matrices have even size");
}

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

}  // namespace

SymplecticCheck is_symplectic(const Matrix& m, double tol) {
    require_even_square(m, "is_symplectic");
    const int n = static_cast<int>(m.rows()) / 2;
    const Matrix j = standard_symplectic_matrix(n);
    const double residual = (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
    return SymplecticCheck{residual <= tol, residual};
}

BlockDecomposition BlockDecomposition::split(const Matrix& m) {
    require_even_square(m, "BlockDecomposition");
    const int n = static_cast<int>(m.rows()) / 2;
    return BlockDecomposition{m.topLeftCorner(n, n), m.topRightCorner(n, n),
                              m.bottomLeftCorner(n, n), m.bottomRightCorner(n, n)};
}

Matrix BlockDecomposition::assemble() const {
    const int n = static_cast<int>(a.rows());
    Matrix m(2 * n, 2 * n);
    m.topLeftCorner(n, n) = a;
    m.topRightCorner(n, n) = b;
    m.bottomLeftCorner(n, n) = c;
    m.bottomRightCorner(n, n) = d;
    return m;
}

double BlockConditionsReport::max_residual() const {
    return std::max({atc_symmetry, btd_symmetry, atd_ctb_identity,
                     abt_symmetry, cdt_symmetry, adt_bct_identity});
}

BlockConditionsReport block_conditions_report(const Matrix& m) {
    const auto [a, b, c, d] = BlockDecomposition::split(m);
    const int n = static_cast<int>(a.rows());
    const Matrix id = Matrix::Identity(n, n);

    auto asym = [](const Matrix& x) { return (x - x.transpose()).cwiseAbs().maxCoeff(); };
    return BlockConditionsReport{
        asym(a.transpose() * c),
        asym(b.transpose() * d),
        (a.transpose() * d - c.transpose() * b - id).cwiseAbs().maxCoeff(),
        asym(a * b.transpose()),
        asym(c * d.transpose()),
        (a * d.transpose() - b * c.transpose() - id).cwiseAbs().maxCoeff(),
    };
}

SymplecticMatrix::SymplecticMatrix(Matrix m, double validation_tol)
    : s_(std::move(m)), tol_(validation_tol) {
    const auto check = is_symplectic(s_, tol_);
    residual_ = check.residual;
    if (!check.symplectic)
        throw std::invalid_argument("SymplecticMatrix: S^T J S = J violated, residual " +
                                    short_num(check.residual) + " > tol " + short_num(tol_));
    n_ = static_cast<int>(s_.rows()) / 2;
    const double det = s_.determinant();
    if (std::abs(det - 1.0) > std::max(tol_, 1e-6 * std::abs(det)))
        throw std::invalid_argument("SymplecticMatrix: determinant " + short_num(det) +
                                    " is not 1");
}

SymplecticMatrix symplectic_inverse(const SymplecticMatrix& s) {
    const auto [a, b, c, d] = BlockDecomposition::split(s.matrix());
    Matrix inv = BlockDecomposition{d.transpose(), -b.transpose(),
                                    -c.transpose(), a.transpose()}
                     .assemble();
    return SymplecticMatrix(std::move(inv), s.validation_tol());
}

SymplecticMatrix compose(const SymplecticMatrix& s1, const SymplecticMatrix& s2) {
    if (s1.dofs() != s2.dofs())
        throw std::invalid_argument("compose: dimension mismatch");
    return SymplecticMatrix(s1.matrix() * s2.matrix(),
                            std::max(s1.validation_tol(), s2.validation_tol()));
}

SymplecticMatrix random_symplectic(int n, std::uint64_t seed, double spread) {
    if (n < 1) throw std::invalid_argument("random_symplectic: n must be >= 1");
    if (spread < 0.0) throw std::invalid_argument("random_symplectic: spread must be >= 0");

    // Portable uniform doubles in [-1, 1): top 53 bits of the engine output.
    std::mt19937_64 rng(seed);
    auto unit = [&rng]() {
        return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    };

    Matrix m(2 * n, 2 * n);
    for (int i = 0; i < 2 * n; ++i)
        for (int k = i; k < 2 * n; ++k) m(i, k) = m(k, i) = spread * unit();

    return SymplecticMatrix(matrix_exponential(standard_symplectic_matrix(n) * m));
}

bool is_symplectic_plane(const PlaneSpec& p, int n, double tol) {
    if (p.u.size() != 2 * n || p.v.size() != 2 * n)
        throw std::invalid_argument("is_symplectic_plane: vectors must have length 2n");
    const PlaneSpec frame = p.normalized ? p : orthonormalize_plane(p);
    const Matrix j = standard_symplectic_matrix(n);
    return std::abs(frame.u.dot(j * frame.v)) > tol;
}

}  // namespace sympkit
