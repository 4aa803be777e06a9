#include "sympkit/ellipsoid.hpp"

#include <cmath>
#include <numbers>

namespace sympkit {

namespace {

constexpr double kPi = std::numbers::pi;

// Orthonormal 2n x 2 frame of the plane, validated against the ellipsoid.
Matrix plane_frame(const CenteredEllipsoid& e, const PlaneSpec& p) {
    if (p.u.size() != 2 * e.dofs() || p.v.size() != 2 * e.dofs())
        throw std::invalid_argument("plane/ellipsoid dimension mismatch");
    const PlaneSpec frame = p.normalized ? p : orthonormalize_plane(p);
    Matrix g(2 * e.dofs(), 2);
    g.col(0) = frame.u;
    g.col(1) = frame.v;
    return g;
}

}  // namespace

CenteredEllipsoid::CenteredEllipsoid(Matrix shape, double radius)
    : e_(std::move(shape)), r_(radius) {
    require_square_finite(e_, "CenteredEllipsoid");
    if (e_.rows() % 2 != 0)
        throw std::invalid_argument("CenteredEllipsoid: phase-space dimension must be even");
    if (!(r_ > 0.0))
        throw std::invalid_argument("CenteredEllipsoid: radius must be positive");
    const double scale = std::max(1.0, e_.cwiseAbs().maxCoeff());
    if ((e_ - e_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("CenteredEllipsoid: shape matrix not symmetric");
    e_ = 0.5 * (e_ + e_.transpose());

    llt_.compute(e_);
    if (llt_.info() != Eigen::Success)
        throw std::invalid_argument("CenteredEllipsoid: shape matrix not positive definite");
    n_ = static_cast<int>(e_.rows()) / 2;
}

bool CenteredEllipsoid::contains(const Vector& z) const {
    if (z.size() != e_.rows())
        throw std::invalid_argument("CenteredEllipsoid::contains: dimension mismatch");
    return z.dot(llt_.solve(z)) <= r_ * r_;
}

Vector CenteredEllipsoid::solve_shape(const Vector& z) const { return llt_.solve(z); }

CenteredEllipsoid egg(const SymplecticMatrix& s, double radius) {
    return CenteredEllipsoid(s.matrix() * s.matrix().transpose(), radius);
}

SectionResult section_area(const CenteredEllipsoid& e, const PlaneSpec& p) {
    const Matrix g = plane_frame(e, p);
    Eigen::Matrix2d q;
    const Vector su = e.solve_shape(g.col(0));
    const Vector sv = e.solve_shape(g.col(1));
    q << g.col(0).dot(su), g.col(0).dot(sv), g.col(1).dot(su), g.col(1).dot(sv);
    const double det = q.determinant();
    if (!(det > 0.0))
        throw std::invalid_argument("section_area: degenerate plane restriction");
    const double r = e.radius();
    return SectionResult{PlaneSpec{g.col(0), g.col(1), true}, kPi * r * r / std::sqrt(det),
                         SectionKind::section};
}

std::vector<SectionResult> conjugate_section_areas(const CenteredEllipsoid& e) {
    std::vector<SectionResult> out;
    out.reserve(e.dofs());
    for (int j = 0; j < e.dofs(); ++j)
        out.push_back(section_area(e, conjugate_plane(j, e.dofs())));
    return out;
}

SectionResult shadow_area(const CenteredEllipsoid& e, const PlaneSpec& p) {
    const Matrix g = plane_frame(e, p);
    const Eigen::Matrix2d q = g.transpose() * e.shape() * g;
    const double det = q.determinant();
    if (!(det > 0.0))
        throw std::invalid_argument("shadow_area: degenerate plane restriction");
    const double r = e.radius();
    return SectionResult{PlaneSpec{g.col(0), g.col(1), true}, kPi * r * r * std::sqrt(det),
                         SectionKind::shadow};
}

SqueezeReport squeeze_check(const CenteredEllipsoid& e, double hole_radius, int plane_index) {
    if (!(hole_radius > 0.0))
        throw std::invalid_argument("squeeze_check: hole radius must be positive");
    const double section = section_area(e, conjugate_plane(plane_index, e.dofs())).area;
    const double hole = kPi * hole_radius * hole_radius;
    // boundary case (equal areas) counts as passable
    const bool passable = section <= hole * (1.0 + 1e-12);
    return SqueezeReport{passable, section, hole};
}

}  // namespace sympkit
