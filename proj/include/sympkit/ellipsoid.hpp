#pragma once

#include "sympkit/core.hpp"
#include "sympkit/symplectic.hpp"

#include <vector>

namespace sympkit {

/// The set {z : z^T E^{-1} z <= R^2} for a symmetric positive definite
/// shape matrix E. A symplectic egg is the case E = S S^T.
class CenteredEllipsoid {
public:
    CenteredEllipsoid(Matrix shape, double radius);

    const Matrix& shape() const { return e_; }
    double radius() const { return r_; }
    int dofs() const { return n_; }

    bool contains(const Vector& z) const;

    /// E^{-1} z via Cholesky solve; shared by the section machinery.
    Vector solve_shape(const Vector& z) const;

private:
    Matrix e_;
    Eigen::LLT<Matrix> llt_;
    double r_;
    int n_;
};

enum class SectionKind { section, shadow };

struct SectionResult {
    PlaneSpec plane;
    double area;
    SectionKind kind;
};

/// The image S(B_R) of the centered radius-R ball: shape S S^T.
CenteredEllipsoid egg(const SymplecticMatrix& s, double radius);

/// Euclidean area of the central planar slice e ∩ span{p}:
/// pi R^2 / sqrt(det Q), with Q the 2x2 restriction of E^{-1} to an
/// orthonormal frame of the plane.
SectionResult section_area(const CenteredEllipsoid& e, const PlaneSpec& p);

/// One section per conjugate plane x_j, p_j.
std::vector<SectionResult> conjugate_section_areas(const CenteredEllipsoid& e);

/// Euclidean area of the orthogonal projection onto the plane:
/// pi R^2 sqrt(det(G^T E G)) for an orthonormal frame G.
SectionResult shadow_area(const CenteredEllipsoid& e, const PlaneSpec& p);

struct SqueezeReport {
    bool passable;
    double section;  // slice area at the requested conjugate plane
    double hole;     // pi r^2
};

/// Can the ellipsoid be threaded through a circular hole of radius
/// `hole_radius` in conjugate plane j? Passable iff the slice fits the hole.
SqueezeReport squeeze_check(const CenteredEllipsoid& e, double hole_radius, int plane_index);

}  // namespace sympkit
