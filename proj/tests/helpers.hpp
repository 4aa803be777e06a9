#pragma once

// Shared test utilities: seeded random generators, random trigonometric
// loops, and Monte Carlo area oracles kept independent of the library's
// analytic section/shadow formulas.

#include "sympkit/core.hpp"
#include "sympkit/ellipsoid.hpp"
#include "sympkit/loops.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace sympkit::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
    }
    int integer(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

inline Matrix random_symmetric(int size, double spread, Rng& rng) {
    Matrix m(size, size);
    for (int i = 0; i < size; ++i)
        for (int k = i; k < size; ++k) m(i, k) = m(k, i) = rng.uniform(-spread, spread);
    return m;
}

/// Random trigonometric loop of Fourier degree <= degree, sampled on the
/// periodic grid.
inline Loop random_trig_loop(int n, int degree, int n_samples, Rng& rng) {
    std::vector<Vector> cos_c, sin_c;
    for (int m = 0; m <= degree; ++m) {
        Vector c(2 * n), s(2 * n);
        for (int i = 0; i < 2 * n; ++i) {
            c(i) = rng.uniform(-1.0, 1.0);
            s(i) = rng.uniform(-1.0, 1.0);
        }
        cos_c.push_back(c);
        sin_c.push_back(s);
    }
    Matrix samples(n_samples, 2 * n);
    for (int k = 0; k < n_samples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / n_samples;
        Vector z = Vector::Zero(2 * n);
        for (int m = 0; m <= degree; ++m)
            z += std::cos(m * t) * cos_c[m] + std::sin(m * t) * sin_c[m];
        samples.row(k) = z;
    }
    return Loop::from_periodic_samples(std::move(samples));
}

/// Hit-counting estimate of the central section area: samples the plane
/// inside a bounding box and tests ellipsoid membership directly.
inline double mc_section_area(const CenteredEllipsoid& e, const PlaneSpec& plane, int n_samples,
                              Rng& rng) {
    const PlaneSpec frame = orthonormalize_plane(plane);
    // bounding half-width: largest slice semi-axis
    Eigen::Matrix2d q;
    const Vector su = e.solve_shape(frame.u);
    const Vector sv = e.solve_shape(frame.v);
    q << frame.u.dot(su), frame.u.dot(sv), frame.v.dot(su), frame.v.dot(sv);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q);
    const double half = 1.001 * e.radius() / std::sqrt(es.eigenvalues().minCoeff());

    int hits = 0;
    for (int i = 0; i < n_samples; ++i) {
        const double a = rng.uniform(-half, half);
        const double b = rng.uniform(-half, half);
        if (e.contains(a * frame.u + b * frame.v)) ++hits;
    }
    return 4.0 * half * half * static_cast<double>(hits) / static_cast<double>(n_samples);
}

/// Convex hull area (monotone chain) of boundary samples projected onto the
/// plane; estimates the shadow area from points alone. Boundary sampling
/// keeps the silhouette rim well populated, which is where hull accuracy
/// comes from.
inline double mc_shadow_area(const CenteredEllipsoid& e, const PlaneSpec& plane, int n_samples,
                             Rng& rng) {
    const PlaneSpec frame = orthonormalize_plane(plane);
    const Eigen::LLT<Matrix> llt(e.shape());
    const Matrix chol = llt.matrixL();
    const auto dim = e.shape().rows();

    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        Vector g(dim);
        for (Eigen::Index k = 0; k < dim; ++k) {
            // Box-Muller from two uniforms
            const double u1 = std::max(rng.uniform(0.0, 1.0), 1e-300);
            const double u2 = rng.uniform(0.0, 1.0);
            g(k) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        }
        const Vector z = chol * (e.radius() * g.normalized());
        pts.emplace_back(frame.u.dot(z), frame.v.dot(z));
    }

    std::sort(pts.begin(), pts.end());
    auto cross = [](const auto& o, const auto& a, const auto& b) {
        return (a.first - o.first) * (b.second - o.second) -
               (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<double, double>> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k > 0 ? k - 1 : 0);

    double area = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        area += a.first * b.second - b.first * a.second;
    }
    return 0.5 * std::abs(area);
}

}  // namespace sympkit::testing
