#pragma once

#include "sympkit/core.hpp"
#include "sympkit/ellipsoid.hpp"
#include "sympkit/symplectic.hpp"

#include <functional>
#include <optional>

namespace sympkit {

/// Closed phase-space curve on [0, 2pi). Either a set of N equally spaced
/// samples (periodic by construction) or a callable parametrization, which
/// may carry its exact derivative. Callable evaluation must be side-effect
/// free; loops are shared freely across threads.
class Loop {
public:
    /// Rows are samples at t_k = 2 pi k / N, columns the 2n coordinates.
    /// The grid wraps; no duplicated endpoint. Requires N >= 16.
    static Loop from_periodic_samples(Matrix samples);

    /// Accepts a polyline whose final row repeats the first (within
    /// closure_tol) and drops the duplicate. Anything else is rejected as a
    /// non-closed sample set.
    static Loop from_closed_polyline(const Matrix& samples, double closure_tol = 1e-9);

    static Loop from_callable(int n, std::function<Vector(double)> z,
                              std::function<Vector(double)> dz = nullptr);

    int dofs() const { return n_; }
    bool is_sampled() const { return samples_.has_value(); }
    bool has_exact_derivative() const { return static_cast<bool>(dz_); }
    int sample_count() const { return samples_ ? static_cast<int>(samples_->rows()) : 0; }
    const Matrix& samples() const;

    Vector value(double t) const;
    Vector derivative(double t) const;

    /// Evaluate a callable loop on the N-point periodic grid.
    Matrix resampled(int n_samples) const;

private:
    Loop() = default;

    int n_ = 0;
    std::optional<Matrix> samples_;
    std::function<Vector(double)> z_;
    std::function<Vector(double)> dz_;
};

/// First Poincare invariant I = ∮ p dx. Sampled loops use centered
/// differences on the periodic grid; callable loops with an exact derivative
/// use the rectangle rule directly (spectrally accurate for smooth curves).
double poincare_invariant(const Loop& g, int n_samples = 1024);

/// Pointwise image t -> M z(t) under an arbitrary linear map.
Loop apply_linear(const Matrix& m, const Loop& g);

Loop transform_loop(const SymplecticMatrix& s, const Loop& g);

/// Boundary ellipse of the slice e ∩ (conjugate plane j), embedded with the
/// remaining coordinates zero and oriented so the invariant is positive.
/// Returned as a callable loop with exact derivative.
Loop section_boundary_loop(const CenteredEllipsoid& e, int plane_index, int n_samples = 1024);

}  // namespace sympkit
