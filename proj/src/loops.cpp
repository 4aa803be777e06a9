#include "sympkit/loops.hpp"

#include <cmath>
#include <numbers>

namespace sympkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMinSamples = 16;

void require_loop_matrix(const Matrix& samples) {
    if (samples.cols() < 2 || samples.cols() % 2 != 0)
        throw std::invalid_argument("Loop: sample width must be 2n");
    if (!samples.allFinite())
        throw std::invalid_argument("Loop: samples must be finite");
}

}  // namespace

Loop Loop::from_periodic_samples(Matrix samples) {
    require_loop_matrix(samples);
    if (samples.rows() < kMinSamples)
        throw std::invalid_argument("Loop: at least 16 samples required");
    Loop g;
    g.n_ = static_cast<int>(samples.cols()) / 2;
    g.samples_ = std::move(samples);
    return g;
}

Loop Loop::from_closed_polyline(const Matrix& samples, double closure_tol) {
    require_loop_matrix(samples);
    if (samples.rows() < kMinSamples + 1)
        throw std::invalid_argument("Loop: at least 17 polyline rows required");
    const double scale = std::max(1.0, samples.cwiseAbs().maxCoeff());
    const double gap = (samples.row(samples.rows() - 1) - samples.row(0)).cwiseAbs().maxCoeff();
    if (gap > closure_tol * scale)
        throw std::invalid_argument("Loop: sample set does not close (endpoint gap " +
                                    std::to_string(gap) + ")");
    return from_periodic_samples(samples.topRows(samples.rows() - 1));
}

Loop Loop::from_callable(int n, std::function<Vector(double)> z, std::function<Vector(double)> dz) {
    if (n < 1) throw std::invalid_argument("Loop: n must be >= 1");
    if (!z) throw std::invalid_argument("Loop: missing parametrization");
    Loop g;
    g.n_ = n;
    g.z_ = std::move(z);
    g.dz_ = std::move(dz);
    return g;
}

const Matrix& Loop::samples() const {
    if (!samples_) throw std::logic_error("Loop: callable loop has no stored samples");
    return *samples_;
}

Vector Loop::value(double t) const {
    if (samples_) {
        const auto n_rows = samples_->rows();
        const double step = kTwoPi / static_cast<double>(n_rows);
        auto idx = static_cast<Eigen::Index>(std::llround(t / step)) % n_rows;
        if (idx < 0) idx += n_rows;
        return samples_->row(idx);
    }
    Vector v = z_(t);
    if (v.size() != 2 * n_) throw std::runtime_error("Loop: parametrization returned wrong size");
    return v;
}

Vector Loop::derivative(double t) const {
    if (!dz_) throw std::logic_error("Loop: no exact derivative available");
    return dz_(t);
}

Matrix Loop::resampled(int n_samples) const {
    if (n_samples < kMinSamples)
        throw std::invalid_argument("Loop: at least 16 samples required");
    if (samples_) return *samples_;
    Matrix out(n_samples, 2 * n_);
    for (int k = 0; k < n_samples; ++k)
        out.row(k) = z_(kTwoPi * static_cast<double>(k) / static_cast<double>(n_samples));
    return out;
}

double poincare_invariant(const Loop& g, int n_samples) {
    const int n = g.dofs();

    if (!g.is_sampled() && g.has_exact_derivative()) {
        const double step = kTwoPi / static_cast<double>(n_samples);
        double sum = 0.0;
        for (int k = 0; k < n_samples; ++k) {
            const double t = step * static_cast<double>(k);
            const Vector z = g.value(t);
            const Vector dz = g.derivative(t);
            sum += z.tail(n).dot(dz.head(n));
        }
        return step * sum;
    }

    const Matrix samples = g.resampled(n_samples);
    const auto n_rows = samples.rows();
    double sum = 0.0;
    for (Eigen::Index k = 0; k < n_rows; ++k) {
        const auto next = (k + 1) % n_rows;
        const auto prev = (k + n_rows - 1) % n_rows;
        const Vector dx = samples.row(next).head(n) - samples.row(prev).head(n);
        sum += samples.row(k).tail(n).dot(dx);
    }
    return 0.5 * sum;
}

Loop apply_linear(const Matrix& m, const Loop& g) {
    require_square_finite(m, "apply_linear");
    if (m.rows() != 2 * g.dofs())
        throw std::invalid_argument("apply_linear: dimension mismatch");

    if (g.is_sampled()) return Loop::from_periodic_samples(g.samples() * m.transpose());

    const Loop base = g;
    std::function<Vector(double)> dz;
    if (base.has_exact_derivative())
        dz = [m, base](double t) -> Vector { return m * base.derivative(t); };
    return Loop::from_callable(
        g.dofs(), [m, base](double t) -> Vector { return m * base.value(t); }, std::move(dz));
}

Loop transform_loop(const SymplecticMatrix& s, const Loop& g) {
    if (s.dofs() != g.dofs()) throw std::invalid_argument("transform_loop: dimension mismatch");
    return apply_linear(s.matrix(), g);
}

Loop section_boundary_loop(const CenteredEllipsoid& e, int plane_index, int n_samples) {
    (void)n_samples;
    const int n = e.dofs();
    const PlaneSpec plane = conjugate_plane(plane_index, n);

    Eigen::Matrix2d q;
    const Vector su = e.solve_shape(plane.u);
    const Vector sv = e.solve_shape(plane.v);
    q << plane.u.dot(su), plane.u.dot(sv), plane.v.dot(su), plane.v.dot(sv);
    if (!(q.determinant() > 0.0))
        throw std::invalid_argument("section_boundary_loop: degenerate section");

    // Semi-axis map Q^{-1/2}; (sin t, cos t) runs the ellipse so that the
    // enclosed (x_j, p_j) area is positive and I equals +area.
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(q);
    const Eigen::Matrix2d qih = es.operatorInverseSqrt();
    const double r = e.radius();

    auto embed = [n, plane](const Eigen::Vector2d& w) {
        Vector z = Vector::Zero(2 * n);
        z += w(0) * plane.u + w(1) * plane.v;
        return z;
    };
    auto value = [r, qih, embed](double t) -> Vector {
        return embed(r * (qih * Eigen::Vector2d(std::sin(t), std::cos(t))));
    };
    auto deriv = [r, qih, embed](double t) -> Vector {
        return embed(r * (qih * Eigen::Vector2d(std::cos(t), -std::sin(t))));
    };
    return Loop::from_callable(n, value, deriv);
}

}  // namespace sympkit
