#include "sympkit/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sympkit {

namespace {

constexpr double kPi = std::numbers::pi;

// state layout for the coupled system: (x, p, J00, J01, J10, J11)
using Augmented = Eigen::Matrix<double, 6, 1>;

Augmented rhs(const ScalarPotentialSystem& sys, const Augmented& y) {
    const double x = y(0);
    const double inv_m = 1.0 / sys.mass();
    const double slope = sys.force_slope(x);
    Augmented dy;
    dy(0) = y(1) * inv_m;
    dy(1) = sys.force(x);
    // variational equations: dJ/dt = A J with A = (0, 1/m; F'(x), 0)
    dy(2) = inv_m * y(4);
    dy(3) = inv_m * y(5);
    dy(4) = slope * y(2);
    dy(5) = slope * y(3);
    return dy;
}

Augmented rk4_step(const ScalarPotentialSystem& sys, const Augmented& y, double dt) {
    const Augmented k1 = rhs(sys, y);
    const Augmented k2 = rhs(sys, y + (0.5 * dt) * k1);
    const Augmented k3 = rhs(sys, y + (0.5 * dt) * k2);
    const Augmented k4 = rhs(sys, y + dt * k3);
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

FlowMap snapshot(double t, const Augmented& y) {
    Matrix jac(2, 2);
    jac << y(2), y(3), y(4), y(5);
    return FlowMap{t, Eigen::Vector2d(y(0), y(1)), jac};
}

}  // namespace

QuadraticHamiltonian::QuadraticHamiltonian(Matrix coefficients) : m(std::move(coefficients)) {
    require_square_finite(m, "QuadraticHamiltonian");
    if (m.rows() % 2 != 0)
        throw std::invalid_argument("QuadraticHamiltonian: matrix size must be even");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("QuadraticHamiltonian: matrix must be symmetric");
    m = 0.5 * (m + m.transpose());
}

SymplecticMatrix linear_flow(const QuadraticHamiltonian& h, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("linear_flow: time must be finite");
    const Matrix j = standard_symplectic_matrix(h.dofs());
    Matrix phi = matrix_exponential(t * (j * h.m));
    // the achievable symplectic residual of exp(t J M) grows with the
    // squared matrix scale; widen the validation tolerance accordingly
    const double scale = std::max(1.0, phi.cwiseAbs().maxCoeff());
    const double tol = std::max(1e-9, 1e4 * std::numeric_limits<double>::epsilon() * scale * scale);
    return SymplecticMatrix(std::move(phi), tol);
}

ScalarPotentialSystem::ScalarPotentialSystem(double mass, std::function<double(double)> potential,
                                             std::function<double(double)> force,
                                             std::function<double(double)> force_slope)
    : mass_(mass), v_(std::move(potential)), f_(std::move(force)), fp_(std::move(force_slope)) {
    if (!(mass_ > 0.0)) throw std::invalid_argument("ScalarPotentialSystem: mass must be positive");
    if (!v_ || !f_ || !fp_)
        throw std::invalid_argument("ScalarPotentialSystem: potential, force and slope required");

    // spot-check that the supplied force is -dV/dx
    const double h = 1e-5;
    for (double x : {-1.3, 0.17, 0.9}) {
        const double fd = -(v_(x + h) - v_(x - h)) / (2.0 * h);
        const double scale = std::max({1.0, std::abs(fd), std::abs(f_(x))});
        if (std::abs(fd - f_(x)) > 1e-6 * scale)
            throw std::invalid_argument("ScalarPotentialSystem: force disagrees with -dV/dx near x=" +
                                        std::to_string(x));
        const double fpd = (f_(x + h) - f_(x - h)) / (2.0 * h);
        if (std::abs(fpd - fp_(x)) > 1e-6 * std::max({1.0, std::abs(fpd), std::abs(fp_(x))}))
            throw std::invalid_argument("ScalarPotentialSystem: force_slope disagrees with dF/dx");
    }
}

ScalarPotentialSystem harmonic_system(double mass, double stiffness) {
    return ScalarPotentialSystem(
        mass, [stiffness](double x) { return 0.5 * stiffness * x * x; },
        [stiffness](double x) { return -stiffness * x; },
        [stiffness](double) { return -stiffness; });
}

ScalarPotentialSystem pendulum_system(double mass, double gravity) {
    return ScalarPotentialSystem(
        mass, [gravity](double x) { return -gravity * std::cos(x); },
        [gravity](double x) { return -gravity * std::sin(x); },
        [gravity](double x) { return -gravity * std::cos(x); });
}

ScalarPotentialSystem quartic_system(double mass, double quartic_coeff) {
    return ScalarPotentialSystem(
        mass, [quartic_coeff](double x) { return 0.25 * quartic_coeff * x * x * x * x; },
        [quartic_coeff](double x) { return -quartic_coeff * x * x * x; },
        [quartic_coeff](double x) { return -3.0 * quartic_coeff * x * x; });
}

std::vector<FlowMap> integrate_flow(const ScalarPotentialSystem& sys, const Vector& z0, double t,
                                    double dt) {
    if (z0.size() != 2) throw std::invalid_argument("integrate_flow: state must be (x, p)");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_flow: dt must be positive");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("integrate_flow: t must be finite and nonnegative");

    Augmented y;
    y << z0(0), z0(1), 1.0, 0.0, 0.0, 1.0;

    std::vector<FlowMap> trajectory;
    trajectory.reserve(static_cast<std::size_t>(t / dt) + 2);
    trajectory.push_back(snapshot(0.0, y));

    double now = 0.0;
    while (now < t - 1e-12 * std::max(1.0, t)) {
        const double step = std::min(dt, t - now);
        y = rk4_step(sys, y, step);
        now += step;
        if (!y.allFinite()) throw FlowDivergence(now, "integrate_flow: state diverged at t=" +
                                                          std::to_string(now));
        trajectory.push_back(snapshot(now, y));
    }
    return trajectory;
}

CanonicalCheck is_canonical(const std::function<Vector(const Vector&)>& map,
                            const std::vector<Vector>& sample_points, double tol) {
    if (!map) throw std::invalid_argument("is_canonical: missing map");
    if (sample_points.empty()) throw std::invalid_argument("is_canonical: no sample points");

    CanonicalCheck out{true, 0.0, sample_points.front()};
    for (const Vector& z : sample_points) {
        const auto dim = z.size();
        if (dim % 2 != 0) throw std::invalid_argument("is_canonical: odd phase-space dimension");
        const double h = 1e-6 * (1.0 + z.cwiseAbs().maxCoeff());
        Matrix jac(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            Vector zp = z, zm = z;
            zp(i) += h;
            zm(i) -= h;
            const Vector fp = map(zp);
            const Vector fm = map(zm);
            if (fp.size() != dim || fm.size() != dim)
                throw std::invalid_argument("is_canonical: map changed dimension");
            if (!fp.allFinite() || !fm.allFinite())
                throw std::invalid_argument("is_canonical: map not evaluable near a sample");
            jac.col(i) = (fp - fm) / (2.0 * h);
        }
        const double residual = is_symplectic(jac, tol).residual;
        if (residual > out.max_residual) {
            out.max_residual = residual;
            out.worst_point = z;
        }
    }
    out.canonical = out.max_residual <= tol;
    return out;
}

PolarPoint symplectic_polar(double r, double phi) {
    if (!(r > 0.0)) throw std::invalid_argument("symplectic_polar: r must be positive");
    const double root = std::sqrt(2.0 * r);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    PolarPoint out;
    out.z = Eigen::Vector2d(root * c, root * s);
    out.jacobian = Matrix(2, 2);
    out.jacobian << c / root, -root * s, s / root, root * c;
    return out;
}

std::vector<std::pair<double, double>> shadow_history(const QuadraticHamiltonian& h, double radius,
                                                      const std::vector<double>& times,
                                                      int plane_index) {
    std::vector<std::pair<double, double>> out;
    out.reserve(times.size());
    const PlaneSpec plane = conjugate_plane(plane_index, h.dofs());
    for (double t : times) {
        const CenteredEllipsoid moved = egg(linear_flow(h, t), radius);
        out.emplace_back(t, shadow_area(moved, plane).area);
    }
    return out;
}

OscillatorGround oscillator_ground_energy(const std::vector<double>& masses,
                                          const std::vector<double>& frequencies, double hbar) {
    if (masses.empty() || masses.size() != frequencies.size())
        throw std::invalid_argument("oscillator_ground_energy: need matching mass/frequency lists");
    if (!(hbar > 0.0)) throw std::invalid_argument("oscillator_ground_energy: hbar must be positive");

    OscillatorGround out{0.0, {}};
    out.ellipses.reserve(masses.size());
    for (std::size_t j = 0; j < masses.size(); ++j) {
        const double m = masses[j];
        const double w = frequencies[j];
        if (!(m > 0.0) || !(w > 0.0))
            throw std::invalid_argument("oscillator_ground_energy: masses and frequencies must be positive");
        out.energy += 0.5 * hbar * w;
        const double ax = std::sqrt(hbar / (m * w));
        const double ap = std::sqrt(m * hbar * w);
        out.ellipses.push_back({ax, ap, kPi * ax * ap});
    }
    return out;
}

}  // namespace sympkit
