#pragma once

#include "sympkit/core.hpp"
#include "sympkit/ellipsoid.hpp"
#include "sympkit/symplectic.hpp"

#include <functional>
#include <vector>

namespace sympkit {

/// H(z) = 1/2 z^T M z for a symmetric M.
struct QuadraticHamiltonian {
    Matrix m;

    explicit QuadraticHamiltonian(Matrix coefficients);
    int dofs() const { return static_cast<int>(m.rows()) / 2; }
    double energy(const Vector& z) const { return 0.5 * z.dot(m * z); }
};

/// Exact flow map exp(t J M); symplectic for every t, with
/// phi_0 = identity and phi_{s+t} = phi_s phi_t.
SymplecticMatrix linear_flow(const QuadraticHamiltonian& h, double t);

/// One-dimensional particle in a scalar potential: m dx/dt = p,
/// dp/dt = -dV/dx. The force must be the analytic derivative of the
/// potential (spot-checked at construction); force_slope = dF/dx feeds the
/// variational equations.
class ScalarPotentialSystem {
public:
    ScalarPotentialSystem(double mass, std::function<double(double)> potential,
                          std::function<double(double)> force,
                          std::function<double(double)> force_slope);

    double mass() const { return mass_; }
    double potential(double x) const { return v_(x); }
    double force(double x) const { return f_(x); }
    double force_slope(double x) const { return fp_(x); }
    double energy(const Vector& z) const { return 0.5 * z(1) * z(1) / mass_ + v_(z(0)); }

private:
    double mass_;
    std::function<double(double)> v_, f_, fp_;
};

ScalarPotentialSystem harmonic_system(double mass, double stiffness);
ScalarPotentialSystem pendulum_system(double mass, double gravity);
ScalarPotentialSystem quartic_system(double mass, double quartic_coeff);

/// Snapshot of the flow at one time: state phi_t(z0) and the Jacobian
/// d phi_t / d z0 propagated by the variational equations.
struct FlowMap {
    double t;
    Vector state;
    Matrix jacobian;
};

/// Raised when the integration state stops being finite.
struct FlowDivergence : std::runtime_error {
    FlowDivergence(double when, const std::string& msg) : std::runtime_error(msg), time(when) {}
    double time;
};

/// Classical fourth-order Runge-Kutta on state + variational equations.
/// Returns the trajectory including the initial point; a final partial step
/// covers t when it is not a multiple of dt.
std::vector<FlowMap> integrate_flow(const ScalarPotentialSystem& sys, const Vector& z0, double t,
                                    double dt);

struct CanonicalCheck {
    bool canonical;
    double max_residual;   // worst symplectic residual of the FD Jacobians
    Vector worst_point;
};

/// Finite-difference Jacobians at every sample point, each tested for
/// symplecticity at `tol`.
CanonicalCheck is_canonical(const std::function<Vector(const Vector&)>& map,
                            const std::vector<Vector>& sample_points, double tol);

struct PolarPoint {
    Vector z;         // (x, p) = (sqrt(2r) cos phi, sqrt(2r) sin phi)
    Matrix jacobian;  // d(x,p)/d(r,phi), determinant 1 for every r > 0
};

PolarPoint symplectic_polar(double r, double phi);

/// Conjugate-plane shadow areas of the evolved ball phi_t(B_R) at the
/// requested times.
std::vector<std::pair<double, double>> shadow_history(const QuadraticHamiltonian& h, double radius,
                                                      const std::vector<double>& times,
                                                      int plane_index);

struct OscillatorGround {
    double energy;  // sum of hbar omega_j / 2
    struct ModeEllipse {
        double x_semi_axis;  // sqrt(hbar / (m omega))
        double p_semi_axis;  // sqrt(m hbar omega)
        double area;         // pi hbar
    };
    std::vector<ModeEllipse> ellipses;
};

OscillatorGround oscillator_ground_energy(const std::vector<double>& masses,
                                          const std::vector<double>& frequencies, double hbar);

}  // namespace sympkit
