#include <doctest.h>

#include "helpers.hpp"
#include "sympkit/dynamics.hpp"

#include <cmath>
#include <numbers>

using namespace sympkit;

namespace {

constexpr double kPi = std::numbers::pi;

QuadraticHamiltonian isotropic_oscillator() {
    return QuadraticHamiltonian(Matrix::Identity(2, 2));
}

}  // namespace

TEST_CASE("linear flow: oscillator rotates, free particle shears, t=0 is the identity") {
    const QuadraticHamiltonian h = isotropic_oscillator();
    for (double t : {0.7, -1.3, 4.0}) {
        Matrix expected(2, 2);
        expected << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
        CHECK((linear_flow(h, t).matrix() - expected).cwiseAbs().maxCoeff() <= 1e-13);
    }
    CHECK((linear_flow(h, 2.0 * kPi).matrix() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <=
          1e-12);
    CHECK((linear_flow(h, 0.0).matrix() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    const double mass = 2.5;
    Matrix free_m = Matrix::Zero(2, 2);
    free_m(1, 1) = 1.0 / mass;
    const Matrix phi = linear_flow(QuadraticHamiltonian(free_m), 1.7).matrix();
    Matrix expected(2, 2);
    expected << 1.0, 1.7 / mass, 0.0, 1.0;
    CHECK((phi - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("linear flow group law and Liouville determinant") {
    testing::Rng rng(137);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = rng.integer(1, 3);
        const QuadraticHamiltonian h(testing::random_symmetric(2 * n, 1.0, rng));
        const double s = rng.uniform(-2.0, 2.0);
        const double t = rng.uniform(-2.0, 2.0);
        const Matrix lhs = linear_flow(h, s + t).matrix();
        const Matrix rhs = linear_flow(h, s).matrix() * linear_flow(h, t).matrix();
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9);

        const SymplecticMatrix phi = linear_flow(h, t);
        CHECK(phi.residual() <= 1e-9);
        CHECK(std::abs(phi.matrix().determinant() - 1.0) <= 1e-9);
    }
}

TEST_CASE("RK4 flow matches the matrix exponential for the oscillator") {
    const auto sys = harmonic_system(1.0, 1.0);
    Vector z0(2);
    z0 << 1.0, 0.3;
    const auto trajectory = integrate_flow(sys, z0, 1.0, 1e-3);
    const Vector exact = linear_flow(isotropic_oscillator(), 1.0).matrix() * z0;
    CHECK((trajectory.back().state - exact).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(trajectory.back().t == doctest::Approx(1.0));
}

TEST_CASE("free motion is integrated exactly") {
    const auto sys = quartic_system(2.0, 0.0);  // V = 0
    Vector z0(2);
    z0 << 0.4, -1.2;
    const auto trajectory = integrate_flow(sys, z0, 3.0, 0.01);
    CHECK(trajectory.back().state(0) == doctest::Approx(0.4 - 1.2 * 3.0 / 2.0).epsilon(1e-12));
    CHECK(trajectory.back().state(1) == doctest::Approx(-1.2).epsilon(1e-14));
}

TEST_CASE("pendulum: canonical within integration tolerance, energy conserved") {
    const auto sys = pendulum_system(1.0, 1.0);
    Vector z0(2);
    z0 << 2.0, 0.0;
    const auto trajectory = integrate_flow(sys, z0, 1.0, 1e-3);

    const double residual = is_symplectic(trajectory.back().jacobian, 1e-6).residual;
    CHECK(residual <= 1e-6);

    const double drift = std::abs(sys.energy(trajectory.back().state) - sys.energy(z0));
    CHECK(drift <= 1e-8);
}

TEST_CASE("variational Jacobian agrees with finite differences of the flow") {
    const auto sys = pendulum_system(1.0, 1.0);
    Vector z0(2);
    z0 << 1.2, 0.4;
    const Matrix variational = integrate_flow(sys, z0, 1.0, 1e-3).back().jacobian;

    const double h = 1e-6;
    Matrix fd(2, 2);
    for (int i = 0; i < 2; ++i) {
        Vector zp = z0, zm = z0;
        zp(i) += h;
        zm(i) -= h;
        const Vector fp = integrate_flow(sys, zp, 1.0, 1e-3).back().state;
        const Vector fm = integrate_flow(sys, zm, 1.0, 1e-3).back().state;
        fd.col(i) = (fp - fm) / (2.0 * h);
    }
    CHECK((variational - fd).cwiseAbs().maxCoeff() <= 1e-5);
}

TEST_CASE("unstable quartic diverges and reports the blow-up time") {
    const auto sys = quartic_system(1.0, -1.0);  // V = -x^4/4
    Vector z0(2);
    z0 << 2.0, 0.0;
    try {
        integrate_flow(sys, z0, 10.0, 1e-3);
        FAIL("expected divergence");
    } catch (const FlowDivergence& e) {
        CHECK(e.time > 0.0);
        CHECK(e.time <= 10.0);
    }
}

TEST_CASE("force/potential consistency is spot-checked at construction") {
    CHECK_THROWS_AS(ScalarPotentialSystem(1.0, [](double x) { return 0.5 * x * x; },
                                          [](double x) { return -2.0 * x; },  // wrong force
                                          [](double) { return -2.0; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(harmonic_system(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("canonical maps: translations, symplectic polar; ordinary polar fails") {
    std::vector<Vector> samples;
    testing::Rng rng(139);
    for (int i = 0; i < 12; ++i) {
        Vector z(2);
        z << rng.uniform(0.5, 3.0), rng.uniform(0.0, 2.0 * kPi);
        samples.push_back(z);
    }

    SUBCASE("translation") {
        Vector shift(2);
        shift << 0.7, -0.4;
        const auto check = is_canonical([shift](const Vector& z) { return z + shift; },
                                        samples, 1e-9);
        CHECK(check.canonical);
    }
    SUBCASE("symplectic polar coordinates") {
        auto map = [](const Vector& z) { return symplectic_polar(z(0), z(1)).z; };
        const auto check = is_canonical(map, samples, 1e-6);
        CHECK(check.canonical);
    }
    SUBCASE("ordinary polar coordinates") {
        auto map = [](const Vector& z) {
            Vector out(2);
            out << z(0) * std::cos(z(1)), z(0) * std::sin(z(1));
            return out;
        };
        Vector probe(2);
        probe << 2.0, 0.3;
        const auto check = is_canonical(map, {probe}, 1e-6);
        CHECK_FALSE(check.canonical);
        CHECK(check.max_residual > 0.5);  // |det - 1| = 1 at r = 2
    }
}

TEST_CASE("symplectic polar: values, exact Jacobian, oscillator pullback") {
    const auto point = symplectic_polar(2.0, 0.7);
    CHECK(point.z(0) == doctest::Approx(2.0 * std::cos(0.7)));
    CHECK(point.z(1) == doctest::Approx(2.0 * std::sin(0.7)));
    CHECK(point.jacobian.determinant() == doctest::Approx(1.0).epsilon(1e-12));

    const auto at_zero = symplectic_polar(1.3, 0.0);
    CHECK(at_zero.z(0) == doctest::Approx(std::sqrt(2.6)));
    CHECK(at_zero.z(1) == doctest::Approx(0.0));

    // H = (p^2 + x^2)/2 pulled back is K = r
    testing::Rng rng(149);
    for (int i = 0; i < 10; ++i) {
        const double r = rng.uniform(0.1, 4.0);
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const Vector z = symplectic_polar(r, phi).z;
        CHECK(0.5 * z.squaredNorm() == doctest::Approx(r).epsilon(1e-12));
    }

    // exact Jacobian vs finite differences of the map
    const double h = 1e-7;
    Matrix fd(2, 2);
    fd.col(0) = (symplectic_polar(2.0 + h, 0.7).z - symplectic_polar(2.0 - h, 0.7).z) / (2.0 * h);
    fd.col(1) = (symplectic_polar(2.0, 0.7 + h).z - symplectic_polar(2.0, 0.7 - h).z) / (2.0 * h);
    CHECK((point.jacobian - fd).cwiseAbs().maxCoeff() <= 1e-7);

    CHECK_THROWS_AS(symplectic_polar(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("shadow history: rotations keep the ball, couplings never shrink it") {
    const std::vector<double> times{0.0, 0.5, 1.0, 2.0, 3.5, 5.0};

    const auto isotropic = shadow_history(isotropic_oscillator(), 1.0, times, 0);
    for (const auto& [t, area] : isotropic) CHECK(area == doctest::Approx(kPi).epsilon(1e-12));

    testing::Rng rng(151);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = rng.integer(2, 3);
        // keep ||t J M|| moderate so exp stays well conditioned out to t = 5
        Matrix m = testing::random_symmetric(2 * n, 1.0, rng);
        m *= 0.8 / std::max(1.0, m.cwiseAbs().rowwise().sum().maxCoeff());
        const QuadraticHamiltonian h(m);
        const int plane = rng.integer(0, n - 1);
        const auto history = shadow_history(h, 1.0, times, plane);
        CHECK(history.front().second == doctest::Approx(kPi).epsilon(1e-12));
        for (const auto& [t, area] : history) CHECK(area >= kPi * (1.0 - 1e-9));
    }
}

TEST_CASE("oscillator ground energy and minimal ellipses") {
    const auto single = oscillator_ground_energy({1.0}, {1.0}, 1.0);
    CHECK(single.energy == doctest::Approx(0.5).epsilon(1e-15));

    const auto triple = oscillator_ground_energy({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}, 1.0);
    CHECK(triple.energy == doctest::Approx(3.0).epsilon(1e-15));

    testing::Rng rng(157);
    for (int trial = 0; trial < 20; ++trial) {
        const double m = rng.uniform(0.1, 10.0);
        const double w = rng.uniform(0.1, 10.0);
        const double hbar = rng.uniform(0.1, 10.0);
        const auto out = oscillator_ground_energy({m}, {w}, hbar);
        CHECK(out.energy == doctest::Approx(0.5 * hbar * w).epsilon(1e-12));
        CHECK(out.ellipses[0].area == doctest::Approx(kPi * hbar).epsilon(1e-12));
        // semi-axes: x^2 / (hbar / m w) + p^2 / (m hbar w) = 1
        CHECK(out.ellipses[0].x_semi_axis == doctest::Approx(std::sqrt(hbar / (m * w))));
        CHECK(out.ellipses[0].p_semi_axis == doctest::Approx(std::sqrt(m * hbar * w)));
    }

    CHECK_THROWS_AS(oscillator_ground_energy({1.0}, {-1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(oscillator_ground_energy({1.0, 2.0}, {1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(oscillator_ground_energy({1.0}, {1.0}, 0.0), std::invalid_argument);
}
