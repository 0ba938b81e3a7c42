#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qps/darboux.hpp"

using namespace qps;

namespace {

/// Independent oracle: integrate dg2/dI = 1 - g2/beta, g2(0) = 0 with a
/// plain fixed-step RK4.
double action_profile_ode(double action, double beta, int steps = 20000) {
    double g2 = 0.0;
    double h = action / steps;
    auto f = [beta](double y) { return 1.0 - y / beta; };
    for (int s = 0; s < steps; ++s) {
        double k1 = f(g2);
        double k2 = f(g2 + 0.5 * h * k1);
        double k3 = f(g2 + 0.5 * h * k2);
        double k4 = f(g2 + h * k3);
        g2 += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return g2;
}

}  // namespace

TEST_CASE("origin is a fixed point of the action-angle map") {
    auto map = darboux_map_qosc1(1.0);
    CHECK(std::abs(map.b(0.0, 0.7)) == 0.0);
}

TEST_CASE("radial profile solves dg2/dI = 1 - g2/beta (ODE oracle)") {
    for (double beta : {1.0, 2.0, 0.5}) {
        for (double action : {0.3, 1.0, 2.5}) {
            double expect = action_profile_ode(action, beta);
            CHECK(darboux_action_profile(action, beta) ==
                  doctest::Approx(expect).epsilon(1e-10));
        }
    }
    // frozen value from the oracle: beta = 1, I = 1 -> 1 - e^{-1}
    CHECK(darboux_action_profile(1.0, 1.0) == doctest::Approx(0.63212055882856).epsilon(1e-12));
    auto map = darboux_map_qosc1(1.0);
    CHECK(std::norm(map.b(1.0, 0.0)) == doctest::Approx(0.6321206).epsilon(1e-6));
}

TEST_CASE("pushforward of {phi, I} = 1 reproduces the deformed bracket") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> UI(0.05, 2.0), Uphi(-3.0, 3.0);
    for (double beta : {1.0, 2.0}) {
        auto map = darboux_map_qosc1(beta);
        for (int trial = 0; trial < 10; ++trial) {
            double action = UI(rng), phi = Uphi(rng);
            auto J = map.jacobian(action, phi);
            // {b, b*} = db/dphi db*/dI - db/dI db*/dphi, given {phi, I} = 1
            std::complex<double> push = J.db_dphi * J.dbs_dI - J.db_dI * J.dbs_dphi;
            std::complex<double> b = map.b(action, phi);
            std::complex<double> expect =
                std::complex<double>(0, -1) * (1.0 - std::norm(b) / beta);
            CHECK(std::abs(push - expect) < 1e-12);
        }
    }
}

TEST_CASE("jacobian agrees with finite differences") {
    auto map = darboux_map_qosc1(1.5);
    double action = 0.8, phi = 0.3, h = 1e-6;
    auto J = map.jacobian(action, phi);
    auto dI = (map.b(action + h, phi) - map.b(action - h, phi)) / (2 * h);
    auto dphi = (map.b(action, phi + h) - map.b(action, phi - h)) / (2 * h);
    CHECK(std::abs(J.db_dI - dI) < 1e-8);
    CHECK(std::abs(J.db_dphi - dphi) < 1e-8);
}

TEST_CASE("domain guards") {
    CHECK_THROWS_AS(darboux_map_qosc1(-1.0), ParameterError);
    CHECK_THROWS_AS(darboux_map_qosc1(0.0), ParameterError);
    auto map = darboux_map_qosc1(1.0);
    CHECK_THROWS_AS(map.b(-0.1, 0.0), DomainError);
    CHECK_THROWS_AS(map.jacobian(0.0, 0.0), DomainError);
}
