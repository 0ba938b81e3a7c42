#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "qps/flow.hpp"

using namespace qps;

namespace {

PolyExpr sym(const std::string& s) { return PolyExpr::symbol(s); }
PolyExpr cst(int v) { return PolyExpr::constant(ComplexRat(v)); }
const PolyExpr I = PolyExpr::imaginary_unit();

double max_monitor(const Trajectory& t, const std::string& name) {
    double m = 0.0;
    for (double v : t.monitors.at(name)) m = std::max(m, v);
    return m;
}

}  // namespace

TEST_CASE("hamiltonian vector fields match the bracket, symbolically") {
    SUBCASE("qosc1, H = b* b") {
        auto P = builtin(Builtin::QOsc1, 1, Beta::symbolic());
        auto field = hamiltonian_vector_field(P, sym("b*") * sym("b"));
        PolyExpr expect = -(I * (cst(1) - sym("b*") * sym("b") * sym(kBetaInv)) * sym("b"));
        CHECK(field[0] == expect);
    }
    SUBCASE("qparticle, H = p^2/2") {
        auto P = builtin(Builtin::QParticle, 1, Beta::symbolic());
        PolyExpr H = sym("p").pow(2) * ComplexRat(Rational(1, 2));
        auto field = hamiltonian_vector_field(P, H);
        CHECK(field[0] == sym("p") + sym("x") * sym("p").pow(2) * sym(kBetaInv));
        CHECK(field[1].is_zero());
    }
    SUBCASE("canonical, H = p^2/2") {
        auto P = builtin(Builtin::Canonical, 1, Beta::symbolic());
        PolyExpr H = sym("p").pow(2) * ComplexRat(Rational(1, 2));
        auto field = hamiltonian_vector_field(P, H);
        CHECK(field[0] == sym("p"));
        CHECK(field[1].is_zero());
    }
}

TEST_CASE("q-oscillator frequency depends on energy: beta=2, |b0|^2=1 -> 1/2") {
    auto P = builtin(Builtin::QOsc1, 1, Beta::value(2));
    PolyExpr H = sym("b*") * sym("b");
    FlowConfig cfg;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-13;
    cfg.t_end = 25.0;
    cfg.sample_count = 1200;
    auto traj = integrate(P, H, {{1.0, 0.0}, {1.0, 0.0}}, cfg);
    double freq = measure_angular_frequency(traj, "b");
    CHECK(std::abs(freq - 0.5) <= 1e-6 * 0.5);
    CHECK(max_monitor(traj, "energy_drift") <= 1e-9);
    CHECK(max_monitor(traj, "conj_defect") <= 1e-9);
}

TEST_CASE("q-particle friction: x(t) = e^t - 1 for beta=1, x0=0, p0=1") {
    auto P = builtin(Builtin::QParticle, 1, Beta::value(1));
    PolyExpr H = sym("p").pow(2) * ComplexRat(Rational(1, 2));
    FlowConfig cfg;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-13;
    cfg.t_end = 3.0;
    cfg.sample_count = 300;
    auto traj = integrate(P, H, {{0.0, 0.0}, {1.0, 0.0}}, cfg);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        double expect = std::exp(traj.times[k]) - 1.0;
        double got = traj.points[k][0].real();
        CHECK(std::abs(got - expect) <= 1e-8 * (1.0 + std::abs(expect)));
        CHECK(std::abs(traj.points[k][1] - std::complex<double>(1.0, 0.0)) <= 1e-12);
    }
}

TEST_CASE("lattice flow conserves the Casimir") {
    auto P = builtin(Builtin::Lattice, 1, Beta::value(2));
    std::vector<PolyExpr> hams;
    hams.push_back(sym("p") * sym("p*"));
    hams.push_back(sym("p") * sym("p*") + (sym("p") + sym("p*")) * ComplexRat(Rational(1, 2)));
    for (const auto& H : hams) {
        FlowConfig cfg;
        cfg.rel_tol = 1e-12;
        cfg.abs_tol = 1e-13;
        cfg.t_end = 10.0;
        cfg.sample_count = 500;
        std::complex<double> p0{0.6, 0.25};
        auto traj = integrate(P, H, {{0.4, 0.0}, p0, std::conj(p0)}, cfg);
        CHECK(max_monitor(traj, "casimir0_drift") <= 1e-9);
        CHECK(max_monitor(traj, "energy_drift") <= 1e-9);
        CHECK(max_monitor(traj, "conj_defect") <= 1e-9);
    }
}

TEST_CASE("analytic solutions: fixed points and the undeformed limit") {
    CHECK(std::abs(analytic_qoscillator({0, 0}, 1.0, 2.0, 5.0)) == 0.0);
    CHECK(analytic_qparticle(0.7, 0.0, 1.0, 9.0) == 0.7);
    // beta -> infinity restores harmonic motion with an O(1/beta) gap
    double beta = 1e6, t = 10.0;
    std::complex<double> b0{1.0, 0.0};
    std::complex<double> q = analytic_qoscillator(b0, 1.0, beta, t);
    std::complex<double> harmonic = b0 * std::polar(1.0, -t);
    double gap = std::abs(q - harmonic);
    double predicted = std::norm(b0) * t / beta;  // phase-shift series oracle
    CHECK(gap == doctest::Approx(predicted).epsilon(1e-3));
    CHECK(gap <= 1e-4);
}

TEST_CASE("gamma -> 0 limit of the friction solution") {
    CHECK(analytic_qparticle(0.2, 0.0, 5.0, 3.0) == doctest::Approx(0.2));
    // tiny p0: matches free motion to first order
    CHECK(analytic_qparticle(0.0, 1e-8, 1.0, 2.0) == doctest::Approx(2e-8).epsilon(1e-6));
}

TEST_CASE("halving tolerances improves accuracy against the analytic oracle") {
    auto P = builtin(Builtin::QOsc1, 1, Beta::value(2));
    PolyExpr H = sym("b*") * sym("b");
    std::complex<double> b0{0.8, 0.3};
    auto run = [&](double tol) {
        FlowConfig cfg;
        cfg.rel_tol = tol;
        cfg.abs_tol = tol * 1e-2;
        cfg.t_end = 20.0;
        cfg.sample_count = 11;  // wide sampling so tolerance governs the step
        auto traj = integrate(P, H, {b0, std::conj(b0)}, cfg);
        double err = 0.0;
        for (std::size_t k = 0; k < traj.times.size(); ++k)
            err = std::max(err, std::abs(traj.points[k][0] -
                                         analytic_qoscillator(b0, 1.0, 2.0, traj.times[k])));
        return err;
    };
    double coarse = run(1e-6), mid = run(1e-8), fine = run(1e-10);
    CHECK(mid < coarse);
    CHECK(fine < mid);
}

TEST_CASE("integration error carries the last good state on blow-up") {
    // H = x^2 p on the canonical chart: xdot = x^2 escapes in finite time
    auto P = builtin(Builtin::Canonical, 1, Beta::symbolic());
    PolyExpr H = sym("x").pow(2) * sym("p");
    FlowConfig cfg;
    cfg.t_end = 2.0;
    cfg.sample_count = 50;
    try {
        integrate(P, H, {{1.0, 0.0}, {1.0, 0.0}}, cfg);
        FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
        CHECK(e.last_time > 0.9);
        CHECK(e.last_time < 1.05);
        CHECK(std::abs(e.last_state[0]) > 1e3);
    }
}

TEST_CASE("holomorphic starts must satisfy z* = conj(z)") {
    auto P = builtin(Builtin::QOsc1, 1, Beta::value(1));
    FlowConfig cfg;
    cfg.t_end = 1.0;
    CHECK_THROWS_AS(integrate(P, sym("b*") * sym("b"), {{1.0, 0.0}, {0.5, 0.0}}, cfg),
                    DomainError);
}

TEST_CASE("flows need a numeric beta") {
    auto P = builtin(Builtin::QOsc1, 1, Beta::symbolic());
    FlowConfig cfg;
    cfg.t_end = 1.0;
    CHECK_THROWS_AS(integrate(P, sym("b*") * sym("b"), {{0.5, 0.0}, {0.5, 0.0}}, cfg),
                    ParameterError);
}

TEST_CASE("trajectory shape invariants") {
    auto P = builtin(Builtin::QOsc1, 1, Beta::value(2));
    FlowConfig cfg;
    cfg.t_end = 2.0;
    cfg.sample_count = 17;
    auto traj = integrate(P, sym("b*") * sym("b"), {{0.5, 0.0}, {0.5, 0.0}}, cfg);
    REQUIRE(traj.times.size() == 17);
    CHECK(traj.points.size() == traj.times.size());
    for (std::size_t k = 1; k < traj.times.size(); ++k)
        CHECK(traj.times[k] > traj.times[k - 1]);
    for (const auto& [name, series] : traj.monitors) {
        CAPTURE(name);
        CHECK(series.size() == traj.times.size());
    }
}

TEST_CASE("trajectory CSV export") {
    auto P = builtin(Builtin::QOsc1, 1, Beta::value(2));
    FlowConfig cfg;
    cfg.t_end = 1.0;
    cfg.sample_count = 5;
    auto traj = integrate(P, sym("b*") * sym("b"), {{0.5, 0.0}, {0.5, 0.0}}, cfg);
    auto path = std::filesystem::temp_directory_path() / "qps_test_traj.csv";
    write_trajectory_csv(traj, path.string());
    std::ifstream is(path);
    std::string header;
    std::getline(is, header);
    CHECK(header == "time,re_b,im_b,re_b*,im_b*,conj_defect,energy_drift");
    int rows = 0;
    for (std::string line; std::getline(is, line);) ++rows;
    CHECK(rows == 5);
    std::filesystem::remove(path);
}
