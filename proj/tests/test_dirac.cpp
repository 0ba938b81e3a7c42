#include <doctest.h>

#include <cmath>
#include <random>

#include "qps/dirac.hpp"

using namespace qps;

namespace {

/// ExtendedFn from a polynomial over the extended chart (theta names then pi
/// names), for the constraint-compatibility checks.
ExtendedFn poly_fn(const PolyExpr& f, const std::vector<std::string>& theta_names,
                   const std::vector<std::string>& pi_names) {
    const int n = static_cast<int>(theta_names.size());
    auto point_of = [theta_names, pi_names](const Eigen::VectorXd& theta,
                                            const Eigen::VectorXd& pi) {
        std::map<std::string, std::complex<double>> pt;
        for (std::size_t j = 0; j < theta_names.size(); ++j) pt[theta_names[j]] = theta[j];
        for (std::size_t j = 0; j < pi_names.size(); ++j) pt[pi_names[j]] = pi[j];
        return pt;
    };
    ExtendedFn fn;
    fn.value = [f, point_of](const Eigen::VectorXd& theta, const Eigen::VectorXd& pi) {
        return f.evaluate(point_of(theta, pi)).real();
    };
    std::vector<PolyExpr> dth, dpi;
    for (const auto& s : theta_names) dth.push_back(f.derivative(s));
    for (const auto& s : pi_names) dpi.push_back(f.derivative(s));
    fn.grad = [dth, dpi, point_of, n](const Eigen::VectorXd& theta, const Eigen::VectorXd& pi,
                                      Eigen::VectorXd& gt, Eigen::VectorXd& gp) {
        auto pt = point_of(theta, pi);
        gt.resize(n);
        gp.resize(n);
        for (int j = 0; j < n; ++j) {
            gt[j] = dth[j].evaluate(pt).real();
            gp[j] = dpi[j].evaluate(pt).real();
        }
    };
    return fn;
}

}  // namespace

TEST_CASE("ray average of a constant matrix halves it") {
    Eigen::MatrixXd eps(2, 2);
    eps << 0, 1, -1, 0;
    auto f = [&](const Eigen::VectorXd&) { return eps; };
    Eigen::VectorXd theta(2);
    theta << 0.4, -0.3;
    Eigen::MatrixXd bar = ray_average(f, theta, 1e-13);
    CHECK((bar - 0.5 * eps).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("polynomial closed form: degree-k component scales by 1/(k+2)") {
    auto chart = CoordinateChart::real({"u", "v"});
    PolyExpr u = PolyExpr::symbol("u"), v = PolyExpr::symbol("v");
    PolyExpr entry = PolyExpr::constant(ComplexRat(3)) + u * v * ComplexRat(Rational(2)) +
                     u.pow(2) * v * ComplexRat(Rational(5));
    auto bar = omega_bar_polynomial({entry}, chart);
    PolyExpr expect = PolyExpr::constant(ComplexRat(Rational(3, 2))) +
                      u * v * ComplexRat(Rational(2, 4)) + u.pow(2) * v * ComplexRat(Rational(1));
    CHECK(bar[0] == expect);
}

TEST_CASE("polynomial closed form agrees with quadrature on random matrices") {
    std::mt19937_64 rng(13);
    auto chart = CoordinateChart::real({"u", "v"});
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int trial = 0; trial < 5; ++trial) {
        // random antisymmetric 2x2 polynomial "lower form"
        PolyExpr w;
        PolyExpr u = PolyExpr::symbol("u"), v = PolyExpr::symbol("v");
        w += PolyExpr::constant(ComplexRat(coeff(rng)));
        w += u * ComplexRat(coeff(rng)) + v * ComplexRat(coeff(rng));
        w += u * v * ComplexRat(coeff(rng)) + u.pow(2) * ComplexRat(coeff(rng));
        auto bar = omega_bar_polynomial({w}, chart);

        Eigen::VectorXd theta(2);
        theta << 0.7, -0.4;
        auto f = [&](const Eigen::VectorXd& t) {
            Eigen::MatrixXd M(1, 1);
            M(0, 0) = w.evaluate({{"u", t[0]}, {"v", t[1]}}).real();
            return M;
        };
        double quad = ray_average(f, theta, 1e-13)(0, 0);
        double closed = bar[0].evaluate({{"u", theta[0]}, {"v", theta[1]}}).real();
        CHECK(std::abs(quad - closed) <= 1e-12);
    }
}

TEST_CASE("real oscillator chart carries the expected bivector") {
    auto P = real_oscillator_structure(Beta::value(1));
    // {u,v} = 1 - (u^2+v^2)/2 at beta = 1
    auto w = P.omega(0, 1).evaluate({{"u", 0.3}, {"v", 0.4}});
    CHECK(w.real() == doctest::Approx(1.0 - 0.125));
    CHECK(w.imag() == 0.0);
    for (const auto& r : jacobi_residual(P)) CHECK(r.is_zero());
}

TEST_CASE("closed-form omega_bar matches the analytic log profile and quadrature") {
    auto P = real_oscillator_structure(Beta::value(1));
    auto closed = build_constraints(P, OmegaBarRoute::ClosedForm);
    auto quad = build_constraints(P, OmegaBarRoute::Quadrature, 1e-13);
    RealBivector biv(P);
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> U(-0.9, 0.9);
    for (int t = 0; t < 20; ++t) {
        Eigen::VectorXd theta(2);
        do {
            theta << U(rng), U(rng);
        } while (theta.squaredNorm() / 2.0 >= 0.9);
        double s = theta.squaredNorm() / 2.0;
        // ray average of omega_lower_01 = -1/(1-s): "+ln(1-s)/(2s)"
        double expect = s == 0 ? -0.5 : std::log1p(-s) / (2 * s);
        Eigen::MatrixXd C = closed.omega_bar(theta);
        Eigen::MatrixXd Q = quad.omega_bar(theta);
        CHECK(C(0, 1) == doctest::Approx(expect).epsilon(1e-12));
        CHECK((C - Q).cwiseAbs().maxCoeff() <= 1e-10);
        // derivative tensors agree across routes as well
        auto dC = closed.omega_bar_grad(theta);
        auto dQ = quad.omega_bar_grad(theta);
        for (int j = 0; j < 2; ++j)
            CHECK((dC[j] - dQ[j]).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("omega_bar at the origin is half the inverse canonical part") {
    auto P = real_oscillator_structure(Beta::value(1));
    auto S = build_constraints(P, OmegaBarRoute::ClosedForm);
    Eigen::MatrixXd W = S.omega_bar(Eigen::VectorXd::Zero(2));
    CHECK(W(0, 1) == doctest::Approx(-0.5));
    CHECK(W(1, 0) == doctest::Approx(0.5));
}

TEST_CASE("closed-form route rejects shapes it cannot integrate exactly") {
    // a linear (degree-1) bivector entry is outside the covered closed forms
    PoissonStructure P;
    P.chart = CoordinateChart::real({"u", "v"});
    P.bivector.assign(4, PolyExpr());
    PolyExpr w = PolyExpr::constant(ComplexRat(1)) + PolyExpr::symbol("u");
    P.omega(0, 1) = w;
    P.omega(1, 0) = -w;
    P.name = "linear-test";
    CHECK_THROWS_AS(build_constraints(P, OmegaBarRoute::ClosedForm), ParameterError);
    // the quadrature route still embeds it
    auto S = build_constraints(P, OmegaBarRoute::Quadrature, 1e-12);
    Eigen::VectorXd theta(2);
    theta << 0.3, -0.2;
    CHECK(std::isfinite(S.omega_bar(theta)(0, 1)));
}

TEST_CASE("canonical embedding: constant omega_bar and unit Dirac bracket") {
    auto P = builtin(Builtin::Canonical, 1, Beta::symbolic());
    auto S = build_constraints(P, OmegaBarRoute::ClosedForm);
    Eigen::VectorXd theta(2);
    theta << 0.3, -0.8;
    // omega_lower = [[0,-1],[1,0]], halved
    Eigen::MatrixXd W = S.omega_bar(theta);
    CHECK(W(0, 1) == doctest::Approx(-0.5));
    CHECK(W(1, 0) == doctest::Approx(0.5));
    Eigen::VectorXd pi = S.surface_pi(theta);
    for (int a = 0; a < 2; ++a) CHECK(S.phi(a, theta, pi) == doctest::Approx(0.0));
    double d = dirac_bracket(ExtendedFn::coordinate(0, 2), ExtendedFn::coordinate(1, 2), S,
                             theta, pi);
    CHECK(d == doctest::Approx(1.0));
}

TEST_CASE("defining property: constraints are Dirac-null against everything") {
    auto P = real_oscillator_structure(Beta::value(1));
    auto S = build_constraints(P, OmegaBarRoute::ClosedForm);
    std::vector<std::string> theta_names = P.chart.names;
    std::vector<std::string> pi_names{"pi_u", "pi_v"};

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-0.7, 0.7);
    std::uniform_int_distribution<int> coeff(-3, 3);

    // phi_a as an ExtendedFn through the constraint-set evaluators
    auto phi_fn = [&](int a) {
        ExtendedFn f;
        f.value = [&S, a](const Eigen::VectorXd& th, const Eigen::VectorXd& pi) {
            return S.phi(a, th, pi);
        };
        f.grad = [&S, a](const Eigen::VectorXd& th, const Eigen::VectorXd&, Eigen::VectorXd& gt,
                         Eigen::VectorXd& gp) {
            gt = S.grad_phi_theta(th).row(a);
            gp = Eigen::VectorXd::Zero(S.n);
            gp[a] = 1.0;
        };
        return f;
    };

    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd theta(2);
        theta << U(rng), U(rng);
        Eigen::VectorXd pi = S.surface_pi(theta);

        std::vector<ExtendedFn> probes;
        for (int i = 0; i < 2; ++i) probes.push_back(ExtendedFn::coordinate(i, 2));
        for (int i = 0; i < 2; ++i) probes.push_back(ExtendedFn::momentum(i, 2));
        PolyExpr X;
        X += PolyExpr::symbol("u") * PolyExpr::symbol("pi_v") * ComplexRat(coeff(rng));
        X += PolyExpr::symbol("v").pow(2) * ComplexRat(coeff(rng));
        X += PolyExpr::symbol("pi_u") * ComplexRat(coeff(rng));
        probes.push_back(poly_fn(X, theta_names, pi_names));

        for (int a = 0; a < 2; ++a)
            for (const auto& X_fn : probes)
                CHECK(std::abs(dirac_bracket(phi_fn(a), X_fn, S, theta, pi)) <= 1e-10);
    }
}

TEST_CASE("dirac bracket example: {u,v}_D = 0.875 at (0.3, 0.4), beta = 1") {
    auto P = real_oscillator_structure(Beta::value(1));
    auto S = build_constraints(P, OmegaBarRoute::ClosedForm);
    Eigen::VectorXd theta(2);
    theta << 0.3, 0.4;
    Eigen::VectorXd pi = S.surface_pi(theta);
    double d =
        dirac_bracket(ExtendedFn::coordinate(0, 2), ExtendedFn::coordinate(1, 2), S, theta, pi);
    CHECK(d == doctest::Approx(0.875).epsilon(1e-10));
}

TEST_CASE("reduction identity on the invertible built-ins") {
    std::mt19937_64 rng(2025);

    SUBCASE("canonical up to 4 dof, exactly") {
        for (int n = 1; n <= 4; ++n) {
            auto P = builtin(Builtin::Canonical, n, Beta::symbolic());
            auto pts = admissible_samples(P, 5, rng);
            auto rep = verify_reduction(P, pts, 1e-13, OmegaBarRoute::ClosedForm);
            CHECK(rep.pass);
        }
    }
    SUBCASE("real oscillator, closed form and quadrature") {
        auto P = real_oscillator_structure(Beta::value(1));
        auto pts = admissible_samples(P, 20, rng);
        CHECK(verify_reduction(P, pts, 1e-10, OmegaBarRoute::ClosedForm).pass);
        CHECK(verify_reduction(P, pts, 1e-8, OmegaBarRoute::Quadrature, 1e-12).pass);
    }
    SUBCASE("qparticle") {
        auto P = builtin(Builtin::QParticle, 1, Beta::value(1));
        auto pts = admissible_samples(P, 20, rng);
        CHECK(verify_reduction(P, pts, 1e-10, OmegaBarRoute::ClosedForm).pass);
        CHECK(verify_reduction(P, pts, 1e-8, OmegaBarRoute::Quadrature, 1e-12).pass);
    }
}

TEST_CASE("dirac bracket is antisymmetric and bilinear at sample points") {
    auto P = real_oscillator_structure(Beta::value(1));
    auto S = build_constraints(P, OmegaBarRoute::ClosedForm);
    std::vector<std::string> theta_names = P.chart.names;
    std::vector<std::string> pi_names{"pi_u", "pi_v"};
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> U(-0.6, 0.6);
    std::uniform_int_distribution<int> coeff(-3, 3);
    auto random_fn = [&](PolyExpr& out) {
        out = PolyExpr();
        out += PolyExpr::symbol("u") * ComplexRat(coeff(rng));
        out += PolyExpr::symbol("v") * PolyExpr::symbol("pi_u") * ComplexRat(coeff(rng));
        out += PolyExpr::symbol("pi_v").pow(2) * ComplexRat(coeff(rng));
        return poly_fn(out, theta_names, pi_names);
    };
    for (int trial = 0; trial < 6; ++trial) {
        Eigen::VectorXd theta(2);
        theta << U(rng), U(rng);
        Eigen::VectorXd pi = S.surface_pi(theta);
        PolyExpr fa, fb, fc;
        auto A = random_fn(fa);
        auto B = random_fn(fb);
        auto C = random_fn(fc);
        double ab = dirac_bracket(A, B, S, theta, pi);
        double ba = dirac_bracket(B, A, S, theta, pi);
        CHECK(std::abs(ab + ba) <= 1e-12 * (1.0 + std::abs(ab)));
        // bilinearity in the first slot: {A + C, B} = {A,B} + {C,B}
        auto sum_fn = poly_fn(fa + fc, theta_names, pi_names);
        double sum_br = dirac_bracket(sum_fn, B, S, theta, pi);
        double split = ab + dirac_bracket(C, B, S, theta, pi);
        CHECK(std::abs(sum_br - split) <= 1e-12 * (1.0 + std::abs(split)));
    }
}

TEST_CASE("delta is comfortably invertible at admissible samples") {
    std::mt19937_64 rng(4);
    auto P = builtin(Builtin::QParticle, 1, Beta::value(1));
    auto S = build_constraints(P, OmegaBarRoute::ClosedForm);
    for (const auto& theta : admissible_samples(P, 10, rng)) {
        Eigen::MatrixXd D = S.delta(theta);
        CHECK(std::abs(D.determinant()) > 1e-8);
    }
}

TEST_CASE("degeneracy and chart guards") {
    // the embedding machinery rejects holomorphic charts outright
    auto H = builtin(Builtin::QOsc1, 1, Beta::value(1));
    CHECK_THROWS_AS(build_constraints(H, OmegaBarRoute::Quadrature), ParameterError);

    // qparticle bivector degenerates where 1 + x p / beta = 0
    auto P = builtin(Builtin::QParticle, 1, Beta::value(1));
    RealBivector biv(P);
    Eigen::VectorXd bad(2);
    bad << 1.0, -1.0;
    CHECK_THROWS_AS(biv.lower(bad), SingularError);
}
