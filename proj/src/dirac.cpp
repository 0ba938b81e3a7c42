#include "qps/dirac.hpp"

#include <cmath>

namespace qps {

PoissonStructure real_oscillator_structure(const Beta& beta) {
    PoissonStructure P;
    P.chart = CoordinateChart::real({"u", "v"});
    P.bivector.assign(4, PolyExpr());
    PolyExpr s = (PolyExpr::symbol("u").pow(2) + PolyExpr::symbol("v").pow(2)) * beta.inv() *
                 ComplexRat(Rational(1, 2));
    PolyExpr w = PolyExpr::constant(ComplexRat(1)) - s;
    P.omega(0, 1) = w;
    P.omega(1, 0) = -w;
    P.beta = beta;
    P.name = "qosc1-real";
    return P;
}

RealBivector::RealBivector(const PoissonStructure& P) : P_(P), n_(static_cast<int>(P.dim())) {
    if (P.chart.kind != ChartKind::Real)
        throw ParameterError("constraint embedding needs a real chart");
    dupper_.resize(static_cast<std::size_t>(n_) * n_ * n_);
    for (int j = 0; j < n_; ++j)
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                dupper_[static_cast<std::size_t>(j) * n_ * n_ + a * n_ + b] =
                    P.omega(a, b).derivative(P.chart.names[j]);
}

double RealBivector::eval_real(const PolyExpr& p, const Eigen::VectorXd& theta) const {
    std::map<std::string, std::complex<double>> point;
    for (int j = 0; j < n_; ++j) point[P_.chart.names[j]] = theta[j];
    std::complex<double> v = p.evaluate(point);
    if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
        throw ParameterError("bivector entry not real on real chart");
    return v.real();
}

double RealBivector::entry(std::size_t j, std::size_t k, const Eigen::VectorXd& theta) const {
    return eval_real(P_.omega(j, k), theta);
}

Eigen::MatrixXd RealBivector::upper(const Eigen::VectorXd& theta) const {
    Eigen::MatrixXd M(n_, n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) M(a, b) = entry(a, b, theta);
    return M;
}

namespace {
Eigen::MatrixXd invert_checked(const Eigen::MatrixXd& M, const char* what) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    double scale = std::pow(M.cwiseAbs().maxCoeff() + 1e-300, M.rows());
    if (std::abs(lu.determinant()) <= 1e-12 * scale)
        throw SingularError(std::string("degenerate matrix in ") + what);
    return lu.inverse();
}
}  // namespace

Eigen::MatrixXd RealBivector::lower(const Eigen::VectorXd& theta) const {
    return invert_checked(upper(theta), "bivector inversion");
}

Eigen::MatrixXd RealBivector::lower_deriv(const Eigen::VectorXd& theta, int j) const {
    Eigen::MatrixXd L = lower(theta);
    Eigen::MatrixXd dU(n_, n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
            dU(a, b) =
                eval_real(dupper_[static_cast<std::size_t>(j) * n_ * n_ + a * n_ + b], theta);
    return -L * dU * L;
}

namespace {

// 15-point Gauss-Legendre nodes/weights on [0,1], built once by Newton
// iteration on P_15.
struct GaussLegendre15 {
    std::array<double, 15> x{}, w{};
    GaussLegendre15() {
        const int n = 15;
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = 0.5 * (1.0 + t);
            w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const GaussLegendre15& gl15() {
    static GaussLegendre15 g;
    return g;
}

using MatFn = std::function<Eigen::MatrixXd(double)>;

Eigen::MatrixXd gl_panel(const MatFn& f, double a, double b) {
    const auto& g = gl15();
    Eigen::MatrixXd sum;
    for (int i = 0; i < 15; ++i) {
        Eigen::MatrixXd v = f(a + (b - a) * g.x[i]) * ((b - a) * g.w[i]);
        sum = (i == 0) ? v : Eigen::MatrixXd(sum + v);
    }
    return sum;
}

Eigen::MatrixXd adaptive_quad(const MatFn& f, double a, double b, double tol, int depth) {
    if (depth > 30) throw QuadratureError("ray-average quadrature did not converge");
    Eigen::MatrixXd whole = gl_panel(f, a, b);
    double m = 0.5 * (a + b);
    Eigen::MatrixXd halves = gl_panel(f, a, m) + gl_panel(f, m, b);
    if ((whole - halves).cwiseAbs().maxCoeff() <= tol) return halves;
    return adaptive_quad(f, a, m, tol / 2, depth + 1) + adaptive_quad(f, m, b, tol / 2, depth + 1);
}

}  // namespace

Eigen::MatrixXd ray_average(const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& theta, double quad_tol) {
    MatFn integrand = [&](double alpha) -> Eigen::MatrixXd {
        return alpha * f(alpha * theta);
    };
    return adaptive_quad(integrand, 0.0, 1.0, quad_tol, 0);
}

std::vector<PolyExpr> omega_bar_polynomial(const std::vector<PolyExpr>& omega_lower,
                                           const CoordinateChart& chart) {
    std::set<std::string> vars(chart.names.begin(), chart.names.end());
    std::vector<PolyExpr> out;
    out.reserve(omega_lower.size());
    for (const auto& entry : omega_lower) {
        PolyExpr scaled;
        for (int k = 0; k <= entry.degree_in(vars); ++k)
            scaled += entry.homogeneous_part(k, vars) * ComplexRat(Rational(1, k + 2));
        out.push_back(scaled);
    }
    return out;
}

double ConstraintSet::phi(int a, const Eigen::VectorXd& theta, const Eigen::VectorXd& pi) const {
    return pi[a] + omega_bar(theta).row(a).dot(theta);
}

Eigen::MatrixXd ConstraintSet::grad_phi_theta(const Eigen::VectorXd& theta) const {
    Eigen::MatrixXd W = omega_bar(theta);
    auto dW = omega_bar_grad(theta);
    Eigen::MatrixXd G(n, n);  // G(a, j) = d phi_a / d theta^j
    for (int a = 0; a < n; ++a)
        for (int j = 0; j < n; ++j) G(a, j) = W(a, j) + dW[j].row(a).dot(theta);
    return G;
}

Eigen::MatrixXd ConstraintSet::delta(const Eigen::VectorXd& theta) const {
    Eigen::MatrixXd G = grad_phi_theta(theta);
    return G - G.transpose();  // Delta_ab = d_b W_a - d_a W_b with W_a = phi_a - pi_a
}

Eigen::VectorXd ConstraintSet::surface_pi(const Eigen::VectorXd& theta) const {
    return -(omega_bar(theta) * theta);
}

namespace {

/// One-parameter profile of the 2x2 closed form: the ray average of
/// -1/(c0 + Q(alpha theta)) against alpha is -ln(1 + Q/c0)/(2 Q).
struct LogProfile {
    double c0;
    double value(double t) const {  // int_0^1 a / (c0 + t a^2) da
        double s = t / c0;
        if (std::abs(s) < 1e-4) {
            // 1/(2 c0) (1 - s/2 + s^2/3 - ...)
            double sum = 0.0, p = 1.0;
            for (int m = 0; m < 8; ++m) {
                sum += p / (m + 1);
                p *= -s;
            }
            return sum / (2 * c0);
        }
        return std::log1p(s) / (2 * t);
    }
    double deriv(double t) const {
        double s = t / c0;
        if (std::abs(s) < 1e-4) {
            // d/dt of the series above
            double sum = 0.0, p = 1.0;
            for (int m = 1; m < 9; ++m) {
                sum += -p * static_cast<double>(m) / (m + 1);
                p *= -s;
            }
            return sum / (2 * c0 * c0);
        }
        return (t / (c0 + t) - std::log1p(s)) / (2 * t * t);
    }
};

}  // namespace

ConstraintSet build_constraints(const PoissonStructure& P, OmegaBarRoute route, double quad_tol) {
    auto biv = std::make_shared<RealBivector>(P);
    const int n = biv->dim();
    ConstraintSet S;
    S.n = n;

    if (route == OmegaBarRoute::Quadrature) {
        S.omega_bar = [biv, quad_tol](const Eigen::VectorXd& theta) {
            return ray_average([&](const Eigen::VectorXd& t) { return biv->lower(t); }, theta,
                               quad_tol);
        };
        S.omega_bar_grad = [biv, quad_tol, n](const Eigen::VectorXd& theta) {
            std::vector<Eigen::MatrixXd> out;
            out.reserve(n);
            for (int j = 0; j < n; ++j) {
                // d_j int a w(a theta) da = int a^2 (d_j w)(a theta) da
                MatFn integrand = [&](double alpha) -> Eigen::MatrixXd {
                    return alpha * alpha * biv->lower_deriv(alpha * theta, j);
                };
                out.push_back(adaptive_quad(integrand, 0.0, 1.0, quad_tol, 0));
            }
            return out;
        };
        return S;
    }

    // Closed form. Case 1: constant bivector -> omega_bar = lower/2.
    std::set<std::string> vars(P.chart.names.begin(), P.chart.names.end());
    bool all_constant = true;
    for (const auto& e : P.bivector)
        if (e.degree_in(vars) > 0) all_constant = false;

    if (all_constant) {
        Eigen::MatrixXd half = 0.5 * biv->lower(Eigen::VectorXd::Zero(n));
        S.omega_bar = [half](const Eigen::VectorXd&) { return half; };
        S.omega_bar_grad = [n](const Eigen::VectorXd&) {
            return std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(n, n));
        };
        return S;
    }

    // Case 2: 2x2 with omega^{01} = c0 + Q(theta), Q homogeneous quadratic.
    if (n == 2) {
        const PolyExpr& w = P.omega(0, 1);
        PolyExpr w0 = w.homogeneous_part(0, vars);
        PolyExpr w2 = w.homogeneous_part(2, vars);
        if (w0 + w2 == w && !w0.is_zero() && w0.constant_term().is_real()) {
            double c0 = to_double(w0.constant_term().re);
            auto quad = std::make_shared<PolyExpr>(w2);
            auto dquad0 = std::make_shared<PolyExpr>(w2.derivative(P.chart.names[0]));
            auto dquad1 = std::make_shared<PolyExpr>(w2.derivative(P.chart.names[1]));
            auto chart = std::make_shared<CoordinateChart>(P.chart);
            auto eval = [chart](const PolyExpr& p, const Eigen::VectorXd& theta) {
                std::map<std::string, std::complex<double>> pt;
                for (std::size_t j = 0; j < chart->names.size(); ++j)
                    pt[chart->names[j]] = theta[static_cast<int>(j)];
                return p.evaluate(pt).real();
            };
            LogProfile prof{c0};
            S.omega_bar = [quad, eval, prof](const Eigen::VectorXd& theta) {
                double t = eval(*quad, theta);
                double L = prof.value(t);  // ray average of 1/w
                Eigen::MatrixXd W(2, 2);
                W << 0.0, -L, L, 0.0;  // omega_lower = [[0,-1/w],[1/w,0]]
                return W;
            };
            S.omega_bar_grad = [quad, dquad0, dquad1, eval, prof](const Eigen::VectorXd& theta) {
                double t = eval(*quad, theta);
                double dL = prof.deriv(t);
                std::vector<Eigen::MatrixXd> out(2, Eigen::MatrixXd::Zero(2, 2));
                double dt[2] = {eval(*dquad0, theta), eval(*dquad1, theta)};
                for (int j = 0; j < 2; ++j) {
                    out[j](0, 1) = -dL * dt[j];
                    out[j](1, 0) = dL * dt[j];
                }
                return out;
            };
            return S;
        }
    }

    throw ParameterError("no closed-form omega_bar for structure '" + P.name +
                         "'; use the quadrature route");
}

ExtendedFn ExtendedFn::coordinate(int i, int n) {
    ExtendedFn f;
    f.value = [i](const Eigen::VectorXd& theta, const Eigen::VectorXd&) { return theta[i]; };
    f.grad = [i, n](const Eigen::VectorXd&, const Eigen::VectorXd&, Eigen::VectorXd& dtheta,
                    Eigen::VectorXd& dpi) {
        dtheta = Eigen::VectorXd::Zero(n);
        dpi = Eigen::VectorXd::Zero(n);
        dtheta[i] = 1.0;
    };
    return f;
}

ExtendedFn ExtendedFn::momentum(int i, int n) {
    ExtendedFn f;
    f.value = [i](const Eigen::VectorXd&, const Eigen::VectorXd& pi) { return pi[i]; };
    f.grad = [i, n](const Eigen::VectorXd&, const Eigen::VectorXd&, Eigen::VectorXd& dtheta,
                    Eigen::VectorXd& dpi) {
        dtheta = Eigen::VectorXd::Zero(n);
        dpi = Eigen::VectorXd::Zero(n);
        dpi[i] = 1.0;
    };
    return f;
}

double dirac_bracket(const ExtendedFn& A, const ExtendedFn& B, const ConstraintSet& S,
                     const Eigen::VectorXd& theta, const Eigen::VectorXd& pi) {
    const int n = S.n;
    Eigen::VectorXd At(n), Ap(n), Bt(n), Bp(n);
    A.grad(theta, pi, At, Ap);
    B.grad(theta, pi, Bt, Bp);

    double ab = At.dot(Bp) - Ap.dot(Bt);

    Eigen::MatrixXd G = S.grad_phi_theta(theta);  // G(a,j) = d phi_a / d theta^j
    // {A, phi_a} = dA/dtheta^a - dA/dpi . G.row(a)
    Eigen::VectorXd a_phi(n), phi_b(n);
    for (int a = 0; a < n; ++a) {
        a_phi[a] = At[a] - Ap.dot(G.row(a));
        phi_b[a] = -(Bt[a] - Bp.dot(G.row(a)));  // {phi_b, B} = -{B, phi_b}
    }

    Eigen::MatrixXd delta = G - G.transpose();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(delta);
    double scale = std::pow(delta.cwiseAbs().maxCoeff() + 1e-300, n);
    if (std::abs(lu.determinant()) <= 1e-12 * scale)
        throw SingularError("constraint matrix Delta is degenerate at this point");

    return ab - a_phi.dot(lu.solve(phi_b));
}

ReductionReport verify_reduction(const PoissonStructure& P,
                                 const std::vector<Eigen::VectorXd>& points, double tol,
                                 OmegaBarRoute route, double quad_tol) {
    RealBivector biv(P);
    ConstraintSet S = build_constraints(P, route, quad_tol);
    const int n = S.n;

    ReductionReport report;
    report.tol = tol;
    for (const auto& theta : points) {
        Eigen::VectorXd pi = S.surface_pi(theta);
        Eigen::MatrixXd target = biv.upper(theta);
        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                double d = dirac_bracket(ExtendedFn::coordinate(i, n),
                                         ExtendedFn::coordinate(j, n), S, theta, pi);
                err = std::max(err, std::abs(d - target(i, j)));
            }
        }
        report.rows.push_back({theta, err});
        report.max_error = std::max(report.max_error, err);
    }
    report.pass = report.max_error <= tol;
    return report;
}

std::vector<Eigen::VectorXd> admissible_samples(const PoissonStructure& P, int count,
                                                std::mt19937_64& rng, double radius) {
    RealBivector biv(P);
    const int n = biv.dim();
    std::uniform_real_distribution<double> U(-radius, radius);
    std::vector<Eigen::VectorXd> out;
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        if (++guard > 100000) throw ParameterError("could not sample invertible points");
        Eigen::VectorXd theta(n);
        for (int j = 0; j < n; ++j) theta[j] = U(rng);
        bool ok = true;
        for (int s = 1; s <= 20 && ok; ++s) {
            Eigen::MatrixXd M = biv.upper(theta * (s / 20.0));
            double scale = std::pow(M.cwiseAbs().maxCoeff() + 1e-300, n);
            if (std::abs(M.determinant()) < 0.05 * scale) ok = false;
        }
        if (ok) out.push_back(theta);
    }
    return out;
}

}  // namespace qps
