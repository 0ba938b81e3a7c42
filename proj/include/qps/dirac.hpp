#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>
#include <vector>

#include "qps/structure.hpp"

namespace qps {

/// qosc1 rewritten on the real chart (u, v) through b = (u + iv)/sqrt(2):
/// {u, v} = 1 - (u^2 + v^2)/(2 beta). The embedding machinery works on real
/// charts, so the holomorphic oscillator enters through this fixed map.
PoissonStructure real_oscillator_structure(const Beta& beta);

/// Numeric view of a real-chart bivector: values, inverse (lower form) and
/// its exact derivatives at a point.
class RealBivector {
  public:
    explicit RealBivector(const PoissonStructure& P);

    int dim() const { return n_; }
    Eigen::MatrixXd upper(const Eigen::VectorXd& theta) const;
    /// Matrix inverse of upper; throws SingularError when degenerate.
    Eigen::MatrixXd lower(const Eigen::VectorXd& theta) const;
    /// d_j omega_lower = -L (d_j omega_upper) L
    Eigen::MatrixXd lower_deriv(const Eigen::VectorXd& theta, int j) const;

  private:
    double entry(std::size_t j, std::size_t k, const Eigen::VectorXd& theta) const;
    double eval_real(const PolyExpr& p, const Eigen::VectorXd& theta) const;

    PoissonStructure P_;  // owned copy; evaluators may outlive the argument
    int n_;
    std::vector<PolyExpr> dupper_;  // [j * n*n + (a*n+b)] = d_j omega^{ab}
};

/// Ray average int_0^1 da a f(a theta) of a matrix-valued integrand, by
/// adaptive Gauss-Legendre bisection to absolute tolerance quad_tol.
Eigen::MatrixXd ray_average(const std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>& f,
                            const Eigen::VectorXd& theta, double quad_tol);

/// Exact closed form for polynomial lower-index matrices: the homogeneous
/// degree-k component scales by 1/(k+2).
std::vector<PolyExpr> omega_bar_polynomial(const std::vector<PolyExpr>& omega_lower,
                                           const CoordinateChart& chart);

enum class OmegaBarRoute { ClosedForm, Quadrature };

/// Second-class constraint set phi_a = pi_a + omega_bar_aj(theta) theta^j on
/// the doubled phase space with canonical {theta^j, pi_k} = delta.
struct ConstraintSet {
    int n = 0;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> omega_bar;
    /// grad(theta)[j](a,b) = d omega_bar_ab / d theta^j
    std::function<std::vector<Eigen::MatrixXd>(const Eigen::VectorXd&)> omega_bar_grad;

    double phi(int a, const Eigen::VectorXd& theta, const Eigen::VectorXd& pi) const;
    /// d phi_a / d theta as a row; d phi_a / d pi_j = delta_aj.
    Eigen::MatrixXd grad_phi_theta(const Eigen::VectorXd& theta) const;
    /// Delta_ab = {phi_a, phi_b}
    Eigen::MatrixXd delta(const Eigen::VectorXd& theta) const;
    /// pi on the constraint surface at theta.
    Eigen::VectorXd surface_pi(const Eigen::VectorXd& theta) const;
};

ConstraintSet build_constraints(const PoissonStructure& P, OmegaBarRoute route,
                                double quad_tol = 1e-12);

/// Differentiable function on the extended space, given by value + gradient.
struct ExtendedFn {
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> value;
    std::function<void(const Eigen::VectorXd&, const Eigen::VectorXd&, Eigen::VectorXd&,
                       Eigen::VectorXd&)>
        grad;  // fills dtheta, dpi

    static ExtendedFn coordinate(int i, int n);
    static ExtendedFn momentum(int i, int n);
};

double dirac_bracket(const ExtendedFn& A, const ExtendedFn& B, const ConstraintSet& S,
                     const Eigen::VectorXd& theta, const Eigen::VectorXd& pi);

struct ReductionReport {
    struct Row {
        Eigen::VectorXd theta;
        double error;
    };
    std::vector<Row> rows;
    double max_error = 0.0;
    double tol = 0.0;
    bool pass = false;
};

/// Checks {theta^i, theta^j}_D == omega^{ij}(theta) on every sample.
ReductionReport verify_reduction(const PoissonStructure& P,
                                 const std::vector<Eigen::VectorXd>& points, double tol,
                                 OmegaBarRoute route, double quad_tol = 1e-12);

/// Random points in [-radius, radius]^n whose whole ray keeps the bivector
/// comfortably invertible.
std::vector<Eigen::VectorXd> admissible_samples(const PoissonStructure& P, int count,
                                                std::mt19937_64& rng, double radius = 0.8);

}  // namespace qps
