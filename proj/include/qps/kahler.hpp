#pragma once

#include <complex>
#include <vector>

#include "qps/errors.hpp"

namespace qps {

/// n-mode dilogarithm-potential model. For beta > 0 the admissible domain is
/// max_i |z^i|^2 < beta/2; for beta < 0 the whole plane.
struct KahlerModel {
    int n = 1;
    double beta = 1.0;

    void validate() const;
    /// u_i = 2 |z_i|^2 / beta, the natural radial variable of mode i.
    double u(const std::complex<double>& zi) const { return 2.0 * std::norm(zi) / beta; }
    void check_domain(const std::vector<std::complex<double>>& z) const;
};

/// Real-branch Euler dilogarithm, sum_{k>=1} x^k/k^2 for x <= 1.
/// Direct series on [-1/2,1/2]; reflection/Landen/inversion identities move
/// the argument there elsewhere.
double dilog(double x, double tol = 1e-15);

/// phi = (beta/2) sum_i (-Li2(2 z^i z^{i*} / beta))
double potential(const std::vector<std::complex<double>>& z, const KahlerModel& model);

/// Closed-form diagonal metric g_i = -(1 - u_i)^{-1}.
std::vector<double> metric(const std::vector<std::complex<double>>& z, const KahlerModel& model);

/// Mixed second derivatives of the potential by central differences.
std::vector<double> metric_fd(const std::vector<std::complex<double>>& z,
                              const KahlerModel& model, double h = 1e-4);

/// {A,B} = i g^{jbar k} (dA/dz^k dB/dz^{j*} - dA/dz^{j*} dB/dz^k) for the
/// diagonal metric; gradients are supplied at z as (d/dz^i, d/dz^{i*}) pairs.
std::complex<double> bracket_kahler(const std::vector<std::complex<double>>& gradA_z,
                                    const std::vector<std::complex<double>>& gradA_zbar,
                                    const std::vector<std::complex<double>>& gradB_z,
                                    const std::vector<std::complex<double>>& gradB_zbar,
                                    const std::vector<std::complex<double>>& z,
                                    const KahlerModel& model);

/// Closed form: R = sum_i (8/beta) (1 - u_i)^{-1}.
double scalar_curvature_closed(const std::vector<std::complex<double>>& z,
                               const KahlerModel& model);

/// Scalar curvature computed from the metric alone: Ricci_{i ibar} =
/// -d_i d_{ibar} ln|det g| by finite differences, contracted with the inverse
/// metric and doubled (real-manifold normalization). Expected to be a
/// constant multiple of the closed form.
double scalar_curvature_numeric(const std::vector<std::complex<double>>& z,
                                const KahlerModel& model);

/// a_i = z^i prod_{k<i} (1 - u_k)^{1/2}, the mode-coupling map taking the
/// diagonal brackets to the covariant ones.
std::vector<std::complex<double>> mode_coupling(const std::vector<std::complex<double>>& z,
                                                const KahlerModel& model);

struct ModeCouplingJacobian {
    // da[i][j] = d a_i / d z^j, dabar[i][j] = d a_i / d z^{j*}
    std::vector<std::vector<std::complex<double>>> da;
    std::vector<std::vector<std::complex<double>>> dabar;
};

ModeCouplingJacobian mode_coupling_jacobian(const std::vector<std::complex<double>>& z,
                                            const KahlerModel& model);

}  // namespace qps
