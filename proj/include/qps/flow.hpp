#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "qps/structure.hpp"

namespace qps {

struct FlowConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 1e30;
    double t_end = 1.0;
    int sample_count = 200;

    void validate() const;
};

/// Time grid, phase points and monitor channels from one flow run.
struct Trajectory {
    std::vector<std::string> symbols;  // chart names, column order
    std::vector<double> times;
    std::vector<std::vector<std::complex<double>>> points;
    // "energy_drift", "casimir<k>_drift", "conj_defect" -> series
    std::map<std::string, std::vector<double>> monitors;
};

struct IntegrationError : Error {
    IntegrationError(const std::string& msg, double t, std::vector<std::complex<double>> state)
        : Error(msg), last_time(t), last_state(std::move(state)) {}
    double last_time;
    std::vector<std::complex<double>> last_state;
};

/// Component i is bracket(theta^i, H), exact.
std::vector<PolyExpr> hamiltonian_vector_field(const PoissonStructure& P, const PolyExpr& H);

/// Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) sampled on a uniform
/// grid of cfg.sample_count times. `start` is ordered like P.chart.names.
/// Requires numeric beta. Holomorphic starts must satisfy z* = conj(z).
Trajectory integrate(const PoissonStructure& P, const PolyExpr& H,
                     const std::vector<std::complex<double>>& start, const FlowConfig& cfg);

/// b(t) = b0 exp(-i omega (1 - E/(omega beta)) t), E = omega |b0|^2.
std::complex<double> analytic_qoscillator(std::complex<double> b0, double omega, double beta,
                                          double t);

/// x(t) = (x0 + p0/gamma) e^{gamma t} - p0/gamma with gamma = p0^2/beta;
/// gamma = 0 degenerates to free motion x0 + p0 t. p(t) = p0 throughout.
double analytic_qparticle(double x0, double p0, double beta, double t);

/// Angular frequency of the phase rotation of one complex column, extracted
/// by phase unwrapping and a least-squares slope; positive for b ~ e^{-i w t}.
double measure_angular_frequency(const Trajectory& traj, const std::string& symbol);

/// Header: time, re/im per symbol, one column per monitor.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace qps
