#include "qps/darboux.hpp"

#include <cmath>

namespace qps {

double darboux_action_profile(double action, double beta) {
    if (action < 0) throw DomainError("action must be nonnegative");
    // -expm1 keeps full precision for small I/beta
    return beta * (-std::expm1(-action / beta));
}

DarbouxMapQOsc1 darboux_map_qosc1(double beta) {
    if (!(beta > 0)) throw ParameterError("darboux map requires beta > 0");
    return DarbouxMapQOsc1{beta};
}

std::complex<double> DarbouxMapQOsc1::b(double action, double phi) const {
    double g = std::sqrt(darboux_action_profile(action, beta));
    return std::polar(g, -phi);
}

DarbouxMapQOsc1::Jacobian DarbouxMapQOsc1::jacobian(double action, double phi) const {
    if (!(action > 0)) throw DomainError("jacobian undefined at the action-angle origin");
    double g = std::sqrt(darboux_action_profile(action, beta));
    double gp = std::exp(-action / beta) / (2.0 * g);  // 2 g g' = e^{-I/beta}
    std::complex<double> em = std::polar(1.0, -phi);
    std::complex<double> ep = std::conj(em);
    Jacobian J;
    J.db_dI = gp * em;
    J.db_dphi = std::complex<double>(0, -1) * g * em;
    J.dbs_dI = gp * ep;
    J.dbs_dphi = std::complex<double>(0, 1) * g * ep;
    return J;
}

}  // namespace qps
