#pragma once

#include <complex>

#include "qps/errors.hpp"

namespace qps {

/// g^2(I) = beta (1 - e^{-I/beta}), the squared radial profile of the
/// one-mode action-angle map. Solves dg^2/dI = 1 - g^2/beta, g(0) = 0.
double darboux_action_profile(double action, double beta);

/// Action-angle coordinates for the one-mode deformed bracket: the map
/// (I, phi) -> b = g(I) e^{-i phi} pushes the canonical {phi, I} = 1
/// forward to {b, b*} = -i (1 - b* b / beta).
struct DarbouxMapQOsc1 {
    double beta;

    std::complex<double> b(double action, double phi) const;

    struct Jacobian {
        std::complex<double> db_dI, db_dphi;
        std::complex<double> dbs_dI, dbs_dphi;
    };
    /// Defined for action > 0 (polar-type singularity at the origin).
    Jacobian jacobian(double action, double phi) const;
};

/// Requires beta > 0; the map is defined on 0 <= I, |b|^2 < beta.
DarbouxMapQOsc1 darboux_map_qosc1(double beta);

}  // namespace qps
