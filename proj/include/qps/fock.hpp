#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qps/errors.hpp"

namespace qps {

/// [n]_q = (1 - q^{2n})/(1 - q^2), computed by the recursion
/// [n] = 1 + q^2 [n-1]; collapses to n at q = 1.
double q_bracket(int n, double q_squared);

struct FockPair {
    Eigen::MatrixXcd destroy;  // b
    Eigen::MatrixXcd create;   // b+ = conjugate transpose of b
};

/// One-mode truncated ladder pair with b|n> = sqrt(hbar [n]) |n-1>.
FockPair qoscillator_ops(int trunc, double hbar, double q);

struct MultimodeOps {
    int modes = 1;
    int trunc = 2;
    double hbar = 1.0;
    double q = 1.0;
    std::vector<Eigen::MatrixXcd> a, adag;
};

/// n-mode operators a_i = (prod_{k<i} q^{N_k}) (x) b_i (x) 1, tensor order
/// mode-major. The diagonal dressing makes the covariant relations hold; the
/// construction is gated by its own residual suite and throws
/// ConstructionError if the dressing conjecture fails. `dressed = false`
/// builds the undressed (independent-modes) negative control, ungated.
MultimodeOps multimode_ops(int modes, int trunc, double hbar, double q, bool dressed = true);

enum class Algebra { Eq1, Eq9_11 };

/// Per-relation max |LHS - RHS| entry restricted to the interior subspace
/// (every mode occupation <= trunc-2); the truncation edge is excluded.
struct ResidualReport {
    struct Row {
        std::string relation;
        double max_abs;
    };
    std::vector<Row> rows;
    double max_abs() const;
};

ResidualReport relation_residuals(const MultimodeOps& ops, Algebra algebra);

/// Flat indices of the interior subspace.
std::vector<int> interior_indices(int modes, int trunc);

struct LimitRow {
    double hbar;
    int level;       // n = round(I / hbar)
    double value;    // <n| b+ b |n> = hbar [n]
    double target;   // beta (1 - e^{-I/beta})
    double error;
};

/// Spectral scan of the hbar -> 0 limit with the tie 1 - q^2 = hbar/beta.
std::vector<LimitRow> classical_limit_scan(double beta, double action,
                                           const std::vector<double>& hbars);

}  // namespace qps
