#include "qps/fock.hpp"

#include <cmath>

namespace qps {

double q_bracket(int n, double q_squared) {
    double v = 0.0;
    for (int k = 0; k < n; ++k) v = 1.0 + q_squared * v;
    return v;
}

FockPair qoscillator_ops(int trunc, double hbar, double q) {
    if (trunc < 2) throw SizeError("truncation level must be >= 2");
    if (!(hbar > 0)) throw ParameterError("hbar must be positive");
    FockPair ops;
    ops.destroy = Eigen::MatrixXcd::Zero(trunc, trunc);
    double q2 = q * q;
    for (int n = 1; n < trunc; ++n)
        ops.destroy(n - 1, n) = std::sqrt(hbar * q_bracket(n, q2));
    ops.create = ops.destroy.adjoint();
    return ops;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    Eigen::MatrixXcd out(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return out;
}

Eigen::MatrixXcd dressing_diag(int trunc, double q) {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(trunc, trunc);
    double v = 1.0;
    for (int n = 0; n < trunc; ++n) {
        D(n, n) = v;
        v *= q;
    }
    return D;  // q^N
}

double interior_max_abs(const Eigen::MatrixXcd& M, const std::vector<int>& interior) {
    double m = 0.0;
    for (int r : interior)
        for (int c : interior) m = std::max(m, std::abs(M(r, c)));
    return m;
}

}  // namespace

std::vector<int> interior_indices(int modes, int trunc) {
    std::vector<int> out;
    int total = 1;
    for (int k = 0; k < modes; ++k) total *= trunc;
    for (int idx = 0; idx < total; ++idx) {
        int rest = idx;
        bool inside = true;
        for (int k = 0; k < modes; ++k) {
            int digit = rest % trunc;
            rest /= trunc;
            if (digit > trunc - 2) inside = false;
        }
        if (inside) out.push_back(idx);
    }
    return out;
}

MultimodeOps multimode_ops(int modes, int trunc, double hbar, double q, bool dressed) {
    if (modes < 1) throw SizeError("mode count must be >= 1");
    FockPair one = qoscillator_ops(trunc, hbar, q);
    Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(trunc, trunc);
    Eigen::MatrixXcd D = dressed ? dressing_diag(trunc, q) : eye;

    MultimodeOps ops;
    ops.modes = modes;
    ops.trunc = trunc;
    ops.hbar = hbar;
    ops.q = q;
    for (int i = 0; i < modes; ++i) {
        Eigen::MatrixXcd A(1, 1);
        A(0, 0) = 1.0;
        for (int k = 0; k < modes; ++k) {
            const Eigen::MatrixXcd& factor = (k < i) ? D : (k == i ? one.destroy : eye);
            A = kron(A, factor);
        }
        ops.a.push_back(A);
        ops.adag.push_back(A.adjoint());
    }

    if (dressed && modes > 1) {
        ResidualReport gate = relation_residuals(ops, Algebra::Eq9_11);
        if (gate.max_abs() > 1e-12)
            throw ConstructionError("dressing conjecture failed the residual gate at relation " +
                                    gate.rows[0].relation);
    }
    return ops;
}

double ResidualReport::max_abs() const {
    double m = 0.0;
    for (const auto& r : rows) m = std::max(m, r.max_abs);
    return m;
}

ResidualReport relation_residuals(const MultimodeOps& ops, Algebra algebra) {
    const int m = ops.modes;
    const double q = ops.q;
    auto interior = interior_indices(m, ops.trunc);
    const Eigen::MatrixXcd eye =
        Eigen::MatrixXcd::Identity(ops.a[0].rows(), ops.a[0].cols());

    ResidualReport report;
    auto push = [&](const std::string& name, const Eigen::MatrixXcd& residual) {
        report.rows.push_back({name, interior_max_abs(residual, interior)});
    };

    if (algebra == Algebra::Eq1) {
        if (m != 1) throw SizeError("eq1 residuals expect a single mode");
        const auto& b = ops.a[0];
        const auto& bd = ops.adag[0];
        push("bb+ - q^2 b+b = hbar", b * bd - q * q * bd * b - ops.hbar * eye);
        return report;
    }

    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            std::string ij = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            push("a_i a_j = q a_j a_i " + ij, ops.a[i] * ops.a[j] - q * ops.a[j] * ops.a[i]);
            push("a+_i a+_j = (1/q) a+_j a+_i " + ij,
                 ops.adag[i] * ops.adag[j] - (1.0 / q) * ops.adag[j] * ops.adag[i]);
        }
        for (int j = 0; j < m; ++j) {
            if (j == i) continue;
            std::string ij = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
            push("a_i a+_j = q a+_j a_i " + ij,
                 ops.a[i] * ops.adag[j] - q * ops.adag[j] * ops.a[i]);
        }
        Eigen::MatrixXcd rhs = ops.hbar * eye;
        for (int k = 0; k < i; ++k) rhs += (q * q - 1.0) * ops.adag[k] * ops.a[k];
        push("a_i a+_i - q^2 a+_i a_i = hbar + (q^2-1) sum (" + std::to_string(i + 1) + ")",
             ops.a[i] * ops.adag[i] - q * q * ops.adag[i] * ops.a[i] - rhs);
    }
    return report;
}

std::vector<LimitRow> classical_limit_scan(double beta, double action,
                                           const std::vector<double>& hbars) {
    if (!(beta > 0)) throw ParameterError("classical limit scan requires beta > 0");
    if (action < 0) throw ParameterError("action must be nonnegative");
    double target = beta * (-std::expm1(-action / beta));
    std::vector<LimitRow> rows;
    for (double hbar : hbars) {
        if (!(hbar > 0) || hbar >= beta)
            throw ParameterError("need 0 < hbar < beta for the classical limit tie");
        double q2 = 1.0 - hbar / beta;
        int level = static_cast<int>(std::llround(action / hbar));
        double value = hbar * q_bracket(level, q2);
        rows.push_back({hbar, level, value, target, std::abs(value - target)});
    }
    return rows;
}

}  // namespace qps
