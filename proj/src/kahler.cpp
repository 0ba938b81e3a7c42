#include "qps/kahler.hpp"

#include <cmath>

namespace qps {

namespace {
constexpr double kPi2_6 = 1.6449340668482264;  // pi^2/6
constexpr double kSingularTol = 1e-12;
}  // namespace

void KahlerModel::validate() const {
    if (n < 1) throw ParameterError("mode count must be >= 1");
    if (beta == 0.0) throw ParameterError("beta must be nonzero");
}

void KahlerModel::check_domain(const std::vector<std::complex<double>>& z) const {
    validate();
    if (static_cast<int>(z.size()) != n) throw SizeError("point dimension does not match mode count");
    if (beta > 0)
        for (const auto& zi : z)
            if (!(std::norm(zi) < beta / 2))
                throw DomainError("|z|^2 must stay below beta/2");
}

double dilog(double x, double tol) {
    if (!(tol > 0)) throw ParameterError("dilog tolerance must be positive");
    if (x > 1.0) throw DomainError("dilog real branch requires x <= 1");
    if (x == 1.0) return kPi2_6;
    if (x < -1.0) {
        double l = std::log(-x);
        return -kPi2_6 - 0.5 * l * l - dilog(1.0 / x, tol);
    }
    if (x < -0.5) {
        double l = std::log1p(-x);
        return -0.5 * l * l - dilog(x / (x - 1.0), tol);
    }
    if (x > 0.5) {
        // Li2(x) + Li2(1-x) = pi^2/6 - ln x ln(1-x)
        return kPi2_6 - std::log(x) * std::log1p(-x) - dilog(1.0 - x, tol);
    }
    double sum = 0.0;
    double power = x;
    for (int k = 1; k < 2000; ++k) {
        sum += power / (static_cast<double>(k) * k);
        power *= x;
        if (2.0 * std::abs(power) < tol) break;  // geometric tail bound, |x| <= 1/2
    }
    return sum;
}

double potential(const std::vector<std::complex<double>>& z, const KahlerModel& model) {
    model.check_domain(z);
    double phi = 0.0;
    for (const auto& zi : z) phi += -dilog(model.u(zi));
    return 0.5 * model.beta * phi;
}

std::vector<double> metric(const std::vector<std::complex<double>>& z, const KahlerModel& model) {
    model.check_domain(z);
    std::vector<double> g(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        double one_minus_u = 1.0 - model.u(z[i]);
        if (std::abs(one_minus_u) < kSingularTol)
            throw SingularError("metric singular at |z|^2 = beta/2");
        g[i] = -1.0 / one_minus_u;
    }
    return g;
}

std::vector<double> metric_fd(const std::vector<std::complex<double>>& z,
                              const KahlerModel& model, double h) {
    model.check_domain(z);
    std::vector<double> g(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        auto shifted = [&](double dx, double dy) {
            auto w = z;
            w[i] += std::complex<double>(dx, dy);
            return potential(w, model);
        };
        double f0 = potential(z, model);
        double fxx = (shifted(h, 0) - 2 * f0 + shifted(-h, 0)) / (h * h);
        double fyy = (shifted(0, h) - 2 * f0 + shifted(0, -h)) / (h * h);
        // d^2/dz dz* = (1/4)(d^2/dx^2 + d^2/dy^2) on a function of one mode
        g[i] = 0.25 * (fxx + fyy);
    }
    return g;
}

std::complex<double> bracket_kahler(const std::vector<std::complex<double>>& gradA_z,
                                    const std::vector<std::complex<double>>& gradA_zbar,
                                    const std::vector<std::complex<double>>& gradB_z,
                                    const std::vector<std::complex<double>>& gradB_zbar,
                                    const std::vector<std::complex<double>>& z,
                                    const KahlerModel& model) {
    auto g = metric(z, model);
    if (gradA_z.size() != z.size() || gradA_zbar.size() != z.size() ||
        gradB_z.size() != z.size() || gradB_zbar.size() != z.size())
        throw SizeError("gradient dimension does not match point");
    std::complex<double> out{0.0, 0.0};
    const std::complex<double> I{0.0, 1.0};
    for (std::size_t j = 0; j < z.size(); ++j) {
        double ginv = 1.0 / g[j];
        out += I * ginv * (gradA_z[j] * gradB_zbar[j] - gradA_zbar[j] * gradB_z[j]);
    }
    return out;
}

double scalar_curvature_closed(const std::vector<std::complex<double>>& z,
                              const KahlerModel& model) {
    model.check_domain(z);
    double r = 0.0;
    for (const auto& zi : z) {
        double one_minus_u = 1.0 - model.u(zi);
        if (std::abs(one_minus_u) < kSingularTol)
            throw SingularError("curvature singular at |z|^2 = beta/2");
        r += (8.0 / model.beta) / one_minus_u;
    }
    return r;
}

double scalar_curvature_numeric(const std::vector<std::complex<double>>& z,
                             const KahlerModel& model) {
    auto g = metric(z, model);
    auto log_det = [&](const std::vector<std::complex<double>>& w) {
        double s = 0.0;
        for (const auto& gi : metric(w, model)) s += std::log(std::abs(gi));
        return s;
    };
    double r = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        // step from the local scale: distance to the singular circle over the
        // gradient magnitude of u
        double grad_u = 4.0 * std::abs(z[i]) / std::abs(model.beta);
        double hi = 3e-3 * std::abs(1.0 - model.u(z[i])) / std::max(1.0, grad_u);
        auto at = [&](double dx, double dy) {
            auto w = z;
            w[i] += std::complex<double>(dx, dy);
            return log_det(w);
        };
        // fourth-order second-derivative stencils in x and y of mode i
        double f0 = at(0, 0);
        double fxx = (-at(2 * hi, 0) + 16 * at(hi, 0) - 30 * f0 + 16 * at(-hi, 0) -
                      at(-2 * hi, 0)) /
                     (12 * hi * hi);
        double fyy = (-at(0, 2 * hi) + 16 * at(0, hi) - 30 * f0 + 16 * at(0, -hi) -
                      at(0, -2 * hi)) /
                     (12 * hi * hi);
        double ricci = -0.25 * (fxx + fyy);  // -d_i d_{ibar} ln|det g|
        r += 2.0 * ricci / g[i];             // doubled: real-manifold normalization
    }
    return r;
}

std::vector<std::complex<double>> mode_coupling(const std::vector<std::complex<double>>& z,
                                                const KahlerModel& model) {
    model.check_domain(z);
    std::vector<std::complex<double>> a(z.size());
    double prod = 1.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        a[i] = z[i] * std::sqrt(prod);
        double radicand = 1.0 - model.u(z[i]);
        if (radicand < 0) throw DomainError("mode-coupling radicand negative");
        prod *= radicand;
    }
    return a;
}

ModeCouplingJacobian mode_coupling_jacobian(const std::vector<std::complex<double>>& z,
                                            const KahlerModel& model) {
    auto a = mode_coupling(z, model);
    const std::size_t n = z.size();
    ModeCouplingJacobian J;
    J.da.assign(n, std::vector<std::complex<double>>(n, {0.0, 0.0}));
    J.dabar.assign(n, std::vector<std::complex<double>>(n, {0.0, 0.0}));
    std::vector<double> prefix(n, 1.0);  // prod_{k<i} (1 - u_k)
    for (std::size_t i = 1; i < n; ++i) prefix[i] = prefix[i - 1] * (1.0 - model.u(z[i - 1]));
    for (std::size_t i = 0; i < n; ++i) {
        J.da[i][i] = std::sqrt(prefix[i]);
        for (std::size_t j = 0; j < i; ++j) {
            // d/dz^j of (1-u_j)^{1/2}: factor -(z^{j*}/beta)/(1-u_j) on a_i
            double denom = 1.0 - model.u(z[j]);
            J.da[i][j] = a[i] * (-std::conj(z[j]) / model.beta) / denom;
            J.dabar[i][j] = a[i] * (-z[j] / model.beta) / denom;
        }
    }
    return J;
}

}  // namespace qps
