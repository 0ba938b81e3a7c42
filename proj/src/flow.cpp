#include "qps/flow.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace qps {

void FlowConfig::validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw ParameterError("flow tolerances must be positive");
    if (!(t_end > 0)) throw ParameterError("t_end must be positive");
    if (sample_count < 2) throw ParameterError("sample_count must be >= 2");
    if (!(max_step > 0)) throw ParameterError("max_step must be positive");
}

std::vector<PolyExpr> hamiltonian_vector_field(const PoissonStructure& P, const PolyExpr& H) {
    std::vector<PolyExpr> field;
    field.reserve(P.dim());
    for (const auto& name : P.chart.names) field.push_back(bracket(PolyExpr::symbol(name), H, P));
    return field;
}

namespace {

/// Flattened polynomial over chart indices for fast repeated evaluation.
struct CompiledPoly {
    struct Term {
        std::complex<double> c;
        std::vector<std::pair<int, int>> powers;  // (index, exponent)
    };
    std::vector<Term> terms;

    static CompiledPoly from(const PolyExpr& p, const CoordinateChart& chart) {
        CompiledPoly out;
        for (const auto& [m, c] : p.terms()) {
            Term t;
            t.c = c.to_complex();
            for (const auto& [s, e] : m) {
                if (s == kBetaInv)
                    throw ParameterError("flow requires numeric beta (symbolic beta_inv found)");
                t.powers.emplace_back(chart.index(s), e);
            }
            out.terms.push_back(std::move(t));
        }
        return out;
    }

    std::complex<double> eval(const std::vector<std::complex<double>>& z) const {
        std::complex<double> total{0.0, 0.0};
        for (const auto& t : terms) {
            std::complex<double> v = t.c;
            for (const auto& [idx, e] : t.powers)
                for (int i = 0; i < e; ++i) v *= z[idx];
            total += v;
        }
        return total;
    }
};

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 35.0 / 384 - 5179.0 / 57600, E3 = 500.0 / 1113 - 7571.0 / 16695,
                 E4 = 125.0 / 192 - 393.0 / 640, E5 = -2187.0 / 6784 + 92097.0 / 339200,
                 E6 = 11.0 / 84 - 187.0 / 2100, E7 = -1.0 / 40;

using State = std::vector<std::complex<double>>;

struct Dopri5 {
    const std::vector<CompiledPoly>& field;
    double rel_tol, abs_tol, max_step;

    void deriv(const State& y, State& dy) const {
        for (std::size_t i = 0; i < field.size(); ++i) dy[i] = field[i].eval(y);
    }

    /// One accepted step from (t, y); h is updated in place with the next
    /// proposed size. k1 holds f(t,y) on entry and f at the new point on exit.
    void step(double& t, State& y, State& k1, double& h, double t_limit) const {
        const std::size_t d = y.size();
        State k2(d), k3(d), k4(d), k5(d), k6(d), k7(d), tmp(d), ynew(d);
        for (;;) {
            if (h > max_step) h = max_step;
            bool clipped = false;
            if (t + h >= t_limit) {
                h = t_limit - t;
                clipped = true;
            }
            for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + h * (A21 * k1[i]);
            deriv(tmp, k2);
            for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + h * (A31 * k1[i] + A32 * k2[i]);
            deriv(tmp, k3);
            for (std::size_t i = 0; i < d; ++i)
                tmp[i] = y[i] + h * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
            deriv(tmp, k4);
            for (std::size_t i = 0; i < d; ++i)
                tmp[i] = y[i] + h * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
            deriv(tmp, k5);
            for (std::size_t i = 0; i < d; ++i)
                tmp[i] = y[i] + h * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] +
                                     A65 * k5[i]);
            deriv(tmp, k6);
            for (std::size_t i = 0; i < d; ++i)
                ynew[i] = y[i] +
                          h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
            deriv(ynew, k7);

            double err = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                std::complex<double> e =
                    h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                         E7 * k7[i]);
                double scale =
                    abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                double m = std::abs(e) / scale;
                err += m * m;
            }
            err = std::sqrt(err / static_cast<double>(d));

            if (!std::isfinite(err)) {
                h *= 0.1;
                if (h < 1e-14 * std::max(1.0, std::abs(t)))
                    throw IntegrationError("state left the finite range (blow-up)", t, y);
                continue;
            }
            if (err <= 1.0) {
                t = clipped ? t_limit : t + h;
                y.swap(ynew);
                k1.swap(k7);
                double f = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
                h *= std::clamp(f, 0.2, 5.0);
                return;
            }
            double f = 0.9 * std::pow(err, -0.2);
            h *= std::clamp(f, 0.1, 1.0);
            if (h < 1e-14 * std::max(1.0, std::abs(t)))
                throw IntegrationError("step size underflow (singular or stiff trajectory)", t, y);
        }
    }
};

}  // namespace

Trajectory integrate(const PoissonStructure& P, const PolyExpr& H,
                     const std::vector<std::complex<double>>& start, const FlowConfig& cfg) {
    cfg.validate();
    const std::size_t d = P.dim();
    if (start.size() != d) throw SizeError("start vector size does not match chart dimension");

    if (P.chart.kind == ChartKind::Holomorphic) {
        for (std::size_t j = 0; j < d; ++j) {
            const auto& partner = P.chart.partner(P.chart.names[j]);
            std::size_t k = static_cast<std::size_t>(P.chart.index(partner));
            double defect = std::abs(start[k] - std::conj(start[j]));
            if (defect > 1e-9 * (1.0 + std::abs(start[j])))
                throw DomainError("holomorphic start must satisfy z* = conj(z) (symbol " +
                                  P.chart.names[j] + ")");
        }
    }

    auto field_polys = hamiltonian_vector_field(P, H);
    std::vector<CompiledPoly> field;
    field.reserve(d);
    for (const auto& f : field_polys) field.push_back(CompiledPoly::from(f, P.chart));
    CompiledPoly energy = CompiledPoly::from(H, P.chart);
    std::vector<CompiledPoly> casimirs;
    for (const auto& C : P.casimirs) casimirs.push_back(CompiledPoly::from(C, P.chart));

    Trajectory traj;
    traj.symbols = P.chart.names;
    traj.monitors["energy_drift"] = {};
    for (std::size_t c = 0; c < casimirs.size(); ++c)
        traj.monitors["casimir" + std::to_string(c) + "_drift"] = {};
    if (P.chart.kind == ChartKind::Holomorphic) traj.monitors["conj_defect"] = {};

    const std::complex<double> H0 = energy.eval(start);
    std::vector<std::complex<double>> C0(casimirs.size());
    for (std::size_t c = 0; c < casimirs.size(); ++c) C0[c] = casimirs[c].eval(start);

    auto record = [&](double t, const std::vector<std::complex<double>>& y) {
        traj.times.push_back(t);
        traj.points.push_back(y);
        double hd = std::abs(energy.eval(y) - H0) / std::max(1.0, std::abs(H0));
        traj.monitors["energy_drift"].push_back(hd);
        for (std::size_t c = 0; c < casimirs.size(); ++c) {
            double cd = std::abs(casimirs[c].eval(y) - C0[c]) / std::max(1.0, std::abs(C0[c]));
            traj.monitors["casimir" + std::to_string(c) + "_drift"].push_back(cd);
        }
        if (P.chart.kind == ChartKind::Holomorphic) {
            double defect = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                std::size_t k =
                    static_cast<std::size_t>(P.chart.index(P.chart.partner(P.chart.names[j])));
                defect = std::max(defect, std::abs(y[k] - std::conj(y[j])));
            }
            traj.monitors["conj_defect"].push_back(defect);
        }
    };

    Dopri5 stepper{field, cfg.rel_tol, cfg.abs_tol, cfg.max_step};
    std::vector<std::complex<double>> y = start;
    State k1(d);
    stepper.deriv(y, k1);
    double t = 0.0;
    double h = std::min({cfg.max_step, cfg.t_end / 100.0, 1e-2});

    record(0.0, y);
    for (int s = 1; s < cfg.sample_count; ++s) {
        double target = cfg.t_end * static_cast<double>(s) / (cfg.sample_count - 1);
        while (t < target) stepper.step(t, y, k1, h, target);
        record(target, y);
    }
    return traj;
}

std::complex<double> analytic_qoscillator(std::complex<double> b0, double omega, double beta,
                                          double t) {
    double energy = omega * std::norm(b0);
    double freq = omega * (1.0 - energy / (omega * beta));
    return b0 * std::polar(1.0, -freq * t);
}

double analytic_qparticle(double x0, double p0, double beta, double t) {
    double gamma = p0 * p0 / beta;
    if (gamma == 0.0) return x0 + p0 * t;
    return (x0 + p0 / gamma) * std::exp(gamma * t) - p0 / gamma;
}

double measure_angular_frequency(const Trajectory& traj, const std::string& symbol) {
    auto it = std::find(traj.symbols.begin(), traj.symbols.end(), symbol);
    if (it == traj.symbols.end()) throw SymbolError("symbol not in trajectory: " + symbol);
    std::size_t col = static_cast<std::size_t>(it - traj.symbols.begin());

    std::vector<double> phase(traj.times.size());
    double offset = 0.0;
    double prev = std::arg(traj.points[0][col]);
    phase[0] = prev;
    for (std::size_t k = 1; k < traj.times.size(); ++k) {
        double a = std::arg(traj.points[k][col]);
        double da = a - prev;
        while (da > M_PI) da -= 2 * M_PI;
        while (da < -M_PI) da += 2 * M_PI;
        offset += da;
        prev = a;
        phase[k] = phase[0] + offset;
    }
    // least-squares slope of unwrapped phase
    double n = static_cast<double>(traj.times.size());
    double st = 0, sp = 0, stt = 0, stp = 0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        st += traj.times[k];
        sp += phase[k];
        stt += traj.times[k] * traj.times[k];
        stp += traj.times[k] * phase[k];
    }
    double slope = (n * stp - st * sp) / (n * stt - st * st);
    return -slope;
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open for writing: " + path);
    os.precision(17);
    os << "time";
    for (const auto& s : traj.symbols) os << ",re_" << s << ",im_" << s;
    for (const auto& [name, series] : traj.monitors) os << "," << name;
    os << "\n";
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        os << traj.times[k];
        for (std::size_t j = 0; j < traj.symbols.size(); ++j)
            os << "," << traj.points[k][j].real() << "," << traj.points[k][j].imag();
        for (const auto& [name, series] : traj.monitors) os << "," << series[k];
        os << "\n";
    }
}

}  // namespace qps
