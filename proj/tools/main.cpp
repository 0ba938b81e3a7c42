// qps - quadratic Poisson structures toolkit
//
// Subcommands: verify-jacobi, flow, kahler, dirac verify, ncalg check,
// fock residuals, fock limit. Every subcommand emits a JSON report
// (stdout or --report FILE) with a fixed key order so that runs with the
// same seed are byte-identical apart from the timestamp line.

#include <CLI11.hpp>
#include <chrono>
#include <complex>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>

#include "qps/darboux.hpp"
#include "qps/dirac.hpp"
#include "qps/expr.hpp"
#include "qps/flow.hpp"
#include "qps/fock.hpp"
#include "qps/kahler.hpp"
#include "qps/ncalg.hpp"
#include "qps/serialize.hpp"

using nlohmann::ordered_json;
using namespace qps;

namespace {

struct Report {
    ordered_json doc;
    double max_error = 0.0;
    bool all_pass = true;

    Report(const std::string& command, ordered_json params, std::uint64_t seed) {
        doc["command"] = command;
        doc["params"] = std::move(params);
        doc["seed"] = seed;
        doc["checks"] = ordered_json::array();
    }

    /// pass means value <= tol unless inverted (negative controls).
    void check(const std::string& name, double value, double tol, bool invert = false) {
        bool pass = invert ? value > tol : value <= tol;
        doc["checks"].push_back(
            {{"name", name}, {"value", value}, {"tol", tol}, {"pass", pass}});
        if (!invert) max_error = std::max(max_error, value);
        all_pass = all_pass && pass;
    }

    int finish(const std::string& path) {
        doc["max_error"] = max_error;
        doc["verdict"] = all_pass ? "pass" : "fail";
        auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
        doc["timestamp"] = buf;
        std::string text = doc.dump(2) + "\n";
        if (path.empty()) {
            std::cout << text;
        } else {
            std::ofstream os(path);
            os << text;
        }
        return all_pass ? 0 : 1;
    }
};

Beta parse_beta(const std::string& text) {
    if (text == "symbolic") return Beta::symbolic();
    return Beta::value(parse_rational(text));
}

PoissonStructure structure_by_name(const std::string& name, int n, const Beta& beta) {
    if (std::filesystem::exists(name)) return load_structure_file(name);
    return builtin(builtin_from_name(name), n, beta);
}

std::complex<double> parse_complex(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) return {std::stod(text), 0.0};
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

int count_nonzero(const std::vector<PolyExpr>& polys) {
    int k = 0;
    for (const auto& p : polys)
        if (!p.is_zero()) ++k;
    return k;
}

// ---------------------------------------------------------------- verify-jacobi

struct JacobiArgs {
    std::string structure;
    int n = 1;
    std::string beta = "symbolic";
    std::string report;
};

int run_verify_jacobi(const JacobiArgs& a) {
    auto P = structure_by_name(a.structure, a.n, parse_beta(a.beta));
    Report rep("verify-jacobi",
               {{"structure", a.structure}, {"n", a.n}, {"beta", a.beta}}, 0);
    rep.check("antisymmetry residuals (count nonzero)",
              count_nonzero(P.antisymmetry_residual()), 0);
    rep.check("jacobi residuals (count nonzero)", count_nonzero(jacobi_residual(P)), 0);
    for (std::size_t c = 0; c < P.casimirs.size(); ++c)
        rep.check("casimir " + std::to_string(c) + " commutes with all coordinates",
                  casimir_check(P, P.casimirs[c]) ? 0.0 : 1.0, 0);
    return rep.finish(a.report);
}

// -------------------------------------------------------------------------- flow

struct FlowArgs {
    std::string structure;
    int n = 1;
    std::string beta = "1";
    std::string hamiltonian;
    std::string b0, init;
    double x0 = 0.0, p0 = 0.0;
    bool have_x0 = false, have_p0 = false;
    double t_end = 10.0;
    int samples = 400;
    double rel_tol = 1e-10, abs_tol = 1e-12, drift_tol = 1e-9;
    std::string out_csv, traj_json, report;
};

int run_flow(const FlowArgs& a) {
    auto P = structure_by_name(a.structure, a.n, parse_beta(a.beta));
    PolyExpr H = parse_poly(a.hamiltonian);

    std::vector<std::complex<double>> start(P.dim(), std::complex<double>(0.0, 0.0));
    if (!a.b0.empty()) {
        auto b0 = parse_complex(a.b0);
        start[P.chart.index("b")] = b0;
        start[P.chart.index("b*")] = std::conj(b0);
    }
    if (a.have_x0) start[P.chart.index("x")] = a.x0;
    if (a.have_p0) start[P.chart.index("p")] = a.p0;
    if (!a.init.empty()) {
        std::stringstream ss(a.init);
        for (std::string item; std::getline(ss, item, ';');) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw ParameterError("bad --init entry: " + item);
            std::string name = item.substr(0, eq);
            start[P.chart.index(name)] = parse_complex(item.substr(eq + 1));
            // keep conjugate partners in sync unless the caller sets them too
            const auto& partner = P.chart.partner(name);
            if (partner != name && a.init.find(partner + "=") == std::string::npos)
                start[P.chart.index(partner)] = std::conj(start[P.chart.index(name)]);
        }
    }

    FlowConfig cfg;
    cfg.rel_tol = a.rel_tol;
    cfg.abs_tol = a.abs_tol;
    cfg.t_end = a.t_end;
    cfg.sample_count = a.samples;
    auto traj = integrate(P, H, start, cfg);

    if (!a.out_csv.empty()) write_trajectory_csv(traj, a.out_csv);
    if (!a.traj_json.empty()) {
        ordered_json meta;
        meta["structure"] = P.name;
        meta["beta"] = a.beta;
        meta["H"] = a.hamiltonian;
        meta["rel_tol"] = a.rel_tol;
        meta["abs_tol"] = a.abs_tol;
        meta["trajectory"] = trajectory_to_json(traj);
        std::ofstream os(a.traj_json);
        os << meta.dump(2) << "\n";
    }

    Report rep("flow",
               {{"structure", a.structure},
                {"beta", a.beta},
                {"H", a.hamiltonian},
                {"t", a.t_end},
                {"samples", a.samples}},
               0);
    for (const auto& [name, series] : traj.monitors) {
        double worst = 0.0;
        for (double v : series) worst = std::max(worst, v);
        rep.check("monitor " + name + " stays small", worst, a.drift_tol);
    }
    if (P.name == "qosc1") {
        double freq = measure_angular_frequency(traj, "b");
        double energy = std::norm(start[P.chart.index("b")]);
        double expect = 1.0 - energy / to_double(P.beta.numeric());
        rep.check("angular frequency matches 1 - E/beta (relative)",
                  std::abs(freq - expect) / std::abs(expect), 1e-6);
        rep.doc["frequency"] = {{"measured", freq}, {"expected", expect}};
    }
    return rep.finish(a.report);
}

// ------------------------------------------------------------------------ kahler

struct KahlerArgs {
    double beta = 1.0;
    int n = 1;
    std::string grid;  // r0:r1:steps
    std::string point; // "re,im;re,im"
    std::uint64_t seed = 0;
    std::string out_csv, report;
};

int run_kahler(const KahlerArgs& a) {
    KahlerModel model{a.n, a.beta};
    model.validate();

    if (!a.grid.empty()) {
        double r0, r1;
        int steps;
        if (std::sscanf(a.grid.c_str(), "%lf:%lf:%d", &r0, &r1, &steps) != 3 || steps < 1)
            throw ParameterError("--grid expects r0:r1:steps");
        std::ofstream os(a.out_csv.empty() ? "kahler_grid.csv" : a.out_csv);
        os.precision(17);
        os << "r,u,potential,metric,metric_fd,R_closed,R_numeric\n";
        for (int s = 0; s <= steps; ++s) {
            double r = r0 + (r1 - r0) * s / steps;
            std::vector<std::complex<double>> z(a.n, {0.0, 0.0});
            z[0] = r;
            os << r << "," << model.u(z[0]) << "," << potential(z, model) << ","
               << metric(z, model)[0] << "," << metric_fd(z, model)[0] << ","
               << scalar_curvature_closed(z, model) << "," << scalar_curvature_numeric(z, model)
               << "\n";
        }
    }

    Report rep("kahler",
               {{"beta", a.beta}, {"n", a.n}, {"grid", a.grid}, {"point", a.point}}, a.seed);

    if (!a.point.empty()) {
        std::vector<std::complex<double>> z;
        std::stringstream ss(a.point);
        for (std::string item; std::getline(ss, item, ';');) z.push_back(parse_complex(item));
        if (static_cast<int>(z.size()) != a.n) throw ParameterError("--point arity mismatch");
        ordered_json q;
        q["potential"] = potential(z, model);
        q["metric"] = metric(z, model);
        q["metric_fd"] = metric_fd(z, model);
        q["curvature_closed"] = scalar_curvature_closed(z, model);
        q["curvature_numeric"] = scalar_curvature_numeric(z, model);
        ordered_json modes = ordered_json::array();
        for (const auto& ai : mode_coupling(z, model))
            modes.push_back(ordered_json::array({ai.real(), ai.imag()}));
        q["mode_coupling"] = modes;
        rep.doc["query"] = q;
    }

    // seeded consistency panel
    std::mt19937_64 rng(a.seed);
    double rmax = a.beta > 0 ? 0.85 * std::sqrt(a.beta / 2) : 1.5;
    std::uniform_real_distribution<double> U(-rmax, rmax);
    auto sample = [&] {
        std::vector<std::complex<double>> z(a.n);
        for (auto& zi : z)
            do {
                zi = {U(rng), U(rng)};
            } while (a.beta > 0 && std::norm(zi) >= 0.85 * 0.85 * a.beta / 2);
        return z;
    };

    double worst_metric = 0.0;
    for (int t = 0; t < 50; ++t) {
        auto z = sample();
        auto g = metric(z, model);
        auto gfd = metric_fd(z, model);
        for (int i = 0; i < a.n; ++i)
            worst_metric = std::max(worst_metric, std::abs(g[i] - gfd[i]));
    }
    rep.check("metric equals FD Hessian of the potential", worst_metric, 1e-6);

    std::vector<double> ratios;
    for (int t = 0; t < 20; ++t) {
        auto z = sample();
        ratios.push_back(scalar_curvature_numeric(z, model) / scalar_curvature_closed(z, model));
    }
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= ratios.size();
    double stdev = 0.0;
    for (double r : ratios) stdev += (r - mean) * (r - mean);
    stdev = std::sqrt(stdev / ratios.size());
    rep.check("curvature ratio numeric/closed is constant (std/|mean|)",
              stdev / std::abs(mean), 1e-8);
    rep.doc["curvature_ratio"] = mean;
    return rep.finish(a.report);
}

// ------------------------------------------------------------------------- dirac

struct DiracArgs {
    std::string structure = "qosc1";
    int n = 1;
    std::string beta = "1";
    int samples = 20;
    double tol = 1e-10;
    double quad_tol = 1e-12;
    std::uint64_t seed = 0;
    std::string report;
};

int run_dirac_verify(const DiracArgs& a) {
    Beta beta = parse_beta(a.beta);
    PoissonStructure P = a.structure == "qosc1" ? real_oscillator_structure(beta)
                                                : structure_by_name(a.structure, a.n, beta);
    std::mt19937_64 rng(a.seed);
    auto points = admissible_samples(P, a.samples, rng);

    Report rep("dirac verify",
               {{"structure", a.structure},
                {"beta", a.beta},
                {"samples", a.samples},
                {"tol", a.tol}},
               a.seed);

    auto closed = verify_reduction(P, points, a.tol, OmegaBarRoute::ClosedForm);
    rep.check("reduction identity, closed-form omega_bar", closed.max_error, a.tol);
    auto quad = verify_reduction(P, points, 100 * a.tol, OmegaBarRoute::Quadrature, a.quad_tol);
    rep.check("reduction identity, quadrature omega_bar", quad.max_error, 100 * a.tol);

    // constraint compatibility at the sample points
    auto S = build_constraints(P, OmegaBarRoute::ClosedForm);
    double worst = 0.0;
    for (const auto& theta : points) {
        Eigen::VectorXd pi = S.surface_pi(theta);
        for (int aidx = 0; aidx < S.n; ++aidx) {
            ExtendedFn phi;
            phi.value = [&S, aidx](const Eigen::VectorXd& th, const Eigen::VectorXd& p) {
                return S.phi(aidx, th, p);
            };
            phi.grad = [&S, aidx](const Eigen::VectorXd& th, const Eigen::VectorXd&,
                                  Eigen::VectorXd& gt, Eigen::VectorXd& gp) {
                gt = S.grad_phi_theta(th).row(aidx);
                gp = Eigen::VectorXd::Zero(S.n);
                gp[aidx] = 1.0;
            };
            for (int i = 0; i < S.n; ++i) {
                worst = std::max(worst, std::abs(dirac_bracket(
                                            phi, ExtendedFn::coordinate(i, S.n), S, theta, pi)));
                worst = std::max(worst, std::abs(dirac_bracket(
                                            phi, ExtendedFn::momentum(i, S.n), S, theta, pi)));
            }
        }
    }
    rep.check("constraints are Dirac-null against coordinates", worst, a.tol);

    ordered_json table = ordered_json::array();
    for (const auto& row : closed.rows) {
        ordered_json r;
        r["theta"] = std::vector<double>(row.theta.data(), row.theta.data() + row.theta.size());
        r["error"] = row.error;
        table.push_back(r);
    }
    rep.doc["points"] = table;
    return rep.finish(a.report);
}

// ------------------------------------------------------------------------- ncalg

struct NcalgArgs {
    std::string system = "eq5";
    std::string hbar = "1/10";
    std::string beta = "1";
    std::string file;
    std::uint64_t seed = 0;
    std::string report;
};

int run_ncalg_check(const NcalgArgs& a) {
    Rational hbar = parse_rational(a.hbar);
    Rational beta = parse_rational(a.beta);
    RewriteSystem R;
    if (!a.file.empty()) {
        std::ifstream is(a.file);
        if (!is) throw Error("cannot open rule file: " + a.file);
        nlohmann::json j;
        is >> j;
        R = system_from_json(j);
    } else {
        R = system_from_name(a.system, hbar, beta);
    }

    Report rep("ncalg check",
               {{"system", R.name}, {"hbar", a.hbar}, {"beta", a.beta}}, a.seed);

    // Jacobi residuals over all generator triples; the wrong-ordering system
    // is expected to produce a nonzero residual.
    bool expect_nonzero = R.name == "eq5-wrong";
    int nonzero = 0;
    for (int i = 0; i < R.arity(); ++i)
        for (int j = i; j < R.arity(); ++j)
            for (int k = j; k < R.arity(); ++k)
                if (!jacobi_check(R, i, j, k).is_zero()) ++nonzero;
    rep.check(expect_nonzero ? "jacobi residual nonzero (negative control)"
                             : "jacobi residuals all zero",
              nonzero, 0, expect_nonzero);

    // confluence corpus, seeded
    std::mt19937_64 rng(a.seed);
    std::uniform_int_distribution<int> coeff(-4, 4), len(0, 7), gen(0, R.arity() - 1);
    int disagreements = 0;
    for (int t = 0; t < 200; ++t) {
        NCPoly f;
        for (int term = 0; term < 5; ++term) {
            Word w;
            for (int k = len(rng); k > 0; --k) w.push_back(static_cast<char>(gen(rng)));
            f.add_term(w, ComplexRat(Rational(coeff(rng)), Rational(coeff(rng), 3)));
        }
        if (!(normal_form(f, R, ReductionStrategy::Leftmost) ==
              normal_form(f, R, ReductionStrategy::Rightmost)))
            ++disagreements;
    }
    rep.check(expect_nonzero ? "normal forms disagree somewhere (negative control)"
                             : "confluence corpus: unique normal forms",
              disagreements, 0, expect_nonzero);

    if (R.name == "eq5") {
        ComplexRat q{Rational(1) - hbar / beta};
        ComplexRat ih = ComplexRat::i() * ComplexRat(hbar);
        bool first = verify_relation(NCPoly::monomial(ComplexRat(1), word_of({1, 0})) -
                                         NCPoly::monomial(q, word_of({0, 1})),
                                     NCPoly::constant(-ih), R);
        bool second = verify_relation(NCPoly::monomial(ComplexRat(1), word_of({0, 2})) -
                                          NCPoly::monomial(q, word_of({2, 0})),
                                      NCPoly::constant(ih), R);
        rep.check("relation p x - q x p = -i hbar", first ? 0.0 : 1.0, 0);
        rep.check("relation x p+ - q p+ x = i hbar", second ? 0.0 : 1.0, 0);
    }
    if (R.name == "qparticle") {
        ComplexRat half{hbar / (2 * beta)};
        ComplexRat denom = ComplexRat(1) + ComplexRat::i() * half;
        ComplexRat q = (ComplexRat(1) - ComplexRat::i() * half) / denom;
        bool ok = verify_relation(NCPoly::monomial(ComplexRat(1), word_of({1, 0})) -
                                      NCPoly::monomial(q, word_of({0, 1})),
                                  NCPoly::constant(-ComplexRat::i() * ComplexRat(hbar) / denom),
                                  R);
        rep.check("rational-form relation p x - q x p = -i hbar/(1 + i hbar/2beta)",
                  ok ? 0.0 : 1.0, 0);
    }
    return rep.finish(a.report);
}

// -------------------------------------------------------------------------- fock

struct FockResArgs {
    std::string algebra = "eq1";
    int modes = 1;
    int trunc = 8;
    double q = 0.9;
    double hbar = 1.0;
    std::string report;
};

int run_fock_residuals(const FockResArgs& a) {
    Algebra alg = a.algebra == "eq1" ? Algebra::Eq1 : Algebra::Eq9_11;
    int modes = alg == Algebra::Eq1 ? 1 : a.modes;
    auto ops = multimode_ops(modes, a.trunc, a.hbar, a.q);
    auto res = relation_residuals(ops, alg);
    Report rep("fock residuals",
               {{"algebra", a.algebra},
                {"modes", modes},
                {"trunc", a.trunc},
                {"q", a.q},
                {"hbar", a.hbar}},
               0);
    for (const auto& row : res.rows) rep.check(row.relation, row.max_abs, 1e-12);
    return rep.finish(a.report);
}

struct FockLimitArgs {
    double beta = 1.0;
    double action = 1.0;
    int steps = 10;
    std::string out_csv, report;
};

int run_fock_limit(const FockLimitArgs& a) {
    std::vector<double> hbars;
    for (int m = 2; m < 2 + a.steps; ++m) hbars.push_back(std::pow(2.0, -m));
    auto rows = classical_limit_scan(a.beta, a.action, hbars);

    if (!a.out_csv.empty()) {
        std::ofstream os(a.out_csv);
        os.precision(17);
        os << "hbar,level,value,target,error\n";
        for (const auto& r : rows)
            os << r.hbar << "," << r.level << "," << r.value << "," << r.target << ","
               << r.error << "\n";
    }

    Report rep("fock limit",
               {{"beta", a.beta}, {"action", a.action}, {"steps", a.steps}}, 0);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        double x = std::log(r.hbar), y = std::log(std::max(r.error, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(rows.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    if (a.action > 0) {
        rep.check("log-log convergence slope within 1.0 +- 0.1", std::abs(slope - 1.0), 0.1);
        rep.doc["slope"] = slope;
    }
    rep.check("scan target equals the Darboux action profile",
              std::abs(rows.back().target - darboux_action_profile(a.action, a.beta)), 1e-10);
    return rep.finish(a.report);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quadratic Poisson structures: flows, embeddings and quantizations"};
    app.require_subcommand(1);

    JacobiArgs ja;
    auto* jac = app.add_subcommand("verify-jacobi", "symbolic Jacobi/antisymmetry/Casimir checks");
    jac->add_option("--structure", ja.structure, "builtin name or structure JSON file")
        ->required();
    jac->add_option("--n", ja.n, "mode/dof count for canonical, suqn, diag");
    jac->add_option("--beta", ja.beta, "rational p/q or 'symbolic'");
    jac->add_option("--report", ja.report, "write the JSON report here");

    FlowArgs fa;
    auto* flow = app.add_subcommand("flow", "integrate a Hamiltonian flow and monitor invariants");
    flow->add_option("--structure", fa.structure)->required();
    flow->add_option("--n", fa.n);
    flow->add_option("--beta", fa.beta)->required();
    flow->add_option("--H", fa.hamiltonian, "Hamiltonian expression")->required();
    flow->add_option("--b0", fa.b0, "initial b (re[,im]); sets b* to the conjugate");
    flow->add_option("--x0", fa.x0)->each([&fa](const std::string&) { fa.have_x0 = true; });
    flow->add_option("--p0", fa.p0)->each([&fa](const std::string&) { fa.have_p0 = true; });
    flow->add_option("--init", fa.init, "semicolon list sym=re[,im]");
    flow->add_option("--t", fa.t_end, "end time")->required();
    flow->add_option("--samples", fa.samples);
    flow->add_option("--rel-tol", fa.rel_tol);
    flow->add_option("--abs-tol", fa.abs_tol);
    flow->add_option("--drift-tol", fa.drift_tol);
    flow->add_option("--out", fa.out_csv, "trajectory CSV path");
    flow->add_option("--traj-json", fa.traj_json, "trajectory JSON mirror path");
    flow->add_option("--report", fa.report);

    KahlerArgs ka;
    auto* kah = app.add_subcommand("kahler", "dilogarithm potential, metric and curvature");
    kah->add_option("--beta", ka.beta)->required();
    kah->add_option("--n", ka.n);
    kah->add_option("--grid", ka.grid, "radial grid r0:r1:steps -> CSV");
    kah->add_option("--point", ka.point, "single point 're,im;re,im' -> JSON query");
    kah->add_option("--seed", ka.seed);
    kah->add_option("--out", ka.out_csv);
    kah->add_option("--report", ka.report);

    DiracArgs da;
    auto* dir = app.add_subcommand("dirac", "second-class constraint embedding");
    auto* dirv = dir->add_subcommand("verify", "check the Dirac-bracket reduction identity");
    dirv->add_option("--structure", da.structure, "qosc1|qparticle|canonical|file");
    dirv->add_option("--n", da.n);
    dirv->add_option("--beta", da.beta);
    dirv->add_option("--samples", da.samples);
    dirv->add_option("--tol", da.tol);
    dirv->add_option("--quad-tol", da.quad_tol);
    dirv->add_option("--seed", da.seed);
    dirv->add_option("--report", da.report);

    NcalgArgs na;
    auto* nc = app.add_subcommand("ncalg", "normal-ordering rewrite systems");
    auto* ncc = nc->add_subcommand("check", "residuals and verdicts for a rule system");
    ncc->add_option("--system", na.system, "eq1|eq5|eq5-wrong|canonical|qparticle");
    ncc->add_option("--hbar", na.hbar);
    ncc->add_option("--beta", na.beta);
    ncc->add_option("--file", na.file, "rule system JSON description");
    ncc->add_option("--seed", na.seed);
    ncc->add_option("--report", na.report);

    FockResArgs fra;
    auto* fk = app.add_subcommand("fock", "truncated number-basis representations");
    auto* fkr = fk->add_subcommand("residuals", "relation residuals on the interior subspace");
    fkr->add_option("--algebra", fra.algebra, "eq1|suqn");
    fkr->add_option("--modes", fra.modes);
    fkr->add_option("--trunc", fra.trunc);
    fkr->add_option("--q", fra.q);
    fkr->add_option("--hbar", fra.hbar);
    fkr->add_option("--report", fra.report);

    FockLimitArgs fla;
    auto* fkl = fk->add_subcommand("limit", "classical-limit spectral scan");
    fkl->add_option("--beta", fla.beta);
    fkl->add_option("--action", fla.action);
    fkl->add_option("--steps", fla.steps);
    fkl->add_option("--out", fla.out_csv);
    fkl->add_option("--report", fla.report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(jac)) return run_verify_jacobi(ja);
        if (app.got_subcommand(flow)) return run_flow(fa);
        if (app.got_subcommand(kah)) return run_kahler(ka);
        if (app.got_subcommand(dir)) {
            if (dir->got_subcommand(dirv)) return run_dirac_verify(da);
            std::cerr << dir->help();
            return 2;
        }
        if (app.got_subcommand(nc)) {
            if (nc->got_subcommand(ncc)) return run_ncalg_check(na);
            std::cerr << nc->help();
            return 2;
        }
        if (app.got_subcommand(fk)) {
            if (fk->got_subcommand(fkr)) return run_fock_residuals(fra);
            if (fk->got_subcommand(fkl)) return run_fock_limit(fla);
            std::cerr << fk->help();
            return 2;
        }
    } catch (const ParseError& e) {
        std::cerr << "expression error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
