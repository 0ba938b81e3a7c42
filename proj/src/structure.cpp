#include "qps/structure.hpp"

namespace qps {

Beta Beta::value(const Rational& b) {
    if (b == 0) throw ParameterError("beta must be nonzero");
    Beta out;
    out.value_ = b;
    return out;
}

Beta Beta::symbolic() { return Beta{}; }

const Rational& Beta::numeric() const {
    if (!value_) throw ParameterError("beta is symbolic; a numeric value is required here");
    return *value_;
}

PolyExpr Beta::inv() const {
    if (value_) return PolyExpr::constant(ComplexRat(Rational(1) / *value_));
    return PolyExpr::symbol(kBetaInv);
}

std::vector<PolyExpr> PoissonStructure::antisymmetry_residual() const {
    std::vector<PolyExpr> out;
    for (std::size_t j = 0; j < dim(); ++j)
        for (std::size_t k = j; k < dim(); ++k) out.push_back(omega(j, k) + omega(k, j));
    return out;
}

namespace {

PolyExpr sym(const std::string& s) { return PolyExpr::symbol(s); }
PolyExpr cst(int v) { return PolyExpr::constant(ComplexRat(v)); }
const ComplexRat kI = ComplexRat::i();

PoissonStructure make_canonical(int n) {
    PoissonStructure P;
    std::vector<std::string> names;
    if (n == 1) {
        names = {"x", "p"};
    } else {
        for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
        for (int i = 1; i <= n; ++i) names.push_back("p" + std::to_string(i));
    }
    P.chart = CoordinateChart::real(names);
    P.bivector.assign(4 * static_cast<std::size_t>(n) * n, PolyExpr());
    for (int i = 0; i < n; ++i) {
        P.omega(i, n + i) = cst(1);
        P.omega(n + i, i) = cst(-1);
    }
    return P;
}

PoissonStructure make_qosc1(const Beta& beta) {
    PoissonStructure P;
    P.chart = CoordinateChart::holomorphic({"b", "b*"}, {{"b", "b*"}});
    P.bivector.assign(4, PolyExpr());
    // {b,b*} = -i (1 - b* b / beta)
    PolyExpr w = (cst(1) - sym("b*") * sym("b") * beta.inv()) * (-kI);
    P.omega(0, 1) = w;
    P.omega(1, 0) = -w;
    return P;
}

PoissonStructure make_qparticle(const Beta& beta) {
    PoissonStructure P;
    P.chart = CoordinateChart::real({"x", "p"});
    P.bivector.assign(4, PolyExpr());
    PolyExpr w = cst(1) + sym("x") * sym("p") * beta.inv();
    P.omega(0, 1) = w;
    P.omega(1, 0) = -w;
    return P;
}

PoissonStructure make_lattice(const Beta& beta) {
    PoissonStructure P;
    P.chart = CoordinateChart::holomorphic({"x", "p", "p*"}, {{"p", "p*"}});
    P.bivector.assign(9, PolyExpr());
    PolyExpr xp = cst(1) - PolyExpr::imaginary_unit() * sym("x") * sym("p") * beta.inv();
    PolyExpr xps = cst(1) + PolyExpr::imaginary_unit() * sym("x") * sym("p*") * beta.inv();
    PolyExpr psp = PolyExpr::imaginary_unit() * sym("p") * sym("p*") * beta.inv();
    P.omega(0, 1) = xp;       // {x,p}
    P.omega(1, 0) = -xp;
    P.omega(0, 2) = xps;      // {x,p*}
    P.omega(2, 0) = -xps;
    P.omega(2, 1) = psp;      // {p*,p}
    P.omega(1, 2) = -psp;
    // Absolute integral of motion: C = p p* x / beta - i (p - p*)
    PolyExpr C = sym("p") * sym("p*") * sym("x") * beta.inv() -
                 PolyExpr::imaginary_unit() * (sym("p") - sym("p*"));
    P.casimirs.push_back(C);
    return P;
}

PoissonStructure make_suqn(int n, const Beta& beta) {
    PoissonStructure P;
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("a" + std::to_string(i) + "*");
    for (int i = 0; i < n; ++i) pairs.emplace_back(names[i], names[n + i]);
    P.chart = CoordinateChart::holomorphic(names, pairs);
    const std::size_t d = 2 * static_cast<std::size_t>(n);
    P.bivector.assign(d * d, PolyExpr());
    auto a = [&](int k) { return sym(names[k]); };       // a_{k+1}
    auto as = [&](int k) { return sym(names[n + k]); };  // a*_{k+1}
    for (int k = 0; k < n; ++k) {
        for (int j = k + 1; j < n; ++j) {
            PolyExpr w = PolyExpr::imaginary_unit() * a(k) * a(j) * beta.inv();  // {a_k,a_j}, k<j
            P.omega(k, j) = w;
            P.omega(j, k) = -w;
            PolyExpr ws = -(PolyExpr::imaginary_unit() * as(k) * as(j) * beta.inv());
            P.omega(n + k, n + j) = ws;  // {a*_k,a*_j}, k<j
            P.omega(n + j, n + k) = -ws;
        }
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            PolyExpr w = PolyExpr::imaginary_unit() * a(k) * as(j) * beta.inv();  // {a_k,a*_j}, k != j
            P.omega(k, n + j) = w;
            P.omega(n + j, k) = -w;
        }
        // {a_j, a*_j} = -i (1 - (2/beta) sum_{m<=j} a*_m a_m)
        PolyExpr sum;
        for (int m = 0; m <= k; ++m) sum += as(m) * a(m);
        PolyExpr w = -(PolyExpr::imaginary_unit() * (cst(1) - cst(2) * sum * beta.inv()));
        P.omega(k, n + k) = w;
        P.omega(n + k, k) = -w;
    }
    return P;
}

PoissonStructure make_diag(int n, const Beta& beta) {
    PoissonStructure P;
    std::vector<std::string> names;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
    for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i) + "*");
    for (int i = 0; i < n; ++i) pairs.emplace_back(names[i], names[n + i]);
    P.chart = CoordinateChart::holomorphic(names, pairs);
    const std::size_t d = 2 * static_cast<std::size_t>(n);
    P.bivector.assign(d * d, PolyExpr());
    for (int j = 0; j < n; ++j) {
        // {z_j, z*_j} = -i (1 - 2 z_j z*_j / beta)
        PolyExpr w = -(PolyExpr::imaginary_unit() *
                       (cst(1) - cst(2) * sym(names[j]) * sym(names[n + j]) * beta.inv()));
        P.omega(j, n + j) = w;
        P.omega(n + j, j) = -w;
    }
    return P;
}

}  // namespace

Builtin builtin_from_name(const std::string& name) {
    if (name == "canonical") return Builtin::Canonical;
    if (name == "qosc1") return Builtin::QOsc1;
    if (name == "qparticle") return Builtin::QParticle;
    if (name == "lattice") return Builtin::Lattice;
    if (name == "suqn") return Builtin::SuQn;
    if (name == "diag") return Builtin::Diag;
    throw ParameterError("unknown structure name: " + name);
}

std::string builtin_name(Builtin b) {
    switch (b) {
        case Builtin::Canonical: return "canonical";
        case Builtin::QOsc1: return "qosc1";
        case Builtin::QParticle: return "qparticle";
        case Builtin::Lattice: return "lattice";
        case Builtin::SuQn: return "suqn";
        case Builtin::Diag: return "diag";
    }
    throw ParameterError("unknown builtin");
}

PoissonStructure builtin(Builtin which, int n, const Beta& beta) {
    if (n < 1) throw ParameterError("mode count must be >= 1");
    PoissonStructure P;
    switch (which) {
        case Builtin::Canonical: P = make_canonical(n); break;
        case Builtin::QOsc1: P = make_qosc1(beta); break;
        case Builtin::QParticle: P = make_qparticle(beta); break;
        case Builtin::Lattice: P = make_lattice(beta); break;
        case Builtin::SuQn: P = make_suqn(n, beta); break;
        case Builtin::Diag: P = make_diag(n, beta); break;
    }
    P.beta = beta;
    P.name = builtin_name(which);
    return P;
}

namespace {
void check_symbols(const PolyExpr& f, const PoissonStructure& P, const char* which) {
    for (const auto& s : f.symbols()) {
        if (s == kBetaInv) continue;
        if (!P.chart.has(s))
            throw SymbolError(std::string("unknown symbol in ") + which + ": " + s);
    }
}
}  // namespace

PolyExpr bracket(const PolyExpr& f, const PolyExpr& g, const PoissonStructure& P) {
    check_symbols(f, P, "first bracket argument");
    check_symbols(g, P, "second bracket argument");
    const std::size_t d = P.dim();
    std::vector<PolyExpr> df(d), dg(d);
    for (std::size_t j = 0; j < d; ++j) {
        df[j] = f.derivative(P.chart.names[j]);
        dg[j] = g.derivative(P.chart.names[j]);
    }
    PolyExpr out;
    for (std::size_t j = 0; j < d; ++j) {
        if (df[j].is_zero()) continue;
        for (std::size_t k = 0; k < d; ++k) {
            if (dg[k].is_zero() || P.omega(j, k).is_zero()) continue;
            out += P.omega(j, k) * df[j] * dg[k];
        }
    }
    return out;
}

std::vector<PolyExpr> jacobi_residual(const PoissonStructure& P) {
    const std::size_t d = P.dim();
    std::vector<std::vector<PolyExpr>> domega(d, std::vector<PolyExpr>(d * d));
    for (std::size_t l = 0; l < d; ++l)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                domega[l][j * d + k] = P.omega(j, k).derivative(P.chart.names[l]);

    auto cyc = [&](std::size_t i, std::size_t j, std::size_t k) {
        PolyExpr s;
        for (std::size_t l = 0; l < d; ++l) {
            if (!P.omega(i, l).is_zero()) s += P.omega(i, l) * domega[l][j * d + k];
            if (!P.omega(j, l).is_zero()) s += P.omega(j, l) * domega[l][k * d + i];
            if (!P.omega(k, l).is_zero()) s += P.omega(k, l) * domega[l][i * d + j];
        }
        return s;
    };

    std::vector<PolyExpr> out;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k) out.push_back(cyc(i, j, k));
    return out;
}

bool casimir_check(const PoissonStructure& P, const PolyExpr& C) {
    for (const auto& name : P.chart.names)
        if (!bracket(C, PolyExpr::symbol(name), P).is_zero()) return false;
    return true;
}

}  // namespace qps
