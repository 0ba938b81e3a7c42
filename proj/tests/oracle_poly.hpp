// Test-only brute-force polynomial arithmetic, kept independent of the
// library's PolyExpr path: dense exponent vectors, separate re/im rationals,
// straight-line expansion. Used as the oracle for Jacobi residuals and the
// Leibniz/antisymmetry properties.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "qps/structure.hpp"

namespace oracle {

using Q = boost::multiprecision::cpp_rational;

struct C {
    Q re{0}, im{0};
    bool zero() const { return re == 0 && im == 0; }
};

inline C add(const C& a, const C& b) { return {a.re + b.re, a.im + b.im}; }
inline C mul(const C& a, const C& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline C scale(const C& a, const Q& s) { return {a.re * s, a.im * s}; }

using Expo = std::vector<int>;
using Poly = std::map<Expo, C>;

inline void accumulate(Poly& p, const Expo& e, const C& c) {
    if (c.zero()) return;
    auto [it, fresh] = p.emplace(e, c);
    if (!fresh) {
        it->second = add(it->second, c);
        if (it->second.zero()) p.erase(it);
    }
}

inline Poly plus(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [e, c] : b) accumulate(out, e, c);
    return out;
}

inline Poly times(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Expo e = ea;
            for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
            accumulate(out, e, mul(ca, cb));
        }
    return out;
}

inline Poly ddx(const Poly& a, std::size_t var) {
    Poly out;
    for (const auto& [e, c] : a) {
        if (e[var] == 0) continue;
        Expo d = e;
        d[var] -= 1;
        accumulate(out, d, scale(c, Q(e[var])));
    }
    return out;
}

/// Import a library polynomial into the oracle representation; `vars` fixes
/// the exponent slots, with one extra trailing slot for beta_inv.
inline Poly import(const qps::PolyExpr& p, const std::vector<std::string>& vars) {
    Poly out;
    for (const auto& [m, c] : p.terms()) {
        Expo e(vars.size() + 1, 0);
        for (const auto& [s, k] : m) {
            if (s == qps::kBetaInv) {
                e[vars.size()] = k;
                continue;
            }
            bool found = false;
            for (std::size_t v = 0; v < vars.size(); ++v)
                if (vars[v] == s) {
                    e[v] = k;
                    found = true;
                }
            if (!found) throw std::runtime_error("oracle import: unknown symbol " + s);
        }
        accumulate(out, e, C{c.re, c.im});
    }
    return out;
}

/// S^{ijk} = sum_l [ w^{il} d_l w^{jk} + w^{jl} d_l w^{ki} + w^{kl} d_l w^{ij} ]
inline Poly jacobi_term(const std::vector<std::vector<Poly>>& w, std::size_t i, std::size_t j,
                        std::size_t k) {
    Poly s;
    const std::size_t n = w.size();
    for (std::size_t l = 0; l < n; ++l) {
        s = plus(s, times(w[i][l], ddx(w[j][k], l)));
        s = plus(s, times(w[j][l], ddx(w[k][i], l)));
        s = plus(s, times(w[k][l], ddx(w[i][j], l)));
    }
    return s;
}

inline std::vector<std::vector<Poly>> import_bivector(const qps::PoissonStructure& P) {
    const std::size_t n = P.dim();
    std::vector<std::vector<Poly>> w(n, std::vector<Poly>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) w[a][b] = import(P.omega(a, b), P.chart.names);
    return w;
}

}  // namespace oracle
