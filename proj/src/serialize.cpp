#include "qps/serialize.hpp"

#include <fstream>

namespace qps {

using nlohmann::json;

json poly_to_json(const PolyExpr& p, const std::vector<std::string>& vars) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) {
        std::vector<int> expo(vars.size() + 1, 0);
        for (const auto& [s, e] : m) {
            if (s == kBetaInv) {
                expo[vars.size()] = e;
                continue;
            }
            auto it = std::find(vars.begin(), vars.end(), s);
            if (it == vars.end()) throw SymbolError("symbol not serializable in this chart: " + s);
            expo[static_cast<std::size_t>(it - vars.begin())] = e;
        }
        terms.push_back(json::array({expo, rational_str(c.re), rational_str(c.im)}));
    }
    return terms;
}

PolyExpr poly_from_json(const json& j, const std::vector<std::string>& vars) {
    PolyExpr p;
    for (const auto& term : j) {
        const auto& expo = term.at(0);
        if (expo.size() != vars.size() + 1)
            throw ParameterError("exponent vector length mismatch in polynomial");
        Monomial m;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            int e = expo.at(k).get<int>();
            if (e != 0) m[vars[k]] = e;
        }
        int be = expo.at(vars.size()).get<int>();
        if (be != 0) m[kBetaInv] = be;
        p.add_term(m, ComplexRat(parse_rational(term.at(1).get<std::string>()),
                                 parse_rational(term.at(2).get<std::string>())));
    }
    return p;
}

json structure_to_json(const PoissonStructure& P) {
    json j;
    j["name"] = P.name;
    json chart;
    chart["names"] = P.chart.names;
    chart["kind"] = P.chart.kind == ChartKind::Real ? "real" : "holomorphic";
    json pairs = json::array();
    for (const auto& n : P.chart.names) {
        const auto& partner = P.chart.partner(n);
        if (partner != n && n < partner) pairs.push_back(json::array({n, partner}));
    }
    chart["pairs"] = pairs;
    j["chart"] = chart;
    j["beta"] = P.beta.is_symbolic() ? std::string("symbolic") : rational_str(P.beta.numeric());
    json rows = json::array();
    for (std::size_t a = 0; a < P.dim(); ++a) {
        json row = json::array();
        for (std::size_t b = 0; b < P.dim(); ++b)
            row.push_back(poly_to_json(P.omega(a, b), P.chart.names));
        rows.push_back(row);
    }
    j["bivector"] = rows;
    json cas = json::array();
    for (const auto& C : P.casimirs) cas.push_back(poly_to_json(C, P.chart.names));
    j["casimirs"] = cas;
    return j;
}

PoissonStructure structure_from_json(const json& j) {
    PoissonStructure P;
    const auto& chart = j.at("chart");
    std::vector<std::string> names = chart.at("names").get<std::vector<std::string>>();
    std::string kind = chart.at("kind").get<std::string>();
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& pr : chart.at("pairs"))
        pairs.emplace_back(pr.at(0).get<std::string>(), pr.at(1).get<std::string>());
    P.chart = kind == "real" ? CoordinateChart::real(names)
                             : CoordinateChart::holomorphic(names, pairs);

    std::string beta = j.at("beta").get<std::string>();
    P.beta = beta == "symbolic" ? Beta::symbolic() : Beta::value(parse_rational(beta));

    const auto& rows = j.at("bivector");
    if (rows.size() != names.size()) throw ParameterError("bivector row count mismatch");
    for (const auto& row : rows) {
        if (row.size() != names.size()) throw ParameterError("bivector column count mismatch");
        for (const auto& entry : row) P.bivector.push_back(poly_from_json(entry, names));
    }
    for (const auto& entry : j.value("casimirs", json::array()))
        P.casimirs.push_back(poly_from_json(entry, names));
    P.name = j.value("name", std::string("custom"));
    return P;
}

json trajectory_to_json(const Trajectory& traj) {
    json j;
    j["symbols"] = traj.symbols;
    j["times"] = traj.times;
    json pts = json::array();
    for (const auto& p : traj.points) {
        json row = json::array();
        for (const auto& z : p) row.push_back(json::array({z.real(), z.imag()}));
        pts.push_back(row);
    }
    j["points"] = pts;
    json mon;
    for (const auto& [name, series] : traj.monitors) mon[name] = series;
    j["monitors"] = mon;
    return j;
}

RewriteSystem system_from_json(const json& j) {
    RewriteSystem R;
    R.name = j.value("name", std::string("custom"));
    R.gen_names = j.at("alphabet").get<std::vector<std::string>>();
    if (j.contains("dagger")) {
        for (const auto& d : j.at("dagger")) R.dagger.push_back(R.generator_index(d.get<std::string>()));
    } else {
        for (int i = 0; i < R.arity(); ++i) R.dagger.push_back(i);
    }
    for (const auto& rule : j.at("rules")) {
        int hi = R.generator_index(rule.at("pair").at(0).get<std::string>());
        int lo = R.generator_index(rule.at("pair").at(1).get<std::string>());
        NCPoly rhs;
        for (const auto& term : rule.at("terms")) {
            Word w;
            for (const auto& g : term.at("word")) w.push_back(
                static_cast<char>(R.generator_index(g.get<std::string>())));
            rhs.add_term(w, ComplexRat(parse_rational(term.at("re").get<std::string>()),
                                       parse_rational(term.at("im").get<std::string>())));
        }
        R.add_rule(hi, lo, std::move(rhs));
    }
    return R;
}

json system_to_json(const RewriteSystem& R) {
    json j;
    j["name"] = R.name;
    j["alphabet"] = R.gen_names;
    json dag = json::array();
    for (int d : R.dagger) dag.push_back(R.gen_names[d]);
    j["dagger"] = dag;
    json rules = json::array();
    for (const auto& [pair, rhs] : R.rules) {
        json rule;
        rule["pair"] = json::array({R.gen_names[pair.first], R.gen_names[pair.second]});
        json terms = json::array();
        for (const auto& [w, c] : rhs.terms) {
            json words = json::array();
            for (char g : w) words.push_back(R.gen_names[static_cast<int>(g)]);
            terms.push_back({{"word", words},
                             {"re", rational_str(c.re)},
                             {"im", rational_str(c.im)}});
        }
        rule["terms"] = terms;
        rules.push_back(rule);
    }
    j["rules"] = rules;
    return j;
}

PoissonStructure load_structure_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open structure file: " + path);
    json j;
    is >> j;
    return structure_from_json(j);
}

}  // namespace qps
