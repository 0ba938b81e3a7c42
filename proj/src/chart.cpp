#include "qps/chart.hpp"

#include <algorithm>

namespace qps {

CoordinateChart CoordinateChart::real(std::vector<std::string> names) {
    CoordinateChart c;
    c.kind = ChartKind::Real;
    c.names = std::move(names);
    for (const auto& n : c.names) c.conj[n] = n;
    c.validate();
    return c;
}

CoordinateChart CoordinateChart::holomorphic(
    std::vector<std::string> names, std::vector<std::pair<std::string, std::string>> pairs) {
    CoordinateChart c;
    c.kind = ChartKind::Holomorphic;
    c.names = std::move(names);
    for (const auto& n : c.names) c.conj[n] = n;
    for (const auto& [a, b] : pairs) {
        c.conj[a] = b;
        c.conj[b] = a;
    }
    c.validate();
    return c;
}

int CoordinateChart::index(const std::string& sym) const {
    auto it = std::find(names.begin(), names.end(), sym);
    if (it == names.end()) throw SymbolError("symbol not in chart: " + sym);
    return static_cast<int>(it - names.begin());
}

bool CoordinateChart::has(const std::string& sym) const {
    return std::find(names.begin(), names.end(), sym) != names.end();
}

const std::string& CoordinateChart::partner(const std::string& sym) const {
    auto it = conj.find(sym);
    if (it == conj.end()) throw SymbolError("symbol not in chart: " + sym);
    return it->second;
}

void CoordinateChart::validate() const {
    if (names.empty()) throw ParameterError("empty chart");
    for (const auto& n : names) {
        auto it = conj.find(n);
        if (it == conj.end()) throw ParameterError("chart symbol without pairing: " + n);
        if (!has(it->second)) throw ParameterError("conjugate partner not in chart: " + it->second);
        if (partner(it->second) != n) throw ParameterError("chart pairing is not an involution at " + n);
    }
    if (conj.size() != names.size()) throw ParameterError("pairing mentions symbols outside the chart");
    if (kind == ChartKind::Real)
        for (const auto& [a, b] : conj)
            if (a != b) throw ParameterError("real chart with non-identity pairing at " + a);
}

}  // namespace qps
