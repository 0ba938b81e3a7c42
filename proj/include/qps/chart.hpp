#pragma once

#include <map>
#include <string>
#include <vector>

#include "qps/errors.hpp"

namespace qps {

enum class ChartKind { Real, Holomorphic };

/// Phase-space coordinate symbols plus the conjugation involution pairing
/// each holomorphic symbol with its starred partner. Real charts use the
/// identity pairing.
struct CoordinateChart {
    std::vector<std::string> names;
    std::map<std::string, std::string> conj;  // involution on names
    ChartKind kind = ChartKind::Real;

    static CoordinateChart real(std::vector<std::string> names);
    /// Holomorphic chart from explicit pairs; symbols absent from any pair
    /// are self-paired (real coordinates embedded in a holomorphic chart).
    static CoordinateChart holomorphic(std::vector<std::string> names,
                                       std::vector<std::pair<std::string, std::string>> pairs);

    std::size_t dim() const { return names.size(); }
    int index(const std::string& sym) const;
    bool has(const std::string& sym) const;
    const std::string& partner(const std::string& sym) const;
    bool self_paired(const std::string& sym) const { return partner(sym) == sym; }

    /// Involution property and exactly-one-pair membership.
    void validate() const;
};

}  // namespace qps
