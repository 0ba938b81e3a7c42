#pragma once

#include <complex>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qps/rational.hpp"

namespace qps {

/// Exponent map, symbol name -> positive exponent. Sorted by symbol name, so
/// polynomial term order is canonical and equality is structural.
using Monomial = std::map<std::string, int>;

/// Multivariate polynomial over ComplexRat in chart coordinates and formal
/// parameter symbols (notably "beta_inv" for the deformation parameter).
/// Invariants: no zero coefficients stored; arithmetic is exact.
class PolyExpr {
  public:
    PolyExpr() = default;

    static PolyExpr constant(ComplexRat c);
    static PolyExpr symbol(const std::string& name, int exponent = 1);
    static PolyExpr imaginary_unit() { return constant(ComplexRat::i()); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    ComplexRat constant_term() const;

    const std::map<Monomial, ComplexRat>& terms() const { return terms_; }

    /// Adds c * m, dropping the entry if the sum cancels.
    void add_term(const Monomial& m, const ComplexRat& c);

    std::set<std::string> symbols() const;
    int total_degree() const;
    /// Total degree counting only the listed symbols (parameters excluded by
    /// passing chart names).
    int degree_in(const std::set<std::string>& vars) const;
    /// Part of the polynomial whose degree_in(vars) == k.
    PolyExpr homogeneous_part(int k, const std::set<std::string>& vars) const;

    PolyExpr derivative(const std::string& sym) const;

    /// Substitute symbols by polynomials; unlisted symbols stay.
    PolyExpr substitute(const std::map<std::string, PolyExpr>& repl) const;
    /// Rename symbols; unlisted symbols stay.
    PolyExpr rename(const std::map<std::string, std::string>& names) const;

    /// Apply a chart involution: conjugate every coefficient and map each
    /// symbol through `partner` (identity for self-paired symbols).
    PolyExpr conjugated(const std::function<std::string(const std::string&)>& partner) const;

    std::complex<double> evaluate(const std::map<std::string, std::complex<double>>& point) const;
    ComplexRat evaluate_exact(const std::map<std::string, ComplexRat>& point) const;

    PolyExpr pow(int n) const;

    PolyExpr& operator+=(const PolyExpr& o);
    PolyExpr& operator-=(const PolyExpr& o);
    PolyExpr& operator*=(const PolyExpr& o);
    PolyExpr& operator*=(const ComplexRat& c);

    friend PolyExpr operator+(PolyExpr a, const PolyExpr& b) { return a += b; }
    friend PolyExpr operator-(PolyExpr a, const PolyExpr& b) { return a -= b; }
    friend PolyExpr operator*(PolyExpr a, const PolyExpr& b) { return a *= b; }
    friend PolyExpr operator*(PolyExpr a, const ComplexRat& c) { return a *= c; }
    friend PolyExpr operator*(const ComplexRat& c, PolyExpr a) { return a *= c; }
    friend PolyExpr operator-(const PolyExpr& a);

    friend bool operator==(const PolyExpr& a, const PolyExpr& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const PolyExpr& a, const PolyExpr& b) { return !(a == b); }

    std::string str() const;

  private:
    std::map<Monomial, ComplexRat> terms_;
};

}  // namespace qps
