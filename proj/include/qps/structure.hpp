#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qps/chart.hpp"
#include "qps/polynomial.hpp"

namespace qps {

/// Deformation parameter. Numeric mode holds an exact nonzero rational beta;
/// symbolic mode leaves 1/beta as the formal commuting symbol "beta_inv",
/// which is how the exact identity proofs run.
struct Beta {
    static Beta value(const Rational& b);
    static Beta symbolic();

    bool is_symbolic() const { return !value_.has_value(); }
    const Rational& numeric() const;
    /// beta^{-1} as a polynomial factor (constant or the formal symbol).
    PolyExpr inv() const;

  private:
    std::optional<Rational> value_;
};

inline const std::string kBetaInv = "beta_inv";

/// Coordinate chart plus antisymmetric bivector matrix omega^{jk} of exact
/// polynomials, with optional attached Casimirs.
struct PoissonStructure {
    CoordinateChart chart;
    std::vector<PolyExpr> bivector;  // dim x dim, row-major
    std::vector<PolyExpr> casimirs;
    Beta beta = Beta::symbolic();
    std::string name;

    std::size_t dim() const { return chart.dim(); }
    const PolyExpr& omega(std::size_t j, std::size_t k) const { return bivector[j * dim() + k]; }
    PolyExpr& omega(std::size_t j, std::size_t k) { return bivector[j * dim() + k]; }

    /// omega^{jk} + omega^{kj}, all pairs; all-zero iff antisymmetric.
    std::vector<PolyExpr> antisymmetry_residual() const;
};

enum class Builtin { Canonical, QOsc1, QParticle, Lattice, SuQn, Diag };

Builtin builtin_from_name(const std::string& name);
std::string builtin_name(Builtin b);

/// Construct a built-in structure. `n` is the dof/mode count where it
/// applies (canonical, suqn, diag); ignored for the fixed-size ones.
PoissonStructure builtin(Builtin which, int n, const Beta& beta);

/// {f,g} = omega^{jk} d_j f d_k g, exact.
PolyExpr bracket(const PolyExpr& f, const PolyExpr& g, const PoissonStructure& P);

/// Contravariant Jacobi residuals S^{ijk} = omega^{il} d_l omega^{jk} + cycle,
/// one entry per i<j<k. Empty or all-zero means the Jacobi identity holds as
/// an exact polynomial identity. (S is totally antisymmetric once the
/// bivector is antisymmetric, so i<j<k are the independent components.)
std::vector<PolyExpr> jacobi_residual(const PoissonStructure& P);

/// True iff {C, theta} == 0 for every chart coordinate theta.
bool casimir_check(const PoissonStructure& P, const PolyExpr& C);

}  // namespace qps
