#pragma once

#include <map>
#include <string>
#include <vector>

#include "qps/rational.hpp"

namespace qps {

/// Word over an ordered generator alphabet; each char is a generator index.
/// Words are stored verbatim, nothing commutes implicitly.
using Word = std::string;

inline Word word_of(std::initializer_list<int> gens) {
    Word w;
    for (int g : gens) w.push_back(static_cast<char>(g));
    return w;
}

/// Noncommutative polynomial with exact complex-rational coefficients.
struct NCPoly {
    std::map<Word, ComplexRat> terms;

    static NCPoly zero() { return {}; }
    static NCPoly constant(ComplexRat c);
    static NCPoly generator(int idx);
    static NCPoly monomial(ComplexRat c, const Word& w);

    bool is_zero() const { return terms.empty(); }
    void add_term(const Word& w, const ComplexRat& c);

    NCPoly& operator+=(const NCPoly& o);
    NCPoly& operator-=(const NCPoly& o);
    NCPoly& operator*=(const ComplexRat& c);
    friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
    friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
    friend NCPoly operator*(const NCPoly& a, const NCPoly& b);  // word concatenation
    friend NCPoly operator*(NCPoly a, const ComplexRat& c) { return a *= c; }
    friend NCPoly operator*(const ComplexRat& c, NCPoly a) { return a *= c; }
    friend NCPoly operator-(const NCPoly& a);
    friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms == b.terms; }
};

/// Directed reordering rules toward the fixed generator order. A rule maps a
/// wrong-order adjacent pair g h (rank g > rank h) to a combination of the
/// transposed pair and shorter words, so every application strictly lowers
/// the word inversion count and rewriting terminates.
struct RewriteSystem {
    std::string name;
    std::vector<std::string> gen_names;       // index order is the normal order
    std::vector<int> dagger;                  // adjoint permutation of generators
    std::map<std::pair<int, int>, NCPoly> rules;  // (hi, lo) -> replacement

    int arity() const { return static_cast<int>(gen_names.size()); }
    int generator_index(const std::string& name) const;

    /// Install a rule for pair hi*lo; validates orientation and termination.
    void add_rule(int hi, int lo, NCPoly replacement);

    /// Solve `equation == 0` for the word hi*lo and install the result.
    /// Mechanizes "isolate the wrong-order product" derivation steps.
    void derive_rule(int hi, int lo, const NCPoly& equation);
};

enum class ReductionStrategy { Leftmost, Rightmost };

NCPoly normal_form(const NCPoly& f, const RewriteSystem& R,
                   ReductionStrategy strategy = ReductionStrategy::Leftmost);

/// normal_form(AB - BA)
NCPoly commutator(const NCPoly& A, const NCPoly& B, const RewriteSystem& R);

/// Normal form of [g1,[g2,g3]] + [g2,[g3,g1]] + [g3,[g1,g2]].
NCPoly jacobi_check(const RewriteSystem& R, int g1, int g2, int g3);

/// True iff normal_form(lhs - rhs) vanishes.
bool verify_relation(const NCPoly& lhs, const NCPoly& rhs, const RewriteSystem& R);

/// Anti-automorphism: reverse each word, conjugate coefficients, dagger the
/// generators.
NCPoly hermitian_conjugate(const NCPoly& f, const RewriteSystem& R);

/// Substitute g -> c g for every generator: each coefficient picks up
/// c^(word length).
NCPoly rescale_generators(const NCPoly& f, const ComplexRat& c);
/// The matching system: rule coefficients scale by c^(len(rhs word) - 2).
RewriteSystem rescale_system(const RewriteSystem& R, const ComplexRat& c);

std::string to_string(const NCPoly& f, const RewriteSystem& R);

// Shipped rule systems. hbar and beta are exact rationals.
RewriteSystem system_eq1(const Rational& hbar, const Rational& beta);
/// eq1 with q^2 given directly (q^2 = 1 is the undeformed boson).
RewriteSystem system_eq1_generic(const Rational& hbar, const Rational& q_squared);
RewriteSystem system_eq5(const Rational& hbar, const Rational& beta);
RewriteSystem system_eq5_wrong(const Rational& hbar, const Rational& beta);
RewriteSystem system_canonical(const Rational& hbar);
RewriteSystem system_qparticle(const Rational& hbar, const Rational& beta);
RewriteSystem system_from_name(const std::string& name, const Rational& hbar,
                               const Rational& beta);

}  // namespace qps
