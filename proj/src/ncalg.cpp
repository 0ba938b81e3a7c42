#include "qps/ncalg.hpp"

#include <deque>

#include "qps/errors.hpp"

namespace qps {

NCPoly NCPoly::constant(ComplexRat c) {
    NCPoly p;
    if (!c.is_zero()) p.terms[Word{}] = std::move(c);
    return p;
}

NCPoly NCPoly::generator(int idx) {
    NCPoly p;
    p.terms[Word(1, static_cast<char>(idx))] = ComplexRat(1);
    return p;
}

NCPoly NCPoly::monomial(ComplexRat c, const Word& w) {
    NCPoly p;
    if (!c.is_zero()) p.terms[w] = std::move(c);
    return p;
}

void NCPoly::add_term(const Word& w, const ComplexRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms) add_term(w, c);
    return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms) add_term(w, -c);
    return *this;
}

NCPoly& NCPoly::operator*=(const ComplexRat& c) {
    if (c.is_zero()) {
        terms.clear();
        return *this;
    }
    for (auto& [w, coeff] : terms) coeff *= c;
    return *this;
}

NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly out;
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms) out.add_term(wa + wb, ca * cb);
    return out;
}

NCPoly operator-(const NCPoly& a) {
    NCPoly out;
    for (const auto& [w, c] : a.terms) out.terms[w] = -c;
    return out;
}

int RewriteSystem::generator_index(const std::string& gname) const {
    for (int i = 0; i < arity(); ++i)
        if (gen_names[i] == gname) return i;
    throw SymbolError("unknown generator: " + gname);
}

void RewriteSystem::add_rule(int hi, int lo, NCPoly replacement) {
    if (hi <= lo) throw ParameterError("rule must rewrite a wrong-order pair (hi > lo)");
    if (hi >= arity() || lo < 0) throw SymbolError("rule pair outside the alphabet");
    const Word sorted = word_of({lo, hi});
    for (const auto& [w, c] : replacement.terms) {
        bool ok = w.size() < 2 || w == sorted;
        if (!ok)
            throw ParameterError("rule replacement does not strictly reduce inversions");
    }
    rules[{hi, lo}] = std::move(replacement);
}

void RewriteSystem::derive_rule(int hi, int lo, const NCPoly& equation) {
    const Word target = word_of({hi, lo});
    auto it = equation.terms.find(target);
    if (it == equation.terms.end())
        throw ParameterError("equation does not contain the pair being isolated");
    ComplexRat c = it->second;
    NCPoly rest = equation;
    rest.terms.erase(target);
    // c * hi lo + rest = 0  =>  hi lo -> -rest / c
    NCPoly rhs = -rest * (ComplexRat(1) / c);
    add_rule(hi, lo, std::move(rhs));
}

namespace {

/// Position of the first (or last) wrong-order adjacent pair, or -1.
int find_redex(const Word& w, ReductionStrategy strategy) {
    if (strategy == ReductionStrategy::Leftmost) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] > w[i + 1]) return static_cast<int>(i);
        return -1;
    }
    for (std::size_t i = w.size(); i >= 2; --i)
        if (w[i - 2] > w[i - 1]) return static_cast<int>(i - 2);
    return -1;
}

}  // namespace

NCPoly normal_form(const NCPoly& f, const RewriteSystem& R, ReductionStrategy strategy) {
    for (const auto& [w, c] : f.terms)
        for (char g : w)
            if (g < 0 || g >= R.arity()) throw SymbolError("word uses an unknown generator");

    NCPoly out;
    std::deque<std::pair<Word, ComplexRat>> pending(f.terms.begin(), f.terms.end());
    while (!pending.empty()) {
        auto [w, c] = pending.front();
        pending.pop_front();
        int pos = find_redex(w, strategy);
        if (pos < 0) {
            out.add_term(w, c);
            continue;
        }
        auto rule = R.rules.find({w[pos], w[pos + 1]});
        if (rule == R.rules.end())
            throw ParameterError("no rule for wrong-order pair " +
                                 R.gen_names[static_cast<int>(w[pos])] + " " +
                                 R.gen_names[static_cast<int>(w[pos + 1])]);
        Word prefix = w.substr(0, pos);
        Word suffix = w.substr(pos + 2);
        for (const auto& [rw, rc] : rule->second.terms)
            pending.emplace_back(prefix + rw + suffix, c * rc);
    }
    return out;
}

NCPoly commutator(const NCPoly& A, const NCPoly& B, const RewriteSystem& R) {
    return normal_form(A * B - B * A, R);
}

NCPoly jacobi_check(const RewriteSystem& R, int g1, int g2, int g3) {
    // The inner commutators are reduced to their postulated relation values
    // before nesting; fully expanding first would cancel identically in the
    // free algebra and test nothing.
    auto G = [](int g) { return NCPoly::generator(g); };
    NCPoly sum = commutator(G(g1), commutator(G(g2), G(g3), R), R);
    sum += commutator(G(g2), commutator(G(g3), G(g1), R), R);
    sum += commutator(G(g3), commutator(G(g1), G(g2), R), R);
    return normal_form(sum, R);
}

bool verify_relation(const NCPoly& lhs, const NCPoly& rhs, const RewriteSystem& R) {
    return normal_form(lhs - rhs, R).is_zero();
}

NCPoly hermitian_conjugate(const NCPoly& f, const RewriteSystem& R) {
    if (R.dagger.size() != static_cast<std::size_t>(R.arity()))
        throw ParameterError("system has no adjoint permutation");
    NCPoly out;
    for (const auto& [w, c] : f.terms) {
        Word d;
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            d.push_back(static_cast<char>(R.dagger[static_cast<int>(*it)]));
        out.add_term(d, c.conj());
    }
    return out;
}

NCPoly rescale_generators(const NCPoly& f, const ComplexRat& c) {
    NCPoly out;
    for (const auto& [w, coeff] : f.terms) {
        ComplexRat factor(1);
        for (std::size_t i = 0; i < w.size(); ++i) factor *= c;
        out.add_term(w, coeff * factor);
    }
    return out;
}

RewriteSystem rescale_system(const RewriteSystem& R, const ComplexRat& c) {
    RewriteSystem out = R;
    out.rules.clear();
    for (const auto& [pair, rhs] : R.rules) {
        // relation c^2 (hi lo) = sum c^{len w} coeff w, renormalized
        NCPoly scaled = rescale_generators(rhs, c);
        ComplexRat inv = ComplexRat(1) / (c * c);
        out.rules[pair] = scaled * inv;
    }
    return out;
}

std::string to_string(const NCPoly& f, const RewriteSystem& R) {
    if (f.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [w, c] : f.terms) {
        if (!first) s += " + ";
        first = false;
        s += "(" + to_string(c) + ")";
        for (char g : w) s += " " + R.gen_names[static_cast<int>(g)];
    }
    return s;
}

namespace {
const ComplexRat kI = ComplexRat::i();
}

RewriteSystem system_eq1_generic(const Rational& hbar, const Rational& q_squared) {
    RewriteSystem R;
    R.name = "eq1";
    R.gen_names = {"b+", "b"};
    R.dagger = {1, 0};
    const int bdag = 0, b = 1;
    // b b+ - q^2 b+ b = hbar
    NCPoly rhs = NCPoly::monomial(ComplexRat(q_squared), word_of({bdag, b})) +
                 NCPoly::constant(ComplexRat(hbar));
    R.add_rule(b, bdag, rhs);
    return R;
}

RewriteSystem system_eq1(const Rational& hbar, const Rational& beta) {
    if (beta == 0) throw ParameterError("beta must be nonzero");
    // deformation tie q^2 = 1 - hbar/beta
    return system_eq1_generic(hbar, Rational(1) - hbar / beta);
}

RewriteSystem system_canonical(const Rational& hbar) {
    RewriteSystem R;
    R.name = "canonical";
    R.gen_names = {"x", "p"};
    R.dagger = {0, 1};
    const int x = 0, p = 1;
    // [x,p] = i hbar
    NCPoly eq = NCPoly::monomial(ComplexRat(1), word_of({x, p})) -
                NCPoly::monomial(ComplexRat(1), word_of({p, x})) -
                NCPoly::constant(kI * ComplexRat(hbar));
    R.derive_rule(p, x, eq);
    return R;
}

namespace {

/// Common scaffold for the lattice systems: the first relation is postulated,
/// the second is its Hermitian conjugate, the third is supplied by the caller
/// as the commutator [p+, p] = third.
RewriteSystem lattice_system(const std::string& name, const Rational& hbar, const Rational& beta,
                             const NCPoly& third_commutator) {
    RewriteSystem R;
    R.name = name;
    R.gen_names = {"x", "p", "p+"};
    R.dagger = {0, 2, 1};
    const int x = 0, p = 1, pdag = 2;
    const ComplexRat h{hbar};

    // postulate [x,p] = i hbar (1 - i x p / beta)
    NCPoly xp = NCPoly::monomial(ComplexRat(1), word_of({x, p}));
    NCPoly eq1 = xp - NCPoly::monomial(ComplexRat(1), word_of({p, x})) -
                 NCPoly::constant(kI * h) - xp * (kI * h * (-kI) * ComplexRat(Rational(1) / beta));
    R.derive_rule(p, x, eq1);

    // second relation by Hermitian conjugation of the first
    NCPoly eq2 = hermitian_conjugate(eq1, R);
    R.derive_rule(pdag, x, eq2);

    // third relation: [p+, p] = third_commutator
    NCPoly eq3 = NCPoly::monomial(ComplexRat(1), word_of({pdag, p})) -
                 NCPoly::monomial(ComplexRat(1), word_of({p, pdag})) - third_commutator;
    R.derive_rule(pdag, p, eq3);
    return R;
}

}  // namespace

RewriteSystem system_eq5(const Rational& hbar, const Rational& beta) {
    if (beta == 0) throw ParameterError("beta must be nonzero");
    // Jacobi-consistent ordering: [p+,p] = -(hbar/beta) p p+
    NCPoly third = NCPoly::monomial(ComplexRat(-hbar / beta), word_of({1, 2}));
    return lattice_system("eq5", hbar, beta, third);
}

RewriteSystem system_eq5_wrong(const Rational& hbar, const Rational& beta) {
    if (beta == 0) throw ParameterError("beta must be nonzero");
    // the rejected ordering: [p+,p] = -(hbar/beta) p+ p
    NCPoly third = NCPoly::monomial(ComplexRat(-hbar / beta), word_of({2, 1}));
    return lattice_system("eq5-wrong", hbar, beta, third);
}

RewriteSystem system_qparticle(const Rational& hbar, const Rational& beta) {
    if (beta == 0) throw ParameterError("beta must be nonzero");
    RewriteSystem R;
    R.name = "qparticle";
    R.gen_names = {"x", "p"};
    R.dagger = {0, 1};
    const int x = 0, p = 1;
    const ComplexRat h{hbar};
    ComplexRat half_over_beta{Rational(1, 2) / beta};
    // postulate [x,p] = i hbar (1 + (x p + p x)/(2 beta))
    NCPoly xp = NCPoly::monomial(ComplexRat(1), word_of({x, p}));
    NCPoly px = NCPoly::monomial(ComplexRat(1), word_of({p, x}));
    NCPoly eq = xp - px - NCPoly::constant(kI * h) - (xp + px) * (kI * h * half_over_beta);
    R.derive_rule(p, x, eq);
    return R;
}

RewriteSystem system_from_name(const std::string& name, const Rational& hbar,
                               const Rational& beta) {
    if (name == "eq1") return system_eq1(hbar, beta);
    if (name == "eq5") return system_eq5(hbar, beta);
    if (name == "eq5-wrong") return system_eq5_wrong(hbar, beta);
    if (name == "canonical") return system_canonical(hbar);
    if (name == "qparticle") return system_qparticle(hbar, beta);
    throw ParameterError("unknown rule system: " + name);
}

}  // namespace qps
