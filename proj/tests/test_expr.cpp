#include <doctest.h>

#include <random>

#include "qps/expr.hpp"
#include "qps/serialize.hpp"
#include "qps/structure.hpp"

using namespace qps;

namespace {
PolyExpr sym(const std::string& s) { return PolyExpr::symbol(s); }
PolyExpr cst(int v) { return PolyExpr::constant(ComplexRat(v)); }
const PolyExpr I = PolyExpr::imaginary_unit();
}  // namespace

TEST_CASE("star binding: \"b* * b\" is the product of b* and b") {
    CHECK(parse_poly("b* * b") == sym("b*") * sym("b"));
    CHECK(parse_poly("b**b") == sym("b*") * sym("b"));
    CHECK(parse_poly("(p - p*)") == sym("p") - sym("p*"));
}

TEST_CASE("star before an operand is multiplication") {
    CHECK(parse_poly("p*p") == sym("p") * sym("p"));
    CHECK(parse_poly("p*x") == sym("p") * sym("x"));
    // documented consequence of the tokenization rule: all three stars below
    // multiply, so conjugate factors need whitespace or parens
    CHECK(parse_poly("p*p*x/beta - i*(p - p*)") ==
          sym("p") * sym("p") * sym("x") * sym(kBetaInv) - I * (sym("p") - sym("p*")));
}

TEST_CASE("the lattice Casimir parses with explicit disambiguation") {
    auto P = builtin(Builtin::Lattice, 1, Beta::symbolic());
    CHECK(parse_poly("p * p* * x/beta - i*(p - p*)") == P.casimirs[0]);
    CHECK(casimir_check(P, parse_poly("p * p* * x/beta - i*(p - p*)")));
}

TEST_CASE("powers and rational coefficients") {
    CHECK(parse_poly("p^2/2") == sym("p").pow(2) * ComplexRat(Rational(1, 2)));
    CHECK(parse_poly("3/4+1/2i") ==
          PolyExpr::constant(ComplexRat(Rational(3, 4), Rational(1, 2))));
    CHECK(parse_poly("2i") == PolyExpr::constant(ComplexRat(Rational(0), Rational(2))));
    CHECK(parse_poly("x^2^2") == sym("x").pow(4));  // right-assoc
    CHECK(parse_poly("-x^2") == -(sym("x").pow(2)));
    CHECK(parse_poly("x/beta^2") == sym("x") * PolyExpr::symbol(kBetaInv, 2));
    CHECK(parse_poly("i^2") == cst(-1));
}

TEST_CASE("precedence and grouping") {
    CHECK(parse_poly("x+p*x") == sym("x") + sym("p") * sym("x"));
    CHECK(parse_poly("(x+p)*x") == (sym("x") + sym("p")) * sym("x"));
    CHECK(parse_poly("x - p - x") == -sym("p"));
    CHECK(parse_poly("6/2/3") == cst(1));
}

TEST_CASE("parse errors carry position; non-polynomial input is rejected") {
    CHECK_THROWS_AS(parse_poly(""), ParseError);
    CHECK_THROWS_AS(parse_poly("x +"), ParseError);
    CHECK_THROWS_AS(parse_poly("(x"), ParseError);
    CHECK_THROWS_AS(parse_poly("x/p"), ParseError);       // divisor not constant
    CHECK_THROWS_AS(parse_poly("x^p"), ParseError);       // non-constant exponent
    CHECK_THROWS_AS(parse_poly("x^(1/2)"), ParseError);   // fractional power
    CHECK_THROWS_AS(parse_poly("beta*x"), ParseError);    // beta only divides
    CHECK_THROWS_AS(parse_poly("x @ p"), ParseError);
    try {
        parse_poly("x +\n* p");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("printer round trip: parse(print(p)) == p") {
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<int> coeff(-9, 9);
    std::uniform_int_distribution<int> len(0, 3);
    std::vector<std::string> vars{"b", "b*", "x", "p1"};
    std::uniform_int_distribution<int> pick(0, 3);
    for (int t = 0; t < 40; ++t) {
        PolyExpr p;
        for (int term = 0; term < 4; ++term) {
            Monomial m;
            for (int k = len(rng); k > 0; --k) m[vars[pick(rng)]] += 1;
            if (len(rng) == 1) m[kBetaInv] += 1;
            p.add_term(m, ComplexRat(Rational(coeff(rng), 4), Rational(coeff(rng), 3)));
        }
        CHECK(parse_poly(print_poly(p)) == p);
    }
    CHECK(parse_poly(print_poly(PolyExpr())) == PolyExpr());
}

TEST_CASE("structure JSON round trip") {
    for (auto which : {Builtin::QOsc1, Builtin::Lattice, Builtin::SuQn, Builtin::Canonical}) {
        auto P = builtin(which, 2, Beta::value(Rational(5, 2)));
        auto j = structure_to_json(P);
        auto Q = structure_from_json(j);
        CHECK(P.chart.names == Q.chart.names);
        CHECK(P.chart.conj == Q.chart.conj);
        CHECK((P.chart.kind == Q.chart.kind));
        CHECK(P.bivector == Q.bivector);
        CHECK(P.casimirs == Q.casimirs);
        CHECK(P.beta.numeric() == Q.beta.numeric());
    }
    auto S = builtin(Builtin::Diag, 3, Beta::symbolic());
    auto T = structure_from_json(structure_to_json(S));
    CHECK(T.beta.is_symbolic());
    CHECK(S.bivector == T.bivector);
}

TEST_CASE("rewrite system JSON round trip") {
    auto R = system_eq5(Rational(1, 10), Rational(1));
    auto j = system_to_json(R);
    auto S = system_from_json(j);
    CHECK(R.gen_names == S.gen_names);
    CHECK(R.dagger == S.dagger);
    REQUIRE(R.rules.size() == S.rules.size());
    for (const auto& [pair, rhs] : R.rules) CHECK(S.rules.at(pair) == rhs);
}
