#include "qps/expr.hpp"

#include <cctype>
#include <sstream>
#include <vector>

#include "qps/errors.hpp"
#include "qps/structure.hpp"

namespace qps {

namespace {

struct Token {
    enum class Kind { Number, Symbol, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
    Kind kind;
    ComplexRat value;    // Number
    std::string text;    // Symbol
    int line, column;
};

class Lexer {
  public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_); }

    bool starts_operand(char c) const {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
    }

    void advance() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n')) {
            if (s_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= s_.size()) {
            tok_.kind = Token::Kind::End;
            return;
        }
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            lex_number();
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            lex_symbol();
            return;
        }
        ++pos_;
        ++col_;
        switch (c) {
            case '+': tok_.kind = Token::Kind::Plus; return;
            case '-': tok_.kind = Token::Kind::Minus; return;
            case '*': tok_.kind = Token::Kind::Star; return;
            case '/': tok_.kind = Token::Kind::Slash; return;
            case '^': tok_.kind = Token::Kind::Caret; return;
            case '(': tok_.kind = Token::Kind::LParen; return;
            case ')': tok_.kind = Token::Kind::RParen; return;
            default: fail(std::string("unexpected character '") + c + "'");
        }
    }

    std::string digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
            ++col_;
        }
        return s_.substr(start, pos_ - start);
    }

    void lex_number() {
        std::string num = digits();
        Rational value{boost::multiprecision::cpp_int(num)};
        // "p/qi" is one imaginary rational literal; a slash not followed by
        // digits-then-i is left to the grammar as division.
        if (pos_ < s_.size() && s_[pos_] == '/') {
            std::size_t save_pos = pos_;
            int save_col = col_;
            ++pos_;
            ++col_;
            if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                std::string den = digits();
                if (pos_ < s_.size() && s_[pos_] == 'i' && !is_ident_char(pos_ + 1)) {
                    ++pos_;
                    ++col_;
                    Rational q{boost::multiprecision::cpp_int(num),
                               boost::multiprecision::cpp_int(den)};
                    tok_.kind = Token::Kind::Number;
                    tok_.value = ComplexRat(Rational(0), q);
                    return;
                }
            }
            pos_ = save_pos;
            col_ = save_col;
        }
        tok_.kind = Token::Kind::Number;
        if (pos_ < s_.size() && s_[pos_] == 'i' && !is_ident_char(pos_ + 1)) {
            ++pos_;
            ++col_;
            tok_.value = ComplexRat(Rational(0), value);
        } else {
            tok_.value = ComplexRat(value);
        }
    }

    bool is_ident_char(std::size_t at) const {
        return at < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[at])) || s_[at] == '_');
    }

    void lex_symbol() {
        std::size_t start = pos_;
        while (is_ident_char(pos_)) {
            ++pos_;
            ++col_;
        }
        std::string name = s_.substr(start, pos_ - start);
        if (name == "i") {
            tok_.kind = Token::Kind::Number;
            tok_.value = ComplexRat::i();
            return;
        }
        // trailing conjugation star: part of the symbol unless an operand follows
        if (pos_ < s_.size() && s_[pos_] == '*') {
            bool operand_follows = pos_ + 1 < s_.size() && starts_operand(s_[pos_ + 1]);
            if (!operand_follows) {
                name += '*';
                ++pos_;
                ++col_;
            }
        }
        tok_.kind = Token::Kind::Symbol;
        tok_.text = name;
    }

    std::string s_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
  public:
    explicit Parser(const std::string& text) : lex_(text) {}

    std::unique_ptr<ExprAst> parse() {
        auto e = expr();
        const Token& t = lex_.peek();
        if (t.kind != Token::Kind::End)
            throw ParseError("trailing input after expression", t.line, t.column);
        return e;
    }

  private:
    static std::unique_ptr<ExprAst> node(ExprAst::Kind k, const Token& at) {
        auto n = std::make_unique<ExprAst>();
        n->kind = k;
        n->line = at.line;
        n->column = at.column;
        return n;
    }

    std::unique_ptr<ExprAst> expr() {
        auto lhs = term();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind != Token::Kind::Plus && t.kind != Token::Kind::Minus) return lhs;
            Token op = lex_.take();
            auto n = node(op.kind == Token::Kind::Plus ? ExprAst::Kind::Add : ExprAst::Kind::Sub,
                          op);
            n->lhs = std::move(lhs);
            n->rhs = term();
            lhs = std::move(n);
        }
    }

    std::unique_ptr<ExprAst> term() {
        auto lhs = factor();
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind != Token::Kind::Star && t.kind != Token::Kind::Slash) return lhs;
            Token op = lex_.take();
            auto n = node(op.kind == Token::Kind::Star ? ExprAst::Kind::Mul : ExprAst::Kind::Div,
                          op);
            n->lhs = std::move(lhs);
            n->rhs = factor();
            lhs = std::move(n);
        }
    }

    std::unique_ptr<ExprAst> factor() {
        const Token& t = lex_.peek();
        if (t.kind == Token::Kind::Minus) {
            Token op = lex_.take();
            auto n = node(ExprAst::Kind::Neg, op);
            n->lhs = factor();
            return n;
        }
        return power();
    }

    std::unique_ptr<ExprAst> power() {
        auto base = atom();
        if (lex_.peek().kind == Token::Kind::Caret) {
            Token op = lex_.take();
            auto n = node(ExprAst::Kind::Pow, op);
            n->lhs = std::move(base);
            n->rhs = factor();  // right-associative
            return n;
        }
        return base;
    }

    std::unique_ptr<ExprAst> atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Token::Kind::Number: {
                auto n = node(ExprAst::Kind::Literal, t);
                n->literal = t.value;
                return n;
            }
            case Token::Kind::Symbol: {
                auto n = node(ExprAst::Kind::Symbol, t);
                n->symbol = t.text;
                return n;
            }
            case Token::Kind::LParen: {
                auto inner = expr();
                Token close = lex_.take();
                if (close.kind != Token::Kind::RParen)
                    throw ParseError("expected ')'", close.line, close.column);
                return inner;
            }
            default: throw ParseError("expected an operand", t.line, t.column);
        }
    }

    Lexer lex_;
};

/// True when the polynomial is a single monomial over {beta} alone, i.e. an
/// admissible divisor c * beta^k.
bool invert_beta_monomial(const PolyExpr& p, PolyExpr& inverse) {
    if (p.terms().size() != 1) return false;
    const auto& [mono, coeff] = *p.terms().begin();
    for (const auto& [s, e] : mono)
        if (s != "beta") return false;
    PolyExpr inv = PolyExpr::constant(ComplexRat(1) / coeff);
    auto it = mono.find("beta");
    if (it != mono.end()) inv *= PolyExpr::symbol(kBetaInv, it->second);
    inverse = inv;
    return true;
}

}  // namespace

std::unique_ptr<ExprAst> parse_expr(const std::string& text) {
    if (text.empty()) throw ParseError("empty expression", 1, 1);
    return Parser(text).parse();
}

namespace {
/// Divisors may mention beta even though numerators may not.
PolyExpr lower_divisor(const ExprAst& ast) {
    if (ast.kind == ExprAst::Kind::Symbol && ast.symbol == "beta")
        return PolyExpr::symbol("beta");
    if (ast.kind == ExprAst::Kind::Pow && ast.lhs->kind == ExprAst::Kind::Symbol &&
        ast.lhs->symbol == "beta") {
        PolyExpr e = lower_to_poly(*ast.rhs);
        if (!e.is_constant() || !e.constant_term().is_real() ||
            boost::multiprecision::denominator(e.constant_term().re) != 1 ||
            e.constant_term().re < 1)
            throw ParseError("beta exponent must be a positive integer", ast.rhs->line,
                             ast.rhs->column);
        return PolyExpr::symbol("beta", e.constant_term().re.convert_to<int>());
    }
    return lower_to_poly(ast);
}
}  // namespace

PolyExpr lower_to_poly(const ExprAst& ast) {
    switch (ast.kind) {
        case ExprAst::Kind::Literal: return PolyExpr::constant(ast.literal);
        case ExprAst::Kind::Symbol:
            if (ast.symbol == "beta")
                throw ParseError("beta may only appear as a divisor", ast.line, ast.column);
            return PolyExpr::symbol(ast.symbol);
        case ExprAst::Kind::Neg: return -lower_to_poly(*ast.lhs);
        case ExprAst::Kind::Add: return lower_to_poly(*ast.lhs) + lower_to_poly(*ast.rhs);
        case ExprAst::Kind::Sub: return lower_to_poly(*ast.lhs) - lower_to_poly(*ast.rhs);
        case ExprAst::Kind::Mul: return lower_to_poly(*ast.lhs) * lower_to_poly(*ast.rhs);
        case ExprAst::Kind::Div: {
            PolyExpr num = lower_to_poly(*ast.lhs);
            PolyExpr inv;
            if (!invert_beta_monomial(lower_divisor(*ast.rhs), inv))
                throw ParseError("division only by constants or beta powers", ast.rhs->line,
                                 ast.rhs->column);
            return num * inv;
        }
        case ExprAst::Kind::Pow: {
            PolyExpr e = lower_to_poly(*ast.rhs);
            if (!e.is_constant() || !e.constant_term().is_real())
                throw ParseError("exponent must be an integer constant", ast.rhs->line,
                                 ast.rhs->column);
            Rational r = e.constant_term().re;
            if (boost::multiprecision::denominator(r) != 1 || r < 0)
                throw ParseError("exponent must be a nonnegative integer", ast.rhs->line,
                                 ast.rhs->column);
            return lower_to_poly(*ast.lhs).pow(r.convert_to<int>());
        }
    }
    throw ParseError("malformed expression tree", ast.line, ast.column);
}

PolyExpr parse_poly(const std::string& text) { return lower_to_poly(*parse_expr(text)); }

namespace {
std::string coeff_str(const ComplexRat& c) {
    if (c.im == 0) return rational_str(c.re);
    std::string im = rational_str(c.im) + "*i";
    if (c.re == 0) return im;
    return rational_str(c.re) + (c.im > 0 ? "+" : "") + im;
}
}  // namespace

std::string print_poly(const PolyExpr& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << coeff_str(c) << ")";
        int beta_inv_pow = 0;
        for (const auto& [s, e] : m) {
            if (s == kBetaInv) {
                beta_inv_pow = e;
                continue;
            }
            os << "*" << s;
            if (e != 1) os << "^" << e;
        }
        if (beta_inv_pow == 1)
            os << "/beta";
        else if (beta_inv_pow > 1)
            os << "/beta^" << beta_inv_pow;
    }
    return os.str();
}

}  // namespace qps
