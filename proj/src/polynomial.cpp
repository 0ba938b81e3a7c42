#include "qps/polynomial.hpp"

#include <sstream>

#include "qps/errors.hpp"

namespace qps {

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            return Rational(boost::multiprecision::cpp_int(text));
        }
        boost::multiprecision::cpp_int num(text.substr(0, slash));
        boost::multiprecision::cpp_int den(text.substr(slash + 1));
        if (den == 0) throw ParameterError("rational with zero denominator: " + text);
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception&) {
        throw ParameterError("cannot parse rational: " + text);
    }
}

std::string rational_str(const Rational& r) { return r.str(); }

std::string to_string(const ComplexRat& c) {
    if (c.im == 0) return rational_str(c.re);
    std::string im = rational_str(c.im) + "i";
    if (c.re == 0) return im;
    if (c.im > 0) return rational_str(c.re) + "+" + im;
    return rational_str(c.re) + im;  // im part already carries the minus
}

PolyExpr PolyExpr::constant(ComplexRat c) {
    PolyExpr p;
    if (!c.is_zero()) p.terms_[Monomial{}] = std::move(c);
    return p;
}

PolyExpr PolyExpr::symbol(const std::string& name, int exponent) {
    PolyExpr p;
    if (exponent == 0) return constant(ComplexRat(1));
    p.terms_[Monomial{{name, exponent}}] = ComplexRat(1);
    return p;
}

bool PolyExpr::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

ComplexRat PolyExpr::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? ComplexRat() : it->second;
}

void PolyExpr::add_term(const Monomial& m, const ComplexRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::set<std::string> PolyExpr::symbols() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
        for (const auto& [s, e] : m) out.insert(s);
    return out;
}

int PolyExpr::total_degree() const {
    int deg = 0;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (const auto& [s, e] : m) d += e;
        deg = std::max(deg, d);
    }
    return deg;
}

int PolyExpr::degree_in(const std::set<std::string>& vars) const {
    int deg = 0;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (const auto& [s, e] : m)
            if (vars.count(s)) d += e;
        deg = std::max(deg, d);
    }
    return deg;
}

PolyExpr PolyExpr::homogeneous_part(int k, const std::set<std::string>& vars) const {
    PolyExpr out;
    for (const auto& [m, c] : terms_) {
        int d = 0;
        for (const auto& [s, e] : m)
            if (vars.count(s)) d += e;
        if (d == k) out.terms_[m] = c;
    }
    return out;
}

PolyExpr PolyExpr::derivative(const std::string& sym) const {
    PolyExpr out;
    for (const auto& [m, c] : terms_) {
        auto it = m.find(sym);
        if (it == m.end()) continue;
        Monomial d = m;
        ComplexRat coeff = c * ComplexRat(Rational(it->second));
        if (it->second == 1)
            d.erase(sym);
        else
            d[sym] = it->second - 1;
        out.add_term(d, coeff);
    }
    return out;
}

PolyExpr PolyExpr::substitute(const std::map<std::string, PolyExpr>& repl) const {
    PolyExpr out;
    for (const auto& [m, c] : terms_) {
        PolyExpr term = PolyExpr::constant(c);
        Monomial untouched;
        for (const auto& [s, e] : m) {
            auto it = repl.find(s);
            if (it == repl.end())
                untouched[s] = e;
            else
                term *= it->second.pow(e);
        }
        if (!untouched.empty()) {
            PolyExpr mono;
            mono.terms_[untouched] = ComplexRat(1);
            term *= mono;
        }
        out += term;
    }
    return out;
}

PolyExpr PolyExpr::rename(const std::map<std::string, std::string>& names) const {
    PolyExpr out;
    for (const auto& [m, c] : terms_) {
        Monomial r;
        for (const auto& [s, e] : m) {
            auto it = names.find(s);
            r[it == names.end() ? s : it->second] += e;
        }
        out.add_term(r, c);
    }
    return out;
}

PolyExpr PolyExpr::conjugated(const std::function<std::string(const std::string&)>& partner) const {
    PolyExpr out;
    for (const auto& [m, c] : terms_) {
        Monomial r;
        for (const auto& [s, e] : m) r[partner(s)] += e;
        out.add_term(r, c.conj());
    }
    return out;
}

namespace {
std::complex<double> pow_int(std::complex<double> b, int e) {
    std::complex<double> r{1.0, 0.0};
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}
}  // namespace

std::complex<double> PolyExpr::evaluate(
    const std::map<std::string, std::complex<double>>& point) const {
    std::complex<double> total{0.0, 0.0};
    for (const auto& [m, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (const auto& [s, e] : m) {
            auto it = point.find(s);
            if (it == point.end()) throw SymbolError("unbound symbol in evaluate: " + s);
            t *= pow_int(it->second, e);
        }
        total += t;
    }
    return total;
}

ComplexRat PolyExpr::evaluate_exact(const std::map<std::string, ComplexRat>& point) const {
    ComplexRat total;
    for (const auto& [m, c] : terms_) {
        ComplexRat t = c;
        for (const auto& [s, e] : m) {
            auto it = point.find(s);
            if (it == point.end()) throw SymbolError("unbound symbol in evaluate: " + s);
            for (int i = 0; i < e; ++i) t *= it->second;
        }
        total += t;
    }
    return total;
}

PolyExpr PolyExpr::pow(int n) const {
    if (n < 0) throw ParameterError("negative polynomial power");
    PolyExpr r = constant(ComplexRat(1));
    for (int i = 0; i < n; ++i) r *= *this;
    return r;
}

PolyExpr& PolyExpr::operator+=(const PolyExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

PolyExpr& PolyExpr::operator-=(const PolyExpr& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

PolyExpr& PolyExpr::operator*=(const PolyExpr& o) {
    PolyExpr out;
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m = ma;
            for (const auto& [s, e] : mb) m[s] += e;
            out.add_term(m, ca * cb);
        }
    }
    terms_ = std::move(out.terms_);
    return *this;
}

PolyExpr& PolyExpr::operator*=(const ComplexRat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, coeff] : terms_) coeff *= c;
    return *this;
}

PolyExpr operator-(const PolyExpr& a) {
    PolyExpr out;
    for (const auto& [m, c] : a.terms_) out.terms_[m] = -c;
    return out;
}

std::string PolyExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << to_string(c) << ")";
        for (const auto& [s, e] : m) {
            os << "*" << s;
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

}  // namespace qps
