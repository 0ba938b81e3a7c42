#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <string>
#include <utility>

#include "qps/errors.hpp"

namespace qps {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// "p/q" or "p", optionally signed. Denominator must be nonzero.
Rational parse_rational(const std::string& text);

std::string rational_str(const Rational& r);

/// Complex scalar with exact rational real and imaginary parts.
/// All arithmetic is exact; no rounding ever happens inside PolyExpr/NCPoly.
struct ComplexRat {
    Rational re{0};
    Rational im{0};

    ComplexRat() = default;
    ComplexRat(int r) : re(r) {}            // NOLINT(google-explicit-constructor)
    ComplexRat(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
    ComplexRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static ComplexRat i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    ComplexRat conj() const { return {re, -im}; }

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    ComplexRat& operator+=(const ComplexRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    ComplexRat& operator-=(const ComplexRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    ComplexRat& operator*=(const ComplexRat& o) {
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    ComplexRat& operator/=(const ComplexRat& o) {
        Rational n = o.re * o.re + o.im * o.im;
        if (n == 0) throw ParameterError("division by zero complex rational");
        Rational r = (re * o.re + im * o.im) / n;
        Rational i = (im * o.re - re * o.im) / n;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend ComplexRat operator+(ComplexRat a, const ComplexRat& b) { return a += b; }
    friend ComplexRat operator-(ComplexRat a, const ComplexRat& b) { return a -= b; }
    friend ComplexRat operator*(ComplexRat a, const ComplexRat& b) { return a *= b; }
    friend ComplexRat operator/(ComplexRat a, const ComplexRat& b) { return a /= b; }
    friend ComplexRat operator-(const ComplexRat& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ComplexRat& a, const ComplexRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const ComplexRat& a, const ComplexRat& b) { return !(a == b); }
};

std::string to_string(const ComplexRat& c);

}  // namespace qps
