#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <ostream>
#include <string_view>

namespace polescout {

// The three coefficient domains: exact rationals, exact complex rationals,
// and complex doubles. All series, ratio sequences and extrapolation tables
// are homogeneous in one of them. Expression templates are off so Rational
// deduces cleanly through the generic series and table code.
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using ComplexFloat = std::complex<double>;

// In the float domain a magnitude below this counts as an exact zero, so
// that ratio construction cannot overflow on denormal coefficients.
inline constexpr double kFloatZeroMagnitude = 1e-300;

struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() = default;
    ComplexRational(Rational real) : re(std::move(real)) {}
    ComplexRational(Rational real, Rational imag)
        : re(std::move(real)), im(std::move(imag)) {}
    ComplexRational(long long real, long long imag) : re(real), im(imag) {}

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
        const Rational norm = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / norm, (a.im * b.re - a.re * b.im) / norm};
    }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    ComplexRational& operator+=(const ComplexRational& o) { return *this = *this + o; }
    ComplexRational& operator*=(const ComplexRational& o) { return *this = *this * o; }
};

inline std::ostream& operator<<(std::ostream& os, const ComplexRational& z) {
    os << z.re;
    if (z.im >= 0)
        os << "+";
    return os << z.im << "I";
}

enum class Domain : std::uint8_t { rational, complex_rational, complex_float };

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr Domain domain = Domain::rational;
    static constexpr bool exact = true;
    static constexpr std::string_view name = "rational";

    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static Rational from_int(long long n) { return Rational(n); }
    static Rational from_ratio(long long p, long long q) { return Rational(p) / q; }
    static double magnitude(const Rational& x) {
        return std::abs(x.convert_to<double>());
    }
    static ComplexFloat to_complex(const Rational& x) {
        return {x.convert_to<double>(), 0.0};
    }
};

template <>
struct ScalarTraits<ComplexRational> {
    static constexpr Domain domain = Domain::complex_rational;
    static constexpr bool exact = true;
    static constexpr std::string_view name = "complex-rational";

    static bool is_zero(const ComplexRational& z) { return z.re.is_zero() && z.im.is_zero(); }
    static ComplexRational from_int(long long n) { return {Rational(n), Rational(0)}; }
    static ComplexRational from_ratio(long long p, long long q) {
        return {Rational(p) / q, Rational(0)};
    }
    static double magnitude(const ComplexRational& z) {
        return std::sqrt((z.re * z.re + z.im * z.im).convert_to<double>());
    }
    static ComplexFloat to_complex(const ComplexRational& z) {
        return {z.re.convert_to<double>(), z.im.convert_to<double>()};
    }
};

template <>
struct ScalarTraits<ComplexFloat> {
    static constexpr Domain domain = Domain::complex_float;
    static constexpr bool exact = false;
    static constexpr std::string_view name = "complex-float";

    static bool is_zero(const ComplexFloat& z) { return std::abs(z) < kFloatZeroMagnitude; }
    static ComplexFloat from_int(long long n) { return {static_cast<double>(n), 0.0}; }
    static ComplexFloat from_ratio(long long p, long long q) {
        return {static_cast<double>(p) / static_cast<double>(q), 0.0};
    }
    static double magnitude(const ComplexFloat& z) { return std::abs(z); }
    static ComplexFloat to_complex(const ComplexFloat& z) { return z; }
};

inline std::string_view domain_name(Domain d) {
    switch (d) {
        case Domain::rational: return "rational";
        case Domain::complex_rational: return "complex-rational";
        case Domain::complex_float: return "complex-float";
    }
    return "unknown";
}

}  // namespace polescout
