#include "polescout/serialize.hpp"

#include <stdexcept>

namespace polescout {

namespace {

Rational rational_from_number(const json& j) {
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    throw std::invalid_argument(
        "exact domains accept integers or \"num/den\" strings, got: " + j.dump());
}

Rational exact_part_from_json(const json& j) {
    if (j.is_string())
        return rational_from_string(j.get<std::string>());
    return rational_from_number(j);
}

double float_part_from_json(const json& j) {
    if (j.is_number())
        return j.get<double>();
    throw std::invalid_argument("complex-float parts must be JSON numbers, got: " + j.dump());
}

const json& require_field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string("scalar object missing \"") + key + "\" field");
    return *it;
}

}  // namespace

std::string rational_to_string(const Rational& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

Rational rational_from_string(const std::string& text) {
    const auto slash = text.find('/');
    try {
        using Int = boost::multiprecision::cpp_int;
        if (slash == std::string::npos)
            return Rational(Int(text));
        const Int num(text.substr(0, slash));
        const Int den(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rational(num) / Rational(den);  // canonicalizes sign and gcd
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational: \"" + text + "\"");
    }
}

json scalar_to_json(const Rational& x) {
    return json{{"re", rational_to_string(x)},
                {"im", "0/1"},
                {"domain", ScalarTraits<Rational>::name}};
}

json scalar_to_json(const ComplexRational& z) {
    return json{{"re", rational_to_string(z.re)},
                {"im", rational_to_string(z.im)},
                {"domain", ScalarTraits<ComplexRational>::name}};
}

json scalar_to_json(const ComplexFloat& z) {
    return json{{"re", z.real()}, {"im", z.imag()}, {"domain", ScalarTraits<ComplexFloat>::name}};
}

Domain domain_from_json(const json& scalar_object) {
    const std::string tag = require_field(scalar_object, "domain").get<std::string>();
    if (tag == ScalarTraits<Rational>::name)
        return Domain::rational;
    if (tag == ScalarTraits<ComplexRational>::name)
        return Domain::complex_rational;
    if (tag == ScalarTraits<ComplexFloat>::name)
        return Domain::complex_float;
    throw std::invalid_argument("unknown scalar domain: \"" + tag + "\"");
}

template <>
Rational scalar_from_json<Rational>(const json& j) {
    if (domain_from_json(j) != Domain::rational)
        throw std::invalid_argument("expected a rational scalar, got domain \"" +
                                    require_field(j, "domain").get<std::string>() + "\"");
    const Rational im = exact_part_from_json(require_field(j, "im"));
    if (!im.is_zero())
        throw std::invalid_argument("rational scalar has a nonzero imaginary part");
    return exact_part_from_json(require_field(j, "re"));
}

template <>
ComplexRational scalar_from_json<ComplexRational>(const json& j) {
    const Domain d = domain_from_json(j);
    if (d != Domain::complex_rational && d != Domain::rational)
        throw std::invalid_argument("expected an exact scalar, got domain \"" +
                                    require_field(j, "domain").get<std::string>() + "\"");
    return {exact_part_from_json(require_field(j, "re")),
            exact_part_from_json(require_field(j, "im"))};
}

template <>
ComplexFloat scalar_from_json<ComplexFloat>(const json& j) {
    if (domain_from_json(j) != Domain::complex_float)
        throw std::invalid_argument("expected a complex-float scalar, got domain \"" +
                                    require_field(j, "domain").get<std::string>() + "\"");
    return {float_part_from_json(require_field(j, "re")),
            float_part_from_json(require_field(j, "im"))};
}

Domain series_domain(const json& j) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("a series is a nonempty JSON array of coefficient objects");
    const Domain d = domain_from_json(j.front());
    for (const json& c : j) {
        if (domain_from_json(c) != d)
            throw std::invalid_argument("series mixes coefficient domains");
    }
    return d;
}

template <typename T>
PowerSeries<T> series_from_json(const json& j) {
    series_domain(j);  // validates shape and homogeneity
    std::vector<T> coeffs;
    coeffs.reserve(j.size());
    for (const json& c : j)
        coeffs.push_back(scalar_from_json<T>(c));
    return PowerSeries<T>(std::move(coeffs));
}

template PowerSeries<Rational> series_from_json<Rational>(const json&);
template PowerSeries<ComplexRational> series_from_json<ComplexRational>(const json&);
template PowerSeries<ComplexFloat> series_from_json<ComplexFloat>(const json&);

json fit_to_json(const ExpansionFit& fit) {
    json gammas = json::array();
    for (const ComplexFloat& g : fit.coefficients)
        gammas.push_back(scalar_to_json(g));
    return json{{"window", {fit.window_begin, fit.window_end}},
                {"coefficients", std::move(gammas)},
                {"residual", fit.residual}};
}

}  // namespace polescout
