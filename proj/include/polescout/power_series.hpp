#pragma once

#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polescout/scalars.hpp"

namespace polescout {

// Truncated power series: coeffs[k] is the coefficient of t^k and the
// truncation degree is coeffs.size() - 1.
template <typename T>
class PowerSeries {
public:
    explicit PowerSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty())
            throw std::invalid_argument("power series needs at least the constant coefficient");
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    std::size_t size() const { return coeffs_.size(); }
    const T& operator[](std::size_t k) const { return coeffs_[k]; }
    const std::vector<T>& coefficients() const { return coeffs_; }

    PowerSeries truncated(std::size_t new_order) const {
        if (new_order > order())
            throw std::invalid_argument("cannot truncate to a higher order");
        return PowerSeries(std::vector<T>(coeffs_.begin(), coeffs_.begin() + new_order + 1));
    }

    friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<T> coeffs_;
};

// Consecutive-coefficient ratios r_n = c_n / c_{n+1}; values[j] holds
// r_{start+j}.
template <typename T>
struct RatioSequence {
    std::vector<T> values;
    std::size_t start = 0;
};

// Degree-d truncation of (1 - t)^{p/q} via the recurrence
// a_0 = 1, a_{n+1} = a_n (n - p/q) / (n + 1).
template <typename T>
PowerSeries<T> binomial_series(long long p, long long q, long long degree) {
    if (q < 1)
        throw std::invalid_argument("binomial_series: q must be a positive integer");
    if (degree < 0)
        throw std::invalid_argument("binomial_series: degree must be nonnegative");
    const T exponent = ScalarTraits<T>::from_ratio(p, q);
    std::vector<T> coeffs;
    coeffs.reserve(static_cast<std::size_t>(degree) + 1);
    coeffs.push_back(ScalarTraits<T>::from_int(1));
    for (long long n = 0; n < degree; ++n) {
        const T num = ScalarTraits<T>::from_int(n) - exponent;
        coeffs.push_back(coeffs.back() * num / ScalarTraits<T>::from_int(n + 1));
    }
    return PowerSeries<T>(std::move(coeffs));
}

// Substitutes t -> factor * t, i.e. multiplies coefficient k by factor^k.
template <typename T>
PowerSeries<T> scale_argument(const PowerSeries<T>& s, const T& factor) {
    if (ScalarTraits<T>::is_zero(factor))
        throw std::invalid_argument("scale_argument: factor must be nonzero");
    std::vector<T> coeffs;
    coeffs.reserve(s.size());
    T power = ScalarTraits<T>::from_int(1);
    for (std::size_t k = 0; k < s.size(); ++k) {
        coeffs.push_back(s[k] * power);
        power = power * factor;
    }
    return PowerSeries<T>(std::move(coeffs));
}

// Cauchy product truncated at the common order.
template <typename T>
PowerSeries<T> multiply(const PowerSeries<T>& a, const PowerSeries<T>& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("multiply: series must share the same truncation order");
    std::vector<T> coeffs(a.size(), ScalarTraits<T>::from_int(0));
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        T sum = ScalarTraits<T>::from_int(0);
        for (std::size_t k = 0; k <= n; ++k)
            sum = sum + a[k] * b[n - k];
        coeffs[n] = std::move(sum);
    }
    return PowerSeries<T>(std::move(coeffs));
}

// Ratios c_n / c_{n+1} for n = start .. order-1. Every coefficient from
// start through the last must be nonzero (the float domain treats magnitudes
// below kFloatZeroMagnitude as zero).
template <typename T>
RatioSequence<T> ratio_sequence(const PowerSeries<T>& s, std::size_t start = 0) {
    if (start >= s.order())
        throw std::invalid_argument("ratio_sequence: start index leaves no ratios");
    for (std::size_t k = start; k <= s.order(); ++k) {
        if (ScalarTraits<T>::is_zero(s[k])) {
            std::ostringstream msg;
            msg << "ratio_sequence: zero coefficient at index " << k;
            throw std::invalid_argument(msg.str());
        }
    }
    RatioSequence<T> r;
    r.start = start;
    r.values.reserve(s.order() - start);
    for (std::size_t n = start; n < s.order(); ++n)
        r.values.push_back(s[n] / s[n + 1]);
    return r;
}

// Horner evaluation of the truncated polynomial.
template <typename T>
T evaluate(const PowerSeries<T>& s, const T& t) {
    T acc = s[s.order()];
    for (std::size_t k = s.order(); k-- > 0;)
        acc = acc * t + s[k];
    return acc;
}

}  // namespace polescout
