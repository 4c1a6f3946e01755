#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "polescout/extrapolation.hpp"
#include "polescout/power_series.hpp"
#include "polescout/scalars.hpp"

namespace polescout {

// Taylor series of the solution branch of x^q = (1 - t)^p with x(0) = 1,
// i.e. (1 - t)^{p/q}. Its only singularity is t = 1.
template <typename T>
PowerSeries<T> monomial_path_series(long long p, long long q, long long degree) {
    if (p < 1)
        throw std::invalid_argument("monomial_path_series: p must be at least 1");
    return binomial_series<T>(p, q, degree);
}

// Taylor series of sqrt((1 - t)(1 - t/P)), the x(0) = 1 branch of
// x^2 = C (1 - t)(P - t) with C = 1/P. Singularities sit at t = 1 and t = P.
template <typename T>
PowerSeries<T> two_pole_series(const T& pole, long long degree) {
    const T one = ScalarTraits<T>::from_int(1);
    if (ScalarTraits<T>::is_zero(pole) || ScalarTraits<T>::is_zero(pole - one))
        throw std::invalid_argument("two_pole_series: pole must differ from 0 and 1");
    if (degree < 1)
        throw std::invalid_argument("two_pole_series: degree must be at least 1");
    const PowerSeries<T> root = binomial_series<T>(1, 2, degree);
    return multiply(root, scale_argument(root, one / pole));
}

// Nearest-singularity estimate read off a ratio sequence: the raw last
// ratio plus the deepest valid extrapolated entry of the chosen algorithm.
template <typename T>
struct PoleEstimate {
    T raw{};
    T accelerated{};
    double radius = 0.0;
    Algorithm algorithm{};
    TableLocation location;
    std::size_t ratio_count = 0;
    std::size_t table_columns = 0;
    std::size_t valid_entries = 0;
    std::size_t invalid_entries = 0;
};

// The limit is unknown in production, so the accelerated value is picked by
// depth: the last valid entry of the deepest estimate column. Column 0 is an
// estimate column, so a degenerate table falls back to the raw ratio.
template <typename T>
PoleEstimate<T> fabry_estimate(const PowerSeries<T>& s, std::size_t start, Algorithm algorithm) {
    const RatioSequence<T> ratios = ratio_sequence(s, start);
    if (ratios.values.size() < 3)
        throw std::invalid_argument("fabry_estimate: need at least 3 ratios");
    const ExtrapolationTable<T> table = build_table(algorithm, ratios.values, ratios.start);

    PoleEstimate<T> estimate;
    estimate.raw = ratios.values.back();
    estimate.algorithm = algorithm;
    estimate.ratio_count = ratios.values.size();
    estimate.table_columns = table.columns.size();
    estimate.valid_entries = table.valid_entries();
    estimate.invalid_entries = table.invalid_entries();

    for (auto it = table.estimate_columns.rbegin(); it != table.estimate_columns.rend(); ++it) {
        const std::size_t col = *it;
        for (std::size_t row = table.columns[col].size(); row-- > 0;) {
            if (table.validity[col][row]) {
                estimate.accelerated = table.columns[col][row];
                estimate.location = {col, row};
                estimate.radius = ScalarTraits<T>::magnitude(estimate.accelerated);
                return estimate;
            }
        }
    }
    throw std::logic_error("fabry_estimate: no valid estimate entry");  // unreachable
}

// Ratio-of-convolution identity c_n/c_{n+1} = sum_k 1 / sum_l (a_l b_{n+1-l})/(a_k b_{n-k}),
// together with the factored variant that pulls the a_n/a_{n+1} ratio out of
// the inner sum. Both are checked against the directly computed ratio; in
// exact domains any nonzero gap is surfaced to the caller.
template <typename T>
struct ConvolutionRatioIdentity {
    T direct{};        // c_n / c_{n+1} from the convolution
    T factored{};      // variant with the leading a_n/a_{n+1} factor
    T intermediate{};  // variant before factoring
    double gap_factored = 0.0;
    double gap_intermediate = 0.0;
};

template <typename T>
ConvolutionRatioIdentity<T> convolution_ratio_identity(const std::vector<T>& a,
                                                       const std::vector<T>& b,
                                                       std::size_t n) {
    if (n + 2 > a.size() || n + 2 > b.size())
        throw std::invalid_argument("convolution_ratio_identity: need entries through index n+1");
    auto check_nonzero = [](const std::vector<T>& v, std::size_t limit, const char* tag) {
        for (std::size_t i = 0; i <= limit; ++i) {
            if (ScalarTraits<T>::is_zero(v[i])) {
                std::ostringstream msg;
                msg << "convolution_ratio_identity: zero entry in " << tag << " at index " << i;
                throw std::invalid_argument(msg.str());
            }
        }
    };
    check_nonzero(a, n + 1, "a");
    check_nonzero(b, n + 1, "b");

    auto convolution_at = [&](std::size_t m) {
        T sum = ScalarTraits<T>::from_int(0);
        for (std::size_t k = 0; k <= m; ++k)
            sum = sum + a[k] * b[m - k];
        return sum;
    };
    const T cn = convolution_at(n);
    const T cn1 = convolution_at(n + 1);
    if (ScalarTraits<T>::is_zero(cn) || ScalarTraits<T>::is_zero(cn1)) {
        std::ostringstream msg;
        msg << "convolution_ratio_identity: zero convolution coefficient at index "
            << (ScalarTraits<T>::is_zero(cn) ? n : n + 1);
        throw std::invalid_argument(msg.str());
    }

    ConvolutionRatioIdentity<T> result;
    result.direct = cn / cn1;

    const T ratio_a = a[n] / a[n + 1];
    T factored_sum = ScalarTraits<T>::from_int(0);
    T intermediate_sum = ScalarTraits<T>::from_int(0);
    for (std::size_t k = 0; k <= n; ++k) {
        T inner_factored = ScalarTraits<T>::from_int(0);
        T inner_intermediate = ScalarTraits<T>::from_int(0);
        for (std::size_t l = 0; l <= n + 1; ++l) {
            inner_factored += ratio_a * (a[l] / a[k]) * (b[n + 1 - l] / b[n - k]);
            inner_intermediate += (a[l] * b[n + 1 - l]) / (a[k] * b[n - k]);
        }
        factored_sum += ScalarTraits<T>::from_int(1) / inner_factored;
        intermediate_sum += ScalarTraits<T>::from_int(1) / inner_intermediate;
    }
    result.factored = ratio_a * factored_sum;
    result.intermediate = intermediate_sum;
    result.gap_factored = ScalarTraits<T>::magnitude(result.direct - result.factored);
    result.gap_intermediate = ScalarTraits<T>::magnitude(result.direct - result.intermediate);
    return result;
}

// Expansion of Q = 1 / (a_k P^k + ... + a_{-l} P^{-l}) as a truncated series
// sum_{i=k}^{k+m} beta_i (1/P)^i, valid for |P| large enough that the
// geometric-series variable stays inside the unit disk.
template <typename T>
struct ReciprocalExpansion {
    T exact{};
    T truncated{};
    double error = 0.0;
};

// coeffs runs from a_k (first) down to a_{k - coeffs.size() + 1};
// top_power is k. The truncation order m counts powers of 1/P past the
// leading (1/P)^k term.
template <typename T>
ReciprocalExpansion<T> reciprocal_power_expansion(const std::vector<T>& coeffs,
                                                  long long top_power, const T& pole,
                                                  long long truncation) {
    if (coeffs.empty())
        throw std::invalid_argument("reciprocal_power_expansion: empty coefficient list");
    if (ScalarTraits<T>::is_zero(coeffs.front()))
        throw std::invalid_argument("reciprocal_power_expansion: leading coefficient must be nonzero");
    if (truncation < 0)
        throw std::invalid_argument("reciprocal_power_expansion: negative truncation order");
    if (ScalarTraits<T>::magnitude(pole) <= 1.0)
        throw std::domain_error("reciprocal_power_expansion: expansion divergent at this P");

    const T one = ScalarTraits<T>::from_int(1);
    const T u = one / pole;

    // x(u) = sum_{j >= 1} (a_{k-j} / a_k) u^j, the geometric-series variable.
    std::vector<T> x_coeffs(static_cast<std::size_t>(truncation) + 1,
                            ScalarTraits<T>::from_int(0));
    for (std::size_t j = 1; j < coeffs.size() && j < x_coeffs.size(); ++j)
        x_coeffs[j] = coeffs[j] / coeffs.front();
    T x_value = ScalarTraits<T>::from_int(0);
    {
        T u_pow = u;
        for (std::size_t j = 1; j < coeffs.size(); ++j) {
            x_value = x_value + (coeffs[j] / coeffs.front()) * u_pow;
            u_pow = u_pow * u;
        }
    }
    if (ScalarTraits<T>::magnitude(x_value) >= 1.0)
        throw std::domain_error("reciprocal_power_expansion: expansion divergent at this P");

    // Geometric series sum_{i=0}^{m} (-x)^i truncated at order m in u.
    const PowerSeries<T> x_series{std::vector<T>(x_coeffs)};
    PowerSeries<T> power = PowerSeries<T>{[&] {
        std::vector<T> identity(x_coeffs.size(), ScalarTraits<T>::from_int(0));
        identity[0] = one;
        return identity;
    }()};
    std::vector<T> geometric(x_coeffs.size(), ScalarTraits<T>::from_int(0));
    geometric[0] = one;
    T sign = -one;
    for (long long i = 1; i <= truncation; ++i) {
        power = multiply(power, x_series);
        for (std::size_t j = 0; j < geometric.size(); ++j)
            geometric[j] = geometric[j] + sign * power[j];
        sign = -sign;
    }

    // Q_exact straight from the denominator; negative powers divide.
    T denominator = ScalarTraits<T>::from_int(0);
    {
        T p_pow = one;
        for (long long e = 0; e < top_power; ++e)
            p_pow = p_pow * pole;
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            denominator = denominator + coeffs[j] * p_pow;
            p_pow = p_pow / pole;
        }
    }
    if (ScalarTraits<T>::is_zero(denominator))
        throw std::domain_error("reciprocal_power_expansion: denominator vanishes at this P");

    ReciprocalExpansion<T> result;
    result.exact = one / denominator;
    T u_top = one;
    for (long long e = 0; e < top_power; ++e)
        u_top = u_top * u;
    for (long long e = top_power; e < 0; ++e)
        u_top = u_top * pole;
    result.truncated = evaluate(PowerSeries<T>{std::move(geometric)}, u) * u_top / coeffs.front();
    result.error = ScalarTraits<T>::magnitude(result.exact - result.truncated);
    return result;
}

// Least-squares fit of ratio values against 1 + sum_{k=1..K} gamma_k n^{-k}
// over the window n in [N, M].
struct ExpansionFit {
    std::size_t window_begin = 0;
    std::size_t window_end = 0;
    std::vector<ComplexFloat> coefficients;  // gamma_1 .. gamma_K
    double residual = 0.0;
};

namespace detail {

// Thin QR by modified Gram-Schmidt for a real matrix with complex rhs.
inline std::vector<ComplexFloat> least_squares(const std::vector<std::vector<double>>& a,
                                               const std::vector<ComplexFloat>& y) {
    const std::size_t rows = a.size();
    const std::size_t cols = a.front().size();
    std::vector<std::vector<double>> q = a;
    std::vector<std::vector<double>> r(cols, std::vector<double>(cols, 0.0));
    for (std::size_t j = 0; j < cols; ++j) {
        double norm = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            norm += q[i][j] * q[i][j];
        r[j][j] = std::sqrt(norm);
        if (r[j][j] == 0.0)
            throw std::domain_error("least_squares: rank-deficient design matrix");
        for (std::size_t i = 0; i < rows; ++i)
            q[i][j] /= r[j][j];
        for (std::size_t k = j + 1; k < cols; ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < rows; ++i)
                dot += q[i][j] * q[i][k];
            r[j][k] = dot;
            for (std::size_t i = 0; i < rows; ++i)
                q[i][k] -= dot * q[i][j];
        }
    }
    std::vector<ComplexFloat> rhs(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        ComplexFloat dot = 0.0;
        for (std::size_t i = 0; i < rows; ++i)
            dot += q[i][j] * y[i];
        rhs[j] = dot;
    }
    std::vector<ComplexFloat> x(cols);
    for (std::size_t j = cols; j-- > 0;) {
        ComplexFloat acc = rhs[j];
        for (std::size_t k = j + 1; k < cols; ++k)
            acc -= r[j][k] * x[k];
        x[j] = acc / r[j][j];
    }
    return x;
}

}  // namespace detail

inline ExpansionFit fit_inverse_n_expansion(const RatioSequence<ComplexFloat>& ratios,
                                            std::size_t window_begin, std::size_t window_end,
                                            std::size_t expansion_order) {
    if (expansion_order < 1)
        throw std::invalid_argument("fit_inverse_n_expansion: expansion order must be positive");
    if (window_begin < 1 || window_end <= window_begin)
        throw std::invalid_argument("fit_inverse_n_expansion: window must satisfy M > N >= 1");
    if (window_begin < ratios.start || window_end >= ratios.start + ratios.values.size())
        throw std::invalid_argument("fit_inverse_n_expansion: window outside the ratio sequence");
    const std::size_t points = window_end - window_begin + 1;
    if (points < expansion_order + 1)
        throw std::invalid_argument("fit_inverse_n_expansion: window underdetermines the fit");

    std::vector<std::vector<double>> design(points, std::vector<double>(expansion_order));
    std::vector<ComplexFloat> rhs(points);
    for (std::size_t i = 0; i < points; ++i) {
        const std::size_t n = window_begin + i;
        double p = 1.0;
        for (std::size_t k = 0; k < expansion_order; ++k) {
            p /= static_cast<double>(n);
            design[i][k] = p;
        }
        rhs[i] = ratios.values[n - ratios.start] - 1.0;
    }

    ExpansionFit fit;
    fit.window_begin = window_begin;
    fit.window_end = window_end;
    fit.coefficients = detail::least_squares(design, rhs);

    double sum_sq = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        ComplexFloat model = 0.0;
        for (std::size_t k = 0; k < expansion_order; ++k)
            model += fit.coefficients[k] * design[i][k];
        sum_sq += std::norm(rhs[i] - model);
    }
    fit.residual = std::sqrt(sum_sq / static_cast<double>(points));
    return fit;
}

// Default fit window for a ratio sequence of a degree-d series.
struct FitWindow {
    std::size_t begin;
    std::size_t end;
};

inline FitWindow default_fit_window(std::size_t degree) {
    return {std::max<std::size_t>(8, degree / 4), 3 * degree / 4};
}

}  // namespace polescout
