#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "polescout/scalars.hpp"

namespace polescout {

enum class Algorithm : std::uint8_t { richardson, aitken, rho, theta };

inline std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::richardson: return "richardson";
        case Algorithm::aitken: return "aitken";
        case Algorithm::rho: return "rho";
        case Algorithm::theta: return "theta";
    }
    return "unknown";
}

inline Algorithm algorithm_from_name(std::string_view name) {
    if (name == "richardson") return Algorithm::richardson;
    if (name == "aitken") return Algorithm::aitken;
    if (name == "rho") return Algorithm::rho;
    if (name == "theta") return Algorithm::theta;
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

// Relative guard for float-domain denominators. Exact domains only reject
// exact zeros; degenerate entries are flagged invalid, never thrown.
inline constexpr double kDenominatorGuard = 1e-13;

template <typename T>
bool degenerate_denominator(double numerator_magnitude, const T& den) {
    if constexpr (ScalarTraits<T>::exact)
        return ScalarTraits<T>::is_zero(den);
    else
        return ScalarTraits<T>::magnitude(den) <
               kDenominatorGuard * std::max(1.0, numerator_magnitude);
}

// Triangular table of one transformation. columns[0] is the input sequence;
// validity parallels columns and invalidity propagates to every entry
// computed from an invalid one. estimate_columns lists the columns whose
// entries approximate the limit (odd rho/theta columns are auxiliary
// inverse differences).
template <typename T>
struct ExtrapolationTable {
    Algorithm algorithm{};
    std::vector<std::vector<T>> columns;
    std::vector<std::vector<bool>> validity;
    std::vector<std::size_t> estimate_columns;

    bool is_valid(std::size_t col, std::size_t row) const { return validity[col][row]; }
    const T& entry(std::size_t col, std::size_t row) const { return columns[col][row]; }

    std::size_t valid_entries() const { return count(true); }
    std::size_t invalid_entries() const { return count(false); }

private:
    std::size_t count(bool wanted) const {
        std::size_t n = 0;
        for (const auto& col : validity)
            for (bool v : col)
                n += (v == wanted);
        return n;
    }
};

namespace detail {

// Appends value/flag pair, storing a placeholder zero for invalid entries.
template <typename T>
void push_entry(std::vector<T>& col, std::vector<bool>& flags, bool ok, T value) {
    col.push_back(ok ? std::move(value) : ScalarTraits<T>::from_int(0));
    flags.push_back(ok);
}

}  // namespace detail

// Wynn's rho algorithm with auxiliary nodes x(n) = n + 1:
//   rho_1[n]  = 1 / (s[n+1] - s[n])
//   rho_k[n]  = rho_{k-2}[n+1] + k / (rho_{k-1}[n+1] - rho_{k-1}[n])
// Even columns approximate the limit.
template <typename T>
ExtrapolationTable<T> rho_table(const std::vector<T>& seq) {
    const std::size_t n = seq.size();
    if (n < 3)
        throw std::invalid_argument("rho_table: need at least 3 sequence entries");

    ExtrapolationTable<T> table;
    table.algorithm = Algorithm::rho;
    table.columns.push_back(seq);
    table.validity.emplace_back(n, true);

    std::vector<T> col1;
    std::vector<bool> val1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const T den = seq[i + 1] - seq[i];
        const bool ok = !degenerate_denominator(1.0, den);
        detail::push_entry(col1, val1, ok,
                           ok ? ScalarTraits<T>::from_int(1) / den : T{});
    }
    table.columns.push_back(std::move(col1));
    table.validity.push_back(std::move(val1));

    for (std::size_t k = 2; k < n; ++k) {
        std::vector<T> col;
        std::vector<bool> val;
        const auto& prev = table.columns[k - 1];
        const auto& prev2 = table.columns[k - 2];
        const auto& pv = table.validity[k - 1];
        const auto& pv2 = table.validity[k - 2];
        for (std::size_t j = 0; j + k < n; ++j) {
            bool ok = pv[j] && pv[j + 1] && pv2[j + 1];
            T value{};
            if (ok) {
                const T den = prev[j + 1] - prev[j];
                ok = !degenerate_denominator(static_cast<double>(k), den);
                if (ok)
                    value = prev2[j + 1] + ScalarTraits<T>::from_int(static_cast<long long>(k)) / den;
            }
            detail::push_entry(col, val, ok, std::move(value));
        }
        table.columns.push_back(std::move(col));
        table.validity.push_back(std::move(val));
    }

    for (std::size_t k = 0; k < table.columns.size(); k += 2)
        table.estimate_columns.push_back(k);
    return table;
}

// Iterated Aitken delta-squared: each column applies
// s_n -> s_n - (delta s_n)^2 / (delta^2 s_n) to the previous one, consuming
// two entries per pass. Every column is an estimate column.
template <typename T>
ExtrapolationTable<T> aitken_table(const std::vector<T>& seq) {
    if (seq.size() < 3)
        throw std::invalid_argument("aitken_table: need at least 3 sequence entries");

    ExtrapolationTable<T> table;
    table.algorithm = Algorithm::aitken;
    table.columns.push_back(seq);
    table.validity.emplace_back(seq.size(), true);

    while (table.columns.back().size() >= 3) {
        const auto& prev = table.columns.back();
        const auto& pv = table.validity.back();
        std::vector<T> col;
        std::vector<bool> val;
        for (std::size_t i = 0; i + 2 < prev.size(); ++i) {
            bool ok = pv[i] && pv[i + 1] && pv[i + 2];
            T value{};
            if (ok) {
                const T d1 = prev[i + 1] - prev[i];
                const T d2 = prev[i + 2] - prev[i + 1] - d1;
                const double num_mag = ScalarTraits<T>::magnitude(d1);
                ok = !degenerate_denominator(num_mag * num_mag, d2);
                if (ok)
                    value = prev[i] - d1 * d1 / d2;
            }
            detail::push_entry(col, val, ok, std::move(value));
        }
        table.columns.push_back(std::move(col));
        table.validity.push_back(std::move(val));
    }

    for (std::size_t k = 0; k < table.columns.size(); ++k)
        table.estimate_columns.push_back(k);
    return table;
}

// Polynomial extrapolation to x = 0 in the variable x_n = 1/(n + start + 1):
//   T_k[n] = (x_{n+k} T_{k-1}[n] - x_n T_{k-1}[n+1]) / (x_{n+k} - x_n).
// Column K annihilates error expansions of degree K in 1/(n + start + 1).
template <typename T>
ExtrapolationTable<T> richardson_table(const std::vector<T>& seq, std::size_t start = 0) {
    const std::size_t n = seq.size();
    if (n < 2)
        throw std::invalid_argument("richardson_table: need at least 2 sequence entries");

    std::vector<T> nodes;
    nodes.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        nodes.push_back(ScalarTraits<T>::from_ratio(1, static_cast<long long>(i + start + 1)));

    ExtrapolationTable<T> table;
    table.algorithm = Algorithm::richardson;
    table.columns.push_back(seq);
    table.validity.emplace_back(n, true);

    for (std::size_t k = 1; k < n; ++k) {
        const auto& prev = table.columns[k - 1];
        std::vector<T> col;
        col.reserve(n - k);
        for (std::size_t j = 0; j + k < n; ++j) {
            const T den = nodes[j + k] - nodes[j];
            col.push_back((nodes[j + k] * prev[j] - nodes[j] * prev[j + 1]) / den);
        }
        table.validity.emplace_back(col.size(), true);
        table.columns.push_back(std::move(col));
    }

    for (std::size_t k = 0; k < table.columns.size(); ++k)
        table.estimate_columns.push_back(k);
    return table;
}

// Brezinski's theta algorithm:
//   theta_{2k+1}[n] = theta_{2k-1}[n+1] + 1 / (delta theta_{2k}[n])
//   theta_{2k+2}[n] = theta_{2k}[n+1]
//       + (delta theta_{2k}[n+1]) (delta theta_{2k+1}[n+1]) / (delta^2 theta_{2k+1}[n])
// with theta_{-1} = 0. Even columns approximate the limit; odd columns are
// auxiliary. Each odd step consumes one entry and each even step two.
template <typename T>
ExtrapolationTable<T> theta_table(const std::vector<T>& seq) {
    if (seq.size() < 3)
        throw std::invalid_argument("theta_table: need at least 3 sequence entries");

    ExtrapolationTable<T> table;
    table.algorithm = Algorithm::theta;
    table.columns.push_back(seq);
    table.validity.emplace_back(seq.size(), true);

    for (;;) {
        const std::size_t m = table.columns.size();
        std::vector<T> col;
        std::vector<bool> val;
        if (m % 2 == 1) {
            const auto& even = table.columns[m - 1];
            const auto& ev = table.validity[m - 1];
            if (even.size() < 2)
                break;
            for (std::size_t i = 0; i + 1 < even.size(); ++i) {
                bool ok = ev[i] && ev[i + 1] && (m == 1 || table.validity[m - 2][i + 1]);
                T value{};
                if (ok) {
                    const T den = even[i + 1] - even[i];
                    ok = !degenerate_denominator(1.0, den);
                    if (ok) {
                        const T base = (m == 1) ? ScalarTraits<T>::from_int(0)
                                                : table.columns[m - 2][i + 1];
                        value = base + ScalarTraits<T>::from_int(1) / den;
                    }
                }
                detail::push_entry(col, val, ok, std::move(value));
            }
        } else {
            const auto& even = table.columns[m - 2];
            const auto& odd = table.columns[m - 1];
            const auto& ev = table.validity[m - 2];
            const auto& ov = table.validity[m - 1];
            if (odd.size() < 3)
                break;
            for (std::size_t i = 0; i + 2 < odd.size(); ++i) {
                bool ok = ev[i + 1] && ev[i + 2] && ov[i] && ov[i + 1] && ov[i + 2];
                T value{};
                if (ok) {
                    const T num = (even[i + 2] - even[i + 1]) * (odd[i + 2] - odd[i + 1]);
                    const T den = odd[i + 2] - odd[i + 1] - (odd[i + 1] - odd[i]);
                    ok = !degenerate_denominator(ScalarTraits<T>::magnitude(num), den);
                    if (ok)
                        value = even[i + 1] + num / den;
                }
                detail::push_entry(col, val, ok, std::move(value));
            }
        }
        if (col.empty())
            break;
        table.columns.push_back(std::move(col));
        table.validity.push_back(std::move(val));
    }

    for (std::size_t k = 0; k < table.columns.size(); k += 2)
        table.estimate_columns.push_back(k);
    return table;
}

template <typename T>
ExtrapolationTable<T> build_table(Algorithm algorithm, const std::vector<T>& seq,
                                  std::size_t richardson_start = 0) {
    switch (algorithm) {
        case Algorithm::richardson: return richardson_table(seq, richardson_start);
        case Algorithm::aitken: return aitken_table(seq);
        case Algorithm::rho: return rho_table(seq);
        case Algorithm::theta: return theta_table(seq);
    }
    throw std::invalid_argument("build_table: unknown algorithm");
}

struct TableLocation {
    std::size_t column = 0;
    std::size_t row = 0;
};

struct MinError {
    double error = 0.0;
    TableLocation where;
};

// Smallest |entry - limit| over valid entries of estimate columns beyond
// column 0. Exact-domain differences convert to a double magnitude, so an
// exact hit reports 0.0 exactly.
template <typename T>
MinError min_error_to(const ExtrapolationTable<T>& table, const T& limit) {
    bool found = false;
    MinError best;
    for (std::size_t col : table.estimate_columns) {
        if (col == 0)
            continue;
        for (std::size_t row = 0; row < table.columns[col].size(); ++row) {
            if (!table.validity[col][row])
                continue;
            const double err = ScalarTraits<T>::magnitude(table.columns[col][row] - limit);
            if (!found || err < best.error) {
                found = true;
                best.error = err;
                best.where = {col, row};
            }
        }
    }
    if (!found)
        throw std::domain_error("min_error_to: no valid estimate entries beyond column 0");
    return best;
}

// Valid entries in estimate columns beyond column 0.
template <typename T>
std::size_t valid_estimate_entries(const ExtrapolationTable<T>& table) {
    std::size_t n = 0;
    for (std::size_t col : table.estimate_columns) {
        if (col == 0)
            continue;
        for (bool v : table.validity[col])
            n += v;
    }
    return n;
}

}  // namespace polescout
