#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "polescout/serialize.hpp"

namespace polescout::experiments {

// Exit codes shared by the runners and the CLI.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitAssertionFailure = 1;
inline constexpr int kExitBadInput = 2;

// ---------------------------------------------------------------------------
// Monomial sweep: exact-rational rho on three ratios of (1 - t)^{p/q},
// started at n = 1, for p in [1, q-1] and q in [2, q_max]. Every case must
// extrapolate to exactly 1.

struct SweepConfig {
    long long q_max = 20;
};

struct SweepFailure {
    long long p = 0;
    long long q = 0;
    std::string final_value;
};

struct SweepReport {
    long long q_max = 0;
    std::size_t cases = 0;
    std::vector<SweepFailure> failures;

    bool ok() const { return failures.empty(); }
    json to_json() const;
};

SweepReport run_monomial_sweep(const SweepConfig& config);

// ---------------------------------------------------------------------------
// Error table: complex-double reproduction of the nearest-pole benchmark.
// For each pole P and degree d the runner builds two_pole_series(P, d+1),
// extrapolates the d+1 ratios and records the smallest error against the
// known limit 1.

struct ErrorTableConfig {
    std::vector<ComplexRational> poles;
    std::vector<long long> degrees{8, 16, 32};
    std::vector<Algorithm> algorithms{Algorithm::rho};
    std::size_t ratio_start = 0;
};

// The five benchmark poles, ordered by increasing distance from 1.
std::vector<ComplexRational> benchmark_poles();

struct ErrorTableCell {
    double min_error = std::numeric_limits<double>::infinity();
    std::size_t column = 0;
    std::size_t row = 0;
    std::size_t valid_entries = 0;
    bool degenerate = false;  // no valid estimate entries: min_error stays infinite
};

struct ErrorTableReport {
    ErrorTableConfig config;
    // cells[algorithm index][pole index][degree index]
    std::vector<std::vector<std::vector<ErrorTableCell>>> cells;

    const ErrorTableCell& cell(std::size_t algorithm, std::size_t pole, std::size_t degree) const {
        return cells[algorithm][pole][degree];
    }
    json to_json() const;
    std::string to_csv() const;
};

ErrorTableReport run_error_table(const ErrorTableConfig& config);

// ---------------------------------------------------------------------------
// Lemma checks: randomized exact verification of the convolution ratio
// identity plus the truncation-error decay of the reciprocal power
// expansion.

struct LemmaCheckConfig {
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    std::size_t sequence_length = 8;
    std::vector<Rational> expansion_poles{Rational(10), Rational(20), Rational(40)};
    long long max_truncation = 6;
};

struct IdentityFailure {
    std::size_t trial = 0;
    std::size_t n = 0;
    std::vector<std::string> a;
    std::vector<std::string> b;
    std::string direct;
    std::string factored;
    std::string intermediate;
    double gap_factored = 0.0;
    double gap_intermediate = 0.0;
};

struct ExpansionDecayRow {
    Rational pole;
    std::vector<double> errors;  // indexed by truncation order m
    bool strictly_decreasing = false;
};

struct LemmaCheckReport {
    LemmaCheckConfig config;
    std::size_t identity_trials = 0;
    double max_gap_factored = 0.0;
    double max_gap_intermediate = 0.0;
    std::vector<IdentityFailure> identity_failures;
    std::vector<ExpansionDecayRow> expansion_rows;
    bool doubling_factors_ok = true;

    bool ok() const;
    json to_json() const;
};

LemmaCheckReport run_lemma_check(const LemmaCheckConfig& config);

// ---------------------------------------------------------------------------
// Pole estimate on an externally supplied series file (any scalar domain).

struct PoleEstimateConfig {
    std::string series_path;
    Algorithm algorithm = Algorithm::rho;
    std::size_t ratio_start = 0;
};

json run_pole_estimate(const PoleEstimateConfig& config);
json run_pole_estimate_on(const json& series_document, Algorithm algorithm,
                          std::size_t ratio_start);

// ---------------------------------------------------------------------------
// Declarative dispatch: a config document {"command": ..., "parameters": ...}
// selects and runs one experiment. Reports go to `out` unless the parameters
// name an output path. Returns a process exit code.

int run_from_config(const json& config, std::ostream& out);

ComplexRational complex_rational_from_json(const json& j);
std::string iso8601_utc_now();

}  // namespace polescout::experiments
