#include "polescout/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace polescout::experiments {

namespace {

std::string format_cell(double value) {
    if (std::isinf(value))
        return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1e", value);
    return buf;
}

std::string pole_label(const ComplexRational& p) {
    std::ostringstream os;
    os << p;
    return os.str();
}

json pole_to_json(const ComplexRational& p) { return scalar_to_json(p); }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot open output file: " + path);
    out << text;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

}  // namespace

std::string iso8601_utc_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ComplexRational complex_rational_from_json(const json& j) {
    if (!j.is_object())
        throw std::invalid_argument("a pole is an object with \"re\" and \"im\" fields");
    auto part = [&](const char* key) {
        auto it = j.find(key);
        if (it == j.end())
            return Rational(0);
        if (it->is_string())
            return rational_from_string(it->get<std::string>());
        if (it->is_number_integer())
            return Rational(it->get<long long>());
        throw std::invalid_argument(std::string("pole field \"") + key +
                                    "\" must be an integer or a \"num/den\" string");
    };
    return {part("re"), part("im")};
}

// ---------------------------------------------------------------------------
// Monomial sweep

SweepReport run_monomial_sweep(const SweepConfig& config) {
    if (config.q_max < 2)
        throw std::invalid_argument("sweep-monomial: q-max must be at least 2");

    SweepReport report;
    report.q_max = config.q_max;
    for (long long q = 2; q <= config.q_max; ++q) {
        for (long long p = 1; p < q; ++p) {
            ++report.cases;
            // Three ratios from n = 1 need coefficients through t^4.
            const auto series = monomial_path_series<Rational>(p, q, 4);
            const auto ratios = ratio_sequence(series, 1);
            const auto table = rho_table(ratios.values);
            const auto& last_column = table.columns.back();
            const bool valid = table.validity.back().back();
            if (!valid || last_column.back() != Rational(1)) {
                SweepFailure failure;
                failure.p = p;
                failure.q = q;
                failure.final_value = valid ? rational_to_string(last_column.back()) : "invalid";
                report.failures.push_back(std::move(failure));
            }
        }
    }
    return report;
}

json SweepReport::to_json() const {
    json failures_json = json::array();
    for (const auto& f : failures)
        failures_json.push_back({{"p", f.p}, {"q", f.q}, {"final", f.final_value}});
    return json{{"command", "sweep-monomial"},
                {"metadata",
                 {{"domain", "rational"},
                  {"ratio_start", 1},
                  {"ratio_count", 3},
                  {"generated_at", iso8601_utc_now()}}},
                {"q_max", q_max},
                {"cases", cases},
                {"failures", std::move(failures_json)}};
}

// ---------------------------------------------------------------------------
// Error table

std::vector<ComplexRational> benchmark_poles() {
    return {{Rational(-1) / 2, Rational(1)},
            {Rational(-1) / 2, Rational(2)},
            {Rational(-1), Rational(4)},
            {Rational(-2), Rational(8)},
            {Rational(-4), Rational(16)}};
}

namespace {

ErrorTableCell error_table_cell(const ComplexRational& pole, long long degree,
                                Algorithm algorithm, std::size_t ratio_start) {
    const ComplexFloat p = ScalarTraits<ComplexRational>::to_complex(pole);
    const auto series = two_pole_series<ComplexFloat>(p, degree + 1);
    const auto ratios = ratio_sequence(series, ratio_start);
    const auto table = build_table(algorithm, ratios.values, ratios.start);

    ErrorTableCell cell;
    cell.valid_entries = valid_estimate_entries(table);
    try {
        const MinError best = min_error_to(table, ComplexFloat{1.0});
        cell.min_error = best.error;
        cell.column = best.where.column;
        cell.row = best.where.row;
    } catch (const std::domain_error&) {
        cell.degenerate = true;
    }
    return cell;
}

}  // namespace

ErrorTableReport run_error_table(const ErrorTableConfig& config) {
    if (config.poles.empty())
        throw std::invalid_argument("error-table: pole list is empty");
    if (config.degrees.empty())
        throw std::invalid_argument("error-table: degree list is empty");
    if (config.algorithms.empty())
        throw std::invalid_argument("error-table: algorithm list is empty");
    for (const auto& d : config.degrees) {
        if (d < 3)
            throw std::invalid_argument("error-table: degrees must be at least 3");
    }
    const ComplexRational zero{Rational(0), Rational(0)};
    const ComplexRational one{Rational(1), Rational(0)};
    for (const auto& p : config.poles) {
        if (p == zero || p == one)
            throw std::invalid_argument("error-table: poles 0 and 1 are excluded");
    }

    ErrorTableReport report;
    report.config = config;
    for (Algorithm algorithm : config.algorithms) {
        std::vector<std::vector<ErrorTableCell>> rows;
        for (const auto& pole : config.poles) {
            std::vector<ErrorTableCell> row;
            for (long long degree : config.degrees)
                row.push_back(error_table_cell(pole, degree, algorithm, config.ratio_start));
            rows.push_back(std::move(row));
        }
        report.cells.push_back(std::move(rows));
    }
    return report;
}

json ErrorTableReport::to_json() const {
    json algorithms = json::array();
    for (Algorithm a : config.algorithms)
        algorithms.push_back(algorithm_name(a));

    json tables = json::array();
    for (std::size_t ai = 0; ai < config.algorithms.size(); ++ai) {
        json rows = json::array();
        for (std::size_t pi = 0; pi < config.poles.size(); ++pi) {
            json cells_json = json::array();
            for (std::size_t di = 0; di < config.degrees.size(); ++di) {
                const ErrorTableCell& c = cells[ai][pi][di];
                json cell{{"d", config.degrees[di]},
                          {"column", c.column},
                          {"row", c.row},
                          {"valid_entries", c.valid_entries}};
                if (c.degenerate)
                    cell["min_error"] = "inf";
                else
                    cell["min_error"] = c.min_error;
                cells_json.push_back(std::move(cell));
            }
            rows.push_back({{"pole", pole_to_json(config.poles[pi])},
                            {"cells", std::move(cells_json)}});
        }
        tables.push_back({{"algorithm", algorithm_name(config.algorithms[ai])},
                          {"rows", std::move(rows)}});
    }

    json degrees = json::array();
    for (long long d : config.degrees)
        degrees.push_back(d);
    return json{{"command", "error-table"},
                {"metadata",
                 {{"algorithms", std::move(algorithms)},
                  {"ratio_start", config.ratio_start},
                  {"domain", "complex-float"},
                  {"limit", 1},
                  {"generated_at", iso8601_utc_now()}}},
                {"degrees", std::move(degrees)},
                {"tables", std::move(tables)}};
}

std::string ErrorTableReport::to_csv() const {
    std::ostringstream out;
    out << "algorithm,P";
    for (long long d : config.degrees)
        out << ",d=" << d;
    out << "\n";
    for (std::size_t ai = 0; ai < config.algorithms.size(); ++ai) {
        for (std::size_t pi = 0; pi < config.poles.size(); ++pi) {
            out << algorithm_name(config.algorithms[ai]) << "," << pole_label(config.poles[pi]);
            for (std::size_t di = 0; di < config.degrees.size(); ++di)
                out << "," << format_cell(cells[ai][pi][di].min_error);
            out << "\n";
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Lemma checks

namespace {

bool is_doubled(const Rational& small, const Rational& large) { return large == 2 * small; }

}  // namespace

LemmaCheckReport run_lemma_check(const LemmaCheckConfig& config) {
    if (config.trials < 1)
        throw std::invalid_argument("lemma-check: trial count must be at least 1");
    if (config.sequence_length < 4)
        throw std::invalid_argument("lemma-check: sequence length must be at least 4");
    if (config.max_truncation < 1)
        throw std::invalid_argument("lemma-check: max truncation order must be at least 1");

    LemmaCheckReport report;
    report.config = config;

    std::mt19937_64 rng(config.seed);
    std::uniform_int_distribution<long long> digit(1, 9);
    std::uniform_int_distribution<std::size_t> pick_n(2, config.sequence_length - 2);

    for (std::size_t trial = 0; trial < config.trials; ++trial) {
        std::vector<Rational> a, b;
        for (std::size_t i = 0; i < config.sequence_length; ++i) {
            a.emplace_back(Rational(digit(rng)) / digit(rng));
            b.emplace_back(Rational(digit(rng)) / digit(rng));
        }
        const std::size_t n = pick_n(rng);
        const auto identity = convolution_ratio_identity(a, b, n);
        ++report.identity_trials;
        report.max_gap_factored = std::max(report.max_gap_factored, identity.gap_factored);
        report.max_gap_intermediate =
            std::max(report.max_gap_intermediate, identity.gap_intermediate);
        if (identity.direct != identity.factored || identity.direct != identity.intermediate) {
            IdentityFailure failure;
            failure.trial = trial;
            failure.n = n;
            for (const auto& x : a)
                failure.a.push_back(rational_to_string(x));
            for (const auto& x : b)
                failure.b.push_back(rational_to_string(x));
            failure.direct = rational_to_string(identity.direct);
            failure.factored = rational_to_string(identity.factored);
            failure.intermediate = rational_to_string(identity.intermediate);
            failure.gap_factored = identity.gap_factored;
            failure.gap_intermediate = identity.gap_intermediate;
            report.identity_failures.push_back(std::move(failure));
        }
    }

    const std::vector<Rational> denom{Rational(1), Rational(1)};
    for (const Rational& pole : config.expansion_poles) {
        ExpansionDecayRow row;
        row.pole = pole;
        for (long long m = 0; m <= config.max_truncation; ++m)
            row.errors.push_back(reciprocal_power_expansion(denom, 1, pole, m).error);
        row.strictly_decreasing = true;
        for (std::size_t m = 1; m < row.errors.size(); ++m)
            row.strictly_decreasing &= row.errors[m] < row.errors[m - 1];
        report.expansion_rows.push_back(std::move(row));
    }

    // Doubling |P| must shrink the order-m error by at least 2^m (factor-2 slack).
    for (std::size_t i = 0; i + 1 < report.expansion_rows.size(); ++i) {
        const auto& small = report.expansion_rows[i];
        const auto& large = report.expansion_rows[i + 1];
        if (!is_doubled(small.pole, large.pole))
            continue;
        for (std::size_t m = 0; m < small.errors.size(); ++m) {
            const double required = std::pow(2.0, static_cast<double>(m)) / 2.0;
            if (!(small.errors[m] >= required * large.errors[m]))
                report.doubling_factors_ok = false;
        }
    }
    return report;
}

bool LemmaCheckReport::ok() const {
    if (!identity_failures.empty() || !doubling_factors_ok)
        return false;
    if (max_gap_factored != 0.0 || max_gap_intermediate != 0.0)
        return false;
    for (const auto& row : expansion_rows) {
        if (!row.strictly_decreasing)
            return false;
    }
    return true;
}

json LemmaCheckReport::to_json() const {
    json failures = json::array();
    for (const auto& f : identity_failures) {
        failures.push_back({{"trial", f.trial},
                            {"n", f.n},
                            {"a", f.a},
                            {"b", f.b},
                            {"direct", f.direct},
                            {"factored", f.factored},
                            {"intermediate", f.intermediate},
                            {"gap_factored", f.gap_factored},
                            {"gap_intermediate", f.gap_intermediate}});
    }
    json decay = json::array();
    for (const auto& row : expansion_rows) {
        decay.push_back({{"pole", rational_to_string(row.pole)},
                         {"errors", row.errors},
                         {"strictly_decreasing", row.strictly_decreasing}});
    }
    return json{{"command", "lemma-check"},
                {"metadata",
                 {{"seed", config.seed},
                  {"trials", config.trials},
                  {"sequence_length", config.sequence_length},
                  {"generated_at", iso8601_utc_now()}}},
                {"identity",
                 {{"trials", identity_trials},
                  {"max_gap_factored", max_gap_factored},
                  {"max_gap_intermediate", max_gap_intermediate},
                  {"failures", std::move(failures)}}},
                {"expansion",
                 {{"denominator", {"1/1", "1/1"}},
                  {"rows", std::move(decay)},
                  {"doubling_factors_ok", doubling_factors_ok}}},
                {"ok", ok()}};
}

// ---------------------------------------------------------------------------
// Pole estimate

json run_pole_estimate_on(const json& series_document, Algorithm algorithm,
                          std::size_t ratio_start) {
    switch (series_domain(series_document)) {
        case Domain::rational:
            return estimate_to_json(
                fabry_estimate(series_from_json<Rational>(series_document), ratio_start, algorithm));
        case Domain::complex_rational:
            return estimate_to_json(fabry_estimate(series_from_json<ComplexRational>(series_document),
                                                   ratio_start, algorithm));
        case Domain::complex_float:
            return estimate_to_json(fabry_estimate(series_from_json<ComplexFloat>(series_document),
                                                   ratio_start, algorithm));
    }
    throw std::invalid_argument("pole-estimate: unknown series domain");
}

json run_pole_estimate(const PoleEstimateConfig& config) {
    return run_pole_estimate_on(load_json_file(config.series_path), config.algorithm,
                                config.ratio_start);
}

// ---------------------------------------------------------------------------
// Declarative dispatch

namespace {

template <typename T>
T parameter(const json& params, const char* key, T fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->get<T>();
}

int dispatch_sweep(const json& params, std::ostream& out) {
    SweepConfig config;
    config.q_max = parameter<long long>(params, "q_max", config.q_max);
    const SweepReport report = run_monomial_sweep(config);
    const json doc = report.to_json();
    if (auto it = params.find("out"); it != params.end() && it->is_string())
        write_text_file(it->get<std::string>(), doc.dump(2) + "\n");
    out << "sweep-monomial: " << report.cases << " cases, " << report.failures.size()
        << " failures\n";
    for (const auto& f : report.failures)
        out << "  FAIL p=" << f.p << " q=" << f.q << " final=" << f.final_value << "\n";
    return report.ok() ? kExitSuccess : kExitAssertionFailure;
}

int dispatch_error_table(const json& params, std::ostream& out) {
    ErrorTableConfig config;
    config.poles = benchmark_poles();
    if (auto it = params.find("poles"); it != params.end()) {
        const json poles_doc = it->is_string() ? load_json_file(it->get<std::string>()) : *it;
        if (!poles_doc.is_array() || poles_doc.empty())
            throw std::invalid_argument("error-table: poles must be a nonempty JSON array");
        config.poles.clear();
        for (const json& p : poles_doc)
            config.poles.push_back(complex_rational_from_json(p));
    }
    config.degrees = parameter<std::vector<long long>>(params, "degrees", config.degrees);
    config.ratio_start = parameter<std::size_t>(params, "ratio_start", config.ratio_start);
    if (parameter<bool>(params, "all_algorithms", false)) {
        config.algorithms = {Algorithm::richardson, Algorithm::aitken, Algorithm::rho,
                             Algorithm::theta};
    } else if (auto it = params.find("algorithm"); it != params.end()) {
        config.algorithms = {algorithm_from_name(it->get<std::string>())};
    }

    const ErrorTableReport report = run_error_table(config);
    const std::string csv = report.to_csv();
    bool csv_to_stdout = true;
    if (auto it = params.find("out"); it != params.end() && it->is_string()) {
        write_text_file(it->get<std::string>(), csv);
        csv_to_stdout = false;
    }
    if (auto it = params.find("json_out"); it != params.end() && it->is_string())
        write_text_file(it->get<std::string>(), report.to_json().dump(2) + "\n");
    if (csv_to_stdout)
        out << csv;
    else
        out << "error-table: " << config.poles.size() * config.degrees.size() << " cells per algorithm, "
            << config.algorithms.size() << " algorithm(s)\n";
    return kExitSuccess;
}

int dispatch_pole_estimate(const json& params, std::ostream& out) {
    PoleEstimateConfig config;
    auto it = params.find("series");
    if (it == params.end() || !it->is_string())
        throw std::invalid_argument("pole-estimate: missing \"series\" file path");
    config.series_path = it->get<std::string>();
    if (auto a = params.find("algorithm"); a != params.end())
        config.algorithm = algorithm_from_name(a->get<std::string>());
    config.ratio_start = parameter<std::size_t>(params, "ratio_start", config.ratio_start);

    const json estimate = run_pole_estimate(config);
    if (auto o = params.find("out"); o != params.end() && o->is_string())
        write_text_file(o->get<std::string>(), estimate.dump(2) + "\n");
    out << estimate.dump(2) << "\n";
    return kExitSuccess;
}

int dispatch_lemma_check(const json& params, std::ostream& out) {
    LemmaCheckConfig config;
    config.trials = parameter<std::size_t>(params, "trials", config.trials);
    config.seed = parameter<std::uint64_t>(params, "seed", config.seed);
    config.sequence_length =
        parameter<std::size_t>(params, "sequence_length", config.sequence_length);
    config.max_truncation = parameter<long long>(params, "max_truncation", config.max_truncation);
    if (auto it = params.find("expansion_poles"); it != params.end()) {
        config.expansion_poles.clear();
        for (const json& p : *it) {
            config.expansion_poles.push_back(p.is_string()
                                                 ? rational_from_string(p.get<std::string>())
                                                 : Rational(p.get<long long>()));
        }
    }

    const LemmaCheckReport report = run_lemma_check(config);
    const json doc = report.to_json();
    if (auto it = params.find("out"); it != params.end() && it->is_string())
        write_text_file(it->get<std::string>(), doc.dump(2) + "\n");
    out << "lemma-check: " << report.identity_trials
        << " identity trials, max gap " << report.max_gap_factored << " (factored) / "
        << report.max_gap_intermediate << " (intermediate), expansion decay "
        << (report.ok() ? "ok" : "FAILED") << "\n";
    return report.ok() ? kExitSuccess : kExitAssertionFailure;
}

}  // namespace

int run_from_config(const json& config, std::ostream& out) {
    if (!config.is_object() || !config.contains("command"))
        throw std::invalid_argument("config must be an object with a \"command\" field");
    const std::string command = config.at("command").get<std::string>();
    const json params = config.value("parameters", json::object());
    if (command == "sweep-monomial")
        return dispatch_sweep(params, out);
    if (command == "error-table")
        return dispatch_error_table(params, out);
    if (command == "pole-estimate")
        return dispatch_pole_estimate(params, out);
    if (command == "lemma-check")
        return dispatch_lemma_check(params, out);
    throw std::invalid_argument("unknown command: \"" + command + "\"");
}

}  // namespace polescout::experiments
