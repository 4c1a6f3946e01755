#pragma once

#include <string>

#include <json.hpp>

#include "polescout/extrapolation.hpp"
#include "polescout/homotopy.hpp"
#include "polescout/power_series.hpp"
#include "polescout/scalars.hpp"

namespace polescout {

using nlohmann::json;

// Scalars serialize as {"re": ..., "im": ..., "domain": ...}; exact parts are
// "num/den" strings so nothing is lost, float parts are JSON numbers.
std::string rational_to_string(const Rational& x);
Rational rational_from_string(const std::string& text);

json scalar_to_json(const Rational& x);
json scalar_to_json(const ComplexRational& z);
json scalar_to_json(const ComplexFloat& z);

template <typename T>
T scalar_from_json(const json& j);

Domain domain_from_json(const json& scalar_object);

// A series is a JSON array of coefficient objects sharing one domain.
template <typename T>
json series_to_json(const PowerSeries<T>& s) {
    json coeffs = json::array();
    for (const T& c : s.coefficients())
        coeffs.push_back(scalar_to_json(c));
    return coeffs;
}

template <typename T>
PowerSeries<T> series_from_json(const json& j);

Domain series_domain(const json& j);

template <typename T>
json table_to_json(const ExtrapolationTable<T>& table) {
    json columns = json::array();
    for (const auto& col : table.columns) {
        json entries = json::array();
        for (const T& e : col)
            entries.push_back(scalar_to_json(e));
        columns.push_back(std::move(entries));
    }
    return json{{"algorithm", algorithm_name(table.algorithm)},
                {"columns", std::move(columns)},
                {"validity", table.validity},
                {"estimate_columns", table.estimate_columns}};
}

template <typename T>
json estimate_to_json(const PoleEstimate<T>& e) {
    return json{{"raw", scalar_to_json(e.raw)},
                {"accelerated", scalar_to_json(e.accelerated)},
                {"radius", e.radius},
                {"algorithm", algorithm_name(e.algorithm)},
                {"location", {{"column", e.location.column}, {"row", e.location.row}}},
                {"diagnostics",
                 {{"ratio_count", e.ratio_count},
                  {"table_columns", e.table_columns},
                  {"valid_entries", e.valid_entries},
                  {"invalid_entries", e.invalid_entries}}}};
}

json fit_to_json(const ExpansionFit& fit);

}  // namespace polescout
