#include <doctest.h>

#include "polescout/serialize.hpp"

#include <random>

#include "test_support.hpp"

using namespace polescout;
using testsupport::random_rational;

TEST_CASE("rational strings round-trip and stay canonical") {
    CHECK(rational_to_string(Rational(-7) / 18) == "-7/18");
    CHECK(rational_from_string("-7/18") == Rational(-7) / 18);
    CHECK(rational_from_string("6/-8") == Rational(-3) / 4);
    CHECK(rational_from_string("3") == Rational(3));
    CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
}

TEST_CASE("scalar JSON carries re, im and domain") {
    const json r = scalar_to_json(Rational(1) / 2);
    CHECK(r.at("re") == "1/2");
    CHECK(r.at("im") == "0/1");
    CHECK(r.at("domain") == "rational");

    const json z = scalar_to_json(ComplexRational{Rational(-1) / 2, Rational(1)});
    CHECK(z.at("domain") == "complex-rational");
    CHECK(scalar_from_json<ComplexRational>(z) == ComplexRational{Rational(-1) / 2, Rational(1)});

    const json f = scalar_to_json(ComplexFloat{0.125, -3.5});
    CHECK(f.at("re") == 0.125);
    CHECK(f.at("im") == -3.5);
    CHECK(scalar_from_json<ComplexFloat>(f) == ComplexFloat{0.125, -3.5});
}

TEST_CASE("scalar JSON round-trips across all domains") {
    std::mt19937_64 rng(606);
    for (int trial = 0; trial < 30; ++trial) {
        const Rational r = random_rational(rng, -100, 100);
        CHECK(scalar_from_json<Rational>(scalar_to_json(r)) == r);

        const ComplexRational z{random_rational(rng, -50, 50), random_rational(rng, -50, 50)};
        CHECK(scalar_from_json<ComplexRational>(scalar_to_json(z)) == z);

        std::uniform_real_distribution<double> real(-10.0, 10.0);
        const ComplexFloat f{real(rng), real(rng)};
        CHECK(scalar_from_json<ComplexFloat>(json::parse(scalar_to_json(f).dump())) == f);
    }
}

TEST_CASE("scalar JSON rejects domain and shape violations") {
    CHECK_THROWS_AS(scalar_from_json<Rational>(json{{"re", "1/2"}, {"im", "1/3"},
                                                    {"domain", "rational"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_json<Rational>(json{{"re", "1/2"}, {"im", "0"},
                                                    {"domain", "complex-float"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_json<ComplexFloat>(json{{"re", "x"}, {"im", 0.0},
                                                        {"domain", "complex-float"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_json<Rational>(json{{"re", "1/2"}}), std::invalid_argument);
    CHECK_THROWS_AS(scalar_from_json<Rational>(json{{"re", 0.5}, {"im", "0"},
                                                    {"domain", "rational"}}),
                    std::invalid_argument);
}

TEST_CASE("series JSON round-trips and validates homogeneity") {
    const auto s = binomial_series<Rational>(7, 18, 5);
    const json doc = series_to_json(s);
    CHECK(doc.is_array());
    CHECK(doc.size() == 6);
    CHECK(series_domain(doc) == Domain::rational);
    CHECK(series_from_json<Rational>(doc) == s);

    const auto f = two_pole_series<ComplexFloat>(ComplexFloat{-2.0, 8.0}, 12);
    CHECK(series_from_json<ComplexFloat>(json::parse(series_to_json(f).dump())) == f);

    json mixed = doc;
    mixed.push_back(scalar_to_json(ComplexFloat{1.0, 0.0}));
    CHECK_THROWS_AS(series_domain(mixed), std::invalid_argument);
    CHECK_THROWS_AS(series_domain(json::array()), std::invalid_argument);
}

TEST_CASE("table JSON exposes algorithm, columns and validity") {
    const auto table = rho_table(std::vector<Rational>{Rational(36) / 11, Rational(54) / 29,
                                                       Rational(72) / 47});
    const json doc = table_to_json(table);
    CHECK(doc.at("algorithm") == "rho");
    CHECK(doc.at("columns").size() == 3);
    CHECK(doc.at("columns")[2][0].at("re") == "1/1");
    CHECK(doc.at("validity")[2][0] == true);
    CHECK(doc.at("estimate_columns") == json{0, 2});
}

TEST_CASE("pole estimate JSON carries diagnostics") {
    const auto s = two_pole_series<ComplexFloat>(ComplexFloat{-2.0, 8.0}, 16);
    const auto estimate = fabry_estimate(s, 0, Algorithm::rho);
    const json doc = estimate_to_json(estimate);
    CHECK(doc.at("algorithm") == "rho");
    CHECK(doc.at("radius").get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(doc.at("location").contains("column"));
    CHECK(doc.at("diagnostics").at("ratio_count") == 16);
}

TEST_CASE("expansion fit JSON") {
    RatioSequence<ComplexFloat> ratios;
    ratios.start = 1;
    for (std::size_t n = 1; n <= 10; ++n)
        ratios.values.emplace_back(1.0 + 2.0 / static_cast<double>(n), 0.0);
    const json doc = fit_to_json(fit_inverse_n_expansion(ratios, 1, 10, 1));
    CHECK(doc.at("window") == json{1, 10});
    CHECK(doc.at("coefficients").size() == 1);
    CHECK(doc.at("residual").get<double>() < 1e-12);
}
