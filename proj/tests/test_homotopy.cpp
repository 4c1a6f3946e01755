#include <doctest.h>

#include "polescout/homotopy.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "test_support.hpp"

using namespace polescout;
using testsupport::convolve;
using testsupport::random_positive_rational;

TEST_CASE("monomial path series: ratios, p = q collapse, and self-consistency") {
    const auto s = monomial_path_series<Rational>(7, 18, 4);
    CHECK(ratio_sequence(s, 1).values ==
          std::vector<Rational>{Rational(36) / 11, Rational(54) / 29, Rational(72) / 47});

    const auto line = monomial_path_series<Rational>(5, 5, 6);
    std::vector<Rational> expected(7, Rational(0));
    expected[0] = Rational(1);
    expected[1] = Rational(-1);
    CHECK(line.coefficients() == expected);

    const auto root = monomial_path_series<Rational>(1, 2, 10);
    const auto squared = convolve(root.coefficients(), root.coefficients());
    for (std::size_t k = 0; k < squared.size(); ++k)
        CHECK(squared[k] == (k == 0 ? Rational(1) : k == 1 ? Rational(-1) : Rational(0)));

    CHECK_THROWS_AS(monomial_path_series<Rational>(0, 2, 4), std::invalid_argument);
}

TEST_CASE("two-pole series is normalized to x(0) = 1") {
    const auto s = two_pole_series<Rational>(Rational(4), 6);
    CHECK(s[0] == Rational(1));
    CHECK(s[1] == Rational(-5) / 8);  // -(1 + 1/P)/2 at P = 4

    const auto f = two_pole_series<ComplexFloat>(ComplexFloat{-4.0, 16.0}, 6);
    CHECK(std::abs(f[0] - ComplexFloat{1.0}) == 0.0);
}

TEST_CASE("two-pole series squared reproduces (1-t)(1-t/P) exactly") {
    const ComplexRational P{Rational(-1) / 2, Rational(1)};
    const auto s = two_pole_series<ComplexRational>(P, 12);
    const auto squared = convolve(s.coefficients(), s.coefficients());
    const ComplexRational one{Rational(1), Rational(0)};
    const ComplexRational inv_p = one / P;
    CHECK(squared[0] == one);
    CHECK(squared[1] == -(one + inv_p));
    CHECK(squared[2] == inv_p);
    for (std::size_t k = 3; k < squared.size(); ++k)
        CHECK(squared[k] == ComplexRational{});
}

TEST_CASE("two-pole series rejects coalescing poles") {
    CHECK_THROWS_AS(two_pole_series<Rational>(Rational(0), 4), std::invalid_argument);
    CHECK_THROWS_AS(two_pole_series<Rational>(Rational(1), 4), std::invalid_argument);
    CHECK_THROWS_AS(two_pole_series<Rational>(Rational(2), 0), std::invalid_argument);
}

TEST_CASE("fabry estimate on a purely geometric series is exact") {
    std::vector<Rational> coeffs;
    Rational c(1);
    for (int n = 0; n <= 10; ++n) {
        coeffs.push_back(c);
        c /= 3;
    }
    const auto estimate = fabry_estimate(PowerSeries<Rational>(coeffs), 0, Algorithm::rho);
    CHECK(estimate.raw == Rational(3));
    CHECK(estimate.accelerated == Rational(3));
    CHECK(estimate.radius == doctest::Approx(3.0));
    CHECK(estimate.location.column == 0);  // constant ratios degenerate the table
}

TEST_CASE("fabry estimate accelerates the sqrt(1-t) ratios") {
    const auto s = binomial_series<ComplexFloat>(1, 2, 32);
    const auto estimate = fabry_estimate(s, 0, Algorithm::rho);
    CHECK(std::abs(estimate.accelerated - ComplexFloat{1.0}) <= 1e-4);
    CHECK(std::abs(estimate.raw - ComplexFloat{1.0}) > 1e-2);
    CHECK(estimate.radius == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("fabry estimate on the two-pole benchmark series") {
    const auto s = two_pole_series<ComplexFloat>(ComplexFloat{-4.0, 16.0}, 32);
    const auto estimate = fabry_estimate(s, 0, Algorithm::rho);
    CHECK(std::abs(estimate.accelerated - ComplexFloat{1.0}) <= 1e-8);
    CHECK(estimate.valid_entries + estimate.invalid_entries > 0);
    CHECK(estimate.radius == doctest::Approx(1.0));
}

TEST_CASE("fabry estimate error shrinks with the truncation degree") {
    // rho is exact on this family, so deeper tables only move rounding noise;
    // require monotone improvement up to that floor.
    const double noise_floor = 1e-12;
    double previous = 1e300;
    for (long long d : {8, 16, 32}) {
        const auto s = binomial_series<ComplexFloat>(1, 2, d);
        const auto estimate = fabry_estimate(s, 0, Algorithm::rho);
        const double error = std::abs(estimate.accelerated - ComplexFloat{1.0});
        CHECK(error <= std::max(previous, noise_floor));
        previous = error;
    }
}

TEST_CASE("fabry estimate needs at least three ratios") {
    const auto s = binomial_series<ComplexFloat>(1, 2, 3);
    CHECK_THROWS_AS(fabry_estimate(s, 1, Algorithm::rho), std::invalid_argument);
}

TEST_CASE("convolution ratio identity: all-ones sequences") {
    const std::vector<Rational> ones(6, Rational(1));
    const auto identity = convolution_ratio_identity(ones, ones, 2);
    CHECK(identity.direct == Rational(3) / 4);
    CHECK(identity.factored == Rational(3) / 4);
    CHECK(identity.intermediate == Rational(3) / 4);
    CHECK(identity.gap_factored == 0.0);
    CHECK(identity.gap_intermediate == 0.0);
}

TEST_CASE("convolution ratio identity holds exactly on random data") {
    std::mt19937_64 rng(8675309);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<Rational> a, b;
        for (int i = 0; i < 8; ++i) {
            a.push_back(random_positive_rational(rng));
            b.push_back(random_positive_rational(rng));
        }
        const auto identity = convolution_ratio_identity(a, b, 5);
        CHECK(identity.direct == identity.factored);
        CHECK(identity.direct == identity.intermediate);
    }
}

TEST_CASE("convolution ratio identity on the two-pole factor series") {
    const ComplexRational P{Rational(10), Rational(0)};
    const ComplexRational one{Rational(1), Rational(0)};
    const auto a = binomial_series<ComplexRational>(1, 2, 8);
    const auto b = scale_argument(binomial_series<ComplexRational>(1, 2, 8), one / P);
    const auto identity = convolution_ratio_identity(a.coefficients(), b.coefficients(), 6);
    CHECK(identity.direct == identity.factored);
    CHECK(identity.direct == identity.intermediate);
    CHECK(identity.gap_factored == 0.0);
}

TEST_CASE("convolution ratio identity rejects zero entries with an index") {
    std::vector<Rational> a(5, Rational(1));
    a[3] = Rational(0);
    const std::vector<Rational> b(5, Rational(1));
    CHECK_THROWS_WITH_AS(convolution_ratio_identity(a, b, 3),
                         "convolution_ratio_identity: zero entry in a at index 3",
                         std::invalid_argument);

    // nonzero inputs whose convolution still cancels: (1 + t)(1 - t) at t^1
    const std::vector<Rational> plus{Rational(1), Rational(1), Rational(1)};
    const std::vector<Rational> minus{Rational(1), Rational(-1), Rational(1)};
    CHECK_THROWS_WITH_AS(convolution_ratio_identity(plus, minus, 0),
                         "convolution_ratio_identity: zero convolution coefficient at index 1",
                         std::invalid_argument);
}

TEST_CASE("reciprocal power expansion: single-term denominator is exact at m = 0") {
    const auto result =
        reciprocal_power_expansion<Rational>({Rational(1)}, 1, Rational(7), 0);
    CHECK(result.exact == Rational(1) / 7);
    CHECK(result.truncated == Rational(1) / 7);
    CHECK(result.error == 0.0);
}

TEST_CASE("reciprocal power expansion: P + 1 at P = 10, truncation 3") {
    const std::vector<Rational> denom{Rational(1), Rational(1)};
    const auto result = reciprocal_power_expansion(denom, 1, Rational(10), 3);
    CHECK(result.exact == Rational(1) / 11);
    CHECK(result.truncated == Rational(909) / 10000);
    // |1/11 - 909/10000| = 1/110000
    CHECK(result.error == doctest::Approx(1.0 / 110000).epsilon(1e-12));
}

TEST_CASE("reciprocal power expansion error scales like |P|^-m across doublings") {
    const std::vector<Rational> denom{Rational(1), Rational(1)};
    for (long long m = 0; m <= 6; ++m) {
        const double at_p = reciprocal_power_expansion(denom, 1, Rational(10), m).error;
        const double at_2p = reciprocal_power_expansion(denom, 1, Rational(20), m).error;
        CHECK(at_p / at_2p >= std::pow(2.0, static_cast<double>(m)) / 2.0);
    }
}

TEST_CASE("reciprocal power expansion rejects small poles") {
    CHECK_THROWS_WITH_AS(
        reciprocal_power_expansion<Rational>({Rational(1), Rational(1)}, 1, Rational(1) / 2, 2),
        "reciprocal_power_expansion: expansion divergent at this P", std::domain_error);
}

TEST_CASE("inverse-n fit recovers an exact 1 + 3/n sequence") {
    RatioSequence<ComplexFloat> ratios;
    ratios.start = 1;
    for (std::size_t n = 1; n <= 12; ++n)
        ratios.values.emplace_back(1.0 + 3.0 / static_cast<double>(n), 0.0);
    const auto fit = fit_inverse_n_expansion(ratios, 1, 12, 1);
    CHECK(fit.coefficients.size() == 1);
    CHECK(std::abs(fit.coefficients[0] - ComplexFloat{3.0}) <= 1e-12);
    CHECK(fit.residual <= 1e-13);
}

TEST_CASE("inverse-n fit of monomial ratios approaches gamma_1 = 1 + p/q") {
    const auto ratios = ratio_sequence(binomial_series<ComplexFloat>(7, 18, 64), 0);
    const double target = 1.0 + 7.0 / 18.0;
    double previous_residual = 1e300;
    for (const auto& window : {std::pair<std::size_t, std::size_t>{8, 24},
                               std::pair<std::size_t, std::size_t>{16, 48},
                               std::pair<std::size_t, std::size_t>{24, 60}}) {
        const auto fit = fit_inverse_n_expansion(ratios, window.first, window.second, 1);
        CHECK(std::abs(fit.coefficients[0] - ComplexFloat{target}) <= 0.06);
        CHECK(fit.residual < previous_residual);
        previous_residual = fit.residual;
    }
}

TEST_CASE("inverse-n fit separates far and near second poles") {
    const auto far = ratio_sequence(two_pole_series<ComplexFloat>({-4.0, 16.0}, 64), 0);
    const auto near = ratio_sequence(two_pole_series<ComplexFloat>({-0.5, 1.0}, 64), 0);
    const auto far_fit = fit_inverse_n_expansion(far, 16, 48, 3);
    const auto near_fit = fit_inverse_n_expansion(near, 16, 48, 3);
    CHECK(far_fit.residual <= 1e-4);
    CHECK(near_fit.residual >= 1e-2);
}

TEST_CASE("inverse-n fit window validation") {
    RatioSequence<ComplexFloat> ratios;
    ratios.start = 0;
    for (int n = 0; n < 10; ++n)
        ratios.values.emplace_back(1.0, 0.0);
    CHECK_THROWS_AS(fit_inverse_n_expansion(ratios, 4, 5, 3), std::invalid_argument);
    CHECK_THROWS_AS(fit_inverse_n_expansion(ratios, 4, 20, 1), std::invalid_argument);
    CHECK_THROWS_AS(fit_inverse_n_expansion(ratios, 0, 5, 1), std::invalid_argument);
}

TEST_CASE("default fit window follows the degree") {
    const auto w = default_fit_window(64);
    CHECK(w.begin == 16);
    CHECK(w.end == 48);
    CHECK(default_fit_window(16).begin == 8);
}
