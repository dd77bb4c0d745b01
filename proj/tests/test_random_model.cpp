#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "charsum/random_model.hpp"
#include "charsum/spectrum.hpp"
#include "charsum/theory.hpp"

using namespace charsum;

TEST_CASE("samples are reproducible and index-dependent") {
    RandomModelConfig config{1009, 3, 0, 10, 42};
    ModelCoefficients coeffs(config);
    auto a = sample_G(coeffs, 42, 0);
    auto b = sample_G(coeffs, 42, 0);
    CHECK(a == b);
    CHECK(sample_G(coeffs, 42, 1) != a);
    CHECK(sample_G(coeffs, 43, 0) != a);
}

TEST_CASE("truncation radius (p-1)/2 equals the full range") {
    RandomModelConfig full{1009, 2, 0, 100, 5};
    RandomModelConfig explicit_full{1009, 2, 504, 100, 5};
    ModelCoefficients a(full), b(explicit_full);
    CHECK(a.terms() == b.terms());
    CHECK(sample_G(a, 5, 3) == sample_G(b, 5, 3));
    RandomModelConfig too_big{1009, 2, 505, 100, 5};
    CHECK_THROWS_AS(ModelCoefficients{too_big}, std::invalid_argument);
}

TEST_CASE("mean of G vanishes within 4 standard errors") {
    for (uint32_t d : {2u, 3u, 4u, 6u}) {
        RandomModelConfig config{3001, d, 0, 20000, 11};
        auto est = empirical_re_moment(config, 1);
        CHECK(std::abs(est.value) <= 4.0 * est.std_error);
    }
}

TEST_CASE("second absolute moment matches the coefficient sum") {
    RandomModelConfig config{3001, 4, 0, 20000, 9};
    ModelCoefficients coeffs(config);
    double acc = 0, acc_sq = 0;
    for (uint64_t i = 0; i < config.samples; ++i) {
        double v = std::norm(sample_G(coeffs, config.seed, i));
        acc += v;
        acc_sq += v * v;
    }
    double n = static_cast<double>(config.samples);
    double mean = acc / n;
    double se = std::sqrt((acc_sq - n * mean * mean) / (n * (n - 1.0)));
    CHECK(std::abs(mean - coeffs.sum_abs_sq()) <= 4.0 * se);
}

TEST_CASE("empirical laplace at s = 0 is exactly one") {
    RandomModelConfig config{1009, 2, 0, 1000, 3};
    auto est = empirical_laplace(config, 0.0);
    CHECK(est.value == 1.0);
    CHECK(est.std_error == 0.0);
    CHECK_FALSE(est.overflow);
}

TEST_CASE("empirical laplace flags overflow instead of saturating") {
    RandomModelConfig config{101, 2, 0, 100, 3};
    auto est = empirical_laplace(config, 1e6);
    CHECK(est.overflow);
}

TEST_CASE("estimates are identical for any worker count") {
    RandomModelConfig config{3001, 3, 0, 20000, 77};
    ModelCoefficients coeffs(config);
    auto one = empirical_laplace(coeffs, config, 1.5, 1);
    auto two = empirical_laplace(coeffs, config, 1.5, 2);
    auto eight = empirical_laplace(coeffs, config, 1.5, 8);
    CHECK(one.value == two.value);
    CHECK(one.value == eight.value);
    CHECK(one.std_error == eight.std_error);
}

TEST_CASE("theoretical laplace basics") {
    auto zero = theoretical_laplace(10007, 2, 0.0);
    CHECK(zero.value == 1.0);
    CHECK(zero.log_head == 0.0);
    CHECK(zero.log_tail == 0.0);
    // tail factor stays small
    for (uint32_t d : {2u, 3u, 4u}) {
        for (double s : {1.0, 5.0, 10.0}) {
            auto t = theoretical_laplace(100003, d, s);
            CHECK(std::abs(t.log_tail) <= 1.0);
        }
    }
}

TEST_CASE("theoretical laplace grows like (2s/pi) log s + C_2 s") {
    auto c2 = theory::constants(2);
    for (double s : {10.0, 30.0, 100.0}) {
        auto t = theoretical_laplace(100003, 2, s);
        double main = 2.0 * s / std::numbers::pi * std::log(s) + c2.C_d * s;
        CHECK(std::abs(t.log_value - main) <= 3.0 * std::log(s));
    }
}

TEST_CASE("empirical laplace matches the finite product at d = 2") {
    const uint64_t p = 10007;
    RandomModelConfig config{p, 2, 0, 100000, 1};
    auto mc = empirical_laplace(config, 2.0);
    auto product = theoretical_laplace(p, 2, 2.0);
    CHECK_FALSE(mc.overflow);
    CHECK(std::abs(mc.value - product.value) <= 4.0 * mc.std_error);
}

TEST_CASE("laplace is midpoint-convex in s") {
    RandomModelConfig config{3001, 2, 0, 20000, 3};
    ModelCoefficients coeffs(config);
    auto e1 = empirical_laplace(coeffs, config, 1.0, 0);
    auto e2 = empirical_laplace(coeffs, config, 2.0, 0);
    auto e3 = empirical_laplace(coeffs, config, 3.0, 0);
    double slack = 4.0 * std::sqrt(e1.std_error * e1.std_error + e2.std_error * e2.std_error +
                                   e3.std_error * e3.std_error);
    CHECK(e2.value <= 0.5 * (e1.value + e3.value) + slack);
}

TEST_CASE("arithmetic laplace: s = 0 counts the complement of E_p") {
    const uint64_t p = 10007;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    auto report = exceptional_set(chi);
    auto at_zero = arithmetic_laplace(chi, 0.0);
    CHECK(at_zero.value ==
          doctest::Approx(static_cast<double>(p - report.count) / static_cast<double>(p))
              .epsilon(1e-12));
    CHECK(at_zero.excluded == report.count);
}

TEST_CASE("laplace chain at p = 10007, d = 2, s = 2") {
    const uint64_t p = 10007;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    auto arith = arithmetic_laplace(chi, 2.0);
    auto product = theoretical_laplace(p, 2, 2.0);
    CHECK(std::abs(arith.value - product.value) <= 0.05);
    CHECK(arith.outside_strict_window);  // the strict window is ~0.019 here
    CHECK(laplace_window_wide(p) > 2.0);
    CHECK(laplace_window_strict(p) == doctest::Approx(std::log(10007.0) /
                                                      (100.0 * std::pow(std::log(std::log(10007.0)), 2))));
}

TEST_CASE("order dependence of the laplace transform") {
    // same prime, orders 2 and 4 (10008 = 2^3 * 3^2 * 139)
    const uint64_t p = 10009;
    auto chi2 = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    auto chi4 = DirichletCharacter::make(PrimeModulus::create(p), 4, 1);
    auto a2 = arithmetic_laplace(chi2, 2.0);
    auto a4 = arithmetic_laplace(chi4, 2.0);
    auto t2 = theoretical_laplace(p, 2, 2.0);
    auto t4 = theoretical_laplace(p, 4, 2.0);
    CHECK(std::abs(a2.value - a4.value) > 0.2);
    CHECK(std::abs(t2.value - t4.value) > 0.2);
    CHECK(std::abs(a2.value - t2.value) < 0.1);
    CHECK(std::abs(a4.value - t4.value) < 0.1);
}

TEST_CASE("exact model moments for n <= 4") {
    RandomModelConfig config{2003, 3, 0, 200000, 21};
    ModelCoefficients coeffs(config);
    CHECK(model_re_moment_exact(coeffs, 1) == 0.0);
    // Monte Carlo agreement
    for (int n : {2, 3, 4}) {
        auto mc = empirical_re_moment(config, n);
        CHECK(std::abs(mc.value - model_re_moment_exact(coeffs, n)) <= 5.0 * mc.std_error);
    }
    // d = 2: the third moment vanishes by X -> -X symmetry
    RandomModelConfig even{2003, 2, 0, 10, 1};
    ModelCoefficients even_coeffs(even);
    CHECK(model_re_moment_exact(even_coeffs, 3) == doctest::Approx(0.0).epsilon(1e-18));
    CHECK_THROWS_AS(model_re_moment_exact(coeffs, 5), std::invalid_argument);
}

TEST_CASE("moment comparison stays within the allowed envelope") {
    for (auto [p, d] : {std::pair<uint64_t, uint32_t>{10007, 2}, {10009, 3}}) {
        auto chi = DirichletCharacter::make(PrimeModulus::create(p), d, 1);
        for (int n = 1; n <= 4; ++n) {
            auto cmp = moment_compare(chi, n);
            CHECK(cmp.exact);
            CHECK(std::abs(cmp.arithmetic - cmp.probabilistic) <= cmp.allowed_gap);
        }
    }
}

TEST_CASE("moment comparison falls back to Monte Carlo beyond n = 4") {
    auto chi = DirichletCharacter::make(PrimeModulus::create(1009), 2, 1);
    auto cmp = moment_compare(chi, 5, 50000, 7);
    CHECK_FALSE(cmp.exact);
    CHECK(std::isfinite(cmp.probabilistic));
}
