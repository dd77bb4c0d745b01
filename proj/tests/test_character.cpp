#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <numbers>

#include "charsum/character.hpp"
#include "charsum/rng.hpp"

using namespace charsum;
using std::complex;

namespace {
constexpr double kPi = std::numbers::pi;

// Euler-criterion oracle for the quadratic character
int legendre_euler(uint64_t n, uint64_t p) {
    if (n % p == 0) return 0;
    return pow_mod(n, (p - 1) / 2, p) == 1 ? 1 : -1;
}
}  // namespace

TEST_CASE("legendre character mod 5 via Euler criterion") {
    auto chi = DirichletCharacter::make(PrimeModulus::create(5), 2, 1);
    CHECK(chi.value(0) == complex<double>(0, 0));
    CHECK(chi.value(1) == complex<double>(1, 0));
    for (uint64_t n = 1; n < 5; ++n) {
        CHECK(chi.value(n).real() == doctest::Approx(legendre_euler(n, 5)).epsilon(1e-15));
        CHECK(chi.value(n).imag() == doctest::Approx(0.0).epsilon(1e-15));
    }
    CHECK(chi.value(2).real() == doctest::Approx(-1.0));
}

TEST_CASE("chi(g) = e(m/d)") {
    auto chi = DirichletCharacter::make(PrimeModulus::create(7), 3, 1);
    CHECK(chi.generator() == 3);
    auto got = chi.value(3);
    auto expected = std::polar(1.0, 2.0 * kPi / 3.0);
    CHECK(std::abs(got - expected) < 1e-15);
}

TEST_CASE("construction rejects bad (d, m)") {
    auto modulus = PrimeModulus::create(5);
    CHECK_THROWS_AS(DirichletCharacter::make(modulus, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(DirichletCharacter::make(modulus, 3, 1), std::invalid_argument);  // 3 | 4 fails
    CHECK_NOTHROW(DirichletCharacter::make(modulus, 4, 3));
}

TEST_CASE("order exactness and multiplicativity on random characters") {
    SplitMix64 rng{2024};
    int tried = 0;
    while (tried < 100) {
        uint64_t p = next_prime_with_order(101 + rng.below(99000), 1);
        auto modulus = PrimeModulus::create(p);
        std::vector<uint64_t> small_divisors;
        for (uint64_t d = 2; d <= 48; ++d) {
            if ((p - 1) % d == 0) small_divisors.push_back(d);
        }
        uint64_t d = small_divisors[rng.below(small_divisors.size())];
        uint64_t m = 1 + rng.below(d);
        if (std::gcd(m, d) != 1) continue;
        ++tried;
        auto chi = DirichletCharacter::make(modulus, d, m);

        // chi^d principal, chi^e not for 0 < e < d: check on the generator,
        // where the exponent determines the full character.
        uint32_t ge = chi.exponent(chi.generator());
        CHECK(ge == m % d);
        for (uint64_t e = 1; e < d; ++e) CHECK((e * ge) % d != 0);
        CHECK((d * ge) % d == 0);

        // multiplicativity through the log table
        for (int i = 0; i < 50; ++i) {
            uint64_t a = 1 + rng.below(p - 1);
            uint64_t b = 1 + rng.below(p - 1);
            uint32_t ea = chi.exponent(a), eb = chi.exponent(b);
            CHECK((ea + eb) % d == chi.exponent(a * b % p));
        }
        CHECK(std::abs(chi.value(1 + rng.below(p - 1))) == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("gauss sums at small primes") {
    auto chi5 = DirichletCharacter::make(PrimeModulus::create(5), 2, 1);
    auto tau5 = gauss_sum(chi5);
    CHECK(tau5.real() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    CHECK(tau5.imag() == doctest::Approx(0.0).epsilon(1e-12));

    auto chi3 = DirichletCharacter::make(PrimeModulus::create(3), 2, 1);
    auto tau3 = gauss_sum(chi3);
    CHECK(tau3.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(tau3.imag() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

    auto chi13 = DirichletCharacter::make(PrimeModulus::create(13), 3, 1);
    CHECK(std::abs(gauss_sum(chi13)) == doctest::Approx(std::sqrt(13.0)).epsilon(1e-12));
}

TEST_CASE("complete character sum vanishes") {
    auto chi = DirichletCharacter::make(PrimeModulus::create(1009), 4, 1);
    complex<double> total = 0;
    for (uint64_t n = 0; n < 1009; ++n) total += chi.value(n);
    CHECK(std::abs(total) < 1e-9);
}

TEST_CASE("f at midpoint of first arc, p = 5") {
    auto chi = DirichletCharacter::make(PrimeModulus::create(5), 2, 1);
    auto f = eval_f_direct(chi, 0.5 / 5.0);
    // 2i (sin 36 deg - sin 72 deg)
    double expected = 2.0 * (std::sin(kPi / 5.0) - std::sin(2.0 * kPi / 5.0));
    CHECK(f.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.imag() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(f.imag() == doctest::Approx(-0.7265425280053609).epsilon(1e-10));
}

TEST_CASE("f at theta = 0 vanishes for any shift") {
    auto chi = DirichletCharacter::make(PrimeModulus::create(101), 2, 1);
    for (int64_t shift : {0, 1, 17, -3}) {
        CHECK(std::abs(eval_f_direct(chi, 0.0, shift)) < 1e-10);
    }
}

TEST_CASE("f at Gauss points equals conj(chi(k)) tau") {
    const uint64_t p = 101;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 4, 1);
    auto tau = gauss_sum(chi);
    for (uint64_t k : {1ull, 2ull, 50ull, 100ull}) {
        auto direct = eval_f_direct(chi, static_cast<double>(k) / static_cast<double>(p));
        auto expected = std::conj(chi.value(k)) * tau;
        CHECK(std::abs(direct - expected) < 1e-9);
    }
}

TEST_CASE("arc evaluation matches plain evaluation") {
    const uint64_t p = 1009;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    for (uint64_t K : {0ull, 3ull, 500ull, 1008ull}) {
        for (double x : {0.1, 0.5, 0.93}) {
            auto a = eval_f_at_arc(chi, K, x);
            auto b = eval_f_direct(chi, (static_cast<double>(K) + x) / static_cast<double>(p));
            CHECK(std::abs(a - b) < 1e-8);
        }
    }
}

TEST_CASE("shift reduces cyclically") {
    const uint64_t p = 101;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    for (uint64_t n = 0; n < p; ++n) {
        CHECK(chi.value_shifted(n, 7) == chi.value_shifted(n, 7 + static_cast<int64_t>(p)));
        CHECK(chi.value_shifted(n, -1) == chi.value_shifted(n, static_cast<int64_t>(p) - 1));
    }
}
