// Acceptance suite: one numbered criterion per check, each printing a single
// PASS/FAIL line with its measured quantity and tolerance. Exit code 0 only
// if every executed criterion passes.
//
// Where a listed (p, d) pair admits no order-d character (d does not divide
// p-1), the smallest prime >= p with d | p-1 is substituted and the line
// reports the prime actually used.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "charsum/character.hpp"
#include "charsum/dft.hpp"
#include "charsum/random_model.hpp"
#include "charsum/rng.hpp"
#include "charsum/spectrum.hpp"
#include "charsum/theory.hpp"

using namespace charsum;

namespace {

constexpr double kPi = std::numbers::pi;

std::map<uint64_t, std::shared_ptr<const DirichletTable>> g_tables;

DirichletCharacter character_mod(uint64_t p, uint64_t d, uint64_t m = 1) {
    auto it = g_tables.find(p);
    if (it == g_tables.end()) {
        it = g_tables.emplace(p, DirichletTable::build(PrimeModulus::create(p))).first;
    }
    return DirichletCharacter(it->second, d, m);
}

uint64_t admissible_prime(uint64_t requested, uint64_t d, std::string& note) {
    if ((requested - 1) % d == 0) return requested;
    uint64_t substitute = next_prime_with_order(requested, d);
    note += " [d=" + std::to_string(d) + ": " + std::to_string(requested) + "->" +
            std::to_string(substitute) + "]";
    return substitute;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

bool criterion_gauss_modulus(std::string& detail) {
    SplitMix64 rng{20260809};
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        uint64_t p = next_prime_with_order(1000 + rng.below(99000), 1);
        auto modulus = PrimeModulus::create(p);
        std::vector<uint64_t> divisors;
        for (uint64_t d = 2; d <= 64; ++d) {
            if ((p - 1) % d == 0) divisors.push_back(d);
        }
        uint64_t d = divisors[rng.below(divisors.size())];
        uint64_t m = 1 + rng.below(d);
        while (std::gcd(m, d) != 1) m = 1 + rng.below(d);
        auto chi = DirichletCharacter::make(modulus, d, m);
        double root = std::sqrt(static_cast<double>(p));
        worst = std::max(worst, std::abs(std::abs(gauss_sum(chi)) - root) / root);
    }
    detail = "max | |tau|-sqrt p | / sqrt p = " + fmt(worst) + " (tol 1e-9), 50 random (p,d,m)";
    return worst <= 1e-9;
}

bool criterion_dft_oracle(std::string& detail) {
    double worst_rel = 0.0;
    for (uint64_t p : {101ull, 1009ull, 10007ull}) {
        SplitMix64 rng{p * 31 + 5};
        std::vector<std::complex<double>> coeffs(p);
        for (auto& c : coeffs) c = std::polar(1.0, 2.0 * kPi * rng.uniform01());
        const double x = 0.5;
        auto fast = TwistedDft(p).apply(coeffs, x);
        double worst = 0.0, scale = 0.0;
        for (int i = 0; i < 100; ++i) {
            uint64_t K = rng.below(p);
            std::complex<double> direct = 0;
            for (uint64_t n = 0; n < p; ++n) {
                double angle = 2.0 * kPi * static_cast<double>(n) *
                               (static_cast<double>(K) + x) / static_cast<double>(p);
                direct += coeffs[n] * std::polar(1.0, angle);
            }
            worst = std::max(worst, std::abs(fast[K] - direct));
            scale = std::max(scale, std::abs(direct));
        }
        worst_rel = std::max(worst_rel, worst / scale);
    }
    detail = "relative error " + fmt(worst_rel) + " (tol 1e-8) at p in {101,1009,10007}";
    return worst_rel <= 1e-8;
}

bool criterion_tail_slope(std::string& detail) {
    const uint64_t p = 200003;
    auto chi = character_mod(p, 2);
    auto spec = midpoint_spectrum(chi);
    auto grid = default_v_grid(spec);
    auto curve = tail_curve(spec, grid);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i = 0; i < curve.phi.size(); ++i) {
        double phi = curve.phi[i];
        if (phi < 10.0 / static_cast<double>(p) || phi > 0.1) continue;
        double x = curve.v_grid[i];
        double y = std::log(-std::log(phi));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    detail = "slope " + fmt(slope) + " vs pi/2 = " + fmt(kPi / 2.0) + " (+-15%), " +
             std::to_string(count) + " grid points, p = 200003";
    return std::abs(slope - kPi / 2.0) <= 0.15 * kPi / 2.0;
}

bool criterion_c2(std::string& detail) {
    // 0.1029... is the hat constant: the coefficient of s next to
    // (2s/pi) log s before the head integral is added on.
    double value = theory::constants(2).hat_C_d;
    detail = "hat C_2 = " + fmt(value) + " vs 0.1029 (tol 5e-4)";
    return std::abs(value - 0.1029) <= 5e-4;
}

bool criterion_limit(std::string& detail) {
    double limit = theory::limit_constant();
    double lower = 2.0 / kPi * std::exp(-kPi / 2.0 * limit - 1.0);
    detail = "limit = " + fmt(limit) + " vs -0.1722 (tol 5e-4); mapped lower constant " +
             fmt(lower) + " vs 0.3070 (tol 1e-3)";
    return std::abs(limit - (-0.1722)) <= 5e-4 && std::abs(lower - 0.3070) <= 1e-3;
}

bool criterion_head_integrals(std::string& detail) {
    double h2 = theory::tail_integrals(2).head;
    double h4 = theory::tail_integrals(4).head;
    detail = "head(2) = " + fmt(h2) + " vs 0.49 (tol 0.01); head(4) = " + fmt(h4) +
             " vs 0.25 (tol 0.01)";
    bool ok2 = std::abs(h2 - 0.49) <= 0.01;
    bool ok4 = std::abs(h4 - 0.25) <= 0.01;
    if (!ok2) {
        detail += "; two independent quadratures give 0.475894 for the d=2 integral, so the"
                  " 0.49 +- 0.01 window cannot be met by a correct evaluation";
    }
    return ok2 && ok4;
}

bool criterion_two_routes(std::string& detail) {
    double direct = theory::c2_lower_direct();
    double composed = theory::constants(2).C_d_lower;
    detail = "direct " + fmt(direct) + " vs composed " + fmt(composed) + ", gap " +
             fmt(std::abs(direct - composed)) + " (tol 1e-8)";
    return std::abs(direct - composed) <= 1e-8;
}

bool criterion_moments(std::string& detail) {
    bool ok = true;
    double worst_ratio = 0.0;
    for (uint64_t base : {10007ull, 100003ull}) {
        for (uint32_t d : {2u, 3u}) {
            uint64_t p = admissible_prime(base, d, detail);
            auto chi = character_mod(p, d);
            for (int n = 1; n <= 4; ++n) {
                auto cmp = moment_compare(chi, n);
                double gap = std::abs(cmp.arithmetic - cmp.probabilistic);
                worst_ratio = std::max(worst_ratio, gap / cmp.allowed_gap);
                ok = ok && gap <= cmp.allowed_gap;
            }
        }
    }
    detail = "max |arith-prob| / allowed = " + fmt(worst_ratio) + " over n<=4, d in {2,3}" + detail;
    return ok;
}

bool criterion_laplace_chain(std::string& detail) {
    const uint64_t p = 10007;
    const double s = 2.0;
    auto theoretical = theoretical_laplace(p, 2, s);
    auto chi = character_mod(p, 2);
    auto arithmetic = arithmetic_laplace(chi, s);
    RandomModelConfig config{p, 2, 0, 1000000, 1};
    auto empirical = empirical_laplace(config, s);
    double gap_at = std::abs(arithmetic.value - theoretical.value);
    double gap_et = std::abs(empirical.value - theoretical.value);
    detail = "|arith-theory| = " + fmt(gap_at) + " (tol 0.05); |emp-theory| = " + fmt(gap_et) +
             " vs 4 se = " + fmt(4.0 * empirical.std_error) + " at N = 1e6";
    return gap_at <= 0.05 && !empirical.overflow && gap_et <= 4.0 * empirical.std_error;
}

bool criterion_alpha_bessel(std::string& detail) {
    using namespace theory;
    // averaging identity, N chosen so the next term < 1e-16
    for (uint32_t d : {2u, 3u, 4u, 6u}) {
        AlphaD alpha(d);
        for (double x = 0.0; x <= 10.0; x += 0.25) {
            double rhs = bessel_i(0, x);
            for (int n = 1;; ++n) {
                double term = 2.0 * bessel_i(static_cast<int>(n * d), x);
                rhs += term;
                if (term < 1e-16) break;
            }
            if (std::abs(std::exp(alpha(x)) - rhs) > 1e-10) {
                detail = "averaging identity off at d=" + std::to_string(d) + ", x=" + fmt(x);
                return false;
            }
        }
    }
    for (double u : {1.0, 2.0, 5.0, 10.0}) {
        double i0 = bessel_i(0, u);
        if (!(std::exp(u) / (2.0 * kPi * std::sqrt(u)) <= i0 && i0 <= std::exp(u))) {
            detail = "I_0 bounds fail at u=" + fmt(u);
            return false;
        }
    }
    double prev_scaled = 2.0;
    for (double u = 0.1; u <= 30.0; u += 0.1) {
        double scaled = std::exp(-u) * bessel_i(0, u);
        if (scaled >= prev_scaled) {
            detail = "e^-u I_0(u) not decreasing at u=" + fmt(u);
            return false;
        }
        prev_scaled = scaled;
    }
    for (uint32_t d : {2u, 4u, 6u, 8u}) {
        AlphaD alpha(d);
        double prev_mu = 1e300;
        for (double u = -20.0; u <= 20.0; u += 0.01) {
            double v = alpha(u);
            if (std::abs(v - alpha(-u)) > 1e-10 || v < -1e-12 || v > std::abs(u) + 1e-12 ||
                std::abs(alpha.prime(u)) > 1.0 + 1e-12) {
                detail = "alpha estimate fails at d=" + std::to_string(d) + ", u=" + fmt(u);
                return false;
            }
            if (std::abs(u) <= 20.0 && u != 0.0) {
                double li0 = std::log(bessel_i(0, u));
                if (v < li0 - 1e-10) {
                    detail = "alpha below log I_0 at u=" + fmt(u);
                    return false;
                }
            }
            double mu = v - u;
            if (mu > prev_mu + 1e-9) {
                detail = "alpha(u)-u increased at u=" + fmt(u);
                return false;
            }
            prev_mu = mu;
        }
    }
    for (double u : {-0.05, -0.02, 0.02, 0.05}) {
        if (std::abs(alpha_d(2, u) / (u * u) - 0.5) > 0.01 ||
            std::abs(alpha_d(4, u) / (u * u) - 0.25) > 0.01) {
            detail = "small-u asymptotics off at u=" + fmt(u);
            return false;
        }
    }
    detail = "alpha estimates, I_0 bounds, and the averaging identity at stated tolerances";
    return true;
}

bool criterion_maxsum(std::string& detail) {
    double worst = 0.0;
    for (uint32_t d : {2u, 3u, 5u}) {
        double closed = theory::maxsum_closed_form(200, d);
        double brute = theory::maxsum_bruteforce(200, d);
        worst = std::max(worst, std::abs(closed - brute));
    }
    detail = "max |closed - grid| = " + fmt(worst) + " (tol 0.05) at n = 200, d in {2,3,5}";
    return worst <= 0.05;
}

bool criterion_patterns(std::string& detail) {
    const uint32_t d = 3;
    uint64_t p = admissible_prime(10007, d, detail);
    auto chi = character_mod(p, d);
    double worst = 0.0;
    bool ok = true;
    for (int n = 1; n <= 3; ++n) {
        std::vector<uint64_t> counts(static_cast<std::size_t>(std::pow(d, n)), 0);
        for (uint64_t K = 0; K < p; ++K) {
            std::size_t code = 0;
            bool valid = true;
            for (int j = 0; j < n; ++j) {
                uint32_t e = chi.exponent((K + j) % p);
                if (e == DirichletCharacter::kZero) {
                    valid = false;
                    break;
                }
                code = code * d + e;
            }
            if (valid) ++counts[code];
        }
        const double expect = std::pow(1.0 / d, n);
        const double allowed = 5.0 * n / std::sqrt(static_cast<double>(p));
        for (uint64_t count : counts) {
            double gap = std::abs(static_cast<double>(count) / static_cast<double>(p) - expect);
            worst = std::max(worst, gap / allowed);
            ok = ok && gap <= allowed;
        }
    }
    detail = "max |freq - d^-n| / (5n/sqrt p) = " + fmt(worst) + " over patterns n<=3" + detail;
    return ok;
}

bool criterion_exceptional(std::string& detail) {
    bool ok = true;
    for (uint64_t base : {10007ull, 100003ull, 1000003ull}) {
        for (uint32_t d : {2u, 3u, 4u}) {
            uint64_t p = admissible_prime(base, d, detail);
            auto chi = character_mod(p, d);
            auto report = exceptional_set(chi);
            double bound = std::pow(static_cast<double>(p), 0.75);
            ok = ok && static_cast<double>(report.count) <= bound;
            detail += " (" + std::to_string(p) + "," + std::to_string(d) + "):" +
                      std::to_string(report.count);
        }
    }
    detail = "|E_p| vs p^(3/4):" + detail;
    return ok;
}

struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> fn;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> list = {
        {1, "gauss-sum-modulus", criterion_gauss_modulus},
        {2, "twisted-dft-vs-direct-summation", criterion_dft_oracle},
        {3, "midpoint-tail-slope-pi-over-2", criterion_tail_slope},
        {4, "constant-0.1029", criterion_c2},
        {5, "limit-constant--0.1722-and-0.3070", criterion_limit},
        {6, "head-integrals-0.49-and-0.25", criterion_head_integrals},
        {7, "two-route-lower-constant", criterion_two_routes},
        {8, "moment-matching-envelope", criterion_moments},
        {9, "laplace-chain-at-s-2", criterion_laplace_chain},
        {10, "alpha-and-bessel-estimates", criterion_alpha_bessel},
        {11, "extremal-sum-grid-vs-closed-form", criterion_maxsum},
        {12, "pattern-frequencies", criterion_patterns},
        {13, "exceptional-set-size", criterion_exceptional},
    };
    return list;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            selected.push_back(std::atoi(argv[++i]));
        } else if (std::strcmp(argv[i], "--list") == 0) {
            for (const auto& c : criteria()) std::printf("%2d %s\n", c.id, c.name);
            return 0;
        } else {
            std::fprintf(stderr, "usage: acceptance [--only N]... [--list]\n");
            return 2;
        }
    }
    int failures = 0, executed = 0;
    for (const auto& criterion : criteria()) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), criterion.id) == selected.end()) {
            continue;
        }
        ++executed;
        auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %02d %-36s %s (%.2f s) -- %s\n", criterion.id, criterion.name,
                    ok ? "PASS" : "FAIL", elapsed, detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (executed == 0) {
        std::fprintf(stderr, "no matching criteria\n");
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
