#include "charsum/commands.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>

#include "charsum/parallel.hpp"
#include "charsum/random_model.hpp"
#include "charsum/report.hpp"
#include "charsum/rng.hpp"
#include "charsum/theory.hpp"

namespace charsum {

namespace {

constexpr double kPi = std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const char* kind_name(SpectrumKind kind) {
    return kind == SpectrumKind::midpoint ? "midpoint" : "arcmax";
}

}  // namespace

int run_tail(const TailOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    if (options.out.empty()) {
        std::fprintf(stderr, "tail: --out is required\n");
        return 2;
    }
    PrimeModulus modulus;
    try {
        modulus = PrimeModulus::create(options.p);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "tail: %s\n", e.what());
        return 2;
    }
    for (uint32_t d : options.orders) {
        if (d < 2 || (options.p - 1) % d != 0) {
            std::fprintf(stderr, "tail: order %u does not divide p-1 = %llu\n", d,
                         static_cast<unsigned long long>(options.p - 1));
            return 2;
        }
    }

    auto table = DirichletTable::build(modulus);
    std::vector<TailCurve> curves;
    std::vector<SvgSeries> series;
    for (uint32_t d : options.orders) {
        DirichletCharacter chi(table, d, options.m);
        Spectrum spectrum = options.kind == SpectrumKind::midpoint
                                ? midpoint_spectrum(chi, options.shift)
                                : arc_max_spectrum(chi, options.shift, options.grid_T,
                                                   options.refine_tol, options.threads);
        auto grid = default_v_grid(spectrum, options.vstep);
        curves.push_back(tail_curve(spectrum, grid));
        if (!options.svg.empty()) {
            SvgSeries s;
            s.label = "d=" + std::to_string(d);
            s.x = curves.back().v_grid;
            s.y = curves.back().phi;
            series.push_back(std::move(s));
            auto consts = theory::constants(d);
            SvgSeries env;
            env.label = d % 2 == 0 ? "d=" + std::to_string(d) + " lower"
                                   : "d=" + std::to_string(d) + " odd lower";
            env.dashed = true;
            env.x = curves.back().v_grid;
            for (double v : env.x) {
                env.y.push_back(theory::predict_tail(
                    v, consts,
                    d % 2 == 0 ? theory::TailBoundKind::lower : theory::TailBoundKind::odd_lower));
            }
            series.push_back(std::move(env));
        }
    }

    write_text_file(options.out, tail_csv(curves));
    if (!options.svg.empty()) write_text_file(options.svg, render_tail_svg(series));

    Manifest manifest;
    manifest.command = "tail";
    manifest.parameters = {{"p", options.p},
                           {"orders", options.orders},
                           {"m", options.m},
                           {"shift", options.shift},
                           {"kind", kind_name(options.kind)},
                           {"grid", options.grid_T},
                           {"refine_tol", options.refine_tol},
                           {"vstep", options.vstep},
                           {"out", options.out},
                           {"svg", options.svg},
                           {"threads", options.threads}};
    manifest.wall_time_seconds = seconds_since(start);
    write_manifest(options.out, manifest);
    return 0;
}

int run_constants(const ConstantsOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    if (options.out.empty()) {
        std::fprintf(stderr, "constants: --out is required\n");
        return 2;
    }
    nlohmann::json records = nlohmann::json::array();
    for (uint32_t d : options.orders) {
        if (d < 2) {
            std::fprintf(stderr, "constants: order %u < 2\n", d);
            return 2;
        }
        records.push_back(constants_json(theory::constants(d)));
    }
    write_text_file(options.out, records.dump(2) + "\n");

    Manifest manifest;
    manifest.command = "constants";
    manifest.parameters = {{"orders", options.orders}, {"out", options.out}};
    manifest.wall_time_seconds = seconds_since(start);
    write_manifest(options.out, manifest);
    return 0;
}

int run_randmodel(const RandModelOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    if (options.out.empty()) {
        std::fprintf(stderr, "randmodel: --out is required\n");
        return 2;
    }
    PrimeModulus modulus;
    try {
        modulus = PrimeModulus::create(options.p);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "randmodel: %s\n", e.what());
        return 2;
    }
    if (options.d < 2 || (options.p - 1) % options.d != 0) {
        std::fprintf(stderr, "randmodel: order %u does not divide p-1\n", options.d);
        return 2;
    }

    DirichletCharacter chi = DirichletCharacter::make(modulus, options.d, 1);
    RandomModelConfig config{options.p, options.d, 0, options.samples, options.seed};
    ModelCoefficients coeffs(config);

    const double strict = laplace_window_strict(options.p);
    const double wide = laplace_window_wide(options.p);

    nlohmann::json out;
    out["p"] = options.p;
    out["d"] = options.d;
    out["samples"] = options.samples;
    out["seed"] = options.seed;
    out["s_window_strict"] = strict;
    out["s_window_wide"] = wide;
    out["records"] = nlohmann::json::array();
    for (double s : options.s_values) {
        if (std::abs(s) > wide) {
            std::fprintf(stderr, "randmodel: warning: s=%g beyond the wide window %g\n", s, wide);
        }
        auto empirical = empirical_laplace(coeffs, config, s, options.threads);
        auto theoretical = theoretical_laplace(options.p, options.d, s);
        auto arithmetic = arithmetic_laplace(chi, s);
        nlohmann::json rec;
        rec["s"] = s;
        rec["p"] = options.p;
        rec["d"] = options.d;
        rec["empirical"] = {{"value", empirical.value},
                            {"std_error", empirical.std_error},
                            {"N", empirical.samples},
                            {"seed", empirical.seed},
                            {"overflow", empirical.overflow}};
        rec["theoretical"] = {{"value", theoretical.value},
                              {"log_value", theoretical.log_value},
                              {"log_head", theoretical.log_head},
                              {"log_tail", theoretical.log_tail}};
        rec["arithmetic"] = {{"value", arithmetic.value},
                             {"excluded", arithmetic.excluded},
                             {"threshold", arithmetic.threshold},
                             {"outside_strict_window", arithmetic.outside_strict_window}};
        rec["gap_empirical_theoretical"] = empirical.value - theoretical.value;
        rec["gap_arithmetic_theoretical"] = arithmetic.value - theoretical.value;
        out["records"].push_back(rec);
    }
    write_text_file(options.out, out.dump(2) + "\n");

    Manifest manifest;
    manifest.command = "randmodel";
    manifest.parameters = {{"p", options.p},       {"d", options.d},
                           {"s", options.s_values}, {"samples", options.samples},
                           {"seed", options.seed},  {"out", options.out},
                           {"threads", options.threads}};
    manifest.wall_time_seconds = seconds_since(start);
    write_manifest(options.out, manifest);
    return 0;
}

int run_replay(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) {
        std::fprintf(stderr, "replay: cannot open %s\n", manifest_path.c_str());
        return 2;
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "replay: %s\n", e.what());
        return 2;
    }
    const std::string command = j.value("command", "");
    const auto& params = j["parameters"];
    try {
        if (command == "tail") {
            TailOptions options;
            options.p = params.at("p").get<uint64_t>();
            options.orders = params.at("orders").get<std::vector<uint32_t>>();
            options.m = params.at("m").get<uint64_t>();
            options.shift = params.at("shift").get<int64_t>();
            options.kind = params.at("kind").get<std::string>() == "arcmax"
                               ? SpectrumKind::arcmax
                               : SpectrumKind::midpoint;
            options.grid_T = params.at("grid").get<int>();
            options.refine_tol = params.at("refine_tol").get<double>();
            options.vstep = params.at("vstep").get<double>();
            options.out = params.at("out").get<std::string>();
            options.svg = params.at("svg").get<std::string>();
            options.threads = params.at("threads").get<int>();
            return run_tail(options);
        }
        if (command == "constants") {
            ConstantsOptions options;
            options.orders = params.at("orders").get<std::vector<uint32_t>>();
            options.out = params.at("out").get<std::string>();
            return run_constants(options);
        }
        if (command == "randmodel") {
            RandModelOptions options;
            options.p = params.at("p").get<uint64_t>();
            options.d = params.at("d").get<uint32_t>();
            options.s_values = params.at("s").get<std::vector<double>>();
            options.samples = params.at("samples").get<uint64_t>();
            options.seed = params.at("seed").get<uint64_t>();
            options.out = params.at("out").get<std::string>();
            options.threads = params.at("threads").get<int>();
            return run_randmodel(options);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "replay: bad manifest: %s\n", e.what());
        return 2;
    }
    std::fprintf(stderr, "replay: unknown command '%s'\n", command.c_str());
    return 2;
}

// ---------------------------------------------------------------------------
// verify: the invariant suite.

namespace {

struct CheckContext {
    VerifyLevel level;
    int threads;
};

struct Check {
    const char* name;
    bool full_only;
    std::function<bool(const CheckContext&, std::string&)> fn;
};

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(double v) { return format_double9(v); }

// -- charmod ---------------------------------------------------------------

bool check_primitive_roots(const CheckContext&, std::string& detail) {
    for (auto [p, expected] : {std::pair<uint64_t, uint64_t>{5, 2}, {7, 3}, {13, 2}}) {
        auto modulus = PrimeModulus::create(p);
        uint64_t g = find_primitive_root(modulus);
        // exhaustive order check
        uint64_t smallest = 0;
        for (uint64_t cand = 2; cand < p && smallest == 0; ++cand) {
            uint64_t v = cand % p, order = 1;
            while (v != 1) {
                v = v * cand % p;
                ++order;
            }
            if (order == p - 1) smallest = cand;
        }
        if (g != expected || g != smallest) {
            detail = "p=" + std::to_string(p) + " got g=" + std::to_string(g);
            return false;
        }
    }
    return true;
}

bool check_character_structure(const CheckContext&, std::string& detail) {
    for (auto [p, d] : {std::pair<uint64_t, uint64_t>{10007, 2}, {10009, 3}}) {
        auto chi = DirichletCharacter::make(PrimeModulus::create(p), d, 1);
        if (chi.value(0) != std::complex<double>(0.0, 0.0) ||
            chi.value(1) != std::complex<double>(1.0, 0.0)) {
            detail = "chi(0)/chi(1) wrong";
            return false;
        }
        SplitMix64 rng{42};
        for (int i = 0; i < 2000; ++i) {
            uint64_t a = 1 + rng.below(p - 1), b = 1 + rng.below(p - 1);
            uint32_t ea = chi.exponent(a), eb = chi.exponent(b);
            uint32_t eab = chi.exponent(a * b % p);
            if ((ea + eb) % d != eab) {
                detail = "multiplicativity failed at p=" + std::to_string(p);
                return false;
            }
            if (std::abs(std::abs(chi.value(a)) - 1.0) > 1e-15) {
                detail = "|chi| != 1";
                return false;
            }
        }
        // chi^e principal iff d | e, read off the generator exponent
        for (uint64_t e = 1; e <= d; ++e) {
            bool principal = (e * chi.exponent(chi.generator())) % d == 0;
            if (principal != (e == d)) {
                detail = "order not exactly d at p=" + std::to_string(p);
                return false;
            }
        }
    }
    return true;
}

bool check_gauss_modulus(const CheckContext& ctx, std::string& detail) {
    SplitMix64 rng{7};
    const int trials = ctx.level == VerifyLevel::full ? 25 : 10;
    for (int i = 0; i < trials; ++i) {
        uint64_t p = next_prime_with_order(1000 + rng.below(99000), 1);
        auto modulus = PrimeModulus::create(p);
        // random admissible order: pick a small divisor of p-1
        std::vector<uint64_t> divisors;
        for (uint64_t d = 2; d <= 64; ++d) {
            if ((p - 1) % d == 0) divisors.push_back(d);
        }
        uint64_t d = divisors[rng.below(divisors.size())];
        uint64_t m = 1 + rng.below(d - 1);
        while (std::gcd(m, d) != 1) m = 1 + rng.below(d - 1);
        auto chi = DirichletCharacter::make(modulus, d, m);
        double tau = std::abs(gauss_sum(chi));
        double root = std::sqrt(static_cast<double>(p));
        if (std::abs(tau - root) > 1e-9 * root) {
            detail = "p=" + std::to_string(p) + " d=" + std::to_string(d) +
                     " |tau|=" + fmt(tau);
            return false;
        }
    }
    return true;
}

bool check_orthogonality(const CheckContext&, std::string& detail) {
    auto chi = DirichletCharacter::make(PrimeModulus::create(10009), 3, 1);
    std::complex<double> total = 0;
    for (uint64_t n = 0; n < 10009; ++n) total += chi.value(n);
    if (std::abs(total) > 1e-9) {
        detail = "|sum chi| = " + fmt(std::abs(total));
        return false;
    }
    return true;
}

bool check_interpolation(const CheckContext&, std::string& detail) {
    const uint64_t p = 1009;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 3, 1);
    std::complex<double> tau = gauss_sum(chi);
    TwistedDft dft(p);
    std::vector<std::complex<double>> coeffs(p);
    for (uint64_t n = 0; n < p; ++n) coeffs[n] = chi.value(n);
    auto f = dft.apply(coeffs, 0.0);
    double worst = 0.0;
    for (uint64_t k = 0; k < p; ++k) {
        std::complex<double> expected = std::conj(chi.value(k)) * tau;
        worst = std::max(worst, std::abs(f[k] - expected));
    }
    if (worst > 1e-6 * std::sqrt(static_cast<double>(p))) {
        detail = "max |f(e_p(k)) - chibar(k) tau| = " + fmt(worst);
        return false;
    }
    detail = "max deviation " + fmt(worst);
    return true;
}

// -- spectrum ----------------------------------------------------------------

bool check_dft_oracle(const CheckContext& ctx, std::string& detail) {
    std::vector<uint64_t> sizes = {101, 1009};
    if (ctx.level == VerifyLevel::full) sizes.push_back(10007);
    for (uint64_t p : sizes) {
        SplitMix64 rng{p};
        std::vector<std::complex<double>> coeffs(p);
        for (auto& c : coeffs) c = std::polar(1.0, 2.0 * kPi * rng.uniform01());
        TwistedDft dft(p);
        const double x = 0.37;
        auto out = dft.apply(coeffs, x);
        double worst = 0.0, scale = 0.0;
        const uint64_t step = std::max<uint64_t>(1, p / 97);
        for (uint64_t K = 0; K < p; K += step) {
            std::complex<double> direct = 0;
            for (uint64_t n = 0; n < p; ++n) {
                double angle = 2.0 * kPi *
                               (static_cast<double>(n % p) * (static_cast<double>(K) + x)) /
                               static_cast<double>(p);
                direct += coeffs[n] * std::polar(1.0, angle);
            }
            worst = std::max(worst, std::abs(out[K] - direct));
            scale = std::max(scale, std::abs(direct));
        }
        if (worst > 1e-8 * scale) {
            detail = "p=" + std::to_string(p) + " rel err " + fmt(worst / scale);
            return false;
        }
    }
    return true;
}

bool check_parseval(const CheckContext&, std::string& detail) {
    const uint64_t p = 10007;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    auto spec = midpoint_spectrum(chi);
    KahanSum acc;
    for (double v : spec.values) acc.add(v * v);
    double mean = acc.sum / static_cast<double>(p);
    double expected = static_cast<double>(p - 1) / static_cast<double>(p);
    if (!near(mean, expected, 1e-6)) {
        detail = "mean square " + fmt(mean);
        return false;
    }
    detail = "mean square " + fmt(mean);
    return true;
}

bool check_midpoint_g_relation(const CheckContext&, std::string& detail) {
    const uint64_t p = 1009;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    auto spec = midpoint_spectrum(chi);
    auto g = midpoint_g_values(chi);
    double worst = 0.0;
    for (uint64_t K = 0; K < p; ++K) {
        worst = std::max(worst, std::abs(2.0 * std::abs(g[K]) - spec.values[K]));
    }
    if (worst > 1e-8) {
        detail = "max |2|g| - midpoint| = " + fmt(worst);
        return false;
    }
    return true;
}

bool check_g_truncation(const CheckContext&, std::string& detail) {
    const uint64_t p = 101;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    std::complex<double> tau = gauss_sum(chi);
    for (uint64_t K : {0ull, 5ull, 77ull}) {
        for (double x : {0.25, 0.5, 0.9}) {
            auto exact = g_aux_exact(chi, K, x, tau);
            auto full = g_aux_truncated(chi, K, x, (p - 1) / 2);
            if (std::abs(exact.value - full.value) > 1e-9) {
                detail = "exact vs full-window differ by " + fmt(std::abs(exact.value - full.value));
                return false;
            }
            auto truncated = g_aux_truncated(chi, K, x, 10);
            if (std::abs(truncated.value - exact.value) > truncated.tail_radius) {
                detail = "tail bound violated";
                return false;
            }
        }
    }
    return true;
}

bool check_arcmax_sandwich(const CheckContext& ctx, std::string& detail) {
    const uint64_t p = ctx.level == VerifyLevel::full ? 1009 : 101;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    auto mid = midpoint_spectrum(chi);
    auto coarse = arc_max_spectrum(chi, 0, 8, 0.0);
    auto fine = arc_max_spectrum(chi, 0, 16, 0.0);
    auto refined = arc_max_spectrum(chi, 0, 16, 1e-4, ctx.threads);
    for (uint64_t K = 0; K < p; ++K) {
        if (mid.values[K] > fine.values[K] + 1e-12 ||
            coarse.values[K] > fine.values[K] + 1e-9 ||
            fine.values[K] > refined.values[K] + 1e-12) {
            detail = "ordering violated at K=" + std::to_string(K);
            return false;
        }
    }
    return true;
}

bool check_turyn_gauss_invariance(const CheckContext&, std::string& detail) {
    const uint64_t p = 1009;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    TwistedDft dft(p);
    std::vector<std::complex<double>> c0(p), c7(p);
    for (uint64_t n = 0; n < p; ++n) {
        c0[n] = chi.value_shifted(n, 0);
        c7[n] = chi.value_shifted(n, 7);
    }
    auto f0 = dft.apply(c0, 0.0);
    auto f7 = dft.apply(c7, 0.0);
    for (uint64_t k = 1; k < p; ++k) {
        if (std::abs(std::abs(f0[k]) - std::abs(f7[k])) > 1e-8 * std::abs(f0[k])) {
            detail = "shift changed |f(e_p(k))| at k=" + std::to_string(k);
            return false;
        }
    }
    return true;
}

bool check_tail_curve(const CheckContext&, std::string& detail) {
    const uint64_t p = 101;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    auto spec = midpoint_spectrum(chi);
    auto grid = default_v_grid(spec);
    auto curve = tail_curve(spec, grid);
    if (curve.phi.front() != 1.0) {
        detail = "phi(0) != 1";
        return false;
    }
    for (std::size_t i = 0; i < curve.phi.size(); ++i) {
        double scaled = curve.phi[i] * static_cast<double>(p);
        if (std::abs(scaled - std::round(scaled)) > 1e-9) {
            detail = "phi * p not integral";
            return false;
        }
        if (i > 0 && curve.phi[i] > curve.phi[i - 1]) {
            detail = "phi not nonincreasing";
            return false;
        }
    }
    return true;
}

bool check_exceptional_set(const CheckContext& ctx, std::string& detail) {
    std::vector<std::pair<uint64_t, uint64_t>> cases = {{10007, 2}};
    if (ctx.level == VerifyLevel::full) {
        cases.push_back({100003, 2});
        cases.push_back({100003, 3});
    }
    for (auto [p, d] : cases) {
        auto chi = DirichletCharacter::make(PrimeModulus::create(p), d, 1);
        auto report = exceptional_set(chi);
        double bound = std::pow(static_cast<double>(p), 0.75);
        if (static_cast<double>(report.count) > bound) {
            detail = "p=" + std::to_string(p) + " |E_p|=" + std::to_string(report.count);
            return false;
        }
        detail += "p=" + std::to_string(p) + ":" + std::to_string(report.count) + " ";
    }
    return true;
}

bool check_pattern_frequencies(const CheckContext&, std::string& detail) {
    const uint64_t p = 10009;  // smallest prime >= 10007 with 3 | p-1
    const uint32_t d = 3;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), d, 1);
    const double envelope_unit = 5.0 / std::sqrt(static_cast<double>(p));
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
        for (std::size_t c = 0; c < counts.size(); ++c) {
            double freq = static_cast<double>(counts[c]) / static_cast<double>(p);
            if (std::abs(freq - expect) > n * envelope_unit) {
                detail = "pattern " + std::to_string(c) + " (n=" + std::to_string(n) +
                         ") freq " + fmt(freq);
                return false;
            }
        }
    }
    return true;
}

// -- theory ------------------------------------------------------------------

bool check_digamma_harmonic(const CheckContext&, std::string& detail) {
    using namespace theory;
    if (!near(-digamma(0.5), kEulerGamma + 2.0 * std::log(2.0), 1e-12)) {
        detail = "-psi(1/2) = " + fmt(-digamma(0.5));
        return false;
    }
    if (!near(digamma(1.0), -kEulerGamma, 1e-12)) {
        detail = "psi(1) = " + fmt(digamma(1.0));
        return false;
    }
    double direct = 0.0;
    for (int k = 9; k >= 0; --k) direct += 1.0 / (k + 0.5);
    if (!near(harmonic_partial(10, 0.5), direct, 1e-13)) {
        detail = "H_10(1/2) mismatch";
        return false;
    }
    // large-n crossover agrees with the digamma route
    double big = harmonic_partial(1000000, 0.25);
    double via_psi = digamma(1000000.25) - digamma(0.25);
    if (!near(big, via_psi, 1e-10)) {
        detail = "H_1e6 crossover gap " + fmt(big - via_psi);
        return false;
    }
    return true;
}

bool check_alpha_bessel(const CheckContext& ctx, std::string& detail) {
    using namespace theory;
    if (!near(bessel_i(0, 0.0), 1.0, 0.0) || !near(bessel_i(0, 1.0), 1.2660658777520084, 1e-12)) {
        detail = "I_0 values off";
        return false;
    }
    for (double u : {1.0, 2.0, 5.0, 10.0}) {
        double i0 = bessel_i(0, u);
        if (!(std::exp(u) / (2.0 * kPi * std::sqrt(u)) <= i0 && i0 <= std::exp(u))) {
            detail = "I_0 bounds fail at u=" + fmt(u);
            return false;
        }
    }
    // e^{-u} I_0(u) strictly decreasing on a sampled grid
    double prev = 1.0;
    for (double u = 0.05; u <= 30.0; u += 0.05) {
        double v = std::exp(-u) * bessel_i(0, u);
        if (v >= prev) {
            detail = "e^-u I_0 not decreasing at u=" + fmt(u);
            return false;
        }
        prev = v;
    }
    AlphaD a2(2);
    for (double u : {0.5, 1.0, 3.0}) {
        if (!near(a2(u), std::log(std::cosh(u)), 1e-12)) {
            detail = "alpha_2 != log cosh at u=" + fmt(u);
            return false;
        }
    }
    // averaging identity: (1/d) sum e^{x cos} = I_0 + 2 sum I_{nd}
    const double x_step = ctx.level == VerifyLevel::full ? 0.25 : 0.5;
    for (uint32_t d : {2u, 3u, 4u, 6u}) {
        AlphaD alpha(d);
        for (double x = 0.0; x <= 10.0; x += x_step) {
            double lhs = std::exp(alpha(x));
            double rhs = bessel_i(0, x);
            for (int n = 1;; ++n) {
                double term = 2.0 * bessel_i(static_cast<int>(n * d), x);
                rhs += term;
                if (term < 1e-16) break;
            }
            if (std::abs(lhs - rhs) > 1e-10) {
                detail = "identity fails d=" + std::to_string(d) + " x=" + fmt(x) +
                         " gap=" + fmt(lhs - rhs);
                return false;
            }
        }
    }
    // monotonicity and bound estimates for even d on a grid
    for (uint32_t d : {2u, 4u, 6u, 8u}) {
        AlphaD alpha(d);
        double prev_mu = 1e300;
        for (double u = -20.0; u <= 20.0; u += 0.01) {
            double v = alpha(u);
            if (std::abs(v - alpha(-u)) > 1e-10) {
                detail = "alpha not even";
                return false;
            }
            double li0 = u == 0.0 ? 0.0 : std::log(bessel_i(0, std::min(std::abs(u), 20.0)));
            if (v < li0 - 1e-10 || v > std::abs(u) + 1e-12 || v < -1e-12) {
                detail = "0 <= log I0 <= alpha <= |u| fails at u=" + fmt(u);
                return false;
            }
            if (std::abs(alpha.prime(u)) > 1.0 + 1e-12) {
                detail = "|alpha'| > 1";
                return false;
            }
            double mu = v - u;
            if (mu > prev_mu + 1e-9) {  // alpha(u) - u nonincreasing
                detail = "alpha - u increased at u=" + fmt(u);
                return false;
            }
            prev_mu = mu;
            if (u >= 0.01 && alpha(u) + 1e-12 < alpha(u - 0.01)) {
                detail = "alpha not nondecreasing on [0,inf)";
                return false;
            }
        }
    }
    for (double u : {-0.05, -0.01, 0.01, 0.05}) {
        if (std::abs(alpha_d(2, u) / (u * u) - 0.5) > 0.01 ||
            std::abs(alpha_d(4, u) / (u * u) - 0.25) > 0.01) {
            detail = "small-u asymptotics off";
            return false;
        }
    }
    return true;
}

bool check_theory_constants(const CheckContext&, std::string& detail) {
    using namespace theory;
    auto c2 = constants(2);
    if (!near(c2.hat_C_d, 0.1029, 5e-4)) {
        detail = "hat C_2 = " + fmt(c2.hat_C_d);
        return false;
    }
    if (!near(c2.head_integral, 0.4758939231293184, 1e-8)) {
        detail = "head(2) = " + fmt(c2.head_integral);
        return false;
    }
    if (!near(c2.C_d, 0.4058834805432383, 1e-8)) {
        detail = "C_2 = " + fmt(c2.C_d);
        return false;
    }
    if (!near(c2_lower_direct(), c2.C_d_lower, 1e-8)) {
        detail = "two C_2^- routes differ: " + fmt(c2_lower_direct()) + " vs " + fmt(c2.C_d_lower);
        return false;
    }
    auto c4 = constants(4);
    if (!near(c4.head_integral, 0.25, 0.01)) {
        detail = "head(4) = " + fmt(c4.head_integral);
        return false;
    }
    if (!near(limit_constant(), -0.1722, 5e-4)) {
        detail = "limit = " + fmt(limit_constant());
        return false;
    }
    if (!near(c2.limit_C_lower, 0.3070, 1e-3)) {
        detail = "limit lower constant = " + fmt(c2.limit_C_lower);
        return false;
    }
    double prev = 1e300;
    for (uint32_t d = 2; d <= 20; d += 2) {
        double value = constants(d).C_d;
        if (value >= prev) {
            detail = "C_{2d} not decreasing at d=" + std::to_string(d);
            return false;
        }
        prev = value;
    }
    detail = "C_2=" + fmt(c2.C_d) + " hat=" + fmt(c2.hat_C_d);
    return true;
}

bool check_saddle_envelopes(const CheckContext&, std::string& detail) {
    using namespace theory;
    auto c2 = constants(2);
    if (!near(saddle_s(c2.C_d + 2.0 / kPi, c2), 1.0, 1e-12)) {
        detail = "saddle at C_d + 2/pi != 1";
        return false;
    }
    if (!(saddle_s(2.0, c2) > saddle_s(1.0, c2))) {
        detail = "saddle not increasing";
        return false;
    }
    double lower = predict_tail(3.0, c2, TailBoundKind::lower);
    double upper = predict_tail(3.0, c2, TailBoundKind::upper);
    if (!(lower <= upper)) {
        detail = "lower envelope above upper";
        return false;
    }
    for (double v : {0.0, 1.0, 4.0}) {
        double value = predict_tail(v, c2, TailBoundKind::lower);
        if (!(value > 0.0 && value <= 1.0)) {
            detail = "envelope outside (0,1]";
            return false;
        }
    }
    auto c3 = constants(3);
    if (!near(c3.delta, std::sqrt(3.0), 1e-12)) {
        detail = "delta_3 != sqrt 3";
        return false;
    }
    return true;
}

bool check_maxsum(const CheckContext&, std::string& detail) {
    using namespace theory;
    if (!near(maxsum_closed_form(1000, 2), 17.742530610007121, 1e-9)) {
        detail = "closed form n=1000 off";
        return false;
    }
    for (uint32_t d : {2u, 3u, 5u}) {
        double closed = maxsum_closed_form(200, d);
        double brute = maxsum_bruteforce(200, d);
        if (std::abs(closed - brute) > 0.05) {
            detail = "d=" + std::to_string(d) + " closed " + fmt(closed) + " brute " + fmt(brute);
            return false;
        }
    }
    if (!near(maxsum_closed_form(10000, 3) / maxsum_closed_form(10000, 2),
              std::cos(kPi / 6.0), 0.01)) {
        detail = "odd/even ratio off";
        return false;
    }
    return true;
}

// -- random model -------------------------------------------------------------

bool check_model_mean_zero(const CheckContext& ctx, std::string& detail) {
    const uint64_t samples = ctx.level == VerifyLevel::full ? 100000 : 5000;
    const uint64_t p = ctx.level == VerifyLevel::full ? 10007 : 3001;
    for (uint32_t d : {2u, 3u, 4u, 6u}) {
        RandomModelConfig config{p, d, 0, samples, 11};
        auto est = empirical_re_moment(config, 1, ctx.threads);
        if (std::abs(est.value) > 4.0 * est.std_error) {
            detail = "d=" + std::to_string(d) + " mean " + fmt(est.value) + " se " +
                     fmt(est.std_error);
            return false;
        }
    }
    return true;
}

bool check_model_second_moment(const CheckContext& ctx, std::string& detail) {
    RandomModelConfig config{3001, 3, 0, 20000, 5};
    ModelCoefficients coeffs(config);
    // E|G|^2 = sum |c_j|^2; estimate |G|^2 by complex draws
    KahanSum acc, acc_sq;
    for (uint64_t i = 0; i < config.samples; ++i) {
        double v = std::norm(sample_G(coeffs, config.seed, i));
        acc.add(v);
        acc_sq.add(v * v);
    }
    double n = static_cast<double>(config.samples);
    double mean = acc.sum / n;
    double se = std::sqrt(std::max(0.0, acc_sq.sum - n * mean * mean) / (n * (n - 1.0)));
    double expected = coeffs.sum_abs_sq();
    if (std::abs(mean - expected) > 4.0 * se) {
        detail = "E|G|^2 " + fmt(mean) + " expected " + fmt(expected) + " se " + fmt(se);
        return false;
    }
    (void)ctx;
    return true;
}

bool check_reproducibility(const CheckContext&, std::string& detail) {
    RandomModelConfig config{3001, 3, 0, 20000, 99};
    ModelCoefficients coeffs(config);
    auto a = empirical_laplace(coeffs, config, 1.5, 1);
    auto b = empirical_laplace(coeffs, config, 1.5, 2);
    auto c = empirical_laplace(coeffs, config, 1.5, 4);
    if (a.value != b.value || b.value != c.value || a.std_error != c.std_error) {
        detail = "estimates differ across worker counts";
        return false;
    }
    // truncation radius (p-1)/2 matches the default full range
    RandomModelConfig truncated = config;
    truncated.truncation = (config.p - 1) / 2;
    auto d = empirical_laplace(truncated, 1.5, 2);
    if (d.value != a.value) {
        detail = "explicit full radius changed the estimate";
        return false;
    }
    return true;
}

bool check_laplace_consistency(const CheckContext& ctx, std::string& detail) {
    const uint64_t p = 10007;
    const double s = 2.0;
    auto theoretical = theoretical_laplace(p, 2, s);
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
    auto arithmetic = arithmetic_laplace(chi, s);
    if (std::abs(arithmetic.value - theoretical.value) > 0.05) {
        detail = "arith " + fmt(arithmetic.value) + " vs theory " + fmt(theoretical.value);
        return false;
    }
    RandomModelConfig config{p, 2, 0, ctx.level == VerifyLevel::full ? 1000000ull : 100000ull, 1};
    auto empirical = empirical_laplace(config, s, ctx.threads);
    if (empirical.overflow ||
        std::abs(empirical.value - theoretical.value) > 4.0 * empirical.std_error) {
        detail = "empirical " + fmt(empirical.value) + " theory " + fmt(theoretical.value) +
                 " se " + fmt(empirical.std_error);
        return false;
    }
    if (std::abs(s) > laplace_window_wide(p) || !arithmetic.outside_strict_window) {
        detail = "window bookkeeping wrong";
        return false;
    }
    detail = "arith/theory gap " + fmt(arithmetic.value - theoretical.value) + ", mc se " +
             fmt(empirical.std_error);
    return true;
}

bool check_laplace_shape(const CheckContext& ctx, std::string& detail) {
    auto at_zero = theoretical_laplace(10007, 2, 0.0);
    if (at_zero.value != 1.0) {
        detail = "s=0 product != 1";
        return false;
    }
    std::vector<uint32_t> orders = {2};
    if (ctx.level == VerifyLevel::full) orders = {2, 3, 4};
    for (uint32_t d : orders) {
        for (double s : {2.0, 5.0, 10.0}) {
            auto t = theoretical_laplace(100003, d, s);
            if (std::abs(t.log_tail) > 1.0) {
                detail = "log P2 = " + fmt(t.log_tail) + " at d=" + std::to_string(d);
                return false;
            }
        }
    }
    // growth of log E exp(2 s Re G) ~ (2s/pi) log s + C_2 s
    auto c2 = theory::constants(2);
    for (double s : {10.0, 30.0, 100.0}) {
        auto t = theoretical_laplace(100003, 2, s);
        double main = 2.0 * s / kPi * std::log(s) + c2.C_d * s;
        if (std::abs(t.log_value - main) > 3.0 * std::log(s)) {
            detail = "growth gap " + fmt(t.log_value - main) + " at s=" + fmt(s);
            return false;
        }
    }
    // convexity of the Laplace transform in s
    RandomModelConfig config{3001, 2, 0, 20000, 3};
    ModelCoefficients coeffs(config);
    auto e1 = empirical_laplace(coeffs, config, 1.0, ctx.threads);
    auto e2 = empirical_laplace(coeffs, config, 2.0, ctx.threads);
    auto e3 = empirical_laplace(coeffs, config, 3.0, ctx.threads);
    double combined = 4.0 * std::sqrt(e1.std_error * e1.std_error +
                                      e2.std_error * e2.std_error + e3.std_error * e3.std_error);
    if (e2.value > 0.5 * (e1.value + e3.value) + combined) {
        detail = "midpoint convexity violated";
        return false;
    }
    return true;
}

bool check_moment_matching(const CheckContext& ctx, std::string& detail) {
    std::vector<std::pair<uint64_t, uint32_t>> cases = {{10007, 2}, {10009, 3}};
    if (ctx.level == VerifyLevel::full) {
        cases.push_back({100003, 2});
        cases.push_back({100003, 3});
    }
    for (auto [p, d] : cases) {
        auto chi = DirichletCharacter::make(PrimeModulus::create(p), d, 1);
        for (int n = 1; n <= 4; ++n) {
            auto cmp = moment_compare(chi, n);
            if (std::abs(cmp.arithmetic - cmp.probabilistic) > cmp.allowed_gap) {
                detail = "p=" + std::to_string(p) + " d=" + std::to_string(d) +
                         " n=" + std::to_string(n) + " gap " +
                         fmt(cmp.arithmetic - cmp.probabilistic) + " allowed " +
                         fmt(cmp.allowed_gap);
                return false;
            }
        }
    }
    return true;
}

bool check_tail_slope(const CheckContext&, std::string& detail) {
    const uint64_t p = 200003;
    auto chi = DirichletCharacter::make(PrimeModulus::create(p), 2, 1);
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
    detail = "slope " + fmt(slope) + " over " + std::to_string(count) + " points";
    return std::abs(slope - kPi / 2.0) <= 0.15 * kPi / 2.0;
}

bool check_odd_constants_report(const CheckContext&, std::string& detail) {
    std::string seq;
    for (uint32_t d : {3u, 5u, 7u, 9u}) {
        seq += "C_" + std::to_string(d) + "=" + fmt(theory::constants(d).C_d) + " ";
    }
    detail = "exploratory: " + seq;
    return true;
}

const std::vector<Check>& all_checks() {
    static const std::vector<Check> checks = {
        {"primitive-roots", false, check_primitive_roots},
        {"character-structure", false, check_character_structure},
        {"gauss-sum-modulus", false, check_gauss_modulus},
        {"complete-sum-orthogonality", false, check_orthogonality},
        {"gauss-point-interpolation", false, check_interpolation},
        {"twisted-dft-vs-direct", false, check_dft_oracle},
        {"midpoint-parseval", false, check_parseval},
        {"midpoint-g-relation", false, check_midpoint_g_relation},
        {"g-window-truncation", false, check_g_truncation},
        {"arc-max-sandwich", false, check_arcmax_sandwich},
        {"shifted-gauss-point-invariance", false, check_turyn_gauss_invariance},
        {"tail-curve-counting", false, check_tail_curve},
        {"exceptional-set-size", false, check_exceptional_set},
        {"pattern-frequencies", false, check_pattern_frequencies},
        {"digamma-harmonic", false, check_digamma_harmonic},
        {"alpha-bessel-estimates", false, check_alpha_bessel},
        {"analytic-constants", false, check_theory_constants},
        {"saddle-and-envelopes", false, check_saddle_envelopes},
        {"extremal-rotated-sums", false, check_maxsum},
        {"model-mean-zero", false, check_model_mean_zero},
        {"model-second-moment", false, check_model_second_moment},
        {"deterministic-sampling", false, check_reproducibility},
        {"laplace-consistency", false, check_laplace_consistency},
        {"laplace-product-shape", false, check_laplace_shape},
        {"moment-matching", false, check_moment_matching},
        {"midpoint-tail-slope", true, check_tail_slope},
        {"odd-order-constants", true, check_odd_constants_report},
    };
    return checks;
}

}  // namespace

int run_verify(VerifyLevel level, int threads) {
    CheckContext ctx{level, threads};
    int failures = 0;
    const auto total_start = std::chrono::steady_clock::now();
    for (const auto& check : all_checks()) {
        if (check.full_only && level != VerifyLevel::full) continue;
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = check.fn(ctx, detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        double elapsed = seconds_since(start);
        std::printf("%-34s %s  (%.2f s)%s%s\n", check.name, ok ? "PASS" : "FAIL", elapsed,
                    detail.empty() ? "" : "  -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    std::printf("verify: %s (%d failure%s, %.1f s total)\n", failures == 0 ? "ok" : "FAILED",
                failures, failures == 1 ? "" : "s", seconds_since(total_start));
    return failures == 0 ? 0 : 1;
}

}  // namespace charsum
