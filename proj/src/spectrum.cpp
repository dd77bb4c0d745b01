#include "charsum/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "charsum/parallel.hpp"

namespace charsum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<std::complex<double>> shifted_coefficients(const DirichletCharacter& chi,
                                                       int64_t shift) {
    const uint64_t p = chi.p();
    std::vector<std::complex<double>> coeffs(p);
    for (uint64_t n = 0; n < p; ++n) coeffs[n] = chi.value_shifted(n, shift);
    return coeffs;
}

}  // namespace

Spectrum midpoint_spectrum(const DirichletCharacter& chi, int64_t shift) {
    const uint64_t p = chi.p();
    TwistedDft dft(p);
    auto f = dft.apply(shifted_coefficients(chi, shift), 0.5);
    Spectrum s;
    s.p = p;
    s.d = static_cast<uint32_t>(chi.order());
    s.m = static_cast<uint32_t>(chi.index());
    s.shift = shift;
    s.kind = SpectrumKind::midpoint;
    s.values.resize(p);
    const double inv_sqrt_p = 1.0 / std::sqrt(static_cast<double>(p));
    for (uint64_t K = 0; K < p; ++K) s.values[K] = std::abs(f[K]) * inv_sqrt_p;
    return s;
}

Spectrum arc_max_spectrum(const DirichletCharacter& chi, int64_t shift, int grid_T,
                          double refine_tol, int threads) {
    if (grid_T < 2) throw std::invalid_argument("arc_max_spectrum: grid_T must be >= 2");
    const uint64_t p = chi.p();
    const double inv_sqrt_p = 1.0 / std::sqrt(static_cast<double>(p));

    TwistedDft dft(p);
    auto coeffs = shifted_coefficients(chi, shift);

    Spectrum s;
    s.p = p;
    s.d = static_cast<uint32_t>(chi.order());
    s.m = static_cast<uint32_t>(chi.index());
    s.shift = shift;
    s.kind = SpectrumKind::arcmax;
    s.grid_T = grid_T;
    s.refine_tol = refine_tol;
    s.values.assign(p, 0.0);
    std::vector<int> best_t(p, 0);

    for (int t = 0; t < grid_T; ++t) {
        const double x = static_cast<double>(t) / grid_T;
        auto f = dft.apply(coeffs, x);
        for (uint64_t K = 0; K < p; ++K) {
            double v = std::abs(f[K]) * inv_sqrt_p;
            if (v > s.values[K]) {
                s.values[K] = v;
                best_t[K] = t;
            }
        }
    }

    if (refine_tol > 0.0) {
        auto height = [&](uint64_t K, double x) {
            return std::abs(eval_f_at_arc(chi, K, x, shift)) * inv_sqrt_p;
        };
        const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
        parallel_chunks(p, 1024, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
            for (uint64_t K = begin; K < end; ++K) {
                double a = std::max(0.0, (best_t[K] - 1.0) / grid_T);
                double b = std::min(1.0, (best_t[K] + 1.0) / grid_T);
                double x1 = b - inv_gr * (b - a);
                double x2 = a + inv_gr * (b - a);
                double f1 = height(K, x1);
                double f2 = height(K, x2);
                double best = std::max(f1, f2);
                while (b - a > refine_tol) {
                    if (f1 < f2) {
                        a = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = a + inv_gr * (b - a);
                        f2 = height(K, x2);
                    } else {
                        b = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = b - inv_gr * (b - a);
                        f1 = height(K, x1);
                    }
                    best = std::max(best, std::max(f1, f2));
                }
                s.values[K] = std::max(s.values[K], best);
            }
        });
    }
    return s;
}

namespace {

// (i/p) / (e_p(j+x) - 1) for the Lagrange expansion of g.
std::complex<double> lagrange_coefficient(uint64_t p, double j_plus_x) {
    // i/(e(t)-1) = (cot(pi t) - i)/2 with t = (j+x)/p
    const double t = std::numbers::pi * j_plus_x / static_cast<double>(p);
    return {1.0 / std::tan(t) / (2.0 * static_cast<double>(p)),
            -0.5 / static_cast<double>(p)};
}

}  // namespace

AuxValue g_aux_exact(const DirichletCharacter& chi, uint64_t K, double x,
                     std::complex<double> tau) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::domain_error("g_aux_exact: x must lie strictly inside (0,1)");
    }
    std::complex<double> f = eval_f_at_arc(chi, K, x);
    std::complex<double> zp_minus_1 = std::polar(1.0, kTwoPi * x) - 1.0;  // z^p = e(x)
    return {std::complex<double>(0.0, 1.0) * f / (zp_minus_1 * tau), 0.0};
}

AuxValue g_aux_exact(const DirichletCharacter& chi, uint64_t K, double x) {
    return g_aux_exact(chi, K, x, gauss_sum(chi));
}

AuxValue g_aux_truncated(const DirichletCharacter& chi, uint64_t K, double x, uint64_t window) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::domain_error("g_aux_truncated: x must lie strictly inside (0,1)");
    }
    const uint64_t p = chi.p();
    const uint64_t half = (p - 1) / 2;
    if (window < 1 || window > half) {
        throw std::invalid_argument("g_aux_truncated: need 1 <= window < p/2");
    }
    std::complex<double> acc = 0;
    for (int64_t j = -static_cast<int64_t>(window); j <= static_cast<int64_t>(window); ++j) {
        // chi-bar(K - j) = conj(chi(K - j))
        uint64_t n = chi.shifted_residue(K, -j);
        std::complex<double> cb = std::conj(chi.value(n));
        if (cb == std::complex<double>(0.0, 0.0)) continue;
        acc += cb * lagrange_coefficient(p, static_cast<double>(j) + x);
    }
    double radius = 0.0;
    for (uint64_t j = window + 1; j <= half; ++j) {
        radius += 1.0 / static_cast<double>(j - 1);
    }
    return {acc, radius};
}

std::vector<std::complex<double>> midpoint_g_values(const DirichletCharacter& chi) {
    const uint64_t p = chi.p();
    TwistedDft dft(p);
    auto f = dft.apply(shifted_coefficients(chi, 0), 0.5);
    std::complex<double> tau = gauss_sum(chi);
    // z^p - 1 = e(1/2) - 1 = -2 at the midpoint
    const std::complex<double> scale = std::complex<double>(0.0, 1.0) / (-2.0 * tau);
    for (auto& v : f) v *= scale;
    return f;
}

TailCurve tail_curve(const Spectrum& spectrum, std::span<const double> v_grid) {
    for (std::size_t i = 1; i < v_grid.size(); ++i) {
        if (!(v_grid[i] > v_grid[i - 1])) {
            throw std::invalid_argument("tail_curve: V grid must be strictly increasing");
        }
    }
    std::vector<double> sorted(spectrum.values);
    std::sort(sorted.begin(), sorted.end());
    TailCurve curve;
    curve.v_grid.assign(v_grid.begin(), v_grid.end());
    curve.phi.resize(v_grid.size());
    const double p = static_cast<double>(spectrum.p);
    for (std::size_t i = 0; i < v_grid.size(); ++i) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), v_grid[i]);
        curve.phi[i] = static_cast<double>(sorted.end() - it) / p;
    }
    curve.p = spectrum.p;
    curve.d = spectrum.d;
    curve.m = spectrum.m;
    curve.kind = spectrum.kind;
    curve.shift = spectrum.shift;
    return curve;
}

std::vector<double> default_v_grid(const Spectrum& spectrum, double step) {
    double top = 0.0;
    for (double v : spectrum.values) top = std::max(top, v);
    const auto n = static_cast<std::size_t>(std::llround(std::ceil(top) / step)) + 1;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) * step;
    return grid;
}

ExceptionalSetReport exceptional_set(const DirichletCharacter& chi, bool keep_members) {
    auto g = midpoint_g_values(chi);
    ExceptionalSetReport report;
    report.threshold = std::log(std::log(static_cast<double>(chi.p())));
    for (uint64_t K = 0; K < g.size(); ++K) {
        if (std::abs(g[K]) >= report.threshold) {
            ++report.count;
            if (keep_members) report.members.push_back(K);
        }
    }
    return report;
}

}  // namespace charsum
