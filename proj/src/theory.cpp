#include "charsum/theory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace charsum {
namespace theory {

namespace {
constexpr double kPi = std::numbers::pi;
}

double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: x must be positive");
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic expansion with Bernoulli-number coefficients.
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12))))));
    return result + std::log(x) - 0.5 * inv - series;
}

double harmonic_partial(uint64_t n, double x) {
    if (!(x > 0.0)) throw std::domain_error("harmonic_partial: x must be positive");
    if (n == 0) return 0.0;
    if (n <= 1000000) {
        double sum = 0.0, c = 0.0;
        for (uint64_t k = n; k-- > 0;) {  // ascending term size
            double term = 1.0 / (static_cast<double>(k) + x);
            double y = term - c;
            double t = sum + y;
            c = (t - sum) - y;
            sum = t;
        }
        return sum;
    }
    return digamma(static_cast<double>(n) + x) - digamma(x);
}

double bessel_i(int n, double x) {
    if (n < 0) throw std::domain_error("bessel_i: order must be >= 0");
    if (std::abs(x) > 700.0) throw std::overflow_error("bessel_i: |x| > 700 would overflow");
    const double half = x / 2.0;
    // leading term (x/2)^n / n!
    double term = 1.0;
    for (int k = 1; k <= n; ++k) term *= half / k;
    double sum = term;
    const double q = half * half;
    for (int k = 1; k < 40000; ++k) {
        term *= q / (static_cast<double>(k) * (k + n));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double log_bessel_i0(double x) {
    x = std::abs(x);
    if (x < 40.0) return std::log(bessel_i(0, x));
    // I_0(x) ~ e^x/sqrt(2 pi x) (1 + 1/8x + 9/128x^2 + ...)
    const double t = 1.0 / x;
    double series = 1.0 + t * (1.0 / 8 + t * (9.0 / 128 + t * (75.0 / 1024 + t * (3675.0 / 32768 + t * (59535.0 / 262144 + t * 2401245.0 / 4194304)))));
    return x - 0.5 * std::log(2.0 * kPi * x) + std::log(series);
}

AlphaD::AlphaD(uint32_t d) : d_(d) {
    if (d < 2) throw std::invalid_argument("AlphaD: d must be >= 2");
    cosines_.resize(d);
    for (uint32_t k = 0; k < d; ++k) {
        cosines_[k] = std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(d));
    }
    cosines_[0] = 1.0;
    if (d % 2 == 0) cosines_[d / 2] = -1.0;
}

double AlphaD::operator()(double u) const {
    // For small |u| the mean of exponentials is 1 + O(u^2); go through expm1
    // so the O(u) parts cancel without losing the O(u^2) signal.
    if (std::abs(u) <= 0.5) {
        double acc = 0.0;
        for (double c : cosines_) acc += std::expm1(u * c);
        return std::log1p(acc / static_cast<double>(d_));
    }
    double peak = u * cosines_[0];
    for (double c : cosines_) peak = std::max(peak, u * c);
    double acc = 0.0;
    for (double c : cosines_) acc += std::exp(u * c - peak);
    return peak + std::log(acc / static_cast<double>(d_));
}

double AlphaD::prime(double u) const {
    double peak = u * cosines_[0];
    for (double c : cosines_) peak = std::max(peak, u * c);
    double num = 0.0, den = 0.0;
    for (double c : cosines_) {
        double w = std::exp(u * c - peak);
        num += c * w;
        den += w;
    }
    return num / den;
}

double AlphaD::minus_u(double u) const {
    if (u < 0.5) return (*this)(u) - u;
    // exponents u(cos - 1) <= 0: no cancellation at any scale
    double acc = 0.0;
    for (double c : cosines_) acc += std::exp(u * (c - 1.0));
    return std::log(acc / static_cast<double>(d_));
}

namespace {

struct SimpsonState {
    const std::function<double(double)>* f;
    double tol;
    double value = 0.0;
    double error = 0.0;
    int max_depth = 48;

    void recurse(double a, double b, double fa, double fm, double fb, double whole, int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const double flm = (*f)(lm), frm = (*f)(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double delta = left + right - whole;
        if (depth >= max_depth || std::abs(delta) <= 15.0 * tol * (b - a)) {
            value += left + right + delta / 15.0;
            error += std::abs(delta) / 15.0;
            return;
        }
        recurse(a, m, fa, flm, fm, left, depth + 1);
        recurse(m, b, fm, frm, fb, right, depth + 1);
    }
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol) {
    if (a == b) return {0.0, 0.0};
    SimpsonState state;
    state.f = &f;
    state.tol = tol / std::abs(b - a);
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    state.recurse(a, b, fa, fm, fb, whole, 0);
    return {state.value, state.error};
}

double delta_d(uint32_t d) {
    return d % 2 == 0 ? 2.0 : 2.0 * std::cos(kPi / (2.0 * static_cast<double>(d)));
}

TailIntegrals tail_integrals(uint32_t d) {
    if (d < 2) throw std::invalid_argument("tail_integrals: d must be >= 2");
    AlphaD alpha(d);
    TailIntegrals out;
    out.exploratory = (d % 2 == 1);

    const double small_u_limit = d == 2 ? 0.5 : 0.25;
    auto head_integrand = [&](double u) {
        if (u == 0.0) return small_u_limit;
        return alpha(u) / (u * u);
    };
    auto head = integrate_adaptive(head_integrand, 0.0, 1.0, 1e-11);
    out.head = head.value;
    out.head_error = head.error_estimate;

    // Cutoff where alpha_d(u) - u has settled onto -log d: the slowest
    // correction decays like exp(-u (1 - cos(2 pi/d))).
    double rate = 1.0 - std::cos(2.0 * kPi / static_cast<double>(d));
    double cutoff = std::max(50.0, (std::log(static_cast<double>(d)) + 34.0) / rate);
    out.cutoff = cutoff;
    auto tail_integrand = [&](double u) { return alpha.minus_u(u) / (u * u); };
    auto tail = integrate_adaptive(tail_integrand, 1.0, cutoff, 1e-11);
    out.tail = tail.value - std::log(static_cast<double>(d)) / cutoff;
    out.tail_error = tail.error_estimate;
    return out;
}

double limit_constant() {
    static const double cached = [] {
        auto head = integrate_adaptive(
            [](double u) { return u == 0.0 ? 0.25 : log_bessel_i0(u) / (u * u); }, 0.0, 1.0,
            1e-11);
        // log I_0(u) - u = -log sqrt(2 pi u) + log(asymptotic series); the
        // cutoff remainder integrates to (log(2 pi U) + 1)/(2U) + O(1/U^2).
        const double cutoff = 4096.0;
        auto tail = integrate_adaptive(
            [](double u) { return (log_bessel_i0(u) - u) / (u * u); }, 1.0, cutoff, 1e-11);
        double correction = -0.5 * (std::log(2.0 * kPi * cutoff) + 1.0) / cutoff;
        double tail_val = tail.value + correction;
        return 2.0 / kPi * (kEulerGamma + std::log(4.0 / kPi) + head.value + tail_val);
    }();
    return cached;
}

TheoryConstants constants(uint32_t d) {
    TailIntegrals ints = tail_integrals(d);
    TheoryConstants c;
    c.d = d;
    c.delta = delta_d(d);
    c.head_integral = ints.head;
    c.head_error = ints.head_error;
    c.tail_integral = ints.tail;
    c.tail_error = ints.tail_error;
    c.exploratory = ints.exploratory;
    c.hat_C_d = 2.0 / kPi * (kEulerGamma + std::log(4.0 / kPi) + c.tail_integral);
    c.C_d = c.hat_C_d + 2.0 / kPi * c.head_integral;
    c.C_d_error = 2.0 / kPi * (c.head_error + c.tail_error);
    c.C_d_lower = 2.0 / kPi * std::exp(-kPi / 2.0 * c.C_d - 1.0);
    c.C_d_upper_proof =
        7.0 * std::exp(-kEulerGamma - 2.0 * std::log(2.0) - 5.0 * std::log(10.0) - kPi / c.delta);
    c.C_d_upper_displayed = 28.0e5 * std::exp(-kPi / c.delta - kEulerGamma);
    if (d % 2 == 1) {
        const double logd = std::log(static_cast<double>(d));
        c.C_tilde_odd = logd / 2.0 * std::exp(7.0 * kPi * std::sqrt(logd) / c.delta - kEulerGamma);
    } else {
        c.C_tilde_odd = std::numeric_limits<double>::quiet_NaN();
    }
    c.limit_C = limit_constant();
    c.limit_C_lower = 2.0 / kPi * std::exp(-kPi / 2.0 * c.limit_C - 1.0);
    return c;
}

double c2_lower_direct() {
    auto head = integrate_adaptive(
        [](double u) {
            if (u == 0.0) return 0.5;
            // log cosh u = log1p((expm1(u) + expm1(-u))/2), exact at all scales
            return std::log1p(0.5 * (std::expm1(u) + std::expm1(-u))) / (u * u);
        },
        0.0, 1.0, 1e-11);
    // log(1 + e^{-2u}) < 1.4e-18 beyond u = 20.5; no correction needed.
    auto tail = integrate_adaptive(
        [](double u) { return std::log1p(std::exp(-2.0 * u)) / (u * u); }, 1.0, 21.0, 1e-11);
    const double exponent = -kEulerGamma - 1.0 + std::log(kPi / 2.0) - head.value - tail.value;
    return 2.0 / kPi * std::exp(exponent);
}

double saddle_s(double v, const TheoryConstants& c) {
    return std::exp(kPi / 2.0 * (v - c.C_d) - 1.0);
}

double saddle_s(double v, uint32_t d) { return saddle_s(v, constants(d)); }

double predict_tail(double v, const TheoryConstants& c, TailBoundKind kind) {
    double constant = 0.0;
    switch (kind) {
        case TailBoundKind::lower:
            constant = c.C_d_lower;
            break;
        case TailBoundKind::upper:
            constant = c.C_d_upper_proof;
            break;
        case TailBoundKind::odd_lower:
            if (c.d % 2 == 0) throw std::domain_error("predict_tail: odd_lower needs odd d");
            constant = c.C_tilde_odd;
            break;
        case TailBoundKind::midpoint_lower:
            if (c.d != 2) throw std::domain_error("predict_tail: midpoint_lower is the d=2 bound");
            constant = c.C_d_lower;
            break;
    }
    return std::exp(-constant * std::exp(kPi / c.delta * v));
}

double maxsum_closed_form(uint64_t n, uint32_t d) {
    if (n < 2) throw std::invalid_argument("maxsum_closed_form: n must be >= 2");
    const double logn = std::log(static_cast<double>(n));
    if (d % 2 == 0) return 2.0 * logn + 2.0 * kEulerGamma + 4.0 * std::log(2.0);
    return 2.0 * std::cos(kPi / (2.0 * static_cast<double>(d))) *
           (logn + kEulerGamma + 2.0 * std::log(2.0));
}

double maxsum_bruteforce(uint64_t n, uint32_t d, int x_steps, int theta_steps) {
    if (n < 2 || d < 2) throw std::invalid_argument("maxsum_bruteforce: need n >= 2, d >= 2");
    if (x_steps < 64 || theta_steps < 64) {
        throw std::invalid_argument("maxsum_bruteforce: grids must have >= 64 steps");
    }
    double best = 0.0;
    for (int xi = 0; xi < x_steps; ++xi) {
        const double x = (xi + 0.5) / x_steps;
        // With a_j chosen per term, the sum splits by sign(j+x): positive
        // terms j = 0..n contribute H_{n+1}(x), negative ones H_n(1-x).
        const double h_pos = harmonic_partial(n + 1, x);
        const double h_neg = harmonic_partial(n, 1.0 - x);
        const double s = std::sin(kPi * x);
        for (int ti = 0; ti < theta_steps; ++ti) {
            const double theta = 2.0 * kPi / static_cast<double>(d) * ti / theta_steps;
            double gain_pos = -2.0, gain_neg = -2.0;
            for (uint32_t k = 0; k < d; ++k) {
                const double phi = 2.0 * kPi * k / static_cast<double>(d);
                gain_pos = std::max(gain_pos, std::cos(phi - theta));
                gain_neg = std::max(gain_neg, std::cos(phi - theta - kPi));
            }
            best = std::max(best, s * (gain_pos * h_pos + gain_neg * h_neg));
        }
    }
    return best;
}

}  // namespace theory
}  // namespace charsum
