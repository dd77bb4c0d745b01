// Special functions and every explicit analytic constant: digamma/harmonic
// sums, modified Bessel I_n, the root-average exponent alpha_d, the head and
// tail integrals behind C_d, tail envelopes, the saddle-point map, and the
// extremal rotated-coefficient sums.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace charsum {
namespace theory {

// Digamma for x > 0, via recurrence + asymptotic series (abs error ~1e-13).
double digamma(double x);

// H_n(x) = sum_{k=0}^{n-1} 1/(k+x): direct summation up to n = 10^6, then
// digamma(n+x) - digamma(x). Rejects x <= 0.
double harmonic_partial(uint64_t n, double x);

// Modified Bessel function of the first kind by power series, summed until
// term < 1e-18 * partial. Guards |x| <= 700 against overflow.
double bessel_i(int n, double x);

// log I_0, stable for all x (series below 40, asymptotic expansion above).
double log_bessel_i0(double x);

// alpha_d(u) = log((1/d) sum_k exp(u cos(2 pi k/d))). Cache the cosine table
// when evaluating many points.
class AlphaD {
  public:
    explicit AlphaD(uint32_t d);

    uint32_t d() const { return d_; }
    double operator()(double u) const;
    double prime(double u) const;    // alpha_d'
    double minus_u(double u) const;  // alpha_d(u) - u, stable for u >= 0

  private:
    uint32_t d_;
    std::vector<double> cosines_;
};

inline double alpha_d(uint32_t d, double u) { return AlphaD(d)(u); }
inline double alpha_d_prime(uint32_t d, double u) { return AlphaD(d).prime(u); }

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Adaptive Simpson on [a, b] to the given absolute tolerance.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double tol = 1e-10);

// head = int_0^1 alpha_d(u)/u^2 du (integrand extended by its limit at 0),
// tail = int_1^inf (alpha_d(u)-u)/u^2 du, truncated at a cutoff >= 50 where
// alpha_d(u)exactly-u has settled to -log d, with the -log(d)/cutoff
// correction added. Odd d is allowed but flagged exploratory.
struct TailIntegrals {
    double head = 0.0;
    double head_error = 0.0;
    double tail = 0.0;
    double tail_error = 0.0;
    double cutoff = 0.0;
    bool exploratory = false;  // true for odd d
};

TailIntegrals tail_integrals(uint32_t d);

// 2 for even d, 2 cos(pi/(2d)) for odd d.
double delta_d(uint32_t d);

struct TheoryConstants {
    uint32_t d = 0;
    double delta = 0.0;
    double head_integral = 0.0;
    double head_error = 0.0;
    double tail_integral = 0.0;
    double tail_error = 0.0;
    double hat_C_d = 0.0;         // (2/pi)(gamma + log(4/pi) + tail)
    double C_d = 0.0;             // hat_C_d + (2/pi) head
    double C_d_error = 0.0;
    double C_d_lower = 0.0;       // (2/pi) exp(-(pi/2) C_d - 1)
    double C_d_upper_proof = 0.0; // 7 exp(-gamma - 2log2 - 5log10 - pi/delta_d)
    double C_d_upper_displayed = 0.0;  // 28e5 exp(-pi/delta_d - gamma)
    double C_tilde_odd = 0.0;     // (log d / 2) exp(7 pi sqrt(log d)/delta_d - gamma); NaN for even d
    double limit_C = 0.0;         // lim of C over even orders
    double limit_C_lower = 0.0;   // (2/pi) exp(-(pi/2) limit_C - 1)
    bool exploratory = false;     // odd d: alpha-based fields are exploratory
};

TheoryConstants constants(uint32_t d);

// lim over even d of C_d, through the log I_0 integrals.
double limit_constant();

// C_2^- evaluated straight from its displayed integral form; must agree
// with constants(2).C_d_lower to quadrature accuracy.
double c2_lower_direct();

// Saddle point s(V) = exp((pi/2)(V - C_d) - 1).
double saddle_s(double v, const TheoryConstants& c);
double saddle_s(double v, uint32_t d);

enum class TailBoundKind { lower, upper, odd_lower, midpoint_lower };

// exp(-C exp((pi/delta_d) V)) with C picked by kind. midpoint_lower is the
// d = 2 midpoint bound (same constant as lower).
double predict_tail(double v, const TheoryConstants& c, TailBoundKind kind);

// Main terms of max over x and unit-root coefficient choices of
// |sin(pi x) sum_{|j|<=n} a_j/(j+x)|:
//   even d: 2 log n + 2 gamma + 4 log 2
//   odd d:  2 cos(pi/2d) (log n + gamma + 2 log 2)
double maxsum_closed_form(uint64_t n, uint32_t d);

// Grid maximization with the per-term optimal rotation: for each direction
// theta the best a_j depends only on sign(j+x), so the inner sum collapses
// to harmonic sums. Requires grids of at least 64 steps.
double maxsum_bruteforce(uint64_t n, uint32_t d, int x_steps = 256, int theta_steps = 512);

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

}  // namespace theory
}  // namespace charsum
