// The probabilistic companion of g at the midpoint: sums of independent
// uniform d-th roots of unity against the Lagrange coefficients, their
// Monte Carlo Laplace transform, the exact finite product form, and the
// arithmetic counterparts for direct comparison.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "charsum/character.hpp"

namespace charsum {

struct RandomModelConfig {
    uint64_t p = 0;
    uint32_t d = 0;
    uint64_t truncation = 0;  // max |j|; 0 means the full range (p-1)/2
    uint64_t samples = 0;
    uint64_t seed = 0;

    uint64_t radius() const { return truncation == 0 ? (p - 1) / 2 : truncation; }
};

// Shared per-(p, d, radius) tables: the complex coefficients
// c_j = i/(p(e_p(j+1/2)-1)) for |j| <= radius and, for each j, the d
// possible values of Re(c_j X).
class ModelCoefficients {
  public:
    explicit ModelCoefficients(const RandomModelConfig& config);

    uint64_t radius() const { return radius_; }
    uint32_t d() const { return d_; }
    std::size_t terms() const { return coefficients_.size(); }
    const std::vector<std::complex<double>>& coefficients() const { return coefficients_; }
    const std::vector<std::complex<double>>& roots() const { return roots_; }
    // row j-index (0-based over j = -R..R), column k: Re(c_j e(k/d))
    const double* re_row(std::size_t row) const { return re_values_.data() + row * d_; }
    double max_abs_re() const { return max_abs_re_; }  // bound on |Re G|

    double sum_abs_sq() const;  // sum_j |c_j|^2 = E|G|^2

  private:
    uint64_t radius_ = 0;
    uint32_t d_ = 0;
    std::vector<std::complex<double>> coefficients_;
    std::vector<std::complex<double>> roots_;  // e(k/d)
    std::vector<double> re_values_;
    double max_abs_re_ = 0.0;
};

// One draw of G = sum_j c_j X(j); the stream is derived from
// (seed, sample_index) so draws are reproducible and order-independent.
std::complex<double> sample_G(const ModelCoefficients& coeffs, uint64_t seed,
                              uint64_t sample_index);
std::complex<double> sample_G(const RandomModelConfig& config, uint64_t sample_index);

struct RandomModelEstimate {
    double value = 0.0;
    double std_error = 0.0;  // jackknife (equals sd/sqrt(N) for a mean)
    uint64_t samples = 0;
    uint64_t seed = 0;
    bool overflow = false;
};

// Monte Carlo mean of exp(2 s Re G).
RandomModelEstimate empirical_laplace(const RandomModelConfig& config, double s, int threads = 0);
RandomModelEstimate empirical_laplace(const ModelCoefficients& coeffs,
                                      const RandomModelConfig& config, double s, int threads = 0);

// Monte Carlo mean of (Re G)^n.
RandomModelEstimate empirical_re_moment(const RandomModelConfig& config, int n, int threads = 0);

// Finite product for E exp(2 s Re G), split at (log p)^2: head factors use
// the asymptotic coefficients 2s/(pi(2j+1)), tail factors the exact
// cotangent form. Both logs are reported separately.
struct TheoreticalLaplace {
    double value = 0.0;
    double log_value = 0.0;
    double log_head = 0.0;  // log P1
    double log_tail = 0.0;  // log P2
};

TheoreticalLaplace theoretical_laplace(uint64_t p, uint32_t d, double s);

// (1/p) sum over K outside the exceptional set of exp(2 s Re g_{chi,K}).
struct ArithmeticLaplace {
    double value = 0.0;
    uint64_t excluded = 0;       // |E_p|
    double threshold = 0.0;      // log log p
    bool outside_strict_window = false;
};

ArithmeticLaplace arithmetic_laplace(const DirichletCharacter& chi, double s);

// The two validity windows for s.
double laplace_window_strict(uint64_t p);  // log p / (100 (log_2 p)^2)
double laplace_window_wide(uint64_t p);    // log p / log_3 p

// Exact E (Re G)^n for n <= 4, from per-term root averages and independence.
double model_re_moment_exact(const ModelCoefficients& coeffs, int n);

struct MomentComparison {
    double arithmetic = 0.0;
    double probabilistic = 0.0;
    double allowed_gap = 0.0;  // 10 (n/sqrt p)(log p/pi)^n
    bool exact = false;        // probabilistic side exact (n <= 4) or Monte Carlo
};

// Compares (1/p) sum_K (Re g_{chi,K})^n with E (Re G)^n.
MomentComparison moment_compare(const DirichletCharacter& chi, int n,
                                uint64_t mc_samples = 200000, uint64_t mc_seed = 1);

}  // namespace charsum
