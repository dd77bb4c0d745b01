#include "charsum/random_model.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "charsum/parallel.hpp"
#include "charsum/rng.hpp"
#include "charsum/spectrum.hpp"
#include "charsum/theory.hpp"

namespace charsum {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::size_t kSampleChunk = 4096;  // fixed; keeps reductions canonical
}  // namespace

ModelCoefficients::ModelCoefficients(const RandomModelConfig& config) {
    if (config.p < 3 || config.d < 2) {
        throw std::invalid_argument("ModelCoefficients: need p >= 3 and d >= 2");
    }
    radius_ = config.radius();
    if (radius_ > (config.p - 1) / 2) {
        throw std::invalid_argument("ModelCoefficients: truncation exceeds (p-1)/2");
    }
    d_ = config.d;
    const double p = static_cast<double>(config.p);
    const std::size_t terms = 2 * radius_ + 1;
    coefficients_.resize(terms);
    re_values_.resize(terms * d_);
    roots_.resize(d_);
    for (uint32_t k = 0; k < d_; ++k) {
        roots_[k] = std::polar(1.0, 2.0 * kPi * k / static_cast<double>(d_));
    }
    roots_[0] = {1.0, 0.0};
    for (std::size_t row = 0; row < terms; ++row) {
        const double j = static_cast<double>(static_cast<int64_t>(row) -
                                             static_cast<int64_t>(radius_));
        // c_j = i/(p(e_p(j+1/2)-1)) = (cot(pi(2j+1)/(2p)) - i)/(2p)
        const double theta = kPi * (2.0 * j + 1.0) / (2.0 * p);
        const double re = 1.0 / std::tan(theta) / (2.0 * p);
        const double im = -0.5 / p;
        coefficients_[row] = {re, im};
        double row_max = 0.0;
        for (uint32_t k = 0; k < d_; ++k) {
            double y = re * roots_[k].real() - im * roots_[k].imag();
            re_values_[row * d_ + k] = y;
            row_max = std::max(row_max, std::abs(y));
        }
        max_abs_re_ += row_max;
    }
}

double ModelCoefficients::sum_abs_sq() const {
    KahanSum acc;
    for (const auto& c : coefficients_) acc.add(std::norm(c));
    return acc.sum;
}

std::complex<double> sample_G(const ModelCoefficients& coeffs, uint64_t seed,
                              uint64_t sample_index) {
    SplitMix64 rng = derive_stream(seed, sample_index);
    const uint32_t d = coeffs.d();
    std::complex<double> acc = 0;
    const auto& c = coeffs.coefficients();
    const auto& roots = coeffs.roots();
    for (std::size_t row = 0; row < c.size(); ++row) {
        acc += c[row] * roots[rng.below(d)];
    }
    return acc;
}

std::complex<double> sample_G(const RandomModelConfig& config, uint64_t sample_index) {
    return sample_G(ModelCoefficients(config), config.seed, sample_index);
}

namespace {

// Re G for one sample; same stream and draw order as sample_G.
double sample_re_G(const ModelCoefficients& coeffs, uint64_t seed, uint64_t sample_index) {
    SplitMix64 rng = derive_stream(seed, sample_index);
    const uint32_t d = coeffs.d();
    const std::size_t rows = coeffs.terms();
    double acc = 0.0;
    for (std::size_t row = 0; row < rows; ++row) {
        acc += coeffs.re_row(row)[rng.below(d)];
    }
    return acc;
}

// Deterministic chunked Monte Carlo mean of fn(Re G).
RandomModelEstimate mc_mean(const ModelCoefficients& coeffs, const RandomModelConfig& config,
                            int threads, const std::function<double(double)>& fn) {
    if (config.samples == 0) throw std::invalid_argument("Monte Carlo: need samples >= 1");
    const std::size_t n_chunks = (config.samples + kSampleChunk - 1) / kSampleChunk;
    std::vector<double> sums(n_chunks, 0.0), sq_sums(n_chunks, 0.0);
    std::atomic<bool> overflow{false};
    parallel_chunks(config.samples, kSampleChunk, threads,
                    [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                        KahanSum s, s2;
                        for (uint64_t i = begin; i < end; ++i) {
                            double v = fn(sample_re_G(coeffs, config.seed, i));
                            if (!std::isfinite(v)) overflow.store(true, std::memory_order_relaxed);
                            s.add(v);
                            s2.add(v * v);
                        }
                        sums[chunk] = s.sum;
                        sq_sums[chunk] = s2.sum;
                    });
    KahanSum total, total_sq;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        total.add(sums[c]);
        total_sq.add(sq_sums[c]);
    }
    const double n = static_cast<double>(config.samples);
    const double mean = total.sum / n;
    RandomModelEstimate est;
    est.value = mean;
    // Jackknife over leave-one-out means; for a plain mean this reduces to
    // sqrt(sum (x_i - mean)^2 / (n (n-1))).
    double var_sum = std::max(0.0, total_sq.sum - n * mean * mean);
    est.std_error = config.samples > 1 ? std::sqrt(var_sum / (n * (n - 1.0))) : 0.0;
    est.samples = config.samples;
    est.seed = config.seed;
    est.overflow = overflow;
    return est;
}

}  // namespace

RandomModelEstimate empirical_laplace(const ModelCoefficients& coeffs,
                                      const RandomModelConfig& config, double s, int threads) {
    if (2.0 * std::abs(s) * coeffs.max_abs_re() > 700.0) {
        RandomModelEstimate est;
        est.samples = config.samples;
        est.seed = config.seed;
        est.overflow = true;
        est.value = std::numeric_limits<double>::infinity();
        return est;
    }
    if (s == 0.0) {
        // exp(0) exactly, with zero spread
        RandomModelEstimate est;
        est.value = 1.0;
        est.samples = config.samples;
        est.seed = config.seed;
        return est;
    }
    return mc_mean(coeffs, config, threads, [s](double re) { return std::exp(2.0 * s * re); });
}

RandomModelEstimate empirical_laplace(const RandomModelConfig& config, double s, int threads) {
    ModelCoefficients coeffs(config);
    return empirical_laplace(coeffs, config, s, threads);
}

RandomModelEstimate empirical_re_moment(const RandomModelConfig& config, int n, int threads) {
    if (n < 1) throw std::invalid_argument("empirical_re_moment: n must be >= 1");
    ModelCoefficients coeffs(config);
    return mc_mean(coeffs, config, threads, [n](double re) { return std::pow(re, n); });
}

TheoreticalLaplace theoretical_laplace(uint64_t p, uint32_t d, double s) {
    if (p < 3 || d < 2) throw std::invalid_argument("theoretical_laplace: need p >= 3, d >= 2");
    const double pd = static_cast<double>(p);
    const double logp = std::log(pd);
    const auto head_limit = static_cast<int64_t>(std::floor(logp * logp));
    const auto half = static_cast<int64_t>((p - 1) / 2);

    theory::AlphaD alpha(d);
    std::vector<double> cos_phi(d), sin_phi(d);
    for (uint32_t k = 0; k < d; ++k) {
        cos_phi[k] = std::cos(2.0 * kPi * k / static_cast<double>(d));
        sin_phi[k] = std::sin(2.0 * kPi * k / static_cast<double>(d));
    }

    KahanSum log_head;
    for (int64_t j = -std::min(head_limit, half); j <= std::min(head_limit, half); ++j) {
        log_head.add(alpha(2.0 * s / (kPi * (2.0 * static_cast<double>(j) + 1.0))));
    }
    KahanSum log_tail;
    for (int64_t j = -half; j <= half; ++j) {
        if (std::abs(j) <= head_limit) continue;
        const double theta = kPi * (2.0 * static_cast<double>(j) + 1.0) / (2.0 * pd);
        const double cot = 1.0 / std::tan(theta);
        double mean_expm1 = 0.0;
        for (uint32_t k = 0; k < d; ++k) {
            mean_expm1 += std::expm1(s / pd * (cos_phi[k] * cot + sin_phi[k]));
        }
        log_tail.add(std::log1p(mean_expm1 / static_cast<double>(d)));
    }

    TheoreticalLaplace out;
    out.log_head = log_head.sum;
    out.log_tail = log_tail.sum;
    out.log_value = out.log_head + out.log_tail;
    out.value = std::exp(out.log_value);
    return out;
}

double laplace_window_strict(uint64_t p) {
    const double l2 = std::log(std::log(static_cast<double>(p)));
    return std::log(static_cast<double>(p)) / (100.0 * l2 * l2);
}

double laplace_window_wide(uint64_t p) {
    return std::log(static_cast<double>(p)) /
           std::log(std::log(std::log(static_cast<double>(p))));
}

ArithmeticLaplace arithmetic_laplace(const DirichletCharacter& chi, double s) {
    auto g = midpoint_g_values(chi);
    ArithmeticLaplace out;
    // same membership rule as exceptional_set: |g| >= log log p
    out.threshold = std::log(std::log(static_cast<double>(chi.p())));
    out.outside_strict_window = std::abs(s) > laplace_window_strict(chi.p());
    KahanSum acc;
    for (const auto& value : g) {
        if (std::abs(value) >= out.threshold) {
            ++out.excluded;
            continue;
        }
        acc.add(std::exp(2.0 * s * value.real()));
    }
    out.value = acc.sum / static_cast<double>(chi.p());
    return out;
}

double model_re_moment_exact(const ModelCoefficients& coeffs, int n) {
    if (n < 1 || n > 4) {
        throw std::invalid_argument("model_re_moment_exact: implemented for 1 <= n <= 4");
    }
    if (n == 1) return 0.0;  // E X = 0 for every d >= 2
    const uint32_t d = coeffs.d();
    const std::size_t rows = coeffs.terms();
    KahanSum m2, m3, m4, m2_sq;
    for (std::size_t row = 0; row < rows; ++row) {
        const double* y = coeffs.re_row(row);
        double s2 = 0.0, s3 = 0.0, s4 = 0.0;
        for (uint32_t k = 0; k < d; ++k) {
            const double v = y[k];
            s2 += v * v;
            s3 += v * v * v;
            s4 += v * v * v * v;
        }
        s2 /= d;
        s3 /= d;
        s4 /= d;
        m2.add(s2);
        m3.add(s3);
        m4.add(s4);
        m2_sq.add(s2 * s2);
    }
    // Independent mean-zero terms Y_j: the 2nd and 3rd moments add; the 4th
    // picks up mixed pair products.
    if (n == 2) return m2.sum;
    if (n == 3) return m3.sum;
    return m4.sum + 3.0 * (m2.sum * m2.sum - m2_sq.sum);
}

MomentComparison moment_compare(const DirichletCharacter& chi, int n, uint64_t mc_samples,
                                uint64_t mc_seed) {
    if (n < 1) throw std::invalid_argument("moment_compare: n must be >= 1");
    auto g = midpoint_g_values(chi);
    KahanSum arith;
    for (const auto& value : g) arith.add(std::pow(value.real(), n));

    MomentComparison out;
    out.arithmetic = arith.sum / static_cast<double>(chi.p());

    RandomModelConfig config;
    config.p = chi.p();
    config.d = static_cast<uint32_t>(chi.order());
    config.samples = mc_samples;
    config.seed = mc_seed;
    if (n <= 4) {
        ModelCoefficients coeffs(config);
        out.probabilistic = model_re_moment_exact(coeffs, n);
        out.exact = true;
    } else {
        out.probabilistic = empirical_re_moment(config, n).value;
        out.exact = false;
    }
    const double logp = std::log(static_cast<double>(chi.p()));
    out.allowed_gap = 10.0 * static_cast<double>(n) / std::sqrt(static_cast<double>(chi.p())) *
                      std::pow(logp / kPi, n);
    return out;
}

}  // namespace charsum
