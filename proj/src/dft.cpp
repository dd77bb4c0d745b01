#include "charsum/dft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace charsum {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t next_pow2(std::size_t n) {
    std::size_t v = 1;
    while (v < n) v <<= 1;
    return v;
}
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("Fft: length must be a power of two");
    }
    unsigned log2n = 0;
    while ((std::size_t{1} << log2n) < n) ++log2n;

    lo_bits_ = log2n < 11 ? log2n : 11;
    lo_mask_ = (std::size_t{1} << lo_bits_) - 1;
    lo_.resize(std::size_t{1} << lo_bits_);
    hi_.resize(n >> lo_bits_);
    for (std::size_t t = 0; t < lo_.size(); ++t) {
        lo_[t] = std::polar(1.0, -kTwoPi * static_cast<double>(t) / static_cast<double>(n));
    }
    for (std::size_t t = 0; t < hi_.size(); ++t) {
        hi_[t] = std::polar(1.0, -kTwoPi * static_cast<double>(t << lo_bits_) /
                                     static_cast<double>(n));
    }

    bitrev_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (unsigned b = 0; b < log2n; ++b) r |= ((i >> b) & 1) << (log2n - 1 - b);
        bitrev_[i] = static_cast<uint32_t>(r);
    }
}

void Fft::forward(std::complex<double>* a) const {
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = bitrev_[i];
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            std::size_t t = 0;
            for (std::size_t k = 0; k < half; ++k, t += step) {
                std::complex<double> w = twiddle(t);
                std::complex<double> u = a[base + k];
                std::complex<double> v = a[base + k + half] * w;
                a[base + k] = u + v;
                a[base + k + half] = u - v;
            }
        }
    }
}

void Fft::inverse(std::complex<double>* a) const {
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i) a[i] = std::conj(a[i]);
    forward(a);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = std::conj(a[i]) * scale;
}

TwistedDft::TwistedDft(uint64_t p) : p_(p), fft_(next_pow2(2 * p - 1)) {
    // Chirp chi_n = e^{i pi n^2 / p}; n^2 is reduced mod 2p in integer
    // arithmetic first, which keeps the angle exact for p up to 2^31.
    sq_mod_.resize(p);
    const uint64_t two_p = 2 * p;
    for (uint64_t n = 0; n < p; ++n) {
        sq_mod_[n] = static_cast<uint64_t>((static_cast<unsigned __int128>(n) * n) % two_p);
    }
    const std::size_t nfft = fft_.size();
    kernel_fft_.assign(nfft, {0.0, 0.0});
    const double pi_over_p = std::numbers::pi / static_cast<double>(p);
    for (uint64_t m = 0; m < p; ++m) {
        std::complex<double> v = std::polar(1.0, -pi_over_p * static_cast<double>(sq_mod_[m]));
        kernel_fft_[m] = v;
        if (m != 0) kernel_fft_[nfft - m] = v;
    }
    fft_.forward(kernel_fft_.data());
}

std::vector<std::complex<double>> TwistedDft::apply(std::span<const std::complex<double>> coeffs,
                                                    double x) const {
    const uint64_t p = p_;
    if (coeffs.size() != p) {
        throw std::invalid_argument("TwistedDft::apply: coefficient length must equal p");
    }
    const std::size_t nfft = fft_.size();
    const double pd = static_cast<double>(p);
    const double pi_over_p = std::numbers::pi / pd;

    std::vector<std::complex<double>> work(nfft, {0.0, 0.0});
    for (uint64_t n = 0; n < p; ++n) {
        // angle = pi (2 n x + n^2 mod 2p) / p
        double m = std::fmod(2.0 * static_cast<double>(n) * x + static_cast<double>(sq_mod_[n]),
                             2.0 * pd);
        work[n] = coeffs[n] * std::polar(1.0, pi_over_p * m);
    }
    fft_.forward(work.data());
    for (std::size_t i = 0; i < nfft; ++i) work[i] *= kernel_fft_[i];
    fft_.inverse(work.data());

    std::vector<std::complex<double>> out(p);
    for (uint64_t K = 0; K < p; ++K) {
        out[K] = work[K] * std::polar(1.0, pi_over_p * static_cast<double>(sq_mod_[K]));
    }
    return out;
}

}  // namespace charsum
