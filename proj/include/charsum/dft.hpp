// Prime-length twisted DFT: out[K] = sum_n c_n e(n x / p) e(n K / p),
// realized by chirp-z embedding into a power-of-two FFT of length >= 2p-1.
// Rounding grows like O(log p) ulps in l2, so normalized spectra carry an
// absolute error budget around 1e-13 * sqrt(p) even at p ~ 2e7.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace charsum {

// Iterative radix-2 FFT. Twiddles come from a two-level table (one complex
// multiply per lookup), keeping memory small and accuracy at a few ulps.
class Fft {
  public:
    explicit Fft(std::size_t n);  // n must be a power of two

    std::size_t size() const { return n_; }
    void forward(std::complex<double>* a) const;  // sum a_n e^{-2 pi i nk/N}
    void inverse(std::complex<double>* a) const;  // sum a_n e^{+2 pi i nk/N}, scaled by 1/N

    std::complex<double> twiddle(std::size_t t) const {  // e^{-2 pi i t/N}
        return lo_[t & lo_mask_] * hi_[t >> lo_bits_];
    }

  private:
    std::size_t n_ = 0;
    unsigned lo_bits_ = 0;
    std::size_t lo_mask_ = 0;
    std::vector<std::complex<double>> lo_, hi_;
    std::vector<uint32_t> bitrev_;
};

class TwistedDft {
  public:
    explicit TwistedDft(uint64_t p);

    uint64_t p() const { return p_; }
    std::size_t fft_size() const { return fft_.size(); }

    // Length-p output; throws std::invalid_argument on length mismatch.
    // Thread-safe: scratch is allocated per call.
    std::vector<std::complex<double>> apply(std::span<const std::complex<double>> coeffs,
                                            double x) const;

  private:
    uint64_t p_;
    Fft fft_;
    std::vector<uint64_t> sq_mod_;                   // n^2 mod 2p
    std::vector<std::complex<double>> kernel_fft_;   // FFT of the conj-chirp kernel
};

}  // namespace charsum
