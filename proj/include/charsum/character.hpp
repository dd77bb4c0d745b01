// Exact Dirichlet characters mod an odd prime: discrete-log table
// construction, character values as exact roots of unity, Gauss sums, and
// direct O(p) evaluation of the generating polynomial on the unit circle.
#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "charsum/primes.hpp"

namespace charsum {

// Discrete-log table for a fixed prime: table[g^t mod p] = t. Built once in
// O(p) and shared (read-only) between all characters mod p.
class DirichletTable {
  public:
    static constexpr uint32_t kNoLog = std::numeric_limits<uint32_t>::max();

    // Requires p <= 2^31 so g^t products stay inside 64 bits and the table
    // stays around 4 bytes per residue.
    static std::shared_ptr<const DirichletTable> build(const PrimeModulus& modulus);

    uint64_t p() const { return modulus_.p; }
    uint64_t generator() const { return generator_; }
    const PrimeModulus& modulus() const { return modulus_; }

    // Index of n (log base g), kNoLog for n == 0.
    uint32_t log(uint64_t n) const { return log_[n]; }

  private:
    PrimeModulus modulus_;
    uint64_t generator_ = 0;
    std::vector<uint32_t> log_;
};

// A character mod p of exact order d, indexed by m coprime to d through
// chi(g) = e(m/d). Immutable after construction; safe to share across
// threads. chi(0) = 0 and |chi(n)| = 1 elsewhere.
class DirichletCharacter {
  public:
    static constexpr uint32_t kZero = std::numeric_limits<uint32_t>::max();

    DirichletCharacter(std::shared_ptr<const DirichletTable> table, uint64_t d, uint64_t m);

    // Convenience: builds the table too (O(p) time and memory).
    static DirichletCharacter make(const PrimeModulus& modulus, uint64_t d, uint64_t m);

    uint64_t p() const { return table_->p(); }
    uint64_t order() const { return d_; }
    uint64_t index() const { return m_; }
    uint64_t generator() const { return table_->generator(); }
    const DirichletTable& table() const { return *table_; }

    // Exact exponent r with chi(n) = e(r/d); kZero when p | n.
    uint32_t exponent(uint64_t n) const {
        uint32_t t = table_->log(n % p());
        if (t == DirichletTable::kNoLog) return kZero;
        return static_cast<uint32_t>((m_ * static_cast<uint64_t>(t)) % d_);
    }

    std::complex<double> value(uint64_t n) const {
        uint32_t r = exponent(n);
        return r == kZero ? std::complex<double>(0.0, 0.0) : roots_[r];
    }

    // chi((n + shift) mod p); the shift is reduced cyclically.
    std::complex<double> value_shifted(uint64_t n, int64_t shift) const {
        return value(shifted_residue(n, shift));
    }

    uint64_t shifted_residue(uint64_t n, int64_t shift) const {
        const uint64_t p = this->p();
        uint64_t a = static_cast<uint64_t>(((shift % static_cast<int64_t>(p)) + static_cast<int64_t>(p))) % p;
        uint64_t s = n % p + a;
        return s >= p ? s - p : s;
    }

    // e(r/d) for 0 <= r < d.
    std::complex<double> root(uint32_t r) const { return roots_[r]; }

  private:
    std::shared_ptr<const DirichletTable> table_;
    uint64_t d_ = 0;
    uint64_t m_ = 0;
    std::vector<std::complex<double>> roots_;
};

// tau(chi) = sum_n chi(n) e_p(n), by compensated direct summation.
std::complex<double> gauss_sum(const DirichletCharacter& chi);

// f_{chi,a}(e(theta)) = sum_{n=0}^{p-1} chi(n+a) e(n theta) by direct
// summation; the O(p) reference oracle for arbitrary theta.
std::complex<double> eval_f_direct(const DirichletCharacter& chi, double theta, int64_t shift = 0);

// Same sum at theta = (K + x)/p with the integer part reduced mod p before
// any rounding, so the result stays accurate for large p.
std::complex<double> eval_f_at_arc(const DirichletCharacter& chi, uint64_t K, double x,
                                   int64_t shift = 0);

}  // namespace charsum
