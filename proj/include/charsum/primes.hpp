// Deterministic 64-bit primality testing, integer factorization, and the
// prime-modulus record used by every arithmetic module.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace charsum {

// Modular arithmetic on uint64_t via 128-bit intermediates.
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

// Deterministic Miller-Rabin, valid for all n < 2^64 (fixed witness set).
bool is_prime(uint64_t n);

// Full factorization (trial division + Brent's rho), returned as sorted
// (prime, exponent) pairs.
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);

// An odd prime p together with the factorization of p-1.
struct PrimeModulus {
    uint64_t p = 0;
    std::vector<std::pair<uint64_t, int>> factorization;  // of p-1

    // Throws std::invalid_argument unless p is an odd prime.
    static PrimeModulus create(uint64_t p);
};

// Smallest g >= 2 of multiplicative order p-1, certified through the prime
// factors of p-1.
uint64_t find_primitive_root(const PrimeModulus& modulus);

// Smallest prime q >= n with d | q-1 (d = 1 accepts any prime).
uint64_t next_prime_with_order(uint64_t n, uint64_t d);

}  // namespace charsum
