#include "charsum/primes.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace charsum {

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set is deterministic for every n < 3.3e24, which covers
    // the full 64-bit range.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i + 1 < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Brent's cycle variant of Pollard's rho; n must be odd, composite, > 1.
uint64_t pollard_rho(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        uint64_t saved = x;
        for (uint64_t limit = 2; d == 1; limit *= 2) {
            saved = y;
            uint64_t prod = 1;
            for (uint64_t i = 0; i < limit && d == 1; ) {
                uint64_t batch = std::min<uint64_t>(128, limit - i);
                for (uint64_t k = 0; k < batch; ++k) {
                    y = (mul_mod(y, y, n) + c) % n;
                    prod = mul_mod(prod, x > y ? x - y : y - x, n);
                }
                i += batch;
                d = gcd_u64(prod, n);
            }
            x = y;
        }
        if (d != n) return d;
        // Rare batching miss: rescan one step at a time from the saved point.
        uint64_t y2 = saved;
        while (true) {
            y2 = (mul_mod(y2, y2, n) + c) % n;
            uint64_t g = gcd_u64(x > y2 ? x - y2 : y2 - x, n);
            if (g == n) break;  // retry with the next c
            if (g > 1) return g;
        }
    }
}

void factor_into(uint64_t n, std::map<uint64_t, int>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    uint64_t d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
    std::map<uint64_t, int> fac;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
        while (n % q == 0) {
            fac[q] += 1;
            n /= q;
        }
    }
    if (n > 1) factor_into(n, fac);
    return {fac.begin(), fac.end()};
}

PrimeModulus PrimeModulus::create(uint64_t p) {
    if (p < 3 || p % 2 == 0 || !is_prime(p)) {
        throw std::invalid_argument("PrimeModulus: p must be an odd prime");
    }
    PrimeModulus m;
    m.p = p;
    m.factorization = factorize(p - 1);
    return m;
}

uint64_t find_primitive_root(const PrimeModulus& modulus) {
    const uint64_t p = modulus.p;
    for (uint64_t g = 2; g < p; ++g) {
        bool primitive = true;
        for (const auto& [q, e] : modulus.factorization) {
            (void)e;
            if (pow_mod(g, (p - 1) / q, p) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw std::logic_error("find_primitive_root: no generator found");
}

uint64_t next_prime_with_order(uint64_t n, uint64_t d) {
    if (n <= 3) n = 3;
    if (n % 2 == 0) ++n;
    for (uint64_t q = n;; q += 2) {
        if ((d == 0 || (q - 1) % d == 0) && is_prime(q)) return q;
    }
}

}  // namespace charsum
