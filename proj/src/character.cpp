#include "charsum/character.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace charsum {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::shared_ptr<const DirichletTable> DirichletTable::build(const PrimeModulus& modulus) {
    const uint64_t p = modulus.p;
    if (p > (1ull << 31)) {
        throw std::invalid_argument("DirichletTable: p exceeds the 2^31 table limit");
    }
    auto table = std::make_shared<DirichletTable>();
    table->modulus_ = modulus;
    table->generator_ = find_primitive_root(modulus);
    table->log_.assign(p, kNoLog);
    uint64_t v = 1;
    for (uint64_t t = 0; t + 1 < p; ++t) {
        table->log_[v] = static_cast<uint32_t>(t);
        v = v * table->generator_ % p;  // both factors < 2^31, no overflow
    }
    return table;
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const DirichletTable> table,
                                       uint64_t d, uint64_t m)
    : table_(std::move(table)) {
    const uint64_t p = table_->p();
    if (d < 2 || (p - 1) % d != 0) {
        throw std::invalid_argument("DirichletCharacter: order d must divide p-1 and be >= 2");
    }
    if (std::gcd(m % d, d) != 1) {
        throw std::invalid_argument("DirichletCharacter: index m must be coprime to d");
    }
    d_ = d;
    m_ = m % d;
    roots_.resize(d);
    for (uint64_t r = 0; r < d; ++r) {
        roots_[r] = std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(d));
    }
    roots_[0] = {1.0, 0.0};
}

DirichletCharacter DirichletCharacter::make(const PrimeModulus& modulus, uint64_t d, uint64_t m) {
    return DirichletCharacter(DirichletTable::build(modulus), d, m);
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
    const uint64_t p = chi.p();
    double re = 0, rec = 0, im = 0, imc = 0;
    for (uint64_t n = 1; n < p; ++n) {
        std::complex<double> term =
            chi.value(n) * std::polar(1.0, kTwoPi * static_cast<double>(n) / static_cast<double>(p));
        double y = term.real() - rec, t = re + y;
        rec = (t - re) - y;
        re = t;
        y = term.imag() - imc;
        t = im + y;
        imc = (t - im) - y;
        im = t;
    }
    return {re, im};
}

std::complex<double> eval_f_direct(const DirichletCharacter& chi, double theta, int64_t shift) {
    const uint64_t p = chi.p();
    std::complex<double> acc = 0;
    for (uint64_t n = 0; n < p; ++n) {
        std::complex<double> c = chi.value_shifted(n, shift);
        if (c == std::complex<double>(0.0, 0.0)) continue;
        double frac = std::fmod(static_cast<double>(n) * theta, 1.0);
        acc += c * std::polar(1.0, kTwoPi * frac);
    }
    return acc;
}

std::complex<double> eval_f_at_arc(const DirichletCharacter& chi, uint64_t K, double x,
                                   int64_t shift) {
    const uint64_t p = chi.p();
    K %= p;
    const double inv_p = 1.0 / static_cast<double>(p);
    std::complex<double> acc = 0;
    uint64_t nk = 0;  // n*K mod p, maintained incrementally
    for (uint64_t n = 0; n < p; ++n) {
        std::complex<double> c = chi.value_shifted(n, shift);
        if (c != std::complex<double>(0.0, 0.0)) {
            double y = static_cast<double>(nk) + std::fmod(static_cast<double>(n) * x,
                                                           static_cast<double>(p));
            if (y >= static_cast<double>(p)) y -= static_cast<double>(p);
            acc += c * std::polar(1.0, kTwoPi * y * inv_p);
        }
        nk += K;
        if (nk >= p) nk -= p;
    }
    return acc;
}

}  // namespace charsum
