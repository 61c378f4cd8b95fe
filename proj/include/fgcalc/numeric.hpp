#ifndef FGCALC_NUMERIC_HPP
#define FGCALC_NUMERIC_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "fgcalc/error.hpp"

namespace fgcalc {

// Trial-division bound for factoring moduli; the rings this library builds
// are expected to have small moduli.
inline constexpr std::uint64_t kDefaultFactorBound = 1000000;

// n = prod p_i^{k_i}, primes ascending.  Fails if a cofactor above the
// trial-division bound remains composite-or-unknown.
inline std::vector<std::pair<mpz_class, unsigned>> factorize(
    const mpz_class& n, std::uint64_t bound = kDefaultFactorBound) {
    if (n < 2) raise(ErrorCode::InternalError, "factorize expects n >= 2");
    std::vector<std::pair<mpz_class, unsigned>> out;
    mpz_class rest = n;
    for (mpz_class p = 2; p * p <= rest && p <= bound; ++p) {
        if (rest % p == 0) {
            unsigned k = 0;
            while (rest % p == 0) {
                rest /= p;
                ++k;
            }
            out.emplace_back(p, k);
        }
    }
    if (rest > 1) {
        // Remaining cofactor is prime if it survived trial division up to
        // its square root; otherwise we cannot certify the factorization.
        if (rest > bound * mpz_class(bound))
            raise(ErrorCode::UnsupportedRing,
                  "modulus has a factor beyond the trial-division bound");
        out.emplace_back(rest, 1);
    }
    return out;
}

// Product of the distinct primes dividing n.
inline mpz_class radical(const mpz_class& n) {
    mpz_class r = 1;
    for (const auto& [p, k] : factorize(n)) r *= p;
    return r;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace fgcalc

#endif
