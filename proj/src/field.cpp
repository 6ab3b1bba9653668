#include "fthresh/field.hpp"

#include <string>
#include <utility>

namespace fthresh {

bool PrimeField::is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t p) {
    if (p >= (1ull << 31)) {
        throw validation_error("characteristic " + std::to_string(p) + " exceeds 2^31-1");
    }
    if (!is_prime(p)) {
        throw validation_error("characteristic " + std::to_string(p) + " is not prime");
    }
    p_ = static_cast<std::uint32_t>(p);
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t base = a % p_;
    std::uint32_t acc = 1 % p_;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
    if (a % p_ == 0) throw validation_error("division by zero in F_" + std::to_string(p_));
    // Extended Euclid on (a, p).
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = p_, new_r = a % p_;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += p_;
    return static_cast<std::uint32_t>(t);
}

}  // namespace fthresh
