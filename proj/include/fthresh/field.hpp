#pragma once

#include <cstdint>

#include "fthresh/errors.hpp"

namespace fthresh {

// The prime field F_p, 2 <= p < 2^31. Elements are canonical
// representatives in [0, p) stored as uint32; products are reduced
// through uint64, so no intermediate ever overflows.
class PrimeField {
  public:
    explicit PrimeField(std::uint64_t p);

    std::uint32_t p() const { return p_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    std::uint32_t reduce(std::uint64_t v) const { return static_cast<std::uint32_t>(v % p_); }
    std::uint32_t reduce_signed(std::int64_t v) const {
        std::int64_t r = v % static_cast<std::int64_t>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
    std::uint32_t inv(std::uint32_t a) const;  // throws on a == 0

    friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

    // Deterministic trial-division primality check for the supported range.
    static bool is_prime(std::uint64_t n);

  private:
    std::uint32_t p_;
};

}  // namespace fthresh
