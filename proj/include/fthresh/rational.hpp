#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmp.h>

#include "fthresh/errors.hpp"

namespace fthresh {

// Arbitrary-precision integer, value semantics over mpz_t.
class Int {
  public:
    Int() { mpz_init(z_); }
    Int(long v) { mpz_init_set_si(z_, v); }
    Int(unsigned long v) { mpz_init_set_ui(z_, v); }
    Int(int v) : Int(static_cast<long>(v)) {}
    Int(unsigned v) : Int(static_cast<unsigned long>(v)) {}
    explicit Int(const std::string& s);

    Int(const Int& o) { mpz_init_set(z_, o.z_); }
    Int(Int&& o) noexcept {
        mpz_init(z_);
        mpz_swap(z_, o.z_);
    }
    Int& operator=(const Int& o) {
        if (this != &o) mpz_set(z_, o.z_);
        return *this;
    }
    Int& operator=(Int&& o) noexcept {
        mpz_swap(z_, o.z_);
        return *this;
    }
    ~Int() { mpz_clear(z_); }

    friend Int operator+(const Int& a, const Int& b) { Int r; mpz_add(r.z_, a.z_, b.z_); return r; }
    friend Int operator-(const Int& a, const Int& b) { Int r; mpz_sub(r.z_, a.z_, b.z_); return r; }
    friend Int operator*(const Int& a, const Int& b) { Int r; mpz_mul(r.z_, a.z_, b.z_); return r; }
    Int operator-() const { Int r; mpz_neg(r.z_, z_); return r; }

    Int& operator+=(const Int& o) { mpz_add(z_, z_, o.z_); return *this; }
    Int& operator-=(const Int& o) { mpz_sub(z_, z_, o.z_); return *this; }
    Int& operator*=(const Int& o) { mpz_mul(z_, z_, o.z_); return *this; }

    // Floor division and the matching remainder (sign of divisor).
    friend Int fdiv(const Int& a, const Int& b);
    friend Int cdiv(const Int& a, const Int& b);
    friend Int fmod(const Int& a, const Int& b);
    friend Int gcd(const Int& a, const Int& b) { Int r; mpz_gcd(r.z_, a.z_, b.z_); return r; }
    // Exact quotient; caller guarantees divisibility.
    friend Int divexact(const Int& a, const Int& b) { Int r; mpz_divexact(r.z_, a.z_, b.z_); return r; }
    friend bool divides(const Int& d, const Int& a) { return mpz_divisible_p(a.z_, d.z_) != 0; }

    static Int pow(const Int& base, std::uint64_t exp) {
        Int r;
        mpz_pow_ui(r.z_, base.z_, static_cast<unsigned long>(exp));
        return r;
    }
    static Int binomial(std::uint64_t n, std::uint64_t k) {
        Int r;
        mpz_bin_uiui(r.z_, static_cast<unsigned long>(n), static_cast<unsigned long>(k));
        return r;
    }

    friend bool operator==(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) == 0; }
    friend bool operator!=(const Int& a, const Int& b) { return !(a == b); }
    friend bool operator<(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) < 0; }
    friend bool operator<=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) <= 0; }
    friend bool operator>(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) > 0; }
    friend bool operator>=(const Int& a, const Int& b) { return mpz_cmp(a.z_, b.z_) >= 0; }

    int sign() const { return mpz_sgn(z_); }
    bool is_zero() const { return sign() == 0; }
    bool is_one() const { return mpz_cmp_ui(z_, 1) == 0; }

    bool fits_u64() const;
    std::uint64_t to_u64() const;  // throws validation_error if out of range

    std::string str() const;

    const mpz_t& raw() const { return z_; }
    mpz_t& raw() { return z_; }

  private:
    mpz_t z_;
};

std::ostream& operator<<(std::ostream& os, const Int& v);

// Exact rational, always canonical: denominator > 0, lowest terms.
class Rat {
  public:
    Rat() { mpq_init(q_); }
    Rat(const Int& v) : Rat() { mpq_set_z(q_, v.raw()); }
    Rat(long v) : Rat(Int(v)) {}
    Rat(int v) : Rat(Int(static_cast<long>(v))) {}
    Rat(const Int& num, const Int& den);
    // Accepts "a/b", "a", optional leading '-'.
    static Rat parse(const std::string& text);

    Rat(const Rat& o) { mpq_init(q_); mpq_set(q_, o.q_); }
    Rat(Rat&& o) noexcept { mpq_init(q_); mpq_swap(q_, o.q_); }
    Rat& operator=(const Rat& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rat& operator=(Rat&& o) noexcept {
        mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rat() { mpq_clear(q_); }

    friend Rat operator+(const Rat& a, const Rat& b) { Rat r; mpq_add(r.q_, a.q_, b.q_); return r; }
    friend Rat operator-(const Rat& a, const Rat& b) { Rat r; mpq_sub(r.q_, a.q_, b.q_); return r; }
    friend Rat operator*(const Rat& a, const Rat& b) { Rat r; mpq_mul(r.q_, a.q_, b.q_); return r; }
    friend Rat operator/(const Rat& a, const Rat& b);
    Rat operator-() const { Rat r; mpq_neg(r.q_, q_); return r; }

    friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rat& a, const Rat& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    int sign() const { return mpq_sgn(q_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const;

    Int num() const { Int r; mpz_set(r.raw(), mpq_numref(q_)); return r; }
    Int den() const { Int r; mpz_set(r.raw(), mpq_denref(q_)); return r; }

    Int floor() const;
    Int ceil() const;

    // Canonical "num/den" form, lowest terms, denominator always printed.
    std::string str() const;
    // Truncated decimal expansion with exactly `places` digits after the point.
    std::string decimal(std::size_t places) const;

  private:
    mpq_t q_;
};

std::ostream& operator<<(std::ostream& os, const Rat& v);

}  // namespace fthresh
