#pragma once

#include <cstdint>
#include <vector>

#include "fthresh/errors.hpp"

namespace fthresh {

enum class MonomialOrder { grevlex, lex };

// Exponent vector under the standard grading. Length always equals the
// ring's variable count; exponents are checked against wraparound since
// bracket powers push them toward p^e scale.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint64_t> exps) : e_(std::move(exps)) {}

    std::size_t nvars() const { return e_.size(); }
    std::uint64_t operator[](std::size_t i) const { return e_[i]; }
    std::uint64_t& operator[](std::size_t i) { return e_[i]; }
    const std::vector<std::uint64_t>& exponents() const { return e_; }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (auto x : e_) {
            if (x > kMaxExponent || d + x < d) throw validation_error("monomial degree overflow");
            d += x;
        }
        return d;
    }

    bool is_one() const {
        for (auto x : e_)
            if (x != 0) return false;
        return true;
    }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) {
            r.e_[i] += o.e_[i];
            if (r.e_[i] < e_[i] || r.e_[i] > kMaxExponent)
                throw validation_error("monomial exponent overflow");
        }
        return r;
    }

    // Quotient; caller guarantees o.divides(*this).
    Monomial operator/(const Monomial& o) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
        return r;
    }

    Monomial frobenius(std::uint64_t q) const {
        Monomial r(*this);
        for (auto& x : r.e_) {
            if (x != 0 && x > kMaxExponent / q) throw validation_error("monomial exponent overflow");
            x *= q;
        }
        return r;
    }

    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a);
        for (std::size_t i = 0; i < r.e_.size(); ++i)
            if (b.e_[i] > r.e_[i]) r.e_[i] = b.e_[i];
        return r;
    }

    static bool coprime(const Monomial& a, const Monomial& b) {
        for (std::size_t i = 0; i < a.e_.size(); ++i)
            if (a.e_[i] != 0 && b.e_[i] != 0) return false;
        return true;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    static constexpr std::uint64_t kMaxExponent = std::uint64_t(1) << 62;

  private:
    std::vector<std::uint64_t> e_;
};

// Strict "a comes before b" (a is the larger/leading monomial).
inline bool mono_greater(const Monomial& a, const Monomial& b, MonomialOrder order) {
    if (order == MonomialOrder::lex) {
        for (std::size_t i = 0; i < a.nvars(); ++i) {
            if (a[i] != b[i]) return a[i] > b[i];
        }
        return false;
    }
    // grevlex: compare total degree, then the last differing exponent reversed.
    std::uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    for (std::size_t i = a.nvars(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

// Visits every monomial of the given total degree in nvars variables,
// in lexicographic-descending exponent order.
template <typename Fn>
void for_each_monomial(std::size_t nvars, std::uint64_t degree, Fn&& fn) {
    Monomial m(nvars);
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
        if (i + 1 == nvars) {
            m[i] = left;
            fn(const_cast<const Monomial&>(m));
            m[i] = 0;
            return;
        }
        for (std::uint64_t e = left + 1; e-- > 0;) {
            m[i] = e;
            self(self, i + 1, left - e);
        }
        m[i] = 0;
    };
    rec(rec, 0, degree);
}

struct MonoHash {
    std::size_t operator()(const Monomial& m) const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : m.exponents()) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace fthresh
