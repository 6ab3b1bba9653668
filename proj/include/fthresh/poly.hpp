#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/ring.hpp"

namespace fthresh {

// Sparse multivariate polynomial over the prime field of its ring.
// Terms are kept sorted descending in the ring's monomial order with no
// zero coefficients, so equal polynomials have identical term lists and
// printing is deterministic. Immutable in practice: every operation
// returns a fresh value.
class Polynomial {
  public:
    Polynomial() = default;

    static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring), {}); }
    static Polynomial constant(RingPtr ring, std::uint64_t c);
    static Polynomial variable(RingPtr ring, std::size_t index);
    static Polynomial monomial(RingPtr ring, Monomial m, std::uint32_t coeff);
    // Terms in any order, possibly with repeats; coefficients are merged mod p.
    static Polynomial from_terms(RingPtr ring, TermList terms);

    const RingPtr& ring() const { return ring_; }
    const TermList& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t nterms() const { return terms_.size(); }

    const Monomial& leading_monomial() const;
    std::uint32_t leading_coeff() const;

    // Largest term degree; 0 for the zero polynomial.
    std::uint64_t degree() const;
    bool is_homogeneous() const;
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial scaled(std::uint32_t c) const;
    Polynomial times_term(const Monomial& m, std::uint32_t c) const;
    Polynomial monic() const;

    std::string str() const;

  private:
    Polynomial(RingPtr ring, TermList terms) : ring_(std::move(ring)), terms_(std::move(terms)) {}

    void check_same_ring(const Polynomial& o) const;

    RingPtr ring_;
    TermList terms_;  // sorted descending, no zeros
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
// Exact k-th power; binary powering with Frobenius shortcuts for k
// divisible by the characteristic.
Polynomial poly_pow(const Polynomial& a, std::uint64_t k);
// q-th power for q a power of the characteristic: termwise Frobenius.
Polynomial frobenius_power(const Polynomial& a, std::uint64_t q);

}  // namespace fthresh
