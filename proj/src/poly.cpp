#include "fthresh/poly.hpp"

#include <algorithm>
#include <unordered_map>

#include "fthresh/rational.hpp"

namespace fthresh {

Polynomial Polynomial::constant(RingPtr ring, std::uint64_t c) {
    std::uint32_t cc = ring->field().reduce(c);
    TermList t;
    if (cc != 0) t.emplace_back(Monomial(ring->nvars()), cc);
    return Polynomial(std::move(ring), std::move(t));
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
    if (index >= ring->nvars()) throw validation_error("variable index out of range");
    Monomial m(ring->nvars());
    m[index] = 1;
    return Polynomial(std::move(ring), {{m, 1}});
}

Polynomial Polynomial::monomial(RingPtr ring, Monomial m, std::uint32_t coeff) {
    if (m.nvars() != ring->nvars()) throw validation_error("monomial arity mismatch");
    std::uint32_t c = coeff % ring->field().p();
    TermList t;
    if (c != 0) t.emplace_back(std::move(m), c);
    return Polynomial(std::move(ring), std::move(t));
}

Polynomial Polynomial::from_terms(RingPtr ring, TermList terms) {
    const auto& F = ring->field();
    std::unordered_map<Monomial, std::uint32_t, MonoHash> acc;
    for (auto& [m, c] : terms) {
        if (m.nvars() != ring->nvars()) throw validation_error("monomial arity mismatch");
        auto& slot = acc[m];
        slot = F.add(slot, c % F.p());
    }
    TermList out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.emplace_back(m, c);
    MonomialOrder order = ring->order();
    std::sort(out.begin(), out.end(),
              [order](const Term& a, const Term& b) { return mono_greater(a.first, b.first, order); });
    return Polynomial(std::move(ring), std::move(out));
}

const Monomial& Polynomial::leading_monomial() const {
    if (is_zero()) throw validation_error("zero polynomial has no leading monomial");
    return terms_.front().first;
}

std::uint32_t Polynomial::leading_coeff() const {
    if (is_zero()) throw validation_error("zero polynomial has no leading coefficient");
    return terms_.front().second;
}

std::uint64_t Polynomial::degree() const {
    std::uint64_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

bool Polynomial::is_homogeneous() const {
    if (terms_.empty()) return true;
    std::uint64_t d = terms_.front().first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != d) return false;
    return true;
}

void Polynomial::check_same_ring(const Polynomial& o) const {
    if (!ring_ || !o.ring_ || !ring_->same_ring(*o.ring_))
        throw validation_error("ring mismatch between operands");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_same_ring(o);
    const auto& F = ring_->field();
    MonomialOrder order = ring_->order();
    TermList out;
    out.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        const auto& a = terms_[i];
        const auto& b = o.terms_[j];
        if (a.first == b.first) {
            std::uint32_t c = F.add(a.second, b.second);
            if (c != 0) out.emplace_back(a.first, c);
            ++i, ++j;
        } else if (mono_greater(a.first, b.first, order)) {
            out.push_back(a);
            ++i;
        } else {
            out.push_back(b);
            ++j;
        }
    }
    for (; i < terms_.size(); ++i) out.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) out.push_back(o.terms_[j]);
    return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    return *this + o.scaled(ring_ ? ring_->field().neg(1) : o.ring_->field().neg(1));
}

Polynomial Polynomial::scaled(std::uint32_t c) const {
    const auto& F = ring_->field();
    std::uint32_t cc = c % F.p();
    if (cc == 0) return zero(ring_);
    TermList out;
    out.reserve(terms_.size());
    for (const auto& [m, tc] : terms_) out.emplace_back(m, F.mul(tc, cc));
    return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::times_term(const Monomial& m, std::uint32_t c) const {
    const auto& F = ring_->field();
    std::uint32_t cc = c % F.p();
    if (cc == 0) return zero(ring_);
    TermList out;
    out.reserve(terms_.size());
    for (const auto& [tm, tc] : terms_) out.emplace_back(tm * m, F.mul(tc, cc));
    return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return scaled(ring_->field().inv(leading_coeff()));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_same_ring(o);
    const auto& F = ring_->field();
    if (is_zero() || o.is_zero()) return zero(ring_);
    std::unordered_map<Monomial, std::uint32_t, MonoHash> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            auto& slot = acc[ma * mb];
            slot = F.add(slot, F.mul(ca, cb));
        }
    }
    TermList out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) out.emplace_back(m, c);
    MonomialOrder order = ring_->order();
    std::sort(out.begin(), out.end(),
              [order](const Term& a, const Term& b) { return mono_greater(a.first, b.first, order); });
    return Polynomial(ring_, std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.ring_ && b.ring_ && !a.ring_->same_ring(*b.ring_)) return false;
    return a.terms_ == b.terms_;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial frobenius_power(const Polynomial& a, std::uint64_t q) {
    std::uint32_t p = a.ring()->field().p();
    std::uint64_t check = q;
    while (check > 1) {
        if (check % p != 0) throw validation_error(std::to_string(q) + " is not a power of the characteristic");
        check /= p;
    }
    if (q == 0) throw validation_error("0 is not a power of the characteristic");
    // x -> x^q is a ring endomorphism in characteristic p, so it acts
    // termwise; coefficients satisfy c^q = c over F_p.
    TermList out;
    out.reserve(a.terms().size());
    for (const auto& [m, c] : a.terms()) out.emplace_back(m.frobenius(q), c);
    return Polynomial::from_terms(a.ring(), std::move(out));
}

Polynomial poly_pow(const Polynomial& a, std::uint64_t k) {
    if (k == 0) return Polynomial::constant(a.ring(), 1);
    std::uint32_t p = a.ring()->field().p();
    // Peel off the largest power of p: a^(q*r) = frobenius(a^r, q).
    std::uint64_t q = 1;
    while (k % p == 0) {
        q *= p;
        k /= p;
    }
    Polynomial acc = Polynomial::constant(a.ring(), 1);
    Polynomial base = a;
    std::uint64_t e = k;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    if (q > 1) acc = frobenius_power(acc, q);
    return acc;
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    const auto& vars = ring_->variables();
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        if (m.is_one()) {
            out += std::to_string(c);
            continue;
        }
        bool printed = false;
        if (c != 1) {
            out += std::to_string(c);
            printed = true;
        }
        for (std::size_t i = 0; i < m.nvars(); ++i) {
            if (m[i] == 0) continue;
            if (printed) out += "*";
            out += vars[i];
            if (m[i] > 1) out += "^" + std::to_string(m[i]);
            printed = true;
        }
    }
    return out;
}

std::uint64_t graded_piece_dimension(const GradedRing& ring, std::uint64_t degree) {
    std::size_t n = ring.nvars();
    if (n == 0) throw validation_error("ring must have at least one variable");
    Int dim = Int::binomial(degree + n - 1, n - 1);
    if (!dim.fits_u64())
        throw validation_error("graded piece dimension exceeds 64-bit range");
    return dim.to_u64();
}

}  // namespace fthresh
