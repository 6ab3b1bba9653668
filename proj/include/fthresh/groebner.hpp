#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fthresh/poly.hpp"

namespace fthresh {

// Running totals over every basis computed through one entry point;
// filled under the gb-cache lock, so concurrent callers stay exact.
struct GroebnerAccumulator {
    std::atomic<std::uint64_t> bases{0};
    std::atomic<std::uint64_t> spairs{0};
    std::atomic<std::uint64_t> reductions{0};
    std::atomic<std::uint64_t> wall_ms{0};
};

// Resource limits for a single Groebner computation. Hitting either
// limit raises resource_limit_error so callers can fall back to the
// linear-algebra kernel.
struct Budget {
    std::uint64_t max_reductions = 1'000'000;
    std::uint64_t max_ms = 300'000;
};

struct GroebnerStats {
    std::uint64_t spairs = 0;      // S-pairs examined (incl. criterion skips)
    std::uint64_t reductions = 0;  // single division steps
    std::uint64_t wall_ms = 0;
};

// A reduced Groebner basis: monic elements, no term of one element
// divisible by the leading term of another, sorted by leading monomial
// ascending so the element list is canonical.
class GroebnerBasis {
  public:
    GroebnerBasis(RingPtr ring, std::vector<Polynomial> elements, MonomialOrder order,
                  GroebnerStats stats)
        : ring_(std::move(ring)), elements_(std::move(elements)), order_(order), stats_(stats) {}

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& elements() const { return elements_; }
    MonomialOrder order() const { return order_; }
    const GroebnerStats& stats() const { return stats_; }

  private:
    RingPtr ring_;
    std::vector<Polynomial> elements_;
    MonomialOrder order_;
    GroebnerStats stats_;
};

// Buchberger with the product and chain criteria, normal selection
// strategy (lowest lcm degree first). Deterministic; returns the reduced
// basis. `order` must match the ring's order.
GroebnerBasis buchberger(const std::vector<Polynomial>& gens, MonomialOrder order,
                         const Budget& budget = {});

// Unique remainder of f modulo gb (full tail reduction).
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb, const Budget& budget = {});

// A homogeneous ideal given by generators, with a lazily computed
// Groebner basis of (generators + ring relations). Copies share the
// basis cache; the fill is guarded and idempotent.
class IdealHandle {
  public:
    IdealHandle(RingPtr ring, std::vector<Polynomial> generators);
    static IdealHandle maximal(const RingPtr& ring);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    std::size_t ngens() const { return gens_.size(); }

    // True when the generators are degree-1 forms spanning the whole
    // degree-1 piece, i.e. the ideal is the graded maximal ideal.
    bool is_maximal_ideal() const;

    const GroebnerBasis& groebner(const Budget& budget = {},
                                  GroebnerAccumulator* acc = nullptr) const;
    bool has_cached_groebner() const;

    // Content digest over the sorted canonical generator prints and the
    // ring print; stable across generator permutations.
    const std::string& digest() const { return digest_; }

  private:
    struct GbBox {
        std::mutex mu;
        std::shared_ptr<const GroebnerBasis> gb;
    };

    RingPtr ring_;
    std::vector<Polynomial> gens_;
    std::string digest_;
    std::shared_ptr<GbBox> box_;
};

// true iff normal_form(f, GB(target + relations)) == 0.
bool ideal_membership(const Polynomial& f, const IdealHandle& target, const Budget& budget = {},
                      GroebnerAccumulator* acc = nullptr);

// Number of degree-d monomials not divisible by any leading term of the
// target's Groebner basis = dim_k (ambient/(target+relations))_d.
std::uint64_t standard_monomial_count(const IdealHandle& target, std::uint64_t degree,
                                      const Budget& budget = {},
                                      GroebnerAccumulator* acc = nullptr);

// max { d : standard_monomial_count(target, d) > 0 }. Requires the
// quotient to be finite-dimensional (every variable must carry a pure
// power among the leading terms); otherwise validation_error.
std::uint64_t top_nonzero_degree(const IdealHandle& target, const Budget& budget = {},
                                 GroebnerAccumulator* acc = nullptr);

}  // namespace fthresh
