#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fthresh/groebner.hpp"

namespace fthresh {

// Limits for one per-degree elimination. max_nnz caps the total stored
// entries across pivot rows (fill-in guard).
struct EchelonBudget {
    std::uint64_t max_nnz = 80'000'000;
    std::uint64_t max_ms = 600'000;
};

// The degree-D slice of an ideal (generators + ring relations) as a row
// space, with monomial generators folded into the column basis: columns
// are the degree-D monomials *not* divisible by any monomial generator,
// sorted descending in the ring order, and rows are the projections of
// monomial multiples of the remaining generators. Rank and membership
// queries never touch Groebner machinery.
class DegreeKernel {
  public:
    DegreeKernel(const IdealHandle& target, std::uint64_t degree, const EchelonBudget& budget = {});

    std::uint64_t degree() const { return degree_; }
    // Count of column monomials (ambient slice modulo the monomial generators).
    std::uint64_t free_dim() const { return basis_.size(); }
    std::uint64_t rank() const { return pivots_.size(); }
    // dim_k (ambient/(target+relations))_degree.
    std::uint64_t quotient_dim() const { return basis_.size() - pivots_.size(); }

    // f must be homogeneous of this degree (zero allowed).
    bool contains(const Polynomial& f) const;

  private:
    using SparseRow = std::vector<std::pair<std::uint32_t, std::uint32_t>>;  // (col, coeff), col asc

    // Reduce against pivots; returns the (non-monic) residue.
    SparseRow reduce(SparseRow row) const;
    void absorb(SparseRow row);
    SparseRow project(const Polynomial& f, const Monomial& shift) const;

    RingPtr ring_;
    std::uint64_t degree_;
    const EchelonBudget budget_;
    std::uint64_t nnz_ = 0;

    std::vector<Monomial> basis_;
    std::unordered_map<Monomial, std::uint32_t, MonoHash> column_of_;
    std::vector<Monomial> mono_gens_;
    std::vector<SparseRow> pivots_;                // monic at leading column
    std::vector<std::int64_t> pivot_of_col_;       // -1 when the column is free
};

// max { d : dim (ambient/(target+relations))_d > 0 } computed with the
// linear-algebra kernel alone; `bound` must be a degree past which the
// quotient is known to vanish.
std::uint64_t top_nonzero_degree_la(const IdealHandle& target, std::uint64_t bound,
                                    const EchelonBudget& budget = {});

}  // namespace fthresh
