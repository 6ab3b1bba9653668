#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fthresh/field.hpp"
#include "fthresh/monomial.hpp"

namespace fthresh {

class Polynomial;
class GradedRing;
using RingPtr = std::shared_ptr<const GradedRing>;

using Term = std::pair<Monomial, std::uint32_t>;
using TermList = std::vector<Term>;

// A standard graded polynomial ring over F_p, optionally presented as a
// quotient by homogeneous relations. Immutable after creation; rings are
// compared structurally through their canonical print.
class GradedRing : public std::enable_shared_from_this<GradedRing> {
  public:
    static RingPtr create(std::uint64_t p, std::vector<std::string> variables,
                          const std::vector<std::string>& relations = {},
                          MonomialOrder order = MonomialOrder::grevlex);

    const PrimeField& field() const { return field_; }
    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& variables() const { return vars_; }
    MonomialOrder order() const { return order_; }

    std::size_t nrelations() const { return relation_terms_.size(); }
    Polynomial relation(std::size_t i) const;
    std::vector<Polynomial> relations() const;
    bool has_relations() const { return !relation_terms_.empty(); }

    // "F_p[v1,...,vn] <order>" or "F_p[...]/(r1, r2) <order>".
    const std::string& canonical() const { return canonical_; }

    bool same_ring(const GradedRing& other) const {
        return this == &other || canonical_ == other.canonical_;
    }

    // Index of a variable name, or npos.
    std::size_t var_index(const std::string& name) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  private:
    GradedRing(PrimeField field, std::vector<std::string> vars, MonomialOrder order)
        : field_(field), vars_(std::move(vars)), order_(order) {}

    PrimeField field_;
    std::vector<std::string> vars_;
    MonomialOrder order_;
    std::vector<TermList> relation_terms_;
    std::string canonical_;
};

// dim_k of the degree-d piece of the ambient polynomial ring: C(d+n-1, n-1).
std::uint64_t graded_piece_dimension(const GradedRing& ring, std::uint64_t degree);

}  // namespace fthresh
