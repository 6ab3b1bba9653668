#pragma once

#include <cstdint>
#include <vector>

#include "fthresh/rational.hpp"

namespace fthresh {

struct HNQuotient {
    std::uint64_t rank = 0;  // positive
    Rat degree;

    Rat slope() const { return degree / Rat(Int(rank)); }
};

// Harder-Narasimhan data for F^level applied to a bundle: the ordered
// (rank, degree) pairs of the filtration quotients, slopes strictly
// decreasing. `strong` records the caller's knowledge that the
// filtration is a strong HN filtration at this level.
class HNData {
  public:
    HNData(std::vector<HNQuotient> quotients, std::uint64_t level, bool strong);

    const std::vector<HNQuotient>& quotients() const { return quotients_; }
    std::uint64_t level() const { return level_; }
    bool strong() const { return strong_; }

    std::uint64_t total_rank() const;
    Rat total_degree() const;

  private:
    std::vector<HNQuotient> quotients_;
    std::uint64_t level_ = 0;
    bool strong_ = false;
};

// Slope of the last quotient.
Rat mu_min(const HNData& v);
Rat mu_max(const HNData& v);

// Tensor by a degree-ell line bundle: each degree moves by rank*ell.
HNData twist(const HNData& v, const Rat& ell);

// Frobenius pullback scales every degree by p and bumps the level.
// Pulling back an HN filtration need not yield the HN filtration, so
// the caller must assert that assumption explicitly.
HNData frobenius_pullback(const HNData& v, std::uint64_t p, bool assume_remains_hn);

// mu_min / p^level; only meaningful for strong data.
Rat a_min(const HNData& v, std::uint64_t p);

struct MuReductionStep {
    Rat mu_min_M;
    Rat mu_min_V;
    bool exact_sequence_holds = false;
};

struct MuReductionInput {
    std::vector<MuReductionStep> steps;  // index 0 first
    std::uint64_t d = 1;                 // multiplicity datum, kept with the input
};

struct MuReductionResult {
    enum class Kind { reduction, none_found };
    Kind kind = Kind::none_found;
    std::uint64_t t = 0;
};

// First index t with mu_min(V_t) < mu_min(M_t), provided every earlier
// step has the exact sequence and slope equality. Missing exactness
// terminates the scan with none_found; mu_min(V_i) > mu_min(M_i) at a
// scanned index is inconsistent input.
MuReductionResult mu_reduction_index(const MuReductionInput& input);

// 1 - a/d.
Rat threshold_from_amin(const Rat& a, std::uint64_t d);

struct LemmaConsistencyReport {
    Rat C;                    // p*(mu_min_V - mu_min_FmV/p^m)
    Rat bound;                // 4(g-1)(r-1)
    bool positive = false;    // 0 < C
    bool within_bound = false;
    Rat integrality_value;    // C * p^(m-1) * r!
    bool integral = false;
    Int hypothesis_floor;     // max{4(g-1)r^3, r!}
    bool p_clears_hypothesis = false;
    bool decomposed = false;  // below only when all checks pass
    Int a;
    Int b;                    // mu_min_V - a_min = a/(p*b), gcd(a,p)=1
};

LemmaConsistencyReport lemma_T_consistency(const Rat& mu_min_V, const Rat& mu_min_FmV,
                                           std::uint64_t p, std::uint64_t m, std::uint64_t g,
                                           std::uint64_t r);

}  // namespace fthresh
