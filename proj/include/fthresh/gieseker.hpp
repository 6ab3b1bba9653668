#pragma once

#include <cstdint>
#include <vector>

#include "fthresh/hn.hpp"

namespace fthresh {

// Parameters of the rank-2 trivial-determinant family on a genus-g
// curve whose m-th Frobenius pullback is the first unstable one, with
// destabilizing degree (g-1)/p^m0, embedded by the 3n0-th power of the
// canonical bundle.
struct GiesekerParams {
    std::uint64_t p = 2;
    std::uint64_t g = 3;
    std::uint64_t m0 = 0;
    std::uint64_t n0 = 3;

    GiesekerParams(std::uint64_t p_, std::uint64_t g_, std::uint64_t m0_, std::uint64_t n0_);

    std::uint64_t deg_L() const { return 3 * n0 * (2 * g - 2); }
    std::uint64_t multiplicity_d() const { return 2 * deg_L(); }
    Rat destabilizing_degree() const;  // (g-1)/p^m0
};

// Strong HN data of the m-th member at its destabilizing level m:
// quotients [(1, (g-1)/p^m0), (1, -(g-1)/p^m0)], determinant degree 0.
HNData em_strong_hn(const GiesekerParams& params, std::uint64_t m);

// Level-k data of the m-th member, k <= m: semistable [(2, 0)] below m,
// the destabilized data at k = m.
HNData em_hn_at_level(const GiesekerParams& params, std::uint64_t m, std::uint64_t k);

// a_min of the twisted syzygy dual: -deg(L) - (g-1)/p^(m+m0).
Rat syzygy_dual_amin(const GiesekerParams& params, std::uint64_t m);

struct FamilyReport {
    std::uint64_t d = 0;  // multiplicity; also 2 deg(L)
    std::vector<Rat> thresholds;  // c_m for m = 0..m_max
    bool strictly_decreasing = false;
    Rat limit;  // 3/2
    bool limit_attained = false;
};

// Thresholds c_m = 3/2 + (g-1)/(p^(m+m0) d), cross-checked exactly
// against the slope route 1 - syzygy_dual_amin/d; a mismatch is an
// engine bug.
FamilyReport threshold_sequence(const GiesekerParams& params, std::uint64_t m_max);

struct EpsilonHit {
    std::uint64_t N = 0;  // epsilon = 1/N
    std::uint64_t m = 0;  // least m with c_m - 3/2 < 1/N
};

struct AccumulationReport {
    FamilyReport family;
    std::vector<EpsilonHit> hits;
    std::vector<std::uint64_t> strong_levels;      // minimal strong-HN level per member
    std::vector<bool> diff_den_divisible_by_p;     // per m, on c_m - 3/2 reduced
    bool limit_in_list = false;
};

// Nondiscreteness evidence: strict decrease, epsilon tail indices for
// each requested 1/N, per-term denominator divisibility, and the
// unbounded strong-HN levels.
AccumulationReport accumulation_report(const GiesekerParams& params, std::uint64_t m_max,
                                       const std::vector<std::uint64_t>& Ns = {10, 100, 1000,
                                                                               10000, 100000,
                                                                               1000000});

}  // namespace fthresh
