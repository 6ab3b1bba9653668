#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fthresh/nu.hpp"
#include "fthresh/rational.hpp"

namespace fthresh {

// Exact-rational bracketing of c^J(I). The upper endpoint is always
// certified (pigeonhole on generator exponents, valid in every ring);
// the lower endpoint nu_e/p^e is certified only in relation-free rings.
struct RationalInterval {
    Rat lo;
    Rat hi;
    bool lo_certified = false;
    bool hi_certified = true;
    std::uint64_t e_used = 0;
};

// lo = max_e nu_e/p^e, hi = min_e (nu_e + 1 + mu_I)/p^e over the given
// records. mu_I is the generator count of I; relation_free drives the
// lo certification flag. Throws engine_bug if certified endpoints cross.
RationalInterval bracket_threshold(std::span<const NuRecord> records, std::uint64_t mu_I,
                                   bool relation_free);

struct ReconstructionResult {
    enum class Form { integer_or_p_free, p_times_b };
    std::optional<Rat> value;  // empty unless exactly one candidate
    Form form = Form::integer_or_p_free;
    Int a;
    Int b;
};

// Enumerates rationals in [lo, hi] whose denominator divides some b or
// p*b with b <= b_bound, and returns the unique one, or nothing. Never
// guesses between multiple candidates.
ReconstructionResult reconstruct(const RationalInterval& interval, std::uint64_t p,
                                 std::uint64_t b_bound);

struct NuWindow {
    std::uint64_t e = 0;
    std::uint64_t nu = 0;
    Int window_lo;       // ceil(c* p^e) - 1 - mu
    Int window_hi;       // floor(c* p^e)
    bool lower_ok = false;
    bool upper_ok = false;
    bool upper_applicable = false;  // the upper window assumes a certified lo
};

struct DenominatorStructure {
    Int den;              // reduced denominator of the value examined
    bool p_divides = false;
    bool p_power = false;  // whether den is a power of p
    Int a;                 // value = a/(p*b) when p_divides
    Int b;
};

struct Remark42Report {
    std::uint64_t d = 0;
    std::uint64_t p = 0;
    std::uint64_t e_max = 0;
    Rat paper_value;  // (3pd + d^2 - 9d + 15)/(2pd), reduced
    std::vector<NuRecord> records;
    RationalInterval interval;
    std::vector<NuWindow> windows;
    DenominatorStructure denominator;
    bool paper_value_in_interval = false;   // raw [lo, hi] membership
    bool paper_value_below_upper = false;   // certified side: paper_value <= hi
    bool denominator_check_ok = false;      // p | den but den not a power of p
    bool verdict = false;                   // all of the above and all windows
};

// Builds F_p[x,y,z]/(x^(d-1) y + y^(d-1) z + z^(d-1) x), runs the nu
// engine for I = J = m up to e_max, brackets the threshold and checks
// the closed-form value. Preconditions: d odd >= 7, p prime >= d^2,
// p = +-2 mod (d^2 - 3d + 3).
Remark42Report verify_remark42(std::uint64_t d, std::uint64_t p, std::uint64_t e_max,
                               CacheStore* cache = nullptr, const NuOptions& opts = {});

struct DenominatorReport {
    bool equal = false;
    Rat difference;        // c_p - c_inf
    bool p_divides = false;
    Int a;
    Int b;                 // difference = a/(p*b) when p_divides; else a/b raw
    bool gcd_ok = false;   // gcd(a, p) == 1 with the p factor extracted
    Rat ratio;             // a/b
    Rat ratio_bound;       // 4(g-1)(r-1)
    bool ratio_ok = false; // 0 < a/b <= bound
};

// Theorem-shape check for c_p = c_inf + a/(p b): extracts the p factor
// from the reduced difference and tests the slope bound.
DenominatorReport denominator_structure_check(const Rat& c_p, const Rat& c_inf, std::uint64_t p,
                                              std::uint64_t g, std::uint64_t r);

}  // namespace fthresh
