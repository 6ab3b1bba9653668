#pragma once

#include <atomic>
#include <cstdint>
#include <span>
#include <optional>
#include <string>
#include <vector>

#include "fthresh/groebner.hpp"
#include "fthresh/linalg.hpp"

namespace fthresh {

class CacheStore;

enum class NuMethod { auto_select, groebner, linear_algebra, socle_fastpath };

std::string to_string(NuMethod m);
NuMethod nu_method_from_string(const std::string& s);

// Counters may be bumped from speculative probe threads.
struct NuStats {
    std::atomic<std::uint64_t> containment_probes{0};
    std::atomic<std::uint64_t> cache_hits{0};
    GroebnerAccumulator gb;
};

struct NuOptions {
    NuMethod method = NuMethod::auto_select;
    Budget gb_budget{};
    EchelonBudget la_budget{};
    unsigned threads = 1;  // >= 2 enables speculative probing in the search
    NuStats* stats = nullptr;
};

// One computed value nu_e(I, J) = max{ r : I^r not contained in J^[p^e] }.
struct NuRecord {
    std::string ring_digest;
    std::string I_digest;
    std::string J_digest;
    std::uint64_t e = 0;
    std::uint64_t q = 0;  // p^e
    std::uint64_t nu = 0;
    std::string method;
    std::uint64_t wall_ms = 0;
};

// Ideal generated by the q-th powers of J's generators; q must be a
// power of the characteristic. Well-defined because x -> x^q is a ring
// endomorphism in characteristic p.
IdealHandle bracket_power(const IdealHandle& J, std::uint64_t q);

// Ideal generated by all degree-r products of generators (multiset
// combinations); ideal_power(I, 0) is the unit ideal.
IdealHandle ideal_power(const IdealHandle& I, std::uint64_t r);

struct ContainmentQuery {
    const IdealHandle& base;    // I
    std::uint64_t power;        // r
    const IdealHandle& target;  // K, already bracket-powered
};

// Decides I^r subset of K. The groebner method reduces every generator
// of I^r; the linear-algebra method works one graded degree at a time;
// socle_fastpath requires I to be the maximal ideal and tests
// quotient_dim(K, r) == 0.
bool contains_power(const ContainmentQuery& query, NuMethod method, const NuOptions& opts = {});

// Exact nu_e by monotone binary search over [0, D] with the certified
// ceiling D = nvars*(t*p^e - 1), t = min{s : m^s subset of J}.
NuRecord nu(const IdealHandle& I, const IdealHandle& J, std::uint64_t e, const NuOptions& opts = {});

// nu_1..nu_{e_max}, reusing and appending to the cache when given.
// In relation-free rings the computed sequence must satisfy
// nu_{e+1} >= p nu_e (a violation raises engine_bug); in quotient rings
// that growth can genuinely fail and is left to reporting.
std::vector<NuRecord> nu_sequence(const IdealHandle& I, const IdealHandle& J, std::uint64_t e_max,
                                  CacheStore* cache = nullptr, const NuOptions& opts = {});

// Per consecutive pair: nu_{e+1} >= p nu_e.
std::vector<bool> witness_growth_flags(std::span<const NuRecord> records, std::uint64_t p);

}  // namespace fthresh
