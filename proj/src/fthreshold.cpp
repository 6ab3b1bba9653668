#include "fthresh/fthreshold.hpp"

#include <algorithm>
#include <set>

#include "fthresh/parse.hpp"

namespace fthresh {

RationalInterval bracket_threshold(std::span<const NuRecord> records, std::uint64_t mu_I,
                                   bool relation_free) {
    if (records.empty()) throw validation_error("bracket_threshold needs at least one record");
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        if (records[i + 1].e <= records[i].e)
            throw validation_error("records must have strictly increasing e");
    }
    for (const auto& r : records) {
        if (r.ring_digest != records[0].ring_digest || r.I_digest != records[0].I_digest ||
            r.J_digest != records[0].J_digest)
            throw validation_error("records mix different (ring, I, J) inputs");
    }

    RationalInterval out;
    bool first = true;
    for (const auto& r : records) {
        Rat lo_e(Int(r.nu), Int(r.q));
        Rat hi_e(Int(r.nu + 1 + mu_I), Int(r.q));
        if (first) {
            out.lo = lo_e;
            out.hi = hi_e;
            first = false;
        } else {
            if (lo_e > out.lo) out.lo = lo_e;
            if (hi_e < out.hi) out.hi = hi_e;
        }
        out.e_used = r.e;
    }
    out.lo_certified = relation_free;
    out.hi_certified = true;
    if (out.hi < out.lo && out.lo_certified && out.hi_certified)
        throw engine_bug("certified interval endpoints crossed: lo=" + out.lo.str() +
                         " hi=" + out.hi.str());
    return out;
}

ReconstructionResult reconstruct(const RationalInterval& interval, std::uint64_t p,
                                 std::uint64_t b_bound) {
    if (b_bound < 1) throw validation_error("b_bound must be at least 1");
    std::set<Rat> candidates;
    auto add_denominator = [&](const Int& den) {
        // All k/den in [lo, hi].
        Int k_lo = (interval.lo * Rat(den)).ceil();
        Int k_hi = (interval.hi * Rat(den)).floor();
        for (Int k = k_lo; k <= k_hi; k += Int(1)) {
            candidates.insert(Rat(k, den));
            if (candidates.size() > 2) return;  // already ambiguous
        }
    };
    for (std::uint64_t b = 1; b <= b_bound && candidates.size() <= 2; ++b) {
        add_denominator(Int(static_cast<unsigned long>(b)));
        add_denominator(Int(static_cast<unsigned long>(b)) * Int(static_cast<unsigned long>(p)));
    }

    ReconstructionResult res;
    if (candidates.size() != 1) return res;  // none: empty interval or ambiguity
    Rat value = *candidates.begin();
    res.value = value;
    Int den = value.den();
    Int P(static_cast<unsigned long>(p));
    if (divides(P, den)) {
        res.form = ReconstructionResult::Form::p_times_b;
        res.a = value.num();
        res.b = divexact(den, P);
    } else {
        res.form = ReconstructionResult::Form::integer_or_p_free;
        res.a = value.num();
        res.b = den;
    }
    return res;
}

namespace {

DenominatorStructure denominator_of(const Rat& value, std::uint64_t p) {
    DenominatorStructure out;
    out.den = value.den();
    Int P(static_cast<unsigned long>(p));
    out.p_divides = divides(P, out.den);
    // den is a power of p iff repeatedly dividing by p reaches 1.
    Int rest = out.den;
    while (divides(P, rest)) rest = divexact(rest, P);
    out.p_power = rest.is_one();
    if (out.p_divides) {
        out.a = value.num();
        out.b = divexact(out.den, P);
    } else {
        out.a = value.num();
        out.b = out.den;
    }
    return out;
}

}  // namespace

Remark42Report verify_remark42(std::uint64_t d, std::uint64_t p, std::uint64_t e_max,
                               CacheStore* cache, const NuOptions& opts) {
    if (d < 7 || d % 2 == 0) throw validation_error("d must be an odd integer >= 7");
    if (!PrimeField::is_prime(p)) throw validation_error("p must be prime");
    if (p < d * d)
        throw validation_error("p must be at least d^2 = " + std::to_string(d * d));
    std::uint64_t modulus = d * d - 3 * d + 3;
    std::uint64_t residue = p % modulus;
    if (residue != 2 % modulus && residue != (modulus - 2) % modulus)
        throw validation_error("p = " + std::to_string(p) + " is not congruent to +-2 mod " +
                               std::to_string(modulus));
    if (e_max < 1) throw validation_error("e_max must be at least 1");

    Remark42Report rep;
    rep.d = d;
    rep.p = p;
    rep.e_max = e_max;
    Int pd = Int(static_cast<unsigned long>(p)) * Int(static_cast<unsigned long>(d));
    Int numer = Int(3) * pd + Int(static_cast<unsigned long>(d * d)) -
                Int(static_cast<unsigned long>(9 * d)) + Int(15);
    rep.paper_value = Rat(numer, Int(2) * pd);

    std::string relation = "x^" + std::to_string(d - 1) + "*y + y^" + std::to_string(d - 1) +
                           "*z + z^" + std::to_string(d - 1) + "*x";
    auto ring = GradedRing::create(p, {"x", "y", "z"}, {relation});
    auto m = IdealHandle::maximal(ring);

    rep.records = nu_sequence(m, m, e_max, cache, opts);
    std::uint64_t mu = m.ngens();
    rep.interval = bracket_threshold(rep.records, mu, /*relation_free=*/false);

    bool windows_ok = true;
    for (const auto& rec : rep.records) {
        NuWindow w;
        w.e = rec.e;
        w.nu = rec.nu;
        Rat scaled = rep.paper_value * Rat(Int(rec.q));
        w.window_lo = scaled.ceil() - Int(1) - Int(static_cast<unsigned long>(mu));
        w.window_hi = scaled.floor();
        Int nu_int(rec.nu);
        w.lower_ok = nu_int >= w.window_lo;
        w.upper_ok = nu_int <= w.window_hi;
        w.upper_applicable = rep.interval.lo_certified;
        windows_ok = windows_ok && w.lower_ok && w.upper_ok;
        rep.windows.push_back(std::move(w));
    }

    rep.denominator = denominator_of(rep.paper_value, p);
    rep.denominator_check_ok = rep.denominator.p_divides && !rep.denominator.p_power;
    rep.paper_value_in_interval =
        rep.interval.lo <= rep.paper_value && rep.paper_value <= rep.interval.hi;
    rep.paper_value_below_upper = rep.paper_value <= rep.interval.hi;
    rep.verdict = rep.paper_value_in_interval && rep.denominator_check_ok && windows_ok;
    return rep;
}

DenominatorReport denominator_structure_check(const Rat& c_p, const Rat& c_inf, std::uint64_t p,
                                              std::uint64_t g, std::uint64_t r) {
    if (g < 2) throw validation_error("g must be at least 2");
    if (r < 1) throw validation_error("r must be at least 1");
    if (c_p < c_inf) throw validation_error("c_p must be >= c_inf");

    DenominatorReport rep;
    rep.difference = c_p - c_inf;
    rep.ratio_bound = Rat(Int(4) * Int(static_cast<unsigned long>(g - 1)) *
                          Int(static_cast<unsigned long>(r - 1)));
    if (rep.difference.is_zero()) {
        rep.equal = true;
        return rep;
    }
    Int den = rep.difference.den();
    Int P(static_cast<unsigned long>(p));
    rep.p_divides = divides(P, den);
    if (rep.p_divides) {
        rep.a = rep.difference.num();
        rep.b = divexact(den, P);
        rep.gcd_ok = gcd(rep.a, P).is_one();
    } else {
        // The predicted a/(p b) shape is unavailable; report the raw
        // reduced form and flag the failure.
        rep.a = rep.difference.num();
        rep.b = den;
        rep.gcd_ok = false;
    }
    rep.ratio = Rat(rep.a, rep.b);
    rep.ratio_ok = rep.ratio.sign() > 0 && rep.ratio <= rep.ratio_bound;
    return rep;
}

}  // namespace fthresh
