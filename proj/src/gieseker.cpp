#include "fthresh/gieseker.hpp"

#include "fthresh/field.hpp"

namespace fthresh {

namespace {

Int u(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }

Int pow_p(std::uint64_t p, std::uint64_t e) { return Int::pow(u(p), e); }

}  // namespace

GiesekerParams::GiesekerParams(std::uint64_t p_, std::uint64_t g_, std::uint64_t m0_,
                               std::uint64_t n0_)
    : p(p_), g(g_), m0(m0_), n0(n0_) {
    if (!PrimeField::is_prime(p)) throw validation_error("p must be prime");
    if (g < 2) throw validation_error("g must exceed 1");
    if (n0 < 3) throw validation_error("n0 must be at least 3");
    Int pm0 = pow_p(p, m0);
    if (!(pm0 < u(g)))
        throw validation_error("p^m0 must be smaller than g");
    if (!divides(pm0, u(g - 1)))
        throw validation_error("p^m0 must divide g-1 for the destabilizing degree to be integral");
}

Rat GiesekerParams::destabilizing_degree() const { return Rat(u(g - 1), pow_p(p, m0)); }

HNData em_strong_hn(const GiesekerParams& params, std::uint64_t m) {
    Rat deg = params.destabilizing_degree();
    return HNData({{1, deg}, {1, -deg}}, m, /*strong=*/true);
}

HNData em_hn_at_level(const GiesekerParams& params, std::uint64_t m, std::uint64_t k) {
    if (k > m) throw validation_error("level k may not exceed the destabilizing index m");
    if (k == m) return em_strong_hn(params, m);
    return HNData({{2, Rat(0)}}, k, /*strong=*/false);
}

Rat syzygy_dual_amin(const GiesekerParams& params, std::uint64_t m) {
    return -Rat(u(params.deg_L())) - Rat(u(params.g - 1), pow_p(params.p, m + params.m0));
}

FamilyReport threshold_sequence(const GiesekerParams& params, std::uint64_t m_max) {
    if (m_max < 1) throw validation_error("m_max must be at least 1");
    FamilyReport rep;
    rep.d = params.multiplicity_d();
    rep.limit = Rat(Int(3), Int(2));
    Rat half3 = rep.limit;
    for (std::uint64_t m = 0; m <= m_max; ++m) {
        Rat closed = half3 + Rat(u(params.g - 1), pow_p(params.p, m + params.m0) * u(rep.d));
        Rat via_slopes = threshold_from_amin(syzygy_dual_amin(params, m), rep.d);
        if (closed != via_slopes)
            throw engine_bug("threshold routes disagree at m=" + std::to_string(m) + ": " +
                             closed.str() + " vs " + via_slopes.str());
        rep.thresholds.push_back(closed);
    }
    rep.strictly_decreasing = true;
    for (std::size_t i = 0; i + 1 < rep.thresholds.size(); ++i)
        if (!(rep.thresholds[i] > rep.thresholds[i + 1])) rep.strictly_decreasing = false;
    rep.limit_attained = false;
    for (const auto& c : rep.thresholds)
        if (c == rep.limit) rep.limit_attained = true;
    return rep;
}

AccumulationReport accumulation_report(const GiesekerParams& params, std::uint64_t m_max,
                                       const std::vector<std::uint64_t>& Ns) {
    if (m_max < 2) throw validation_error("m_max must be at least 2");
    AccumulationReport rep;
    rep.family = threshold_sequence(params, m_max);

    for (std::uint64_t N : Ns) {
        if (N == 0) throw validation_error("epsilon denominators must be positive");
        // Least m with (g-1)/(p^(m+m0) d) < 1/N, by direct scan.
        Rat eps(Int(1), u(N));
        std::uint64_t m = 0;
        while (true) {
            Rat diff(u(params.g - 1), pow_p(params.p, m + params.m0) * u(rep.family.d));
            if (diff < eps) break;
            ++m;
        }
        rep.hits.push_back(EpsilonHit{N, m});
    }

    Rat half3(Int(3), Int(2));
    for (std::uint64_t m = 0; m <= m_max; ++m) {
        rep.strong_levels.push_back(m);  // least level destabilizing the m-th member
        Rat diff = rep.family.thresholds[m] - half3;
        rep.diff_den_divisible_by_p.push_back(divides(u(params.p), diff.den()));
    }
    rep.limit_in_list = rep.family.limit_attained;
    return rep;
}

}  // namespace fthresh
