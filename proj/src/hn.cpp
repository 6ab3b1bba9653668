#include "fthresh/hn.hpp"

#include "fthresh/errors.hpp"
#include "fthresh/field.hpp"

namespace fthresh {

HNData::HNData(std::vector<HNQuotient> quotients, std::uint64_t level, bool strong)
    : quotients_(std::move(quotients)), level_(level), strong_(strong) {
    if (quotients_.empty()) throw validation_error("HN data needs at least one quotient");
    for (const auto& q : quotients_)
        if (q.rank == 0) throw validation_error("HN quotient ranks must be positive");
    for (std::size_t i = 0; i + 1 < quotients_.size(); ++i) {
        if (!(quotients_[i].slope() > quotients_[i + 1].slope()))
            throw validation_error("HN slopes must be strictly decreasing");
    }
}

std::uint64_t HNData::total_rank() const {
    std::uint64_t r = 0;
    for (const auto& q : quotients_) r += q.rank;
    return r;
}

Rat HNData::total_degree() const {
    Rat d;
    for (const auto& q : quotients_) d = d + q.degree;
    return d;
}

Rat mu_min(const HNData& v) { return v.quotients().back().slope(); }
Rat mu_max(const HNData& v) { return v.quotients().front().slope(); }

HNData twist(const HNData& v, const Rat& ell) {
    std::vector<HNQuotient> qs = v.quotients();
    for (auto& q : qs) q.degree = q.degree + Rat(Int(q.rank)) * ell;
    return HNData(std::move(qs), v.level(), v.strong());
}

HNData frobenius_pullback(const HNData& v, std::uint64_t p, bool assume_remains_hn) {
    if (!assume_remains_hn)
        throw validation_error(
            "frobenius_pullback requires the caller to assert the filtration stays HN");
    if (!PrimeField::is_prime(p)) throw validation_error("p must be prime");
    std::vector<HNQuotient> qs = v.quotients();
    for (auto& q : qs) q.degree = q.degree * Rat(Int(static_cast<unsigned long>(p)));
    return HNData(std::move(qs), v.level() + 1, v.strong());
}

Rat a_min(const HNData& v, std::uint64_t p) {
    if (!v.strong())
        throw validation_error("a_min needs strong HN data (mark the level explicitly)");
    return mu_min(v) / Rat(Int::pow(Int(static_cast<unsigned long>(p)), v.level()));
}

MuReductionResult mu_reduction_index(const MuReductionInput& input) {
    for (std::size_t i = 0; i < input.steps.size(); ++i) {
        const auto& s = input.steps[i];
        if (s.mu_min_V > s.mu_min_M)
            throw validation_error("inconsistent data: mu_min(V_" + std::to_string(i) +
                                   ") exceeds mu_min(M_" + std::to_string(i) + ")");
        if (s.mu_min_V < s.mu_min_M)
            return MuReductionResult{MuReductionResult::Kind::reduction, i};
        // Equal slopes: continuing needs the exact sequence at this step.
        if (!s.exact_sequence_holds) return MuReductionResult{MuReductionResult::Kind::none_found, 0};
    }
    return MuReductionResult{MuReductionResult::Kind::none_found, 0};
}

Rat threshold_from_amin(const Rat& a, std::uint64_t d) {
    if (d < 1) throw validation_error("d must be positive");
    return Rat(1) - a / Rat(Int(static_cast<unsigned long>(d)));
}

namespace {

Int factorial(std::uint64_t r) {
    Int acc(1);
    for (std::uint64_t i = 2; i <= r; ++i) acc *= Int(static_cast<unsigned long>(i));
    return acc;
}

}  // namespace

LemmaConsistencyReport lemma_T_consistency(const Rat& mu_min_V, const Rat& mu_min_FmV,
                                           std::uint64_t p, std::uint64_t m, std::uint64_t g,
                                           std::uint64_t r) {
    if (!PrimeField::is_prime(p)) throw validation_error("p must be prime");
    if (m < 1) throw validation_error("m must be at least 1");
    if (g < 2) throw validation_error("g must be at least 2");
    if (r < 2) throw validation_error("r must be at least 2");

    LemmaConsistencyReport rep;
    Rat P(Int(static_cast<unsigned long>(p)));
    Rat pm(Int::pow(Int(static_cast<unsigned long>(p)), m));
    Rat amin = mu_min_FmV / pm;
    rep.C = P * (mu_min_V - amin);
    rep.bound = Rat(Int(4) * Int(static_cast<unsigned long>(g - 1)) *
                    Int(static_cast<unsigned long>(r - 1)));
    rep.positive = rep.C.sign() > 0;
    rep.within_bound = rep.C <= rep.bound;
    Int rfact = factorial(r);
    rep.integrality_value =
        rep.C * Rat(Int::pow(Int(static_cast<unsigned long>(p)), m - 1)) * Rat(rfact);
    rep.integral = rep.integrality_value.is_integer();
    Int hyp1 = Int(4) * Int(static_cast<unsigned long>(g - 1)) *
               Int::pow(Int(static_cast<unsigned long>(r)), 3);
    rep.hypothesis_floor = hyp1 > rfact ? hyp1 : rfact;
    rep.p_clears_hypothesis = Int(static_cast<unsigned long>(p)) > rep.hypothesis_floor;

    if (rep.positive && rep.within_bound && rep.integral) {
        // mu_min(V) - a_min = C/p with C p^(m-1) r! integral, so the
        // defect has the a/(p b) shape after clearing common factors.
        Rat defect = mu_min_V - amin;  // = C/p
        Int den = defect.den();
        Int P_int(static_cast<unsigned long>(p));
        if (divides(P_int, den)) {
            rep.a = defect.num();
            rep.b = divexact(den, P_int);
            rep.decomposed = gcd(rep.a, P_int).is_one();
        }
    }
    return rep;
}

}  // namespace fthresh
