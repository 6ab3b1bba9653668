#include "fthresh/nu.hpp"

#include <chrono>
#include <future>
#include <map>

#include "fthresh/cache.hpp"
#include "fthresh/digest.hpp"
#include "fthresh/rational.hpp"

namespace fthresh {

namespace {
using Clock = std::chrono::steady_clock;

std::uint64_t checked_pow_u64(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && acc > (std::uint64_t(1) << 62) / base)
            throw validation_error("p^e exceeds the supported 64-bit range");
        acc *= base;
    }
    return acc;
}

bool is_power_of(std::uint64_t q, std::uint64_t p) {
    if (q == 0) return false;
    while (q % p == 0) q /= p;
    return q == 1;
}

}  // namespace

std::string to_string(NuMethod m) {
    switch (m) {
        case NuMethod::groebner: return "groebner";
        case NuMethod::linear_algebra: return "linear_algebra";
        case NuMethod::socle_fastpath: return "socle_fastpath";
        case NuMethod::auto_select: return "auto";
    }
    return "auto";
}

NuMethod nu_method_from_string(const std::string& s) {
    if (s == "groebner") return NuMethod::groebner;
    if (s == "linear_algebra") return NuMethod::linear_algebra;
    if (s == "socle_fastpath") return NuMethod::socle_fastpath;
    if (s == "auto" || s.empty()) return NuMethod::auto_select;
    throw validation_error("unknown method '" + s + "'");
}

IdealHandle bracket_power(const IdealHandle& J, std::uint64_t q) {
    std::uint64_t p = J.ring()->field().p();
    if (!is_power_of(q, p))
        throw validation_error(std::to_string(q) + " is not a power of the characteristic " +
                               std::to_string(p));
    std::vector<Polynomial> gens;
    gens.reserve(J.ngens());
    for (const auto& g : J.generators()) gens.push_back(frobenius_power(g, q));
    return IdealHandle(J.ring(), std::move(gens));
}

IdealHandle ideal_power(const IdealHandle& I, std::uint64_t r) {
    if (r == 0) return IdealHandle(I.ring(), {Polynomial::constant(I.ring(), 1)});
    const auto& gens = I.generators();
    Int count = Int::binomial(gens.size() + r - 1, r);
    if (count > Int(500'000))
        throw resource_limit_error("ideal power has " + count.str() + " generators");
    std::vector<Polynomial> out;
    bool all_monomial = true;
    for (const auto& g : gens)
        if (!g.is_monomial()) all_monomial = false;
    if (all_monomial) {
        // Products of monomials are exponent sums; skip polynomial arithmetic.
        auto rec = [&](auto&& self, std::size_t min_idx, std::uint64_t left, const Monomial& pre,
                       std::uint32_t coeff) -> void {
            if (left == 0) {
                out.push_back(Polynomial::monomial(I.ring(), pre, coeff));
                return;
            }
            for (std::size_t i = min_idx; i < gens.size(); ++i)
                self(self, i, left - 1, pre * gens[i].leading_monomial(),
                     I.ring()->field().mul(coeff, gens[i].leading_coeff()));
        };
        rec(rec, 0, r, Monomial(I.ring()->nvars()), 1);
    } else {
        // Multiset combinations via prefix products.
        auto rec = [&](auto&& self, std::size_t min_idx, std::uint64_t left,
                       const Polynomial& prefix) -> void {
            if (left == 0) {
                out.push_back(prefix);
                return;
            }
            for (std::size_t i = min_idx; i < gens.size(); ++i)
                self(self, i, left - 1, prefix * gens[i]);
        };
        rec(rec, 0, r, Polynomial::constant(I.ring(), 1));
    }
    // Products can collapse mod p; drop zeros, and IdealHandle dedups.
    std::vector<Polynomial> nonzero;
    nonzero.reserve(out.size());
    for (auto& f : out)
        if (!f.is_zero()) nonzero.push_back(std::move(f));
    if (nonzero.empty())
        throw validation_error("ideal power collapsed to the zero ideal");
    return IdealHandle(I.ring(), std::move(nonzero));
}

bool contains_power(const ContainmentQuery& query, NuMethod method, const NuOptions& opts) {
    const IdealHandle& I = query.base;
    const IdealHandle& K = query.target;
    if (!I.ring()->same_ring(*K.ring()))
        throw validation_error("containment query mixes rings");
    if (opts.stats) ++opts.stats->containment_probes;

    if (method == NuMethod::auto_select)
        method = I.is_maximal_ideal() ? NuMethod::socle_fastpath : NuMethod::linear_algebra;

    if (method == NuMethod::socle_fastpath) {
        if (!I.is_maximal_ideal())
            throw validation_error("socle fastpath requires I to be the maximal ideal");
        return DegreeKernel(K, query.power, opts.la_budget).quotient_dim() == 0;
    }

    IdealHandle power = ideal_power(I, query.power);
    std::vector<Polynomial> probes = power.generators();

    // Generator pruning: products that die modulo the relations are
    // automatically inside K. For a single multi-term relation h no
    // monomial can lie in (h) (h would have to divide it in a domain),
    // so monomial probes skip the reduction pass entirely.
    if (I.ring()->has_relations() && !probes.empty()) {
        bool principal_multiterm =
            I.ring()->nrelations() == 1 && I.ring()->relation(0).nterms() >= 2;
        bool all_probes_monomial = true;
        for (const auto& f : probes)
            if (!f.is_monomial()) all_probes_monomial = false;
        if (!(principal_multiterm && all_probes_monomial)) {
            auto relgb = buchberger(I.ring()->relations(), I.ring()->order(), opts.gb_budget);
            auto start = std::chrono::steady_clock::now();
            std::vector<Polynomial> kept;
            kept.reserve(probes.size());
            std::size_t done = 0;
            for (auto& f : probes) {
                Polynomial nf = normal_form(f, relgb, opts.gb_budget);
                if (!nf.is_zero()) kept.push_back(std::move(nf));
                if ((++done & 0xff) == 0) {
                    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
                    if (static_cast<std::uint64_t>(ms) > opts.gb_budget.max_ms)
                        throw resource_limit_error("relation pruning time budget exhausted");
                }
            }
            probes = std::move(kept);
            if (probes.empty()) return true;
        }
    }

    if (method == NuMethod::groebner) {
        const auto& gb = K.groebner(opts.gb_budget, opts.stats ? &opts.stats->gb : nullptr);
        for (const auto& f : probes)
            if (!normal_form(f, gb, opts.gb_budget).is_zero()) return false;
        return true;
    }

    // Linear-algebra path: one echelon per graded degree involved.
    std::map<std::uint64_t, std::vector<const Polynomial*>> by_degree;
    for (const auto& f : probes) by_degree[f.degree()].push_back(&f);
    for (const auto& [deg, fs] : by_degree) {
        DegreeKernel kernel(K, deg, opts.la_budget);
        for (const auto* f : fs)
            if (!kernel.contains(*f)) return false;
    }
    return true;
}

NuRecord nu(const IdealHandle& I, const IdealHandle& J, std::uint64_t e, const NuOptions& opts) {
    auto start = Clock::now();
    if (!I.ring()->same_ring(*J.ring())) throw validation_error("I and J live in different rings");
    RingPtr ring = I.ring();
    for (const auto& g : I.generators())
        if (g.degree() == 0)
            throw validation_error("I must be contained in the maximal ideal");
    std::uint64_t p = ring->field().p();
    std::uint64_t q = checked_pow_u64(p, e);

    // t = min{ s : m^s inside J } certifies both that J is m-primary and
    // the search ceiling below; throws validation_error otherwise.
    std::uint64_t t;
    try {
        t = top_nonzero_degree(J, opts.gb_budget, opts.stats ? &opts.stats->gb : nullptr) + 1;
    } catch (const validation_error& err) {
        throw validation_error(std::string("J is not m-primary: ") + err.what());
    }

    std::uint64_t n = ring->nvars();
    if (t != 0 && q > (std::uint64_t(1) << 61) / (t * n))
        throw validation_error("search ceiling n(t p^e - 1) exceeds the 64-bit range");
    std::uint64_t ceiling = n * (t * q - 1);  // any degree beyond this lies in J^[q]

    IdealHandle K = bracket_power(J, q);

    NuMethod method = opts.method;
    if (method == NuMethod::auto_select) {
        if (I.is_maximal_ideal())
            method = NuMethod::socle_fastpath;
        else if (q > 32)
            method = NuMethod::linear_algebra;
        else
            method = NuMethod::groebner;
    }

    std::uint64_t value;
    if (method == NuMethod::socle_fastpath) {
        if (!I.is_maximal_ideal())
            throw validation_error("socle fastpath requires I to be the maximal ideal");
        if (opts.stats) ++opts.stats->containment_probes;  // counted as one top-degree scan
        value = top_nonzero_degree_la(K, ceiling, opts.la_budget);
    } else {
        auto contained = [&](std::uint64_t r) {
            return contains_power(ContainmentQuery{I, r, K}, method, opts);
        };
        // contained(ceiling + 1) is a theorem once t exists: any monomial
        // of degree n(tq-1)+1 has some exponent >= tq and x_i^(tq) lies in
        // (m^t)^[q], a subset of J^[q]. The search needs no probe there.
        // contained(.) is monotone: lo always fails, hi always holds.
        std::uint64_t lo = 0, hi = ceiling + 1;
        while (hi - lo > 1) {
            if (opts.threads >= 2 && hi - lo > 2) {
                // Speculative mode: probe two interior points at once.
                std::uint64_t m1 = lo + (hi - lo) / 3;
                std::uint64_t m2 = lo + 2 * (hi - lo) / 3;
                if (m2 == m1) ++m2;
                auto f2 = std::async(std::launch::async, contained, m2);
                bool c1 = contained(m1);
                bool c2 = f2.get();
                if (c1)
                    hi = m1;
                else if (c2) {
                    lo = m1;
                    hi = m2;
                } else
                    lo = m2;
            } else {
                std::uint64_t mid = lo + (hi - lo) / 2;
                if (contained(mid))
                    hi = mid;
                else
                    lo = mid;
            }
        }
        value = lo;
    }

    NuRecord rec;
    rec.ring_digest = digest_hex(ring->canonical());
    rec.I_digest = I.digest();
    rec.J_digest = J.digest();
    rec.e = e;
    rec.q = q;
    rec.nu = value;
    rec.method = to_string(method);
    rec.wall_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
    return rec;
}

std::vector<NuRecord> nu_sequence(const IdealHandle& I, const IdealHandle& J, std::uint64_t e_max,
                                  CacheStore* cache, const NuOptions& opts) {
    if (e_max < 1) throw validation_error("e_max must be at least 1");
    std::string ring_d = digest_hex(I.ring()->canonical());
    std::vector<NuRecord> out;
    out.reserve(e_max);
    for (std::uint64_t e = 1; e <= e_max; ++e) {
        if (cache) {
            if (auto hit = cache->lookup(ring_d, I.digest(), J.digest(), e)) {
                if (opts.stats) ++opts.stats->cache_hits;
                out.push_back(*hit);
                continue;
            }
        }
        NuRecord rec = nu(I, J, e, opts);
        if (cache) cache->append(rec);
        out.push_back(std::move(rec));
    }
    // Frobenius witness growth nu_{e+1} >= p nu_e is a theorem in
    // relation-free rings; a violation there is an engine defect. In
    // quotient rings it can genuinely fail and is only reported.
    if (!I.ring()->has_relations()) {
        std::uint64_t p = I.ring()->field().p();
        for (std::size_t k = 0; k + 1 < out.size(); ++k) {
            if (out[k + 1].nu < p * out[k].nu)
                throw engine_bug("witness growth violated in a polynomial ring: nu_" +
                                 std::to_string(out[k].e) + "=" + std::to_string(out[k].nu) +
                                 ", nu_" + std::to_string(out[k + 1].e) + "=" +
                                 std::to_string(out[k + 1].nu));
        }
    }
    return out;
}

std::vector<bool> witness_growth_flags(std::span<const NuRecord> records, std::uint64_t p) {
    std::vector<bool> out;
    for (std::size_t k = 0; k + 1 < records.size(); ++k)
        out.push_back(records[k + 1].nu >= p * records[k].nu);
    return out;
}

}  // namespace fthresh
