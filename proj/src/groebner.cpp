#include "fthresh/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "fthresh/digest.hpp"

namespace fthresh {

namespace {

using Clock = std::chrono::steady_clock;

struct Ticker {
    const Budget& budget;
    GroebnerStats& stats;
    Clock::time_point start = Clock::now();

    void step() {
        if (++stats.reductions > budget.max_reductions)
            throw resource_limit_error("Groebner reduction budget exhausted (" +
                                       std::to_string(budget.max_reductions) + " steps)");
        if ((stats.reductions & 0x3ff) == 0) check_time();
    }
    void check_time() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
        if (static_cast<std::uint64_t>(ms) > budget.max_ms)
            throw resource_limit_error("Groebner time budget exhausted (" +
                                       std::to_string(budget.max_ms) + " ms)");
    }
    std::uint64_t elapsed_ms() const {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
    }
};

Polynomial reduce_full(const Polynomial& f, const std::vector<Polynomial>& basis, Ticker& tick) {
    const auto& F = f.ring()->field();
    Polynomial h = f;
    TermList remainder;
    while (!h.is_zero()) {
        const Monomial& lm = h.leading_monomial();
        const Polynomial* divisor = nullptr;
        for (const auto& g : basis) {
            if (!g.is_zero() && g.leading_monomial().divides(lm)) {
                divisor = &g;
                break;
            }
        }
        if (divisor) {
            tick.step();
            Monomial shift = lm / divisor->leading_monomial();
            std::uint32_t c = F.mul(h.leading_coeff(), F.inv(divisor->leading_coeff()));
            h = h - divisor->times_term(shift, c);
        } else {
            remainder.push_back(h.terms().front());
            h = h - Polynomial::monomial(h.ring(), h.terms().front().first, h.terms().front().second);
        }
    }
    return Polynomial::from_terms(f.ring(), std::move(remainder));
}

struct SPair {
    std::size_t i, j;
    Monomial lcm;
    std::uint64_t degree;
};

}  // namespace

GroebnerBasis buchberger(const std::vector<Polynomial>& gens, MonomialOrder order,
                         const Budget& budget) {
    if (gens.empty()) throw validation_error("buchberger needs at least one generator");
    RingPtr ring = gens.front().ring();
    if (order != ring->order())
        throw validation_error("requested monomial order differs from the ring's order");
    for (const auto& g : gens) {
        if (!g.ring()->same_ring(*ring)) throw validation_error("generators live in different rings");
        if (!g.is_homogeneous()) throw validation_error("buchberger requires homogeneous generators");
    }

    GroebnerStats stats;
    Ticker tick{budget, stats};

    std::vector<Polynomial> basis;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        Polynomial m = g.monic();
        if (std::find(basis.begin(), basis.end(), m) == basis.end()) basis.push_back(std::move(m));
    }
    if (basis.empty()) throw validation_error("all generators are zero");

    auto pair_less = [order](const SPair& a, const SPair& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        if (a.lcm != b.lcm) return mono_greater(b.lcm, a.lcm, order);
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };

    // Normal strategy: always handle the lowest-degree lcm next.
    std::multiset<SPair, decltype(pair_less)> queue(pair_less);
    auto push_pairs_for = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) {
            Monomial l = Monomial::lcm(basis[i].leading_monomial(), basis[j].leading_monomial());
            std::uint64_t d = l.degree();
            queue.insert(SPair{i, j, std::move(l), d});
        }
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs_for(j);

    std::set<std::pair<std::size_t, std::size_t>> treated;
    auto is_treated = [&](std::size_t a, std::size_t b) {
        return treated.count({std::min(a, b), std::max(a, b)}) != 0;
    };

    while (!queue.empty()) {
        SPair pr = *queue.begin();
        queue.erase(queue.begin());
        ++stats.spairs;
        tick.check_time();
        treated.insert({pr.i, pr.j});

        const Monomial& li = basis[pr.i].leading_monomial();
        const Monomial& lj = basis[pr.j].leading_monomial();
        // Product criterion: coprime leading terms reduce to zero.
        if (Monomial::coprime(li, lj)) continue;
        // Chain criterion: a third element divides the lcm and both
        // companion pairs are already handled.
        bool chained = false;
        for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (basis[k].leading_monomial().divides(pr.lcm) && is_treated(pr.i, k) &&
                is_treated(pr.j, k))
                chained = true;
        }
        if (chained) continue;

        Polynomial spoly =
            basis[pr.i].times_term(pr.lcm / li, 1) - basis[pr.j].times_term(pr.lcm / lj, 1);
        Polynomial nf = reduce_full(spoly, basis, tick);
        if (!nf.is_zero()) {
            basis.push_back(nf.monic());
            push_pairs_for(basis.size() - 1);
        }
    }

    // Minimalize: drop elements whose leading term is divisible by the
    // leading term of another survivor.
    std::vector<bool> keep(basis.size(), true);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!keep[i]) continue;
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j || !keep[j]) continue;
            const Monomial& li = basis[i].leading_monomial();
            const Monomial& lj = basis[j].leading_monomial();
            if (lj.divides(li) && (li != lj || j < i)) {
                keep[i] = false;
                break;
            }
        }
    }
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (keep[i]) minimal.push_back(basis[i]);

    // Interreduce tails to get the unique reduced basis.
    std::vector<Polynomial> reduced = minimal;
    for (std::size_t i = 0; i < reduced.size(); ++i) {
        std::vector<Polynomial> others;
        others.reserve(reduced.size() - 1);
        for (std::size_t j = 0; j < reduced.size(); ++j)
            if (j != i) others.push_back(reduced[j]);
        reduced[i] = reduce_full(reduced[i], others, tick).monic();
    }
    std::sort(reduced.begin(), reduced.end(), [order](const Polynomial& a, const Polynomial& b) {
        return mono_greater(b.leading_monomial(), a.leading_monomial(), order);
    });

    stats.wall_ms = tick.elapsed_ms();
    return GroebnerBasis(ring, std::move(reduced), order, stats);
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb, const Budget& budget) {
    if (!f.ring()->same_ring(*gb.ring())) throw validation_error("ring mismatch in normal_form");
    GroebnerStats stats;
    Ticker tick{budget, stats};
    return reduce_full(f, gb.elements(), tick);
}

IdealHandle::IdealHandle(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), box_(std::make_shared<GbBox>()) {
    if (!ring_) throw validation_error("ideal needs a ring");
    for (auto& g : generators) {
        if (!g.ring()->same_ring(*ring_))
            throw validation_error("ideal generator lives in a different ring");
        if (g.is_zero()) throw validation_error("ideal generators must be nonzero");
        if (!g.is_homogeneous())
            throw validation_error("ideal generator '" + g.str() + "' is not homogeneous");
        if (std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(std::move(g));
    }
    if (gens_.empty()) throw validation_error("ideal needs at least one nonzero generator");
    std::vector<std::string> prints;
    prints.reserve(gens_.size());
    for (const auto& g : gens_) prints.push_back(g.str());
    std::sort(prints.begin(), prints.end());
    std::string blob = ring_->canonical();
    for (const auto& s : prints) {
        blob += "|";
        blob += s;
    }
    digest_ = digest_hex(blob);
}

IdealHandle IdealHandle::maximal(const RingPtr& ring) {
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < ring->nvars(); ++i) gens.push_back(Polynomial::variable(ring, i));
    return IdealHandle(ring, std::move(gens));
}

bool IdealHandle::is_maximal_ideal() const {
    std::size_t n = ring_->nvars();
    if (gens_.size() < n) return false;
    for (const auto& g : gens_)
        if (g.degree() != 1) return false;
    // Rank of the coefficient matrix of the linear forms.
    const auto& F = ring_->field();
    std::vector<std::vector<std::uint32_t>> rows;
    for (const auto& g : gens_) {
        std::vector<std::uint32_t> row(n, 0);
        for (const auto& [m, c] : g.terms()) {
            for (std::size_t i = 0; i < n; ++i)
                if (m[i] == 1) row[i] = c;
        }
        rows.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        std::uint32_t inv = F.inv(rows[rank][col]);
        for (std::size_t j = col; j < n; ++j) rows[rank][j] = F.mul(rows[rank][j], inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            std::uint32_t c = rows[r][col];
            for (std::size_t j = col; j < n; ++j)
                rows[r][j] = F.sub(rows[r][j], F.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    return rank == n;
}

const GroebnerBasis& IdealHandle::groebner(const Budget& budget, GroebnerAccumulator* acc) const {
    std::lock_guard<std::mutex> lock(box_->mu);
    if (!box_->gb) {
        std::vector<Polynomial> all = gens_;
        for (const auto& rel : ring_->relations()) all.push_back(rel);
        box_->gb = std::make_shared<const GroebnerBasis>(buchberger(all, ring_->order(), budget));
        if (acc) {
            const auto& st = box_->gb->stats();
            ++acc->bases;
            acc->spairs += st.spairs;
            acc->reductions += st.reductions;
            acc->wall_ms += st.wall_ms;
        }
    }
    return *box_->gb;
}

bool IdealHandle::has_cached_groebner() const {
    std::lock_guard<std::mutex> lock(box_->mu);
    return static_cast<bool>(box_->gb);
}

bool ideal_membership(const Polynomial& f, const IdealHandle& target, const Budget& budget,
                      GroebnerAccumulator* acc) {
    if (!f.ring()->same_ring(*target.ring()))
        throw validation_error("ring mismatch in ideal_membership");
    return normal_form(f, target.groebner(budget, acc), budget).is_zero();
}

std::uint64_t standard_monomial_count(const IdealHandle& target, std::uint64_t degree,
                                      const Budget& budget, GroebnerAccumulator* acc) {
    const auto& gb = target.groebner(budget, acc);
    std::vector<Monomial> lts;
    lts.reserve(gb.elements().size());
    for (const auto& g : gb.elements()) lts.push_back(g.leading_monomial());
    std::uint64_t count = 0;
    for_each_monomial(target.ring()->nvars(), degree, [&](const Monomial& m) {
        for (const auto& lt : lts)
            if (lt.divides(m)) return;
        ++count;
    });
    return count;
}

std::uint64_t top_nonzero_degree(const IdealHandle& target, const Budget& budget,
                                 GroebnerAccumulator* acc) {
    const auto& gb = target.groebner(budget, acc);
    std::size_t n = target.ring()->nvars();
    // Artinian test: each variable needs a pure power among the leading terms.
    std::vector<std::uint64_t> pure(n, 0);
    for (const auto& g : gb.elements()) {
        const Monomial& lt = g.leading_monomial();
        std::size_t nonzero = 0, which = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (lt[i] != 0) {
                ++nonzero;
                which = i;
            }
        }
        if (nonzero == 1 && (pure[which] == 0 || lt[which] < pure[which])) pure[which] = lt[which];
    }
    std::uint64_t bound = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (pure[i] == 0)
            throw validation_error("quotient is not Artinian: no pure power of '" +
                                   target.ring()->variables()[i] + "' among leading terms");
        bound += pure[i] - 1;
    }
    // count(d) == 0 forces count(d') == 0 for all d' > d, so binary
    // search for the last nonzero degree. count(0) >= 1: the ideal is proper.
    std::uint64_t lo = 0, hi = bound;
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (standard_monomial_count(target, mid, budget) > 0)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

}  // namespace fthresh
