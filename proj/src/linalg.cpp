#include "fthresh/linalg.hpp"

#include <algorithm>
#include <chrono>

namespace fthresh {

namespace {
using Clock = std::chrono::steady_clock;
}

DegreeKernel::DegreeKernel(const IdealHandle& target, std::uint64_t degree,
                           const EchelonBudget& budget)
    : ring_(target.ring()), degree_(degree), budget_(budget) {
    auto start = Clock::now();
    std::vector<Polynomial> poly_gens;
    auto classify = [&](const Polynomial& g) {
        if (g.is_monomial())
            mono_gens_.push_back(g.leading_monomial());
        else
            poly_gens.push_back(g);
    };
    for (const auto& g : target.generators()) classify(g);
    for (const auto& rel : ring_->relations()) classify(rel);

    // Drop redundant monomial generators (divisible by another one).
    std::sort(mono_gens_.begin(), mono_gens_.end(),
              [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
    std::vector<Monomial> minimal;
    for (const auto& m : mono_gens_) {
        bool redundant = false;
        for (const auto& k : minimal)
            if (k.divides(m)) {
                redundant = true;
                break;
            }
        if (!redundant) minimal.push_back(m);
    }
    mono_gens_ = std::move(minimal);

    basis_.reserve(1024);
    std::uint64_t scanned = 0;
    for_each_monomial(ring_->nvars(), degree_, [&](const Monomial& m) {
        if ((++scanned & 0xffff) == 0) {
            auto ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
            if (static_cast<std::uint64_t>(ms) > budget_.max_ms)
                throw resource_limit_error("linear-algebra time budget exhausted while "
                                           "enumerating the degree-" +
                                           std::to_string(degree_) + " basis");
        }
        for (const auto& g : mono_gens_)
            if (g.divides(m)) return;
        basis_.push_back(m);
    });
    if (basis_.size() > 0xffffffffull)
        throw resource_limit_error("degree slice exceeds the 32-bit column limit");
    MonomialOrder order = ring_->order();
    std::sort(basis_.begin(), basis_.end(),
              [order](const Monomial& a, const Monomial& b) { return mono_greater(a, b, order); });
    column_of_.reserve(basis_.size() * 2);
    for (std::uint32_t i = 0; i < basis_.size(); ++i) column_of_.emplace(basis_[i], i);
    pivot_of_col_.assign(basis_.size(), -1);

    std::uint64_t rows_done = 0;
    for (const auto& g : poly_gens) {
        std::uint64_t dg = g.degree();
        if (dg > degree_) continue;
        for_each_monomial(ring_->nvars(), degree_ - dg, [&](const Monomial& shift) {
            absorb(project(g, shift));
            if ((++rows_done & 0xfff) == 0) {
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
                              .count();
                if (static_cast<std::uint64_t>(ms) > budget_.max_ms)
                    throw resource_limit_error("linear-algebra time budget exhausted");
            }
        });
    }
}

DegreeKernel::SparseRow DegreeKernel::project(const Polynomial& f, const Monomial& shift) const {
    SparseRow row;
    row.reserve(f.nterms());
    for (const auto& [m, c] : f.terms()) {
        Monomial t = m * shift;
        auto it = column_of_.find(t);
        if (it == column_of_.end()) continue;  // killed by a monomial generator
        row.emplace_back(it->second, c);
    }
    std::sort(row.begin(), row.end());
    return row;
}

DegreeKernel::SparseRow DegreeKernel::reduce(SparseRow row) const {
    const auto& F = ring_->field();
    SparseRow merged;
    while (!row.empty()) {
        auto [col, coeff] = row.front();
        std::int64_t p = pivot_of_col_[col];
        if (p < 0) return row;
        const SparseRow& piv = pivots_[static_cast<std::size_t>(p)];
        // row -= coeff * piv  (piv is monic at `col`)
        merged.clear();
        merged.reserve(row.size() + piv.size());
        std::size_t i = 0, j = 0;
        while (i < row.size() && j < piv.size()) {
            if (row[i].first == piv[j].first) {
                std::uint32_t c = F.sub(row[i].second, F.mul(coeff, piv[j].second));
                if (c != 0) merged.emplace_back(row[i].first, c);
                ++i, ++j;
            } else if (row[i].first < piv[j].first) {
                merged.push_back(row[i]);
                ++i;
            } else {
                merged.emplace_back(piv[j].first, F.neg(F.mul(coeff, piv[j].second)));
                ++j;
            }
        }
        for (; i < row.size(); ++i) merged.push_back(row[i]);
        for (; j < piv.size(); ++j)
            merged.emplace_back(piv[j].first, F.neg(F.mul(coeff, piv[j].second)));
        row.swap(merged);
    }
    return row;
}

void DegreeKernel::absorb(SparseRow row) {
    row = reduce(std::move(row));
    if (row.empty()) return;
    const auto& F = ring_->field();
    std::uint32_t inv = F.inv(row.front().second);
    if (inv != 1)
        for (auto& [c, v] : row) v = F.mul(v, inv);
    nnz_ += row.size();
    if (nnz_ > budget_.max_nnz)
        throw resource_limit_error("linear-algebra fill budget exhausted (" +
                                   std::to_string(budget_.max_nnz) + " entries)");
    pivot_of_col_[row.front().first] = static_cast<std::int64_t>(pivots_.size());
    pivots_.push_back(std::move(row));
}

bool DegreeKernel::contains(const Polynomial& f) const {
    if (f.is_zero()) return true;
    if (!f.ring()->same_ring(*ring_)) throw validation_error("ring mismatch in containment query");
    if (!f.is_homogeneous() || f.degree() != degree_)
        throw validation_error("containment query degree mismatch");
    Monomial unit(ring_->nvars());
    return reduce(project(f, unit)).empty();
}

std::uint64_t top_nonzero_degree_la(const IdealHandle& target, std::uint64_t bound,
                                    const EchelonBudget& budget) {
    auto quotient_dim = [&](std::uint64_t d) {
        return DegreeKernel(target, d, budget).quotient_dim();
    };
    // quotient_dim(d) == 0 forces vanishing above d; binary search with
    // lo always nonzero, hi always zero.
    std::uint64_t lo = 0, hi = bound + 1;
    if (quotient_dim(0) == 0) throw validation_error("unit ideal has no top nonzero degree");
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (quotient_dim(mid) > 0)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace fthresh
