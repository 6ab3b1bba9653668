#include "fthresh/ring.hpp"

#include <cctype>

#include "fthresh/parse.hpp"
#include "fthresh/poly.hpp"

namespace fthresh {

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

RingPtr GradedRing::create(std::uint64_t p, std::vector<std::string> variables,
                           const std::vector<std::string>& relations, MonomialOrder order) {
    PrimeField field(p);
    if (variables.empty()) throw validation_error("ring needs at least one variable");
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (!valid_identifier(variables[i]))
            throw validation_error("invalid variable name '" + variables[i] + "'");
        for (std::size_t j = i + 1; j < variables.size(); ++j)
            if (variables[i] == variables[j])
                throw validation_error("duplicate variable name '" + variables[i] + "'");
    }

    auto bare = RingPtr(new GradedRing(field, variables, order));
    std::vector<TermList> relation_terms;
    std::vector<std::string> relation_prints;
    for (const auto& text : relations) {
        Polynomial rel = parse_polynomial(text, bare);
        if (rel.is_zero()) throw validation_error("zero relation '" + text + "'");
        if (!rel.is_homogeneous())
            throw validation_error("relation '" + text + "' is not homogeneous");
        relation_prints.push_back(rel.str());
        relation_terms.push_back(rel.terms());
    }

    auto ring = std::shared_ptr<GradedRing>(new GradedRing(field, std::move(variables), order));
    ring->relation_terms_ = std::move(relation_terms);

    std::string canon = "F_" + std::to_string(field.p()) + "[";
    for (std::size_t i = 0; i < ring->vars_.size(); ++i) {
        if (i) canon += ",";
        canon += ring->vars_[i];
    }
    canon += "]";
    if (!relation_prints.empty()) {
        canon += "/(";
        for (std::size_t i = 0; i < relation_prints.size(); ++i) {
            if (i) canon += ", ";
            canon += relation_prints[i];
        }
        canon += ")";
    }
    canon += order == MonomialOrder::grevlex ? " grevlex" : " lex";
    ring->canonical_ = std::move(canon);
    return ring;
}

Polynomial GradedRing::relation(std::size_t i) const {
    return Polynomial::from_terms(shared_from_this(), relation_terms_.at(i));
}

std::vector<Polynomial> GradedRing::relations() const {
    std::vector<Polynomial> out;
    out.reserve(relation_terms_.size());
    for (std::size_t i = 0; i < relation_terms_.size(); ++i) out.push_back(relation(i));
    return out;
}

std::size_t GradedRing::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return npos;
}

}  // namespace fthresh
