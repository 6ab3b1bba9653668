#include "fthresh/parse.hpp"

#include <cctype>
#include <string>

namespace fthresh {

namespace {

class Parser {
  public:
    Parser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

    Polynomial run() {
        TermList terms;
        skip_ws();
        if (at_end()) fail("empty polynomial expression");
        bool negate = false;
        parse_term(terms, negate);
        while (true) {
            skip_ws();
            if (at_end()) break;
            char c = peek();
            if (c == '+' || c == '-') {
                ++pos_;
                negate = (c == '-');
                parse_term(terms, negate);
            } else {
                fail(std::string("expected '+' or '-', found '") + c + "'");
            }
        }
        return Polynomial::from_terms(ring_, std::move(terms));
    }

  private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw validation_error("parse error at position " + std::to_string(pos_ + 1) + ": " + what);
    }

    std::uint32_t parse_coeff() {
        const auto& F = ring_->field();
        std::uint64_t acc = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            acc = acc * 10 + static_cast<std::uint64_t>(peek() - '0');
            acc %= F.p();
            ++pos_;
        }
        return static_cast<std::uint32_t>(acc);
    }

    std::uint64_t parse_exponent() {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected an exponent after '^'");
        std::uint64_t acc = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            std::uint64_t digit = static_cast<std::uint64_t>(peek() - '0');
            if (acc > (Monomial::kMaxExponent - digit) / 10) fail("exponent overflow");
            acc = acc * 10 + digit;
            ++pos_;
        }
        return acc;
    }

    std::string parse_identifier() {
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    void parse_term(TermList& terms, bool negate) {
        skip_ws();
        if (at_end()) fail("expected a term");
        const auto& F = ring_->field();
        bool saw_factor = false;
        std::uint32_t coeff = 1 % F.p();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_coeff();
            saw_factor = true;
        }
        Monomial mono(ring_->nvars());
        while (true) {
            skip_ws();
            std::size_t before_star = pos_;
            bool consumed_star = false;
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip_ws();
                consumed_star = true;
            }
            if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) {
                if (consumed_star) fail("expected a variable after '*'");
                pos_ = before_star;
                break;
            }
            std::size_t var_pos = pos_;
            std::string name = parse_identifier();
            std::size_t idx = ring_->var_index(name);
            if (idx == GradedRing::npos) {
                pos_ = var_pos;
                fail("unknown variable '" + name + "'");
            }
            std::uint64_t exp = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                ++pos_;
                skip_ws();
                exp = parse_exponent();
            }
            std::uint64_t merged = mono[idx] + exp;
            if (merged < mono[idx] || merged > Monomial::kMaxExponent) fail("exponent overflow");
            mono[idx] = merged;
            saw_factor = true;
        }
        if (!saw_factor) fail("expected a coefficient or a variable");
        if (negate) coeff = F.neg(coeff);
        terms.emplace_back(std::move(mono), coeff);
    }

    std::string_view text_;
    RingPtr ring_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, RingPtr ring) {
    return Parser(text, std::move(ring)).run();
}

}  // namespace fthresh
