#include "fthresh/rational.hpp"

#include <cctype>
#include <ostream>

namespace fthresh {

Int::Int(const std::string& s) {
    if (mpz_init_set_str(z_, s.c_str(), 10) != 0) {
        mpz_clear(z_);
        mpz_init(z_);
        throw validation_error("not an integer literal: '" + s + "'");
    }
}

Int fdiv(const Int& a, const Int& b) {
    if (b.is_zero()) throw validation_error("integer division by zero");
    Int r;
    mpz_fdiv_q(r.z_, a.z_, b.z_);
    return r;
}

Int cdiv(const Int& a, const Int& b) {
    if (b.is_zero()) throw validation_error("integer division by zero");
    Int r;
    mpz_cdiv_q(r.z_, a.z_, b.z_);
    return r;
}

Int fmod(const Int& a, const Int& b) {
    if (b.is_zero()) throw validation_error("integer division by zero");
    Int r;
    mpz_fdiv_r(r.z_, a.z_, b.z_);
    return r;
}

bool Int::fits_u64() const {
    if (sign() < 0) return false;
    return mpz_sizeinbase(z_, 2) <= 64;
}

std::uint64_t Int::to_u64() const {
    if (!fits_u64()) throw validation_error("integer out of 64-bit range: " + str());
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, z_);
    return out;
}

std::string Int::str() const {
    char* raw = mpz_get_str(nullptr, 10, z_);
    std::string s(raw);
    void (*freefn)(void*, size_t) = nullptr;
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(raw, s.size() + 1);
    return s;
}

std::ostream& operator<<(std::ostream& os, const Int& v) { return os << v.str(); }

Rat::Rat(const Int& num, const Int& den) : Rat() {
    if (den.is_zero()) throw validation_error("rational with zero denominator");
    mpq_set_num(q_, num.raw());
    mpq_set_den(q_, den.raw());
    mpq_canonicalize(q_);
}

Rat Rat::parse(const std::string& text) {
    std::string num = text;
    std::string den = "1";
    if (auto slash = text.find('/'); slash != std::string::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    auto trim = [](std::string& s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    };
    trim(num);
    trim(den);
    if (num.empty() || den.empty()) throw validation_error("not a rational literal: '" + text + "'");
    return Rat(Int(num), Int(den));
}

Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw validation_error("rational division by zero");
    Rat r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
}

bool Rat::is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

Int Rat::floor() const {
    Int r;
    mpz_fdiv_q(r.raw(), mpq_numref(q_), mpq_denref(q_));
    return r;
}

Int Rat::ceil() const {
    Int r;
    mpz_cdiv_q(r.raw(), mpq_numref(q_), mpq_denref(q_));
    return r;
}

std::string Rat::str() const { return num().str() + "/" + den().str(); }

std::string Rat::decimal(std::size_t places) const {
    Int n = num();
    Int d = den();
    bool negative = n.sign() < 0;
    if (negative) n = -n;
    Int whole = fdiv(n, d);
    Int rem = n - whole * d;
    std::string out = (negative ? "-" : "") + whole.str();
    if (places == 0) return out;
    out += '.';
    for (std::size_t i = 0; i < places; ++i) {
        rem *= 10;
        Int digit = fdiv(rem, d);
        out += static_cast<char>('0' + digit.to_u64());
        rem -= digit * d;
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rat& v) { return os << v.str(); }

}  // namespace fthresh
