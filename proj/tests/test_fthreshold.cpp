#include "doctest.h"

#include <random>

#include "fthresh/fthreshold.hpp"
#include "fthresh/parse.hpp"

using namespace fthresh;

namespace {

NuRecord make_record(std::uint64_t e, std::uint64_t q, std::uint64_t nu) {
    NuRecord r;
    r.ring_digest = "r";
    r.I_digest = "i";
    r.J_digest = "j";
    r.e = e;
    r.q = q;
    r.nu = nu;
    r.method = "socle_fastpath";
    return r;
}

}  // namespace

TEST_CASE("bracket_threshold reference intervals") {
    // F_3[x,y], I=J=m, nu = [4, 16]: [16/9, 19/9] contains 2.
    std::vector<NuRecord> recs{make_record(1, 3, 4), make_record(2, 9, 16)};
    auto iv = bracket_threshold(recs, 2, true);
    CHECK(iv.lo == Rat(Int(16), Int(9)));
    CHECK(iv.hi == Rat(Int(19), Int(9)));
    CHECK(iv.lo_certified);
    CHECK(iv.hi_certified);
    CHECK(iv.e_used == 2);
    CHECK(iv.lo <= Rat(2));
    CHECK(Rat(2) <= iv.hi);
    // Width bound (1 + mu)/p^e_used.
    CHECK(iv.hi - iv.lo <= Rat(Int(3), Int(9)));

    // F_2[x,y], I=m, J=(x^2,y^3), nu = [8, 18]: [18/4, 21/4] contains 5.
    std::vector<NuRecord> recs2{make_record(1, 2, 8), make_record(2, 4, 18)};
    auto iv2 = bracket_threshold(recs2, 2, true);
    CHECK(iv2.lo == Rat(Int(9), Int(2)));
    CHECK(iv2.hi == Rat(Int(21), Int(4)));
    CHECK(iv2.lo <= Rat(5));
    CHECK(Rat(5) <= iv2.hi);

    // Degenerate single record e=1, nu=0, mu=1: [0, 2/p].
    std::vector<NuRecord> recs3{make_record(1, 7, 0)};
    auto iv3 = bracket_threshold(recs3, 1, true);
    CHECK(iv3.lo == Rat(0));
    CHECK(iv3.hi == Rat(Int(2), Int(7)));

    // Quotient rings leave the lower endpoint uncertified.
    auto iv4 = bracket_threshold(recs, 2, false);
    CHECK_FALSE(iv4.lo_certified);
    CHECK(iv4.hi_certified);

    CHECK_THROWS_AS(bracket_threshold({}, 1, true), validation_error);
    std::vector<NuRecord> bad{make_record(2, 9, 16), make_record(1, 3, 4)};
    CHECK_THROWS_AS(bracket_threshold(bad, 2, true), validation_error);
}

TEST_CASE("reconstruct returns the unique shaped candidate or nothing") {
    RationalInterval iv;
    iv.lo = Rat(Int(16), Int(9));
    iv.hi = Rat(Int(19), Int(9));
    // With b_bound=1 the only candidates with denominator in {1, 3} are 2.
    auto res = reconstruct(iv, 3, 1);
    REQUIRE(res.value.has_value());
    CHECK(*res.value == Rat(2));
    CHECK(res.form == ReconstructionResult::Form::integer_or_p_free);
    // b_bound=8 admits 9/5, 11/6, 15/8, ... -> ambiguous -> none.
    CHECK_FALSE(reconstruct(iv, 3, 8).value.has_value());

    // Narrow interval around 1649/1099 = a/(157*7).
    RationalInterval narrow;
    Rat center(Int(1649), Int(1099));
    Rat half_width(Int(1), Int(2 * 157 * 1099));
    narrow.lo = center - half_width;
    narrow.hi = center + half_width;
    auto res2 = reconstruct(narrow, 157, 8);
    REQUIRE(res2.value.has_value());
    CHECK(*res2.value == center);
    CHECK(res2.form == ReconstructionResult::Form::p_times_b);
    CHECK(res2.a == Int(1649));
    CHECK(res2.b == Int(7));

    // [0, 1/2] with p=2, b_bound=1: 0 and 1/2 both qualify -> none.
    RationalInterval wide;
    wide.lo = Rat(0);
    wide.hi = Rat(Int(1), Int(2));
    CHECK_FALSE(reconstruct(wide, 2, 1).value.has_value());
}

TEST_CASE("reconstruct soundness on random intervals") {
    std::mt19937_64 rng(90210);
    std::uniform_int_distribution<std::uint64_t> pd(0, 2), bd(1, 6), nd(0, 40);
    const std::uint64_t primes[] = {2, 3, 5};
    for (int trial = 0; trial < 500; ++trial) {
        std::uint64_t p = primes[pd(rng)];
        std::uint64_t b = bd(rng);
        Rat lo(Int(static_cast<unsigned long>(nd(rng))), Int(static_cast<unsigned long>(bd(rng))));
        Rat hi = lo + Rat(Int(1), Int(static_cast<unsigned long>(1 + nd(rng))));
        RationalInterval iv;
        iv.lo = lo;
        iv.hi = hi;
        auto res = reconstruct(iv, p, b);
        if (!res.value) continue;
        CHECK(iv.lo <= *res.value);
        CHECK(*res.value <= iv.hi);
        Int den = res.value->den();
        if (res.form == ReconstructionResult::Form::p_times_b) {
            CHECK(divides(Int(static_cast<unsigned long>(p)), den));
            CHECK(*res.value == Rat(res.a, Int(static_cast<unsigned long>(p)) * res.b));
            CHECK(gcd(res.a, Int(static_cast<unsigned long>(p))).is_one());
        } else {
            CHECK_FALSE(divides(Int(static_cast<unsigned long>(p)), den));
        }
    }
}

TEST_CASE("denominator structure check reference values") {
    auto rep = denominator_structure_check(Rat(Int(109), Int(72)), Rat(Int(3), Int(2)), 2, 3, 2);
    CHECK_FALSE(rep.equal);
    CHECK(rep.difference == Rat(Int(1), Int(72)));
    CHECK(rep.p_divides);
    CHECK(rep.a == Int(1));
    CHECK(rep.b == Int(36));
    CHECK(rep.gcd_ok);
    CHECK(rep.ratio_bound == Rat(8));
    CHECK(rep.ratio_ok);
    // Round trip: c_inf + a/(p b) reproduces c_p exactly.
    CHECK(Rat(Int(3), Int(2)) + Rat(rep.a, Int(2) * rep.b) == Rat(Int(109), Int(72)));

    auto eq = denominator_structure_check(Rat(Int(3), Int(2)), Rat(Int(3), Int(2)), 5, 2, 2);
    CHECK(eq.equal);

    auto rep3 =
        denominator_structure_check(Rat(Int(1649), Int(1099)), Rat(Int(3), Int(2)), 157, 2, 2);
    CHECK(rep3.difference == Rat(Int(1), Int(2198)));
    CHECK(rep3.a == Int(1));
    CHECK(rep3.b == Int(14));
    CHECK(rep3.gcd_ok);

    CHECK_THROWS_AS(
        denominator_structure_check(Rat(Int(3), Int(2)), Rat(Int(5), Int(2)), 2, 3, 2),
        validation_error);
}

TEST_CASE("verify_remark42 enforces the side conditions") {
    CHECK_THROWS_AS(verify_remark42(7, 151, 1), validation_error);  // 151 != +-2 mod 31
    CHECK_THROWS_AS(verify_remark42(7, 31, 1), validation_error);   // p < d^2
    CHECK_THROWS_AS(verify_remark42(6, 157, 1), validation_error);  // even d
    CHECK_THROWS_AS(verify_remark42(5, 157, 1), validation_error);  // d < 7
}

TEST_CASE("verify_remark42 paper-value arithmetic") {
    // Precondition-passing small run; full e=1 run lives in acceptance.
    auto rep = verify_remark42(7, 157, 1);
    CHECK(rep.paper_value == Rat(Int(1649), Int(1099)));
    CHECK(rep.denominator.p_divides);
    CHECK_FALSE(rep.denominator.p_power);
    CHECK(rep.denominator.a == Int(1649));
    CHECK(rep.denominator.b == Int(7));
    CHECK(rep.denominator_check_ok);
    REQUIRE(rep.windows.size() == 1);
    CHECK(rep.windows[0].window_lo == Int(232));
    CHECK(rep.windows[0].window_hi == Int(235));
    CHECK(rep.records[0].nu == 238);
    // The genuine engine value 238 clears the certified lower window and
    // violates the heuristic upper one; the report must carry the finding.
    CHECK(rep.windows[0].lower_ok);
    CHECK_FALSE(rep.windows[0].upper_ok);
    CHECK_FALSE(rep.windows[0].upper_applicable);
    CHECK(rep.paper_value_below_upper);
    CHECK_FALSE(rep.paper_value_in_interval);
    CHECK_FALSE(rep.verdict);
}

TEST_CASE("interval nesting on computed sequences") {
    auto R = GradedRing::create(2, {"x", "y"});
    auto m = IdealHandle::maximal(R);
    std::vector<std::string> gens{"x^2", "y^3"};
    std::vector<Polynomial> ps;
    for (const auto& s : gens) ps.push_back(parse_polynomial(s, R));
    IdealHandle J(R, ps);
    auto records = nu_sequence(m, J, 3);
    std::uint64_t mu = m.ngens();
    for (std::size_t k = 1; k <= records.size(); ++k) {
        auto iv = bracket_threshold(std::span(records.data(), k), mu, true);
        if (k > 1) {
            auto prev = bracket_threshold(std::span(records.data(), k - 1), mu, true);
            CHECK(prev.lo <= iv.lo);
            CHECK(iv.hi <= prev.hi);
        }
    }
}
