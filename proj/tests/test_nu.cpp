#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "fthresh/cache.hpp"
#include "fthresh/digest.hpp"
#include "fthresh/fthreshold.hpp"
#include "fthresh/nu.hpp"
#include "fthresh/parse.hpp"
#include "test_util.hpp"

using namespace fthresh;

namespace {

IdealHandle ideal_from(const RingPtr& ring, const std::vector<std::string>& gens) {
    std::vector<Polynomial> ps;
    for (const auto& s : gens) ps.push_back(parse_polynomial(s, ring));
    return IdealHandle(ring, std::move(ps));
}

std::vector<std::string> gen_strings(const IdealHandle& I) {
    std::vector<std::string> out;
    for (const auto& g : I.generators()) out.push_back(g.str());
    std::sort(out.begin(), out.end());
    return out;
}

// Exhaustive-enumeration oracle for nu_e(m, J) with J a monomial ideal:
// walks r upward, checking every degree-r monomial against the
// q-th-powered generators by divisibility alone.
std::uint64_t nu_oracle_monomial(const std::vector<Monomial>& j_gens, std::size_t nvars,
                                 std::uint64_t q) {
    std::vector<Monomial> powered;
    powered.reserve(j_gens.size());
    for (const auto& g : j_gens) powered.push_back(g.frobenius(q));
    auto contained = [&](std::uint64_t r) {
        bool all = true;
        for_each_monomial(nvars, r, [&](const Monomial& m) {
            if (!all) return;
            for (const auto& g : powered)
                if (g.divides(m)) return;
            all = false;
        });
        return all;
    };
    std::uint64_t r = 0;
    while (!contained(r)) ++r;
    return r - 1;
}

}  // namespace

TEST_CASE("bracket power reference values") {
    auto R157 = GradedRing::create(157, {"x", "y", "z"});
    auto m = IdealHandle::maximal(R157);
    CHECK(gen_strings(bracket_power(m, 157)) ==
          std::vector<std::string>{"x^157", "y^157", "z^157"});

    auto R2 = GradedRing::create(2, {"x", "y"});
    auto principal = ideal_from(R2, {"x + y"});
    CHECK(gen_strings(bracket_power(principal, 2)) == std::vector<std::string>{"x^2 + y^2"});

    auto J = ideal_from(R2, {"x^2", "y^3"});
    CHECK(gen_strings(bracket_power(J, 2)) == std::vector<std::string>{"x^4", "y^6"});

    CHECK_THROWS_AS(bracket_power(J, 6), validation_error);
    CHECK_THROWS_AS(bracket_power(J, 3), validation_error);

    // Composition: [p] twice equals [p^2] as generator sets.
    auto R3 = GradedRing::create(3, {"x", "y"});
    auto J3 = ideal_from(R3, {"x + y", "x*y", "y^2"});
    CHECK(gen_strings(bracket_power(bracket_power(J3, 3), 3)) ==
          gen_strings(bracket_power(J3, 9)));
}

TEST_CASE("ideal power reference values") {
    auto R3 = GradedRing::create(3, {"x", "y"});
    auto m = IdealHandle::maximal(R3);
    CHECK(gen_strings(ideal_power(m, 2)) == std::vector<std::string>{"x*y", "x^2", "y^2"});
    auto unit = ideal_power(m, 0);
    CHECK(unit.ngens() == 1);
    CHECK(unit.generators()[0].str() == "1");

    auto Rz = GradedRing::create(5, {"x", "y", "z"});
    CHECK(ideal_power(IdealHandle::maximal(Rz), 3).ngens() == 10);
}

TEST_CASE("containment decisions match on reference queries") {
    auto R3 = GradedRing::create(3, {"x", "y"});
    auto m = IdealHandle::maximal(R3);
    auto K22 = ideal_from(R3, {"x^2", "y^2"});
    for (NuMethod method :
         {NuMethod::groebner, NuMethod::linear_algebra, NuMethod::socle_fastpath}) {
        CHECK(contains_power({m, 3, K22}, method));
        CHECK_FALSE(contains_power({m, 2, K22}, method));
    }
    auto R2 = GradedRing::create(2, {"x", "y"});
    auto K46 = ideal_from(R2, {"x^4", "y^6"});
    auto m2 = IdealHandle::maximal(R2);
    for (NuMethod method :
         {NuMethod::groebner, NuMethod::linear_algebra, NuMethod::socle_fastpath}) {
        CHECK_FALSE(contains_power({m2, 8, K46}, method));
        CHECK(contains_power({m2, 9, K46}, method));
    }
}

TEST_CASE("nu reference values") {
    auto R2 = GradedRing::create(2, {"x", "y"});
    auto m2 = IdealHandle::maximal(R2);
    CHECK(nu(m2, m2, 1).nu == 2);

    auto R3 = GradedRing::create(3, {"x", "y"});
    auto m3 = IdealHandle::maximal(R3);
    CHECK(nu(m3, m3, 2).nu == 16);

    auto J = ideal_from(R2, {"x^2", "y^3"});
    auto rec = nu(m2, J, 1);
    CHECK(rec.nu == 8);
    CHECK(rec.q == 2);
    CHECK(rec.method == "socle_fastpath");

    // All three methods produce the same value.
    for (NuMethod method :
         {NuMethod::groebner, NuMethod::linear_algebra, NuMethod::socle_fastpath}) {
        NuOptions opts;
        opts.method = method;
        CHECK(nu(m2, J, 1, opts).nu == 8);
        CHECK(nu(m2, J, 2, opts).nu == 18);
    }
}

TEST_CASE("nu sequences") {
    auto R2 = GradedRing::create(2, {"x", "y"});
    auto m2 = IdealHandle::maximal(R2);
    auto seq = nu_sequence(m2, m2, 3);
    REQUIRE(seq.size() == 3);
    CHECK(seq[0].nu == 2);
    CHECK(seq[1].nu == 6);
    CHECK(seq[2].nu == 14);

    auto R1 = GradedRing::create(3, {"x"});
    auto mx = IdealHandle::maximal(R1);
    auto seq1 = nu_sequence(mx, mx, 2);
    CHECK(seq1[0].nu == 2);
    CHECK(seq1[1].nu == 8);

    auto J = ideal_from(R2, {"x^2", "y^3"});
    auto seq2 = nu_sequence(m2, J, 2);
    CHECK(seq2[0].nu == 8);
    CHECK(seq2[1].nu == 18);

    CHECK_THROWS_AS(nu_sequence(m2, m2, 0), validation_error);
}

TEST_CASE("pigeonhole identity in polynomial rings") {
    std::vector<std::string> names{"x", "y", "z"};
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (std::size_t n = 1; n <= 3; ++n) {
            auto R = GradedRing::create(
                p, std::vector<std::string>(names.begin(), names.begin() + n));
            auto m = IdealHandle::maximal(R);
            std::uint64_t q = 1;
            for (std::uint64_t e = 1; e <= 2; ++e) {
                q *= p;
                CHECK(nu(m, m, e).nu == n * (q - 1));
            }
        }
    }
}

TEST_CASE("nu rejects J that is not m-primary and I outside the maximal ideal") {
    auto R = GradedRing::create(2, {"x", "y"});
    auto m = IdealHandle::maximal(R);
    auto Jx = ideal_from(R, {"x"});
    CHECK_THROWS_AS(nu(m, Jx, 1), validation_error);
    auto unit = ideal_from(R, {"1"});
    CHECK_THROWS_AS(nu(unit, m, 1), validation_error);
}

TEST_CASE("kernel agreement on random monomial ideals with oracle") {
    std::mt19937_64 rng(314159);
    for (std::uint32_t p : {2u, 3u}) {
        auto R = GradedRing::create(p, {"x", "y", "z"});
        auto m = IdealHandle::maximal(R);
        for (int trial = 0; trial < 12; ++trial) {
            std::uniform_int_distribution<std::uint64_t> powd(1, 4);
            std::vector<Monomial> mono_gens;
            std::vector<Polynomial> gens;
            for (std::size_t i = 0; i < 3; ++i) {
                Monomial pure(3);
                pure[i] = powd(rng);
                mono_gens.push_back(pure);
                gens.push_back(Polynomial::monomial(R, pure, 1));
            }
            std::uniform_int_distribution<std::uint64_t> e3(0, 3);
            Monomial extra(3);
            extra[0] = e3(rng), extra[1] = e3(rng), extra[2] = e3(rng);
            if (!extra.is_one()) {
                mono_gens.push_back(extra);
                gens.push_back(Polynomial::monomial(R, extra, 1));
            }
            IdealHandle J(R, gens);
            for (std::uint64_t e = 1; e <= 2; ++e) {
                std::uint64_t q = e == 1 ? p : p * p;
                std::uint64_t expected = nu_oracle_monomial(mono_gens, 3, q);
                for (NuMethod method : {NuMethod::groebner, NuMethod::linear_algebra,
                                        NuMethod::socle_fastpath}) {
                    NuOptions opts;
                    opts.method = method;
                    CHECK(nu(m, J, e, opts).nu == expected);
                }
            }
        }
    }
}

TEST_CASE("groebner and linear-algebra counts agree on mixed ideals") {
    std::mt19937_64 rng(2718);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (auto order : {MonomialOrder::grevlex, MonomialOrder::lex}) {
            for (std::size_t nvars : {2u, 3u}) {
                std::vector<std::string> names{"x", "y", "z"};
                auto R = GradedRing::create(p, {names.begin(), names.begin() + nvars}, {}, order);
                for (int trial = 0; trial < 6; ++trial) {
                    std::vector<Polynomial> gens;
                    std::uniform_int_distribution<int> deg(1, 4);
                    for (int i = 0; i < 3; ++i)
                        gens.push_back(testutil::random_homogeneous(R, rng, deg(rng), 3));
                    IdealHandle K(R, gens);
                    for (std::uint64_t d = 0; d <= 7; ++d) {
                        CHECK(standard_monomial_count(K, d) == DegreeKernel(K, d).quotient_dim());
                    }
                }
            }
        }
    }
}

TEST_CASE("containment monotonicity spot checks") {
    std::mt19937_64 rng(161803);
    for (std::uint32_t p : {2u, 3u}) {
        auto R = GradedRing::create(p, {"x", "y"});
        auto m = IdealHandle::maximal(R);
        for (int trial = 0; trial < 10; ++trial) {
            std::uniform_int_distribution<std::uint64_t> powd(1, 3), rd(1, 12);
            Monomial a(2), b(2);
            a[0] = powd(rng);
            b[1] = powd(rng);
            IdealHandle J(R, {Polynomial::monomial(R, a, 1), Polynomial::monomial(R, b, 1)});
            auto K = bracket_power(J, p);
            std::uint64_t r = rd(rng);
            for (NuMethod method : {NuMethod::groebner, NuMethod::linear_algebra}) {
                if (contains_power({m, r, K}, method))
                    CHECK(contains_power({m, r + 1, K}, method));
                else
                    CHECK_FALSE(contains_power({m, r > 0 ? r - 1 : 0, K}, method));
            }
        }
    }
}

TEST_CASE("frobenius witness growth in polynomial rings") {
    std::mt19937_64 rng(1618);
    for (std::uint32_t p : {2u, 3u}) {
        auto R = GradedRing::create(p, {"x", "y"});
        auto m = IdealHandle::maximal(R);
        for (int trial = 0; trial < 8; ++trial) {
            std::uniform_int_distribution<std::uint64_t> powd(1, 3);
            Monomial a(2), b(2);
            a[0] = powd(rng);
            b[1] = powd(rng);
            IdealHandle J(R, {Polynomial::monomial(R, a, 1), Polynomial::monomial(R, b, 1)});
            auto seq = nu_sequence(m, J, 2);
            CHECK(seq[1].nu >= p * seq[0].nu);
        }
    }
}

TEST_CASE("principal I: the F-pure-threshold special case") {
    // I = (f), J = m. With a monomial bracket target, membership of f^r
    // is settled by term divisibility alone, giving an independent check.
    for (std::uint32_t p : {5u, 7u}) {
        auto R = GradedRing::create(p, {"x", "y"});
        auto f = parse_polynomial("x^2*y + x*y^2", R);  // x y (x + y)
        IdealHandle I(R, {f});
        auto m = IdealHandle::maximal(R);
        for (std::uint64_t e = 1; e <= 2; ++e) {
            std::uint64_t q = e == 1 ? p : p * p;
            auto in_bracket = [&](const Polynomial& g) {
                for (const auto& [mono, c] : g.terms())
                    if (mono[0] < q && mono[1] < q) return false;
                return true;
            };
            std::uint64_t r = 0;
            while (!in_bracket(poly_pow(f, r + 1))) ++r;
            std::uint64_t expected = r;
            for (NuMethod method : {NuMethod::groebner, NuMethod::linear_algebra}) {
                NuOptions opts;
                opts.method = method;
                CHECK(nu(I, m, e, opts).nu == expected);
            }
        }
        auto records = nu_sequence(I, m, 2);
        auto iv = bracket_threshold(records, I.ngens(), true);
        CHECK(iv.lo <= iv.hi);
        CHECK(iv.hi - iv.lo <= Rat(Int(2), Int(static_cast<unsigned long>(p * p))));
    }
}

TEST_CASE("speculative probing agrees with sequential search") {
    auto R = GradedRing::create(3, {"x", "y", "z"});
    auto m = IdealHandle::maximal(R);
    auto J = ideal_from(R, {"x^2", "y^3", "z^2", "x*y"});
    NuOptions seq_opts;
    seq_opts.method = NuMethod::groebner;
    NuOptions par_opts;
    par_opts.method = NuMethod::groebner;
    par_opts.threads = 2;
    CHECK(nu(m, J, 2, seq_opts).nu == nu(m, J, 2, par_opts).nu);
}

TEST_CASE("cache store roundtrip and corruption handling") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "fthresh_cache_test";
    fs::create_directories(dir);
    auto path = dir / "nu_cache.jsonl";
    fs::remove(path);

    auto R = GradedRing::create(2, {"x", "y"});
    auto m = IdealHandle::maximal(R);

    NuStats stats;
    NuOptions opts;
    opts.stats = &stats;
    {
        CacheStore cache(path);
        auto seq = nu_sequence(m, m, 3, &cache, opts);
        CHECK(cache.size() == 3);
    }
    CHECK(stats.containment_probes > 0);

    // Warm rerun: zero containment probes, three hits.
    NuStats warm;
    NuOptions warm_opts;
    warm_opts.stats = &warm;
    {
        CacheStore cache(path);
        auto seq = nu_sequence(m, m, 3, &cache, warm_opts);
        CHECK(seq[2].nu == 14);
        CHECK(warm.cache_hits == 3);
        CHECK(warm.containment_probes == 0);
    }

    // Corrupt trailing line is truncated away on open.
    {
        std::ofstream app(path, std::ios::app);
        app << "{\"ring_digest\": \"tr";
    }
    {
        CacheStore cache(path);
        CHECK(cache.size() == 3);
    }
    {
        std::ifstream in(path);
        std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
        CHECK(content.find("\"tr") == std::string::npos);
    }

    // Exclusive lock admits a single writer.
    {
        std::ofstream out(path, std::ios::trunc);
    }
    {
        CacheStore first(path, /*exclusive_lock=*/true);
        CHECK_THROWS_AS(CacheStore(path, /*exclusive_lock=*/true), validation_error);
        CacheStore reader(path, /*exclusive_lock=*/false);  // readers untouched
    }
    {
        CacheStore again(path, /*exclusive_lock=*/true);  // released with the owner
    }

    // Corrupt interior line is an error.
    {
        std::ofstream out(path, std::ios::trunc);
        out << "garbage\n";
        CacheStore good(path);  // trailing-only corruption: tolerated, file truncated
        CHECK(good.size() == 0);
        std::ofstream out2(path, std::ios::trunc);
        out2 << "garbage\n";
        NuRecord rec;
        rec.ring_digest = rec.I_digest = rec.J_digest = "00";
        out2 << CacheStore::serialize(rec) << "\n";
    }
    CHECK_THROWS_AS(CacheStore{path}, validation_error);
    fs::remove_all(dir);
}
