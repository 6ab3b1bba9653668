#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fthresh/cache.hpp"
#include "fthresh/fthreshold.hpp"
#include "fthresh/gieseker.hpp"
#include "fthresh/nu.hpp"
#include "fthresh/parse.hpp"

using namespace fthresh;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json rat_json(const Rat& r) { return r.str(); }
ordered_json int_json(const Int& v) { return v.str(); }

ordered_json read_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw validation_error(std::string(what) + " file '" + path + "' cannot be opened");
    ordered_json j = ordered_json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded())
        throw validation_error(std::string(what) + " file '" + path + "' is not valid JSON");
    return j;
}

RingPtr load_ring(const std::string& path) {
    ordered_json j = read_json_file(path, "ring");
    if (!j.contains("vars") || !j["vars"].is_array())
        throw validation_error("ring file '" + path + "': field 'vars' must be an array of names");
    if (!j.contains("char") || !j["char"].is_number_unsigned())
        throw validation_error("ring file '" + path + "': field 'char' must be a prime number");
    std::vector<std::string> vars;
    for (const auto& v : j["vars"]) {
        if (!v.is_string())
            throw validation_error("ring file '" + path + "': field 'vars' must hold strings");
        vars.push_back(v.get<std::string>());
    }
    std::vector<std::string> relations;
    if (j.contains("relations")) {
        if (!j["relations"].is_array())
            throw validation_error("ring file '" + path + "': field 'relations' must be an array");
        for (const auto& r : j["relations"]) relations.push_back(r.get<std::string>());
    }
    MonomialOrder order = MonomialOrder::grevlex;
    if (j.contains("order")) {
        std::string o = j["order"].get<std::string>();
        if (o == "lex")
            order = MonomialOrder::lex;
        else if (o != "grevlex")
            throw validation_error("ring file '" + path +
                                   "': field 'order' must be 'grevlex' or 'lex'");
    }
    return GradedRing::create(j["char"].get<std::uint64_t>(), std::move(vars), relations, order);
}

IdealHandle load_ideal(const std::string& path, const RingPtr& ring) {
    ordered_json j = read_json_file(path, "ideal");
    if (!j.contains("gens") || !j["gens"].is_array() || j["gens"].empty())
        throw validation_error("ideal file '" + path +
                               "': field 'gens' must be a nonempty array of polynomials");
    std::vector<Polynomial> gens;
    for (const auto& g : j["gens"]) gens.push_back(parse_polynomial(g.get<std::string>(), ring));
    return IdealHandle(ring, std::move(gens));
}

ordered_json record_json(const NuRecord& r) {
    ordered_json j;
    j["ring_digest"] = r.ring_digest;
    j["I_digest"] = r.I_digest;
    j["J_digest"] = r.J_digest;
    j["e"] = r.e;
    j["q"] = r.q;
    j["nu"] = r.nu;
    j["method"] = r.method;
    j["wall_ms"] = r.wall_ms;
    return j;
}

ordered_json interval_json(const RationalInterval& iv) {
    ordered_json j;
    j["lo"] = rat_json(iv.lo);
    j["hi"] = rat_json(iv.hi);
    j["lo_certified"] = iv.lo_certified;
    j["hi_certified"] = iv.hi_certified;
    j["e_used"] = iv.e_used;
    return j;
}

ordered_json stats_json(const NuStats& s) {
    ordered_json j;
    j["containment_probes"] = s.containment_probes.load();
    j["cache_hits"] = s.cache_hits.load();
    j["gb_bases"] = s.gb.bases.load();
    j["gb_spairs"] = s.gb.spairs.load();
    j["gb_reductions"] = s.gb.reductions.load();
    j["gb_wall_ms"] = s.gb.wall_ms.load();
    return j;
}

struct CommonOpts {
    std::string cache_path;
    unsigned threads = 1;
    std::uint64_t budget_ms = 0;
    std::string method = "auto";

    NuOptions nu_options(NuStats* stats) const {
        NuOptions o;
        o.method = nu_method_from_string(method);
        o.threads = threads;
        if (budget_ms > 0) {
            o.gb_budget.max_ms = budget_ms;
            o.la_budget.max_ms = budget_ms;
        }
        o.stats = stats;
        return o;
    }

    std::optional<CacheStore> open_cache() const {
        std::string path = cache_path;
        if (path.empty()) {
            if (const char* env = std::getenv("FTHRESH_CACHE")) path = env;
        }
        if (path.empty()) return std::nullopt;
        return std::make_optional<CacheStore>(path, /*exclusive_lock=*/true);
    }
};

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

HNData load_scenario(const std::string& path) {
    ordered_json j = read_json_file(path, "HN scenario");
    if (!j.contains("quotients") || !j["quotients"].is_array() || j["quotients"].empty())
        throw validation_error("HN scenario '" + path + "': field 'quotients' must be a "
                               "nonempty array of [rank, \"num/den\"] pairs");
    std::vector<HNQuotient> qs;
    for (const auto& q : j["quotients"]) {
        if (!q.is_array() || q.size() != 2)
            throw validation_error("HN scenario '" + path +
                                   "': each quotient must be [rank, \"num/den\"]");
        qs.push_back({q[0].get<std::uint64_t>(), Rat::parse(q[1].get<std::string>())});
    }
    std::uint64_t level = j.value("level", std::uint64_t{0});
    bool strong = j.value("strong", false);
    return HNData(std::move(qs), level, strong);
}

ordered_json hn_json(const HNData& v) {
    ordered_json j;
    ordered_json qs = ordered_json::array();
    for (const auto& q : v.quotients()) {
        ordered_json pair = ordered_json::array();
        pair.push_back(q.rank);
        pair.push_back(q.degree.str());
        qs.push_back(pair);
    }
    j["quotients"] = qs;
    j["level"] = v.level();
    j["strong"] = v.strong();
    return j;
}

int run_nu(const CommonOpts& common, const std::string& ring_path, const std::string& i_path,
           const std::string& j_path, std::uint64_t e_max) {
    auto ring = load_ring(ring_path);
    auto I = load_ideal(i_path, ring);
    auto J = load_ideal(j_path, ring);
    NuStats stats;
    auto opts = common.nu_options(&stats);
    auto cache = common.open_cache();
    auto records = nu_sequence(I, J, e_max, cache ? &*cache : nullptr, opts);
    ordered_json out;
    out["records"] = ordered_json::array();
    for (const auto& r : records) out["records"].push_back(record_json(r));
    if (records.size() > 1)
        out["witness_growth"] = witness_growth_flags(records, ring->field().p());
    out["stats"] = stats_json(stats);
    emit(out);
    return 0;
}

int run_estimate(const CommonOpts& common, const std::string& ring_path, const std::string& i_path,
                 const std::string& j_path, std::uint64_t e_max, std::uint64_t b_bound) {
    auto ring = load_ring(ring_path);
    auto I = load_ideal(i_path, ring);
    auto J = load_ideal(j_path, ring);
    NuStats stats;
    auto opts = common.nu_options(&stats);
    auto cache = common.open_cache();
    auto records = nu_sequence(I, J, e_max, cache ? &*cache : nullptr, opts);
    auto interval = bracket_threshold(records, I.ngens(), !ring->has_relations());
    ordered_json out;
    out["records"] = ordered_json::array();
    for (const auto& r : records) out["records"].push_back(record_json(r));
    if (records.size() > 1)
        out["witness_growth"] = witness_growth_flags(records, ring->field().p());
    out["interval"] = interval_json(interval);
    if (b_bound > 0) {
        auto rec = reconstruct(interval, ring->field().p(), b_bound);
        ordered_json rj;
        rj["found"] = rec.value.has_value();
        if (rec.value) {
            rj["value"] = rat_json(*rec.value);
            rj["form"] = rec.form == ReconstructionResult::Form::p_times_b ? "p_times_b"
                                                                           : "integer_or_p_free";
            rj["a"] = int_json(rec.a);
            rj["b"] = int_json(rec.b);
        }
        out["reconstruction"] = rj;
    }
    out["stats"] = stats_json(stats);
    emit(out);
    return 0;
}

int run_verify_remark42(const CommonOpts& common, std::uint64_t d, std::uint64_t p,
                        std::uint64_t e_max) {
    NuStats stats;
    auto opts = common.nu_options(&stats);
    auto cache = common.open_cache();
    auto rep = verify_remark42(d, p, e_max, cache ? &*cache : nullptr, opts);

    // Human-readable table on stderr, machine JSON on stdout.
    std::cerr << "closed-form value  " << rep.paper_value.str() << " ~ "
              << rep.paper_value.decimal(6) << "\n";
    std::cerr << "interval           [" << rep.interval.lo.str() << ", " << rep.interval.hi.str()
              << "]  lo_certified=" << (rep.interval.lo_certified ? "yes" : "no") << "\n";
    for (const auto& w : rep.windows)
        std::cerr << "e=" << w.e << "  nu=" << w.nu << "  window=[" << w.window_lo.str() << ", "
                  << w.window_hi.str() << "]  lower_ok=" << (w.lower_ok ? "yes" : "no")
                  << " upper_ok=" << (w.upper_ok ? "yes" : "no")
                  << (w.upper_applicable ? "" : " (upper window heuristic in quotient rings)")
                  << "\n";
    std::cerr << "denominator        " << rep.denominator.den.str() << ", p divides: "
              << (rep.denominator.p_divides ? "yes" : "no") << ", power of p: "
              << (rep.denominator.p_power ? "yes" : "no") << "\n";
    std::cerr << "verdict            " << (rep.verdict ? "pass" : "fail") << "\n";

    ordered_json out;
    out["paper_value"] = rat_json(rep.paper_value);
    out["interval"] = interval_json(rep.interval);
    ordered_json windows = ordered_json::array();
    for (const auto& w : rep.windows) {
        ordered_json wj;
        wj["e"] = w.e;
        wj["nu"] = w.nu;
        wj["window_lo"] = int_json(w.window_lo);
        wj["window_hi"] = int_json(w.window_hi);
        wj["lower_ok"] = w.lower_ok;
        wj["upper_ok"] = w.upper_ok;
        wj["upper_applicable"] = w.upper_applicable;
        windows.push_back(wj);
    }
    out["nu_windows"] = windows;
    ordered_json den;
    den["a"] = int_json(rep.denominator.a);
    den["b"] = int_json(rep.denominator.b);
    den["p_divides"] = rep.denominator.p_divides;
    den["p_power"] = rep.denominator.p_power;
    out["denominator"] = den;
    out["paper_value_in_interval"] = rep.paper_value_in_interval;
    out["paper_value_below_upper"] = rep.paper_value_below_upper;
    out["records"] = ordered_json::array();
    for (const auto& r : rep.records) out["records"].push_back(record_json(r));
    out["stats"] = stats_json(stats);
    out["verdict"] = rep.verdict ? "pass" : "fail";
    emit(out);
    return 0;
}

int run_gieseker(std::uint64_t p, std::uint64_t g, std::uint64_t m0, std::uint64_t n0,
                 std::uint64_t m_max, const std::string& format) {
    GiesekerParams params(p, g, m0, n0);
    if (format == "csv") {
        auto rep = threshold_sequence(params, m_max);
        for (std::uint64_t m = 0; m <= m_max; ++m) {
            const Rat& c = rep.thresholds[m];
            std::cout << m << "," << c.num().str() << "," << c.den().str() << ","
                      << c.decimal(20) << "\n";
        }
        return 0;
    }
    if (format != "json") throw validation_error("field 'format' must be 'csv' or 'json'");
    auto rep = accumulation_report(params, m_max < 2 ? 2 : m_max);
    ordered_json out;
    out["d"] = rep.family.d;
    out["thresholds"] = ordered_json::array();
    for (const auto& c : rep.family.thresholds) out["thresholds"].push_back(rat_json(c));
    out["strictly_decreasing"] = rep.family.strictly_decreasing;
    out["limit"] = rat_json(rep.family.limit);
    out["limit_attained"] = rep.family.limit_attained;
    ordered_json acc;
    acc["epsilon_hits"] = ordered_json::array();
    for (const auto& h : rep.hits) {
        ordered_json hj;
        hj["N"] = h.N;
        hj["m"] = h.m;
        acc["epsilon_hits"].push_back(hj);
    }
    acc["strong_levels"] = rep.strong_levels;
    acc["diff_den_divisible_by_p"] = rep.diff_den_divisible_by_p;
    acc["limit_in_list"] = rep.limit_in_list;
    out["accumulation"] = acc;
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact F-threshold engine: Frobenius-power nu sequences, certified rational "
                 "brackets, and Harder-Narasimhan slope calculus"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOpts common;
    app.add_option("--cache", common.cache_path, "nu-record cache file (JSON lines)");
    app.add_option("--threads", common.threads, "internal parallelism cap")->check(CLI::Range(1u, 64u));
    app.add_option("--budget-ms", common.budget_ms, "per-computation time budget in ms");

    std::string ring_path, i_path, j_path;
    std::uint64_t e_max = 1;

    auto* nu_cmd = app.add_subcommand("nu", "compute nu_e(I, J) for e = 1..e_max");
    nu_cmd->add_option("--ring", ring_path, "ring JSON file")->required();
    nu_cmd->add_option("--I", i_path, "ideal I JSON file")->required();
    nu_cmd->add_option("--J", j_path, "ideal J JSON file")->required();
    nu_cmd->add_option("-e,--emax", e_max, "largest Frobenius level")->required();
    nu_cmd->add_option("--method", common.method,
                       "containment kernel: auto|groebner|linear_algebra|socle_fastpath");

    std::uint64_t b_bound = 0;
    auto* est_cmd = app.add_subcommand("estimate", "bracket c^J(I) and optionally reconstruct it");
    est_cmd->add_option("--ring", ring_path, "ring JSON file")->required();
    est_cmd->add_option("--I", i_path, "ideal I JSON file")->required();
    est_cmd->add_option("--J", j_path, "ideal J JSON file")->required();
    est_cmd->add_option("-e,--emax", e_max, "largest Frobenius level")->required();
    est_cmd->add_option("--bbound", b_bound, "denominator search bound for reconstruction");
    est_cmd->add_option("--method", common.method, "containment kernel");

    std::uint64_t vr_d = 7, vr_p = 157;
    auto* vr_cmd = app.add_subcommand("verify-remark42",
                                      "check the closed-form threshold family at (d, p)");
    vr_cmd->add_option("-d", vr_d, "odd degree parameter >= 7")->required();
    vr_cmd->add_option("-p", vr_p, "prime, >= d^2 and congruent to +-2 mod d^2-3d+3")->required();
    vr_cmd->add_option("-e,--emax", e_max, "largest Frobenius level")->required();
    vr_cmd->add_option("--method", common.method, "containment kernel");

    std::uint64_t gk_p = 2, gk_g = 3, gk_m0 = 1, gk_n0 = 3, gk_mmax = 10;
    std::string gk_format = "json";
    auto* gk_cmd = app.add_subcommand("gieseker", "closed-form threshold family report");
    gk_cmd->add_option("-p", gk_p, "characteristic")->required();
    gk_cmd->add_option("-g", gk_g, "genus > 1")->required();
    gk_cmd->add_option("--m0", gk_m0, "Frobenius offset, p^m0 < g and p^m0 | g-1")->required();
    gk_cmd->add_option("--n0", gk_n0, "canonical-power twist, >= 3")->required();
    gk_cmd->add_option("--mmax", gk_mmax, "last family index")->required();
    gk_cmd->add_option("--format", gk_format, "csv or json");

    std::string hn_file, mu_red_file, twist_by;
    bool do_mu_min = false, do_amin = false, do_pullback = false, assume_hn = false;
    bool do_lemma = false;
    std::uint64_t hn_p = 0, hn_threshold_d = 0;
    std::string lemma_mu_v, lemma_mu_fmv;
    std::uint64_t lemma_m = 1, lemma_g = 2, lemma_r = 2;
    auto* hn_cmd = app.add_subcommand("hn", "Harder-Narasimhan slope calculus");
    hn_cmd->add_option("--file", hn_file, "HN scenario JSON file");
    hn_cmd->add_flag("--mu-min", do_mu_min, "report the minimal slope");
    hn_cmd->add_flag("--amin", do_amin, "report mu_min / p^level (strong data only)");
    hn_cmd->add_option("--twist", twist_by, "tensor by a degree-ell line bundle, ell as num/den");
    hn_cmd->add_flag("--pullback", do_pullback, "Frobenius pullback (needs --assume-remains-hn)");
    hn_cmd->add_flag("--assume-remains-hn", assume_hn,
                     "assert that the pulled-back filtration is still the HN filtration");
    hn_cmd->add_option("-p", hn_p, "characteristic for --amin/--pullback/--lemma-check");
    hn_cmd->add_option("--threshold-d", hn_threshold_d,
                       "report 1 - a_min/d for the given multiplicity d");
    hn_cmd->add_option("--mu-reduction", mu_red_file, "mu-reduction scan input JSON file");
    hn_cmd->add_flag("--lemma-check", do_lemma, "slope-defect consistency check");
    hn_cmd->add_option("--mu-min-v", lemma_mu_v, "mu_min(V) as num/den");
    hn_cmd->add_option("--mu-min-fmv", lemma_mu_fmv, "mu_min(F^m* V) as num/den");
    hn_cmd->add_option("-m", lemma_m, "Frobenius level for --lemma-check");
    hn_cmd->add_option("-g", lemma_g, "genus for --lemma-check");
    hn_cmd->add_option("-r", lemma_r, "rank for --lemma-check");

    std::string cd_cp, cd_cinf;
    std::uint64_t cd_p = 2, cd_g = 2, cd_r = 2;
    auto* cd_cmd = app.add_subcommand("check-denominator",
                                      "denominator structure of c_p - c_inf");
    cd_cmd->add_option("--cp", cd_cp, "c_p as num/den")->required();
    cd_cmd->add_option("--cinf", cd_cinf, "c_inf as num/den")->required();
    cd_cmd->add_option("-p", cd_p, "prime")->required();
    cd_cmd->add_option("-g", cd_g, "genus >= 2")->required();
    cd_cmd->add_option("-r", cd_r, "r, with r+1 generators")->required();

    try {
        app.parse(argc, argv);

        if (nu_cmd->parsed()) return run_nu(common, ring_path, i_path, j_path, e_max);
        if (est_cmd->parsed())
            return run_estimate(common, ring_path, i_path, j_path, e_max, b_bound);
        if (vr_cmd->parsed()) return run_verify_remark42(common, vr_d, vr_p, e_max);
        if (gk_cmd->parsed())
            return run_gieseker(gk_p, gk_g, gk_m0, gk_n0, gk_mmax, gk_format);

        if (hn_cmd->parsed()) {
            ordered_json out;
            if (do_lemma) {
                if (lemma_mu_v.empty() || lemma_mu_fmv.empty() || hn_p == 0)
                    throw validation_error(
                        "--lemma-check needs --mu-min-v, --mu-min-fmv and -p");
                auto rep = lemma_T_consistency(Rat::parse(lemma_mu_v), Rat::parse(lemma_mu_fmv),
                                               hn_p, lemma_m, lemma_g, lemma_r);
                ordered_json lj;
                lj["C"] = rat_json(rep.C);
                lj["bound"] = rat_json(rep.bound);
                lj["positive"] = rep.positive;
                lj["within_bound"] = rep.within_bound;
                lj["integrality_value"] = rat_json(rep.integrality_value);
                lj["integral"] = rep.integral;
                lj["hypothesis_floor"] = int_json(rep.hypothesis_floor);
                lj["p_clears_hypothesis"] = rep.p_clears_hypothesis;
                lj["decomposed"] = rep.decomposed;
                if (rep.decomposed) {
                    lj["a"] = int_json(rep.a);
                    lj["b"] = int_json(rep.b);
                }
                out["lemma_check"] = lj;
            }
            if (!mu_red_file.empty()) {
                ordered_json j = read_json_file(mu_red_file, "mu-reduction");
                if (!j.contains("steps") || !j["steps"].is_array())
                    throw validation_error("mu-reduction file: field 'steps' must be an array");
                MuReductionInput input;
                input.d = j.value("d", std::uint64_t{1});
                for (const auto& s : j["steps"]) {
                    MuReductionStep step;
                    step.mu_min_M = Rat::parse(s.at("mu_min_M").get<std::string>());
                    step.mu_min_V = Rat::parse(s.at("mu_min_V").get<std::string>());
                    step.exact_sequence_holds = s.value("exact", false);
                    input.steps.push_back(step);
                }
                auto res = mu_reduction_index(input);
                ordered_json rj;
                rj["kind"] =
                    res.kind == MuReductionResult::Kind::reduction ? "reduction" : "none_found";
                if (res.kind == MuReductionResult::Kind::reduction) rj["t"] = res.t;
                out["mu_reduction"] = rj;
            }
            if (!hn_file.empty()) {
                HNData data = load_scenario(hn_file);
                if (do_mu_min) out["mu_min"] = rat_json(mu_min(data));
                if (do_amin) {
                    if (hn_p == 0) throw validation_error("--amin needs -p");
                    out["a_min"] = rat_json(a_min(data, hn_p));
                }
                if (hn_threshold_d > 0) {
                    if (hn_p == 0) throw validation_error("--threshold-d needs -p");
                    out["threshold"] =
                        rat_json(threshold_from_amin(a_min(data, hn_p), hn_threshold_d));
                }
                bool transformed = false;
                if (!twist_by.empty()) {
                    data = twist(data, Rat::parse(twist_by));
                    transformed = true;
                }
                if (do_pullback) {
                    if (hn_p == 0) throw validation_error("--pullback needs -p");
                    data = frobenius_pullback(data, hn_p, assume_hn);
                    transformed = true;
                }
                if (transformed || (!do_mu_min && !do_amin && hn_threshold_d == 0))
                    out["data"] = hn_json(data);
            } else if (out.empty()) {
                throw validation_error("hn needs --file, --mu-reduction, or --lemma-check");
            }
            emit(out);
            return 0;
        }

        if (cd_cmd->parsed()) {
            auto rep = denominator_structure_check(Rat::parse(cd_cp), Rat::parse(cd_cinf), cd_p,
                                                   cd_g, cd_r);
            ordered_json out;
            out["equal"] = rep.equal;
            out["difference"] = rat_json(rep.difference);
            if (!rep.equal) {
                out["p_divides"] = rep.p_divides;
                out["a"] = int_json(rep.a);
                out["b"] = int_json(rep.b);
                out["gcd_ok"] = rep.gcd_ok;
                out["ratio"] = rat_json(rep.ratio);
                out["ratio_bound"] = rat_json(rep.ratio_bound);
                out["ratio_ok"] = rep.ratio_ok;
            }
            emit(out);
            return 0;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const resource_limit_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const engine_bug& e) {
        std::cerr << "internal inconsistency: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
