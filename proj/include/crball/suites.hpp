#pragma once

// Verification suites behind the CLI. Each returns a JSON report with a
// top-level "schema": 1 and a "pass" flag; reports never carry timings, so
// the same configuration and seed give byte-identical output.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ballmap.hpp"
#include "catalog.hpp"
#include "crjet.hpp"
#include "instances.hpp"
#include "jet_sampling.hpp"
#include "lemmas.hpp"
#include "parallel.hpp"
#include "serialize.hpp"

namespace crball {

using LogFn = std::function<void(const std::string&)>;

struct SuiteResult {
    Json report;
    bool pass = true;
};

namespace detail {

inline Json decomposition_json(const ColumnDecomposition& d) {
    Json parts = Json::array();
    for (const auto& p : d.parts) parts.push_back(to_json(p));
    return {{"column", d.column}, {"parts", parts}};
}

// Aggregates per-trial outcomes: {ok, skipped, counterexample}.
struct TrialOutcome {
    bool ok = true;
    bool counted = true;
    Json counterexample;
};

inline Json tally(const std::string& name, const std::vector<TrialOutcome>& outs, bool& pass, std::size_t max_dumps = 3) {
    std::size_t passed = 0, failed = 0, skipped = 0;
    Json dumps = Json::array();
    for (const auto& o : outs) {
        if (!o.counted) {
            ++skipped;
        } else if (o.ok) {
            ++passed;
        } else {
            ++failed;
            if (dumps.size() < max_dumps) dumps.push_back(o.counterexample);
        }
    }
    pass = pass && failed == 0;
    Json j = {{"name", name}, {"instances", passed + failed}, {"passed", passed}, {"failed", failed}};
    if (skipped > 0) j["skipped"] = skipped;
    if (!dumps.empty()) j["counterexamples"] = dumps;
    return j;
}

} // namespace detail

struct LemmaConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    std::size_t rank_trials = 0;  // corank-one structured instances; 0 means trials / 4
    bool corrupt = false;         // use a wrong correction coefficient in the additive identity
    unsigned workers = default_workers();
};

/// Additive adjugate identity, multilinear expansion, and both parts of the
/// structured adjugate lemma on random polynomial matrices.
inline SuiteResult lemma_suite(const LemmaConfig& cfg, const LogFn& log = {}) {
    const RegistryPtr reg = lemma_registry();
    SuiteResult res;
    Json suites = Json::array();

    auto additive = parallel_map(cfg.trials, [&](std::size_t i) {
        Rng rng = Rng::for_trial(cfg.seed, 1, i);
        auto inst = random_additive_instance(rng, reg);
        auto rep = adjugate_additive_expansion(inst.M, inst.decomp, {DetBackend::leibniz, 0}, cfg.corrupt ? 1 : 0);
        detail::TrialOutcome o;
        o.ok = rep.holds;
        if (!o.ok) {
            o.counterexample = {{"trial", i}, {"matrix", to_json(inst.M)}, {"decomposition", detail::decomposition_json(inst.decomp)},
                                {"lhs", to_json(rep.lhs)}, {"rhs", to_json(rep.rhs)}};
        }
        return o;
    }, cfg.workers);
    suites.push_back(detail::tally("additive_adjugate", additive, res.pass));
    if (log) log("additive_adjugate: " + std::to_string(cfg.trials) + " instances");

    auto multilinear = parallel_map(cfg.trials, [&](std::size_t i) {
        Rng rng = Rng::for_trial(cfg.seed, 2, i);
        auto [m, ds] = random_multilinear_instance(rng, reg);
        MultiPoly sum(reg);
        for (const auto& t : det_multilinear_expansion(m, ds)) sum += t.det;
        detail::TrialOutcome o;
        o.ok = sum == det(m, {DetBackend::leibniz, 0});
        if (!o.ok) {
            Json dj = Json::array();
            for (const auto& d : ds) dj.push_back(detail::decomposition_json(d));
            o.counterexample = {{"trial", i}, {"matrix", to_json(m)}, {"decompositions", dj}};
        }
        return o;
    }, cfg.workers);
    suites.push_back(detail::tally("multilinear_expansion", multilinear, res.pass));
    if (log) log("multilinear_expansion: " + std::to_string(cfg.trials) + " instances");

    auto structured = [&](std::size_t count, bool corank_one, std::uint64_t tag) {
        return parallel_map(count, [&](std::size_t i) {
            Rng rng = Rng::for_trial(cfg.seed, tag, i);
            detail::TrialOutcome o;
            for (int attempt = 0; attempt < 10; ++attempt) {
                auto s = random_structured_instance(rng, reg, corank_one);
                try {
                    auto rep = structured_adjugate_check(s.U, s.V, s.T, rng);
                    if (corank_one) {
                        o.counted = rep.part2_applicable;
                        o.ok = rep.part2_holds;
                    } else {
                        o.ok = rep.part1_holds;
                    }
                    if (o.counted && !o.ok) {
                        o.counterexample = {{"trial", i}, {"U", to_json(s.U)}, {"V", to_json(s.V)}, {"T", to_json(s.T)},
                                            {"adjM_U", to_json(rep.adjM_U)}};
                    }
                    return o;
                } catch (const RankPreconditionFailed&) {
                }
            }
            o.counted = false;
            return o;
        }, cfg.workers);
    };
    suites.push_back(detail::tally("structured_adjugate_rows", structured(cfg.trials, false, 3), res.pass));
    std::size_t rank_trials = cfg.rank_trials > 0 ? cfg.rank_trials : cfg.trials / 4;
    suites.push_back(detail::tally("structured_adjugate_corank_one", structured(rank_trials, true, 4), res.pass));
    if (log) log("structured_adjugate: " + std::to_string(cfg.trials) + " + " + std::to_string(rank_trials) + " instances");

    res.report = {{"schema", 1}, {"command", "lemmas"}, {"seed", cfg.seed}, {"trials", cfg.trials},
                  {"corrupt", cfg.corrupt}, {"suites", suites}, {"pass", res.pass}};
    return res;
}

struct JetConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 100;
    std::vector<int> ns{2, 3, 4};
    JetMode mode = JetMode::free;
    unsigned workers = default_workers();
};

inline Json verdict_row(const DegreeVerdict& v) {
    return {{"deg_detB", degree_json(v.deg_detB)},
            {"deg_adjB_A", degree_json(v.deg_adjB_A)},
            {"deg_segre_numerator", degree_json(v.deg_segre_numerator)},
            {"bounds_hold", v.bounds_hold()}};
}

/// degree_verdict over sampled jets with kappa0 = n - 1.
inline SuiteResult jet_suite(const JetConfig& cfg, const LogFn& log = {}) {
    SuiteResult res;
    Json rows = Json::array();
    for (int n : cfg.ns) {
        if (n < 2 || n > 5) throw InvalidRank("n must lie in 2..5");
        if (n == 5 && log) log("warning: n = 5 verdicts are slow");
        auto out = parallel_map(cfg.trials, [&](std::size_t i) {
            Rng rng = Rng::for_trial(cfg.seed, 100 + static_cast<std::uint64_t>(n), i);
            NormalizedJet jet = sample_jet(n, n - 1, cfg.mode, rng);
            return degree_verdict(jet);
        }, cfg.workers);
        for (std::size_t i = 0; i < out.size(); ++i) {
            Json row = {{"n", n}, {"trial", i}};
            row.update(verdict_row(out[i]));
            rows.push_back(row);
            res.pass = res.pass && out[i].bounds_hold();
        }
        if (log) log("n = " + std::to_string(n) + ": " + std::to_string(cfg.trials) + " jets");
    }
    Json ns = cfg.ns;
    res.report = {{"schema", 1}, {"command", "jet-verify"}, {"seed", cfg.seed}, {"trials", cfg.trials}, {"n", ns},
                  {"mode", to_string(cfg.mode)}, {"verdicts", rows}, {"pass", res.pass}};
    return res;
}

/// Verdict for jets given explicitly, with the full case log.
inline SuiteResult jet_file_suite(const std::vector<std::pair<std::string, NormalizedJet>>& jets) {
    SuiteResult res;
    Json rows = Json::array();
    for (const auto& [source, jet] : jets) {
        DegreeVerdict v = degree_verdict(jet);
        Json row = {{"source", source}, {"jet", to_json(jet)}, {"verdict", to_json(v)}};
        rows.push_back(row);
        res.pass = res.pass && v.bounds_hold();
    }
    res.report = {{"schema", 1}, {"command", "jet-verify"}, {"verdicts", rows}, {"pass", res.pass}};
    return res;
}

struct MapConfig {
    std::uint64_t seed = 1;
    int segre_points = 10;
    unsigned workers = default_workers();
};

/// Propriety on both sides, degree with the reducedness probe, and a Segre
/// sweep over random boundary points.
inline Json verify_map(const RationalMap& F, Rng& rng, int segre_points, bool& pass) {
    Json j = {{"name", F.name}, {"n", F.n}, {"N", F.N}, {"side", to_string(F.side)},
              {"coeff_mode", to_string(F.coeff_mode)}, {"proper_flag", F.proper}};
    try {
        auto cert = propriety_check(F);
        auto deg = degree(F, rng);
        j["propriety"] = {{"proper", cert.proper()}, {"residual", to_json(cert.residual)}};
        if (!cert.proper()) j["propriety"]["residual_text"] = to_string(cert.residual);
        j["degree"] = deg.degree;
        j["reducedness"] = deg.label();
        RationalMap other = cayley_conjugate(F);
        auto other_cert = propriety_check(other);
        int other_deg = degree(other, rng).degree;
        j["cayley"] = {{"side", to_string(other.side)}, {"proper", other_cert.proper()}, {"degree", other_deg},
                       {"degree_preserved", other_deg == deg.degree}};
        const RationalMap& S = F.side == Side::siegel ? F : other;
        Json degs = Json::array();
        int best = 0;
        for (int t = 0; t < segre_points; ++t) {
            auto p = random_boundary_point(F.n, rng);
            int d = segre_restrict(S, {p.z0, p.w0}).degree;
            degs.push_back(d);
            best = std::max(best, d);
        }
        bool bounded = best <= deg.degree;
        j["segre"] = {{"points", segre_points}, {"degrees", degs}, {"max_degree", best}, {"never_exceeds", bounded},
                      {"attains", best == deg.degree}};
        bool ok = bounded && (!F.proper || (cert.proper() && other_cert.proper()));
        j["pass"] = ok;
        pass = pass && ok;
    } catch (const Error& e) {
        j["error"] = e.what();
        j["pass"] = false;
        pass = false;
    }
    return j;
}

inline SuiteResult map_suite(const std::vector<RationalMap>& maps, const MapConfig& cfg, const LogFn& log = {}) {
    SuiteResult res;
    auto out = parallel_map(maps.size(), [&](std::size_t i) {
        Rng rng = Rng::for_trial(cfg.seed, 200, i);
        bool ok = true;
        Json j = verify_map(maps[i], rng, cfg.segre_points, ok);
        return std::pair<Json, bool>{j, ok};
    }, cfg.workers);
    Json rows = Json::array();
    for (auto& [j, ok] : out) {
        if (log) log(j["name"].get<std::string>() + (ok ? ": pass" : ": FAIL"));
        rows.push_back(std::move(j));
        res.pass = res.pass && ok;
    }
    res.report = {{"schema", 1}, {"command", "map-verify"}, {"seed", cfg.seed}, {"maps", rows}, {"pass", res.pass}};
    return res;
}

inline std::vector<RationalMap> catalog_maps() {
    std::vector<RationalMap> v;
    for (const auto& e : catalog()) v.push_back(e.map);
    return v;
}

/// The built-in maps with their propriety certificates and registered degrees.
inline SuiteResult catalog_suite() {
    SuiteResult res;
    Json rows = Json::array();
    Rng rng(0);
    for (const auto& e : catalog()) {
        auto cert = propriety_check(e.map);
        int d = degree(e.map, rng).degree;
        Json row = to_json(e.map);
        row["expected_degree"] = e.expected_degree;
        row["degree"] = d;
        row["faran_family"] = e.faran;
        row["certificate"] = {{"proper", cert.proper()}, {"quotient", cert.quotient ? to_json(*cert.quotient) : Json()}};
        bool ok = cert.proper() && d == e.expected_degree;
        row["pass"] = ok;
        res.pass = res.pass && ok;
        rows.push_back(row);
    }
    res.report = {{"schema", 1}, {"command", "catalog"}, {"count", rows.size()}, {"maps", rows}, {"pass", res.pass}};
    return res;
}

} // namespace crball
