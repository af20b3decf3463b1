#pragma once

// JSON forms for scalars, polynomials, matrices, jets, maps and verdicts.
// Parse errors surface as ParseError so the CLI can map them to exit code 2.

#include <string>
#include <vector>

#include <json.hpp>

#include "ballmap.hpp"
#include "crjet.hpp"
#include "polymatrix.hpp"

namespace crball {

using Json = nlohmann::ordered_json;

inline Json to_json(const GaussianRational& x) { return to_string(x); }

inline GaussianRational gaussian_from_json(const Json& j) {
    if (j.is_string()) return parse_gaussian(j.get<std::string>());
    if (j.is_number_integer()) return GaussianRational(j.get<long>());
    throw ParseError("expected a scalar string, got " + j.dump());
}

/// [{exps:[...], re:"a/b", im:"c/d"}, ...] in ascending grlex order.
inline Json to_json(const MultiPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        terms.push_back({{"exps", e}, {"re", to_string(c.re())}, {"im", to_string(c.im())}});
    }
    return terms;
}

/// Accepts either the terms array or the textual form.
inline MultiPoly poly_from_json(const RegistryPtr& reg, const Json& j) {
    if (j.is_string()) return parse_poly(reg, j.get<std::string>());
    if (j.is_number_integer()) return MultiPoly(reg, GaussianRational(j.get<long>()));
    if (!j.is_array()) throw ParseError("expected a polynomial, got " + j.dump());
    std::vector<MultiPoly::Term> terms;
    for (const auto& t : j) {
        if (!t.is_object() || !t.contains("exps")) throw ParseError("polynomial term needs exps");
        Exponents e;
        for (const auto& x : t.at("exps")) {
            if (!x.is_number_integer() || x.get<int>() < 0) throw ParseError("exponents must be non-negative integers");
            e.push_back(static_cast<std::uint16_t>(x.get<int>()));
        }
        if (e.size() != reg->size()) throw ParseError("exponent vector has the wrong length");
        Rational re = t.contains("re") ? parse_rational(t.at("re").get<std::string>()) : Rational(0);
        Rational im = t.contains("im") ? parse_rational(t.at("im").get<std::string>()) : Rational(0);
        terms.emplace_back(std::move(e), GaussianRational(re, im));
    }
    return MultiPoly::from_terms(reg, std::move(terms));
}

inline Json to_json(const PolyMatrix& m) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t k = 0; k < m.cols(); ++k) entries.push_back(to_json(m(i, k)));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline PolyMatrix matrix_from_json(const RegistryPtr& reg, const Json& j) {
    auto rows = j.at("rows").get<std::size_t>(), cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows * cols) throw ParseError("matrix needs rows*cols entries");
    PolyMatrix m(reg, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < cols; ++k) m.set(i, k, poly_from_json(reg, entries[i * cols + k]));
    }
    return m;
}

inline std::string pair_key(int j, int k) { return std::to_string(j) + "," + std::to_string(k); }

inline Json to_json(const NormalizedJet& jet) {
    IndexMap im = jet.index_map();
    Json lambda = Json::array(), mu = Json::object(), lin = Json::object(), w2 = Json::object();
    for (const auto& x : jet.lambda) lambda.push_back(to_json(x));
    for (std::size_t l = 0; l < im.s0_size; ++l) {
        std::string key = pair_key(im.ell[l].first, im.ell[l].second);
        mu[key] = to_json(jet.mu[l]);
        Json row = Json::array();
        for (const auto& x : jet.phi_lin[l]) row.push_back(to_json(x));
        lin[key] = row;
        w2[key] = to_json(jet.phi_w2[l]);
    }
    return {{"n", jet.n}, {"kappa0", jet.kappa0}, {"mode", to_string(jet.mode)}, {"lambda", lambda},
            {"mu", mu}, {"phi_lin", lin}, {"phi_w2", w2}};
}

/// Missing phi entries default to 0; missing mu entries are an error.
/// Throws JetInvariantViolated through validate().
inline NormalizedJet jet_from_json(const Json& j) {
    try {
        NormalizedJet jet;
        jet.n = j.at("n").get<int>();
        jet.kappa0 = j.contains("kappa0") ? j.at("kappa0").get<int>() : jet.n - 1;
        std::string mode = j.value("mode", std::string("free"));
        if (mode == "free") {
            jet.mode = JetMode::free;
        } else if (mode == "huang") {
            jet.mode = JetMode::huang;
        } else {
            throw ParseError("unknown jet mode '" + mode + "'");
        }
        IndexMap im = jet.index_map();
        for (const auto& x : j.at("lambda")) jet.lambda.push_back(gaussian_from_json(x));
        const Json empty = Json::object();
        const Json& mu = j.at("mu");
        const Json& lin = j.contains("phi_lin") ? j.at("phi_lin") : empty;
        const Json& w2 = j.contains("phi_w2") ? j.at("phi_w2") : empty;
        const auto np = static_cast<std::size_t>(jet.n - 1);
        for (std::size_t l = 0; l < im.s0_size; ++l) {
            std::string key = pair_key(im.ell[l].first, im.ell[l].second);
            if (!mu.contains(key)) throw ParseError("mu is missing entry " + key);
            jet.mu.push_back(gaussian_from_json(mu.at(key)));
            std::vector<GaussianRational> row(np);
            if (lin.contains(key)) {
                const Json& r = lin.at(key);
                if (r.size() != np) throw ParseError("phi_lin " + key + " needs n-1 entries");
                for (std::size_t m = 0; m < np; ++m) row[m] = gaussian_from_json(r[m]);
            }
            jet.phi_lin.push_back(std::move(row));
            jet.phi_w2.push_back(w2.contains(key) ? gaussian_from_json(w2.at(key)) : GaussianRational(0));
        }
        jet.validate();
        return jet;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("jet JSON: ") + e.what());
    }
}

inline Json to_json(const RationalMap& F) {
    Json P = Json::array();
    for (const auto& p : F.P) P.push_back(to_json(p));
    Json j = {{"name", F.name}, {"n", F.n},           {"N", F.N},
              {"side", to_string(F.side)}, {"P", P}, {"Q", to_json(F.Q)},
              {"coeff_mode", to_string(F.coeff_mode)}};
    if (F.coeff_mode == CoeffMode::squared) {
        Json s = Json::array();
        for (const auto& x : F.scale_sq) s.push_back(to_string(x));
        j["scale_sq"] = s;
    }
    j["proper"] = F.proper;
    return j;
}

inline RationalMap map_from_json(const Json& j) {
    try {
        RationalMap F;
        F.name = j.value("name", std::string("input"));
        F.n = j.at("n").get<int>();
        std::string side = j.value("side", std::string("ball"));
        if (side == "ball") {
            F.side = Side::ball;
        } else if (side == "siegel") {
            F.side = Side::siegel;
        } else {
            throw ParseError("unknown side '" + side + "'");
        }
        if (F.n < 1) throw ParseError("n must be positive");
        RegistryPtr reg = F.side == Side::ball ? ball_registry(F.n) : siegel_registry(F.n);
        for (const auto& p : j.at("P")) F.P.push_back(poly_from_json(reg, p));
        F.N = j.contains("N") ? j.at("N").get<int>() : static_cast<int>(F.P.size());
        F.Q = j.contains("Q") ? poly_from_json(reg, j.at("Q")) : MultiPoly(reg, GaussianRational(1));
        std::string mode = j.value("coeff_mode", std::string("exact"));
        if (mode == "squared") {
            F.coeff_mode = CoeffMode::squared;
            for (const auto& s : j.at("scale_sq")) {
                F.scale_sq.push_back(s.is_string() ? parse_rational(s.get<std::string>()) : Rational(s.get<long>()));
            }
        } else if (mode != "exact") {
            throw ParseError("unknown coeff_mode '" + mode + "'");
        }
        F.proper = j.value("proper", true);
        F.validate();
        return F;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("map JSON: ") + e.what());
    }
}

inline Json degree_json(const Degree& d) {
    if (d.is_zero_poly()) return "-inf";
    return d.value();
}

inline Json to_json(const CaseReport& r) {
    auto outcome = [](CaseOutcome o) { return o == CaseOutcome::vanishes ? "vanishes" : "degree_bound"; };
    Json rows = Json::array();
    for (const auto& p : r.rows) {
        rows.push_back({{"row", p.row},
                        {"outcome", outcome(p.outcome)},
                        {"bound", p.bound},
                        {"literal_vanishes", p.literal_vanishes},
                        {"actual", degree_json(p.actual)},
                        {"confirmed", p.confirmed},
                        {"literal_confirmed", p.literal_confirmed}});
    }
    return {{"I", r.I},
            {"n_ge1", r.n_ge1},
            {"n2", r.n2},
            {"case", r.case_label},
            {"det_outcome", outcome(r.det_outcome)},
            {"det_bound", r.det_bound},
            {"det_actual", degree_json(r.det_actual)},
            {"det_confirmed", r.det_confirmed},
            {"rows", rows},
            {"adj_confirmed", r.adj_confirmed},
            {"adj_literal_confirmed", r.adj_literal_confirmed},
            {"verified", r.verified}};
}

inline Json to_json(const DegreeVerdict& v) {
    Json j = {{"n", v.n},
              {"N_prime", v.N_prime},
              {"deg_detB", degree_json(v.deg_detB)},
              {"deg_adjB_A", degree_json(v.deg_adjB_A)},
              {"deg_segre_numerator", degree_json(v.deg_segre_numerator)},
              {"detB_ok", v.detB_ok},
              {"adjB_A_ok", v.adjB_A_ok},
              {"segre_ok", v.segre_ok},
              {"weak_detB_bound", v.weak_detB_bound},
              {"weak_adjB_A_bound", v.weak_adjB_A_bound},
              {"weak_detB_ok", v.weak_detB_ok},
              {"weak_adjB_A_ok", v.weak_adjB_A_ok},
              {"detB_constant", to_json(v.detB_constant)},
              {"zeta_degrees_match", v.zeta_degrees_match},
              {"residual_zero", v.residual_zero},
              {"g_component_zero", v.g_component_zero},
              {"bounds_hold", v.bounds_hold()}};
    if (v.case_log) {
        Json log = Json::array();
        for (const auto& r : *v.case_log) log.push_back(to_json(r));
        j["case_log"] = log;
    }
    return j;
}

} // namespace crball
