#pragma once

/**
 * @file serialize.hpp
 * @brief JSON encodings of elements and reports (nlohmann::ordered_json).
 *
 * Key order is insertion order and term order is the canonical term order,
 * so equal inputs give byte-identical output.
 */

#include <json.hpp>

#include "gammadelta/derham.hpp"
#include "gammadelta/deltaring.hpp"
#include "gammadelta/dpalg.hpp"
#include "gammadelta/prismenv.hpp"
#include "gammadelta/report.hpp"

namespace gammadelta {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "gammadelta/1";

inline Json document() {
    Json j;
    j["schema"] = kSchema;
    return j;
}

inline Json monomial_json(const PDContext& ctx, const DPMonomial& m) {
    Json out = Json::object();
    for (std::size_t i = 0; i < m.ordinary.size(); ++i)
        if (m.ordinary[i] != 0) out[ctx.ordinary_vars()[i]] = m.ordinary[i];
    for (std::size_t j = 0; j < m.divided.size(); ++j)
        if (m.divided[j] != 0) out["g:" + ctx.divided_vars()[j]] = m.divided[j];
    return out;
}

template <class K>
Json to_json(const DPElement<K>& f) {
    Json terms = Json::array();
    for (const auto& [m, c] : f.terms()) terms.push_back({{"c", to_string(c)}, {"m", monomial_json(*f.context(), m)}});
    return {{"terms", terms}};
}

template <class K, class NameFn>
Json poly_json(const Poly<K>& poly, NameFn&& name) {
    Json terms = Json::array();
    for (const auto& [e, c] : display_order(poly)) {
        Json m = Json::object();
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] != 0) m[name(v)] = e[v];
        terms.push_back({{"c", to_string(c)}, {"m", m}});
    }
    return {{"terms", terms}};
}

inline Json to_json(const DeltaElement& f) {
    const auto& ctx = *f.context();
    return poly_json(f.poly(), [&](std::size_t v) { return ctx.var_name(v); });
}

template <class K>
Json to_json(const Form<K>& f) {
    const auto& ctx = *f.context();
    Json out = Json::array();
    for (const auto& [key, c] : f.terms()) {
        Json w = Json::array();
        for (std::size_t g = 0; g < ctx.num_generators(); ++g)
            if (key.wedge & (WedgeMask{1} << g)) w.push_back(ctx.generator_name(g));
        out.push_back({{"c", to_string(c)}, {"m", monomial_json(*ctx.target(), key.monomial)}, {"w", w}});
    }
    return out;
}

inline Json to_json(const PnReport& r) {
    Json j;
    j["n"] = r.n;
    j["p"] = r.p;
    j["a_n"] = r.a_n.get_str();
    j["P_n"] = to_json(r.P);
    j["Q_n"] = to_json(r.Q);
    j["P_n_text"] = to_string(r.P);
    j["checks"] = {{"no_top_var", r.checks.no_top_var},
                   {"top_degree_le_p", r.checks.top_degree_le_p},
                   {"leading_coefficient", r.checks.leading_coefficient},
                   {"homogeneity", r.checks.homogeneity}};
    return j;
}

inline Json to_json(const UnitTowerReport& r) {
    Json j;
    j["n"] = r.n;
    j["u_n"] = to_json(r.u);
    j["u_n_text"] = to_string(r.u);
    j["exact"] = r.exact;
    j["congruent_delta_d"] = r.congruent_delta_d;
    j["congruent_frobenius"] = r.congruent_frobenius;
    j["delta_d_seed_exact"] = r.delta_d_seed_exact;
    j["pass"] = r.pass();
    return j;
}

inline Json to_json(const GradedPiece& g) {
    return {{"index", g.index}, {"rank", g.rank}, {"expected", g.expected}, {"generators", g.generators}, {"pass", g.pass}};
}

inline Json to_json(const FiltrationReport& r) {
    Json pieces = Json::array();
    for (const auto& g : r.pieces) pieces.push_back(to_json(g));
    Json j;
    j["name"] = r.name;
    j["pieces"] = pieces;
    if (!r.matrix.empty()) j["matrix"] = r.matrix;
    j["square"] = r.square;
    j["invertible"] = r.invertible;
    j["pass"] = r.pass();
    return j;
}

inline Json to_json(const RankCheck& r) { return {{"rank", r.rank}, {"expected", r.expected}, {"pass", r.pass}}; }

inline Json to_json(const CartierReport& r) {
    return {{"weight", r.weight},           {"degree", r.degree},       {"source_rank", r.source_rank},
            {"cohomology_rank", r.cohomology_rank}, {"image_rank", r.image_rank}, {"cocycles", r.cocycles},
            {"pass", r.pass()}};
}

}  // namespace gammadelta
