#pragma once

#include <json.hpp>

#include "ssa/amalgam_cover.hpp"
#include "ssa/construction.hpp"
#include "ssa/surface.hpp"
#include "ssa/surface_cover.hpp"

// JSON wire formats. Permutations are serialized as 1-based image arrays.

namespace ssa {

inline void to_json(nlohmann::json& j, const Surface& s) {
    j = {{"genus", s.genus}, {"boundary", s.boundary}};
}

inline void from_json(const nlohmann::json& j, Surface& s) {
    j.at("genus").get_to(s.genus);
    j.at("boundary").get_to(s.boundary);
    if (s.genus < 0 || s.boundary < 0) throw parse_error("negative genus or boundary");
}

inline void to_json(nlohmann::json& j, const AmalgamComplex& x) {
    j = {{"circles", x.circles}, {"pieces", x.pieces}, {"attachments", x.attachments}};
}

inline void from_json(const nlohmann::json& j, AmalgamComplex& x) {
    j.at("circles").get_to(x.circles);
    j.at("pieces").get_to(x.pieces);
    j.at("attachments").get_to(x.attachments);
}

inline void to_json(nlohmann::json& j, const Permutation& p) {
    j = p.to_one_based();
}

inline void to_json(nlohmann::json& j, const SurfaceCoverRep& rep) {
    j = {{"base", rep.base},
         {"degree", rep.degree},
         {"generators", {{"a", rep.a}, {"b", rep.b}, {"c", rep.c}}}};
}

inline void from_json(const nlohmann::json& j, SurfaceCoverRep& rep) {
    j.at("base").get_to(rep.base);
    j.at("degree").get_to(rep.degree);
    const auto& gens = j.at("generators");
    rep.a.clear();
    rep.b.clear();
    rep.c.clear();
    auto parse_perm = [](const nlohmann::json& g) {
        return Permutation::from_one_based(g.get<std::vector<long long>>());
    };
    for (const auto& g : gens.at("a")) rep.a.push_back(parse_perm(g));
    for (const auto& g : gens.at("b")) rep.b.push_back(parse_perm(g));
    for (const auto& g : gens.at("c")) rep.c.push_back(parse_perm(g));
    if (static_cast<long long>(rep.a.size()) != rep.base.genus ||
        rep.a.size() != rep.b.size() ||
        static_cast<long long>(rep.c.size()) != rep.base.boundary)
        throw parse_error("generator counts do not match the base surface");
    for (const auto& g : rep.all_generators())
        if (g.degree() != rep.degree) throw parse_error("generator degree mismatch");
}

inline void to_json(nlohmann::json& j, const CircleLift& l) {
    j = {{"id", l.id}, {"base_circle", l.base_circle}, {"degree", l.degree}};
}

inline void from_json(const nlohmann::json& j, CircleLift& l) {
    j.at("id").get_to(l.id);
    j.at("base_circle").get_to(l.base_circle);
    j.at("degree").get_to(l.degree);
}

inline void to_json(nlohmann::json& j, const CoverPiece& p) {
    nlohmann::json bm = nlohmann::json::array();
    for (const auto& b : p.boundary_map) bm.push_back({b.base_boundary, b.lift});
    j = {{"id", p.id},
         {"base_piece", p.base_piece},
         {"surface", p.surface},
         {"boundary_map", bm}};
}

inline void from_json(const nlohmann::json& j, CoverPiece& p) {
    j.at("id").get_to(p.id);
    j.at("base_piece").get_to(p.base_piece);
    j.at("surface").get_to(p.surface);
    p.boundary_map.clear();
    for (const auto& b : j.at("boundary_map")) {
        if (!b.is_array() || b.size() != 2)
            throw parse_error("boundary_map entries must be [base_boundary, lift]");
        p.boundary_map.push_back({b[0].get<long long>(), b[1].get<std::string>()});
    }
}

inline void to_json(nlohmann::json& j, const AmalgamCover& c) {
    j = {{"base", c.base},
         {"degree", c.degree},
         {"circle_lifts", c.circle_lifts},
         {"pieces", c.pieces}};
    if (!c.realizations.empty()) j["realizations"] = c.realizations;
}

inline void from_json(const nlohmann::json& j, AmalgamCover& c) {
    j.at("base").get_to(c.base);
    j.at("degree").get_to(c.degree);
    j.at("circle_lifts").get_to(c.circle_lifts);
    j.at("pieces").get_to(c.pieces);
    c.realizations.clear();
    if (j.contains("realizations")) j.at("realizations").get_to(c.realizations);
}

inline void to_json(nlohmann::json& j, const ClaimSolution& sol) {
    j = {{"D", sol.D}, {"d", sol.d}, {"d_list", sol.d_list}, {"chis", sol.chis}};
}

inline void from_json(const nlohmann::json& j, ClaimSolution& sol) {
    j.at("D").get_to(sol.D);
    j.at("d").get_to(sol.d);
    j.at("d_list").get_to(sol.d_list);
    j.at("chis").get_to(sol.chis);
}

inline void to_json(nlohmann::json& j, const PieceAssignment& a) {
    j = {{"sub_piece", a.sub_piece},
         {"parts", a.parts},
         {"consumed_lifts", a.consumed_lifts}};
}

inline void from_json(const nlohmann::json& j, PieceAssignment& a) {
    j.at("sub_piece").get_to(a.sub_piece);
    j.at("parts").get_to(a.parts);
    j.at("consumed_lifts").get_to(a.consumed_lifts);
}

inline void to_json(nlohmann::json& j, const EmbeddingWitness& w) {
    j = {{"assignment", w.assignment}, {"complement", w.complement}};
}

inline void from_json(const nlohmann::json& j, EmbeddingWitness& w) {
    j.at("assignment").get_to(w.assignment);
    j.at("complement").get_to(w.complement);
}

inline void to_json(nlohmann::json& j, const CheckResult& c) {
    j = {{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) j["detail"] = c.detail;
}

inline void from_json(const nlohmann::json& j, CheckResult& c) {
    j.at("name").get_to(c.name);
    j.at("pass").get_to(c.pass);
    c.detail = j.value("detail", "");
}

inline void to_json(nlohmann::json& j, const VerificationReport& r) {
    j = {{"pass", r.pass()}, {"checks", r.checks}};
}

inline void from_json(const nlohmann::json& j, VerificationReport& r) {
    j.at("checks").get_to(r.checks);
}

inline void to_json(nlohmann::json& j, const Certificate& cert) {
    j = {{"base", cert.base},
         {"x_prime", cert.x_prime},
         {"x_dprime", cert.x_dprime},
         {"witness", cert.witness},
         {"report", cert.report}};
    if (cert.hat) j["hat"] = *cert.hat;
    if (cert.solution) j["solution"] = *cert.solution;
}

inline void from_json(const nlohmann::json& j, Certificate& cert) {
    j.at("base").get_to(cert.base);
    j.at("x_prime").get_to(cert.x_prime);
    j.at("x_dprime").get_to(cert.x_dprime);
    j.at("witness").get_to(cert.witness);
    j.at("report").get_to(cert.report);
    cert.hat.reset();
    cert.solution.reset();
    if (j.contains("hat")) cert.hat = j.at("hat").get<AmalgamCover>();
    if (j.contains("solution")) cert.solution = j.at("solution").get<ClaimSolution>();
}

}  // namespace ssa
