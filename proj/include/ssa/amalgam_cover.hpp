#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ssa/errors.hpp"
#include "ssa/surface.hpp"
#include "ssa/surface_cover.hpp"

namespace ssa {

/// A connected circle in the total space lying over one base circle.
struct CircleLift {
    std::string id;
    std::string base_circle;
    long long degree = 1;

    friend bool operator==(const CircleLift&, const CircleLift&) = default;
};

struct BoundaryAttachment {
    long long base_boundary = 0;  // boundary component index of the base piece
    std::string lift;             // circle lift the component is attached to

    friend bool operator==(const BoundaryAttachment&, const BoundaryAttachment&) = default;
};

/// One surface piece of the cover, lying over one base piece. A boundary
/// component attached to lift L covers L's base circle with degree L.degree.
struct CoverPiece {
    std::string id;
    long long base_piece = 0;
    Surface surface;
    std::vector<BoundaryAttachment> boundary_map;

    friend bool operator==(const CoverPiece&, const CoverPiece&) = default;
};

/// Covering map of amalgam complexes, recorded at the chi/degree level.
/// Realizations, when present, upgrade pieces to permutation witnesses.
struct AmalgamCover {
    AmalgamComplex base;
    long long degree = 1;
    std::vector<CircleLift> circle_lifts;
    std::vector<CoverPiece> pieces;
    std::map<std::string, SurfaceCoverRep> realizations;  // keyed by piece id

    const CircleLift* find_lift(const std::string& id) const {
        for (const auto& l : circle_lifts)
            if (l.id == id) return &l;
        return nullptr;
    }

    const CoverPiece* find_piece(const std::string& id) const {
        for (const auto& p : pieces)
            if (p.id == id) return &p;
        return nullptr;
    }

    /// The cover as an amalgam complex: circles are the lift ids, pieces keep
    /// their order, attachments come from the boundary maps.
    AmalgamComplex total() const {
        AmalgamComplex t;
        for (const auto& l : circle_lifts) t.circles.push_back(l.id);
        for (const auto& p : pieces) {
            t.pieces.push_back(p.surface);
            std::vector<std::string> att;
            for (const auto& bm : p.boundary_map) att.push_back(bm.lift);
            t.attachments.push_back(std::move(att));
        }
        return t;
    }

    friend bool operator==(const AmalgamCover&, const AmalgamCover&) = default;
};

/// chi(cover piece) / chi(base piece); callers must check integrality first.
inline long long piece_degree(const AmalgamCover& c, const CoverPiece& p) {
    long long base_chi = c.base.pieces[p.base_piece].chi();
    if (base_chi == 0) throw error("base piece has chi = 0");
    return p.surface.chi() / base_chi;
}

/// The CoverSpec a piece induces on its base piece: degree from the chi ratio,
/// partitions from boundary lift degrees grouped by base boundary component.
inline CoverSpec piece_cover_spec(const AmalgamCover& c, const CoverPiece& p) {
    CoverSpec spec;
    spec.degree = piece_degree(c, p);
    spec.boundary_partitions.resize(c.base.pieces[p.base_piece].boundary);
    for (const auto& bm : p.boundary_map) {
        const CircleLift* lift = c.find_lift(bm.lift);
        if (!lift) throw error("unknown circle lift '" + bm.lift + "'");
        spec.boundary_partitions.at(bm.base_boundary).push_back(lift->degree);
    }
    return spec.normalized();
}

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void add(const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok, detail});
    }

    void merge(const VerificationReport& other, const std::string& prefix) {
        for (const auto& c : other.checks)
            checks.push_back({prefix + c.name, c.pass, c.detail});
    }
};

namespace detail {

/// Structural sanity gate: ids resolve, indices are in range, boundary maps
/// are total. The covering-axiom checks below assume it passed.
inline bool cover_structure_ok(const AmalgamCover& c, std::string& why) {
    std::ostringstream msg;
    std::set<std::string> lift_ids, piece_ids;
    std::set<std::string> base_circles(c.base.circles.begin(), c.base.circles.end());
    if (c.degree < 1) {
        why = "cover degree must be positive";
        return false;
    }
    for (const auto& l : c.circle_lifts) {
        if (!lift_ids.insert(l.id).second) msg << "duplicate lift id '" << l.id << "'; ";
        if (!base_circles.count(l.base_circle))
            msg << "lift '" << l.id << "' over unknown circle; ";
        if (l.degree < 1) msg << "lift '" << l.id << "' has degree < 1; ";
    }
    for (const auto& p : c.pieces) {
        if (!piece_ids.insert(p.id).second) msg << "duplicate piece id '" << p.id << "'; ";
        if (p.base_piece < 0 || p.base_piece >= static_cast<long long>(c.base.pieces.size())) {
            msg << "piece '" << p.id << "' over unknown base piece; ";
            continue;
        }
        const Surface& base_s = c.base.pieces[p.base_piece];
        if (static_cast<long long>(p.boundary_map.size()) != p.surface.boundary)
            msg << "piece '" << p.id << "' boundary map is not total; ";
        for (const auto& bm : p.boundary_map) {
            if (bm.base_boundary < 0 || bm.base_boundary >= base_s.boundary) {
                msg << "piece '" << p.id << "' maps a boundary component to an unknown base boundary; ";
                continue;
            }
            const CircleLift* lift = c.find_lift(bm.lift);
            if (!lift) {
                msg << "piece '" << p.id << "' attached to unknown lift '" << bm.lift << "'; ";
                continue;
            }
            // the lift must lie over the circle the base boundary is attached to
            if (lift->base_circle != c.base.attachments[p.base_piece][bm.base_boundary])
                msg << "piece '" << p.id << "' attaches a lift of the wrong base circle; ";
        }
    }
    why = msg.str();
    return why.empty();
}

}  // namespace detail

/// Full covering-axiom verification at the combinatorial level. Check names
/// are stable; failures are report content, never exceptions.
inline VerificationReport verify_amalgam_cover(const AmalgamCover& c) {
    VerificationReport report;

    AmalgamValidation base_val = validate_amalgam(c.base);
    std::string base_why;
    for (const auto& v : base_val.violations) base_why += v + "; ";
    report.add("base_valid", base_val.pass, base_why);

    std::string structure_why;
    bool structure = detail::cover_structure_ok(c, structure_why);
    report.add("structure", structure, structure_why);
    if (!base_val.pass || !structure) return report;

    // (i) per base circle, lift degrees sum to the cover degree
    {
        std::ostringstream why;
        bool ok = true;
        for (const auto& circle : c.base.circles) {
            long long sum = 0;
            for (const auto& l : c.circle_lifts)
                if (l.base_circle == circle) sum += l.degree;
            if (sum != c.degree) {
                ok = false;
                why << "circle '" << circle << "': lift degrees sum to " << sum
                    << ", expected " << c.degree << "; ";
            }
        }
        report.add("circle_degree_sum", ok, why.str());
    }

    // piece degree must be a positive integer chi ratio
    bool degrees_integral = true;
    {
        std::ostringstream why;
        for (const auto& p : c.pieces) {
            long long base_chi = c.base.pieces[p.base_piece].chi();
            if (base_chi == 0 || p.surface.chi() % base_chi != 0 ||
                p.surface.chi() / base_chi < 1) {
                degrees_integral = false;
                why << "piece '" << p.id << "': chi ratio is not a positive integer; ";
            }
        }
        report.add("piece_degree_integral", degrees_integral, why.str());
        if (!degrees_integral) return report;
    }

    // per base boundary component, boundary lift degrees sum to the piece degree
    {
        std::ostringstream why;
        bool ok = true;
        for (const auto& p : c.pieces) {
            long long deg = piece_degree(c, p);
            std::map<long long, long long> sums;
            for (const auto& bm : p.boundary_map)
                sums[bm.base_boundary] += c.find_lift(bm.lift)->degree;
            for (long long bc = 0; bc < c.base.pieces[p.base_piece].boundary; ++bc) {
                if (sums[bc] != deg) {
                    ok = false;
                    why << "piece '" << p.id << "' base boundary " << bc
                        << ": degrees sum to " << sums[bc] << ", expected " << deg << "; ";
                }
            }
        }
        report.add("piece_boundary_degrees", ok, why.str());
    }

    // (ii) per base piece, piece degrees sum to the cover degree
    {
        std::ostringstream why;
        bool ok = true;
        for (size_t i = 0; i < c.base.pieces.size(); ++i) {
            long long sum = 0;
            for (const auto& p : c.pieces)
                if (p.base_piece == static_cast<long long>(i)) sum += piece_degree(c, p);
            if (sum != c.degree) {
                ok = false;
                why << "base piece " << i << ": piece degrees sum to " << sum
                    << ", expected " << c.degree << "; ";
            }
        }
        report.add("piece_degree_sum", ok, why.str());
    }

    // (iii) for each lift L over circle g and each base boundary component
    // attached to g, exactly one cover boundary component over it lies on L
    {
        std::ostringstream why;
        bool ok = true;
        for (const auto& l : c.circle_lifts) {
            // count cover boundary components on L, per (base piece, base boundary)
            std::map<std::pair<long long, long long>, long long> on_lift;
            for (const auto& p : c.pieces)
                for (const auto& bm : p.boundary_map)
                    if (bm.lift == l.id) ++on_lift[{p.base_piece, bm.base_boundary}];
            for (size_t i = 0; i < c.base.pieces.size(); ++i) {
                for (long long bc = 0; bc < c.base.pieces[i].boundary; ++bc) {
                    if (c.base.attachments[i][bc] != l.base_circle) continue;
                    long long n = on_lift[{static_cast<long long>(i), bc}];
                    if (n != 1) {
                        ok = false;
                        why << "lift '" << l.id << "' carries " << n
                            << " lifts of boundary " << bc << " of piece " << i
                            << ", expected 1; ";
                    }
                }
            }
        }
        report.add("boundary_lift_bijection", ok, why.str());
    }

    // (iv) chi multiplicativity
    {
        long long total_chi = euler_char_amalgam(c.total());
        long long expect = c.degree * euler_char_amalgam(c.base);
        std::ostringstream why;
        if (total_chi != expect)
            why << "chi(total) = " << total_chi << ", expected " << expect;
        report.add("chi_multiplicativity", total_chi == expect, why.str());
    }

    // (v) each piece's induced CoverSpec passes the parity criterion
    {
        std::ostringstream why;
        bool ok = true;
        for (const auto& p : c.pieces) {
            try {
                if (!neumann_feasible(c.base.pieces[p.base_piece], piece_cover_spec(c, p))) {
                    ok = false;
                    why << "piece '" << p.id << "': parity criterion fails; ";
                }
            } catch (const error& e) {
                ok = false;
                why << "piece '" << p.id << "': " << e.what() << "; ";
            }
        }
        report.add("neumann_per_piece", ok, why.str());
    }

    // (vi) the total complex is connected (and structurally valid)
    {
        AmalgamValidation total_val = validate_amalgam(c.total());
        std::string why;
        for (const auto& v : total_val.violations) why += v + "; ";
        report.add("total_connected", total_val.pass, why);
    }

    // realized pieces, when present, must match their induced CoverSpec
    if (!c.realizations.empty()) {
        std::ostringstream why;
        bool ok = true;
        for (const auto& [pid, rep] : c.realizations) {
            const CoverPiece* p = c.find_piece(pid);
            if (!p) {
                ok = false;
                why << "realization for unknown piece '" << pid << "'; ";
                continue;
            }
            try {
                CoverSpec want = piece_cover_spec(c, *p);
                CoverAnalysis an = analyze_rep(rep);
                bool match = rep.base == c.base.pieces[p->base_piece] &&
                             rep.degree == want.degree && an.connected();
                if (match) {
                    for (size_t j = 0; j < an.components[0].boundary_cycles.size(); ++j)
                        if (an.components[0].boundary_cycles[j] != want.boundary_partitions[j])
                            match = false;
                }
                if (!match) {
                    ok = false;
                    why << "piece '" << pid << "': realization does not match its spec; ";
                }
            } catch (const error& e) {
                ok = false;
                why << "piece '" << pid << "': " << e.what() << "; ";
            }
        }
        report.add("realizations_match", ok, why.str());
    }

    return report;
}

/// Attach a connected permutation realization to every piece. Deterministic
/// per seed: each piece derives its stream from (seed, piece index).
inline AmalgamCover realize_amalgam_cover(AmalgamCover c, std::uint64_t seed,
                                          const SearchBudget& budget = {}) {
    VerificationReport pre = verify_amalgam_cover(c);
    if (!pre.pass()) throw error("cover fails verification; cannot realize");
    for (size_t i = 0; i < c.pieces.size(); ++i) {
        const CoverPiece& p = c.pieces[i];
        try {
            c.realizations[p.id] = realize_surface_cover(
                c.base.pieces[p.base_piece], piece_cover_spec(c, p),
                seed * 0x9e3779b97f4a7c15ULL + i, budget);
        } catch (const search_exhausted_error&) {
            throw search_exhausted_error("realization budget spent on piece '" + p.id + "'");
        }
    }
    return c;
}

}  // namespace ssa
