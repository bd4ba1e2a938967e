#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ssa/errors.hpp"

namespace ssa {

/// Compact oriented surface with boundary, classified by (genus, boundary count).
/// Euler characteristic is always derived, never stored.
struct Surface {
    long long genus = 0;
    long long boundary = 0;

    long long chi() const { return 2 - 2 * genus - boundary; }

    friend bool operator==(const Surface&, const Surface&) = default;
};

inline long long euler_char_surface(const Surface& s) { return s.chi(); }

/// Recover (genus, boundary) from chi; throws if chi + boundary is odd or the
/// genus would be negative.
inline Surface surface_from_chi(long long chi, long long boundary) {
    long long twice_genus = 2 - boundary - chi;
    if (twice_genus < 0 || twice_genus % 2 != 0)
        throw error("no oriented surface with chi=" + std::to_string(chi) +
                    ", boundary=" + std::to_string(boundary));
    return Surface{twice_genus / 2, boundary};
}

/// A finite set of surface pieces with every boundary component attached to a
/// named branch circle.
struct AmalgamComplex {
    std::vector<std::string> circles;
    std::vector<Surface> pieces;
    // attachments[i][j] = circle of boundary component j of piece i
    std::vector<std::vector<std::string>> attachments;

    friend bool operator==(const AmalgamComplex&, const AmalgamComplex&) = default;
};

inline long long euler_char_amalgam(const AmalgamComplex& x) {
    long long total = 0;
    for (const auto& p : x.pieces) total += p.chi();
    return total;
}

/// Exactly one circle, at least three pieces, each with one boundary component
/// and chi < 0.
inline bool is_simple_amalgam(const AmalgamComplex& x) {
    if (x.circles.size() != 1) return false;
    if (x.pieces.size() < 3) return false;
    for (const auto& p : x.pieces)
        if (p.boundary != 1 || p.chi() >= 0) return false;
    return true;
}

struct AmalgamValidation {
    bool pass = true;
    bool simple = false;
    std::vector<std::string> violations;
};

inline AmalgamValidation validate_amalgam(const AmalgamComplex& x) {
    AmalgamValidation report;
    auto fail = [&](const std::string& msg) {
        report.pass = false;
        report.violations.push_back(msg);
    };

    std::set<std::string> circle_set(x.circles.begin(), x.circles.end());
    if (circle_set.size() != x.circles.size()) fail("duplicate circle identifiers");
    for (const auto& p : x.pieces)
        if (p.genus < 0 || p.boundary < 0) fail("negative genus or boundary count");

    if (x.attachments.size() != x.pieces.size()) {
        fail("attachment list length differs from piece count");
        return report;
    }

    std::map<std::string, long long> attached_count;
    for (size_t i = 0; i < x.pieces.size(); ++i) {
        if (static_cast<long long>(x.attachments[i].size()) != x.pieces[i].boundary) {
            fail("piece " + std::to_string(i) +
                 ": boundary components not all attached to a circle");
            continue;
        }
        for (const auto& c : x.attachments[i]) {
            if (!circle_set.count(c)) {
                fail("piece " + std::to_string(i) + ": unknown circle '" + c + "'");
                continue;
            }
            ++attached_count[c];
        }
    }
    for (const auto& c : x.circles)
        if (attached_count[c] == 0)
            fail("circle '" + c + "' has no attached boundary component");

    // Connectivity of the bipartite piece/circle incidence graph.
    if (report.pass && !x.pieces.empty()) {
        std::map<std::string, std::vector<size_t>> circle_pieces;
        for (size_t i = 0; i < x.pieces.size(); ++i)
            for (const auto& c : x.attachments[i]) circle_pieces[c].push_back(i);
        std::vector<char> seen(x.pieces.size(), 0);
        std::vector<size_t> stack{0};
        seen[0] = 1;
        size_t reached = 1;
        while (!stack.empty()) {
            size_t i = stack.back();
            stack.pop_back();
            for (const auto& c : x.attachments[i]) {
                for (size_t j : circle_pieces[c]) {
                    if (!seen[j]) {
                        seen[j] = 1;
                        ++reached;
                        stack.push_back(j);
                    }
                }
            }
        }
        if (reached != x.pieces.size()) fail("complex is disconnected");
        // a piece without boundary cannot be attached; covered by connectivity
        // unless it is the only piece, which the circle check already rejects
    }
    if (x.pieces.empty()) fail("complex has no pieces");

    report.simple = report.pass && is_simple_amalgam(x);
    return report;
}

}  // namespace ssa
