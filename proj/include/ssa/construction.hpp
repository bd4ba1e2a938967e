#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ssa/amalgam_cover.hpp"
#include "ssa/errors.hpp"
#include "ssa/surface.hpp"

namespace ssa {

/// Integer data for the degree bookkeeping: D > d with (D - d) divisible by
/// 2*lcm{|chi_{i-1} + chi_i|}, and d_i = (D - d) chi_i / (2 (chi_{i-1} + chi_i)).
struct ClaimSolution {
    long long D = 0;
    long long d = 0;
    std::vector<long long> d_list;
    std::vector<long long> chis;

    long long sum_di() const {
        long long s = 0;
        for (long long v : d_list) s += v;
        return s;
    }

    /// Degree of the larger cover: d + 2*sum(d_i).
    long long big_degree() const { return d + 2 * sum_di(); }

    friend bool operator==(const ClaimSolution&, const ClaimSolution&) = default;
};

inline void check_claim_chis(const std::vector<long long>& chis) {
    if (chis.size() < 3) throw invalid_chi_error("need at least three pieces");
    for (long long chi : chis)
        if (chi >= 0 || chi % 2 != 0)
            throw invalid_chi_error("each chi must be negative and even");
}

/// Minimal solution for the given d: D = d + 2*lcm{|chi_{i-1} + chi_i|}.
inline ClaimSolution solve_claim_integers(const std::vector<long long>& chis,
                                          long long d = 1) {
    check_claim_chis(chis);
    if (d < 1) throw error("d must be positive");
    const size_t k = chis.size();
    long long L = 1;
    for (size_t i = 0; i < k; ++i) {
        long long prev = chis[(i + k - 1) % k];
        L = std::lcm(L, std::llabs(prev + chis[i]));
    }
    ClaimSolution sol;
    sol.d = d;
    sol.D = d + 2 * L;
    sol.chis = chis;
    for (size_t i = 0; i < k; ++i) {
        long long prev = chis[(i + k - 1) % k];
        sol.d_list.push_back((sol.D - d) * chis[i] / (2 * (prev + chis[i])));
    }
    return sol;
}

/// Independent substitution of a solution into all k equations, plus the
/// divisibility and positivity conditions.
inline VerificationReport verify_claim_solution(const ClaimSolution& sol) {
    VerificationReport report;
    const size_t k = sol.chis.size();
    bool shape = k >= 3 && sol.d_list.size() == k && sol.d >= 1 && sol.D > sol.d;
    for (long long chi : sol.chis)
        if (chi >= 0 || chi % 2 != 0) shape = false;
    report.add("claim_shape", shape, shape ? "" : "malformed solution data");
    if (!shape) return report;

    long long L = 1;
    for (size_t i = 0; i < k; ++i)
        L = std::lcm(L, std::llabs(sol.chis[(i + k - 1) % k] + sol.chis[i]));
    report.add("claim_divisibility", (sol.D - sol.d) % (2 * L) == 0);

    bool positive = true;
    for (long long di : sol.d_list)
        if (di < 1) positive = false;
    report.add("claim_di_positive", positive);

    for (size_t i = 0; i < k; ++i) {
        long long prev = sol.chis[(i + k - 1) % k];
        long long lhs = (sol.d + sol.d_list[i]) * sol.chis[i] + 2 * sol.d_list[i] * prev +
                        sol.d_list[i] * sol.chis[i];
        long long rhs = sol.D * sol.chis[i];
        std::ostringstream why;
        if (lhs != rhs) why << "lhs " << lhs << " != rhs " << rhs;
        report.add("claim_eq_" + std::to_string(i + 1), lhs == rhs, why.str());
    }
    return report;
}

/// Degree-2 cover of a simple amalgam: two circle lifts gamma/gamma_p of
/// degree 1, one piece per base piece with doubled chi and one boundary
/// component on each lift. Removes parity obstructions downstream.
inline AmalgamCover build_double_cover(const AmalgamComplex& x) {
    AmalgamValidation val = validate_amalgam(x);
    if (!val.pass || !val.simple)
        throw not_simple_error("input is not a valid simple surface amalgam");
    AmalgamCover hat;
    hat.base = x;
    hat.degree = 2;
    hat.circle_lifts.push_back({"gamma", x.circles[0], 1});
    hat.circle_lifts.push_back({"gamma_p", x.circles[0], 1});
    for (size_t i = 0; i < x.pieces.size(); ++i) {
        CoverPiece p;
        p.id = "hat_" + std::to_string(i + 1);
        p.base_piece = static_cast<long long>(i);
        p.surface = surface_from_chi(2 * x.pieces[i].chi(), 2);
        p.boundary_map = {{0, "gamma"}, {0, "gamma_p"}};
        hat.pieces.push_back(std::move(p));
    }
    return hat;
}

/// Degree-D cover of the double cover: one piece per hat piece, chi scaled by
/// D, both boundary components covering their circle with full degree D.
inline AmalgamCover build_x_prime(const AmalgamCover& hat, long long D) {
    if (D < 1) throw error("D must be positive");
    AmalgamCover xp;
    xp.base = hat.total();
    xp.degree = D;
    xp.circle_lifts.push_back({"rho", "gamma", D});
    xp.circle_lifts.push_back({"rho_p", "gamma_p", D});
    for (size_t i = 0; i < xp.base.pieces.size(); ++i) {
        CoverPiece p;
        p.id = "p_" + std::to_string(i + 1);
        p.base_piece = static_cast<long long>(i);
        p.surface = surface_from_chi(D * xp.base.pieces[i].chi(), 2);
        p.boundary_map = {{0, "rho"}, {1, "rho_p"}};
        xp.pieces.push_back(std::move(p));
    }
    return xp;
}

/// Degree-(d + 2*sum d_i) cover of the double cover. Per index i (1-based):
/// s1_i, s2_i, s3_i are the pieces that will reassemble to p_i of X', and
/// t_i_j / u_i_j (j != i, i-1) fill the remaining sheets over the inner
/// circle lifts rho1_i / rho2_i.
inline AmalgamCover build_x_double_prime(const AmalgamCover& hat, const ClaimSolution& sol) {
    AmalgamCover xpp;
    xpp.base = hat.total();
    const size_t k = xpp.base.pieces.size();
    if (sol.chis.size() != k) throw error("solution size differs from piece count");
    for (size_t i = 0; i < k; ++i)
        if (sol.chis[i] != xpp.base.pieces[i].chi())
            throw error("solution chis do not match the double cover");

    xpp.degree = sol.big_degree();
    xpp.circle_lifts.push_back({"rho", "gamma", sol.d});
    xpp.circle_lifts.push_back({"rho_p", "gamma_p", sol.d});
    for (size_t i = 1; i <= k; ++i) {
        const std::string n = std::to_string(i);
        const long long di = sol.d_list[i - 1];
        xpp.circle_lifts.push_back({"rho1_" + n, "gamma", di});
        xpp.circle_lifts.push_back({"rho1p_" + n, "gamma_p", di});
        xpp.circle_lifts.push_back({"rho2_" + n, "gamma", di});
        xpp.circle_lifts.push_back({"rho2p_" + n, "gamma_p", di});
    }

    for (size_t i = 1; i <= k; ++i) {
        const std::string n = std::to_string(i);
        const long long di = sol.d_list[i - 1];
        const size_t prev = (i + k - 2) % k;  // 0-based index of piece i-1
        const long long chi_i = sol.chis[i - 1];
        const long long chi_prev = sol.chis[prev];

        CoverPiece s1;
        s1.id = "s1_" + n;
        s1.base_piece = static_cast<long long>(i - 1);
        s1.surface = surface_from_chi((sol.d + di) * chi_i, 4);
        s1.boundary_map = {{0, "rho"}, {1, "rho_p"}, {0, "rho1_" + n}, {1, "rho1p_" + n}};
        xpp.pieces.push_back(std::move(s1));

        CoverPiece s2;
        s2.id = "s2_" + n;
        s2.base_piece = static_cast<long long>(prev);
        s2.surface = surface_from_chi(2 * di * chi_prev, 4);
        s2.boundary_map = {{0, "rho1_" + n}, {1, "rho1p_" + n},
                           {0, "rho2_" + n}, {1, "rho2p_" + n}};
        xpp.pieces.push_back(std::move(s2));

        CoverPiece s3;
        s3.id = "s3_" + n;
        s3.base_piece = static_cast<long long>(i - 1);
        s3.surface = surface_from_chi(di * chi_i, 2);
        s3.boundary_map = {{0, "rho2_" + n}, {1, "rho2p_" + n}};
        xpp.pieces.push_back(std::move(s3));

        for (size_t j = 1; j <= k; ++j) {
            if (j == i || j == prev + 1) continue;
            const std::string m = std::to_string(j);
            const long long chi_j = sol.chis[j - 1];

            CoverPiece t;
            t.id = "t_" + n + "_" + m;
            t.base_piece = static_cast<long long>(j - 1);
            t.surface = surface_from_chi(di * chi_j, 2);
            t.boundary_map = {{0, "rho1_" + n}, {1, "rho1p_" + n}};
            xpp.pieces.push_back(std::move(t));

            CoverPiece u;
            u.id = "u_" + n + "_" + m;
            u.base_piece = static_cast<long long>(j - 1);
            u.surface = surface_from_chi(di * chi_j, 2);
            u.boundary_map = {{0, "rho2_" + n}, {1, "rho2p_" + n}};
            xpp.pieces.push_back(std::move(u));
        }
    }
    return xpp;
}

/// One piece of the smaller cover expressed as a union of ambient pieces
/// chained along consumed circle lifts.
struct PieceAssignment {
    std::string sub_piece;
    std::vector<std::string> parts;
    std::vector<std::string> consumed_lifts;

    friend bool operator==(const PieceAssignment&, const PieceAssignment&) = default;
};

struct EmbeddingWitness {
    std::vector<PieceAssignment> assignment;
    std::vector<std::string> complement;

    friend bool operator==(const EmbeddingWitness&, const EmbeddingWitness&) = default;
};

/// Checks that the witness exhibits each sub piece as a connected union of
/// ambient pieces of the right homeomorphism type (chi + boundary pattern),
/// with a nonempty all-negative-chi complement.
inline VerificationReport verify_embedding_witness(const AmalgamCover& sub,
                                                   const AmalgamCover& ambient,
                                                   const EmbeddingWitness& w) {
    VerificationReport report;

    // partition of ambient pieces, one assignment per sub piece, disjoint
    // consumed lifts
    {
        std::ostringstream why;
        bool ok = true;
        std::set<std::string> used_parts, used_lifts, sub_targets;
        for (const auto& asg : w.assignment) {
            if (!sub.find_piece(asg.sub_piece)) {
                ok = false;
                why << "unknown sub piece '" << asg.sub_piece << "'; ";
            }
            if (!sub_targets.insert(asg.sub_piece).second) {
                ok = false;
                why << "sub piece '" << asg.sub_piece << "' assigned twice; ";
            }
            for (const auto& id : asg.parts) {
                if (!ambient.find_piece(id)) {
                    ok = false;
                    why << "unknown ambient piece '" << id << "'; ";
                }
                if (!used_parts.insert(id).second) {
                    ok = false;
                    why << "ambient piece '" << id << "' used twice; ";
                }
            }
            for (const auto& id : asg.consumed_lifts) {
                if (!ambient.find_lift(id)) {
                    ok = false;
                    why << "unknown lift '" << id << "'; ";
                }
                if (!used_lifts.insert(id).second) {
                    ok = false;
                    why << "lift '" << id << "' consumed twice; ";
                }
            }
        }
        for (const auto& id : w.complement) {
            if (!ambient.find_piece(id)) {
                ok = false;
                why << "unknown complement piece '" << id << "'; ";
            }
            if (!used_parts.insert(id).second) {
                ok = false;
                why << "complement piece '" << id << "' also assigned; ";
            }
        }
        if (used_parts.size() != ambient.pieces.size()) {
            ok = false;
            why << "assignments plus complement do not cover all ambient pieces; ";
        }
        if (sub_targets.size() != sub.pieces.size()) {
            ok = false;
            why << "not every sub piece has an assignment; ";
        }
        report.add("witness_partition", ok, why.str());
        if (!ok) return report;
    }

    // chi of each union equals chi of its sub piece
    {
        std::ostringstream why;
        bool ok = true;
        for (const auto& asg : w.assignment) {
            long long chi_union = 0;
            for (const auto& id : asg.parts) chi_union += ambient.find_piece(id)->surface.chi();
            long long chi_sub = sub.find_piece(asg.sub_piece)->surface.chi();
            if (chi_union != chi_sub) {
                ok = false;
                why << "'" << asg.sub_piece << "': union chi " << chi_union << " != "
                    << chi_sub << "; ";
            }
        }
        report.add("witness_chi_sum", ok, why.str());
    }

    // unconsumed boundary components of each union match the sub piece in
    // number and in base-circle attachment pattern
    {
        std::ostringstream why;
        bool ok = true;
        for (const auto& asg : w.assignment) {
            std::set<std::string> consumed(asg.consumed_lifts.begin(),
                                           asg.consumed_lifts.end());
            std::vector<std::string> union_circles, sub_circles;
            bool resolved = true;
            for (const auto& id : asg.parts) {
                for (const auto& bm : ambient.find_piece(id)->boundary_map) {
                    if (consumed.count(bm.lift)) continue;
                    const CircleLift* l = ambient.find_lift(bm.lift);
                    if (!l) {
                        resolved = false;
                        continue;
                    }
                    union_circles.push_back(l->base_circle);
                }
            }
            for (const auto& bm : sub.find_piece(asg.sub_piece)->boundary_map) {
                const CircleLift* l = sub.find_lift(bm.lift);
                if (!l) {
                    resolved = false;
                    continue;
                }
                sub_circles.push_back(l->base_circle);
            }
            if (!resolved) {
                ok = false;
                why << "'" << asg.sub_piece << "': boundary attached to unknown lift; ";
                continue;
            }
            std::sort(union_circles.begin(), union_circles.end());
            std::sort(sub_circles.begin(), sub_circles.end());
            if (union_circles != sub_circles) {
                ok = false;
                why << "'" << asg.sub_piece
                    << "': unconsumed boundary pattern does not match; ";
            }
        }
        report.add("witness_boundary_pattern", ok, why.str());
    }

    // each union is chained together by its consumed lifts
    {
        std::ostringstream why;
        bool ok = true;
        for (const auto& asg : w.assignment) {
            std::set<std::string> consumed(asg.consumed_lifts.begin(),
                                           asg.consumed_lifts.end());
            const size_t n = asg.parts.size();
            if (n == 0) {
                ok = false;
                why << "'" << asg.sub_piece << "': empty union; ";
                continue;
            }
            std::vector<std::set<std::string>> lifts_of(n);
            for (size_t i = 0; i < n; ++i)
                for (const auto& bm : ambient.find_piece(asg.parts[i])->boundary_map)
                    if (consumed.count(bm.lift)) lifts_of[i].insert(bm.lift);
            std::vector<char> seen(n, 0);
            std::vector<size_t> stack{0};
            seen[0] = 1;
            size_t reached = 1;
            while (!stack.empty()) {
                size_t i = stack.back();
                stack.pop_back();
                for (size_t j = 0; j < n; ++j) {
                    if (seen[j]) continue;
                    bool shared = std::any_of(
                        lifts_of[i].begin(), lifts_of[i].end(),
                        [&](const std::string& l) { return lifts_of[j].count(l); });
                    if (shared) {
                        seen[j] = 1;
                        ++reached;
                        stack.push_back(j);
                    }
                }
            }
            if (reached != n) {
                ok = false;
                why << "'" << asg.sub_piece << "': union is not connected; ";
            }
        }
        report.add("witness_connected", ok, why.str());
    }

    // essentialness proxies: no disk or annulus pieces anywhere, and the
    // complement is nonempty
    {
        std::ostringstream why;
        bool ok = true;
        for (const auto& p : ambient.pieces) {
            if (p.surface.chi() >= 0) {
                ok = false;
                why << "ambient piece '" << p.id << "' has chi >= 0; ";
            }
        }
        report.add("ambient_negative_chi", ok, why.str());
    }
    report.add("complement_nonempty", !w.complement.empty());
    {
        bool ok = true;
        std::ostringstream why;
        for (const auto& id : w.complement) {
            if (ambient.find_piece(id)->surface.chi() >= 0) {
                ok = false;
                why << "complement piece '" << id << "' has chi >= 0; ";
            }
        }
        report.add("complement_negative_chi", ok, why.str());
    }
    return report;
}

/// Witness for the X' -> X'' embedding: p_i is reassembled from s1_i, s2_i,
/// s3_i along the consumed inner circle lifts; everything else is complement.
inline EmbeddingWitness build_embedding_witness(const AmalgamCover& x_prime,
                                                const AmalgamCover& x_dprime,
                                                const ClaimSolution& sol) {
    EmbeddingWitness w;
    const size_t k = sol.chis.size();
    for (size_t i = 1; i <= k; ++i) {
        const std::string n = std::to_string(i);
        PieceAssignment asg;
        asg.sub_piece = "p_" + n;
        asg.parts = {"s1_" + n, "s2_" + n, "s3_" + n};
        asg.consumed_lifts = {"rho1_" + n, "rho1p_" + n, "rho2_" + n, "rho2p_" + n};
        w.assignment.push_back(std::move(asg));
    }
    for (const auto& p : x_dprime.pieces)
        if (p.id.starts_with("t_") || p.id.starts_with("u_")) w.complement.push_back(p.id);

    VerificationReport check = verify_embedding_witness(x_prime, x_dprime, w);
    for (const auto& c : check.checks)
        if (!c.pass) throw witness_invariant_error("witness check failed: " + c.name);
    return w;
}

/// Everything needed to certify one amalgam: the base, the tower of covers,
/// the integer solution, the embedding witness, and the verification report.
/// The main example certifies directly over the base, so `hat` and `solution`
/// are absent there.
struct Certificate {
    AmalgamComplex base;
    std::optional<AmalgamCover> hat;
    AmalgamCover x_prime;
    AmalgamCover x_dprime;
    std::optional<ClaimSolution> solution;
    EmbeddingWitness witness;
    VerificationReport report;
};

/// Recomputes the full report from the certificate data; never trusts the
/// stored report.
inline VerificationReport verify_certificate(const Certificate& cert) {
    VerificationReport report;

    AmalgamValidation base_val = validate_amalgam(cert.base);
    report.add("base_simple", base_val.pass && base_val.simple,
               base_val.pass ? "" : "base complex invalid");

    AmalgamComplex middle = cert.base;
    if (cert.hat) {
        report.merge(verify_amalgam_cover(*cert.hat), "hat.");
        report.add("hat_degree_two", cert.hat->degree == 2);
        report.add("hat_base_match", cert.hat->base == cert.base);
        middle = cert.hat->total();
    }

    report.merge(verify_amalgam_cover(cert.x_prime), "xp.");
    report.merge(verify_amalgam_cover(cert.x_dprime), "xpp.");
    report.add("bases_consistent",
               cert.x_prime.base == middle && cert.x_dprime.base == middle);

    if (cert.solution) {
        report.merge(verify_claim_solution(*cert.solution), "");
        report.add("x_prime_degree", cert.x_prime.degree == cert.solution->D);
        report.add("x_dprime_degree", cert.x_dprime.degree == cert.solution->big_degree());
        if (cert.hat) {
            bool chis_ok = cert.solution->chis.size() == cert.hat->pieces.size();
            if (chis_ok)
                for (size_t i = 0; i < cert.hat->pieces.size(); ++i)
                    if (cert.hat->pieces[i].surface.chi() != cert.solution->chis[i])
                        chis_ok = false;
            report.add("solution_chis_match", chis_ok);
        }
    }

    report.merge(verify_embedding_witness(cert.x_prime, cert.x_dprime, cert.witness), "");

    // infinite-index proxy at the chi level: the complement carries negative chi
    {
        long long chi_complement = 0;
        for (const auto& id : cert.witness.complement) {
            const CoverPiece* p = cert.x_dprime.find_piece(id);
            if (p) chi_complement += p->surface.chi();
        }
        long long chi_xp = euler_char_amalgam(cert.x_prime.total());
        long long chi_xpp = euler_char_amalgam(cert.x_dprime.total());
        report.add("complement_chi_balance", chi_xpp == chi_xp + chi_complement);
    }

    return report;
}

struct CertifyOptions {
    long long d = 1;
    std::uint64_t seed = 0;
    bool realize = false;
    SearchBudget budget;
};

/// Full pipeline: double cover, integer solution, the two covers, the
/// embedding witness, full verification, optional permutation realization.
inline Certificate certify_not_comm_cohopfian(const AmalgamComplex& x,
                                              const CertifyOptions& opts = {}) {
    Certificate cert;
    cert.base = x;
    AmalgamCover hat = build_double_cover(x);  // throws not_simple_error
    std::vector<long long> chis;
    for (const auto& p : hat.pieces) chis.push_back(p.surface.chi());
    ClaimSolution sol = solve_claim_integers(chis, opts.d);
    AmalgamCover xp = build_x_prime(hat, sol.D);
    AmalgamCover xpp = build_x_double_prime(hat, sol);
    cert.witness = build_embedding_witness(xp, xpp, sol);
    if (opts.realize) {
        hat = realize_amalgam_cover(std::move(hat), opts.seed, opts.budget);
        xp = realize_amalgam_cover(std::move(xp), opts.seed + 1, opts.budget);
        xpp = realize_amalgam_cover(std::move(xpp), opts.seed + 2, opts.budget);
    }
    cert.hat = std::move(hat);
    cert.x_prime = std::move(xp);
    cert.x_dprime = std::move(xpp);
    cert.solution = std::move(sol);
    cert.report = verify_certificate(cert);
    return cert;
}

/// The degree-3 / degree-4 pair over the amalgam of three one-holed tori,
/// certified directly over the base with no double-cover step.
inline Certificate build_main_example() {
    Certificate cert;

    AmalgamComplex x;
    x.circles = {"c"};
    for (int i = 0; i < 3; ++i) {
        x.pieces.push_back({1, 1});
        x.attachments.push_back({"c"});
    }
    cert.base = x;

    AmalgamCover x1;
    x1.base = x;
    x1.degree = 3;
    x1.circle_lifts.push_back({"alpha", "c", 3});
    for (int i = 1; i <= 3; ++i) {
        CoverPiece p;
        p.id = "P" + std::to_string(i);
        p.base_piece = i - 1;
        p.surface = {2, 1};
        p.boundary_map = {{0, "alpha"}};
        x1.pieces.push_back(std::move(p));
    }

    AmalgamCover x2;
    x2.base = x;
    x2.degree = 4;
    x2.circle_lifts.push_back({"alpha", "c", 1});
    for (int i = 1; i <= 3; ++i)
        x2.circle_lifts.push_back({"beta_" + std::to_string(i), "c", 1});
    for (int i = 1; i <= 3; ++i) {
        CoverPiece p;
        p.id = "dbl_" + std::to_string(i);
        p.base_piece = i - 1;
        p.surface = {1, 2};
        p.boundary_map = {{0, "alpha"}, {0, "beta_" + std::to_string(i)}};
        x2.pieces.push_back(std::move(p));
    }
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= 3; ++j) {
            if (j == i) continue;
            CoverPiece p;
            p.id = "copy_" + std::to_string(i) + "_" + std::to_string(j);
            p.base_piece = j - 1;
            p.surface = {1, 1};
            p.boundary_map = {{0, "beta_" + std::to_string(i)}};
            x2.pieces.push_back(std::move(p));
        }
    }

    // P_i reassembles from dbl_i plus the smallest-index copy at beta_i; the
    // remaining copy at each beta_i is complement.
    EmbeddingWitness w;
    for (int i = 1; i <= 3; ++i) {
        int lo = (i == 1) ? 2 : 1;
        int hi = (i == 3) ? 2 : 3;
        PieceAssignment asg;
        asg.sub_piece = "P" + std::to_string(i);
        asg.parts = {"dbl_" + std::to_string(i),
                     "copy_" + std::to_string(i) + "_" + std::to_string(lo)};
        asg.consumed_lifts = {"beta_" + std::to_string(i)};
        w.assignment.push_back(std::move(asg));
        w.complement.push_back("copy_" + std::to_string(i) + "_" + std::to_string(hi));
    }

    cert.x_prime = std::move(x1);
    cert.x_dprime = std::move(x2);
    cert.witness = std::move(w);
    cert.report = verify_certificate(cert);
    return cert;
}

}  // namespace ssa
