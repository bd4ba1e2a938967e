// Acceptance suite: one test per criterion, each printing a single
// PASS/FAIL line so the whole gate can be read off the log.

#include <gtest/gtest.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "ssa/construction.hpp"

using namespace ssa;

namespace {

void report_line(int n, const std::string& title) {
    bool ok = !::testing::Test::HasFailure();
    std::cout << "[criterion " << n << "] " << title << ": " << (ok ? "PASS" : "FAIL")
              << std::endl;
}

AmalgamComplex simple_amalgam(const std::vector<long long>& genera) {
    AmalgamComplex x;
    x.circles = {"c"};
    for (long long g : genera) {
        x.pieces.push_back({g, 1});
        x.attachments.push_back({"c"});
    }
    return x;
}

std::vector<std::vector<long long>> partitions_of(long long d) {
    std::vector<std::vector<long long>> out;
    std::vector<long long> cur;
    auto rec = [&](auto&& self, long long remaining, long long max_part) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (long long p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, d, d);
    return out;
}

const CheckResult* find_check(const VerificationReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

CoverPiece& piece_ref(AmalgamCover& c, const std::string& id) {
    for (auto& p : c.pieces)
        if (p.id == id) return p;
    throw error("no piece '" + id + "'");
}

}  // namespace

TEST(Acceptance, C1MainExampleExactIntegers) {
    auto start = std::chrono::steady_clock::now();
    Certificate cert = build_main_example();
    EXPECT_TRUE(cert.report.pass());
    EXPECT_EQ(cert.x_prime.degree, 3);
    EXPECT_EQ(cert.x_dprime.degree, 4);
    EXPECT_EQ(euler_char_amalgam(cert.base), -3);
    EXPECT_EQ(euler_char_amalgam(cert.x_prime.total()), -9);
    EXPECT_EQ(euler_char_amalgam(cert.x_dprime.total()), -12);
    ASSERT_EQ(cert.witness.assignment.size(), 3u);
    for (const auto& asg : cert.witness.assignment) {
        long long chi = 0, free_boundary = 0;
        std::set<std::string> consumed(asg.consumed_lifts.begin(), asg.consumed_lifts.end());
        for (const auto& id : asg.parts) {
            const CoverPiece* p = cert.x_dprime.find_piece(id);
            chi += p->surface.chi();
            for (const auto& bm : p->boundary_map)
                if (!consumed.count(bm.lift)) ++free_boundary;
        }
        EXPECT_EQ(chi, -3);
        EXPECT_EQ(free_boundary, 1);
        EXPECT_EQ(surface_from_chi(chi, free_boundary).genus, 2);
    }
    ASSERT_EQ(cert.witness.complement.size(), 3u);
    for (const auto& id : cert.witness.complement)
        EXPECT_EQ(cert.x_dprime.find_piece(id)->surface.chi(), -1);
    auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_LT(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count(), 1000);
    report_line(1, "main example reproduction");
}

TEST(Acceptance, C2ParityOracleEquivalence) {
    for (long long b = 1; b <= 2; ++b) {
        Surface base{1, b};
        for (long long d = 1; d <= 5; ++d) {
            // one exhaustive sweep collecting every boundary type achieved by
            // a connected cover
            std::set<std::vector<std::vector<long long>>> achieved;
            for_each_cover(base, d, SearchBudget{}, [&](const SurfaceCoverRep& rep) {
                if (transitive(rep.all_generators(), static_cast<int>(d))) {
                    std::vector<std::vector<long long>> key;
                    for (const auto& s : rep.c) key.push_back(s.cycle_type());
                    achieved.insert(std::move(key));
                }
                return false;
            });
            // compare with the parity criterion on every well-formed spec
            auto parts = partitions_of(d);
            std::vector<size_t> idx(b, 0);
            while (true) {
                CoverSpec spec{d, {}};
                for (long long j = 0; j < b; ++j)
                    spec.boundary_partitions.push_back(parts[idx[j]]);
                bool feasible = neumann_feasible(base, spec);
                bool exists = achieved.count(spec.normalized().boundary_partitions) > 0;
                EXPECT_EQ(feasible, exists)
                    << "b=" << b << " d=" << d << " first part size "
                    << spec.boundary_partitions[0].size();
                long long j = b - 1;
                for (; j >= 0; --j) {
                    if (++idx[j] < parts.size()) break;
                    idx[j] = 0;
                }
                if (j < 0) break;
            }
        }
    }
    report_line(2, "parity criterion matches the exhaustive oracle");
}

TEST(Acceptance, C3RealizationFidelity) {
    std::mt19937_64 rng(1001);
    int runs = 0;
    while (runs < 50) {
        Surface base{1 + static_cast<long long>(uniform_below(rng, 2)),
                     1 + static_cast<long long>(uniform_below(rng, 2))};
        long long d = 2 + static_cast<long long>(uniform_below(rng, 7));
        // partitions with at most two parts keep the rejection sampler fast
        CoverSpec spec{d, {}};
        for (long long j = 0; j < base.boundary; ++j) {
            long long first = 1 + static_cast<long long>(uniform_below(rng, d));
            std::vector<long long> part{first};
            if (first < d) part.push_back(d - first);
            std::sort(part.rbegin(), part.rend());
            spec.boundary_partitions.push_back(std::move(part));
        }
        if (!neumann_feasible(base, spec)) continue;
        SurfaceCoverRep rep = realize_surface_cover(base, spec, 5000 + runs);
        EXPECT_TRUE(rep.relator_holds());
        Permutation prod = Permutation::identity(static_cast<int>(d));
        for (const auto& s : rep.c) prod = prod.then(s);
        EXPECT_EQ(prod.sign(), 1);
        CoverAnalysis an = analyze_rep(rep);
        ASSERT_TRUE(an.connected());
        for (size_t j = 0; j < spec.boundary_partitions.size(); ++j)
            EXPECT_EQ(an.components[0].boundary_cycles[j], spec.boundary_partitions[j]);
        ++runs;
    }
    report_line(3, "seeded realizations reproduce their specs");
}

TEST(Acceptance, C4ClaimSolverSubstitution) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
        size_t k = 3 + uniform_below(rng, 6);
        std::vector<long long> chis;
        for (size_t i = 0; i < k; ++i)
            chis.push_back(-2 * (1 + static_cast<long long>(uniform_below(rng, 10))));
        ClaimSolution sol = solve_claim_integers(chis);
        for (long long di : sol.d_list) EXPECT_GE(di, 1);
        // independent substitution of every equation
        VerificationReport r = verify_claim_solution(sol);
        EXPECT_TRUE(r.pass());
        const size_t n = sol.chis.size();
        for (size_t i = 0; i < n; ++i) {
            long long prev = sol.chis[(i + n - 1) % n];
            EXPECT_EQ((sol.d + sol.d_list[i]) * sol.chis[i] + 2 * sol.d_list[i] * prev +
                          sol.d_list[i] * sol.chis[i],
                      sol.D * sol.chis[i]);
        }
    }
    report_line(4, "claim solver satisfies all equations");
}

TEST(Acceptance, C5GeneralPipelineGrid) {
    auto start = std::chrono::steady_clock::now();
    std::vector<std::vector<long long>> grid;
    for (size_t k = 3; k <= 6; ++k) {
        for (long long g = 1; g <= 4; ++g) grid.push_back(std::vector<long long>(k, g));
        std::vector<long long> mixed;
        for (size_t i = 0; i < k; ++i) mixed.push_back(static_cast<long long>(i % 4) + 1);
        grid.push_back(std::move(mixed));
    }
    ASSERT_GE(grid.size(), 20u);
    for (const auto& genera : grid) {
        Certificate cert = certify_not_comm_cohopfian(simple_amalgam(genera));
        EXPECT_TRUE(cert.report.pass()) << "k=" << genera.size();
        const size_t k = genera.size();
        EXPECT_EQ(cert.witness.complement.size(), 2 * k * (k - 2));
        long long chi_comp = 0;
        for (const auto& id : cert.witness.complement) {
            long long chi = cert.x_dprime.find_piece(id)->surface.chi();
            EXPECT_LT(chi, 0);
            chi_comp += chi;
        }
        EXPECT_EQ(euler_char_amalgam(cert.x_dprime.total()),
                  euler_char_amalgam(cert.x_prime.total()) + chi_comp);
    }
    auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_LT(std::chrono::duration_cast<std::chrono::seconds>(elapsed).count(), 10);
    report_line(5, "pipeline grid certifies with exact complement bookkeeping");
}

TEST(Acceptance, C6CurveLiftingDegrees) {
    // a degree-3 connected cover with boundary type {3} in which the first
    // handle generator has two preimage circles, of degrees 1 and 2
    Surface base{1, 1};
    bool found = false;
    for_each_cover(base, 3, SearchBudget{}, [&](const SurfaceCoverRep& rep) {
        if (!transitive(rep.all_generators(), 3)) return false;
        if (rep.c[0].cycle_type() != std::vector<long long>{3}) return false;
        if (rep.a[0].cycle_type() != std::vector<long long>{2, 1}) return false;
        EXPECT_EQ(lift_curve(rep, "a1"), (std::vector<long long>{2, 1}));
        found = true;
        return true;
    });
    EXPECT_TRUE(found);
    report_line(6, "curve lifting exhibits preimages of degrees 1 and 2");
}

TEST(Acceptance, C7MutationDetection) {
    CertifyOptions opts;
    opts.realize = true;
    opts.seed = 11;
    const Certificate baseline = certify_not_comm_cohopfian(simple_amalgam({1, 1, 1}), opts);
    ASSERT_TRUE(baseline.report.pass());

    using Mutation = std::function<void(Certificate&)>;
    std::vector<std::pair<std::string, Mutation>> mutations;
    auto add = [&](const std::string& name, Mutation m) {
        mutations.emplace_back(name, std::move(m));
    };

    add("base_simple", [](Certificate& c) {
        c.base.pieces.pop_back();
        c.base.attachments.pop_back();
    });

    // per-cover mutations, instantiated for hat, x_prime and x_dprime
    struct Target {
        std::string prefix;
        std::function<AmalgamCover&(Certificate&)> get;
        std::string inflate_piece;   // keeps structure, breaks degree sums
        Surface inflated;
        std::string degenerate_piece;  // chi ratio below one
        std::string rep_piece;
    };
    std::vector<Target> targets = {
        {"hat.", [](Certificate& c) -> AmalgamCover& { return *c.hat; },
         "hat_1", {3, 2}, "hat_1", "hat_1"},
        {"xp.", [](Certificate& c) -> AmalgamCover& { return c.x_prime; },
         "p_1", {10, 2}, "p_1", "p_1"},
        {"xpp.", [](Certificate& c) -> AmalgamCover& { return c.x_dprime; },
         "s3_1", {3, 2}, "s3_1", "s3_1"},
    };
    for (const auto& t : targets) {
        add(t.prefix + "base_valid",
            [t](Certificate& c) { t.get(c).base.attachments[0].clear(); });
        add(t.prefix + "structure",
            [t](Certificate& c) { t.get(c).pieces[0].boundary_map[0].lift = "nope"; });
        add(t.prefix + "circle_degree_sum",
            [t](Certificate& c) { t.get(c).circle_lifts[0].degree += 1; });
        add(t.prefix + "piece_degree_integral", [t](Certificate& c) {
            piece_ref(t.get(c), t.degenerate_piece).surface = {0, 2};
        });
        add(t.prefix + "piece_boundary_degrees", [t](Certificate& c) {
            piece_ref(t.get(c), t.inflate_piece).surface = t.inflated;
        });
        add(t.prefix + "piece_degree_sum", [t](Certificate& c) {
            piece_ref(t.get(c), t.inflate_piece).surface = t.inflated;
        });
        add(t.prefix + "chi_multiplicativity",
            [t](Certificate& c) { t.get(c).degree += 1; });
        add(t.prefix + "neumann_per_piece", [t](Certificate& c) {
            piece_ref(t.get(c), t.inflate_piece).surface = t.inflated;
        });
        add(t.prefix + "total_connected", [t](Certificate& c) {
            AmalgamCover& cover = t.get(c);
            cover.circle_lifts.push_back({"omega", cover.base.circles[0], 1});
        });
        add(t.prefix + "realizations_match", [t](Certificate& c) {
            // all-identity generators either break the boundary types or
            // leave the cover disconnected
            SurfaceCoverRep& rep = t.get(c).realizations.at(t.rep_piece);
            Permutation id = Permutation::identity(static_cast<int>(rep.degree));
            for (auto& g : rep.a) g = id;
            for (auto& g : rep.b) g = id;
            for (auto& g : rep.c) g = id;
        });
    }
    add("hat.boundary_lift_bijection",
        [](Certificate& c) { c.hat->pieces[0].boundary_map[1] = {0, "gamma"}; });
    add("xp.boundary_lift_bijection",
        [](Certificate& c) { c.x_prime.pieces[0].boundary_map[1] = {0, "rho"}; });
    add("xpp.boundary_lift_bijection", [](Certificate& c) {
        piece_ref(c.x_dprime, "s3_1").boundary_map[0].lift = "rho1_1";
    });

    add("hat_degree_two", [](Certificate& c) { c.hat->degree = 3; });
    add("hat_base_match", [](Certificate& c) { c.base.pieces[0].genus = 2; });
    add("bases_consistent",
        [](Certificate& c) { c.x_dprime.base.pieces[0].genus = 5; });

    add("claim_shape", [](Certificate& c) { c.solution->chis[0] = -3; });
    add("claim_divisibility", [](Certificate& c) { c.solution->D += 1; });
    add("claim_di_positive", [](Certificate& c) { c.solution->d_list[0] = 0; });
    add("claim_eq_1", [](Certificate& c) { c.solution->d_list[0] += 1; });
    add("claim_eq_2", [](Certificate& c) { c.solution->d_list[1] += 1; });
    add("claim_eq_3", [](Certificate& c) { c.solution->d_list[2] += 1; });
    add("x_prime_degree", [](Certificate& c) { c.x_prime.degree += 2; });
    add("x_dprime_degree", [](Certificate& c) { c.x_dprime.degree += 2; });
    add("solution_chis_match", [](Certificate& c) { c.solution->chis[0] = -4; });

    add("witness_partition", [](Certificate& c) { c.witness.complement.pop_back(); });
    add("witness_chi_sum", [](Certificate& c) {
        c.witness.assignment[0].parts.push_back(c.witness.complement.back());
        c.witness.complement.pop_back();
    });
    add("witness_boundary_pattern",
        [](Certificate& c) { c.witness.assignment[0].consumed_lifts.push_back("rho"); });
    add("witness_connected", [](Certificate& c) {
        std::erase(c.witness.assignment[0].consumed_lifts, std::string("rho2_1"));
        std::erase(c.witness.assignment[0].consumed_lifts, std::string("rho2p_1"));
    });
    add("ambient_negative_chi", [](Certificate& c) {
        piece_ref(c.x_dprime, "t_1_2").surface = {0, 2};
    });
    add("complement_nonempty", [](Certificate& c) {
        for (const auto& id : c.witness.complement)
            c.witness.assignment[0].parts.push_back(id);
        c.witness.complement.clear();
    });
    add("complement_negative_chi", [](Certificate& c) {
        piece_ref(c.x_dprime, "t_1_2").surface = {0, 2};
    });
    add("complement_chi_balance", [](Certificate& c) {
        piece_ref(c.x_prime, "p_1").surface = {8, 2};
    });

    // the map must be exhaustive over the check names of a passing report
    std::set<std::string> named;
    for (const auto& [name, fn] : mutations) named.insert(name);
    for (const auto& check : baseline.report.checks)
        EXPECT_TRUE(named.count(check.name)) << "no mutation for check " << check.name;

    for (const auto& [name, fn] : mutations) {
        Certificate mutated = baseline;
        fn(mutated);
        VerificationReport r = verify_certificate(mutated);
        EXPECT_FALSE(r.pass()) << name;
        const CheckResult* c = find_check(r, name);
        ASSERT_NE(c, nullptr) << "check " << name << " missing after mutation";
        EXPECT_FALSE(c->pass) << "mutation did not trip " << name;
    }
    report_line(7, "every named check is tripped by a targeted mutation");
}
