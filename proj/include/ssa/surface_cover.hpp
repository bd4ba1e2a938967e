#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "ssa/errors.hpp"
#include "ssa/permutation.hpp"
#include "ssa/surface.hpp"

namespace ssa {

/// Prescribed degree plus one boundary-degree partition per boundary component
/// of the base surface.
struct CoverSpec {
    long long degree = 1;
    std::vector<std::vector<long long>> boundary_partitions;

    /// Partitions as multisets: parts sorted decreasing.
    CoverSpec normalized() const {
        CoverSpec out = *this;
        for (auto& p : out.boundary_partitions)
            std::sort(p.begin(), p.end(), std::greater<>());
        return out;
    }

    friend bool operator==(const CoverSpec&, const CoverSpec&) = default;
};

inline void check_spec_shape(const Surface& base, const CoverSpec& spec) {
    if (spec.degree < 1) throw spec_mismatch_error("degree must be positive");
    if (static_cast<long long>(spec.boundary_partitions.size()) != base.boundary)
        throw spec_mismatch_error("partition count differs from boundary count");
    for (const auto& part : spec.boundary_partitions) {
        long long sum = 0;
        for (long long v : part) {
            if (v < 1) throw spec_mismatch_error("partition parts must be positive");
            sum += v;
        }
        if (sum != spec.degree)
            throw spec_mismatch_error("partition does not sum to the degree");
    }
}

/// Parity criterion: a degree-d cover with the prescribed boundary degrees
/// exists iff the total number of cover boundary components has the same
/// parity as d*chi(base). Requires positive genus.
inline bool neumann_feasible(const Surface& base, const CoverSpec& spec) {
    if (base.genus < 1)
        throw invalid_genus_error("cover lemma requires positive genus");
    check_spec_shape(base, spec);
    long long n_prime = 0;
    for (const auto& part : spec.boundary_partitions)
        n_prime += static_cast<long long>(part.size());
    return (n_prime - spec.degree * base.chi()) % 2 == 0;
}

/// Generator images for the fixed presentation
/// <a_1,b_1,...,a_g,b_g,c_1,...,c_b | [a_1,b_1]...[a_g,b_g] c_1...c_b>,
/// composed left to right.
struct SurfaceCoverRep {
    Surface base;
    long long degree = 1;
    std::vector<Permutation> a;  // size genus
    std::vector<Permutation> b;  // size genus
    std::vector<Permutation> c;  // size boundary

    Permutation relator_product() const {
        Permutation prod = Permutation::identity(static_cast<int>(degree));
        for (size_t i = 0; i < a.size(); ++i) prod = prod.then(commutator(a[i], b[i]));
        for (const auto& s : c) prod = prod.then(s);
        return prod;
    }

    bool relator_holds() const { return relator_product().is_identity(); }

    std::vector<Permutation> all_generators() const {
        std::vector<Permutation> gens;
        gens.insert(gens.end(), a.begin(), a.end());
        gens.insert(gens.end(), b.begin(), b.end());
        gens.insert(gens.end(), c.begin(), c.end());
        return gens;
    }

    friend bool operator==(const SurfaceCoverRep&, const SurfaceCoverRep&) = default;
};

struct ComponentAnalysis {
    long long degree = 0;  // orbit size
    std::vector<std::vector<long long>> boundary_cycles;  // per base boundary comp
    long long genus = 0;
    std::vector<int> points;

    long long boundary_count() const {
        long long n = 0;
        for (const auto& bc : boundary_cycles) n += static_cast<long long>(bc.size());
        return n;
    }
};

struct CoverAnalysis {
    std::vector<ComponentAnalysis> components;

    bool connected() const { return components.size() == 1; }
};

/// Orbit and cycle decomposition of a rep. Genus of each component comes from
/// chi multiplicativity: chi(component) = orbit_size * chi(base).
inline CoverAnalysis analyze_rep(const SurfaceCoverRep& rep) {
    if (!rep.relator_holds())
        throw relator_violation_error("generator images violate the surface relator");
    CoverAnalysis out;
    for (const auto& orbit : orbits(rep.all_generators(), static_cast<int>(rep.degree))) {
        ComponentAnalysis comp;
        comp.points = orbit;
        comp.degree = static_cast<long long>(orbit.size());
        for (const auto& sigma : rep.c)
            comp.boundary_cycles.push_back(sigma.cycle_type_on(orbit));
        long long chi_comp = comp.degree * rep.base.chi();
        comp.genus = surface_from_chi(chi_comp, comp.boundary_count()).genus;
        out.components.push_back(std::move(comp));
    }
    return out;
}

struct GeneratorRef {
    char family = 'a';  // 'a', 'b' or 'c'
    int index = 1;      // 1-based
    bool inverse = false;
};

/// Word syntax: concatenated tokens like a1B1c2; uppercase means inverse.
inline std::vector<GeneratorRef> parse_word(const std::string& word) {
    std::vector<GeneratorRef> out;
    size_t i = 0;
    while (i < word.size()) {
        char ch = word[i];
        char low = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        if (low != 'a' && low != 'b' && low != 'c')
            throw unknown_generator_error(std::string("unknown generator family '") + ch + "'");
        ++i;
        size_t start = i;
        while (i < word.size() && std::isdigit(static_cast<unsigned char>(word[i]))) ++i;
        if (start == i) throw unknown_generator_error("generator token without index");
        out.push_back({low, std::stoi(word.substr(start, i - start)),
                       static_cast<bool>(std::isupper(static_cast<unsigned char>(ch)))});
    }
    return out;
}

inline Permutation evaluate_word(const SurfaceCoverRep& rep,
                                 const std::vector<GeneratorRef>& word) {
    Permutation prod = Permutation::identity(static_cast<int>(rep.degree));
    for (const auto& tok : word) {
        const std::vector<Permutation>* family = nullptr;
        switch (tok.family) {
            case 'a': family = &rep.a; break;
            case 'b': family = &rep.b; break;
            case 'c': family = &rep.c; break;
            default: throw unknown_generator_error("unknown generator family");
        }
        if (tok.index < 1 || tok.index > static_cast<int>(family->size()))
            throw unknown_generator_error("generator index out of range: " +
                                          std::string(1, tok.family) +
                                          std::to_string(tok.index));
        const Permutation& g = (*family)[tok.index - 1];
        prod = prod.then(tok.inverse ? g.inverse() : g);
    }
    return prod;
}

/// Covering degrees of the preimage components of the free homotopy class of
/// `word`: the cycle lengths of its permutation image, decreasing.
inline std::vector<long long> lift_curve(const SurfaceCoverRep& rep,
                                         const std::vector<GeneratorRef>& word) {
    return evaluate_word(rep, word).cycle_type();
}

inline std::vector<long long> lift_curve(const SurfaceCoverRep& rep,
                                         const std::string& word) {
    return lift_curve(rep, parse_word(word));
}

struct SearchBudget {
    long long max_samples = 200000;   // rejection-sampling attempts
    long long enum_cap = 2000000;     // cap on (d!)^rank for exhaustive work
};

namespace detail {

inline long long factorial(long long n) {
    long long f = 1;
    for (long long i = 2; i <= n; ++i) f *= i;
    return f;
}

/// (d!)^rank, saturating well above any sane cap.
inline long long enumeration_size(long long degree, long long rank) {
    long long fact = factorial(degree);
    long long total = 1;
    for (long long i = 0; i < rank; ++i) {
        if (total > (1LL << 62) / fact) return 1LL << 62;
        total *= fact;
    }
    return total;
}

inline SurfaceCoverRep assemble_rep(const Surface& base, long long degree,
                                    std::vector<Permutation> free_gens) {
    // free_gens: a_1,b_1,...,a_g,b_g,c_1,...,c_{b-1}; c_b solves the relator.
    SurfaceCoverRep rep;
    rep.base = base;
    rep.degree = degree;
    size_t idx = 0;
    for (long long i = 0; i < base.genus; ++i) {
        rep.a.push_back(free_gens[idx++]);
        rep.b.push_back(free_gens[idx++]);
    }
    for (long long j = 0; j + 1 < base.boundary; ++j) rep.c.push_back(free_gens[idx++]);
    Permutation partial = Permutation::identity(static_cast<int>(degree));
    for (long long i = 0; i < base.genus; ++i)
        partial = partial.then(commutator(rep.a[i], rep.b[i]));
    for (const auto& s : rep.c) partial = partial.then(s);
    rep.c.push_back(partial.inverse());
    return rep;
}

inline bool matches_spec(const SurfaceCoverRep& rep, const CoverSpec& spec) {
    const CoverSpec want = spec.normalized();
    for (size_t j = 0; j < rep.c.size(); ++j)
        if (rep.c[j].cycle_type() != want.boundary_partitions[j]) return false;
    return transitive(rep.all_generators(), static_cast<int>(rep.degree));
}

}  // namespace detail

struct EnumeratedCover {
    SurfaceCoverRep rep;
    CoverAnalysis analysis;
};

/// Visit every tuple of permutations for the free generators, with the last
/// boundary generator solved from the relator. Stops early when the callback
/// returns true.
template <typename Visitor>
void for_each_cover(const Surface& base, long long degree, const SearchBudget& budget,
                    Visitor&& visit) {
    if (base.genus < 1)
        throw invalid_genus_error("cover lemma requires positive genus");
    if (base.boundary < 1) throw spec_mismatch_error("base must have boundary");
    const long long rank = 2 * base.genus + base.boundary - 1;
    if (detail::enumeration_size(degree, rank) > budget.enum_cap)
        throw budget_exceeded_error("(d!)^rank exceeds the enumeration cap");

    std::vector<Permutation> all_perms;
    {
        std::vector<int> im(degree);
        std::iota(im.begin(), im.end(), 0);
        do {
            all_perms.push_back(Permutation(im));
        } while (std::next_permutation(im.begin(), im.end()));
    }

    std::vector<size_t> choice(rank, 0);
    const size_t n = all_perms.size();
    while (true) {
        std::vector<Permutation> free_gens;
        free_gens.reserve(rank);
        for (size_t k = 0; k < choice.size(); ++k) free_gens.push_back(all_perms[choice[k]]);
        if (visit(detail::assemble_rep(base, degree, std::move(free_gens)))) return;

        size_t pos = 0;
        while (pos < choice.size() && ++choice[pos] == n) choice[pos++] = 0;
        if (pos == choice.size()) break;
    }
}

/// Brute-force oracle table: every tuple with its analysis. Disconnected
/// covers are included (components > 1) for oracle completeness.
inline std::vector<EnumeratedCover> enumerate_covers(const Surface& base, long long degree,
                                                     const SearchBudget& budget = {}) {
    std::vector<EnumeratedCover> out;
    for_each_cover(base, degree, budget, [&](const SurfaceCoverRep& rep) {
        out.push_back({rep, analyze_rep(rep)});
        return false;
    });
    return out;
}

/// True iff some tuple realizes `spec` as a connected cover. Exhaustive; used
/// as the independent oracle for the parity criterion.
inline bool connected_cover_exists(const Surface& base, const CoverSpec& spec,
                                   const SearchBudget& budget = {}) {
    check_spec_shape(base, spec);
    const CoverSpec want = spec.normalized();
    bool found = false;
    for_each_cover(base, spec.degree, budget, [&](const SurfaceCoverRep& rep) {
        found = detail::matches_spec(rep, want);
        return found;
    });
    return found;
}

/// Seeded randomized realization of a feasible CoverSpec as a connected rep.
/// Samples handle generators uniformly, boundary generators as random
/// conjugates of the canonical cycle-type permutation, and solves the last
/// boundary generator from the relator. Falls back to exhaustive search for
/// small degree before reporting exhaustion.
inline SurfaceCoverRep realize_surface_cover(const Surface& base, const CoverSpec& spec,
                                             std::uint64_t seed,
                                             const SearchBudget& budget = {}) {
    if (!neumann_feasible(base, spec))
        throw infeasible_error("parity criterion fails for the requested spec");
    const CoverSpec want = spec.normalized();
    const int d = static_cast<int>(spec.degree);

    if (d == 1) {
        SurfaceCoverRep rep;
        rep.base = base;
        rep.degree = 1;
        for (long long i = 0; i < base.genus; ++i) {
            rep.a.push_back(Permutation::identity(1));
            rep.b.push_back(Permutation::identity(1));
        }
        for (long long j = 0; j < base.boundary; ++j)
            rep.c.push_back(Permutation::identity(1));
        return rep;
    }

    std::mt19937_64 rng(seed);
    for (long long attempt = 0; attempt < budget.max_samples; ++attempt) {
        std::vector<Permutation> free_gens;
        for (long long i = 0; i < 2 * base.genus; ++i)
            free_gens.push_back(random_permutation(d, rng));
        for (long long j = 0; j + 1 < base.boundary; ++j) {
            Permutation canon = canonical_of_cycle_type(want.boundary_partitions[j], d);
            free_gens.push_back(conjugate(canon, random_permutation(d, rng)));
        }
        SurfaceCoverRep rep = detail::assemble_rep(base, spec.degree, std::move(free_gens));
        if (detail::matches_spec(rep, want)) return rep;
    }

    const long long rank = 2 * base.genus + base.boundary - 1;
    if (d <= 6 && detail::enumeration_size(d, rank) <= budget.enum_cap) {
        SurfaceCoverRep found;
        bool ok = false;
        for_each_cover(base, spec.degree, budget, [&](const SurfaceCoverRep& rep) {
            if (detail::matches_spec(rep, want)) {
                found = rep;
                ok = true;
            }
            return ok;
        });
        if (ok) return found;
        throw infeasible_error("exhaustive search found no connected realization");
    }
    throw search_exhausted_error("realization budget spent; raise the budget or reseed");
}

}  // namespace ssa
