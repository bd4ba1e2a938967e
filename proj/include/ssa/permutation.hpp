#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "ssa/errors.hpp"

namespace ssa {

/// Bijection on {0,...,d-1}. Composition is left-to-right throughout:
/// (p.then(q))(x) = q(p(x)).
class Permutation {
public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        std::vector<char> seen(images_.size(), 0);
        for (int v : images_) {
            if (v < 0 || v >= static_cast<int>(images_.size()) || seen[v])
                throw parse_error("permutation images are not a bijection");
            seen[v] = 1;
        }
    }

    static Permutation identity(int degree) {
        std::vector<int> im(degree);
        std::iota(im.begin(), im.end(), 0);
        return Permutation(std::move(im));
    }

    /// External format: 1-based image arrays.
    static Permutation from_one_based(const std::vector<long long>& images) {
        std::vector<int> im;
        im.reserve(images.size());
        for (long long v : images) {
            if (v < 1 || v > static_cast<long long>(images.size()))
                throw parse_error("1-based permutation entry out of range");
            im.push_back(static_cast<int>(v - 1));
        }
        return Permutation(std::move(im));
    }

    int degree() const { return static_cast<int>(images_.size()); }
    int apply(int x) const { return images_[x]; }

    Permutation then(const Permutation& q) const {
        std::vector<int> im(images_.size());
        for (size_t x = 0; x < images_.size(); ++x) im[x] = q.images_[images_[x]];
        return Permutation(std::move(im));
    }

    Permutation inverse() const {
        std::vector<int> im(images_.size());
        for (size_t x = 0; x < images_.size(); ++x) im[images_[x]] = static_cast<int>(x);
        return Permutation(std::move(im));
    }

    bool is_identity() const {
        for (size_t x = 0; x < images_.size(); ++x)
            if (images_[x] != static_cast<int>(x)) return false;
        return true;
    }

    /// +1 for even, -1 for odd: (-1)^(d - #cycles).
    int sign() const {
        int parity = degree() - static_cast<int>(cycle_type().size());
        return parity % 2 == 0 ? 1 : -1;
    }

    std::vector<std::vector<int>> cycles() const {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(images_.size(), 0);
        for (int x = 0; x < degree(); ++x) {
            if (seen[x]) continue;
            std::vector<int> cyc;
            int y = x;
            do {
                seen[y] = 1;
                cyc.push_back(y);
                y = images_[y];
            } while (y != x);
            out.push_back(std::move(cyc));
        }
        return out;
    }

    /// Cycle lengths in decreasing order (fixed points included).
    std::vector<long long> cycle_type() const {
        std::vector<long long> t;
        for (const auto& c : cycles()) t.push_back(static_cast<long long>(c.size()));
        std::sort(t.begin(), t.end(), std::greater<>());
        return t;
    }

    /// Cycle lengths of the restriction to an invariant point set, decreasing.
    std::vector<long long> cycle_type_on(const std::vector<int>& points) const {
        std::vector<char> want(images_.size(), 0);
        for (int p : points) want[p] = 1;
        std::vector<long long> t;
        std::vector<char> seen(images_.size(), 0);
        for (int x : points) {
            if (seen[x]) continue;
            long long n = 0;
            int y = x;
            do {
                seen[y] = 1;
                ++n;
                y = images_[y];
            } while (y != x);
            t.push_back(n);
        }
        std::sort(t.begin(), t.end(), std::greater<>());
        return t;
    }

    std::vector<long long> to_one_based() const {
        std::vector<long long> out;
        out.reserve(images_.size());
        for (int v : images_) out.push_back(v + 1);
        return out;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> images_;
};

inline Permutation commutator(const Permutation& a, const Permutation& b) {
    return a.then(b).then(a.inverse()).then(b.inverse());
}

/// Canonical permutation of a given cycle type: parts in decreasing order laid
/// out consecutively starting at point 0.
inline Permutation canonical_of_cycle_type(std::vector<long long> parts, int degree) {
    std::sort(parts.begin(), parts.end(), std::greater<>());
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    int base = 0;
    for (long long part : parts) {
        for (long long j = 0; j < part; ++j)
            im[base + j] = base + static_cast<int>((j + 1) % part);
        base += static_cast<int>(part);
    }
    if (base != degree) throw spec_mismatch_error("cycle type does not sum to degree");
    return Permutation(std::move(im));
}

/// Uniform draw from {0,...,n-1} via rejection; keeps realization reproducible
/// across standard library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % n;
}

inline Permutation random_permutation(int degree, std::mt19937_64& rng) {
    std::vector<int> im(degree);
    std::iota(im.begin(), im.end(), 0);
    for (int i = degree - 1; i > 0; --i) {
        int j = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(im[i], im[j]);
    }
    return Permutation(std::move(im));
}

/// g^-1 p g under left-to-right composition; preserves cycle type.
inline Permutation conjugate(const Permutation& p, const Permutation& g) {
    return g.inverse().then(p).then(g);
}

/// Orbits of the group generated by `generators` on {0,...,degree-1}.
inline std::vector<std::vector<int>> orbits(const std::vector<Permutation>& generators,
                                            int degree) {
    std::vector<Permutation> inverses;
    inverses.reserve(generators.size());
    for (const auto& g : generators) inverses.push_back(g.inverse());
    std::vector<std::vector<int>> out;
    std::vector<char> seen(degree, 0);
    for (int s = 0; s < degree; ++s) {
        if (seen[s]) continue;
        std::vector<int> orbit{s};
        seen[s] = 1;
        for (size_t head = 0; head < orbit.size(); ++head) {
            int x = orbit[head];
            for (size_t k = 0; k < generators.size(); ++k) {
                for (int y : {generators[k].apply(x), inverses[k].apply(x)}) {
                    if (!seen[y]) {
                        seen[y] = 1;
                        orbit.push_back(y);
                    }
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.push_back(std::move(orbit));
    }
    return out;
}

inline bool transitive(const std::vector<Permutation>& generators, int degree) {
    return orbits(generators, degree).size() == 1;
}

}  // namespace ssa
