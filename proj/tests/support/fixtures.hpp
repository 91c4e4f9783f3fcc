// Shared fixtures and seeded generators for the test suites.
#pragma once

#include <random>
#include <set>
#include <vector>

#include "pltop/complex.hpp"
#include "pltop/graph.hpp"

namespace fixtures {

using pltop::Complex;
using pltop::Facet;
using pltop::Graph;

/// Minimal 6-vertex triangulation of the projective plane (10 facets).
inline Complex rp2_6()
{
    return Complex::from_facets({{1, 2, 3},
                                 {1, 2, 4},
                                 {1, 3, 5},
                                 {1, 4, 6},
                                 {1, 5, 6},
                                 {2, 3, 6},
                                 {2, 4, 5},
                                 {2, 5, 6},
                                 {3, 4, 5},
                                 {3, 4, 6}});
}

/// 7-vertex triangulation of the torus (14 facets).
inline Complex torus_7()
{
    std::vector<Facet> fs;
    for (int i = 0; i < 7; ++i) {
        fs.push_back({i, (i + 1) % 7, (i + 3) % 7});
        fs.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return Complex::from_facets(std::move(fs));
}

/// Random d-sphere by repeated facet stellation of the simplex boundary.
inline Complex random_stellated_sphere(int d, int target_facets,
                                       std::mt19937_64& rng)
{
    Complex c = pltop::boundary_of_simplex(d + 1);
    while (c.facet_count() + d <= target_facets) {
        int i = static_cast<int>(rng() % c.facets.size());
        c = pltop::stellate_facet(c, c.facets[i]);
    }
    return c;
}

/// Random pure d-complex: distinct (d+1)-subsets of a vertex pool.
inline Complex random_pure_complex(int d, int nfacets, int nverts,
                                   std::mt19937_64& rng)
{
    std::set<Facet> fs;
    int guard = 0;
    while (static_cast<int>(fs.size()) < nfacets && ++guard < 50 * nfacets) {
        std::set<int> pick;
        while (static_cast<int>(pick.size()) < d + 1)
            pick.insert(static_cast<int>(rng() % nverts));
        fs.insert(Facet(pick.begin(), pick.end()));
    }
    return Complex::from_facets({fs.begin(), fs.end()});
}

/// Random complex of mixed dimensions; non-maximal faces are pruned.
inline Complex random_complex(int max_dim, int nfaces, int nverts,
                              std::mt19937_64& rng)
{
    std::vector<Facet> raw;
    for (int i = 0; i < nfaces; ++i) {
        int k = 1 + static_cast<int>(rng() % (max_dim + 1));
        std::set<int> pick;
        while (static_cast<int>(pick.size()) < k)
            pick.insert(static_cast<int>(rng() % nverts));
        raw.push_back(Facet(pick.begin(), pick.end()));
    }
    // antichain: keep maximal faces only
    std::vector<Facet> keep;
    for (size_t i = 0; i < raw.size(); ++i) {
        bool maximal = true;
        for (size_t j = 0; j < raw.size() && maximal; ++j)
            if (i != j && raw[i] != raw[j] && pltop::subset_of(raw[i], raw[j]))
                maximal = false;
        for (size_t j = 0; j < i && maximal; ++j)
            if (raw[j] == raw[i])
                maximal = false;  // drop duplicates
        if (maximal)
            keep.push_back(raw[i]);
    }
    if (keep.empty())
        keep.push_back({0});
    return Complex::from_facets(std::move(keep));
}

/// Random connected d-regular simple graph via the pairing model.
inline Graph random_regular_graph(int n, int d, std::mt19937_64& rng)
{
    if ((n * d) % 2 != 0)
        throw std::invalid_argument("n*d must be even");
    for (int attempt = 0; attempt < 2000; ++attempt) {
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v)
            for (int i = 0; i < d; ++i)
                stubs.push_back(v);
        std::shuffle(stubs.begin(), stubs.end(), rng);
        Graph g(n);
        bool ok = true;
        for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
            int u = stubs[i], v = stubs[i + 1];
            if (u == v || g.has_edge(u, v)) {
                ok = false;
                break;
            }
            g.add_edge(u, v);
        }
        if (ok && pltop::is_connected(g))
            return g;
    }
    throw std::runtime_error("failed to sample a connected regular graph");
}

inline Graph random_cubic_graph(int n, std::mt19937_64& rng)
{
    return random_regular_graph(n, 3, rng);
}

}  // namespace fixtures
