/**
 * Simplicial isomorphism testing by backtracking over vertex bijections,
 * with degree/star profiles as pruning invariants. Intended for the
 * desk-scale complexes the codecs round-trip.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "pltop/complex.hpp"

namespace pltop {

namespace detail {

struct IsoProfile {
    std::vector<int> verts;
    std::map<int, int> vidx;
    std::vector<std::set<int>> adj;              // 1-skeleton adjacency
    std::vector<std::multiset<int>> star_sizes;  // sizes of facets at vertex
    std::set<Facet> facet_set;

    explicit IsoProfile(const Complex& c)
    {
        verts = c.vertices();
        for (size_t i = 0; i < verts.size(); ++i)
            vidx[verts[i]] = static_cast<int>(i);
        adj.resize(verts.size());
        star_sizes.resize(verts.size());
        for (const auto& f : c.facets) {
            facet_set.insert(f);
            for (int v : f)
                star_sizes[vidx.at(v)].insert(static_cast<int>(f.size()));
            for (size_t i = 0; i < f.size(); ++i)
                for (size_t j = i + 1; j < f.size(); ++j) {
                    adj[vidx.at(f[i])].insert(vidx.at(f[j]));
                    adj[vidx.at(f[j])].insert(vidx.at(f[i]));
                }
        }
    }
};

}  // namespace detail

/**
 * Finds a simplicial isomorphism if one exists, returned as a map from
 * vertices of a to vertices of b.
 */
inline std::optional<std::map<int, int>> find_isomorphism(const Complex& a,
                                                          const Complex& b)
{
    if (a.facet_count() != b.facet_count())
        return std::nullopt;
    detail::IsoProfile pa(a), pb(b);
    if (pa.verts.size() != pb.verts.size())
        return std::nullopt;
    {
        std::multiset<std::multiset<int>> sa(pa.star_sizes.begin(), pa.star_sizes.end());
        std::multiset<std::multiset<int>> sb(pb.star_sizes.begin(), pb.star_sizes.end());
        if (sa != sb)
            return std::nullopt;
    }
    // most-constrained vertices first: rare profiles, high degree
    std::vector<int> order(pa.verts.size());
    std::iota(order.begin(), order.end(), 0);
    std::map<std::multiset<int>, int> freq;
    for (auto& s : pa.star_sizes)
        ++freq[s];
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        int fx = freq[pa.star_sizes[x]], fy = freq[pa.star_sizes[y]];
        if (fx != fy)
            return fx < fy;
        return pa.adj[x].size() > pa.adj[y].size();
    });
    std::vector<int> map_ab(pa.verts.size(), -1);
    std::vector<char> used(pb.verts.size(), 0);
    // restart search until the facet sets match exactly; adjacency-compatible
    // bijections that scramble facets are rejected here
    std::function<bool(size_t)> search = [&](size_t pos) -> bool {
        if (pos == order.size()) {
            std::set<Facet> mapped;
            for (const auto& f : pa.facet_set) {
                Facet g;
                for (int v : f)
                    g.push_back(pb.verts[map_ab[pa.vidx.at(v)]]);
                std::sort(g.begin(), g.end());
                mapped.insert(std::move(g));
            }
            return mapped == pb.facet_set;
        }
        int u = order[pos];
        for (size_t w = 0; w < pb.verts.size(); ++w) {
            if (used[w])
                continue;
            if (pa.star_sizes[u] != pb.star_sizes[w])
                continue;
            if (pa.adj[u].size() != pb.adj[w].size())
                continue;
            bool ok = true;
            for (size_t q = 0; q < pos && ok; ++q) {
                int v = order[q];
                if ((pa.adj[u].count(v) > 0) !=
                    (pb.adj[w].count(map_ab[v]) > 0))
                    ok = false;
            }
            if (!ok)
                continue;
            map_ab[u] = static_cast<int>(w);
            used[w] = 1;
            if (search(pos + 1))
                return true;
            used[w] = 0;
            map_ab[u] = -1;
        }
        return false;
    };
    if (!search(0))
        return std::nullopt;
    std::map<int, int> out;
    for (size_t i = 0; i < pa.verts.size(); ++i)
        out[pa.verts[i]] = pb.verts[map_ab[i]];
    return out;
}

inline bool isomorphic(const Complex& a, const Complex& b)
{
    return find_isomorphism(a, b).has_value();
}

/**
 * Facet-colored isomorphism: some bijection must match facets with equal
 * colors on both sides.
 */
inline bool isomorphic_colored(const Complex& a, const std::map<Facet, int>& ca,
                               const Complex& b, const std::map<Facet, int>& cb)
{
    if (a.facet_count() != b.facet_count())
        return false;
    detail::IsoProfile pa(a), pb(b);
    if (pa.verts.size() != pb.verts.size())
        return false;
    std::vector<int> order(pa.verts.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
        return pa.adj[x].size() > pa.adj[y].size();
    });
    std::vector<int> map_ab(pa.verts.size(), -1);
    std::vector<char> used(pb.verts.size(), 0);
    std::function<bool(size_t)> search = [&](size_t pos) -> bool {
        if (pos == order.size()) {
            for (const auto& f : a.facets) {
                Facet g;
                for (int v : f)
                    g.push_back(pb.verts[map_ab[pa.vidx.at(v)]]);
                std::sort(g.begin(), g.end());
                auto it = cb.find(g);
                if (!pb.facet_set.count(g) || it == cb.end() ||
                    it->second != ca.at(f))
                    return false;
            }
            return true;
        }
        int u = order[pos];
        for (size_t w = 0; w < pb.verts.size(); ++w) {
            if (used[w])
                continue;
            if (pa.star_sizes[u] != pb.star_sizes[w])
                continue;
            if (pa.adj[u].size() != pb.adj[w].size())
                continue;
            bool ok = true;
            for (size_t q = 0; q < pos && ok; ++q) {
                int v = order[q];
                if ((pa.adj[u].count(v) > 0) !=
                    (pb.adj[w].count(map_ab[v]) > 0))
                    ok = false;
            }
            if (!ok)
                continue;
            map_ab[u] = static_cast<int>(w);
            used[w] = 1;
            if (search(pos + 1))
                return true;
            used[w] = 0;
            map_ab[u] = -1;
        }
        return false;
    };
    return search(0);
}

}  // namespace pltop
