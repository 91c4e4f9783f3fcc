/**
 * Dual-graph codec: missing-vertex functions on oriented dual edges,
 * reconstruction of a closed pseudomanifold from its decorated dual
 * graph by a union-find quotient of disjoint simplices, and the
 * distance-2 coloring packaging with its decoder.
 */
#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "pltop/complex.hpp"
#include "pltop/graph.hpp"

namespace pltop {

struct QuotientDegenerate : ComplexError {
    QuotientDegenerate()
        : ComplexError("quotient repeats a vertex class inside a facet") {}
};
struct DuplicateFacet : ComplexError {
    DuplicateFacet() : ComplexError("quotient produced duplicate facets") {}
};
struct AmbiguousNeighbor : ComplexError {
    AmbiguousNeighbor()
        : ComplexError("two neighbors carry the same base color") {}
};

/**
 * For adjacent facets s, t the value at (s, t) is the position (1-based)
 * of the vertex s \ t within s, under the chosen global vertex order.
 */
struct MissingFunction {
    int d = 0;
    std::map<std::pair<int, int>, int> entries;  // oriented dual edge -> index
};

struct DualEncoding {
    DualGraph dual;
    MissingFunction missing;
    std::vector<int> order;  // the vertex order used
};

inline DualEncoding missing_function(const Complex& m, const std::vector<int>& order)
{
    if (!is_closed_pseudomanifold(m))
        throw NotClosedPseudomanifold();
    auto verts = m.vertices();
    {
        std::set<int> given(order.begin(), order.end());
        if (given.size() != order.size() ||
            given != std::set<int>(verts.begin(), verts.end()))
            throw ComplexError("order is not a permutation of the vertices");
    }
    std::map<int, int> pos;
    for (size_t i = 0; i < order.size(); ++i)
        pos[order[i]] = static_cast<int>(i);
    DualEncoding out;
    out.dual = dual_graph(m);
    out.order = order;
    out.missing.d = m.dim();
    auto rank_in_facet = [&](const Facet& f, int v) {
        int r = 1;
        for (int u : f)
            if (u != v && pos[u] < pos[v])
                ++r;
        return r;
    };
    for (auto [a, b] : out.dual.graph.edges) {
        const Facet& fa = out.dual.facet_of_vertex[a];
        const Facet& fb = out.dual.facet_of_vertex[b];
        Facet only_a, only_b;
        std::set_difference(fa.begin(), fa.end(), fb.begin(), fb.end(),
                            std::back_inserter(only_a));
        std::set_difference(fb.begin(), fb.end(), fa.begin(), fa.end(),
                            std::back_inserter(only_b));
        out.missing.entries[{a, b}] = rank_in_facet(fa, only_a[0]);
        out.missing.entries[{b, a}] = rank_in_facet(fb, only_b[0]);
    }
    return out;
}

/**
 * Rebuilds the complex from a (d+1)-regular dual graph and a total
 * missing-vertex function: one disjoint d-simplex per dual vertex, slot
 * tuples identified order-preservingly across each edge, classes
 * renumbered by their smallest (facet, slot) pair.
 */
inline Complex reconstruct(const Graph& dg, const MissingFunction& mf, int d)
{
    if (!is_regular(dg, d + 1))
        throw GraphError("dual graph is not (d+1)-regular");
    if (!is_connected(dg))
        throw Disconnected();
    for (auto [a, b] : dg.edges) {
        for (auto key : {std::pair<int, int>{a, b}, std::pair<int, int>{b, a}}) {
            auto it = mf.entries.find(key);
            if (it == mf.entries.end())
                throw ComplexError("missing-vertex function is not total");
            if (it->second < 1 || it->second > d + 1)
                throw ComplexError("missing-vertex index out of range");
        }
    }
    const int slots = d + 1;
    std::vector<int> parent(static_cast<size_t>(dg.n) * slots);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    };
    for (auto [a, b] : dg.edges) {
        int ia = mf.entries.at({a, b});
        int ib = mf.entries.at({b, a});
        // identify the complementary slot tuples in order
        int sa = 0, sb = 0;
        for (int step = 0; step < d; ++step) {
            if (sa + 1 == ia)
                ++sa;
            if (sb + 1 == ib)
                ++sb;
            unite(a * slots + sa, b * slots + sb);
            ++sa;
            ++sb;
        }
    }
    std::map<int, int> class_id;  // root -> output vertex (by smallest member)
    for (int x = 0; x < dg.n * slots; ++x) {
        int r = find(x);
        if (!class_id.count(r))
            class_id[r] = static_cast<int>(class_id.size());
    }
    std::vector<Facet> facets;
    std::set<Facet> seen;
    for (int v = 0; v < dg.n; ++v) {
        Facet f;
        for (int s = 0; s < slots; ++s)
            f.push_back(class_id.at(find(v * slots + s)));
        std::sort(f.begin(), f.end());
        for (size_t i = 0; i + 1 < f.size(); ++i)
            if (f[i] == f[i + 1])
                throw QuotientDegenerate();
        if (!seen.insert(f).second)
            throw DuplicateFacet();
        facets.push_back(std::move(f));
    }
    return Complex::from_facets(std::move(facets));
}

/**
 * Distance-2 coloring package: c0 is a greedy coloring proper at
 * distance <= 2 (at most (d+1)^2 + 1 colors), c1 lists each vertex's
 * (neighbor c0, missing index) pairs sorted lexicographically.
 */
struct DualColoring {
    int d = 0;
    std::vector<int> c0;
    std::vector<std::vector<std::pair<int, int>>> c1;
};

struct DualColoringEncoding {
    DualGraph dual;
    DualColoring coloring;
    std::vector<int> order;
};

inline DualColoringEncoding dual_coloring(const Complex& m,
                                          const std::vector<int>& order)
{
    auto enc = missing_function(m, order);
    const Graph& g = enc.dual.graph;
    const int d = enc.missing.d;
    auto adj = adjacency(g);
    DualColoring col;
    col.d = d;
    col.c0.assign(g.n, 0);
    for (int v = 0; v < g.n; ++v) {
        std::set<int> banned;
        for (int w : adj[v]) {
            if (col.c0[w] > 0)
                banned.insert(col.c0[w]);
            for (int u : adj[w])
                if (u != v && col.c0[u] > 0)
                    banned.insert(col.c0[u]);
        }
        int c = 1;
        while (banned.count(c))
            ++c;
        col.c0[v] = c;
        if (c > (d + 1) * (d + 1) + 1)
            throw ComplexError("distance-2 coloring exceeded its bound");
    }
    col.c1.resize(g.n);
    for (int v = 0; v < g.n; ++v) {
        for (int w : adj[v])
            col.c1[v].push_back({col.c0[w], enc.missing.entries.at({v, w})});
        std::sort(col.c1[v].begin(), col.c1[v].end());
    }
    DualColoringEncoding out;
    out.dual = std::move(enc.dual);
    out.coloring = std::move(col);
    out.order = order;
    return out;
}

/**
 * Rebuilds the missing-vertex function by matching each neighbor's c0
 * value against the stored pair list, then reconstructs the complex.
 */
inline Complex decode_dual_coloring(const Graph& dg, const DualColoring& col, int d)
{
    if (static_cast<int>(col.c0.size()) != dg.n ||
        static_cast<int>(col.c1.size()) != dg.n)
        throw ComplexError("coloring size mismatch");
    auto adj = adjacency(dg);
    MissingFunction mf;
    mf.d = d;
    for (int v = 0; v < dg.n; ++v) {
        for (int w : adj[v]) {
            int found = 0, index = 0;
            for (auto& [cw, j] : col.c1[v])
                if (cw == col.c0[w]) {
                    ++found;
                    index = j;
                }
            if (found != 1)
                throw AmbiguousNeighbor();
            mf.entries[{v, w}] = index;
        }
    }
    return reconstruct(dg, mf, d);
}

/**
 * Canonical vertex key used to compare a reconstruction with its source:
 * vertex -> (smallest containing facet index, slot within that facet).
 */
inline std::map<int, int> reconstruction_labels(const Complex& m,
                                                const std::vector<int>& order)
{
    std::map<int, int> pos;
    for (size_t i = 0; i < order.size(); ++i)
        pos[order[i]] = static_cast<int>(i);
    const int slots = m.dim() + 1;
    std::map<int, std::pair<int, int>> key;  // vertex -> (facet, slot)
    for (int i = 0; i < m.facet_count(); ++i) {
        Facet by_order = m.facets[i];
        std::sort(by_order.begin(), by_order.end(),
                  [&](int a, int b) { return pos[a] < pos[b]; });
        for (int s = 0; s < slots; ++s) {
            int v = by_order[s];
            auto cand = std::make_pair(i, s);
            auto it = key.find(v);
            if (it == key.end() || cand < it->second)
                key[v] = cand;
        }
    }
    // order classes exactly like reconstruct: by (facet, slot)
    std::vector<std::pair<std::pair<int, int>, int>> sorted_keys;
    for (auto& [v, k] : key)
        sorted_keys.push_back({k, v});
    std::sort(sorted_keys.begin(), sorted_keys.end());
    std::map<int, int> label;
    for (size_t i = 0; i < sorted_keys.size(); ++i)
        label[sorted_keys[i].second] = static_cast<int>(i);
    return label;
}

}  // namespace pltop
