/**
 * Disk fillings: zigzag triangulations of the 2-disk with induced
 * boundary, the cycle-filling construction that turns a graph with a
 * spanning cycle collection into a nulhomologous 2-complex, and the
 * triangle-count decoder that recovers the graph.
 */
#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pltop/complex.hpp"
#include "pltop/graph.hpp"
#include "pltop/graphkit.hpp"

namespace pltop {

struct MTooSmall : ComplexError {
    MTooSmall() : ComplexError("disk boundary needs at least 3 vertices") {}
};
struct NotSpanning : ComplexError {
    NotSpanning() : ComplexError("cycles do not span the cycle space") {}
};
struct EdgeOveruse : ComplexError {
    EdgeOveruse() : ComplexError("an edge lies in more than k cycles") {}
};
struct EmptyResult : ComplexError {
    EmptyResult() : ComplexError("no edge reaches the triangle threshold") {}
};

/**
 * Triangulated 2-disk with boundary cycle 0, ..., m-1: the zigzag (snake)
 * triangulation with every interior edge stellated, top diagonal first.
 * The boundary is induced, there are at most m interior vertices, all
 * degrees are at most 6, and every interior vertex meets the boundary.
 */
inline std::pair<Complex, Cycle> zigzag_disk(int m)
{
    if (m < 3)
        throw MTooSmall();
    Cycle boundary;
    boundary.vertices.resize(m);
    std::iota(boundary.vertices.begin(), boundary.vertices.end(), 0);
    if (m == 3) {
        // a bare triangle would make the boundary non-induced; cone it once
        return {stellate_facet(Complex::from_facets({{0, 1, 2}}), {0, 1, 2}),
                boundary};
    }
    // snake order 0, m-1, 1, m-2, ...
    std::vector<int> snake;
    for (int lo = 0, hi = m - 1; lo <= hi;) {
        snake.push_back(lo++);
        if (lo <= hi)
            snake.push_back(hi--);
    }
    std::vector<Facet> tris;
    for (int i = 0; i + 2 < m; ++i)
        tris.push_back(sorted_facet({snake[i], snake[i + 1], snake[i + 2]}));
    Complex c = Complex::from_facets(std::move(tris));
    for (int i = 1; i + 2 < m; ++i)
        c = stellate_face(c, sorted_facet({snake[i], snake[i + 1]}));
    return {c, boundary};
}

struct DiskFillParams {
    int p = 2;
    int deg_max = 0;
    int k = 0;
    std::optional<int> threshold;

    int T() const { return threshold.value_or(deg_max * (1 + 6 * k)); }
};

struct Filled2Complex {
    Complex complex;
    std::vector<std::pair<int, int>> graph_edges;
    std::map<int, std::vector<int>> disk_map;  // cycle index -> interior ids
    std::vector<int> basis;                    // indices of the glued cycles
    int threshold = 0;
};

/**
 * Glues a zigzag disk along a spanning subset of the given cycles
 * (greedy by GF(p) rank, in input order) and fans `threshold` flag
 * vertices onto every graph edge, each spanning exactly one triangle.
 * The result has trivial first and second homology over GF(p), and the
 * graph is recoverable as the edges lying in at least `threshold`
 * triangles.
 */
inline Filled2Complex fill_cycles(const Graph& g, const std::vector<Cycle>& cycles,
                                  const DiskFillParams& params)
{
    if (!is_connected(g))
        throw Disconnected();
    if (!is_prime(params.p))
        throw NotPrime(params.p);
    if (params.T() < 1)
        throw ComplexError("triangle threshold must be positive");
    for (int d : degrees(g))
        if (d > params.deg_max)
            throw ComplexError("vertex degree exceeds the declared bound");
    for (const auto& c : cycles) {
        if (!cycle_in_graph(g, c))
            throw ComplexError("a cycle is not a closed walk in the graph");
        if (!cycle_is_simple(c))
            throw ComplexError("a cycle revisits a vertex");
    }
    {
        std::map<std::pair<int, int>, int> mult;
        for (const auto& c : cycles)
            for (int i = 0; i < c.length(); ++i)
                if (++mult[std::minmax(c.vertices[i],
                                       c.vertices[(i + 1) % c.length()])] >
                    params.k)
                    throw EdgeOveruse();
    }

    // greedy spanning subset over GF(p): keep cycles that grow the rank
    std::map<std::pair<int, int>, int> edge_index;
    for (auto& e : g.edges)
        edge_index[e] = static_cast<int>(edge_index.size());
    const int p = params.p;
    std::vector<std::vector<uint32_t>> reduced;  // row-reduced kept vectors
    std::vector<int> pivot_of;                   // pivot column per kept row
    std::vector<int> basis;
    for (size_t ci = 0; ci < cycles.size(); ++ci) {
        std::vector<long long> acc(edge_index.size(), 0);
        const auto& c = cycles[ci];
        for (int i = 0; i < c.length(); ++i) {
            int a = c.vertices[i], b = c.vertices[(i + 1) % c.length()];
            acc[edge_index[std::minmax(a, b)]] += (a < b) ? 1 : -1;
        }
        std::vector<uint32_t> v(edge_index.size());
        for (size_t i = 0; i < acc.size(); ++i)
            v[i] = static_cast<uint32_t>(((acc[i] % p) + p) % p);
        for (size_t r = 0; r < reduced.size(); ++r) {
            uint32_t f = v[pivot_of[r]];
            if (f == 0)
                continue;
            for (size_t i = 0; i < v.size(); ++i)
                v[i] = static_cast<uint32_t>(
                    (v[i] + static_cast<uint64_t>(p - f) * reduced[r][i]) % p);
        }
        int piv = -1;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) {
                piv = static_cast<int>(i);
                break;
            }
        if (piv < 0)
            continue;
        uint32_t inv = detail::gf_inverse(v[piv], p);
        for (auto& x : v)
            x = static_cast<uint32_t>(static_cast<uint64_t>(x) * inv % p);
        reduced.push_back(std::move(v));
        pivot_of.push_back(piv);
        basis.push_back(static_cast<int>(ci));
    }
    long needed = g.edge_count() - g.n + 1;
    if (static_cast<long>(basis.size()) < needed)
        throw NotSpanning();

    Filled2Complex out;
    out.threshold = params.T();
    out.basis = basis;
    for (auto& e : g.edges)
        out.graph_edges.push_back(e);

    std::vector<Facet> facets;
    int next = g.n;
    for (int j : basis) {
        const auto& gamma = cycles[j];
        auto [disk, bcycle] = zigzag_disk(gamma.length());
        std::map<int, int> remap;
        for (int i = 0; i < gamma.length(); ++i)
            remap[i] = gamma.vertices[i];
        std::vector<int> interior;
        for (int v : disk.vertices())
            if (v >= gamma.length()) {
                remap[v] = next++;
                interior.push_back(remap[v]);
            }
        out.disk_map[j] = interior;
        for (const auto& f : disk.facets) {
            Facet h;
            for (int v : f)
                h.push_back(remap.at(v));
            facets.push_back(sorted_facet(h));
        }
    }
    for (auto [u, v] : g.edges)
        for (int t = 0; t < out.threshold; ++t)
            facets.push_back(sorted_facet({u, v, next++}));
    if (g.n == 1)
        facets.push_back({0});
    // graph edges not covered by any triangle survive as 1-facets
    std::set<std::pair<int, int>> covered;
    for (const auto& f : facets)
        if (f.size() == 3) {
            covered.insert({f[0], f[1]});
            covered.insert({f[0], f[2]});
            covered.insert({f[1], f[2]});
        }
    for (auto& e : g.edges)
        if (!covered.count(e))
            facets.push_back({e.first, e.second});
    out.complex = Complex::from_facets(std::move(facets));
    return out;
}

struct RecoveredGraph {
    Graph graph;
    std::vector<int> vertex_ids;  // output vertex i = complex vertex ids[i]
};

/// Edges lying in at least `threshold` triangles, with their endpoints.
inline RecoveredGraph recover_graph(const Complex& f, int threshold)
{
    std::map<std::pair<int, int>, int> tri_count;
    for (const auto& fac : f.facets)
        if (fac.size() == 3) {
            ++tri_count[{fac[0], fac[1]}];
            ++tri_count[{fac[0], fac[2]}];
            ++tri_count[{fac[1], fac[2]}];
        }
    std::vector<std::pair<int, int>> keep;
    std::set<int> verts;
    for (auto& [e, cnt] : tri_count)
        if (cnt >= threshold) {
            keep.push_back(e);
            verts.insert(e.first);
            verts.insert(e.second);
        }
    if (keep.empty())
        throw EmptyResult();
    RecoveredGraph out;
    out.vertex_ids.assign(verts.begin(), verts.end());
    std::map<int, int> relabel;
    for (size_t i = 0; i < out.vertex_ids.size(); ++i)
        relabel[out.vertex_ids[i]] = static_cast<int>(i);
    out.graph = Graph(static_cast<int>(verts.size()));
    for (auto& [u, v] : keep)
        out.graph.add_edge(relabel[u], relabel[v]);
    return out;
}

/**
 * Inclusion relation for the quasi-isometry check: graph vertices pair
 * with themselves, disk interior vertices with every vertex of their
 * cycle, and flag vertices with both endpoints of their edge.
 */
inline QIRelation inclusion_relation(const Graph& g,
                                     const std::vector<Cycle>& cycles,
                                     const Filled2Complex& filled,
                                     const std::map<int, int>& skeleton_ids)
{
    QIRelation rel;
    rel.c = 1;
    for (int v = 0; v < g.n; ++v)
        rel.pairs.insert({v, skeleton_ids.at(v)});
    std::set<int> placed;
    for (int v = 0; v < g.n; ++v)
        placed.insert(v);
    for (auto& [j, interior] : filled.disk_map)
        for (int w : interior) {
            placed.insert(w);
            for (int v : cycles[j].vertices)
                rel.pairs.insert({v, skeleton_ids.at(w)});
        }
    // remaining vertices are edge flags, adjacent to both endpoints
    for (const auto& f : filled.complex.facets)
        if (f.size() == 3)
            for (int w : f)
                if (!placed.count(w)) {
                    for (int v : f)
                        if (v != w && v < g.n) {
                            rel.pairs.insert({v, skeleton_ids.at(w)});
                        }
                }
    return rel;
}

/// 1-skeleton of a complex as a graph, with the vertex relabeling used.
inline std::pair<Graph, std::map<int, int>> one_skeleton(const Complex& c)
{
    auto verts = c.vertices();
    std::map<int, int> id;
    for (size_t i = 0; i < verts.size(); ++i)
        id[verts[i]] = static_cast<int>(i);
    Graph g(static_cast<int>(verts.size()));
    std::set<std::pair<int, int>> es;
    for (const auto& f : c.facets)
        for (size_t i = 0; i < f.size(); ++i)
            for (size_t j = i + 1; j < f.size(); ++j)
                es.insert(std::minmax(id[f[i]], id[f[j]]));
    for (auto& e : es)
        g.add_edge(e.first, e.second);
    return {g, id};
}

}  // namespace pltop
