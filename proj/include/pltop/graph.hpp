/**
 * Finite simple graphs with BFS metric, plus cycle walks and
 * fundamental cycle bases from spanning trees.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pltop {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Disconnected : GraphError {
    Disconnected() : GraphError("graph is not connected") {}
};

/**
 * Simple undirected graph on vertex ids [0, n). Edges are stored as
 * sorted pairs; loops and parallel edges are rejected on insertion.
 */
struct Graph {
    int n = 0;
    std::set<std::pair<int, int>> edges;

    Graph() = default;
    explicit Graph(int n_) : n(n_)
    {
        if (n_ < 0)
            throw GraphError("negative vertex count");
    }

    static Graph make(int n, const std::vector<std::pair<int, int>>& es)
    {
        Graph g(n);
        for (auto [u, v] : es)
            g.add_edge(u, v);
        return g;
    }

    void add_edge(int u, int v)
    {
        if (u == v)
            throw GraphError("loop edge at vertex " + std::to_string(u));
        if (u > v)
            std::swap(u, v);
        if (u < 0 || v >= n)
            throw GraphError("edge endpoint out of range");
        if (!edges.emplace(u, v).second)
            throw GraphError("duplicate edge " + std::to_string(u) + "-" +
                             std::to_string(v));
    }

    bool has_edge(int u, int v) const
    {
        if (u > v)
            std::swap(u, v);
        return edges.count({u, v}) > 0;
    }

    int edge_count() const { return static_cast<int>(edges.size()); }

    bool operator==(const Graph& other) const
    {
        return n == other.n && edges == other.edges;
    }
};

inline std::vector<std::vector<int>> adjacency(const Graph& g)
{
    std::vector<std::vector<int>> adj(g.n);
    for (auto [u, v] : g.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto& a : adj)
        std::sort(a.begin(), a.end());
    return adj;
}

inline std::vector<int> degrees(const Graph& g)
{
    std::vector<int> deg(g.n, 0);
    for (auto [u, v] : g.edges) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

inline int max_degree(const Graph& g)
{
    int m = 0;
    for (int d : degrees(g))
        m = std::max(m, d);
    return m;
}

inline bool is_regular(const Graph& g, int d)
{
    for (int dv : degrees(g))
        if (dv != d)
            return false;
    return true;
}

/// BFS distances from src; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, int src)
{
    auto adj = adjacency(g);
    std::vector<int> dist(g.n, -1);
    std::queue<int> q;
    dist[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : adj[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
            }
    }
    return dist;
}

inline std::vector<std::vector<int>> all_pairs_distances(const Graph& g)
{
    std::vector<std::vector<int>> d;
    d.reserve(g.n);
    for (int v = 0; v < g.n; ++v)
        d.push_back(bfs_distances(g, v));
    return d;
}

inline int component_count(const Graph& g)
{
    std::vector<int> seen(g.n, 0);
    auto adj = adjacency(g);
    int comps = 0;
    for (int s = 0; s < g.n; ++s) {
        if (seen[s])
            continue;
        ++comps;
        std::queue<int> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
    }
    return comps;
}

inline bool is_connected(const Graph& g)
{
    return g.n <= 1 || component_count(g) == 1;
}

inline Graph complete_graph(int n)
{
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            g.add_edge(u, v);
    return g;
}

inline Graph cycle_graph(int n)
{
    if (n < 3)
        throw GraphError("cycle graph needs at least 3 vertices");
    Graph g(n);
    for (int u = 0; u < n; ++u)
        g.add_edge(u, (u + 1) % n);
    return g;
}

/**
 * Closed walk v0, ..., v_{l-1}; the edge from the last vertex back to
 * v0 is implicit. The length is the number of edges traversed.
 */
struct Cycle {
    std::vector<int> vertices;

    int length() const { return static_cast<int>(vertices.size()); }
};

inline bool cycle_in_graph(const Graph& g, const Cycle& c)
{
    int l = c.length();
    if (l < 3)
        return false;
    for (int i = 0; i < l; ++i)
        if (!g.has_edge(c.vertices[i], c.vertices[(i + 1) % l]))
            return false;
    return true;
}

inline bool cycle_is_simple(const Cycle& c)
{
    std::set<int> seen(c.vertices.begin(), c.vertices.end());
    return static_cast<int>(seen.size()) == c.length();
}

/**
 * Cycle basis from a BFS spanning tree rooted at vertex 0: one cycle per
 * non-tree edge, going up to the meeting point of the two tree paths.
 * Spans the cycle space over every coefficient field.
 */
inline std::vector<Cycle> fundamental_cycle_basis(const Graph& g)
{
    if (!is_connected(g))
        throw Disconnected();
    std::vector<Cycle> out;
    if (g.n == 0)
        return out;
    auto adj = adjacency(g);
    std::vector<int> parent(g.n, -1), depth(g.n, -1);
    std::queue<int> q;
    depth[0] = 0;
    q.push(0);
    std::set<std::pair<int, int>> tree;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : adj[u])
            if (depth[w] < 0) {
                depth[w] = depth[u] + 1;
                parent[w] = u;
                tree.insert(std::minmax(u, w));
                q.push(w);
            }
    }
    for (auto [u, v] : g.edges) {
        if (tree.count({u, v}))
            continue;
        // walk both endpoints up to their lowest common ancestor
        std::vector<int> up_u{u}, up_v{v};
        int a = u, b = v;
        while (a != b) {
            if (depth[a] >= depth[b]) {
                a = parent[a];
                up_u.push_back(a);
            } else {
                b = parent[b];
                up_v.push_back(b);
            }
        }
        Cycle c;
        c.vertices = up_u;                       // u, ..., lca
        for (int i = static_cast<int>(up_v.size()) - 2; i >= 0; --i)
            c.vertices.push_back(up_v[i]);       // ..., v  (edge v-u closes)
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace pltop
