/**
 * Graph-side toolkit: exact Cheeger constants, normalized-Laplacian
 * spectral gaps, short-cycle-collection certification, quasi-isometry
 * relation checking, the 4-regular-to-3-regular gadget codec, and the
 * pendant-vertex color codec.
 */
#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "pltop/graph.hpp"
#include "pltop/linalg.hpp"

namespace pltop {

struct TooLarge : GraphError {
    TooLarge() : GraphError("graph too large for exact enumeration") {}
};
struct NotFourRegular : GraphError {
    NotFourRegular() : GraphError("graph is not 4-regular") {}
};
struct AmbiguousGadgets : GraphError {
    explicit AmbiguousGadgets(const std::string& why)
        : GraphError("gadget decoding failed: " + why) {}
};
struct DegreeTooLow : GraphError {
    DegreeTooLow() : GraphError("minimum degree too low for pendant encoding") {}
};
struct NoPendants : GraphError {
    NoPendants() : GraphError("a non-pendant vertex has no pendant neighbor") {}
};

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d)
    {
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 0) {
            num /= g;
            den /= g;
        }
    }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
};

/**
 * Exact edge expansion: min over nonempty A with |A| <= n/2 of
 * |E(A, A^c)| / |A|, by Gray-code subset enumeration (n <= 24).
 */
inline Rational cheeger_exact(const Graph& g)
{
    if (g.n > 24)
        throw TooLarge();
    if (!is_connected(g))
        throw Disconnected();
    if (g.n < 2)
        throw GraphError("cheeger constant needs at least 2 vertices");
    auto adj = adjacency(g);
    auto deg = degrees(g);
    std::vector<char> in_a(g.n, 0);
    long long boundary = 0;
    int size = 0;
    long long best_num = 0, best_den = 0;  // den 0 = not yet set
    const uint32_t total = 1u << g.n;
    for (uint32_t i = 1; i < total; ++i) {
        int j = __builtin_ctz(i);  // bit flipped between consecutive Gray codes
        int in_neighbors = 0;
        for (int w : adj[j])
            in_neighbors += in_a[w];
        if (!in_a[j]) {
            boundary += deg[j] - 2 * in_neighbors;
            in_a[j] = 1;
            ++size;
        } else {
            boundary -= deg[j] - 2 * in_neighbors;
            in_a[j] = 0;
            --size;
        }
        if (size >= 1 && 2 * size <= g.n &&
            (best_den == 0 || boundary * best_den < best_num * size)) {
            best_num = boundary;
            best_den = size;
        }
    }
    return Rational(best_num, best_den);
}

/**
 * Exact conductance: min over cuts of |E(A, A^c)| / min(vol A, vol A^c),
 * the quantity the normalized-Laplacian Cheeger inequality
 * lambda2/2 <= phi <= sqrt(2 lambda2) sandwiches. The vertex-normalized
 * expansion above only obeys the lower half.
 */
inline Rational conductance_exact(const Graph& g)
{
    if (g.n > 24)
        throw TooLarge();
    if (!is_connected(g))
        throw Disconnected();
    if (g.n < 2)
        throw GraphError("conductance needs at least 2 vertices");
    auto adj = adjacency(g);
    auto deg = degrees(g);
    long long vol_total = 2 * g.edge_count();
    std::vector<char> in_a(g.n, 0);
    long long boundary = 0, vol_a = 0;
    int size = 0;
    long long best_num = 0, best_den = 0;  // den 0 = not yet set
    const uint32_t total = 1u << g.n;
    for (uint32_t i = 1; i < total; ++i) {
        int j = __builtin_ctz(i);
        int in_neighbors = 0;
        for (int w : adj[j])
            in_neighbors += in_a[w];
        if (!in_a[j]) {
            boundary += deg[j] - 2 * in_neighbors;
            vol_a += deg[j];
            in_a[j] = 1;
            ++size;
        } else {
            boundary -= deg[j] - 2 * in_neighbors;
            vol_a -= deg[j];
            in_a[j] = 0;
            --size;
        }
        long long mv = std::min(vol_a, vol_total - vol_a);
        if (size >= 1 && size < g.n && mv > 0 &&
            (best_den == 0 || boundary * best_den < best_num * mv)) {
            best_num = boundary;
            best_den = mv;
        }
    }
    return Rational(best_num, best_den);
}

/// Second-smallest eigenvalue of the normalized Laplacian.
inline double lambda2(const Graph& g)
{
    if (g.n < 2)
        throw GraphError("lambda2 needs at least 2 vertices");
    auto deg = degrees(g);
    SymMatrix lap(g.n);
    for (int v = 0; v < g.n; ++v)
        lap.set(v, v, deg[v] > 0 ? 1.0 : 0.0);
    for (auto [u, v] : g.edges)
        lap.set(u, v, -1.0 / std::sqrt(static_cast<double>(deg[u]) * deg[v]));
    auto e = sym_eigs(lap, 1e-11);
    return e[1];
}

/// Cycle collection with the bounds it is claimed to satisfy.
struct ShortCertificate {
    int deg_max = 0;
    int k = 0;
    int L = 0;
    int p = 2;
    bool uniform = false;
    std::vector<Cycle> cycles;
};

struct ShortCheckReport {
    bool ok = false;
    std::vector<std::string> violations;
    long rank = 0;
    long expected_rank = 0;
    int max_multiplicity = 0;
    double average_length = 0;
    int max_length = 0;
};

/**
 * Verifies a short certificate: degree bound, cycle-space spanning over
 * GF(p) (edges oriented low-to-high, walk increments +-1), per-edge
 * multiplicity counted along walks, and the length bound (average, or
 * every cycle when uniform).
 */
inline ShortCheckReport check_short(const Graph& g, const ShortCertificate& cert)
{
    if (!is_connected(g))
        throw Disconnected();
    if (!is_prime(cert.p))
        throw NotPrime(cert.p);
    ShortCheckReport rep;
    auto deg = degrees(g);
    for (int v = 0; v < g.n; ++v)
        if (deg[v] > cert.deg_max) {
            rep.violations.push_back("vertex " + std::to_string(v) +
                                     " exceeds the degree bound");
            break;
        }
    std::map<std::pair<int, int>, int> edge_index;
    for (auto& e : g.edges)
        edge_index[e] = static_cast<int>(edge_index.size());

    bool walks_ok = true;
    for (size_t i = 0; i < cert.cycles.size(); ++i)
        if (!cycle_in_graph(g, cert.cycles[i])) {
            rep.violations.push_back("cycle " + std::to_string(i) +
                                     " is not a closed walk in the graph");
            walks_ok = false;
        }

    std::map<std::pair<int, int>, int> multiplicity;
    long long total_length = 0;
    rep.expected_rank = g.edge_count() - g.n + 1;
    if (walks_ok) {
        std::vector<std::tuple<int, int, int>> trip;
        for (size_t i = 0; i < cert.cycles.size(); ++i) {
            const auto& c = cert.cycles[i];
            total_length += c.length();
            rep.max_length = std::max(rep.max_length, c.length());
            for (int t = 0; t < c.length(); ++t) {
                int a = c.vertices[t], b = c.vertices[(t + 1) % c.length()];
                auto e = std::minmax(a, b);
                ++multiplicity[e];
                trip.push_back({static_cast<int>(i), edge_index[e], a < b ? 1 : -1});
            }
        }
        rep.rank = gf_rank_sparse(static_cast<int>(cert.cycles.size()),
                                  g.edge_count(), trip, cert.p);
        if (rep.rank < rep.expected_rank)
            rep.violations.push_back(
                "cycles span only rank " + std::to_string(rep.rank) + " of " +
                std::to_string(rep.expected_rank));
        for (auto& [e, m] : multiplicity) {
            rep.max_multiplicity = std::max(rep.max_multiplicity, m);
            if (m > cert.k) {
                rep.violations.push_back("edge " + std::to_string(e.first) + "-" +
                                         std::to_string(e.second) +
                                         " lies in more than k cycles");
                break;
            }
        }
        rep.average_length = cert.cycles.empty()
                                 ? 0.0
                                 : static_cast<double>(total_length) /
                                       static_cast<double>(cert.cycles.size());
        if (cert.uniform) {
            if (rep.max_length > cert.L)
                rep.violations.push_back("a cycle exceeds the uniform length bound");
        } else if (rep.average_length > cert.L + 1e-12) {
            rep.violations.push_back("average cycle length exceeds the bound");
        }
    }
    rep.ok = rep.violations.empty();
    return rep;
}

/// Relation between the vertex sets of two graphs, with granularity c.
struct QIRelation {
    std::set<std::pair<int, int>> pairs;  // (x-vertex, y-vertex)
    int c = 1;
};

struct QIReport {
    bool ok = false;
    int violated_condition = 0;  // 0 = none, else 1..3
    std::string witness;
    int M = 0;
    bool map_bound_ok = false;  // d(f(x), f(x')) <= M d(x,x') + M for all pairs
};

/**
 * Checks the three relation conditions exhaustively with BFS distances
 * and returns the minimal M that makes them hold, then materializes a
 * choice function f and verifies the affine distance bound it induces.
 */
inline QIReport qi_check(const Graph& x, const Graph& y, const QIRelation& rel)
{
    if (!is_connected(x) || !is_connected(y))
        throw Disconnected();
    if (rel.c < 1)
        throw GraphError("granularity constant must be at least 1");
    QIReport rep;
    std::vector<std::vector<int>> rx(x.n), ry(y.n);
    for (auto [a, b] : rel.pairs) {
        if (a < 0 || a >= x.n || b < 0 || b >= y.n)
            throw GraphError("relation references a missing vertex");
        rx[a].push_back(b);
        ry[b].push_back(a);
    }
    for (int a = 0; a < x.n; ++a)
        if (rx[a].empty()) {
            rep.violated_condition = 1;
            rep.witness = "x-vertex " + std::to_string(a) + " is unrelated";
            return rep;
        }
    for (int b = 0; b < y.n; ++b)
        if (ry[b].empty()) {
            rep.violated_condition = 1;
            rep.witness = "y-vertex " + std::to_string(b) + " is unrelated";
            return rep;
        }
    auto dx = all_pairs_distances(x);
    // close x-pairs per x-vertex, for condition (2)
    std::vector<std::vector<int>> close_x(x.n);
    for (int a = 0; a < x.n; ++a)
        for (int a2 = 0; a2 < x.n; ++a2)
            if (dx[a][a2] <= rel.c)
                close_x[a].push_back(a2);
    std::vector<int> f(x.n);
    for (int a = 0; a < x.n; ++a)
        f[a] = *std::min_element(rx[a].begin(), rx[a].end());
    std::vector<std::vector<int>> f_preimage(y.n);
    for (int a = 0; a < x.n; ++a)
        f_preimage[f[a]].push_back(a);
    // one streaming BFS per y-vertex covers both conditions and f
    int M = 0;
    std::vector<std::vector<int>> f_dist(x.n);  // d_y(f(a), .) rows
    auto adj_y = adjacency(y);
    std::vector<int> row(y.n);
    for (int b = 0; b < y.n; ++b) {
        std::fill(row.begin(), row.end(), -1);
        std::queue<int> q;
        row[b] = 0;
        q.push(b);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj_y[u])
                if (row[w] < 0) {
                    row[w] = row[u] + 1;
                    q.push(w);
                }
        }
        // condition (2): pairs (a, a2) with d_x <= c, b related to a
        for (int a : ry[b])
            for (int a2 : close_x[a])
                for (int b2 : rx[a2])
                    M = std::max(M, row[b2]);
        // condition (3): y-pairs at distance <= c
        for (int b2 = b; b2 < y.n; ++b2) {
            if (row[b2] > rel.c)
                continue;
            for (int a : ry[b])
                for (int a2 : ry[b2])
                    M = std::max(M, dx[a][a2]);
        }
        for (int a : f_preimage[b])
            f_dist[a] = row;
    }
    rep.ok = true;
    rep.M = M;
    rep.map_bound_ok = true;
    for (int a = 0; a < x.n && rep.map_bound_ok; ++a)
        for (int a2 = 0; a2 < x.n; ++a2)
            if (f_dist[a][f[a2]] > M * dx[a][a2] + M) {
                rep.map_bound_ok = false;
                rep.witness = "map bound fails at " + std::to_string(a) + "," +
                              std::to_string(a2);
                break;
            }
    return rep;
}

/// Corner ids of the 4-cycle that replaces each vertex.
struct GadgetMap {
    std::vector<std::array<int, 4>> corners;
};

/**
 * Replaces each vertex of a 4-regular graph by a 4-cycle; the half-edge
 * to the i-th smallest neighbor attaches at corner i. Output is 3-regular
 * on 4n vertices.
 */
inline std::pair<Graph, GadgetMap> four_to_three(const Graph& g)
{
    if (!is_regular(g, 4))
        throw NotFourRegular();
    if (!is_connected(g))
        throw Disconnected();
    Graph out(4 * g.n);
    GadgetMap gm;
    gm.corners.resize(g.n);
    for (int v = 0; v < g.n; ++v) {
        for (int i = 0; i < 4; ++i)
            gm.corners[v][i] = 4 * v + i;
        for (int i = 0; i < 4; ++i)
            out.add_edge(4 * v + i, 4 * v + (i + 1) % 4);
    }
    auto adj = adjacency(g);
    auto slot = [&](int v, int w) {
        return static_cast<int>(std::lower_bound(adj[v].begin(), adj[v].end(), w) -
                                adj[v].begin());
    };
    for (auto [u, v] : g.edges)
        out.add_edge(4 * u + slot(u, v), 4 * v + slot(v, u));
    return {out, gm};
}

/**
 * Decoder: the 4-cycles of the input must partition the vertices into
 * induced 4-cycles; contracting each class recovers a simple 4-regular
 * graph (classes are ordered by their smallest vertex).
 */
inline Graph three_to_four_decode(const Graph& g)
{
    auto adj = adjacency(g);
    // opposite corners of a 4-cycle are a vertex pair with two common
    // neighbors, so walk all pairs
    std::set<std::vector<int>> quad_sets;
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v) {
            std::vector<int> common;
            std::set_intersection(adj[u].begin(), adj[u].end(), adj[v].begin(),
                                  adj[v].end(), std::back_inserter(common));
            for (size_t i = 0; i < common.size(); ++i)
                for (size_t j = i + 1; j < common.size(); ++j) {
                    std::vector<int> s{u, v, common[i], common[j]};
                    std::sort(s.begin(), s.end());
                    quad_sets.insert(s);
                }
        }
    if (quad_sets.empty())
        throw AmbiguousGadgets("no 4-cycles found");
    std::vector<int> class_of(g.n, -1);
    std::vector<std::vector<int>> classes;
    for (const auto& s : quad_sets) {
        int induced_edges = 0;
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = i + 1; j < 4; ++j)
                if (g.has_edge(s[i], s[j]))
                    ++induced_edges;
        if (induced_edges != 4)
            throw AmbiguousGadgets("a 4-cycle spans a non-induced quadruple");
        for (int v : s)
            if (class_of[v] != -1)
                throw AmbiguousGadgets("4-cycles overlap");
        int id = static_cast<int>(classes.size());
        for (int v : s)
            class_of[v] = id;
        classes.push_back(s);
    }
    for (int v = 0; v < g.n; ++v)
        if (class_of[v] == -1)
            throw AmbiguousGadgets("a vertex lies on no 4-cycle");
    // classes are already ordered by smallest vertex (set iteration order)
    Graph out(static_cast<int>(classes.size()));
    std::set<std::pair<int, int>> cross;
    for (auto [u, v] : g.edges) {
        int a = class_of[u], b = class_of[v];
        if (a == b)
            continue;
        if (!cross.insert(std::minmax(a, b)).second)
            throw AmbiguousGadgets("contraction produced a parallel edge");
        out.add_edge(a, b);
    }
    if (!is_regular(out, 4))
        throw AmbiguousGadgets("contraction is not 4-regular");
    return out;
}

/// Image of a cycle under the gadget substitution, routed through corners.
inline Cycle gadget_image_cycle(const Graph& g, const GadgetMap& gm, const Cycle& c)
{
    auto adj = adjacency(g);
    auto slot = [&](int v, int w) {
        return static_cast<int>(std::lower_bound(adj[v].begin(), adj[v].end(), w) -
                                adj[v].begin());
    };
    Cycle out;
    int m = c.length();
    for (int i = 0; i < m; ++i) {
        int v = c.vertices[i];
        int prev = c.vertices[(i - 1 + m) % m];
        int next = c.vertices[(i + 1) % m];
        int a = slot(v, prev), b = slot(v, next);
        out.vertices.push_back(gm.corners[v][a]);
        if ((a + 2) % 4 == b)
            out.vertices.push_back(gm.corners[v][(a + 1) % 4]);
        if (a != b)
            out.vertices.push_back(gm.corners[v][b]);
    }
    return out;
}

/**
 * Encodes a vertex coloring by attaching color-many pendant vertices;
 * decoding erases degree-1 vertices and counts them.
 */
inline Graph pendant_color_encode(const Graph& g, const std::vector<int>& coloring)
{
    if (static_cast<int>(coloring.size()) != g.n)
        throw GraphError("coloring size mismatch");
    for (int cv : coloring)
        if (cv < 1)
            throw GraphError("colors must be positive");
    auto deg = degrees(g);
    for (int v = 0; v < g.n; ++v)
        if (deg[v] < 2)
            throw DegreeTooLow();
    int extra = std::accumulate(coloring.begin(), coloring.end(), 0);
    Graph out(g.n + extra);
    for (auto [u, v] : g.edges)
        out.add_edge(u, v);
    int next = g.n;
    for (int v = 0; v < g.n; ++v)
        for (int i = 0; i < coloring[v]; ++i)
            out.add_edge(v, next++);
    return out;
}

inline std::pair<Graph, std::vector<int>> pendant_color_decode(const Graph& g)
{
    auto deg = degrees(g);
    std::vector<int> core;
    for (int v = 0; v < g.n; ++v)
        if (deg[v] >= 2)
            core.push_back(v);
    if (core.empty())
        throw NoPendants();
    std::map<int, int> relabel;
    for (size_t i = 0; i < core.size(); ++i)
        relabel[core[i]] = static_cast<int>(i);
    std::vector<int> colors(core.size(), 0);
    Graph out(static_cast<int>(core.size()));
    for (auto [u, v] : g.edges) {
        bool cu = relabel.count(u) > 0, cv = relabel.count(v) > 0;
        if (cu && cv)
            out.add_edge(relabel[u], relabel[v]);
        else if (cu)
            ++colors[relabel[u]];
        else if (cv)
            ++colors[relabel[v]];
    }
    for (size_t i = 0; i < core.size(); ++i)
        if (colors[i] == 0)
            throw NoPendants();
    return {out, colors};
}

}  // namespace pltop
