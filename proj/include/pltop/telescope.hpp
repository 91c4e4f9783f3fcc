/**
 * Expander telescopes: signed 2-lifts with seeded spectral search,
 * hierarchical graph towers, their simplicial mapping telescopes, the
 * scheduled and greedy collapse verifiers, and per-level spectral
 * reports.
 */
#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pltop/complex.hpp"
#include "pltop/graph.hpp"
#include "pltop/graphkit.hpp"

namespace pltop {

struct NoGoodLift : GraphError {
    double best;
    explicit NoGoodLift(double best_)
        : GraphError("no signing reached the spectral threshold (best " +
                     std::to_string(best_) + ")"),
          best(best_)
    {
    }
};
struct Stuck : ComplexError {
    Stuck() : ComplexError("greedy collapse got stuck") {}
};
struct InvariantViolation : ComplexError {
    explicit InvariantViolation(const std::string& why)
        : ComplexError("telescope invariant violated: " + why) {}
};

using Signing = std::map<std::pair<int, int>, int>;  // edge -> +1 / -1

/**
 * Double cover determined by an edge signing: +1 edges connect the two
 * sheets in parallel, -1 edges crossed. Vertex (v, s) has id v + s*n.
 */
inline std::pair<Graph, std::vector<int>> two_lift(const Graph& g, const Signing& s)
{
    for (auto& e : g.edges)
        if (!s.count(e) || (s.at(e) != 1 && s.at(e) != -1))
            throw GraphError("signing is not total over the edges");
    Graph lift(2 * g.n);
    for (auto [u, v] : g.edges) {
        if (s.at({u, v}) == 1) {
            lift.add_edge(u, v);
            lift.add_edge(u + g.n, v + g.n);
        } else {
            lift.add_edge(u, v + g.n);
            lift.add_edge(u + g.n, v);
        }
    }
    std::vector<int> cover(2 * g.n);
    for (int v = 0; v < g.n; ++v)
        cover[v] = cover[v + g.n] = v;
    return {lift, cover};
}

inline std::vector<double> adjacency_eigenvalues(const Graph& g)
{
    SymMatrix a(g.n);
    for (auto [u, v] : g.edges)
        a.set(u, v, 1.0);
    return sym_eigs(a, 1e-11);
}

inline std::vector<double> signed_adjacency_eigenvalues(const Graph& g,
                                                        const Signing& s)
{
    SymMatrix a(g.n);
    for (auto [u, v] : g.edges)
        a.set(u, v, static_cast<double>(s.at({u, v})));
    return sym_eigs(a, 1e-11);
}

namespace detail {

inline uint64_t splitmix64(uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace detail

/**
 * Seeded search for a signing whose signed adjacency has small spectral
 * radius. Keeps the best of `trials` uniform samples; fails if even the
 * best exceeds the threshold (default 2 sqrt(deg-1) + 0.5).
 */
inline Signing find_good_lift(const Graph& g, int trials, uint64_t seed,
                              std::optional<double> threshold = std::nullopt)
{
    if (trials < 1)
        throw GraphError("need at least one trial");
    if (!is_connected(g))
        throw Disconnected();
    auto deg = degrees(g);
    int dreg = deg.empty() ? 0 : deg[0];
    if (dreg < 3 || !is_regular(g, dreg))
        throw GraphError("lift search needs a regular graph of degree >= 3");
    double limit = threshold.value_or(2.0 * std::sqrt(dreg - 1.0) + 0.5);
    std::vector<std::pair<int, int>> edges(g.edges.begin(), g.edges.end());
    Signing best;
    double best_radius = 0;
    uint64_t state = seed;
    for (int t = 0; t < trials; ++t) {
        Signing s;
        for (auto& e : edges) {
            state = detail::splitmix64(state);
            s[e] = (state & 1) ? 1 : -1;
        }
        auto eigs = signed_adjacency_eigenvalues(g, s);
        double radius = std::max(std::abs(eigs.front()), std::abs(eigs.back()));
        if (best.empty() || radius < best_radius) {
            best = std::move(s);
            best_radius = radius;
        }
    }
    if (best_radius > limit)
        throw NoGoodLift(best_radius);
    return best;
}

struct HierarchicalSequence {
    std::vector<Graph> levels;          // H_1, ..., H_{N+1}
    std::vector<std::vector<int>> maps; // maps[n]: V(levels[n+1]) -> V(levels[n])
    std::vector<Signing> signings;      // per map; empty for non-lift stages
};

inline void validate_hierarchy(const HierarchicalSequence& h)
{
    if (h.levels.empty() || h.maps.size() + 1 != h.levels.size())
        throw InvariantViolation("level/map counts disagree");
    for (size_t n = 0; n < h.maps.size(); ++n) {
        const Graph& top = h.levels[n + 1];
        const Graph& bot = h.levels[n];
        const auto& f = h.maps[n];
        if (static_cast<int>(f.size()) != top.n)
            throw InvariantViolation("map size mismatch");
        std::vector<int> fiber(bot.n, 0);
        for (int v = 0; v < top.n; ++v) {
            if (f[v] < 0 || f[v] >= bot.n)
                throw InvariantViolation("map image out of range");
            ++fiber[f[v]];
        }
        for (int v = 0; v < bot.n; ++v)
            if (fiber[v] < 2)
                throw InvariantViolation("a fiber has fewer than 2 vertices");
        for (auto [u, v] : top.edges)
            if (f[u] != f[v] && !bot.has_edge(f[u], f[v]))
                throw InvariantViolation("an edge maps to a non-edge");
    }
}

/**
 * Tower over a regular base: a single vertex, then the base under the
 * constant map, then repeated signed 2-lifts found by seeded search.
 */
inline HierarchicalSequence build_hierarchy(const Graph& base, int levels,
                                            int trials, uint64_t seed)
{
    if (!is_connected(base))
        throw Disconnected();
    HierarchicalSequence h;
    h.levels.push_back(Graph(1));
    if (levels < 1)
        return h;
    h.levels.push_back(base);
    h.maps.push_back(std::vector<int>(base.n, 0));
    h.signings.push_back({});
    for (int n = 2; n <= levels; ++n) {
        const Graph& cur = h.levels.back();
        Signing s = find_good_lift(cur, trials,
                                   detail::splitmix64(seed ^ (0x517cc1b7ULL * n)));
        auto [lift, cover] = two_lift(cur, s);
        h.levels.push_back(std::move(lift));
        h.maps.push_back(std::move(cover));
        h.signings.push_back(std::move(s));
    }
    validate_hierarchy(h);
    return h;
}

/// One mapping-cylinder 2-cell: a square subdivided by a center vertex,
/// or a triangle when the top edge maps to a single vertex.
struct TelescopeCell {
    int v, w;    // top edge (global ids)
    int fv, fw;  // images one level down
    int center;  // fresh center id, or -1 for a triangle cell
};

struct TelescopeComplex {
    Complex complex;
    std::vector<std::vector<int>> level_vertices;   // global ids per level
    std::map<int, int> level_of_vertex;             // level vertices only
    std::set<int> centers;
    std::vector<std::vector<TelescopeCell>> cylinders;
    std::vector<std::vector<std::pair<int, int>>> verticals;  // (top, bottom)

    /// 1-skeleton on the level vertices (centers excluded): the level
    /// graphs plus vertical and diagonal edges between consecutive levels.
    Graph level_skeleton() const
    {
        int n = static_cast<int>(level_of_vertex.size());
        Graph g(n);
        std::set<std::pair<int, int>> es;
        for (const auto& f : complex.facets)
            for (size_t i = 0; i < f.size(); ++i)
                for (size_t j = i + 1; j < f.size(); ++j) {
                    if (centers.count(f[i]) || centers.count(f[j]))
                        continue;
                    es.insert(std::minmax(f[i], f[j]));
                }
        for (auto& e : es)
            g.add_edge(e.first, e.second);
        return g;
    }
};

/**
 * Simplicial mapping telescope of a hierarchy: level graphs stacked with
 * their mapping cylinders, squares subdivided through center vertices so
 * the complex stays simplicial.
 */
inline TelescopeComplex telescope_complex(const HierarchicalSequence& h)
{
    validate_hierarchy(h);
    TelescopeComplex tc;
    std::vector<int> offset(h.levels.size());
    int next = 0;
    for (size_t n = 0; n < h.levels.size(); ++n) {
        offset[n] = next;
        std::vector<int> ids;
        for (int v = 0; v < h.levels[n].n; ++v) {
            tc.level_of_vertex[next] = static_cast<int>(n);
            ids.push_back(next++);
        }
        tc.level_vertices.push_back(std::move(ids));
    }
    std::vector<Facet> tris;
    std::set<std::pair<int, int>> edge_faces;
    auto note_edges = [&](const Facet& f) {
        for (size_t i = 0; i < f.size(); ++i)
            for (size_t j = i + 1; j < f.size(); ++j)
                edge_faces.insert(std::minmax(f[i], f[j]));
    };
    tc.cylinders.resize(h.maps.size());
    tc.verticals.resize(h.maps.size());
    for (size_t n = 0; n < h.maps.size(); ++n) {
        const Graph& top = h.levels[n + 1];
        const auto& f = h.maps[n];
        for (int v = 0; v < top.n; ++v)
            tc.verticals[n].push_back({offset[n + 1] + v, offset[n] + f[v]});
        for (auto [u, v] : top.edges) {
            TelescopeCell cell;
            cell.v = offset[n + 1] + u;
            cell.w = offset[n + 1] + v;
            cell.fv = offset[n] + f[u];
            cell.fw = offset[n] + f[v];
            if (f[u] == f[v]) {
                cell.center = -1;
                Facet t = sorted_facet({cell.v, cell.w, cell.fv});
                tris.push_back(t);
                note_edges(t);
            } else {
                cell.center = next++;
                tc.centers.insert(cell.center);
                for (const Facet& t :
                     {sorted_facet({cell.v, cell.w, cell.center}),
                      sorted_facet({cell.w, cell.fw, cell.center}),
                      sorted_facet({cell.fw, cell.fv, cell.center}),
                      sorted_facet({cell.fv, cell.v, cell.center})}) {
                    tris.push_back(t);
                    note_edges(t);
                }
            }
            tc.cylinders[n].push_back(cell);
        }
    }
    // edges not covered by any triangle survive as 1-facets
    std::vector<Facet> facets = tris;
    std::set<std::pair<int, int>> wanted;
    for (size_t n = 0; n < h.levels.size(); ++n)
        for (auto [u, v] : h.levels[n].edges)
            wanted.insert(std::minmax(offset[n] + u, offset[n] + v));
    for (size_t n = 0; n < h.maps.size(); ++n)
        for (auto& [t, b] : tc.verticals[n])
            wanted.insert(std::minmax(t, b));
    for (auto& e : wanted)
        if (!edge_faces.count(e))
            facets.push_back({e.first, e.second});
    if (facets.empty())
        facets.push_back({0});  // a bare single-vertex hierarchy
    tc.complex = Complex::from_facets(std::move(facets));
    return tc;
}

struct CollapseReport {
    bool collapsed = false;
    Complex core;
    long steps = 0;
};

namespace detail {

/// Face bookkeeping for elementary collapses of a 2-complex.
struct CollapseState {
    std::vector<Facet> tris;
    std::vector<char> tri_alive;
    std::map<std::pair<int, int>, std::vector<int>> edge_tris;
    std::set<std::pair<int, int>> edges;
    std::map<int, int> vertex_edge_count;
    std::map<int, int> vertex_tri_count;
    std::set<int> verts;
    long steps = 0;

    explicit CollapseState(const Complex& c)
    {
        for (const auto& f : c.facets) {
            if (f.size() > 3)
                throw ComplexError("collapse expects a complex of dimension <= 2");
            for (int v : f)
                verts.insert(v);
            if (f.size() == 3) {
                int id = static_cast<int>(tris.size());
                tris.push_back(f);
                tri_alive.push_back(1);
                for (auto [a, b] : {std::pair{f[0], f[1]}, std::pair{f[0], f[2]},
                                    std::pair{f[1], f[2]}})
                    edge_tris[{a, b}].push_back(id);
            }
        }
        for (const auto& f : c.facets) {
            if (f.size() == 3) {
                for (auto [a, b] : {std::pair{f[0], f[1]}, std::pair{f[0], f[2]},
                                    std::pair{f[1], f[2]}})
                    edges.insert({a, b});
            } else if (f.size() == 2) {
                edges.insert({f[0], f[1]});
            }
        }
        for (auto& [e, ids] : edge_tris)
            (void)ids;
        for (auto& e : edges) {
            ++vertex_edge_count[e.first];
            ++vertex_edge_count[e.second];
        }
        for (size_t i = 0; i < tris.size(); ++i)
            for (int v : tris[i])
                ++vertex_tri_count[v];
    }

    int live_tris_on(const std::pair<int, int>& e)
    {
        auto it = edge_tris.find(e);
        if (it == edge_tris.end())
            return 0;
        int cnt = 0;
        for (int id : it->second)
            if (tri_alive[id])
                ++cnt;
        return cnt;
    }

    bool edge_free(const std::pair<int, int>& e, int* tri_out = nullptr)
    {
        if (!edges.count(e))
            return false;
        auto it = edge_tris.find(e);
        if (it == edge_tris.end())
            return false;
        int cnt = 0, last = -1;
        for (int id : it->second)
            if (tri_alive[id]) {
                ++cnt;
                last = id;
            }
        if (cnt != 1)
            return false;
        if (tri_out)
            *tri_out = last;
        return true;
    }

    void collapse_edge(const std::pair<int, int>& e, int tri)
    {
        tri_alive[tri] = 0;
        for (int v : tris[tri])
            --vertex_tri_count[v];
        edges.erase(e);
        --vertex_edge_count[e.first];
        --vertex_edge_count[e.second];
        ++steps;
    }

    bool vertex_free(int v, std::pair<int, int>* edge_out = nullptr)
    {
        if (!verts.count(v))
            return false;
        if (vertex_tri_count[v] != 0 || vertex_edge_count[v] != 1)
            return false;
        if (edge_out) {
            for (auto& e : edges)
                if (e.first == v || e.second == v) {
                    *edge_out = e;
                    return true;
                }
            return false;
        }
        return true;
    }

    void collapse_vertex(int v, const std::pair<int, int>& e)
    {
        edges.erase(e);
        --vertex_edge_count[e.first];
        --vertex_edge_count[e.second];
        verts.erase(v);
        ++steps;
    }

    Complex remaining() const
    {
        std::vector<Facet> fs;
        std::set<int> covered;
        std::set<std::pair<int, int>> edge_in_tri;
        for (size_t i = 0; i < tris.size(); ++i)
            if (tri_alive[i]) {
                fs.push_back(tris[i]);
                for (auto [a, b] :
                     {std::pair{tris[i][0], tris[i][1]},
                      std::pair{tris[i][0], tris[i][2]},
                      std::pair{tris[i][1], tris[i][2]}})
                    edge_in_tri.insert({a, b});
                for (int v : tris[i])
                    covered.insert(v);
            }
        for (auto& e : edges)
            if (!edge_in_tri.count(e)) {
                fs.push_back({e.first, e.second});
                covered.insert(e.first);
                covered.insert(e.second);
            }
        for (int v : verts)
            if (!covered.count(v))
                fs.push_back({v});
        return Complex::from_facets(fs);
    }

    size_t face_count() const
    {
        size_t tri_count = 0;
        for (char a : tri_alive)
            tri_count += a;
        return tri_count + edges.size() + verts.size();
    }
};

}  // namespace detail

/**
 * Greedy collapse: repeatedly removes a free face with its unique facet
 * coface, edges before vertices, in lexicographic order. Succeeds when a
 * single vertex remains; otherwise reports the reduced core.
 */
inline CollapseReport collapse_greedy(const Complex& c)
{
    detail::CollapseState st(c);
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto it = st.edges.begin(); it != st.edges.end();) {
            int tri = -1;
            if (st.edge_free(*it, &tri)) {
                auto e = *it;
                ++it;
                st.collapse_edge(e, tri);
                progress = true;
            } else {
                ++it;
            }
        }
        std::vector<int> vs(st.verts.begin(), st.verts.end());
        for (int v : vs) {
            std::pair<int, int> e;
            if (st.vertex_free(v, &e)) {
                st.collapse_vertex(v, e);
                progress = true;
            }
        }
    }
    CollapseReport rep;
    rep.core = st.remaining();
    rep.steps = st.steps;
    rep.collapsed = st.face_count() == 1 && st.verts.size() == 1;
    return rep;
}

/**
 * Scheduled collapse of a telescope, top cylinder first: each square
 * cell collapses from its free top edge through the center, each
 * triangle cell from its top edge, then the vertical edges from their
 * free top vertices. Every step verifies freeness.
 */
inline CollapseReport collapse_scheduled(const TelescopeComplex& tc)
{
    detail::CollapseState st(tc.complex);
    auto need_edge = [&](int a, int b) {
        auto e = std::minmax(a, b);
        int tri = -1;
        if (!st.edge_free(e, &tri))
            throw InvariantViolation("scheduled edge is not free");
        st.collapse_edge(e, tri);
    };
    auto need_vertex = [&](int v) {
        std::pair<int, int> e;
        if (!st.vertex_free(v, &e))
            throw InvariantViolation("scheduled vertex is not free");
        st.collapse_vertex(v, e);
    };
    for (int n = static_cast<int>(tc.cylinders.size()) - 1; n >= 0; --n) {
        for (const auto& cell : tc.cylinders[n]) {
            if (cell.center < 0) {
                need_edge(cell.v, cell.w);
            } else {
                need_edge(cell.v, cell.w);        // across {v,w,c}
                need_edge(cell.v, cell.center);   // across {v,fv,c}
                need_edge(cell.w, cell.center);   // across {w,fw,c}
                need_edge(cell.fv, cell.center);  // across {fv,fw,c}
                need_vertex(cell.center);         // along {c,fw}
            }
        }
        for (const auto& [top, bot] : tc.verticals[n])
            need_vertex(top);
    }
    CollapseReport rep;
    rep.core = st.remaining();
    rep.steps = st.steps;
    rep.collapsed = st.face_count() == 1 && st.verts.size() == 1;
    return rep;
}

struct SpectralReport {
    int level = 0;
    double lambda2 = 0;
    std::optional<Rational> h_exact;  // conductance when small enough
    double alpha = 0;                 // claimed expansion bound lambda2/2
    int max_degree = 0;
    int degree_bound = 0;
    bool connected = false;
};

/**
 * Per-level spectral audit of the telescope tower: lambda2 of the level
 * skeleton, exact conductance on small skeletons, and the degree bound
 * deg(base) + fiber bound + 1.
 */
inline std::vector<SpectralReport> expansion_report(const HierarchicalSequence& h)
{
    validate_hierarchy(h);
    std::vector<SpectralReport> out;
    int base_deg = h.levels.size() > 1 ? max_degree(h.levels[1]) : 0;
    int c_fib = 2;
    for (size_t n = 1; n <= h.maps.size(); ++n) {
        HierarchicalSequence prefix;
        prefix.levels.assign(h.levels.begin(), h.levels.begin() + n + 1);
        prefix.maps.assign(h.maps.begin(), h.maps.begin() + n);
        auto tc = telescope_complex(prefix);
        Graph skel = tc.level_skeleton();
        SpectralReport rep;
        rep.level = static_cast<int>(n);
        rep.connected = is_connected(skel);
        rep.lambda2 = lambda2(skel);
        rep.alpha = rep.lambda2 / 2;
        if (skel.n <= 24 && rep.connected)
            rep.h_exact = conductance_exact(skel);
        rep.max_degree = max_degree(skel);
        rep.degree_bound = base_deg + c_fib + 1;
        out.push_back(rep);
    }
    return out;
}

}  // namespace pltop
