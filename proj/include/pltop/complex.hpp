/**
 * Pure abstract simplicial complexes stored as facet antichains over
 * integer vertex ids: validation, links and stars, stellar moves,
 * barycentric subdivision with provenance, dual graphs, field Betti
 * numbers, and connected sums.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "pltop/graph.hpp"
#include "pltop/linalg.hpp"

namespace pltop {

using Facet = std::vector<int>;  // sorted vertex ids

struct ComplexError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FacetNotFound : ComplexError {
    FacetNotFound() : ComplexError("facet not found") {}
};
struct FaceNotFound : ComplexError {
    FaceNotFound() : ComplexError("face not found") {}
};
struct NotReverseStellatable : ComplexError {
    explicit NotReverseStellatable(const std::string& why)
        : ComplexError("not reverse-stellatable: " + why) {}
};
struct NotPure : ComplexError {
    NotPure() : ComplexError("complex is not pure") {}
};
struct RidgeOveruse : ComplexError {
    RidgeOveruse() : ComplexError("a ridge lies in more than two facets") {}
};
struct NotClosedPseudomanifold : ComplexError {
    NotClosedPseudomanifold()
        : ComplexError("complex is not a closed pseudomanifold") {}
};
struct NotInduced : ComplexError {
    NotInduced() : ComplexError("facet boundary is not induced") {}
};
struct DimensionMismatch : ComplexError {
    DimensionMismatch() : ComplexError("dimension mismatch") {}
};
struct DuplicateFaceAfterGluing : ComplexError {
    DuplicateFaceAfterGluing()
        : ComplexError("gluing produced a duplicate face") {}
};

inline std::string facet_to_string(const Facet& f)
{
    std::string s = "{";
    for (size_t i = 0; i < f.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(f[i]);
    }
    return s + "}";
}

/// True when a is a subset of b; both must be sorted.
inline bool subset_of(const Facet& a, const Facet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Facet sorted_facet(Facet f)
{
    std::sort(f.begin(), f.end());
    return f;
}

struct Complex {
    // each facet sorted; the list itself sorted by (size, lex)
    std::vector<Facet> facets;

    Complex() = default;

    static Complex from_facets(std::vector<Facet> fs)
    {
        for (auto& f : fs) {
            std::sort(f.begin(), f.end());
            for (size_t i = 0; i + 1 < f.size(); ++i)
                if (f[i] == f[i + 1])
                    throw ComplexError("facet with repeated vertex " +
                                       facet_to_string(f));
            if (!f.empty() && f.front() < 0)
                throw ComplexError("negative vertex id");
        }
        Complex c;
        c.facets = std::move(fs);
        c.canonicalize();
        return c;
    }

    void canonicalize()
    {
        std::sort(facets.begin(), facets.end(), [](const Facet& a, const Facet& b) {
            if (a.size() != b.size())
                return a.size() < b.size();
            return a < b;
        });
    }

    bool empty() const { return facets.empty(); }

    int dim() const
    {
        int d = -1;
        for (const auto& f : facets)
            d = std::max(d, static_cast<int>(f.size()) - 1);
        return d;
    }

    std::vector<int> vertices() const
    {
        std::set<int> vs;
        for (const auto& f : facets)
            vs.insert(f.begin(), f.end());
        return {vs.begin(), vs.end()};
    }

    int vertex_count() const { return static_cast<int>(vertices().size()); }
    int facet_count() const { return static_cast<int>(facets.size()); }

    int max_vertex_id() const
    {
        int m = -1;
        for (const auto& f : facets)
            if (!f.empty())
                m = std::max(m, f.back());
        return m;
    }

    bool has_facet(const Facet& f) const
    {
        Facet s = sorted_facet(f);
        for (const auto& g : facets)
            if (g == s)
                return true;
        return false;
    }

    bool has_face(const Facet& f) const
    {
        Facet s = sorted_facet(f);
        for (const auto& g : facets)
            if (subset_of(s, g))
                return true;
        return false;
    }

    bool is_pure() const
    {
        if (facets.empty())
            return true;
        size_t k = facets.front().size();
        for (const auto& f : facets)
            if (f.size() != k)
                return false;
        return true;
    }

    /// All nonempty faces, sorted by (size, lex), duplicate-free.
    std::vector<Facet> all_faces() const
    {
        std::set<Facet> out;
        for (const auto& f : facets) {
            size_t k = f.size();
            if (k > 25)
                throw ComplexError("facet too large for face enumeration");
            for (uint32_t mask = 1; mask < (1u << k); ++mask) {
                Facet sub;
                for (size_t i = 0; i < k; ++i)
                    if (mask & (1u << i))
                        sub.push_back(f[i]);
                out.insert(std::move(sub));
            }
        }
        std::vector<Facet> v(out.begin(), out.end());
        std::sort(v.begin(), v.end(), [](const Facet& a, const Facet& b) {
            if (a.size() != b.size())
                return a.size() < b.size();
            return a < b;
        });
        return v;
    }

    std::vector<Facet> faces_of_dim(int k) const
    {
        std::vector<Facet> out;
        for (const auto& f : all_faces())
            if (static_cast<int>(f.size()) == k + 1)
                out.push_back(f);
        return out;
    }

    bool operator==(const Complex& other) const { return facets == other.facets; }
};

/// The full d-simplex on vertices 0..d.
inline Complex simplex(int d)
{
    Facet f(d + 1);
    std::iota(f.begin(), f.end(), 0);
    return Complex::from_facets({f});
}

/// Boundary of the d-simplex: a (d-1)-sphere on d+1 vertices.
inline Complex boundary_of_simplex(int d)
{
    std::vector<Facet> fs;
    for (int skip = 0; skip <= d; ++skip) {
        Facet f;
        for (int v = 0; v <= d; ++v)
            if (v != skip)
                f.push_back(v);
        fs.push_back(f);
    }
    return Complex::from_facets(std::move(fs));
}

struct ValidationReport {
    bool antichain = true;
    bool no_duplicates = true;
    bool pure = false;
    bool pseudomanifold = false;        // every ridge in at most 2 facets
    bool closed_pseudomanifold = false; // every ridge in exactly 2 facets
    std::vector<std::pair<Facet, Facet>> antichain_violations;
    std::vector<Facet> duplicate_facets;

    bool valid() const { return antichain && no_duplicates; }
};

inline ValidationReport validate(const Complex& c)
{
    ValidationReport rep;
    const auto& fs = c.facets;
    for (size_t i = 0; i + 1 < fs.size(); ++i)
        if (fs[i] == fs[i + 1]) {
            rep.no_duplicates = false;
            rep.duplicate_facets.push_back(fs[i]);
        }
    for (size_t i = 0; i < fs.size(); ++i)
        for (size_t j = 0; j < fs.size(); ++j)
            if (i != j && fs[i].size() < fs[j].size() && subset_of(fs[i], fs[j])) {
                rep.antichain = false;
                rep.antichain_violations.push_back({fs[i], fs[j]});
            }
    rep.pure = c.is_pure();
    if (rep.pure && !fs.empty() && rep.valid()) {
        std::map<Facet, int> ridge_use;
        for (const auto& f : fs)
            for (size_t i = 0; i < f.size(); ++i) {
                Facet r;
                for (size_t j = 0; j < f.size(); ++j)
                    if (j != i)
                        r.push_back(f[j]);
                if (!r.empty())
                    ++ridge_use[r];
            }
        rep.pseudomanifold = true;
        rep.closed_pseudomanifold = true;
        for (auto& [r, cnt] : ridge_use) {
            if (cnt > 2)
                rep.pseudomanifold = rep.closed_pseudomanifold = false;
            else if (cnt != 2)
                rep.closed_pseudomanifold = false;
        }
    }
    return rep;
}

inline bool is_closed_pseudomanifold(const Complex& c)
{
    auto rep = validate(c);
    return rep.valid() && rep.pure && rep.closed_pseudomanifold && !c.empty();
}

/// Subdivision bookkeeping: where each fresh vertex and facet came from.
struct Provenance {
    std::map<int, Facet> vertex_origin;   // new vertex id -> source face
    std::map<Facet, Facet> facet_origin;  // new facet -> source facet
};

/**
 * Barycentric subdivision. Output vertices are fresh ids in bijection
 * with the nonempty faces (in (size, lex) order); output facets are the
 * maximal flags of the face poset.
 */
inline std::pair<Complex, Provenance> barycentric(const Complex& c)
{
    Provenance prov;
    auto faces = c.all_faces();
    std::map<Facet, int> id_of_face;
    for (size_t i = 0; i < faces.size(); ++i) {
        id_of_face[faces[i]] = static_cast<int>(i);
        prov.vertex_origin[static_cast<int>(i)] = faces[i];
    }
    std::vector<Facet> out;
    for (const auto& f : c.facets) {
        Facet perm = f;
        std::sort(perm.begin(), perm.end());
        do {
            Facet flag;
            Facet prefix;
            for (int v : perm) {
                prefix.push_back(v);
                Facet key = sorted_facet(prefix);
                flag.push_back(id_of_face.at(key));
            }
            std::sort(flag.begin(), flag.end());
            prov.facet_origin[flag] = f;
            out.push_back(std::move(flag));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return {Complex::from_facets(std::move(out)), std::move(prov)};
}

/**
 * Stellar subdivision at an arbitrary face: the open star of the face is
 * replaced by the cone from a fresh vertex over its boundary joined with
 * the link. The fresh vertex id is max_vertex_id() + 1.
 */
inline Complex stellate_face(const Complex& c, const Facet& face)
{
    Facet f = sorted_facet(face);
    if (!c.has_face(f))
        throw FaceNotFound();
    int w = c.max_vertex_id() + 1;
    std::vector<Facet> out;
    for (const auto& g : c.facets) {
        if (!subset_of(f, g)) {
            out.push_back(g);
            continue;
        }
        for (int v : f) {
            Facet h;
            for (int x : g)
                if (x != v)
                    h.push_back(x);
            h.push_back(w);
            out.push_back(sorted_facet(h));
        }
    }
    return Complex::from_facets(std::move(out));
}

/// Stellar subdivision at a facet: the cone over its boundary.
inline Complex stellate_facet(const Complex& c, const Facet& f)
{
    if (!c.has_facet(f))
        throw FacetNotFound();
    return stellate_face(c, f);
}

inline Complex link(const Complex& c, const Facet& face)
{
    Facet f = sorted_facet(face);
    if (!c.has_face(f))
        throw FaceNotFound();
    std::vector<Facet> out;
    for (const auto& g : c.facets)
        if (subset_of(f, g)) {
            Facet h;
            std::set_difference(g.begin(), g.end(), f.begin(), f.end(),
                                std::back_inserter(h));
            if (!h.empty())
                out.push_back(h);
        }
    return Complex::from_facets(std::move(out));
}

/// Closed star: all facets containing the face.
inline Complex star(const Complex& c, const Facet& face)
{
    Facet f = sorted_facet(face);
    if (!c.has_face(f))
        throw FaceNotFound();
    std::vector<Facet> out;
    for (const auto& g : c.facets)
        if (subset_of(f, g))
            out.push_back(g);
    return Complex::from_facets(std::move(out));
}

inline std::vector<int> vertex_neighbors(const Complex& c, int v)
{
    std::set<int> nb;
    for (const auto& f : c.facets)
        if (std::binary_search(f.begin(), f.end(), v))
            for (int x : f)
                if (x != v)
                    nb.insert(x);
    return {nb.begin(), nb.end()};
}

/**
 * Inverse of stellate_facet: replaces the star of v by the single facet
 * on its neighbors. Requires deg(v) = dim + 1 with the star forming a
 * cone over the simplex boundary, and refuses whenever the removal would
 * duplicate an existing facet or break the antichain.
 */
inline Complex reverse_stellate(const Complex& c, int v)
{
    int d = c.dim();
    std::vector<int> nb = vertex_neighbors(c, v);
    if (static_cast<int>(nb.size()) != d + 1)
        throw NotReverseStellatable("vertex degree is not dim + 1");
    std::vector<Facet> star_facets, rest;
    for (const auto& f : c.facets)
        if (std::binary_search(f.begin(), f.end(), v))
            star_facets.push_back(f);
        else
            rest.push_back(f);
    // the star must be exactly the cone over the boundary of the neighbor simplex
    if (star_facets.size() != static_cast<size_t>(d + 1))
        throw NotReverseStellatable("star is not a cone over a simplex boundary");
    std::set<Facet> expected;
    for (int skip : nb) {
        Facet f;
        for (int x : nb)
            if (x != skip)
                f.push_back(x);
        f.push_back(v);
        expected.insert(sorted_facet(f));
    }
    std::set<Facet> got(star_facets.begin(), star_facets.end());
    if (got != expected)
        throw NotReverseStellatable("link is not the boundary of a simplex");
    for (const auto& f : rest) {
        if (f == nb)
            throw NotReverseStellatable("removal would duplicate a facet");
        if (subset_of(f, nb) || subset_of(nb, f))
            throw NotReverseStellatable("removal would break the antichain");
    }
    rest.push_back(nb);
    return Complex::from_facets(std::move(rest));
}

struct DualGraph {
    Graph graph;
    std::vector<Facet> facet_of_vertex;              // dual vertex -> facet
    std::map<std::pair<int, int>, Facet> ridge_of_edge;
};

/**
 * Dual graph of a pure pseudomanifold: one vertex per facet, one edge
 * per shared ridge. (d+1)-regular when the complex is closed.
 */
inline DualGraph dual_graph(const Complex& c)
{
    if (!c.is_pure())
        throw NotPure();
    DualGraph dg;
    dg.facet_of_vertex = c.facets;
    dg.graph = Graph(c.facet_count());
    std::map<Facet, std::vector<int>> ridge_facets;
    for (int i = 0; i < c.facet_count(); ++i) {
        const auto& f = c.facets[i];
        for (size_t j = 0; j < f.size(); ++j) {
            Facet r;
            for (size_t t = 0; t < f.size(); ++t)
                if (t != j)
                    r.push_back(f[t]);
            if (!r.empty())
                ridge_facets[r].push_back(i);
        }
    }
    for (auto& [r, ids] : ridge_facets) {
        if (ids.size() > 2)
            throw RidgeOveruse();
        if (ids.size() == 2) {
            dg.graph.add_edge(ids[0], ids[1]);
            dg.ridge_of_edge[std::minmax(ids[0], ids[1])] = r;
        }
    }
    return dg;
}

/**
 * Facet rings around codimension-2 faces, as cycles in the dual graph.
 * For a closed pseudomanifold these are the boundaries of the 2-cells of
 * the dual cell structure; each dual edge lies in exactly d of them.
 */
inline std::vector<Cycle> dual_two_cells(const Complex& c)
{
    if (!is_closed_pseudomanifold(c))
        throw NotClosedPseudomanifold();
    int d = c.dim();
    if (d < 2)
        throw ComplexError("dual 2-cells need dimension at least 2");
    std::map<Facet, int> facet_id;
    for (int i = 0; i < c.facet_count(); ++i)
        facet_id[c.facets[i]] = i;
    std::vector<Cycle> rings;
    for (const auto& gamma : c.faces_of_dim(d - 2)) {
        // facets around gamma, chained through ridges containing gamma
        std::vector<int> around;
        for (int i = 0; i < c.facet_count(); ++i)
            if (subset_of(gamma, c.facets[i]))
                around.push_back(i);
        if (around.size() < 3)
            throw NotClosedPseudomanifold();
        Cycle ring;
        const int start = around.front();
        int cur = start;
        Facet prev_ridge;
        for (size_t step = 0; step < around.size(); ++step) {
            ring.vertices.push_back(cur);
            const Facet& f = c.facets[cur];
            Facet extra;
            std::set_difference(f.begin(), f.end(), gamma.begin(), gamma.end(),
                                std::back_inserter(extra));
            // the two ridges of f containing gamma each drop one extra vertex;
            // leave through the one we did not come in by
            int next = -1;
            for (int skip : extra) {
                Facet ridge;
                for (int x : f)
                    if (x != skip)
                        ridge.push_back(x);
                if (ridge == prev_ridge)
                    continue;
                for (int j : around)
                    if (j != cur && subset_of(ridge, c.facets[j])) {
                        next = j;
                        prev_ridge = ridge;
                        break;
                    }
                if (next >= 0)
                    break;
            }
            if (next < 0)
                throw NotClosedPseudomanifold();
            cur = next;
        }
        std::set<int> uniq(ring.vertices.begin(), ring.vertices.end());
        if (cur != start || uniq.size() != around.size())
            throw NotClosedPseudomanifold();
        rings.push_back(std::move(ring));
    }
    return rings;
}

struct BettiVector {
    int p = 2;
    std::vector<long> betti;  // indexed by homological degree, length dim+1

    bool operator==(const BettiVector& other) const
    {
        return p == other.p && betti == other.betti;
    }
};

/**
 * Betti numbers over GF(p) from boundary-matrix ranks. Signs follow the
 * lexicographic vertex order within each face. The rank of the vertex-edge
 * incidence boundary equals V - #components over every field and is
 * computed structurally; higher boundaries go through Gaussian elimination.
 */
inline BettiVector betti(const Complex& c, int p)
{
    if (!is_prime(p))
        throw NotPrime(p);
    BettiVector out;
    out.p = p;
    int d = c.dim();
    if (d < 0)
        return out;
    auto faces = c.all_faces();
    std::vector<std::vector<Facet>> by_dim(d + 1);
    std::vector<std::map<Facet, int>> index(d + 1);
    for (auto& f : faces) {
        int k = static_cast<int>(f.size()) - 1;
        index[k][f] = static_cast<int>(by_dim[k].size());
        by_dim[k].push_back(f);
    }
    // rank of each boundary map; rank[0] := 0 (the map to the empty complex)
    std::vector<long> rank(d + 2, 0);
    {
        // vertex-edge incidence: V - #components
        std::map<int, int> vid;
        for (auto& f : by_dim[0])
            vid[f[0]] = static_cast<int>(vid.size());
        std::vector<int> parent(vid.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        if (d >= 1)
            for (auto& e : by_dim[1]) {
                int a = find(vid[e[0]]), b = find(vid[e[1]]);
                if (a != b)
                    parent[a] = b;
            }
        std::set<int> roots;
        for (size_t i = 0; i < parent.size(); ++i)
            roots.insert(find(static_cast<int>(i)));
        rank[1] = static_cast<long>(vid.size() - roots.size());
    }
    for (int k = 2; k <= d; ++k) {
        std::vector<std::tuple<int, int, int>> trip;
        for (size_t col = 0; col < by_dim[k].size(); ++col) {
            const Facet& f = by_dim[k][col];
            for (size_t i = 0; i < f.size(); ++i) {
                Facet sub;
                for (size_t j = 0; j < f.size(); ++j)
                    if (j != i)
                        sub.push_back(f[j]);
                int row = index[k - 1].at(sub);
                trip.push_back({row, static_cast<int>(col), (i % 2 == 0) ? 1 : -1});
            }
        }
        rank[k] = gf_rank_sparse(static_cast<int>(by_dim[k - 1].size()),
                                 static_cast<int>(by_dim[k].size()), trip, p);
    }
    out.betti.resize(d + 1);
    for (int k = 0; k <= d; ++k)
        out.betti[k] = static_cast<long>(by_dim[k].size()) - rank[k] -
                       (k + 1 <= d ? rank[k + 1] : 0);
    return out;
}

/**
 * Connected sum: delete the interiors of fx and fy and glue along the
 * given vertex bijection. Vertices of y outside fy are relabeled with
 * fresh ids.
 */
inline Complex connected_sum(const Complex& x, const Facet& fx_in, const Complex& y,
                             const Facet& fy_in, const std::map<int, int>& bij)
{
    Facet fx = sorted_facet(fx_in), fy = sorted_facet(fy_in);
    if (!x.has_facet(fx) || !y.has_facet(fy))
        throw FacetNotFound();
    if (!is_closed_pseudomanifold(x) || !is_closed_pseudomanifold(y))
        throw NotClosedPseudomanifold();
    if (x.dim() != y.dim())
        throw DimensionMismatch();
    if (bij.size() != fx.size())
        throw ComplexError("gluing map is not a bijection between the facets");
    std::set<int> image;
    for (int v : fx) {
        auto it = bij.find(v);
        if (it == bij.end() ||
            !std::binary_search(fy.begin(), fy.end(), it->second))
            throw ComplexError("gluing map is not a bijection between the facets");
        image.insert(it->second);
    }
    if (image.size() != fy.size())
        throw ComplexError("gluing map is not a bijection between the facets");
    // boundaries must be induced in the punctured complexes
    auto induced_ok = [](const Complex& c, const Facet& f) {
        for (const auto& g : c.facets)
            if (g != f && subset_of(g, f))
                return false;
        return true;
    };
    if (!induced_ok(x, fx) || !induced_ok(y, fy))
        throw NotInduced();

    std::map<int, int> relabel;  // y vertex -> output vertex
    for (auto& [a, b] : bij)
        relabel[b] = a;
    int next = x.max_vertex_id() + 1;
    for (int v : y.vertices())
        if (!relabel.count(v))
            relabel[v] = next++;

    std::vector<Facet> out;
    for (const auto& g : x.facets)
        if (g != fx)
            out.push_back(g);
    size_t from_x = out.size();
    for (const auto& g : y.facets) {
        if (g == fy)
            continue;
        Facet h;
        for (int v : g)
            h.push_back(relabel.at(v));
        out.push_back(sorted_facet(h));
    }
    // fresh relabeling keeps the pieces disjoint away from the seam, but
    // check anyway
    std::set<Facet> seen(out.begin(), out.begin() + from_x);
    for (size_t i = from_x; i < out.size(); ++i)
        if (!seen.insert(out[i]).second)
            throw DuplicateFaceAfterGluing();
    return Complex::from_facets(std::move(out));
}

}  // namespace pltop
