/**
 * Facet-coloring codec. Encoding replaces every facet of the second
 * barycentric subdivision by a stellated-simplex disk whose size encodes
 * a (color, flag-depth) pair; decoding undoes the stellations greedily,
 * reads the sizes back, recovers the vertex dimension classes of the
 * subdivision, and de-barycentrizes twice.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "pltop/complex.hpp"

namespace pltop {

struct NotManifoldLike : ComplexError {
    NotManifoldLike() : ComplexError("input is not a closed homology manifold") {}
};
struct TooManyColors : ComplexError {
    TooManyColors() : ComplexError("a facet color exceeds the declared range") {}
};
struct StuckCollapse : ComplexError {
    StuckCollapse() : ComplexError("reverse stellation did not reach a subdivision") {}
};
struct UnknownPaletteSize : ComplexError {
    UnknownPaletteSize() : ComplexError("a disk size matches no palette member") {}
};
struct InconsistentLabels : ComplexError {
    explicit InconsistentLabels(const std::string& why)
        : ComplexError("inconsistent labels: " + why) {}
};
struct ValidationFailed : ComplexError {
    explicit ValidationFailed(const std::string& why)
        : ComplexError("re-subdivision validation failed: " + why) {}
};
struct PropagationConflict : ComplexError {
    explicit PropagationConflict(const std::string& why)
        : ComplexError("class propagation failed: " + why) {}
};

struct ColoredComplex {
    Complex complex;
    std::map<Facet, int> colors;  // facet -> color in [1, r]
};

/**
 * Member i is the d-simplex after i stellar subdivisions, always at the
 * lexicographically smallest facet: 1 + i*d facets, boundary the simplex
 * boundary on vertices 0..d, members told apart by facet count alone.
 */
struct Palette {
    int d = 0;
    std::vector<Complex> members;  // members[i-1] = i stellations
};

inline Palette palette(int d, int count)
{
    if (d < 1 || count < 1)
        throw ComplexError("palette needs d >= 1 and count >= 1");
    Palette pal;
    pal.d = d;
    Complex cur = simplex(d);
    for (int i = 1; i <= count; ++i) {
        cur = stellate_facet(cur, cur.facets.front());
        pal.members.push_back(cur);
    }
    return pal;
}

namespace detail {

inline void require_closed_homology_manifold(const Complex& c)
{
    int d = c.dim();
    if (d < 2)
        throw NotManifoldLike();
    if (!is_closed_pseudomanifold(c))
        throw NotManifoldLike();
    try {
        dual_two_cells(c);  // links of codimension-2 faces must be circles
    } catch (const ComplexError&) {
        throw NotManifoldLike();
    }
    auto dg = dual_graph(c);
    if (!is_connected(dg.graph))
        throw NotManifoldLike();
}

}  // namespace detail

/**
 * Replaces each facet of b(b(x)) by the palette member indexed by the
 * pair (facet color of x, dimension of the x-face whose barycenter
 * anchors the flag). Facet count grows by at most
 * ((d+1)!)^2 * (1 + r(d+1)d).
 */
inline Complex encode(const ColoredComplex& x, int r)
{
    const int d = x.complex.dim();
    detail::require_closed_homology_manifold(x.complex);
    if (r < 1)
        throw TooManyColors();
    for (const auto& f : x.complex.facets) {
        auto it = x.colors.find(f);
        if (it == x.colors.end())
            throw ComplexError("uncolored facet " + facet_to_string(f));
        if (it->second < 1 || it->second > r)
            throw TooManyColors();
    }
    auto [b1, prov1] = barycentric(x.complex);
    auto [bb, prov2] = barycentric(b1);
    Palette pal = palette(d, r * (d + 1));
    int next = bb.max_vertex_id() + 1;
    std::vector<Facet> out;
    out.reserve(static_cast<size_t>(bb.facet_count()) * (1 + r * (d + 1) * d));
    for (const auto& tau : bb.facets) {
        // the unique vertex of tau refining a vertex of b1 anchors the flag
        int anchor = -1;
        for (int v : tau)
            if (prov2.vertex_origin.at(v).size() == 1) {
                anchor = prov2.vertex_origin.at(v)[0];
                break;
            }
        int dim_sigma = static_cast<int>(prov1.vertex_origin.at(anchor).size()) - 1;
        const Facet& delta_facet =
            prov1.facet_origin.at(prov2.facet_origin.at(tau));
        int color = x.colors.at(delta_facet);
        int member_index = (color - 1) * (d + 1) + dim_sigma;  // 0-based
        const Complex& member = pal.members[member_index];
        // boundary vertices 0..d glue to the sorted facet; interiors are fresh
        std::vector<int> remap(member.max_vertex_id() + 1, -1);
        for (int j = 0; j <= d; ++j)
            remap[j] = tau[j];
        for (int j = d + 1; j <= member.max_vertex_id(); ++j)
            remap[j] = next++;
        for (const auto& mf : member.facets) {
            Facet h;
            h.reserve(mf.size());
            for (int v : mf)
                h.push_back(remap[v]);
            out.push_back(sorted_facet(h));
        }
    }
    return Complex::from_facets(std::move(out));
}

/**
 * Vertex partition of a barycentric subdivision into d+1 dimension
 * classes, by propagating a proper coloring facet-to-facet across
 * ridges. The partition is forced; only its labeling is ambiguous.
 */
inline std::vector<std::vector<int>> dim_classes(const Complex& b)
{
    if (!b.is_pure() || b.empty())
        throw PropagationConflict("input is not a nonempty pure complex");
    const int d = b.dim();
    std::map<Facet, std::vector<int>> ridge_facets;
    for (int i = 0; i < b.facet_count(); ++i) {
        const auto& f = b.facets[i];
        for (size_t j = 0; j < f.size(); ++j) {
            Facet ridge;
            for (size_t t = 0; t < f.size(); ++t)
                if (t != j)
                    ridge.push_back(f[t]);
            ridge_facets[ridge].push_back(i);
        }
    }
    for (auto& [ridge, ids] : ridge_facets)
        if (ids.size() > 2)
            throw PropagationConflict("a ridge lies in more than two facets");
    std::map<int, int> cls;
    std::vector<char> seen(b.facet_count(), 0);
    std::queue<int> q;
    for (size_t i = 0; i < b.facets.front().size(); ++i)
        cls[b.facets.front()[i]] = static_cast<int>(i);
    seen[0] = 1;
    q.push(0);
    int covered = 1;
    while (!q.empty()) {
        int i = q.front();
        q.pop();
        const auto& f = b.facets[i];
        for (size_t j = 0; j < f.size(); ++j) {
            Facet ridge;
            for (size_t t = 0; t < f.size(); ++t)
                if (t != j)
                    ridge.push_back(f[t]);
            for (int other : ridge_facets[ridge]) {
                if (other == i || seen[other])
                    continue;
                // the new vertex of the neighbor takes the missing class
                const auto& g = b.facets[other];
                int fresh = -1;
                std::set<int> used;
                for (int v : g) {
                    auto it = cls.find(v);
                    if (it == cls.end()) {
                        if (fresh != -1)
                            throw PropagationConflict("two unlabeled vertices");
                        fresh = v;
                    } else {
                        if (!used.insert(it->second).second)
                            throw PropagationConflict("class repeated in a facet");
                    }
                }
                if (fresh != -1) {
                    int missing = -1;
                    for (int c = 0; c <= d; ++c)
                        if (!used.count(c))
                            missing = c;
                    cls[fresh] = missing;
                }
                seen[other] = 1;
                ++covered;
                q.push(other);
            }
        }
    }
    if (covered != b.facet_count())
        throw PropagationConflict("dual graph is disconnected");
    std::vector<std::vector<int>> classes(d + 1);
    for (const auto& f : b.facets) {
        std::set<int> used;
        for (int v : f) {
            auto it = cls.find(v);
            if (it == cls.end())
                throw PropagationConflict("unlabeled vertex");
            if (!used.insert(it->second).second)
                throw PropagationConflict("class repeated in a facet");
        }
    }
    for (auto& [v, c] : cls)
        classes[c].push_back(v);
    return classes;
}

struct Debarycentrized {
    Complex complex;                      // the de-subdivided complex K
    std::map<int, Facet> face_of_vertex;  // b-vertex -> K-face as a vertex set
};

namespace detail {

using AdjMap = std::map<int, std::vector<int>>;  // sorted neighbor lists

inline AdjMap skeleton_adjacency(const std::vector<Facet>& facets)
{
    std::map<int, std::set<int>> tmp;
    for (const auto& f : facets) {
        for (int v : f)
            tmp[v];
        for (size_t i = 0; i < f.size(); ++i)
            for (size_t j = i + 1; j < f.size(); ++j) {
                tmp[f[i]].insert(f[j]);
                tmp[f[j]].insert(f[i]);
            }
    }
    AdjMap adj;
    for (auto& [v, nb] : tmp)
        adj[v] = std::vector<int>(nb.begin(), nb.end());
    return adj;
}

inline bool adj_has(const AdjMap& adj, int u, int w)
{
    const auto& nb = adj.at(u);
    return std::binary_search(nb.begin(), nb.end(), w);
}

inline Debarycentrized debarycentrize_impl(const std::vector<Facet>& facets,
                                           const AdjMap& adj,
                                           const std::map<int, int>& labels)
{
    // every facet must carry labels 0..t with no gaps
    for (const auto& f : facets) {
        std::set<int> ls;
        for (int v : f) {
            auto it = labels.find(v);
            if (it == labels.end())
                throw InconsistentLabels("unlabeled vertex");
            if (!ls.insert(it->second).second)
                throw InconsistentLabels("label repeated in a facet");
        }
        for (int t = 0; t < static_cast<int>(f.size()); ++t)
            if (!ls.count(t))
                throw InconsistentLabels("facet labels are not 0..t");
    }
    // vertex set of the K-face each b-vertex refines
    std::map<int, Facet> face_of;
    for (auto& [v, nb] : adj) {
        int lv = labels.at(v);
        Facet down;
        if (lv == 0)
            down.push_back(v);
        else
            for (int w : nb)
                if (labels.at(w) == 0)
                    down.push_back(w);
        if (static_cast<int>(down.size()) != lv + 1)
            throw InconsistentLabels(
                "a label-" + std::to_string(lv) + " vertex has " +
                std::to_string(down.size()) + " label-0 vertices below");
        std::sort(down.begin(), down.end());
        face_of[v] = std::move(down);
    }
    // rebuild the flags and compare with the input facets
    std::set<Facet> target(facets.begin(), facets.end());
    std::set<Facet> rebuilt;
    size_t budget = target.size() * 16 + 64;
    std::vector<int> chain;
    std::function<void(int)> extend = [&](int top) {
        if (rebuilt.size() > target.size())
            throw ValidationFailed("too many flags");
        if (--budget == 0)
            throw ValidationFailed("flag enumeration exceeded its budget");
        int next_label = labels.at(top) + 1;
        bool extended = false;
        for (int z : adj.at(top)) {
            if (labels.at(z) != next_label)
                continue;
            bool all_adj = true;
            for (int u : chain)
                if (u != top && !adj_has(adj, z, u))
                    all_adj = false;
            if (!all_adj)
                continue;
            extended = true;
            chain.push_back(z);
            extend(z);
            chain.pop_back();
        }
        if (!extended) {
            Facet flag = chain;
            std::sort(flag.begin(), flag.end());
            rebuilt.insert(std::move(flag));
        }
    };
    for (auto& [v, nb] : adj)
        if (labels.at(v) == 0) {
            chain.assign(1, v);
            extend(v);
        }
    if (rebuilt != target)
        throw ValidationFailed("flags do not reproduce the subdivision");
    // facets of K: faces of locally maximal vertices
    std::vector<Facet> kfacets;
    for (auto& [v, nb] : adj) {
        bool maximal = true;
        for (int w : nb)
            if (labels.at(w) > labels.at(v))
                maximal = false;
        if (maximal)
            kfacets.push_back(face_of.at(v));
    }
    Debarycentrized out;
    out.complex = Complex::from_facets(std::move(kfacets));
    out.face_of_vertex = std::move(face_of);
    return out;
}

}  // namespace detail

/**
 * Inverts a barycentric subdivision given the dimension label of every
 * vertex: faces of K are the vertices of b, containment is read off
 * edges plus labels, and the result is validated by re-subdividing and
 * comparing facet sets exactly.
 */
inline Debarycentrized debarycentrize(const Complex& b,
                                      const std::map<int, int>& labels)
{
    auto adj = detail::skeleton_adjacency(b.facets);
    return detail::debarycentrize_impl(b.facets, adj, labels);
}

namespace detail {

/// Reverse-stellation state sized for large encoded complexes.
struct Peeler {
    int d;
    std::vector<Facet> facets;
    std::vector<char> alive;
    std::vector<std::vector<int>> vertex_facets;
    std::vector<int> star_count;
    std::vector<int> uf_parent;
    std::vector<long> uf_count;

    explicit Peeler(const Complex& y, int d_) : d(d_)
    {
        facets = y.facets;
        alive.assign(facets.size(), 1);
        int max_id = y.max_vertex_id();
        vertex_facets.resize(max_id + 1);
        star_count.assign(max_id + 1, 0);
        uf_parent.resize(facets.size());
        uf_count.assign(facets.size(), 1);
        for (size_t i = 0; i < facets.size(); ++i) {
            uf_parent[i] = static_cast<int>(i);
            for (int v : facets[i]) {
                vertex_facets[v].push_back(static_cast<int>(i));
                ++star_count[v];
            }
        }
    }

    int find(int x)
    {
        while (uf_parent[x] != x)
            x = uf_parent[x] = uf_parent[uf_parent[x]];
        return x;
    }

    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        uf_parent[a] = b;
        uf_count[b] += uf_count[a];
    }

    std::vector<int> alive_star(int v)
    {
        auto& list = vertex_facets[v];
        std::vector<int> out;
        size_t w = 0;
        for (size_t i = 0; i < list.size(); ++i)
            if (alive[list[i]]) {
                list[w++] = list[i];
                out.push_back(list[i]);
            }
        list.resize(w);
        return out;
    }

    // attempt one reverse stellation at v; true on success
    bool try_reverse(int v)
    {
        if (v >= static_cast<int>(star_count.size()) || star_count[v] != d + 1)
            return false;
        auto star_ids = alive_star(v);
        if (static_cast<int>(star_ids.size()) != d + 1)
            return false;
        std::set<int> nbset;
        for (int id : star_ids) {
            if (static_cast<int>(facets[id].size()) != d + 1)
                return false;
            for (int w : facets[id])
                if (w != v)
                    nbset.insert(w);
        }
        if (static_cast<int>(nbset.size()) != d + 1)
            return false;
        Facet nb(nbset.begin(), nbset.end());
        std::set<Facet> expected;
        for (int skip : nb) {
            Facet f;
            for (int x : nb)
                if (x != skip)
                    f.push_back(x);
            f.push_back(v);
            expected.insert(sorted_facet(f));
        }
        std::set<Facet> got;
        for (int id : star_ids)
            got.insert(facets[id]);
        if (got != expected)
            return false;
        // refuse if the replacement facet already exists
        int probe = nb[0];
        for (int w : nb)
            if (star_count[w] < star_count[probe])
                probe = w;
        for (int id : alive_star(probe))
            if (facets[id] == nb)
                return false;
        int fresh = static_cast<int>(facets.size());
        for (int id : star_ids) {
            alive[id] = 0;
            for (int w : facets[id])
                --star_count[w];
        }
        facets.push_back(nb);
        alive.push_back(1);
        uf_parent.push_back(fresh);
        uf_count.push_back(0);
        for (int id : star_ids)
            unite(id, fresh);
        for (int w : nb) {
            vertex_facets[w].push_back(fresh);
            ++star_count[w];
        }
        return true;
    }

    void run()
    {
        std::vector<int> queue;
        for (size_t v = 0; v < star_count.size(); ++v)
            if (star_count[v] == d + 1)
                queue.push_back(static_cast<int>(v));
        while (true) {
            bool progress = false;
            while (!queue.empty()) {
                int v = queue.back();
                queue.pop_back();
                if (!try_reverse(v))
                    continue;
                progress = true;
                star_count[v] = 0;
                const Facet& nb = facets.back();
                for (int w : nb)
                    if (star_count[w] == d + 1)
                        queue.push_back(w);
            }
            if (!progress)
                break;
            // one full rescan in case a refusal unblocked later
            for (size_t v = 0; v < star_count.size(); ++v)
                if (star_count[v] == d + 1)
                    queue.push_back(static_cast<int>(v));
        }
    }
};

}  // namespace detail

/**
 * Left inverse of encode: greedy reverse stellation recovers the second
 * barycentric subdivision with, per facet, the absorbed-facet count that
 * identifies the palette member; the dimension classes then feed two
 * de-barycentrizations. The result is the colored complex up to
 * isomorphism, with vertices renumbered 0..n-1.
 */
inline ColoredComplex decode(const Complex& y, int d, int r)
{
    if (d < 2 || r < 1)
        throw ComplexError("decode needs d >= 2 and r >= 1");
    detail::Peeler peeler(y, d);
    peeler.run();

    std::vector<Facet> bfacets;
    std::map<Facet, std::pair<int, int>> pair_of;  // facet -> (color, dim)
    for (size_t i = 0; i < peeler.facets.size(); ++i) {
        if (!peeler.alive[i])
            continue;
        long cnt = peeler.uf_count[peeler.find(static_cast<int>(i))];
        if ((cnt - 1) % d != 0)
            throw UnknownPaletteSize();
        long member = (cnt - 1) / d;
        if (member < 1 || member > static_cast<long>(r) * (d + 1))
            throw UnknownPaletteSize();
        int color = static_cast<int>((member - 1) / (d + 1)) + 1;
        int dim_sigma = static_cast<int>((member - 1) % (d + 1));
        bfacets.push_back(peeler.facets[i]);
        pair_of[peeler.facets[i]] = {color, dim_sigma};
    }
    Complex bb = Complex::from_facets(bfacets);
    if (bb.empty() || !bb.is_pure() || bb.dim() != d)
        throw StuckCollapse();

    auto classes = dim_classes(bb);

    // exhaustive rank-assignment search; an assignment must survive both
    // de-subdivisions and the label/color consistency checks
    auto adj = detail::skeleton_adjacency(bb.facets);
    std::vector<int> ranks(d + 1);
    std::iota(ranks.begin(), ranks.end(), 0);
    std::optional<Complex> result_delta;
    std::map<Facet, int> colors;
    do {
        std::map<int, int> blabels;
        for (int c = 0; c <= d; ++c)
            for (int v : classes[c])
                blabels[v] = ranks[c];
        try {
            auto k_result = detail::debarycentrize_impl(bb.facets, adj, blabels);
            // flag anchors carry each subdivision vertex's base dimension
            std::map<int, int> dim_label;
            for (const auto& tau : bb.facets) {
                int rank0 = -1;
                for (int v : tau)
                    if (blabels.at(v) == 0)
                        rank0 = v;
                int ds = pair_of.at(tau).second;
                auto it = dim_label.find(rank0);
                if (it == dim_label.end())
                    dim_label[rank0] = ds;
                else if (it->second != ds)
                    throw InconsistentLabels("conflicting dimension labels");
            }
            const Complex& k = k_result.complex;
            for (int v : k.vertices())
                if (!dim_label.count(v))
                    throw InconsistentLabels(
                        "a subdivision vertex has no dimension label");
            auto delta_result = debarycentrize(k, dim_label);
            // colors transfer through the facet each flag refines
            std::map<Facet, int> trial_colors;
            for (const auto& tau : bb.facets) {
                int rankd = -1;
                for (int v : tau)
                    if (blabels.at(v) == d)
                        rankd = v;
                const Facet& kfacet = k_result.face_of_vertex.at(rankd);
                int w = -1;
                for (int u : kfacet)
                    if (dim_label.at(u) == d) {
                        if (w != -1)
                            throw InconsistentLabels(
                                "two top-dimensional barycenters");
                        w = u;
                    }
                if (w == -1)
                    throw InconsistentLabels("no top-dimensional barycenter");
                const Facet& dfacet = delta_result.face_of_vertex.at(w);
                int color = pair_of.at(tau).first;
                auto it = trial_colors.find(dfacet);
                if (it == trial_colors.end())
                    trial_colors[dfacet] = color;
                else if (it->second != color)
                    throw InconsistentLabels("conflicting facet colors");
            }
            for (const auto& f : delta_result.complex.facets)
                if (!trial_colors.count(f))
                    throw InconsistentLabels("an output facet received no color");
            result_delta = delta_result.complex;
            colors = std::move(trial_colors);
            break;
        } catch (const ComplexError&) {
        }
    } while (std::next_permutation(ranks.begin(), ranks.end()));
    if (!result_delta)
        throw InconsistentLabels("no rank assignment validates");
    const Complex& delta = *result_delta;

    // renumber to a clean id range
    auto verts = delta.vertices();
    std::map<int, int> renum;
    for (size_t i = 0; i < verts.size(); ++i)
        renum[verts[i]] = static_cast<int>(i);
    std::vector<Facet> out_facets;
    std::map<Facet, int> out_colors;
    for (const auto& f : delta.facets) {
        Facet h;
        for (int v : f)
            h.push_back(renum[v]);
        std::sort(h.begin(), h.end());
        out_colors[h] = colors.at(f);
        out_facets.push_back(std::move(h));
    }
    ColoredComplex out;
    out.complex = Complex::from_facets(std::move(out_facets));
    out.colors = std::move(out_colors);
    return out;
}

}  // namespace pltop
