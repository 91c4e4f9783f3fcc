/**
 * Validated gluing data for the 0/1/2-handle structure over a 2-complex:
 * slot assignments of edges around vertices, track assignments of
 * triangles along edges, corner paths for each triangle at each of its
 * vertices, the handle incidence graph, and the decreasing-index
 * collapse schedule.
 */
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pltop/complex.hpp"
#include "pltop/graph.hpp"

namespace pltop {

struct StarTooBig : ComplexError {
    explicit StarTooBig(int v)
        : ComplexError("vertex " + std::to_string(v) +
                       " has too many faces in its star") {}
};

struct HandlePlan {
    int k = 0;  // slot capacity, made even
    std::map<std::pair<int, int>, std::pair<int, int>> edge_orient;
    std::map<std::pair<int, std::pair<int, int>>, int> slot;  // (v, edge) -> i
    std::map<std::pair<std::pair<int, int>, Facet>, int> tri_order;  // (edge, tri) -> j
    // (triangle, vertex) -> unordered pair of (slot, track) coordinates
    std::map<std::pair<Facet, int>,
             std::pair<std::pair<int, int>, std::pair<int, int>>>
        path_choice;
    std::map<std::pair<std::pair<int, int>, int>, bool> orient_flag;  // (edge, end)
};

namespace detail {

inline std::vector<std::pair<int, int>> edges_of(const Complex& x)
{
    std::set<std::pair<int, int>> es;
    for (const auto& f : x.all_faces())
        if (f.size() == 2)
            es.insert({f[0], f[1]});
    return {es.begin(), es.end()};
}

inline std::vector<Facet> triangles_of(const Complex& x)
{
    std::vector<Facet> ts;
    for (const auto& f : x.all_faces())
        if (f.size() == 3)
            ts.push_back(f);
    return ts;
}

}  // namespace detail

/**
 * Deterministic plan: edges oriented low-to-high, slots assigned in
 * sorted edge order around each vertex, tracks in sorted triangle order
 * along each edge. Requires every vertex star to hold at most k faces
 * (the vertex itself included).
 */
inline HandlePlan build_plan(const Complex& x, int k)
{
    if (x.dim() > 2)
        throw ComplexError("handle plans need a complex of dimension <= 2");
    auto faces = x.all_faces();
    std::map<int, int> star_size;
    for (const auto& f : faces)
        for (int v : f)
            ++star_size[v];
    for (auto& [v, s] : star_size)
        if (s > k)
            throw StarTooBig(v);
    HandlePlan plan;
    plan.k = (k % 2 == 0) ? k : k + 1;
    auto edges = detail::edges_of(x);
    auto tris = detail::triangles_of(x);

    for (auto& e : edges)
        plan.edge_orient[e] = e;  // (min, max)

    std::map<int, std::vector<std::pair<int, int>>> edges_at;
    for (auto& e : edges) {
        edges_at[e.first].push_back(e);
        edges_at[e.second].push_back(e);
    }
    for (auto& [v, list] : edges_at)
        for (size_t i = 0; i < list.size(); ++i) {
            plan.slot[{v, list[i]}] = static_cast<int>(i) + 1;
            plan.orient_flag[{list[i], v}] = (plan.edge_orient[list[i]].second == v);
        }

    std::map<std::pair<int, int>, std::vector<Facet>> tris_at;
    for (auto& t : tris) {
        tris_at[{t[0], t[1]}].push_back(t);
        tris_at[{t[0], t[2]}].push_back(t);
        tris_at[{t[1], t[2]}].push_back(t);
    }
    for (auto& [e, list] : tris_at)
        for (size_t j = 0; j < list.size(); ++j)
            plan.tri_order[{e, list[j]}] = static_cast<int>(j) + 1;

    for (auto& t : tris)
        for (int v : t) {
            std::vector<std::pair<int, int>> at_v;  // the two edges of t at v
            for (int u : t)
                if (u != v)
                    at_v.push_back(std::minmax(u, v));
            std::sort(at_v.begin(), at_v.end());
            std::pair<int, int> c1{plan.slot.at({v, at_v[0]}),
                                   plan.tri_order.at({at_v[0], t})};
            std::pair<int, int> c2{plan.slot.at({v, at_v[1]}),
                                   plan.tri_order.at({at_v[1], t})};
            plan.path_choice[{t, v}] = std::minmax(c1, c2);
        }
    return plan;
}

inline void validate_plan(const HandlePlan& plan, const Complex& x)
{
    // slots injective per vertex
    std::map<int, std::set<int>> used_slots;
    for (auto& [key, i] : plan.slot) {
        if (i < 1 || i > plan.k)
            throw ComplexError("slot out of range");
        if (!used_slots[key.first].insert(i).second)
            throw ComplexError("two edges share a slot at a vertex");
    }
    // tracks injective per edge
    std::map<std::pair<int, int>, std::set<int>> used_tracks;
    for (auto& [key, j] : plan.tri_order) {
        if (j < 1 || j > plan.k)
            throw ComplexError("track out of range");
        if (!used_tracks[key.first].insert(j).second)
            throw ComplexError("two triangles share a track on an edge");
    }
    // path endpoints touch distinct slots and match the stored coordinates
    for (auto& [key, coords] : plan.path_choice) {
        const Facet& t = key.first;
        int v = key.second;
        std::set<std::pair<int, int>> expected;
        for (int u : t)
            if (u != v) {
                auto e = std::minmax(u, v);
                expected.insert({plan.slot.at({v, e}), plan.tri_order.at({e, t})});
            }
        if (expected !=
            std::set<std::pair<int, int>>{coords.first, coords.second})
            throw ComplexError("path coordinates disagree with slots/tracks");
        if (coords.first.first == coords.second.first)
            throw ComplexError("path endpoints share a slot");
    }
    (void)x;
}

struct HandleIncidence {
    std::vector<Facet> handles;  // all faces, by (index, id)
    Graph graph;
};

/// One node per face of x; an edge whenever the faces intersect.
inline HandleIncidence handle_incidence(const HandlePlan& plan, const Complex& x)
{
    validate_plan(plan, x);
    HandleIncidence out;
    out.handles = x.all_faces();
    out.graph = Graph(static_cast<int>(out.handles.size()));
    for (size_t i = 0; i < out.handles.size(); ++i)
        for (size_t j = i + 1; j < out.handles.size(); ++j) {
            Facet common;
            std::set_intersection(out.handles[i].begin(), out.handles[i].end(),
                                  out.handles[j].begin(), out.handles[j].end(),
                                  std::back_inserter(common));
            if (!common.empty())
                out.graph.add_edge(static_cast<int>(i), static_cast<int>(j));
        }
    return out;
}

struct CollapseStep {
    int index = 0;   // handle index: dim of the carrying face
    Facet face;
    std::vector<Facet> touches;  // lower-index handles the attachment meets
};

/**
 * Handles ordered by decreasing index; every handle lists the proper
 * faces its attachment region touches, all of which appear later in the
 * schedule.
 */
inline std::vector<CollapseStep> collapse_schedule(const HandlePlan& plan,
                                                   const Complex& x)
{
    validate_plan(plan, x);
    auto faces = x.all_faces();
    std::vector<CollapseStep> out;
    for (int index = 2; index >= 0; --index)
        for (const auto& f : faces) {
            if (static_cast<int>(f.size()) != index + 1)
                continue;
            CollapseStep step;
            step.index = index;
            step.face = f;
            for (uint32_t mask = 1; mask + 1 < (1u << f.size()); ++mask) {
                Facet sub;
                for (size_t i = 0; i < f.size(); ++i)
                    if (mask & (1u << i))
                        sub.push_back(f[i]);
                step.touches.push_back(std::move(sub));
            }
            out.push_back(std::move(step));
        }
    return out;
}

/// Every referenced handle must appear strictly later than its referrer.
inline bool schedule_is_decreasing(const std::vector<CollapseStep>& schedule)
{
    std::map<Facet, size_t> position;
    for (size_t i = 0; i < schedule.size(); ++i)
        position[schedule[i].face] = i;
    for (size_t i = 0; i < schedule.size(); ++i)
        for (const auto& t : schedule[i].touches) {
            auto it = position.find(t);
            if (it == position.end() || it->second <= i)
                return false;
        }
    return true;
}

}  // namespace pltop
