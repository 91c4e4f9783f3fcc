#include "catch_amalgamated.hpp"

#include <random>

#include "pltop/diskfill.hpp"
#include "support/fixtures.hpp"

using namespace pltop;

namespace {

// induced subcomplex on the boundary ids must be exactly the cycle
bool boundary_is_induced(const Complex& disk, int m)
{
    for (const auto& f : disk.facets) {
        bool all_boundary = true;
        for (int v : f)
            if (v >= m)
                all_boundary = false;
        if (!all_boundary)
            continue;
        if (f.size() != 2)
            return false;
        int gap = std::abs(f[0] - f[1]);
        if (gap != 1 && gap != m - 1)
            return false;
    }
    // and every cycle edge must be present
    for (int i = 0; i < m; ++i) {
        Facet e = sorted_facet({i, (i + 1) % m});
        if (!disk.has_face(e))
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("zigzag disk small cases")
{
    auto [d3, b3] = zigzag_disk(3);
    CHECK(d3.vertex_count() == 4);
    CHECK(d3.facet_count() == 3);

    auto [d4, b4] = zigzag_disk(4);
    CHECK(d4.vertex_count() == 5);
    CHECK(d4.facet_count() == 4);

    auto [d8, b8] = zigzag_disk(8);
    CHECK(d8.facet_count() == 16);
    CHECK(d8.vertex_count() - 8 == 5);

    CHECK_THROWS_AS(zigzag_disk(2), MTooSmall);
}

TEST_CASE("zigzag disk postconditions for m up to 40")
{
    for (int m = 3; m <= 40; ++m) {
        auto [disk, boundary] = zigzag_disk(m);
        CAPTURE(m);
        CHECK(boundary.length() == m);
        CHECK(boundary_is_induced(disk, m));
        int interior = disk.vertex_count() - m;
        CHECK(interior <= m);
        CHECK(interior >= 1);
        auto [skel, ids] = one_skeleton(disk);
        CHECK(max_degree(skel) <= 6);
        // every interior vertex has a boundary neighbor
        auto adj = adjacency(skel);
        for (int v : disk.vertices())
            if (v >= m) {
                bool touches = false;
                for (int w : adj[ids[v]])
                    for (auto& [orig, sid] : ids)
                        if (sid == w && orig < m)
                            touches = true;
                CHECK(touches);
            }
        CHECK(betti(disk, 2).betti == std::vector<long>{1, 0, 0});
    }
}

TEST_CASE("fill_cycles on K4 facial triangles")
{
    auto k4 = complete_graph(4);
    std::vector<Cycle> tris{{{0, 1, 2}}, {{0, 1, 3}}, {{0, 2, 3}}};
    DiskFillParams params;
    params.p = 2;
    params.deg_max = 3;
    params.k = 2;
    auto filled = fill_cycles(k4, tris, params);
    CHECK(filled.threshold == 3 * (1 + 6 * 2));
    CHECK(betti(filled.complex, 2).betti == std::vector<long>{1, 0, 0});
    auto rec = recover_graph(filled.complex, filled.threshold);
    CHECK(rec.graph == k4);
    std::vector<int> expected_ids{0, 1, 2, 3};
    CHECK(rec.vertex_ids == expected_ids);

    std::vector<Cycle> two{{{0, 1, 2}}, {{0, 1, 3}}};
    CHECK_THROWS_AS(fill_cycles(k4, two, params), NotSpanning);
}

TEST_CASE("fill_cycles on a tree")
{
    auto tree = Graph::make(4, {{0, 1}, {1, 2}, {1, 3}});
    DiskFillParams params;
    params.p = 2;
    params.deg_max = 3;
    params.k = 0;
    auto filled = fill_cycles(tree, {}, params);
    CHECK(betti(filled.complex, 2).betti == std::vector<long>{1, 0, 0});
    CHECK(recover_graph(filled.complex, filled.threshold).graph == tree);
}

TEST_CASE("fill_cycles edge overuse")
{
    auto k4 = complete_graph(4);
    std::vector<Cycle> reps{{{0, 1, 2}}, {{0, 1, 2}}, {{0, 1, 3}}};
    DiskFillParams params;
    params.p = 2;
    params.deg_max = 3;
    params.k = 1;
    CHECK_THROWS_AS(fill_cycles(k4, reps, params), EdgeOveruse);
}

TEST_CASE("recover_graph threshold mismatch")
{
    auto [disk, boundary] = zigzag_disk(8);
    CHECK_THROWS_AS(recover_graph(disk, 10), EmptyResult);
}

TEST_CASE("fill_cycles round trip on C5")
{
    auto c5 = cycle_graph(5);
    DiskFillParams params;
    params.p = 2;
    params.deg_max = 2;
    params.k = 1;
    auto filled = fill_cycles(c5, {{{0, 1, 2, 3, 4}}}, params);
    CHECK(betti(filled.complex, 2).betti == std::vector<long>{1, 0, 0});
    CHECK(recover_graph(filled.complex, filled.threshold).graph == c5);
}

TEST_CASE("degree bound on the disk part and flag adjacency")
{
    std::mt19937_64 rng(61);
    for (int it = 0; it < 6; ++it) {
        auto g = fixtures::random_cubic_graph(10 + 2 * (it % 4), rng);
        auto basis = fundamental_cycle_basis(g);
        std::map<std::pair<int, int>, int> mult;
        for (auto& c : basis)
            for (int i = 0; i < c.length(); ++i)
                ++mult[std::minmax(c.vertices[i], c.vertices[(i + 1) % c.length()])];
        int k = 0;
        for (auto& [e, cnt] : mult)
            k = std::max(k, cnt);
        DiskFillParams params;
        params.p = 2;
        params.deg_max = 3;
        params.k = k;
        auto filled = fill_cycles(g, basis, params);

        // the disk part (graph + glued disks, flags excluded) obeys the
        // deg_max * (1 + 6k) degree bound
        std::set<int> disk_verts;
        for (int v = 0; v < g.n; ++v)
            disk_verts.insert(v);
        for (auto& [j, interior] : filled.disk_map)
            for (int w : interior)
                disk_verts.insert(w);
        std::vector<Facet> disk_facets;
        for (const auto& f : filled.complex.facets) {
            bool in_disk = true;
            for (int v : f)
                if (!disk_verts.count(v))
                    in_disk = false;
            if (in_disk)
                disk_facets.push_back(f);
        }
        auto [skel, ids] = one_skeleton(Complex::from_facets(disk_facets));
        CHECK(max_degree(skel) <= params.deg_max * (1 + 6 * params.k));

        // every vertex outside the graph has a graph neighbor
        auto [full, fids] = one_skeleton(filled.complex);
        auto adj = adjacency(full);
        std::vector<int> back(full.n, -1);
        for (auto& [orig, sid] : fids)
            back[sid] = orig;
        for (auto& [orig, sid] : fids) {
            if (orig < g.n)
                continue;
            bool touches = false;
            for (int w : adj[sid])
                if (back[w] < g.n)
                    touches = true;
            CHECK(touches);
        }
    }
}

TEST_CASE("inclusion relation passes the quasi-isometry check")
{
    // uniformly short inputs: every cycle at most L
    struct Case {
        Graph g;
        std::vector<Cycle> cycles;
        int deg_max, k, L;
    };
    std::vector<Case> cases;
    cases.push_back({complete_graph(4),
                     {{{0, 1, 2}}, {{0, 1, 3}}, {{0, 2, 3}}},
                     3, 2, 3});
    cases.push_back({cycle_graph(5), {{{0, 1, 2, 3, 4}}}, 2, 1, 5});
    {
        // cube graph with its six 4-cycle faces
        Graph q3(8);
        for (int u = 0; u < 8; ++u)
            for (int v = u + 1; v < 8; ++v)
                if (__builtin_popcount(u ^ v) == 1)
                    q3.add_edge(u, v);
        std::vector<Cycle> faces{{{0, 1, 3, 2}}, {{4, 5, 7, 6}}, {{0, 1, 5, 4}},
                                 {{2, 3, 7, 6}}, {{0, 2, 6, 4}}, {{1, 3, 7, 5}}};
        cases.push_back({q3, faces, 3, 2, 4});
    }
    for (auto& cs : cases) {
        DiskFillParams params;
        params.p = 2;
        params.deg_max = cs.deg_max;
        params.k = cs.k;
        auto filled = fill_cycles(cs.g, cs.cycles, params);
        auto [skel, ids] = one_skeleton(filled.complex);
        auto rel = inclusion_relation(cs.g, cs.cycles, filled, ids);
        auto rep = qi_check(cs.g, skel, rel);
        CHECK(rep.ok);
        CHECK(rep.M <= cs.L);
        CHECK(rep.map_bound_ok);
    }
}

TEST_CASE("outputs of non-isomorphic graphs stay distinguishable")
{
    // distinct vertex counts make the inputs pairwise non-isomorphic; the
    // decoder recovering each input exactly separates the outputs
    std::mt19937_64 rng(67);
    for (int n = 8; n <= 46; n += 2) {
        auto g = fixtures::random_cubic_graph(n, rng);
        auto basis = fundamental_cycle_basis(g);
        std::map<std::pair<int, int>, int> mult;
        for (auto& c : basis)
            for (int i = 0; i < c.length(); ++i)
                ++mult[std::minmax(c.vertices[i], c.vertices[(i + 1) % c.length()])];
        int k = 0;
        for (auto& [e, cnt] : mult)
            k = std::max(k, cnt);
        DiskFillParams params;
        params.p = 2;
        params.deg_max = 3;
        params.k = k;
        auto filled = fill_cycles(g, basis, params);
        auto rec = recover_graph(filled.complex, filled.threshold);
        CHECK(rec.graph == g);
    }
}
