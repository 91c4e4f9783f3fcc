#include "catch_amalgamated.hpp"

#include <random>

#include "pltop/graphkit.hpp"
#include "support/fixtures.hpp"

using namespace pltop;

namespace {

// independent subset-enumeration oracle for the edge expansion
double naive_cheeger(const Graph& g)
{
    double best = 1e18;
    for (uint32_t mask = 1; mask < (1u << g.n); ++mask) {
        int size = __builtin_popcount(mask);
        if (2 * size > g.n)
            continue;
        int cut = 0;
        for (auto [u, v] : g.edges)
            if (((mask >> u) & 1) != ((mask >> v) & 1))
                ++cut;
        best = std::min(best, static_cast<double>(cut) / size);
    }
    return best;
}

Graph subdivided_k4()
{
    // vertices 0..3, midpoints 4..9 in lexicographic edge order
    Graph g(10);
    int mid = 4;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) {
            g.add_edge(u, mid);
            g.add_edge(v, mid);
            ++mid;
        }
    return g;
}

}  // namespace

TEST_CASE("cheeger exact on closed forms")
{
    CHECK(cheeger_exact(complete_graph(4)) == Rational(2, 1));
    CHECK(cheeger_exact(cycle_graph(4)) == Rational(1, 1));
    CHECK(cheeger_exact(Graph::make(2, {{0, 1}})) == Rational(1, 1));

    CHECK_THROWS_AS(cheeger_exact(complete_graph(25)), TooLarge);
    CHECK_THROWS_AS(cheeger_exact(Graph::make(4, {{0, 1}, {2, 3}})), Disconnected);
}

TEST_CASE("cheeger exact agrees with the subset oracle")
{
    std::mt19937_64 rng(31);
    for (int it = 0; it < 15; ++it) {
        int n = 4 + static_cast<int>(rng() % 7);
        Graph g(n);
        do {
            g = Graph(n);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng() % 3 == 0)
                        g.add_edge(u, v);
        } while (!is_connected(g));
        CHECK_THAT(cheeger_exact(g).value(),
                   Catch::Matchers::WithinAbs(naive_cheeger(g), 1e-12));
    }
}

TEST_CASE("lambda2 closed forms")
{
    // complete graph: n/(n-1)
    CHECK_THAT(lambda2(complete_graph(4)), Catch::Matchers::WithinAbs(4.0 / 3, 1e-8));
    // n-cycle: 1 - cos(2 pi / n)
    CHECK_THAT(lambda2(cycle_graph(4)), Catch::Matchers::WithinAbs(1.0, 1e-8));
    CHECK_THAT(lambda2(Graph::make(4, {{0, 1}, {2, 3}})),
               Catch::Matchers::WithinAbs(0.0, 1e-8));
}

TEST_CASE("cheeger sandwich on small connected graphs")
{
    std::mt19937_64 rng(37);
    std::vector<Graph> pool{complete_graph(5), cycle_graph(7),
                            fixtures::random_cubic_graph(10, rng),
                            fixtures::random_cubic_graph(14, rng),
                            fixtures::random_regular_graph(9, 4, rng)};
    for (int it = 0; it < 6; ++it) {
        int n = 5 + static_cast<int>(rng() % 10);
        Graph g(n);
        do {
            g = Graph(n);
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng() % 3 == 0)
                        g.add_edge(u, v);
        } while (!is_connected(g));
        pool.push_back(g);
    }
    for (const auto& g : pool) {
        double l2 = lambda2(g);
        double phi = conductance_exact(g).value();
        CHECK(l2 / 2 <= phi + 1e-9);
        CHECK(phi <= std::sqrt(2 * l2) + 1e-6);
        // the vertex-normalized expansion still dominates the lower bound
        CHECK(l2 / 2 <= cheeger_exact(g).value() + 1e-9);
    }
}

TEST_CASE("conductance closed forms")
{
    // K4: best cut is a balanced split, 4 edges over volume 6
    CHECK(conductance_exact(complete_graph(4)) == Rational(2, 3));
    // C4: opposite pair, 2 edges over volume 4
    CHECK(conductance_exact(cycle_graph(4)) == Rational(1, 2));
}

TEST_CASE("check_short on K4 triangle collections")
{
    auto k4 = complete_graph(4);
    // the four facial triangles; any three span the cycle space
    std::vector<Cycle> tris{{{0, 1, 2}}, {{0, 1, 3}}, {{0, 2, 3}}, {{1, 2, 3}}};
    for (int omit = 0; omit < 4; ++omit) {
        ShortCertificate cert;
        cert.deg_max = 3;
        cert.k = 2;
        cert.L = 3;
        cert.p = 2;
        cert.uniform = true;
        for (int i = 0; i < 4; ++i)
            if (i != omit)
                cert.cycles.push_back(tris[i]);
        auto rep = check_short(k4, cert);
        CHECK(rep.ok);
        CHECK(rep.rank == 3);
        CHECK(rep.expected_rank == 3);
    }

    ShortCertificate two;
    two.deg_max = 3;
    two.k = 2;
    two.L = 3;
    two.p = 2;
    two.cycles = {tris[0], tris[1]};
    auto rep2 = check_short(k4, two);
    CHECK_FALSE(rep2.ok);
    CHECK(rep2.rank == 2);
}

TEST_CASE("check_short on a bare cycle")
{
    auto c5 = cycle_graph(5);
    ShortCertificate cert;
    cert.deg_max = 2;
    cert.k = 1;
    cert.L = 5;
    cert.p = 2;
    cert.uniform = true;
    cert.cycles = {{{0, 1, 2, 3, 4}}};
    CHECK(check_short(c5, cert).ok);
}

TEST_CASE("fundamental cycle basis")
{
    // tree: no cycles
    auto path = Graph::make(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(fundamental_cycle_basis(path).empty());

    auto c4 = cycle_graph(4);
    auto basis4 = fundamental_cycle_basis(c4);
    REQUIRE(basis4.size() == 1);
    CHECK(basis4[0].length() == 4);

    auto basis_k4 = fundamental_cycle_basis(complete_graph(4));
    CHECK(basis_k4.size() == 3);

    CHECK_THROWS_AS(fundamental_cycle_basis(Graph::make(4, {{0, 1}, {2, 3}})),
                    Disconnected);
}

TEST_CASE("fundamental bases span the cycle space over every prime")
{
    std::mt19937_64 rng(41);
    for (int p : {2, 3, 5}) {
        for (int it = 0; it < 8; ++it) {
            auto g = fixtures::random_cubic_graph(8 + 2 * (it % 5), rng);
            auto basis = fundamental_cycle_basis(g);
            ShortCertificate cert;
            cert.deg_max = 3;
            cert.k = g.edge_count();  // no multiplicity constraint here
            cert.L = g.n * 2;
            cert.p = p;
            cert.cycles = basis;
            auto rep = check_short(g, cert);
            CHECK(rep.rank == rep.expected_rank);
        }
    }
}

TEST_CASE("average length bound from the edge-multiplicity bound")
{
    // min degree >= 3 and conditions (1)-(2) with bound k force average
    // cycle length <= 2k on these generated instances
    std::mt19937_64 rng(43);
    for (int it = 0; it < 12; ++it) {
        int n = 8 + 2 * static_cast<int>(rng() % 9);
        auto g = (it % 3 == 2) ? fixtures::random_regular_graph(n, 4, rng)
                               : fixtures::random_cubic_graph(n, rng);
        auto basis = fundamental_cycle_basis(g);
        std::map<std::pair<int, int>, int> mult;
        long total = 0;
        for (auto& c : basis) {
            total += c.length();
            for (int i = 0; i < c.length(); ++i)
                ++mult[std::minmax(c.vertices[i],
                                   c.vertices[(i + 1) % c.length()])];
        }
        int k = 0;
        for (auto& [e, m] : mult)
            k = std::max(k, m);
        double avg = static_cast<double>(total) / basis.size();
        CHECK(avg <= 2.0 * k + 1e-9);
    }
}

TEST_CASE("qi_check identity relation")
{
    auto k4 = complete_graph(4);
    QIRelation rel;
    rel.c = 1;
    for (int v = 0; v < 4; ++v)
        rel.pairs.insert({v, v});
    auto rep = qi_check(k4, k4, rel);
    CHECK(rep.ok);
    CHECK(rep.M == 1);
    CHECK(rep.map_bound_ok);
}

TEST_CASE("qi_check on the subdivided K4")
{
    // Independent derivation (exhaustive BFS over the ten-vertex subdivision):
    // condition (2) peaks at adjacent originals related to midpoints of
    // disjoint edges, e.g. 0~1 with y = mid(0,2), y' = mid(1,3) at distance 4;
    // condition (3) peaks at 1. Minimal valid M = 4.
    auto k4 = complete_graph(4);
    auto sub = subdivided_k4();
    QIRelation rel;
    rel.c = 1;
    for (int v = 0; v < 4; ++v)
        rel.pairs.insert({v, v});
    int mid = 4;
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) {
            rel.pairs.insert({u, mid});
            rel.pairs.insert({v, mid});
            ++mid;
        }
    auto rep = qi_check(k4, sub, rel);
    CHECK(rep.ok);
    CHECK(rep.M == 4);
    CHECK(rep.map_bound_ok);

    // relation missing an x-vertex
    QIRelation missing;
    missing.c = 1;
    for (auto& pr : rel.pairs)
        if (pr.first != 2)
            missing.pairs.insert(pr);
    auto rep2 = qi_check(k4, sub, missing);
    CHECK_FALSE(rep2.ok);
    CHECK(rep2.violated_condition == 1);
}

TEST_CASE("four_to_three on K5")
{
    auto [h, gm] = four_to_three(complete_graph(5));
    CHECK(h.n == 20);
    CHECK(h.edge_count() == 30);
    CHECK(is_regular(h, 3));
    CHECK(three_to_four_decode(h) == complete_graph(5));

    CHECK_THROWS_AS(four_to_three(complete_graph(4)), NotFourRegular);
}

TEST_CASE("three_to_four_decode rejects non-images")
{
    CHECK_THROWS_AS(three_to_four_decode(cycle_graph(8)), AmbiguousGadgets);
    CHECK_THROWS_AS(three_to_four_decode(complete_graph(4)), AmbiguousGadgets);
}

TEST_CASE("gadget codec round trip and cycle stretching")
{
    std::mt19937_64 rng(47);
    for (int it = 0; it < 8; ++it) {
        int n = 6 + 2 * static_cast<int>(rng() % 6);
        auto g = fixtures::random_regular_graph(n, 4, rng);
        auto [h, gm] = four_to_three(g);
        CHECK(is_regular(h, 3));
        CHECK(three_to_four_decode(h) == g);
        for (const auto& c : fundamental_cycle_basis(g)) {
            auto img = gadget_image_cycle(g, gm, c);
            CHECK(cycle_in_graph(h, img));
            CHECK(img.length() >= 6);
        }
    }
}

TEST_CASE("pendant color codec")
{
    auto k4 = complete_graph(4);
    auto enc = pendant_color_encode(k4, {1, 2, 3, 4});
    CHECK(enc.n == 14);
    auto [core, colors] = pendant_color_decode(enc);
    CHECK(core == k4);
    CHECK(colors == std::vector<int>{1, 2, 3, 4});

    auto c3 = cycle_graph(3);
    auto enc3 = pendant_color_encode(c3, {1, 1, 1});
    CHECK(enc3.n == 6);

    CHECK_THROWS_AS(pendant_color_decode(complete_graph(4)), NoPendants);
    CHECK_THROWS_AS(pendant_color_encode(Graph::make(3, {{0, 1}, {1, 2}}),
                                         std::vector<int>{1, 1, 1}),
                    DegreeTooLow);
}

TEST_CASE("pendant round trip on random regular graphs")
{
    std::mt19937_64 rng(53);
    for (int it = 0; it < 6; ++it) {
        auto g = fixtures::random_cubic_graph(8 + 2 * (it % 4), rng);
        std::vector<int> colors(g.n);
        for (auto& cv : colors)
            cv = 1 + static_cast<int>(rng() % 5);
        auto enc = pendant_color_encode(g, colors);
        long total = std::accumulate(colors.begin(), colors.end(), 0L);
        CHECK(enc.n == g.n + total);
        auto [core, back] = pendant_color_decode(enc);
        CHECK(core == g);
        CHECK(back == colors);
    }
}
