#include "catch_amalgamated.hpp"

#include <random>

#include "pltop/colorcodec.hpp"
#include "pltop/isomorphism.hpp"
#include "support/fixtures.hpp"

using namespace pltop;

namespace {

ColoredComplex constant_coloring(const Complex& c, int color)
{
    ColoredComplex out;
    out.complex = c;
    for (const auto& f : c.facets)
        out.colors[f] = color;
    return out;
}

ColoredComplex random_coloring(const Complex& c, int r, std::mt19937_64& rng)
{
    ColoredComplex out;
    out.complex = c;
    for (const auto& f : c.facets)
        out.colors[f] = 1 + static_cast<int>(rng() % r);
    return out;
}

}  // namespace

TEST_CASE("palette members")
{
    auto p2 = palette(2, 3);
    CHECK(p2.members[0].facet_count() == 3);
    CHECK(p2.members[1].facet_count() == 5);
    CHECK(p2.members[2].facet_count() == 7);

    auto p3 = palette(3, 4);
    CHECK(p3.members[3].facet_count() == 13);

    // each member is a disk with boundary the simplex boundary on 0..d
    for (int d : {2, 3}) {
        auto pal = palette(d, 2 * (d + 1));
        std::set<int> counts;
        for (const auto& m : pal.members) {
            counts.insert(m.facet_count());
            // boundary ridges: those in exactly one facet
            std::map<Facet, int> ridge_use;
            for (const auto& f : m.facets)
                for (size_t i = 0; i < f.size(); ++i) {
                    Facet r;
                    for (size_t j = 0; j < f.size(); ++j)
                        if (j != i)
                            r.push_back(f[j]);
                    ++ridge_use[r];
                }
            std::set<Facet> bdry;
            for (auto& [r, cnt] : ridge_use)
                if (cnt == 1)
                    bdry.insert(r);
            auto expected = boundary_of_simplex(d);
            CHECK(bdry ==
                  std::set<Facet>(expected.facets.begin(), expected.facets.end()));
            CHECK(betti(m, 2).betti[0] == 1);
        }
        // distinct facet counts identify members
        CHECK(counts.size() == pal.members.size());
    }
}

TEST_CASE("dim classes of barycentric subdivisions")
{
    auto [b1, p1] = barycentric(simplex(2));
    auto cls1 = dim_classes(b1);
    std::multiset<size_t> sizes1;
    for (auto& c : cls1)
        sizes1.insert(c.size());
    CHECK(sizes1 == std::multiset<size_t>{3, 3, 1});

    auto [b2, p2] = barycentric(boundary_of_simplex(3));
    auto cls2 = dim_classes(b2);
    std::multiset<size_t> sizes2;
    for (auto& c : cls2)
        sizes2.insert(c.size());
    CHECK(sizes2 == std::multiset<size_t>{4, 6, 4});

    // K4 as a 1-complex: vertices lie in three edges, propagation fails
    CHECK_THROWS_AS(dim_classes(Complex::from_facets(
                        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})),
                    PropagationConflict);
}

TEST_CASE("debarycentrize recovers the base complex")
{
    for (const Complex& base : {simplex(2), boundary_of_simplex(3)}) {
        auto [b, prov] = barycentric(base);
        std::map<int, int> labels;
        for (auto& [v, face] : prov.vertex_origin)
            labels[v] = static_cast<int>(face.size()) - 1;
        auto result = debarycentrize(b, labels);
        // label-0 vertices are in bijection with base vertices
        std::vector<Facet> mapped;
        for (const auto& f : result.complex.facets) {
            Facet h;
            for (int v : f)
                h.push_back(prov.vertex_origin.at(v)[0]);
            mapped.push_back(sorted_facet(h));
        }
        CHECK(Complex::from_facets(mapped) == base);
    }

    // the simplex boundary is self-dual: reversing labels on b of it is the
    // dual dimension function and validates, recovering an isomorphic complex
    auto [b, prov] = barycentric(boundary_of_simplex(3));
    std::map<int, int> reversed;
    for (auto& [v, face] : prov.vertex_origin)
        reversed[v] = 2 - (static_cast<int>(face.size()) - 1);
    auto dual = debarycentrize(b, reversed);
    CHECK(isomorphic(dual.complex, boundary_of_simplex(3)));

    // once some vertex has degree > d+1 the reversal is rejected
    std::mt19937_64 rng(101);
    auto stellated = fixtures::random_stellated_sphere(2, 10, rng);
    auto [bs, prov_s] = barycentric(stellated);
    std::map<int, int> reversed_s;
    for (auto& [v, face] : prov_s.vertex_origin)
        reversed_s[v] = 2 - (static_cast<int>(face.size()) - 1);
    CHECK_THROWS_AS(debarycentrize(bs, reversed_s), InconsistentLabels);
}

TEST_CASE("debarycentrize round trip on random complexes")
{
    std::mt19937_64 rng(71);
    for (int it = 0; it < 10; ++it) {
        auto base = it % 2 == 0 ? fixtures::random_pure_complex(2, 8, 9, rng)
                                : fixtures::random_complex(3, 10, 9, rng);
        auto [b, prov] = barycentric(base);
        std::map<int, int> labels;
        for (auto& [v, face] : prov.vertex_origin)
            labels[v] = static_cast<int>(face.size()) - 1;
        auto result = debarycentrize(b, labels);
        std::vector<Facet> mapped;
        for (const auto& f : result.complex.facets) {
            Facet h;
            for (int v : f)
                h.push_back(prov.vertex_origin.at(v)[0]);
            mapped.push_back(sorted_facet(h));
        }
        CHECK(Complex::from_facets(mapped) == base);
    }
}

TEST_CASE("every subdivision vertex has degree at least d+2")
{
    std::mt19937_64 rng(73);
    std::vector<Complex> manifolds{fixtures::rp2_6(), fixtures::torus_7(),
                                   fixtures::random_stellated_sphere(2, 24, rng),
                                   fixtures::random_stellated_sphere(3, 21, rng)};
    for (const auto& m : manifolds) {
        int d = m.dim();
        auto [b, prov] = barycentric(m);
        for (int v : b.vertices())
            CHECK(static_cast<int>(vertex_neighbors(b, v).size()) >= d + 2);
    }
}

TEST_CASE("encode facet bound and round trip on the simplex boundary sphere")
{
    auto sphere = boundary_of_simplex(3);  // d = 2
    auto colored = constant_coloring(sphere, 1);
    auto enc = encode(colored, 1);
    // 144 flags, each replaced by a member with 3..7 facets
    CHECK(enc.facet_count() >= 144 * 3);
    CHECK(enc.facet_count() <= 144 * 7);

    auto dec = decode(enc, 2, 1);
    CHECK(isomorphic_colored(dec.complex, dec.colors, colored.complex,
                             colored.colors));
}

TEST_CASE("the blow-up constant for d=2, r=3")
{
    int d = 2, r = 3;
    long m = 36 * (1 + r * (d + 1) * d);
    CHECK(m == 684);
}

TEST_CASE("encode rejects bad inputs")
{
    auto sphere = boundary_of_simplex(3);
    ColoredComplex missing;
    missing.complex = sphere;
    // one facet uncolored
    for (size_t i = 0; i + 1 < sphere.facets.size(); ++i)
        missing.colors[sphere.facets[i]] = 1;
    CHECK_THROWS_AS(encode(missing, 1), ComplexError);

    auto over = constant_coloring(sphere, 5);
    CHECK_THROWS_AS(encode(over, 3), TooManyColors);

    auto open_disk = constant_coloring(simplex(2), 1);
    CHECK_THROWS_AS(encode(open_disk, 1), NotManifoldLike);
}

TEST_CASE("decode rejects complexes outside the image")
{
    CHECK_THROWS_AS(decode(boundary_of_simplex(3), 2, 3), UnknownPaletteSize);
}

TEST_CASE("round trips on the projective plane with random colorings")
{
    std::mt19937_64 rng(79);
    auto rp2 = fixtures::rp2_6();
    for (int it = 0; it < 2; ++it) {
        auto colored = random_coloring(rp2, 3, rng);
        auto enc = encode(colored, 3);
        auto dec = decode(enc, 2, 3);
        CHECK(isomorphic_colored(dec.complex, dec.colors, colored.complex,
                                 colored.colors));
    }
}

TEST_CASE("round trip in dimension 3")
{
    std::mt19937_64 rng(103);
    auto sphere = stellate_facet(boundary_of_simplex(4), {0, 1, 2, 3});
    auto colored = random_coloring(sphere, 2, rng);
    auto enc = encode(colored, 2);
    auto dec = decode(enc, 3, 2);
    CHECK(isomorphic_colored(dec.complex, dec.colors, colored.complex,
                             colored.colors));
}

TEST_CASE("encode multiplies facet count and degrees by at most m")
{
    std::mt19937_64 rng(83);
    auto sphere = fixtures::random_stellated_sphere(2, 16, rng);
    int d = 2, r = 2;
    auto colored = random_coloring(sphere, r, rng);
    auto enc = encode(colored, r);
    long m = 36 * (1 + r * (d + 1) * d);
    CHECK(enc.facet_count() <= m * sphere.facet_count());
    int deg_in = 0, deg_out = 0;
    for (int v : sphere.vertices())
        deg_in = std::max(deg_in,
                          static_cast<int>(vertex_neighbors(sphere, v).size()));
    for (int v : enc.vertices())
        deg_out = std::max(deg_out,
                           static_cast<int>(vertex_neighbors(enc, v).size()));
    CHECK(deg_out <= m * deg_in);
}

TEST_CASE("greedy reverse stellation preserves high-degree bases")
{
    // randomized stellation histories always peel back to the base when the
    // base has minimum degree >= d+2; random relabelings change the greedy
    // processing order without changing the outcome
    std::mt19937_64 rng(89);
    for (int it = 0; it < 4; ++it) {
        auto base0 = fixtures::random_stellated_sphere(2, 12, rng);
        auto [base, prov] = barycentric(base0);  // min degree >= d+2
        auto grown = base;
        for (int s = 0; s < 10; ++s)
            grown = stellate_facet(grown, grown.facets[rng() % grown.facets.size()]);
        for (int run = 0; run < 3; ++run) {
            auto verts = grown.vertices();
            auto shuffled = verts;
            std::shuffle(shuffled.begin(), shuffled.end(), rng);
            std::map<int, int> perm;
            for (size_t i = 0; i < verts.size(); ++i)
                perm[verts[i]] = shuffled[i];
            auto relabel = [&](const Complex& c) {
                std::vector<Facet> fs;
                for (const auto& f : c.facets) {
                    Facet h;
                    for (int v : f)
                        h.push_back(perm[v]);
                    fs.push_back(sorted_facet(h));
                }
                return Complex::from_facets(fs);
            };
            detail::Peeler peeler(relabel(grown), 2);
            peeler.run();
            std::vector<Facet> left;
            for (size_t i = 0; i < peeler.facets.size(); ++i)
                if (peeler.alive[i])
                    left.push_back(peeler.facets[i]);
            CHECK(Complex::from_facets(left) == relabel(base));
        }
    }
}

TEST_CASE("exactly one rank assignment validates")
{
    std::mt19937_64 rng(97);
    for (int it = 0; it < 3; ++it) {
        auto base = fixtures::random_stellated_sphere(2, 10 + 2 * it, rng);
        auto [b, prov] = barycentric(base);
        auto classes = dim_classes(b);
        auto adj = detail::skeleton_adjacency(b.facets);
        int good = 0;
        std::vector<int> ranks{0, 1, 2};
        do {
            std::map<int, int> trial;
            for (int c = 0; c <= 2; ++c)
                for (int v : classes[c])
                    trial[v] = ranks[c];
            try {
                detail::debarycentrize_impl(b.facets, adj, trial);
                ++good;
            } catch (const ComplexError&) {
            }
        } while (std::next_permutation(ranks.begin(), ranks.end()));
        CHECK(good == 1);
    }
}
