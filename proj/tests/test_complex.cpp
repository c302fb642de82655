#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <map>

#include "tricert/complex.hpp"

using namespace tricert;

namespace {

Vector vec2(double x, double y) {
    Vector v(2);
    v << x, y;
    return v;
}

// regular hexagonal fan: center vertex 0 at the origin, six rim vertices
GeometricComplex hexagonal_fan() {
    GeometricComplex c(2, 2);
    c.add_vertex(vec2(0, 0));
    for (int i = 0; i < 6; ++i)
        c.add_vertex(vec2(std::cos(i * M_PI / 3), std::sin(i * M_PI / 3)));
    for (int i = 0; i < 6; ++i) {
        VertexId k[3] = {0, VertexId(1 + i), VertexId(1 + (i + 1) % 6)};
        c.add_top_simplex(k);
    }
    c.finalize();
    return c;
}

GeometricComplex single_triangle() {
    GeometricComplex c(2, 2);
    c.add_vertex(vec2(0, 0));
    c.add_vertex(vec2(1, 0));
    c.add_vertex(vec2(0, 1));
    VertexId k[3] = {0, 1, 2};
    c.add_top_simplex(k);
    c.finalize();
    return c;
}

// two triangles sharing exactly one vertex
GeometricComplex bowtie() {
    GeometricComplex c(2, 2);
    c.add_vertex(vec2(0, 0));
    c.add_vertex(vec2(1, 1));
    c.add_vertex(vec2(1, -1));
    c.add_vertex(vec2(-1, 1));
    c.add_vertex(vec2(-1, -1));
    VertexId a[3] = {0, 1, 2}, b[3] = {0, 3, 4};
    c.add_top_simplex(a);
    c.add_top_simplex(b);
    c.finalize();
    return c;
}

// icosahedron surface (closed 2-manifold in R^3)
GeometricComplex icosahedron() {
    GeometricComplex c(2, 3);
    const double phi = (1 + std::sqrt(5.0)) / 2;
    auto add = [&](double x, double y, double z) {
        Vector v(3);
        v << x, y, z;
        c.add_vertex(v / v.norm());
    };
    add(-1, phi, 0); add(1, phi, 0); add(-1, -phi, 0); add(1, -phi, 0);
    add(0, -1, phi); add(0, 1, phi); add(0, -1, -phi); add(0, 1, -phi);
    add(phi, 0, -1); add(phi, 0, 1); add(-phi, 0, -1); add(-phi, 0, 1);
    static const int F[20][3] = {{0, 11, 5},  {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                 {1, 5, 9},   {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                 {3, 9, 4},   {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                 {4, 9, 5},   {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (auto& f : F) {
        VertexId k[3] = {VertexId(f[0]), VertexId(f[1]), VertexId(f[2])};
        c.add_top_simplex(k);
    }
    c.finalize();
    // outward orientation: triple product of the vertex positions
    for (TopId t = 0; t < c.n_top(); ++t) {
        auto k = c.top(t);
        Eigen::Vector3d a = c.vertex(k[0]), b = c.vertex(k[1]), d = c.vertex(k[2]);
        if (a.cross(b).dot(d) * c.parity(t) < 0) c.flip_orientation(t);
    }
    return c;
}

}  // namespace

TEST_CASE("star of simplices") {
    auto fan = hexagonal_fan();
    SUBCASE("interior vertex: full closure") {
        auto star = fan.star({0});
        CHECK(star.closure_audit());
        CHECK(star.of_dim(2).size() == 6);
        CHECK(star.of_dim(1).size() == 12);  // 6 spokes + 6 rim edges
        CHECK(star.of_dim(0).size() == 7);
        CHECK(star.contains({0}));
    }
    SUBCASE("top simplex: itself and its faces") {
        SimplexKey top(fan.top(0).begin(), fan.top(0).end());
        auto star = fan.star(top);
        CHECK(star.keys.size() == 7);  // 1 triangle + 3 edges + 3 vertices
        CHECK(star.closure_audit());
    }
    SUBCASE("vertex of a single triangle") {
        auto tri = single_triangle();
        auto star = tri.star({0});
        CHECK(star.keys.size() == 7);
    }
    CHECK_THROWS_AS(fan.star({42}), UnknownSimplex);
}

TEST_CASE("open star membership") {
    auto fan = hexagonal_fan();
    CHECK(fan.open_star_membership({0}, vec2(0, 0)));           // the center itself
    CHECK(!fan.open_star_membership({0}, vec2(1, 0)));          // rim vertex
    CHECK(!fan.open_star_membership({0}, fan.vertex(1) * 0.5 + fan.vertex(2) * 0.5));
    // interior of a spoke edge incident to the center
    Vector mid_spoke = 0.5 * fan.vertex(0) + 0.5 * fan.vertex(1);
    CHECK(fan.open_star_membership({0}, mid_spoke));
    // interior of a triangle
    Vector inside = (fan.vertex(0) + fan.vertex(1) + fan.vertex(2)) / 3.0;
    CHECK(fan.open_star_membership({0}, inside));
    // rim edge midpoint is on the boundary of the star carrier
    Vector rim_mid = 0.5 * fan.vertex(1) + 0.5 * fan.vertex(2);
    CHECK(!fan.open_star_membership({0}, rim_mid));
}

TEST_CASE("boundary complex") {
    SUBCASE("hexagonal fan: six rim edges") {
        auto fan = hexagonal_fan();
        auto b = fan.boundary_complex();
        CHECK(b.of_dim(1).size() == 6);
        CHECK(b.of_dim(0).size() == 6);
        CHECK(b.closure_audit());
    }
    SUBCASE("single triangle: all three edges") {
        auto tri = single_triangle();
        auto b = tri.boundary_complex();
        CHECK(b.of_dim(1).size() == 3);
        CHECK(b.of_dim(0).size() == 3);
    }
}

TEST_CASE("skeleton") {
    auto fan = hexagonal_fan();
    CHECK(fan.skeleton(0).keys.size() == 7);
    CHECK(fan.skeleton(1).of_dim(1).size() == 12);
    CHECK(fan.skeleton(1).of_dim(0).size() == 7);
    CHECK(fan.skeleton(2).keys.size() == 7 + 12 + 6);
    CHECK_THROWS_AS(fan.skeleton(3), BadDimension);
}

TEST_CASE("manifold checks") {
    SUBCASE("hexagonal fan: manifold with boundary") {
        auto chk = hexagonal_fan().is_manifold_complex();
        CHECK(chk.pure);
        CHECK(chk.coface_counts_ok);
        CHECK(chk.links_ok);
        CHECK(chk.is_manifold);
        CHECK(!chk.boundary_empty);
        CHECK(!chk.is_closed_manifold);
    }
    SUBCASE("bowtie fails the link check") {
        auto chk = bowtie().is_manifold_complex();
        CHECK(!chk.links_ok);
        CHECK(!chk.is_manifold);
    }
    SUBCASE("icosahedron: closed manifold, empty boundary, coherent") {
        auto ico = icosahedron();
        auto chk = ico.is_manifold_complex();
        CHECK(chk.is_closed_manifold);
        CHECK(chk.boundary_empty);
        CHECK(chk.coherently_oriented);
        CHECK(ico.boundary_complex().keys.empty());
    }
}

TEST_CASE("full stars") {
    auto fan = hexagonal_fan();
    CHECK(fan.is_full_star(0));
    CHECK(!fan.is_full_star(1));  // rim vertex
    CHECK(!bowtie().is_full_star(0));
}

TEST_CASE("shrunken star membership") {
    auto fan = hexagonal_fan();
    SUBCASE("center, barycentres, opposite facet") {
        CHECK(fan.shrunken_star_contains(0, vec2(0, 0), 0.05));  // lambda = 1
        Vector bary = (fan.vertex(0) + fan.vertex(1) + fan.vertex(2)) / 3.0;
        CHECK(fan.shrunken_star_contains(0, bary, 1e-6));  // any positive delta
        Vector rim_mid = 0.5 * fan.vertex(1) + 0.5 * fan.vertex(2);
        CHECK(!fan.shrunken_star_contains(0, rim_mid, 0.05));  // lambda = 0
    }
    SUBCASE("precondition window and outside point") {
        CHECK_THROWS_AS(fan.shrunken_star_contains(0, vec2(0, 0), 0.5), PreconditionViolated);
        CHECK_THROWS_AS(fan.shrunken_star_contains(0, vec2(5, 5), 0.05), PointOutsideStar);
    }
    SUBCASE("shrunken stars cover the carrier") {
        // every sampled carrier point lies in some vertex's shrunken star
        Rng rng(71);
        auto fan2 = hexagonal_fan();
        for (int trial = 0; trial < 500; ++trial) {
            TopId t = TopId(rng.index(uint64_t(fan2.n_top())));
            EuclideanSimplex s = fan2.realize_top(t);
            Vector x = sample_uniform(s, rng);
            bool covered = false;
            for (VertexId p : fan2.top(t))
                covered = covered || fan2.shrunken_star_contains(p, x, 1e-9);
            CHECK(covered);
        }
    }
}

TEST_CASE("boundary of the boundary vanishes") {
    auto fan = hexagonal_fan();
    auto b = fan.boundary_complex();
    // each vertex of the rim cycle must have exactly two incident rim edges
    auto rim_edges = b.of_dim(1);
    std::map<VertexId, int> deg;
    for (const auto& e : rim_edges) {
        ++deg[e[0]];
        ++deg[e[1]];
    }
    for (auto& [v, d] : deg) CHECK(d == 2);
}

TEST_CASE("orientation bookkeeping") {
    GeometricComplex c(2, 2);
    c.add_vertex(vec2(0, 0));
    c.add_vertex(vec2(1, 0));
    c.add_vertex(vec2(0, 1));
    VertexId ccw[3] = {0, 1, 2};
    c.add_top_simplex(ccw);
    c.finalize();
    CHECK(c.parity(0) == 1);  // already sorted
    GeometricComplex d(2, 2);
    d.add_vertex(vec2(0, 0));
    d.add_vertex(vec2(1, 0));
    d.add_vertex(vec2(0, 1));
    VertexId cw[3] = {0, 2, 1};
    d.add_top_simplex(cw);
    d.finalize();
    CHECK(d.parity(0) == -1);
}

TEST_CASE("coherent orientation detection and repair") {
    auto fan = hexagonal_fan();
    CHECK(fan.is_manifold_complex().coherently_oriented);
    fan.flip_orientation(2);
    CHECK(!fan.is_manifold_complex().coherently_oriented);
    fan.orient_coherently();
    CHECK(fan.is_manifold_complex().coherently_oriented);
}

TEST_CASE("duplicate top simplices are rejected") {
    GeometricComplex c(2, 2);
    c.add_vertex(vec2(0, 0));
    c.add_vertex(vec2(1, 0));
    c.add_vertex(vec2(0, 1));
    VertexId k[3] = {0, 1, 2};
    c.add_top_simplex(k);
    VertexId k2[3] = {2, 0, 1};
    c.add_top_simplex(k2);
    CHECK_THROWS_AS(c.finalize(), Error);
}
