#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tricert/simplex.hpp"

using namespace tricert;

namespace {

Vector vec2(double x, double y) {
    Vector v(2);
    v << x, y;
    return v;
}
Vector vec3(double x, double y, double z) {
    Vector v(3);
    v << x, y, z;
    return v;
}

EuclideanSimplex unit_right_triangle() {
    return EuclideanSimplex{vec2(0, 0), vec2(1, 0), vec2(0, 1)};
}

EuclideanSimplex equilateral(double edge) {
    return EuclideanSimplex{vec2(0, 0), vec2(edge, 0), vec2(edge / 2, edge * std::sqrt(3.0) / 2)};
}

EuclideanSimplex regular_tetrahedron() {
    // edge length 1
    double h = std::sqrt(3.0) / 2.0;
    Vector a = vec3(0, 0, 0), b = vec3(1, 0, 0), c = vec3(0.5, h, 0);
    Vector centroid = (a + b + c) / 3.0;
    Vector d = centroid;
    d(2) = std::sqrt(2.0 / 3.0);
    Matrix V(3, 4);
    V.col(0) = a;
    V.col(1) = b;
    V.col(2) = c;
    V.col(3) = d;
    return EuclideanSimplex(std::move(V));
}

EuclideanSimplex random_nondegenerate(Rng& rng, int j, int N) {
    for (;;) {
        Matrix V(N, j + 1);
        for (int c = 0; c <= j; ++c)
            for (int r = 0; r < N; ++r) V(r, c) = rng.uniform(-1, 1);
        EuclideanSimplex s(std::move(V));
        if (thickness(s) > 0.05) return s;
    }
}

}  // namespace

TEST_CASE("altitude of the unit right triangle") {
    auto s = unit_right_triangle();
    CHECK(altitude(s, 0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(altitude(s, 1) == doctest::Approx(1.0));
    CHECK(altitude(s, 2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(altitude(s, 3), IndexOutOfRange);
}

TEST_CASE("altitude of a degenerate collinear triangle is zero") {
    EuclideanSimplex s{vec2(0, 0), vec2(1, 0), vec2(2, 0)};
    CHECK(altitude(s, 2) == doctest::Approx(0.0));
    CHECK(thickness(s) == doctest::Approx(0.0));
}

TEST_CASE("regular tetrahedron altitude") {
    auto s = regular_tetrahedron();
    for (int i = 0; i < 4; ++i)
        CHECK(altitude(s, i) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("thickness") {
    CHECK(thickness(equilateral(1.0)) == doctest::Approx(std::sqrt(3.0) / 4).epsilon(1e-12));
    CHECK(thickness(EuclideanSimplex{vec2(0.3, 0.4)}) == doctest::Approx(1.0));  // 0-simplex
    CHECK(thickness(unit_right_triangle()) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("thickness scale and permutation invariance") {
    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        int j = 1 + int(rng.index(3));
        int N = j + int(rng.index(uint64_t(4 - j) + 1));
        EuclideanSimplex s = random_nondegenerate(rng, j, N);
        double t = thickness(s);
        double c = rng.uniform(0.1, 10.0);
        CHECK(thickness(EuclideanSimplex(Matrix(c * s.vertices()))) ==
              doctest::Approx(t).epsilon(1e-12));
        // random vertex permutation
        Matrix P(s.vertices().rows(), s.vertices().cols());
        std::vector<int> perm(size_t(j) + 1);
        for (int i = 0; i <= j; ++i) perm[size_t(i)] = i;
        for (int i = j; i > 0; --i) std::swap(perm[size_t(i)], perm[size_t(rng.index(uint64_t(i + 1)))]);
        for (int i = 0; i <= j; ++i) P.col(i) = s.vertices().col(perm[size_t(i)]);
        EuclideanSimplex sp(std::move(P));
        CHECK(thickness(sp) == doctest::Approx(t).epsilon(1e-12));
        auto qa = quality_measures(s), qb = quality_measures(sp);
        CHECK(qa.longest_edge_L == doctest::Approx(qb.longest_edge_L));
        CHECK(qa.min_altitude_a == doctest::Approx(qb.min_altitude_a).epsilon(1e-10));
    }
}

TEST_CASE("barycentric coordinates: vertices, barycentre, interior point") {
    auto s = unit_right_triangle();
    auto at_vertex = barycentric_coordinates(s, vec2(1, 0));
    CHECK(at_vertex[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(at_vertex[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(at_vertex[2] == doctest::Approx(0.0).epsilon(1e-12));

    auto at_bary = barycentric_coordinates(s, s.barycentre());
    for (double l : at_bary) CHECK(l == doctest::Approx(1.0 / 3).epsilon(1e-12));

    auto lam = barycentric_coordinates(s, vec2(0.25, 0.25));
    CHECK(lam[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(lam[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(lam[2] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("barycentric coordinates: degenerate and strict off-hull errors") {
    EuclideanSimplex degenerate{vec2(0, 0), vec2(1, 0), vec2(2, 0)};
    CHECK_THROWS_AS(barycentric_coordinates(degenerate, vec2(0.5, 0.5)), DegenerateSimplex);

    EuclideanSimplex edge{vec3(0, 0, 0), vec3(1, 0, 0)};
    Vector off = vec3(0.5, 0.5, 0);
    CHECK_THROWS_AS(barycentric_coordinates(edge, off, BarycentricMode::Strict),
                    PointOffAffineHull);
    // projection mode projects onto the affine hull first
    auto lam = barycentric_coordinates(edge, off, BarycentricMode::Project);
    CHECK(lam[0] == doctest::Approx(0.5));
    CHECK(lam[1] == doctest::Approx(0.5));
}

TEST_CASE("barycentric reconstruction over random simplices") {
    Rng rng(29);
    int checked = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        int j = 1 + int(rng.index(5));  // up to 5-simplices
        int N = j + int(rng.index(3));
        N = std::min(N, 6);
        EuclideanSimplex s = random_nondegenerate(rng, j, N);
        Vector x = sample_uniform(s, rng);
        auto lam = barycentric_coordinates(s, x);
        double sum = 0;
        for (double l : lam) sum += l;
        CHECK(std::abs(sum - 1.0) <= 1e-10);
        CHECK((point_from_barycentric(s, lam) - x).norm() <= 1e-9);
        ++checked;
    }
    CHECK(checked == 10000);
}

TEST_CASE("trilateration displacement bound") {
    auto right = unit_right_triangle();
    CHECK(trilateration_displacement_bound(right, 0.0) == doctest::Approx(0.0));

    // xi = 0.01, L = 1, t = 0.5 -> 0.06: realized by a unit segment (t = 1/2
    // comes from a thinner triangle; check the formula on explicit numbers)
    EuclideanSimplex tri{vec2(0, 0), vec2(1, 0), vec2(0.5, 0.5)};
    auto q = quality_measures(tri);
    CHECK(q.longest_edge_L == doctest::Approx(1.0));
    double expected = 3.0 * 0.01 * q.longest_edge_L / q.thickness_t;
    CHECK(trilateration_displacement_bound(tri, 0.01) == doctest::Approx(expected));

    auto eq2 = equilateral(2.0);
    CHECK(trilateration_displacement_bound(eq2, 0.5) ==
          doctest::Approx(3.0 * 0.5 * 2.0 / (std::sqrt(3.0) / 4)).epsilon(1e-12));
    CHECK(trilateration_displacement_bound(eq2, 0.5) == doctest::Approx(6.9282).epsilon(1e-4));

    CHECK_THROWS_AS(trilateration_displacement_bound(eq2, 1.5), XiOutOfRange);
    EuclideanSimplex embedded{vec3(0, 0, 0), vec3(1, 0, 0), vec3(0, 1, 0)};
    CHECK_THROWS_AS(trilateration_displacement_bound(embedded, 0.1), NotFullDimensional);
}

TEST_CASE("vertex-matrix inverse norm against its bound") {
    SUBCASE("standard simplex in the plane") {
        EuclideanSimplex s{vec2(0, 0), vec2(1, 0), vec2(0, 1)};
        auto [actual, bound] = matrix_P_inverse_norm_check(s);
        CHECK(actual == doctest::Approx(1.0).epsilon(1e-12));  // P is the identity
        CHECK(actual <= bound + 1e-10);
        CHECK(bound == doctest::Approx(1.0 / (std::sqrt(2.0) * 0.25 * std::sqrt(2.0))));
    }
    SUBCASE("scaling by 2 halves both quantities") {
        EuclideanSimplex s{vec2(0, 0), vec2(1, 0.2), vec2(0.1, 1.1)};
        auto [a1, b1] = matrix_P_inverse_norm_check(s);
        EuclideanSimplex s2(Matrix(2.0 * s.vertices()));
        auto [a2, b2] = matrix_P_inverse_norm_check(s2);
        CHECK(a2 == doctest::Approx(a1 / 2).epsilon(1e-12));
        CHECK(b2 == doctest::Approx(b1 / 2).epsilon(1e-12));
    }
    SUBCASE("random thick 3-simplices") {
        Rng rng(41);
        for (int trial = 0; trial < 500; ++trial) {
            EuclideanSimplex s = random_nondegenerate(rng, 3, 3);
            auto [actual, bound] = matrix_P_inverse_norm_check(s);
            CHECK(actual <= bound + 1e-10);
        }
    }
}

TEST_CASE("trilateration bound holds for sampled vertex-fixing maps") {
    Rng rng(53);
    for (int trial = 0; trial < 400; ++trial) {
        int m = 1 + int(rng.index(3));
        EuclideanSimplex s = random_nondegenerate(rng, m, m);
        auto q = quality_measures(s);
        Vector dir(m);
        for (int i = 0; i < m; ++i) dir(i) = rng.normal();
        dir.normalize();
        double delta = rng.uniform(0.0, 0.3) * q.longest_edge_L;
        auto F = [&](const Vector& x) {
            auto lam = barycentric_coordinates(s, x);
            double prod = 1;
            for (double l : lam) prod *= std::max(0.0, l);
            return (x + delta * prod * std::pow(m + 1.0, m + 1.0) * dir).eval();
        };
        std::vector<Vector> pts;
        for (int i = 0; i <= m; ++i) pts.push_back(s.vertex(i));
        std::vector<Vector> samples;
        for (int i = 0; i < 10; ++i) samples.push_back(sample_uniform(s, rng));
        std::vector<Vector> all = pts;
        all.insert(all.end(), samples.begin(), samples.end());
        double xi = 0;
        for (size_t a = 0; a < all.size(); ++a)
            for (size_t b = a + 1; b < all.size(); ++b) {
                double d = (all[a] - all[b]).norm();
                if (d < 1e-12) continue;
                xi = std::max(xi, std::abs((F(all[a]) - F(all[b])).norm() / d - 1.0));
            }
        if (xi > 1.0) continue;
        double bound = 3 * xi * q.longest_edge_L / q.thickness_t;
        for (const auto& x : samples) CHECK((x - F(x)).norm() <= bound + 1e-9);
    }
}
