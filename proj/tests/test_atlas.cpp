#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tricert/atlas.hpp"
#include "tricert/meshgen.hpp"

using namespace tricert;

namespace {

Vector vec3(double x, double y, double z) {
    Vector v(3);
    v << x, y, z;
    return v;
}

const RrchChoice kReach{RrchPolicy::GlobalReach, 9.0 / 137.0};
const RrchChoice kLfs{RrchPolicy::LocalLfs, 9.0 / 137.0};

// fan of `spokes` triangles around the north pole of the unit sphere, with an
// optional swap of two rim vertices to fold the projection
GeometricComplex polar_cap(int spokes, double polar_angle, bool fold) {
    GeometricComplex c(2, 3);
    c.add_vertex(vec3(0, 0, 1));
    std::vector<double> angles;
    for (int i = 0; i < spokes; ++i) angles.push_back(2 * M_PI * i / spokes);
    if (fold) std::swap(angles[1], angles[2]);
    for (int i = 0; i < spokes; ++i)
        c.add_vertex(vec3(std::sin(polar_angle) * std::cos(angles[size_t(i)]),
                          std::sin(polar_angle) * std::sin(angles[size_t(i)]),
                          std::cos(polar_angle)));
    for (int i = 0; i < spokes; ++i) {
        VertexId k[3] = {0, VertexId(1 + i), VertexId(1 + (i + 1) % spokes)};
        c.add_top_simplex(k);
    }
    c.finalize();
    return c;
}

}  // namespace

TEST_CASE("chart construction on the icosphere") {
    auto M = make_sphere_shell(2, 3, 1.0);
    auto mesh = generate(MeshRecipe::parse("icosphere:2"), *M);
    for (VertexId p = 0; p < mesh.n_vertices(); ++p) {
        Chart chart = build_chart(*M, mesh, p, kReach);
        auto deg = mesh.tops_of_vertex(p).size();
        CHECK((deg == 5 || deg == 6));
        CHECK(chart.projected_star.n_top() == std::int64_t(deg));
        CHECK(chart.m == 2);
        // p-hat is the chart origin
        CHECK(chart.projected_star.vertex(chart.p_local).norm() <= 1e-14);
        CHECK(chart.rho == doctest::Approx((chart.L0_star / chart.R_rch) *
                                           (1 + 2 * chart.L0_star / chart.R_rch)));
        CHECK(chart.chart_radius == doctest::Approx(chart.rho * chart.R_rch));
    }
}

TEST_CASE("chart failures") {
    auto M = make_sphere_shell(2, 3, 1.0);
    SUBCASE("single-triangle star is not full") {
        GeometricComplex c(2, 3);
        c.add_vertex(vec3(0, 0, 1));
        double s = std::sin(0.3), z = std::cos(0.3);
        c.add_vertex(vec3(s, 0, z));
        c.add_vertex(vec3(0, s, z));
        VertexId k[3] = {0, 1, 2};
        c.add_top_simplex(k);
        c.finalize();
        CHECK_THROWS_AS(build_chart(*M, c, 0, kReach), StarNotFull);
    }
    SUBCASE("folded star projection overlaps") {
        auto folded = polar_cap(6, 0.3, true);
        CHECK_THROWS_AS(build_chart(*M, folded, 0, kReach), ProjectedStarNotEmbedded);
    }
    SUBCASE("clean cap is accepted") {
        auto cap = polar_cap(6, 0.3, false);
        Chart chart = build_chart(*M, cap, 0, kReach);
        CHECK(chart.projected_star.n_top() == 6);
    }
    SUBCASE("off-manifold vertices are rejected") {
        auto cap = polar_cap(6, 0.3, false);
        cap.set_vertex(1, 1.1 * cap.vertex(1));
        CHECK_THROWS_AS(build_chart(*M, cap, 0, kReach), PointNotOnManifold);
    }
}

TEST_CASE("chart map fixes vertices and obeys trilateration") {
    auto M = make_sphere_shell(2, 3, 1.0);
    auto mesh = generate(MeshRecipe::parse("icosphere:3"), *M);
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        VertexId p = VertexId(rng.index(uint64_t(mesh.n_vertices())));
        Chart chart = build_chart(*M, mesh, p, kReach);
        // vertices are fixed points of F_p
        for (VertexId lv = 0; lv < chart.projected_star.n_vertices(); ++lv) {
            Vector q_hat = chart.projected_star.vertex(lv);
            CHECK((evaluate_Fp(chart, *M, q_hat) - q_hat).norm() <= 1e-9);
        }
        // displaced barycentres stay within 3 xi L / t of themselves
        auto dist = certified_chart_distortion(
            chart, *M, QualityBounds{chart.s0_star, chart.L0_star, chart.t0_star}, kReach);
        for (TopId t = 0; t < chart.projected_star.n_top(); ++t) {
            EuclideanSimplex s = chart.projected_star.realize_top(t);
            auto q = quality_measures(s);
            Vector b = s.barycentre();
            double moved = (evaluate_Fp(chart, *M, b) - b).norm();
            CHECK(moved <= 3 * dist.xi_total.xi * q.longest_edge_L / q.thickness_t + 1e-9);
        }
        CHECK_THROWS_AS(evaluate_Fp(chart, *M, vec3(10, 10, 0).head(2).eval()),
                        PointOutsideChart);
    }
}

TEST_CASE("certified chart distortion formulas") {
    auto M = make_sphere_shell(2, 3, 1.0);
    auto cap = polar_cap(6, 0.02, false);
    Chart chart = build_chart(*M, cap, 0, kReach);

    SUBCASE("boundary value q = 1/256") {
        double t0 = 0.5;
        double L0 = t0 / 16.0;  // exactly q = 1/256 with R_rch = 1
        auto d = certified_chart_distortion(chart, *M, QualityBounds{L0, L0, t0}, kReach);
        CHECK(d.q == doctest::Approx(1.0 / 256).epsilon(1e-12));
        CHECK(d.xi_phi_inv_hat.xi == doctest::Approx((256.0 / 255.0) / 256.0).epsilon(1e-12));
        CHECK(d.xi_H.xi == doctest::Approx(12.0 / 256).epsilon(1e-12));
        double rho = L0 * (1 + 2 * L0);
        CHECK(d.xi_phi.xi == doctest::Approx(4 * rho * rho).epsilon(1e-12));
        CHECK(d.xi_total.xi ==
              doctest::Approx(compose_distortion({d.xi_phi_inv_hat.xi, d.xi_H.xi, d.xi_phi.xi})));
        CHECK(d.xi_total.xi <= d.paper_ceiling);
        CHECK(d.xi_total.kind == BoundKind::CertifiedUpper);
    }
    SUBCASE("small L0 limit: all factors vanish") {
        auto d = certified_chart_distortion(chart, *M, QualityBounds{1e-7, 1e-7, 0.5}, kReach);
        CHECK(d.xi_total.xi <= 1e-12);
    }
    SUBCASE("precondition violation for coarse quality") {
        CHECK_THROWS_AS(certified_chart_distortion(chart, *M, QualityBounds{0.2, 0.2, 0.5}, kReach),
                        PreconditionViolated);
    }
}

TEST_CASE("secant map preserves barycentric coordinates") {
    auto M = make_sphere_shell(2, 3, 1.0);
    auto mesh = generate(MeshRecipe::parse("icosphere:2"), *M);
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        VertexId p = VertexId(rng.index(uint64_t(mesh.n_vertices())));
        Chart chart = build_chart(*M, mesh, p, kReach);
        TopId t = TopId(rng.index(uint64_t(chart.projected_star.n_top())));
        EuclideanSimplex chart_simplex = chart.projected_star.realize_top(t);
        auto lam = sample_uniform_barycentric(2, rng);
        Vector x_hat = point_from_barycentric(chart_simplex, lam);
        TopId located = -1;
        Vector lifted = chart.lift(x_hat, &located);
        // the lift in the ambient star simplex has the same coordinates
        auto key = chart.projected_star.top(located);
        Matrix V(3, 3);
        for (int i = 0; i <= 2; ++i)
            V.col(i) = mesh.vertex(chart.ambient_vertex_ids[size_t(key[i])]);
        auto lam_ambient = barycentric_coordinates(EuclideanSimplex{std::move(V)}, lifted);
        auto lam_chart = barycentric_coordinates(chart.projected_star.realize_top(located), x_hat);
        for (size_t i = 0; i < lam_ambient.size(); ++i)
            CHECK(std::abs(lam_ambient[i] - lam_chart[i]) <= 1e-10);
    }
}

TEST_CASE("chart coverage: images stay within the chart radius") {
    auto M = make_sphere_shell(2, 3, 1.0);
    auto mesh = generate(MeshRecipe::parse("icosphere:4"), *M);
    Rng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        VertexId p = VertexId(rng.index(uint64_t(mesh.n_vertices())));
        Chart chart = build_chart(*M, mesh, p, kReach);
        Vector pp = mesh.vertex(p);
        for (int s = 0; s < 100; ++s) {
            TopId t = TopId(rng.index(uint64_t(chart.projected_star.n_top())));
            Vector x_hat = sample_uniform(chart.projected_star.realize_top(t), rng);
            Vector ambient = chart.lift(x_hat);
            Vector image = M->closest_point(ambient).point_on_M;  // H on the star
            CHECK((image - pp).norm() <= chart.chart_radius + 1e-12);
        }
    }
}

TEST_CASE("projected star quality transfer") {
    auto M = make_sphere_shell(2, 3, 1.0);
    auto mesh = generate(MeshRecipe::parse("icosphere:4"), *M);
    Rng rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        VertexId p = VertexId(rng.index(uint64_t(mesh.n_vertices())));
        Chart chart = build_chart(*M, mesh, p, kReach);
        double q = (chart.L0_star * chart.L0_star) /
                   (chart.t0_star * chart.t0_star * chart.R_rch * chart.R_rch);
        for (TopId t = 0; t < chart.projected_star.n_top(); ++t) {
            double t_ambient = thickness(EuclideanSimplex{[&] {
                auto key = chart.projected_star.top(t);
                Matrix V(3, 3);
                for (int i = 0; i <= 2; ++i)
                    V.col(i) = mesh.vertex(chart.ambient_vertex_ids[size_t(key[i])]);
                return V;
            }()});
            double t_hat = thickness(chart.projected_star.realize_top(t));
            CHECK(t_hat >= (1 - q) * t_ambient - 1e-12);
        }
    }
}

TEST_CASE("keystone: empirical chart distortion never exceeds the certified total") {
    auto M = make_sphere_shell(2, 3, 1.0);
    auto mesh = generate(MeshRecipe::parse("icosphere:6"), *M);
    Rng rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        VertexId p = VertexId(rng.index(uint64_t(mesh.n_vertices())));
        Chart chart = build_chart(*M, mesh, p, kReach);
        auto cert = certified_chart_distortion(
            chart, *M, QualityBounds{chart.s0_star, chart.L0_star, chart.t0_star}, kReach);
        for (TopId t = 0; t < chart.projected_star.n_top(); ++t) {
            auto f = SampledMap::on_simplex(
                chart.projected_star.realize_top(t),
                [&](const Vector& x) { return evaluate_Fp(chart, *M, x); });
            auto empirical = measure_distortion(f, 200, rng.next());
            CHECK(empirical.xi <= cert.xi_total.xi);
        }
    }
}

TEST_CASE("vertex sanity") {
    auto M = make_sphere_shell(2, 3, 1.0);
    SUBCASE("well-separated icosphere passes, neighbours allowed") {
        auto mesh = generate(MeshRecipe::parse("icosphere:2"), *M);
        auto rep = vertex_sanity_check(*M, mesh, kReach, SanityMode::ChartRadius);
        CHECK(rep.pass);
        auto rep_ball = vertex_sanity_check(*M, mesh, kReach, SanityMode::ReachBall);
        CHECK(rep_ball.pass);
    }
    SUBCASE("rogue vertex over a far triangle is flagged") {
        auto mesh = generate(MeshRecipe::parse("icosphere:4"), *M);
        Mutation mut;
        mut.kind = Mutation::Kind::RogueVertex;
        mut.target = 10;
        auto mutated = apply_mutation(mesh, *M, mut);
        VertexId rogue = VertexId(mutated.n_vertices() - 1);
        auto rep = vertex_sanity_check(*M, mutated, kReach, SanityMode::ReachBall);
        CHECK(!rep.pass);
        bool names_rogue = false;
        for (auto& [p, q] : rep.violations) names_rogue = names_rogue || q == rogue;
        CHECK(names_rogue);
    }
}

TEST_CASE("charts on the circle (m = 1)") {
    auto M = make_circle(1.0);
    auto mesh = generate(MeshRecipe::parse("polycircle:64"), *M);
    Chart chart = build_chart(*M, mesh, 5, kLfs);
    CHECK(chart.m == 1);
    CHECK(chart.projected_star.n_top() == 2);
    // neighbours project to opposite sides
    double a = chart.projected_star.vertex(chart.p_local == 0 ? 1 : 0)(0);
    CHECK(std::abs(a) > 0);
    auto d = certified_chart_distortion(
        chart, *M, QualityBounds{chart.s0_star, chart.L0_star, chart.t0_star}, kLfs);
    CHECK(d.xi_total.kind == BoundKind::CertifiedUpper);
    for (VertexId lv = 0; lv < chart.projected_star.n_vertices(); ++lv) {
        Vector q_hat = chart.projected_star.vertex(lv);
        CHECK((evaluate_Fp(chart, *M, q_hat) - q_hat).norm() <= 1e-9);
    }
}
