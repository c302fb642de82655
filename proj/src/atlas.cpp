#include "tricert/atlas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tricert {

Vector Chart::to_chart(const Vector& ambient_point) const {
    return tangent.basis().transpose() * (ambient_point - tangent.base());
}

bool Chart::contains(const Vector& chart_point) const {
    for (TopId t = 0; t < projected_star.n_top(); ++t) {
        EuclideanSimplex s = projected_star.realize_top(t);
        auto lam = barycentric_coordinates(s, chart_point, BarycentricMode::Project);
        bool inside = true;
        for (double l : lam) inside = inside && l >= -tol().inside_simplex;
        if (inside) return true;
    }
    return false;
}

bool point_in_projected_star(const Chart& chart, const Vector& chart_point) {
    return chart.contains(chart_point);
}

Vector Chart::lift(const Vector& chart_point, TopId* which_top) const {
    for (TopId t = 0; t < projected_star.n_top(); ++t) {
        EuclideanSimplex s = projected_star.realize_top(t);
        auto lam = barycentric_coordinates(s, chart_point, BarycentricMode::Project);
        bool inside = true;
        for (double l : lam) inside = inside && l >= -tol().inside_simplex;
        if (!inside) continue;
        auto key = projected_star.top(t);
        Vector x = Vector::Zero(complex->ambient_dim());
        for (int i = 0; i <= m; ++i)
            x += lam[size_t(i)] * complex->vertex(ambient_vertex_ids[size_t(key[i])]);
        if (which_top) *which_top = t;
        return x;
    }
    throw PointOutsideChart();
}

Vector evaluate_Fp(const Chart& chart, const TestManifold& M, const Vector& x_in_chart) {
    Vector ambient = chart.lift(x_in_chart);
    ProjectionResult pr = M.closest_point(ambient);  // OnMedialAxis propagates
    return chart.to_chart(pr.point_on_M);
}

namespace {

// Full-star embedding test in chart coordinates.
//  m = 1: exactly two edges, one neighbour on each side of the origin.
//  m = 2: angular wedges of the incident triangles partition the full circle.
void require_full_embedded_star(int m, const std::vector<Vector>& chart_coords,
                                const GeometricComplex& star, VertexId p_local) {
    const std::int64_t T = star.n_top();
    if (m == 1) {
        if (T != 2) throw StarNotFull("vertex star has " + std::to_string(T) + " edges");
        double side[2];
        for (TopId t = 0; t < 2; ++t) {
            auto k = star.top(t);
            VertexId other = k[0] == p_local ? k[1] : k[0];
            side[t] = chart_coords[size_t(other)](0);
            if (std::abs(side[t]) <= 0.0) throw ProjectedStarNotEmbedded("zero-length chart edge");
        }
        if (side[0] * side[1] >= 0.0)
            throw ProjectedStarNotEmbedded("both edges on one side of the vertex");
        return;
    }
    if (m != 2) throw BadDimension("charts implemented for m <= 2");
    if (T < 3) throw StarNotFull("vertex star has fewer than 3 triangles");

    struct Wedge {
        double start, width;
    };
    std::vector<Wedge> wedges;
    wedges.reserve(size_t(T));
    double total = 0;
    for (TopId t = 0; t < T; ++t) {
        auto k = star.top(t);
        VertexId rim[2];
        int c = 0;
        for (int i = 0; i <= 2; ++i)
            if (k[i] != p_local) rim[c++] = k[i];
        const Vector& a = chart_coords[size_t(rim[0])];
        const Vector& b = chart_coords[size_t(rim[1])];
        double ra = a.norm(), rb = b.norm();
        if (ra <= 0 || rb <= 0) throw ProjectedStarNotEmbedded("rim vertex at the chart origin");
        double ta = std::atan2(a(1), a(0)), tb = std::atan2(b(1), b(0));
        double d = std::remainder(tb - ta, 2 * M_PI);
        if (std::abs(d) < 1e-12 || std::abs(std::abs(d) - M_PI) < 1e-12)
            throw ProjectedStarNotEmbedded("degenerate (collinear) chart triangle");
        Wedge w{};
        if (d > 0) {
            w.start = ta;
            w.width = d;
        } else {
            w.start = tb;
            w.width = -d;
        }
        total += w.width;
        wedges.push_back(w);
    }
    std::sort(wedges.begin(), wedges.end(), [](const Wedge& x, const Wedge& y) {
        return x.start < y.start;
    });
    const double ang_tol = 1e-9;
    for (size_t i = 0; i + 1 < wedges.size(); ++i)
        if (wedges[i].start + wedges[i].width > wedges[i + 1].start + ang_tol)
            throw ProjectedStarNotEmbedded("overlapping chart triangles");
    if (!wedges.empty() &&
        wedges.back().start + wedges.back().width > wedges.front().start + 2 * M_PI + ang_tol)
        throw ProjectedStarNotEmbedded("overlapping chart triangles around the seam");
    if (std::abs(total - 2 * M_PI) > 1e-7) {
        if (total < 2 * M_PI)
            throw StarNotFull("wedge angles sum to " + std::to_string(total));
        throw ProjectedStarNotEmbedded("wedge angles exceed the full circle");
    }
}

}  // namespace

Chart build_chart(const TestManifold& M, const GeometricComplex& A, VertexId p,
                  const RrchChoice& policy) {
    if (p < 0 || p >= A.n_vertices()) throw UnknownVertex();
    auto star_tops = A.tops_of_vertex(p);
    if (star_tops.empty()) throw StarNotFull("isolated vertex");
    const int m = A.dim();

    Chart chart;
    chart.vertex_p = p;
    chart.m = m;
    chart.complex = &A;
    chart.manifold = &M;

    // star vertices must lie on M
    std::vector<VertexId> old_ids;
    GeometricComplex star = A.extract_tops(star_tops, &old_ids);
    for (VertexId v = 0; v < star.n_vertices(); ++v)
        if (M.on_manifold_residual(star.vertex(v)) > tol().geometric)
            throw PointNotOnManifold("star vertex off the manifold");

    chart.tangent = M.tangent_flat(A.vertex(p));
    VertexId p_local = -1;
    for (size_t i = 0; i < old_ids.size(); ++i)
        if (old_ids[i] == p) p_local = VertexId(i);
    chart.p_local = p_local;
    chart.ambient_vertex_ids = old_ids;

    std::vector<Vector> cc(static_cast<size_t>(star.n_vertices()));
    for (VertexId v = 0; v < star.n_vertices(); ++v) {
        cc[size_t(v)] = chart.to_chart(star.vertex(v));
        chart.outer_radius = std::max(chart.outer_radius, cc[size_t(v)].norm());
    }
    require_full_embedded_star(m, cc, star, p_local);

    GeometricComplex proj(m, m);
    for (VertexId v = 0; v < star.n_vertices(); ++v) proj.add_vertex(cc[size_t(v)]);
    for (TopId t = 0; t < star.n_top(); ++t) {
        proj.add_top_simplex(star.top(t));
        if (star.parity(t) < 0) proj.flip_orientation(proj.n_top() - 1);
    }
    proj.finalize();
    chart.projected_star = std::move(proj);

    chart.L0_star = 0;
    chart.s0_star = std::numeric_limits<double>::infinity();
    chart.t0_star = 1;
    chart.L0_hat = 0;
    chart.s0_hat = std::numeric_limits<double>::infinity();
    chart.t0_hat = 1;
    for (TopId t = 0; t < star.n_top(); ++t) {
        auto qa = quality_measures(star.realize_top(t));
        chart.L0_star = std::max(chart.L0_star, qa.longest_edge_L);
        chart.s0_star = std::min(chart.s0_star, qa.longest_edge_L);
        chart.t0_star = std::min(chart.t0_star, qa.thickness_t);
        auto qh = quality_measures(chart.projected_star.realize_top(t));
        chart.L0_hat = std::max(chart.L0_hat, qh.longest_edge_L);
        chart.s0_hat = std::min(chart.s0_hat, qh.longest_edge_L);
        chart.t0_hat = std::min(chart.t0_hat, qh.thickness_t);
    }

    chart.R_rch = r_rch_at(M, A.vertex(p), policy);
    chart.rho = (chart.L0_star / chart.R_rch) * (1.0 + 2.0 * chart.L0_star / chart.R_rch);
    chart.chart_radius = chart.rho * chart.R_rch;
    return chart;
}

ChartDistortion certified_chart_distortion(const Chart& chart, const TestManifold& M,
                                           const QualityBounds& quality, const RrchChoice& policy) {
    const double L0 = quality.L0, t0 = quality.t0;
    if (!(L0 > 0) || !(t0 > 0)) throw PreconditionViolated("quality bounds must be positive");
    const double R = r_rch_at(M, chart.tangent.base(), policy);
    const double q = (L0 * L0) / (t0 * t0 * R * R);
    if (!(q <= 1.0 / 256.0))
        throw PreconditionViolated("L0^2/(t0 R_rch)^2 = " + std::to_string(q) +
                                   " exceeds 1/256 by " + std::to_string(q - 1.0 / 256.0));
    const double rho = (L0 / R) * (1.0 + 2.0 * L0 / R);
    if (!(rho < 0.5))
        throw PreconditionViolated("chart radius ratio rho = " + std::to_string(rho) + " not < 1/2");
    if (!(L0 < t0 * R / 3.0))
        throw PreconditionViolated("L0 < t0 R_rch / 3 fails, margin " +
                                   std::to_string(t0 * R / 3.0 - L0));

    ChartDistortion out;
    out.q = q;
    out.xi_phi_inv_hat = {q / (1.0 - q), BoundKind::CertifiedUpper,
                          "secant projection distortion, inverted", false};
    out.xi_H = {12.0 * q, BoundKind::CertifiedUpper, "closest-point projection on a simplex", false};
    out.xi_phi = {4.0 * rho * rho, BoundKind::CertifiedUpper, "tangent coordinate map", false};
    double total = compose_distortion({out.xi_phi_inv_hat.xi, out.xi_H.xi, out.xi_phi.xi});
    out.xi_total = {total, BoundKind::CertifiedUpper, "composition of the three chart factors", false};
    out.paper_ceiling = 19.0 * q;
    if (total > out.paper_ceiling * (1.0 + 1e-12))
        throw Error("composed chart distortion exceeds its aggregate ceiling");
    return out;
}

SanityReport vertex_sanity_check(const TestManifold& M, const GeometricComplex& A,
                                 const RrchChoice& policy, SanityMode mode) {
    SanityReport rep;
    const std::int64_t V = A.n_vertices();
    for (VertexId p = 0; p < V; ++p) {
        Chart chart;
        try {
            chart = build_chart(M, A, p, policy);
        } catch (const Error&) {
            continue;  // invalid stars are reported by the chart criteria
        }
        double radius = chart.chart_radius;
        if (mode == SanityMode::LfsBall) radius = M.lfs(A.vertex(p)) / 15.0;
        if (mode == SanityMode::ReachBall) radius = M.reach() / 14.0;
        std::vector<VertexId> star_verts = chart.ambient_vertex_ids;
        std::sort(star_verts.begin(), star_verts.end());
        Vector pp = A.vertex(p);
        for (VertexId q = 0; q < V; ++q) {
            if (q == p) continue;
            if ((A.vertex(q) - pp).norm() >= radius) continue;
            ++rep.pairs_checked;
            bool inside = chart.contains(chart.to_chart(A.vertex(q)));
            bool is_star_vertex = std::binary_search(star_verts.begin(), star_verts.end(), q);
            if (inside != is_star_vertex) rep.violations.push_back({p, q});
        }
    }
    rep.pass = rep.violations.empty();
    return rep;
}

}  // namespace tricert
