#pragma once

#include "tricert/complex.hpp"
#include "tricert/distortion.hpp"
#include "tricert/manifolds.hpp"

namespace tricert {

/// Coordinate chart at a vertex p: tangent plane, the star projected into it,
/// and the data needed to evaluate the chart map F_p = phi_p . H . PhiHat_p^-1.
struct Chart {
    VertexId vertex_p = -1;
    int m = 0;
    double rho = 0, R_rch = 0, chart_radius = 0;  // r = rho * R_rch
    Flat tangent;                                 // T_p M, base p
    GeometricComplex projected_star;              // in R^m, origin at p-hat
    std::vector<VertexId> ambient_vertex_ids;     // local vertex -> complex vertex
    VertexId p_local = -1;
    double outer_radius = 0;  // max |chart coords| over the star's vertices

    // ambient star quality (L = longest edge per simplex; s0/L0 bounds over the star)
    double L0_star = 0, s0_star = 0, t0_star = 1;
    // projected star quality
    double L0_hat = 0, s0_hat = 0, t0_hat = 1;

    const GeometricComplex* complex = nullptr;
    const TestManifold* manifold = nullptr;

    Chart() : tangent(Vector::Zero(1), Matrix(1, 0)), projected_star(0, 0) {}

    Vector to_chart(const Vector& ambient_point) const;
    /// PhiHat_p^-1: lift by barycentric coordinates into the ambient star.
    /// Ties on shared faces resolve to the lowest top index.
    Vector lift(const Vector& chart_point, TopId* which_top = nullptr) const;
    bool contains(const Vector& chart_point) const;
};

Chart build_chart(const TestManifold& M, const GeometricComplex& A, VertexId p,
                  const RrchChoice& policy);

/// F_p evaluated at a chart point (lift, closest-point projection, project back).
Vector evaluate_Fp(const Chart& chart, const TestManifold& M, const Vector& x_in_chart);

struct ChartDistortion {
    DistortionBound xi_phi_inv_hat;  // secant-map inverse
    DistortionBound xi_H;            // closest-point projection
    DistortionBound xi_phi;          // tangent-plane coordinate map
    DistortionBound xi_total;        // composition
    double q = 0;                    // L0^2 / (t0^2 R_rch^2)
    double paper_ceiling = 0;        // aggregate constant times q
};

struct QualityBounds {
    double s0 = 0, L0 = 0, t0 = 0;
};

/// Assembles the certified chart distortion bounds from the analytic formulas;
/// errors with PreconditionViolated when the smallness precondition
/// q = L0^2/(t0 R_rch)^2 <= 1/256 (or a lemma hypothesis) fails.
ChartDistortion certified_chart_distortion(const Chart& chart, const TestManifold& M,
                                           const QualityBounds& quality, const RrchChoice& policy);

enum class SanityMode { ChartRadius, LfsBall, ReachBall };

struct SanityReport {
    std::vector<std::pair<VertexId, VertexId>> violations;  // (p, q)
    std::int64_t pairs_checked = 0;
    bool pass = true;
};

/// Vertex sanity: for q within the mode's ball around p, the projection of q
/// into p's chart may lie in the projected star only when q is a vertex of
/// st(p). Boundary hits count as inside (conservative).
SanityReport vertex_sanity_check(const TestManifold& M, const GeometricComplex& A,
                                 const RrchChoice& policy, SanityMode mode);

/// True when the chart point lies in the projected star (boundary-inclusive).
bool point_in_projected_star(const Chart& chart, const Vector& chart_point);

}  // namespace tricert
