#pragma once

#include <memory>

#include "tricert/simplex.hpp"

namespace tricert {

struct ProjectionResult {
    Vector point_on_M;   // closest point
    double distance = 0; // ambient distance to the manifold
    bool inside_tube = false;  // distance < lfs(closest point)
};

/// Analytic submanifold of R^N with closed-form closest-point projection,
/// tangent/normal flats, reach and local feature size.
class TestManifold {
  public:
    virtual ~TestManifold() = default;

    virtual int intrinsic_dim() const = 0;
    virtual int ambient_dim() const = 0;
    virtual std::string spec_string() const = 0;

    /// Closed-form closest point; throws OnMedialAxis within tolerance of the
    /// medial axis.
    virtual ProjectionResult closest_point(const Vector& x) const = 0;
    /// |f(p)| style residual measuring how far p is from lying on M.
    virtual double on_manifold_residual(const Vector& p) const = 0;
    virtual Flat tangent_flat(const Vector& p) const = 0;
    Flat normal_flat(const Vector& p) const;

    virtual double lfs(const Vector& y) const = 0;          // y on M
    virtual double local_reach(const Vector& y) const = 0;  // rch(y, M) >= lfs(y)
    virtual double reach() const = 0;
    virtual double dist_to_medial_axis(const Vector& x) const = 0;  // any x

    /// Certified lower bound on local_reach over B(c, radius) (c arbitrary).
    virtual double min_local_reach_in_ball(const Vector& c, double radius) const;

    virtual int n_components() const { return 1; }
    virtual int component_of(const Vector& p) const { (void)p; return 0; }

    /// Outward unit normal for codimension-1 manifolds (throws otherwise).
    virtual Vector outward_normal(const Vector& p_on_M) const;

    virtual Vector sample_point(Rng& rng) const = 0;

    /// 3x3 (or NxN) Jacobian of the closest-point projection at x (x off the
    /// medial axis); used for analytic chart-map differentials.
    virtual Matrix projection_jacobian(const Vector& x) const;

    // parametrization hooks for the Gauss-Newton verification fallback; a
    // "chart" here is one smooth parameter patch (e.g. one sphere of a pair)
    virtual int param_dim() const = 0;
    virtual int n_param_charts() const { return 1; }
    virtual Vector param_point(int chart, const Vector& theta) const = 0;
    virtual Matrix param_jacobian(int chart, const Vector& theta) const = 0;
    virtual std::vector<std::pair<int, Vector>> param_starts(int per_dim) const = 0;

    static std::unique_ptr<TestManifold> parse(const std::string& spec);
};

std::unique_ptr<TestManifold> make_sphere_shell(int m, int N, double radius);
std::unique_ptr<TestManifold> make_torus(double R_major, double r_minor);
std::unique_ptr<TestManifold> make_circle(double radius);
std::unique_ptr<TestManifold> make_bisphere(double radius, double gap);

struct ReachInfo {
    double reach_global = 0;
    std::function<double(const Vector&)> lfs_at;
    /// R_rch over a ball: (1-Lipschitz lfs) lower bound max(0, lfs(c) - radius)
    /// for on-manifold centers.
    std::function<double(const Vector&, double)> local_reach_lower;
};

ReachInfo reach_and_lfs(const TestManifold& M);

/// Gauss-Newton closest point with multistart over the parametrization;
/// verification cross-check for the closed forms.
ProjectionResult closest_point_newton(const TestManifold& M, const Vector& x, int starts_per_dim = 8);

enum class RrchPolicy { GlobalReach, LocalLfs };

struct RrchChoice {
    RrchPolicy policy = RrchPolicy::GlobalReach;
    double epsilon = 9.0 / 137.0;  // LocalLfs: R_rch = (1 - eps) lfs(p)
};

double r_rch_at(const TestManifold& M, const Vector& p, const RrchChoice& policy);

// --- lemma-shaped checks (lhs/rhs pairs for the harness) ----------------------

struct TangentDistanceCheck {
    double lhs_sin_angle, rhs_sin_bound;   // sin angle([x,y], T_x) vs |x-y|/(2 rch(x))
    double lhs_dist, rhs_dist_bound;       // dist(y, T_x) vs |x-y|^2/(2 rch(x))
};
TangentDistanceCheck dist_to_tangent_bounds_check(const TestManifold& M, const Vector& x,
                                                  const Vector& y);

struct TangentVariationCheck {
    double sin_angle, sin_bound;     // sin angle(T_x, T_y) vs |y-x|/R_rch
    double angle, angle_bound;       // angle vs pi |y-x| / (2 R_rch)
};
TangentVariationCheck tangent_variation_check(const TestManifold& M, const Vector& x,
                                              const Vector& y, double R_rch);

/// (sin angle(aff sigma, K), 2 eta / (t L)) with eta the max vertex distance to K.
std::pair<double, double> whitney_angle_bound_check(const EuclideanSimplex& s, const Flat& K);

struct ProximityReport {
    double max_dist_to_M = 0;        // max over samples of d_M(x)
    double max_dist_to_tangent = 0;  // max over sample pairs of dist(y, T_xcheck)
    double bound = 0;                // 2 L^2 / R_rch
    double max_vertex_to_projection = 0;  // max |p - xcheck|
    double vertex_projection_bound = 0;   // 2 L
    bool holds = false;
};
ProximityReport simplex_manifold_proximity(const TestManifold& M, const EuclideanSimplex& s,
                                           double R_rch, int samples = 64, uint64_t seed = 5);

enum class TangentAngleMode { AtVertex, AlongProjection };
std::pair<double, double> simplex_tangent_angle(const TestManifold& M, const EuclideanSimplex& s,
                                                int p_index, TangentAngleMode mode, double R_rch,
                                                int samples = 32, uint64_t seed = 11);

/// Verifies the ball hypothesis shared by several bounds: all of `pts` lie in
/// some B(c,r) subset of the tube with r < R_rch and local reach >= R_rch on it.
/// Throws HypothesisViolated otherwise; returns the ball (c, r).
std::pair<Vector, double> require_ball_hypothesis(const TestManifold& M,
                                                  const std::vector<Vector>& pts, double R_rch);

}  // namespace tricert
