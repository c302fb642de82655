#pragma once

#include <functional>
#include <optional>

#include "tricert/simplex.hpp"

namespace tricert {

enum class BoundKind { CertifiedUpper, EmpiricalLower };

/// A xi value with provenance. CertifiedUpper bounds come only from analytic
/// formulas (or the differential route with its hypotheses flagged), never
/// from pair sampling; EmpiricalLower is what sampling can deliver.
struct DistortionBound {
    double xi = 0.0;
    BoundKind kind = BoundKind::EmpiricalLower;
    std::string provenance;
    bool conditional_on_hypotheses = false;
};

/// Map under test: an evaluator over a simplex domain or a finite point set.
struct SampledMap {
    std::function<Vector(const Vector&)> eval;
    std::optional<EuclideanSimplex> domain;
    std::vector<Vector> point_set;

    static SampledMap on_simplex(EuclideanSimplex s, std::function<Vector(const Vector&)> f) {
        return SampledMap{std::move(f), std::move(s), {}};
    }
    static SampledMap on_points(std::vector<Vector> pts, std::function<Vector(const Vector&)> f) {
        return SampledMap{std::move(f), std::nullopt, std::move(pts)};
    }
};

/// Max over sampled pairs of | |F(x)-F(y)| / |x-y| - 1 |, as an empirical
/// lower bound on the true distortion. Deterministic given the seed, and the
/// pair sequence extends with `pairs`, so estimates are monotone in the count.
DistortionBound measure_distortion(const SampledMap& f, int pairs, uint64_t seed);

/// Composite bound prod(1+xi_i) - 1 (equals the sum over nonempty subsets of
/// products of the xi_i).
double compose_distortion(const std::vector<double>& xis);

/// xi / (1 - xi), the distortion of the inverse map; requires xi < 1.
double invert_distortion(double xi);

/// Finite-difference Jacobian spectrum at x (central differences, step h).
LinearMapSpectrum spectrum_from_distortion(const SampledMap& f, const Vector& x, double h);

/// Certified-upper route: verifies |s_i(dF)-1| <= xi on a sample grid over a
/// convex domain; the injectivity/convexity hypotheses are the caller's and
/// the result is flagged conditional on them.
DistortionBound distortion_from_spectrum_bound(const SampledMap& f, const EuclideanSimplex& domain,
                                               double xi, int grid_per_dim = 5);

/// Displacement check |F(x)-x| <= xi |x-p| for maps fixing vertex p of s.
bool strong_displacement_check(const SampledMap& f, const EuclideanSimplex& s, int p_index,
                               double xi, int samples, uint64_t seed = 17);

/// Enumeration oracle for compose_distortion: explicit sum over nonempty
/// subsets of products (test harness use).
double subset_sum_distortion_oracle(const std::vector<double>& xis);

}  // namespace tricert
