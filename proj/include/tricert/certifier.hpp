#pragma once

#include "tricert/atlas.hpp"
#include "tricert/degree.hpp"
#include "tricert/meshgen.hpp"

namespace tricert {

enum class CertMode { GenericMetric, SubmanifoldLfs, SubmanifoldReach, DifferentialControl };
enum class Verdict { Certified, Refuted, Inconclusive };

std::string to_string(CertMode mode);
std::string to_string(Verdict verdict);

struct CriterionResult {
    std::string name;
    bool holds = false;
    double lhs = 0, rhs = 0, margin = 0;  // margin = rhs - lhs
    std::vector<std::string> witnesses;
};

struct CertificationReport {
    CertMode mode = CertMode::GenericMetric;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<CriterionResult> criteria;

    const CriterionResult* find(const std::string& name) const;
    bool all_hold() const;
};

struct CertifierConfig {
    bool local_constants = true;          // per-star constants (default per the remark)
    bool use_dimension_sharp_bound = false;  // verdict uses m/(6(m+1)) instead of 1/12
    double delta_fraction = 0.5;          // boundary-separation delta, fraction of the window
    bool allow_empirical_jacobian_certification = false;
    bool partial_manifold_check_fails = false;  // m > 3 links unverified: fail vs warn
    int consequence_samples = 4;          // per top simplex
    int positivity_samples = 1;           // per top simplex
    uint64_t seed = 0x5eed;
    int witness_cap = 12;
};

/// Direct criteria of the metric triangulation theorem, for charts and
/// certified distortions supplied by the caller (aligned with the complex's
/// vertex ids).
CertificationReport certify_generic(const GeometricComplex& A, const std::vector<Chart>& charts,
                                    const std::vector<ChartDistortion>& distortions,
                                    const QualityBounds& quality,
                                    const CertifierConfig& config = {});

/// Submanifold criteria (lfs-scaled or reach-scaled constants) evaluated
/// directly from the mesh; streams per-vertex chart computations and is the
/// path meant for large inputs.
CertificationReport certify_submanifold(const TestManifold& M, const GeometricComplex& A,
                                        CertMode mode, const CertifierConfig& config = {});

/// Differential-control criteria: finite-difference Jacobians of the chart
/// maps on a per-simplex grid, compared against s0 t0 / (2 L0) and m t0.
/// Inconclusive by design unless configured otherwise.
CertificationReport certify_differential_control(const TestManifold& M, const GeometricComplex& A,
                                                 int jacobian_grid,
                                                 const CertifierConfig& config = {});

/// Enumerates preimages of the barycentre image of the largest chart simplex;
/// the criterion holds when there is exactly one.
CriterionResult point_covered_once_check(const Chart& chart, const TestManifold& M,
                                         const std::function<Vector(const Vector&)>& override_map =
                                             nullptr,
                                         int starts_per_simplex = 12);

/// Samples the shrunken star V_p and the star boundary; reports the minimum
/// pairwise image distance (positive = separated) and the analytic guarantee.
CriterionResult boundary_separation_check(const Chart& chart, const TestManifold& M, double delta,
                                          const std::function<Vector(const Vector&)>& override_map =
                                              nullptr,
                                          int samples = 160, uint64_t seed = 77);

struct HomeoProbeResult {
    bool injectivity_pass = false;
    std::int64_t collisions = 0;
    bool surjectivity_pass = false;
    std::int64_t inversion_failures = 0;
    double worst_inversion_residual = 0;
};

/// Empirical homeomorphism probe: sampled injectivity of the closest-point
/// projection on the carrier, and local inversion of random manifold points.
HomeoProbeResult homeomorphism_probe(const TestManifold& M, const GeometricComplex& A,
                                     std::int64_t injectivity_pairs, std::int64_t surjectivity_points,
                                     uint64_t seed = 99);

struct KeystoneResult {
    std::int64_t chart_simplices = 0;
    std::int64_t violations = 0;
    double worst_ratio = 0;  // max over chart simplices of empirical / certified
};

/// Certified-vs-empirical cross-check: measures the chart-map distortion on
/// every chart simplex (pairs_per_simplex sampled pairs) and compares against
/// the certified total. Zero violations expected.
KeystoneResult keystone_check(const TestManifold& M, const GeometricComplex& A,
                              const RrchChoice& policy, int pairs_per_simplex, uint64_t seed = 31);

}  // namespace tricert
