#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace tricert {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define TRICERT_ERROR_TYPE(Name)                                     \
    struct Name : Error {                                            \
        explicit Name(const std::string& msg = #Name) : Error(msg) {}\
    }

TRICERT_ERROR_TYPE(DimensionMismatch);
TRICERT_ERROR_TYPE(ZeroVector);
TRICERT_ERROR_TYPE(IndexOutOfRange);
TRICERT_ERROR_TYPE(DegenerateSimplex);
TRICERT_ERROR_TYPE(PointOffAffineHull);
TRICERT_ERROR_TYPE(NotFullDimensional);
TRICERT_ERROR_TYPE(XiOutOfRange);
TRICERT_ERROR_TYPE(UnknownSimplex);
TRICERT_ERROR_TYPE(UnknownVertex);
TRICERT_ERROR_TYPE(NotPure);
TRICERT_ERROR_TYPE(BadDimension);
TRICERT_ERROR_TYPE(PointOutsideStar);
TRICERT_ERROR_TYPE(DegenerateDomain);
TRICERT_ERROR_TYPE(XiNotLessThanOne);
TRICERT_ERROR_TYPE(StepTooSmall);
TRICERT_ERROR_TYPE(SpectrumBoundViolated);
TRICERT_ERROR_TYPE(VertexNotFixed);
TRICERT_ERROR_TYPE(DegenerateImage);
TRICERT_ERROR_TYPE(PointOnSkeletonImage);
TRICERT_ERROR_TYPE(SamplingFailed);
TRICERT_ERROR_TYPE(OnMedialAxis);
TRICERT_ERROR_TYPE(PointNotOnManifold);
TRICERT_ERROR_TYPE(HypothesisViolated);
TRICERT_ERROR_TYPE(SimplexLeavesTube);
TRICERT_ERROR_TYPE(ProjectedStarNotEmbedded);
TRICERT_ERROR_TYPE(StarNotFull);
TRICERT_ERROR_TYPE(PointOutsideChart);
TRICERT_ERROR_TYPE(PreconditionViolated);
TRICERT_ERROR_TYPE(InputNotManifold);
TRICERT_ERROR_TYPE(VerticesOffManifold);
TRICERT_ERROR_TYPE(ComponentWithoutVertex);
TRICERT_ERROR_TYPE(DeltaOutOfWindow);
TRICERT_ERROR_TYPE(NumericallyUnstableJacobian);
TRICERT_ERROR_TYPE(BadRecipe);
TRICERT_ERROR_TYPE(FormatError);
TRICERT_ERROR_TYPE(IoError);

#undef TRICERT_ERROR_TYPE

/// Central tolerance record; single knob for certification strictness.
struct Tolerances {
    double algebraic = 1e-10;             // orthonormality, barycentric sums, sign tests
    double geometric = 1e-8;              // on-manifold residuals, affine-hull distances
    double degenerate_thickness = 1e-12;  // below this a simplex is degenerate
    double inside_simplex = 1e-9;         // barycentric coordinate >= -inside_simplex counts as in
    double medial_axis = 1e-8;            // closest-point projection refuses inside this margin
    double skeleton_distance = 1e-8;      // degree queries must stay this far from skeleton images
    double preimage_interior = 1e-10;     // interiority margin for signed preimage counting
};

inline const Tolerances& tol() {
    static const Tolerances t{};
    return t;
}

// --- deterministic RNG -------------------------------------------------------
//
// Splitmix-based generator with explicit stream splitting so that parallel
// sweeps are reproducible regardless of thread count: item i of a sweep uses
// Rng(seed, i) no matter which thread runs it.

struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) { next(); }
    Rng(uint64_t seed, uint64_t stream) : state(mix(seed) ^ mix(stream * 0xbf58476d1ce4e5b9ULL + 1)) { next(); }

    static uint64_t mix(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        return mix(state);
    }

    /// uniform in [0,1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    /// uniform in [a,b)
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    /// integer in [0,n)
    uint64_t index(uint64_t n) { return n ? next() % n : 0; }
    /// standard normal (Box-Muller)
    double normal() {
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0x1.0p-60) u1 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }
    /// Exp(1)
    double exponential() {
        double u = uniform();
        while (u <= 0.0) u = uniform();
        return -std::log1p(-u);
    }
};

// --- parallelism -------------------------------------------------------------

/// Number of worker threads: hardware concurrency capped by env THREADS.
int worker_threads();

/// Runs fn(i) for i in [0,n). Work is chunked; fn must be reentrant and any
/// reduction must be order-independent or keyed by i for determinism.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

/// Chunked variant: fn(begin, end, chunk_index) over a fixed chunk grid, so
/// per-chunk accumulators can be merged in chunk order deterministically.
void parallel_chunks(std::int64_t n, const std::function<void(std::int64_t, std::int64_t, int)>& fn,
                     int* n_chunks_out = nullptr);

constexpr int kMaxParallelChunks = 256;

}  // namespace tricert
