#pragma once

#include <functional>
#include <optional>

#include "tricert/complex.hpp"

namespace tricert {

/// Map on a full-dimensional complex (ambient dim == complex dim) given by
/// vertex images, extended piecewise linearly; an optional per-simplex smooth
/// evaluator overrides the PL extension for general cogent maps.
struct OrientedPLMap {
    const GeometricComplex* source = nullptr;  // N == m required
    std::vector<Vector> vertex_images;         // indexed by VertexId
    /// optional: smooth evaluator (x in |source|) for general cogent maps
    std::function<Vector(const Vector&)> evaluator;

    static OrientedPLMap pl(const GeometricComplex& c, std::vector<Vector> images);
    static OrientedPLMap identity(const GeometricComplex& c);

    int dim() const { return source->dim(); }
    Vector image_of_vertex(VertexId v) const { return vertex_images[size_t(v)]; }
    /// Image of a point under the PL extension (x located in top t).
    Vector apply_in_top(TopId t, const Vector& x) const;
};

struct DegreeResult {
    int value = 0;
    std::vector<Vector> preimage_points;
    std::vector<int> signs;
};

/// Orientation sign (+1/-1) of the map restricted to top simplex t; canonical
/// ambient orientation on the source side.
int simplex_sign(const OrientedPLMap& map, TopId t);

/// Signed preimage count of y; y must be off the image of the (m-1)-skeleton.
DegreeResult degree_at_point(const OrientedPLMap& map, const Vector& y);

/// Distance from y to the image of the (m-1)-skeleton.
double skeleton_image_distance(const OrientedPLMap& map, const Vector& y);

/// Perturbs y by offsets up to 1e-7 until it clears the skeleton image by
/// 1e-8; errors after 100 attempts.
Vector make_generic(const OrientedPLMap& map, Vector y, Rng& rng);

struct SimplexwisePositiveReport {
    bool pass = false;
    std::vector<TopId> negative;
    std::vector<TopId> degenerate;
};

SimplexwisePositiveReport check_simplexwise_positive(const OrientedPLMap& map);

struct DegreeComponentScan {
    std::int64_t cells = 0;
    int samples = 0;
    int preimage_count = -1;  // -1: no generic sample found
    bool constant = true;
};

struct DegreeScanReport {
    bool pass = false;
    std::vector<DegreeComponentScan> components;
    int grid_resolution = 0;
};

/// Samples R^m minus the boundary image on a grid, flood-fills connected
/// components, and checks per-component constancy of (unsigned) preimage
/// counts. Requires the map to be simplexwise positive.
DegreeScanReport locally_constant_degree_scan(const OrientedPLMap& map, int component_samples,
                                              int grid_resolution = 64, uint64_t seed = 23);

/// Unsigned preimage count (interior preimages across all tops).
int preimage_count(const OrientedPLMap& map, const Vector& y);

/// Distance from a point to the convex hull of a simplex given by columns.
double point_to_simplex_distance(const Vector& y, const Matrix& simplex_points);

}  // namespace tricert
