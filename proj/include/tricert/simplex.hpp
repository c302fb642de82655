#pragma once

#include "tricert/geom.hpp"

namespace tricert {

/// Closed Euclidean simplex given by its vertices (columns of an N x (j+1)
/// matrix). Vertex order defines orientation when j == N.
class EuclideanSimplex {
  public:
    explicit EuclideanSimplex(Matrix vertices);
    EuclideanSimplex(std::initializer_list<Vector> vertices);

    int dim() const { return int(V_.cols()) - 1; }
    int ambient_dim() const { return int(V_.rows()); }
    const Matrix& vertices() const { return V_; }
    Vector vertex(int i) const;
    Vector barycentre() const { return V_.rowwise().mean(); }

    /// Affine hull as a flat through vertex 0.
    Flat affine_hull() const;

  private:
    Matrix V_;
};

struct QualityMeasures {
    double longest_edge_L = 0.0;
    double shortest_edge = 0.0;
    double min_altitude_a = 0.0;
    double thickness_t = 1.0;  // 1 for 0-simplices
    double diameter = 0.0;     // equals longest edge for a simplex
    std::vector<double> per_vertex_altitudes;
};

/// Distance from vertex `vertex_index` to the affine hull of the opposite facet.
double altitude(const EuclideanSimplex& s, int vertex_index);

/// min altitude / (dim * longest edge); 1 for 0-simplices, 0 when degenerate.
double thickness(const EuclideanSimplex& s);

QualityMeasures quality_measures(const EuclideanSimplex& s);

enum class BarycentricMode { Project, Strict };

/// Barycentric coordinates of x (projected onto the affine hull in Project
/// mode; Strict mode errors when x is off the hull beyond tolerance).
std::vector<double> barycentric_coordinates(const EuclideanSimplex& s, const Vector& x,
                                            BarycentricMode mode = BarycentricMode::Project);

Vector point_from_barycentric(const EuclideanSimplex& s, const std::vector<double>& lambda);

/// Displacement bound 3*xi*L/t for maps fixing the vertices of a
/// full-dimensional simplex.
double trilateration_displacement_bound(const EuclideanSimplex& s, double xi);

/// (operator norm of (P^T)^{-1} with vertex 0 as origin, bound (sqrt(m) t L)^{-1}).
std::pair<double, double> matrix_P_inverse_norm_check(const EuclideanSimplex& s);

/// Uniform sample via normalized exponential spacings of barycentric coords.
Vector sample_uniform(const EuclideanSimplex& s, Rng& rng);
std::vector<double> sample_uniform_barycentric(int dim, Rng& rng);

}  // namespace tricert
