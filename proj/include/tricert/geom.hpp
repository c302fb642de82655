#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tricert/common.hpp"

namespace tricert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Affine flat in R^N: base point plus an orthonormal basis of the direction
/// subspace (N x k, k = flat dimension; k = 0 is a single point).
/// Construction re-orthonormalizes with modified Gram-Schmidt when the input
/// basis drifts beyond the algebraic tolerance.
class Flat {
  public:
    Flat(Vector base, Matrix basis);

    /// Linear subspace through the origin.
    static Flat subspace(Matrix basis);
    /// Span of a single direction through the origin.
    static Flat line(const Vector& direction);

    int ambient_dim() const { return int(base_.size()); }
    int dim() const { return int(basis_.cols()); }
    const Vector& base() const { return base_; }
    const Matrix& basis() const { return basis_; }

    /// Affine orthogonal projection of x onto the flat.
    Vector project(const Vector& x) const;
    /// Distance from x to the flat.
    double distance(const Vector& x) const;
    /// Orthogonal complement through the same base point.
    Flat complement() const;

  private:
    Vector base_;
    Matrix basis_;  // orthonormal columns
};

struct LinearMapSpectrum {
    std::vector<double> singular_values;  // descending
    double operator_norm = 0.0;           // s_1
    double min_singular = 0.0;            // s_m
};

/// Largest principal angle of K against L, in [0, pi/2].
/// Requires dim K <= dim L (flats treated as linear subspaces, bases ignored).
double angle_between_flats(const Flat& K, const Flat& L);

/// Angle between a nonzero vector and a flat's direction subspace; pi/2 when
/// the projection of u vanishes.
double angle_vector_flat(const Vector& u, const Flat& L);

/// Both sides of the complement identity, for harness consumption:
///  - dim K == dim L: (angle(L-perp, K-perp), angle(K, L))
///  - L of codimension 1: (angle(L-perp, K), pi/2 - angle(K, L))
std::pair<double, double> complement_angle_identity_check(const Flat& K, const Flat& L);

Vector orthogonal_project(const Vector& x, const Flat& L);

LinearMapSpectrum svd_spectrum(const Matrix& A);

/// Orthonormal basis of the affine hull directions of a point set (columns
/// are points); rank determined with the given relative tolerance.
Matrix span_orthonormal(const Matrix& points, double rel_tol = 1e-12);

}  // namespace tricert
