#include "tricert/simplex.hpp"

#include <cmath>
#include <limits>

namespace tricert {

EuclideanSimplex::EuclideanSimplex(Matrix vertices) : V_(std::move(vertices)) {
    if (V_.cols() < 1) throw BadDimension("simplex needs at least one vertex");
    if (V_.cols() > V_.rows() + 1) throw DimensionMismatch("simplex dim exceeds ambient dim");
    if (!V_.allFinite()) throw Error("simplex: non-finite vertex");
}

EuclideanSimplex::EuclideanSimplex(std::initializer_list<Vector> vertices)
    : EuclideanSimplex([&] {
          auto it = vertices.begin();
          Matrix V(it->size(), vertices.size());
          int j = 0;
          for (const auto& v : vertices) V.col(j++) = v;
          return V;
      }()) {}

Vector EuclideanSimplex::vertex(int i) const {
    if (i < 0 || i > dim()) throw IndexOutOfRange("simplex vertex index");
    return V_.col(i);
}

Flat EuclideanSimplex::affine_hull() const { return Flat(V_.col(0), span_orthonormal(V_)); }

double altitude(const EuclideanSimplex& s, int vertex_index) {
    const int j = s.dim();
    if (j < 1) throw BadDimension("altitude needs dim >= 1");
    if (vertex_index < 0 || vertex_index > j) throw IndexOutOfRange("altitude vertex index");
    const Matrix& V = s.vertices();
    Matrix facet(V.rows(), j);
    int c = 0;
    for (int i = 0; i <= j; ++i)
        if (i != vertex_index) facet.col(c++) = V.col(i);
    Matrix B = span_orthonormal(facet);
    Vector d = V.col(vertex_index) - facet.col(0);
    if (B.cols() == 0) return d.norm();
    return (d - B * (B.transpose() * d)).norm();
}

namespace {

void edge_extremes(const Matrix& V, double& longest, double& shortest) {
    longest = 0.0;
    shortest = std::numeric_limits<double>::infinity();
    const int n = int(V.cols());
    if (n < 2) {
        shortest = 0.0;
        return;
    }
    for (int i = 0; i < n; ++i)
        for (int k = i + 1; k < n; ++k) {
            double d = (V.col(i) - V.col(k)).norm();
            longest = std::max(longest, d);
            shortest = std::min(shortest, d);
        }
}

}  // namespace

double thickness(const EuclideanSimplex& s) {
    const int j = s.dim();
    if (j == 0) return 1.0;
    double L, smin;
    edge_extremes(s.vertices(), L, smin);
    if (L <= 0.0) return 0.0;
    double a = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= j; ++i) a = std::min(a, altitude(s, i));
    return a / (j * L);
}

QualityMeasures quality_measures(const EuclideanSimplex& s) {
    QualityMeasures q;
    const int j = s.dim();
    edge_extremes(s.vertices(), q.longest_edge_L, q.shortest_edge);
    q.diameter = q.longest_edge_L;
    if (j == 0) {
        q.min_altitude_a = 0.0;
        q.thickness_t = 1.0;
        return q;
    }
    q.per_vertex_altitudes.resize(j + 1);
    double a = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= j; ++i) {
        q.per_vertex_altitudes[i] = altitude(s, i);
        a = std::min(a, q.per_vertex_altitudes[i]);
    }
    q.min_altitude_a = a;
    q.thickness_t = q.longest_edge_L > 0.0 ? a / (j * q.longest_edge_L) : 0.0;
    return q;
}

std::vector<double> barycentric_coordinates(const EuclideanSimplex& s, const Vector& x,
                                            BarycentricMode mode) {
    const int j = s.dim();
    if (x.size() != s.ambient_dim()) throw DimensionMismatch("barycentric_coordinates");
    if (j == 0) {
        if (mode == BarycentricMode::Strict &&
            (x - s.vertex(0)).norm() > tol().geometric)
            throw PointOffAffineHull();
        return {1.0};
    }
    if (thickness(s) < tol().degenerate_thickness) throw DegenerateSimplex();
    const Matrix& V = s.vertices();
    Matrix E(V.rows(), j);
    for (int i = 1; i <= j; ++i) E.col(i - 1) = V.col(i) - V.col(0);
    Vector rhs = x - V.col(0);
    Vector lam_tail = E.colPivHouseholderQr().solve(rhs);
    if (mode == BarycentricMode::Strict) {
        double resid = (rhs - E * lam_tail).norm();
        double L = 0, smin = 0;
        edge_extremes(V, L, smin);
        if (resid > tol().geometric * std::max(1.0, L)) throw PointOffAffineHull();
    }
    std::vector<double> lam(j + 1);
    double sum_tail = 0.0;
    for (int i = 0; i < j; ++i) {
        lam[i + 1] = lam_tail(i);
        sum_tail += lam_tail(i);
    }
    lam[0] = 1.0 - sum_tail;
    return lam;
}

Vector point_from_barycentric(const EuclideanSimplex& s, const std::vector<double>& lambda) {
    if (int(lambda.size()) != s.dim() + 1) throw DimensionMismatch("point_from_barycentric");
    Vector x = Vector::Zero(s.ambient_dim());
    for (int i = 0; i <= s.dim(); ++i) x += lambda[i] * s.vertices().col(i);
    return x;
}

double trilateration_displacement_bound(const EuclideanSimplex& s, double xi) {
    if (s.dim() != s.ambient_dim()) throw NotFullDimensional("trilateration bound needs j == N");
    if (xi < 0.0 || xi > 1.0) throw XiOutOfRange("trilateration bound needs 0 <= xi <= 1");
    double t = thickness(s);
    if (t < tol().degenerate_thickness) throw DegenerateSimplex();
    double L, smin;
    edge_extremes(s.vertices(), L, smin);
    return 3.0 * xi * L / t;
}

std::pair<double, double> matrix_P_inverse_norm_check(const EuclideanSimplex& s) {
    const int m = s.dim();
    if (m != s.ambient_dim()) throw NotFullDimensional("matrix_P_inverse_norm_check");
    double t = thickness(s);
    if (t < tol().degenerate_thickness) throw DegenerateSimplex();
    Matrix P(m, m);
    for (int i = 1; i <= m; ++i) P.col(i - 1) = s.vertices().col(i) - s.vertices().col(0);
    auto spec = svd_spectrum(P);
    double actual = 1.0 / spec.min_singular;
    double L, smin;
    edge_extremes(s.vertices(), L, smin);
    double bound = 1.0 / (std::sqrt(double(m)) * t * L);
    return {actual, bound};
}

std::vector<double> sample_uniform_barycentric(int dim, Rng& rng) {
    std::vector<double> lam(dim + 1);
    double sum = 0.0;
    for (double& l : lam) {
        l = rng.exponential();
        sum += l;
    }
    for (double& l : lam) l /= sum;
    return lam;
}

Vector sample_uniform(const EuclideanSimplex& s, Rng& rng) {
    return point_from_barycentric(s, sample_uniform_barycentric(s.dim(), rng));
}

}  // namespace tricert
