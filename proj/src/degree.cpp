#include "tricert/degree.hpp"

#include <cmath>
#include <limits>

namespace tricert {

OrientedPLMap OrientedPLMap::pl(const GeometricComplex& c, std::vector<Vector> images) {
    if (c.dim() != c.ambient_dim()) throw NotFullDimensional("OrientedPLMap needs N == m");
    if (std::int64_t(images.size()) != c.n_vertices())
        throw DimensionMismatch("vertex_images size != vertex count");
    for (const auto& w : images)
        if (w.size() != c.ambient_dim()) throw DimensionMismatch("vertex image dim");
    return OrientedPLMap{&c, std::move(images), nullptr};
}

OrientedPLMap OrientedPLMap::identity(const GeometricComplex& c) {
    std::vector<Vector> images;
    images.reserve(size_t(c.n_vertices()));
    for (VertexId v = 0; v < c.n_vertices(); ++v) images.push_back(c.vertex(v));
    return pl(c, std::move(images));
}

Vector OrientedPLMap::apply_in_top(TopId t, const Vector& x) const {
    EuclideanSimplex s = source->realize_top(t);
    auto lam = barycentric_coordinates(s, x, BarycentricMode::Project);
    auto k = source->top(t);
    Vector out = Vector::Zero(source->ambient_dim());
    for (int i = 0; i <= source->dim(); ++i) out += lam[size_t(i)] * vertex_images[size_t(k[i])];
    return out;
}

namespace {

double normalized_det(const Matrix& edge_cols, double& scale_out) {
    double det = edge_cols.determinant();
    double scale = 0.0;
    for (int i = 0; i < edge_cols.cols(); ++i) scale = std::max(scale, edge_cols.col(i).norm());
    scale_out = scale;
    return det;
}

Matrix edge_matrix(const GeometricComplex& c, TopId t, const std::vector<Vector>& images,
                   bool use_images) {
    const int m = c.dim();
    auto k = c.top(t);
    Matrix E(m, m);
    if (use_images) {
        for (int i = 1; i <= m; ++i) E.col(i - 1) = images[size_t(k[i])] - images[size_t(k[0])];
    } else {
        for (int i = 1; i <= m; ++i) E.col(i - 1) = c.vertex(k[i]) - c.vertex(k[0]);
    }
    return E;
}

}  // namespace

int simplex_sign(const OrientedPLMap& map, TopId t) {
    const GeometricComplex& c = *map.source;
    const int m = c.dim();
    double sv, sw;
    double detV = normalized_det(edge_matrix(c, t, map.vertex_images, false), sv);
    double detW = normalized_det(edge_matrix(c, t, map.vertex_images, true), sw);
    double v_floor = 1e-12 * std::pow(std::max(sv, 1e-300), m);
    double w_floor = 1e-12 * std::pow(std::max(sw, 1e-300), m);
    if (std::abs(detV) <= v_floor) throw DegenerateSimplex("degenerate source simplex");
    if (std::abs(detW) <= w_floor) throw DegenerateImage();
    return (detV > 0) == (detW > 0) ? +1 : -1;
}

double point_to_simplex_distance(const Vector& y, const Matrix& P) {
    const int n = int(P.cols());
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        int cnt = __builtin_popcount(mask);
        Matrix S(P.rows(), cnt);
        int c = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) S.col(c++) = P.col(i);
        if (cnt == 1) {
            best = std::min(best, (y - S.col(0)).norm());
            continue;
        }
        Matrix E(P.rows(), cnt - 1);
        for (int i = 1; i < cnt; ++i) E.col(i - 1) = S.col(i) - S.col(0);
        Vector rhs = y - S.col(0);
        Vector lam_tail = (E.transpose() * E).ldlt().solve(E.transpose() * rhs);
        double lam0 = 1.0;
        bool ok = true;
        for (int i = 0; i < cnt - 1; ++i) {
            lam0 -= lam_tail(i);
            ok = ok && lam_tail(i) >= -1e-12;
        }
        ok = ok && lam0 >= -1e-12;
        if (ok) best = std::min(best, (rhs - E * lam_tail).norm());
    }
    return best;
}

double skeleton_image_distance(const OrientedPLMap& map, const Vector& y) {
    const GeometricComplex& c = *map.source;
    const int m = c.dim();
    double best = std::numeric_limits<double>::infinity();
    Matrix facet_img(m, m);
    for (TopId t = 0; t < c.n_top(); ++t) {
        auto k = c.top(t);
        for (int omit = 0; omit <= m; ++omit) {
            int col = 0;
            for (int i = 0; i <= m; ++i)
                if (i != omit) facet_img.col(col++) = map.vertex_images[size_t(k[i])];
            best = std::min(best, point_to_simplex_distance(y, facet_img));
        }
    }
    return best;
}

Vector make_generic(const OrientedPLMap& map, Vector y, Rng& rng) {
    for (int attempt = 0; attempt < 100; ++attempt) {
        if (skeleton_image_distance(map, y) >= tol().skeleton_distance) return y;
        Vector off(y.size());
        for (int i = 0; i < y.size(); ++i) off(i) = rng.uniform(-1e-7, 1e-7);
        y += off;
    }
    throw SamplingFailed("make_generic: no generic point near query");
}

namespace {

// Interior PL preimages of y in top t; appends (point, sign).
void pl_preimages_in_top(const OrientedPLMap& map, TopId t, const Vector& y,
                         std::vector<Vector>& points, std::vector<int>& signs) {
    const GeometricComplex& c = *map.source;
    const int m = c.dim();
    auto k = c.top(t);
    Matrix W = edge_matrix(c, t, map.vertex_images, true);
    Vector rhs = y - map.vertex_images[size_t(k[0])];
    Vector lam_tail = W.partialPivLu().solve(rhs);
    double lam0 = 1.0;
    for (int i = 0; i < m; ++i) lam0 -= lam_tail(i);
    bool interior = lam0 > tol().preimage_interior;
    for (int i = 0; i < m; ++i) interior = interior && lam_tail(i) > tol().preimage_interior;
    if (!interior) return;
    Vector x = c.vertex(k[0]).eval();
    for (int i = 1; i <= m; ++i) x += lam_tail(i - 1) * (c.vertex(k[i]) - c.vertex(k[0]));
    points.push_back(std::move(x));
    signs.push_back(simplex_sign(map, t));
}

// Gauss-Newton preimage search for evaluator-backed maps.
void smooth_preimages_in_top(const OrientedPLMap& map, TopId t, const Vector& y,
                             std::vector<Vector>& points, std::vector<int>& signs) {
    const GeometricComplex& c = *map.source;
    const int m = c.dim();
    EuclideanSimplex s = c.realize_top(t);
    double L = quality_measures(s).longest_edge_L;
    double h = 1e-6 * std::max(L, 1e-9);
    auto fd_jac = [&](const Vector& x) {
        Matrix J(m, m);
        Vector xp, xm;
        for (int i = 0; i < m; ++i) {
            xp = x;
            xm = x;
            xp(i) += h;
            xm(i) -= h;
            J.col(i) = (map.evaluator(xp) - map.evaluator(xm)) / (2 * h);
        }
        return J;
    };
    // multistart grid in barycentric coordinates
    Rng rng(uint64_t(t) * 7919 + 13);
    std::vector<Vector> starts;
    starts.push_back(s.barycentre());
    for (int i = 0; i < 8; ++i) starts.push_back(sample_uniform(s, rng));
    for (auto x : starts) {
        for (int it = 0; it < 60; ++it) {
            Vector r = map.evaluator(x) - y;
            if (r.norm() < 1e-11 * std::max(1.0, L)) break;
            Matrix J = fd_jac(x);
            Vector step = J.partialPivLu().solve(r);
            if (!step.allFinite()) break;
            // stay within the simplex
            Vector cand = x - step;
            auto lam = barycentric_coordinates(s, cand, BarycentricMode::Project);
            bool in = true;
            for (double l : lam) in = in && l > -0.2;
            if (!in) {
                for (double& l : lam) l = std::max(l, 0.0);
                double sum = 0;
                for (double l : lam) sum += l;
                for (double& l : lam) l /= sum;
                cand = point_from_barycentric(s, lam);
            }
            if ((cand - x).norm() < 1e-15 * std::max(1.0, L)) {
                x = cand;
                break;
            }
            x = cand;
        }
        if ((map.evaluator(x) - y).norm() > 1e-9 * std::max(1.0, L)) continue;
        auto lam = barycentric_coordinates(s, x, BarycentricMode::Project);
        bool interior = true;
        for (double l : lam) interior = interior && l > tol().preimage_interior;
        if (!interior) continue;
        bool dup = false;
        for (const auto& p : points) dup = dup || (p - x).norm() < 1e-7 * std::max(1.0, L);
        if (dup) continue;
        points.push_back(x);
        signs.push_back(fd_jac(x).determinant() > 0 ? +1 : -1);
    }
}

}  // namespace

DegreeResult degree_at_point(const OrientedPLMap& map, const Vector& y) {
    const GeometricComplex& c = *map.source;
    if (y.size() != c.ambient_dim()) throw DimensionMismatch("degree_at_point");
    if (!map.evaluator && skeleton_image_distance(map, y) < tol().skeleton_distance)
        throw PointOnSkeletonImage();
    DegreeResult out;
    for (TopId t = 0; t < c.n_top(); ++t) {
        if (map.evaluator)
            smooth_preimages_in_top(map, t, y, out.preimage_points, out.signs);
        else
            pl_preimages_in_top(map, t, y, out.preimage_points, out.signs);
    }
    out.value = 0;
    for (int s : out.signs) out.value += s;
    return out;
}

int preimage_count(const OrientedPLMap& map, const Vector& y) {
    return int(degree_at_point(map, y).signs.size());
}

SimplexwisePositiveReport check_simplexwise_positive(const OrientedPLMap& map) {
    SimplexwisePositiveReport rep;
    for (TopId t = 0; t < map.source->n_top(); ++t) {
        try {
            if (simplex_sign(map, t) < 0) rep.negative.push_back(t);
        } catch (const DegenerateImage&) {
            rep.degenerate.push_back(t);
        }
    }
    rep.pass = rep.negative.empty() && rep.degenerate.empty();
    return rep;
}

DegreeScanReport locally_constant_degree_scan(const OrientedPLMap& map, int component_samples,
                                              int grid_resolution, uint64_t seed) {
    auto positive = check_simplexwise_positive(map);
    if (!positive.pass) throw PreconditionViolated("map is not simplexwise positive");
    const GeometricComplex& c = *map.source;
    const int m = c.dim();
    if (m > 3) throw BadDimension("degree scan supports m <= 3");

    // bounding box of the image, expanded so the outside component is present
    Vector lo = map.vertex_images[0], hi = map.vertex_images[0];
    for (const auto& w : map.vertex_images) {
        lo = lo.cwiseMin(w);
        hi = hi.cwiseMax(w);
    }
    Vector margin = 0.15 * (hi - lo).cwiseMax(1e-6);
    lo -= margin;
    hi += margin;
    const int g = grid_resolution;
    Vector cell = (hi - lo) / double(g);
    double cell_diag = cell.norm();

    // boundary image simplices
    auto bfacets = c.boundary_facets();
    std::vector<Matrix> boundary_images;
    for (auto& [facet, t] : bfacets) {
        Matrix P(m, facet.size());
        for (size_t i = 0; i < facet.size(); ++i) P.col(int(i)) = map.vertex_images[size_t(facet[i])];
        boundary_images.push_back(std::move(P));
    }
    auto boundary_dist = [&](const Vector& y) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& P : boundary_images) best = std::min(best, point_to_simplex_distance(y, P));
        return best;
    };

    std::int64_t total_cells = 1;
    for (int i = 0; i < m; ++i) total_cells *= g;
    std::vector<int> comp(size_t(total_cells), -2);  // -2 unvisited, -1 blocked
    auto cell_center = [&](std::int64_t id) {
        Vector y(m);
        std::int64_t rest = id;
        for (int i = 0; i < m; ++i) {
            y(i) = lo(i) + (double(rest % g) + 0.5) * cell(i);
            rest /= g;
        }
        return y;
    };
    for (std::int64_t id = 0; id < total_cells; ++id)
        if (boundary_dist(cell_center(id)) < 0.75 * cell_diag) comp[size_t(id)] = -1;

    // flood fill
    int n_comp = 0;
    std::vector<std::int64_t> stack;
    for (std::int64_t seed_cell = 0; seed_cell < total_cells; ++seed_cell) {
        if (comp[size_t(seed_cell)] != -2) continue;
        int id = n_comp++;
        comp[size_t(seed_cell)] = id;
        stack.push_back(seed_cell);
        while (!stack.empty()) {
            std::int64_t cur = stack.back();
            stack.pop_back();
            std::int64_t stride = 1;
            std::int64_t rest = cur;
            for (int i = 0; i < m; ++i) {
                std::int64_t coord = rest % g;
                for (int d = -1; d <= 1; d += 2) {
                    std::int64_t nc = coord + d;
                    if (nc < 0 || nc >= g) continue;
                    std::int64_t nb = cur + d * stride;
                    if (comp[size_t(nb)] == -2) {
                        comp[size_t(nb)] = id;
                        stack.push_back(nb);
                    }
                }
                rest /= g;
                stride *= g;
            }
        }
    }

    DegreeScanReport rep;
    rep.grid_resolution = g;
    rep.components.resize(size_t(n_comp));
    std::vector<std::vector<std::int64_t>> cells_of(static_cast<size_t>(n_comp));
    for (std::int64_t id = 0; id < total_cells; ++id)
        if (comp[size_t(id)] >= 0) {
            rep.components[size_t(comp[size_t(id)])].cells++;
            cells_of[size_t(comp[size_t(id)])].push_back(id);
        }

    Rng rng(seed);
    int placed = 0;
    for (int ci = 0; ci < n_comp; ++ci) {
        auto& comp_rep = rep.components[size_t(ci)];
        int want = std::min<std::int64_t>(component_samples, std::int64_t(cells_of[size_t(ci)].size()));
        for (int s = 0; s < want; ++s) {
            std::int64_t id = cells_of[size_t(ci)][size_t(rng.index(cells_of[size_t(ci)].size()))];
            Vector y = cell_center(id);
            try {
                y = make_generic(map, y, rng);
            } catch (const SamplingFailed&) {
                continue;
            }
            // the perturbed point must stay clear of the boundary image so it
            // remains in the same component
            if (boundary_dist(y) < 0.5 * cell_diag) continue;
            int count = preimage_count(map, y);
            ++placed;
            ++comp_rep.samples;
            if (comp_rep.preimage_count < 0)
                comp_rep.preimage_count = count;
            else if (comp_rep.preimage_count != count)
                comp_rep.constant = false;
        }
    }
    if (placed == 0) throw SamplingFailed("degree scan placed no generic samples");
    rep.pass = true;
    for (const auto& cr : rep.components) rep.pass = rep.pass && cr.constant;
    return rep;
}

}  // namespace tricert
