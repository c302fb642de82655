#include "tricert/lemmas.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>

#include "tricert/degree.hpp"
#include "tricert/distortion.hpp"

namespace tricert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTol = 1e-9;

struct CaseAgg {
    std::int64_t cases = 0, violations = 0;
    double worst_margin = kInf;
    double worst_lhs = 0, worst_rhs = 0;

    void check(double lhs, double rhs) {
        ++cases;
        double margin = rhs - lhs;
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_lhs = lhs;
            worst_rhs = rhs;
        }
        if (lhs > rhs + kTol) ++violations;
    }
    void merge(const CaseAgg& o) {
        cases += o.cases;
        violations += o.violations;
        if (o.worst_margin < worst_margin) {
            worst_margin = o.worst_margin;
            worst_lhs = o.worst_lhs;
            worst_rhs = o.worst_rhs;
        }
    }
};

// parallel sweep over case indices with deterministic per-case rngs
template <typename Fn>
CaseAgg sweep(std::int64_t cases, uint64_t seed, Fn&& per_case) {
    std::vector<CaseAgg> aggs(kMaxParallelChunks);
    int n_chunks = 0;
    parallel_chunks(cases, [&](std::int64_t b, std::int64_t e, int ci) {
        for (std::int64_t i = b; i < e; ++i) {
            Rng rng(seed, uint64_t(i));
            per_case(rng, aggs[size_t(ci)]);
        }
    }, &n_chunks);
    CaseAgg out;
    for (int ci = 0; ci < n_chunks; ++ci) out.merge(aggs[size_t(ci)]);
    return out;
}

// random nondegenerate simplex: j+1 vertices in [-1,1]^N scaled by `scale`,
// rejected until the thickness clears `t_floor`
EuclideanSimplex random_simplex(Rng& rng, int j, int N, double scale, double t_floor) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Matrix V(N, j + 1);
        for (int c = 0; c <= j; ++c)
            for (int r = 0; r < N; ++r) V(r, c) = scale * rng.uniform(-1.0, 1.0);
        EuclideanSimplex s(std::move(V));
        if (thickness(s) >= t_floor) return s;
    }
    throw SamplingFailed("random_simplex");
}

// random simplex with vertices on M within a ball of chord radius h around a
// sampled center
EuclideanSimplex random_manifold_simplex(const TestManifold& M, Rng& rng, int j, double h,
                                         double t_floor, int max_attempts = 400) {
    const int N = M.ambient_dim();
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        Vector c = M.sample_point(rng);
        Flat T = M.tangent_flat(c);
        Matrix V(N, j + 1);
        bool ok = true;
        for (int i = 0; i <= j && ok; ++i) {
            Vector off = Vector::Zero(M.intrinsic_dim());
            for (int d = 0; d < off.size(); ++d) off(d) = h * rng.uniform(-1.0, 1.0);
            Vector cand = c + T.basis() * off;
            try {
                V.col(i) = M.closest_point(cand).point_on_M;
            } catch (const OnMedialAxis&) {
                ok = false;
            }
        }
        if (!ok) continue;
        EuclideanSimplex s(std::move(V));
        auto q = quality_measures(s);
        if (q.longest_edge_L < 1e-6 * h) continue;
        if (q.thickness_t < t_floor) continue;
        return s;
    }
    throw SamplingFailed("random_manifold_simplex");
}

using ManifoldList = std::vector<std::unique_ptr<TestManifold>>;

ManifoldList parse_manifolds(const LemmaOptions& opts) {
    ManifoldList list;
    for (const auto& spec : opts.manifold_specs) list.push_back(TestManifold::parse(spec));
    return list;
}

// --- individual sweeps ----------------------------------------------------------

CaseAgg sweep_trilateration(const LemmaOptions& o) {
    return sweep(o.cases, o.seed ^ 0x101, [&](Rng& rng, CaseAgg& agg) {
        int m = 1 + int(rng.index(3));
        EuclideanSimplex s = random_simplex(rng, m, m, rng.uniform(0.5, 2.0), 0.05);
        auto q = quality_measures(s);
        // map fixing the vertices: x + delta * prod(barycentric coords) * dir
        Vector dir(m);
        for (int i = 0; i < m; ++i) dir(i) = rng.normal();
        dir.normalize();
        double delta = rng.uniform(0.0, 0.5) * q.longest_edge_L;
        auto F = [&](const Vector& x) {
            auto lam = barycentric_coordinates(s, x);
            double prod = 1;
            for (double l : lam) prod *= std::max(l, 0.0);
            return (x + delta * prod * std::pow(m + 1.0, m + 1.0) * dir).eval();
        };
        // measured distortion over (sample, vertex) and sample-sample pairs
        std::vector<Vector> samples;
        Rng srng(rng.next());
        for (int i = 0; i < 12; ++i) samples.push_back(sample_uniform(s, srng));
        samples.push_back(s.barycentre());
        std::vector<Vector> all = samples;
        for (int i = 0; i <= m; ++i) all.push_back(s.vertex(i));
        double xi = 0;
        for (size_t a = 0; a < all.size(); ++a)
            for (size_t b = a + 1; b < all.size(); ++b) {
                double d = (all[a] - all[b]).norm();
                if (d < 1e-12) continue;
                xi = std::max(xi, std::abs((F(all[a]) - F(all[b])).norm() / d - 1.0));
            }
        if (xi > 1.0) return;  // lemma hypothesis xi <= 1
        double bound = 3.0 * xi * q.longest_edge_L / q.thickness_t;
        for (const auto& x : samples) agg.check((x - F(x)).norm(), bound);
    });
}

CaseAgg sweep_compose_invert(const LemmaOptions& o) {
    return sweep(o.cases, o.seed ^ 0x202, [&](Rng& rng, CaseAgg& agg) {
        // composition formula against the subset-product enumeration
        int k = 1 + int(rng.index(6));
        std::vector<double> xis(static_cast<size_t>(k));
        for (double& x : xis) x = rng.uniform(0.0, 1.0);
        double lhs = compose_distortion(xis);
        double oracle = subset_sum_distortion_oracle(xis);
        double slack = 64 * std::numeric_limits<double>::epsilon() * (1.0 + oracle);
        agg.check(std::abs(lhs - oracle), slack);

        // inverse bound at the pair level for a sampled bi-Lipschitz map
        int m = 1 + int(rng.index(3));
        Matrix A = Matrix::Identity(m, m);
        for (int i = 0; i < m; ++i) A(i, i) = rng.uniform(0.6, 1.4);
        Vector a(m), u(m);
        for (int i = 0; i < m; ++i) {
            a(i) = rng.normal();
            u(i) = rng.normal();
        }
        u.normalize();
        double c = rng.uniform(0.0, 0.1) / std::max(1.0, a.norm());
        auto F = [&](const Vector& x) { return (A * x + c * std::sin(a.dot(x)) * u).eval(); };
        std::vector<Vector> pts;
        for (int i = 0; i < 8; ++i) {
            Vector x(m);
            for (int d = 0; d < m; ++d) x(d) = rng.uniform(-1.0, 1.0);
            pts.push_back(x);
        }
        double xi = 0;
        std::vector<double> ratios;
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j) {
                double d = (pts[i] - pts[j]).norm();
                if (d < 1e-9) continue;
                double r = (F(pts[i]) - F(pts[j])).norm() / d;
                ratios.push_back(r);
                xi = std::max(xi, std::abs(r - 1.0));
            }
        if (xi >= 1.0) return;
        double inv_bound = invert_distortion(xi);
        for (double r : ratios) agg.check(std::abs(1.0 / r - 1.0), inv_bound);
    });
}

CaseAgg sweep_differential_bound(const LemmaOptions& o) {
    return sweep(o.cases, o.seed ^ 0x303, [&](Rng& rng, CaseAgg& agg) {
        int m = 1 + int(rng.index(3));
        // planted linear map
        Matrix G(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) G(i, j) = rng.normal();
        Eigen::JacobiSVD<Matrix> svd(G, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Vector s(m);
        for (int i = 0; i < m; ++i) s(i) = rng.uniform(0.5, 1.5);
        Matrix A = svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
        auto F = [&](const Vector& x) { return (A * x).eval(); };
        // measured xi including the extreme singular directions
        Vector x0(m);
        for (int i = 0; i < m; ++i) x0(i) = rng.uniform(-1.0, 1.0);
        double xi = 0;
        for (int i = 0; i < m; ++i) {
            Vector v = svd.matrixV().col(i);
            double r = (F(x0 + v) - F(x0)).norm();
            xi = std::max(xi, std::abs(r - 1.0));
        }
        SampledMap f{F, std::nullopt, {}};
        auto spec = spectrum_from_distortion(f, x0, 1e-5);
        for (double sv : spec.singular_values) agg.check(std::abs(sv - 1.0), xi);
    });
}

CaseAgg sweep_tangent_distance(const LemmaOptions& o, const ManifoldList& manifolds) {
    CaseAgg out;
    for (const auto& M : manifolds) {
        out.merge(sweep(o.cases, o.seed ^ 0x404, [&](Rng& rng, CaseAgg& agg) {
            Vector x = M->sample_point(rng), y = M->sample_point(rng);
            if ((x - y).norm() < 1e-12) return;
            auto chk = dist_to_tangent_bounds_check(*M, x, y);
            agg.check(chk.lhs_sin_angle, chk.rhs_sin_bound);
            agg.check(chk.lhs_dist, chk.rhs_dist_bound);
        }));
    }
    return out;
}

CaseAgg sweep_tangent_variation(const LemmaOptions& o, const ManifoldList& manifolds) {
    CaseAgg out;
    for (const auto& M : manifolds) {
        double R = M->reach();
        out.merge(sweep(o.cases, o.seed ^ 0x505, [&](Rng& rng, CaseAgg& agg) {
            Vector x = M->sample_point(rng);
            Flat T = M->tangent_flat(x);
            Vector off = Vector::Zero(M->intrinsic_dim());
            for (int d = 0; d < off.size(); ++d) off(d) = rng.uniform(-0.5, 0.5) * R;
            Vector y;
            try {
                y = M->closest_point(x + T.basis() * off).point_on_M;
            } catch (const OnMedialAxis&) {
                return;
            }
            if ((x - y).norm() < 1e-12) return;
            try {
                auto chk = tangent_variation_check(*M, x, y, R);
                agg.check(chk.sin_angle, chk.sin_bound);
                agg.check(chk.angle, chk.angle_bound);
            } catch (const HypothesisViolated&) {
            }
        }));
    }
    return out;
}

CaseAgg sweep_whitney(const LemmaOptions& o) {
    return sweep(o.cases, o.seed ^ 0x606, [&](Rng& rng, CaseAgg& agg) {
        int N = 2 + int(rng.index(4));
        int k = 1 + int(rng.index(uint64_t(N - 1)));
        int j = 1 + int(rng.index(uint64_t(k)));
        // orthonormal K from a random matrix
        Matrix G(N, k);
        for (int i = 0; i < N; ++i)
            for (int c = 0; c < k; ++c) G(i, c) = rng.normal();
        Eigen::HouseholderQR<Matrix> qr(G);
        Matrix Q = qr.householderQ() * Matrix::Identity(N, k);
        Flat K = Flat::subspace(Q);
        // simplex with vertices near K
        double eta = rng.uniform(0.0, 0.05);
        Matrix V(N, j + 1);
        for (int c = 0; c <= j; ++c) {
            Vector in_k = Vector::Zero(N);
            for (int d = 0; d < k; ++d) in_k += rng.uniform(-1.0, 1.0) * Q.col(d);
            Vector out_k = Vector::Zero(N);
            if (k < N) {
                Flat comp = K.complement();
                for (int d = 0; d < N - k; ++d)
                    out_k += rng.uniform(-1.0, 1.0) * comp.basis().col(d);
                double nrm = out_k.norm();
                if (nrm > 0) out_k *= rng.uniform(0.0, eta) / nrm;
            }
            V.col(c) = in_k + out_k;
        }
        EuclideanSimplex s(std::move(V));
        if (thickness(s) < 0.02) return;
        auto [lhs, rhs] = whitney_angle_bound_check(s, K);
        agg.check(lhs, rhs);
    });
}

CaseAgg sweep_simplex_proximity(const LemmaOptions& o, const ManifoldList& manifolds) {
    CaseAgg out;
    for (const auto& M : manifolds) {
        double R = M->reach();
        out.merge(sweep(o.cases / 4 + 1, o.seed ^ 0x707, [&](Rng& rng, CaseAgg& agg) {
            int j = 1 + int(rng.index(uint64_t(M->intrinsic_dim())));
            EuclideanSimplex s = [&] {
                return random_manifold_simplex(*M, rng, j, rng.uniform(0.02, 0.25) * R, 0.05);
            }();
            try {
                auto rep = simplex_manifold_proximity(*M, s, R, 16, rng.next());
                agg.check(rep.max_dist_to_M, rep.bound);
                agg.check(rep.max_dist_to_tangent, rep.bound);
                agg.check(rep.max_vertex_to_projection, rep.vertex_projection_bound);
            } catch (const SimplexLeavesTube&) {
            }
        }));
    }
    return out;
}

CaseAgg sweep_simplex_tangent_angle(const LemmaOptions& o, const ManifoldList& manifolds) {
    CaseAgg out;
    for (const auto& M : manifolds) {
        double R = M->reach();
        out.merge(sweep(o.cases / 4 + 1, o.seed ^ 0x808, [&](Rng& rng, CaseAgg& agg) {
            int j = 1 + int(rng.index(uint64_t(M->intrinsic_dim())));
            EuclideanSimplex s = random_manifold_simplex(*M, rng, j, rng.uniform(0.02, 0.2) * R, 0.05);
            int p = int(rng.index(uint64_t(j + 1)));
            auto [l1, r1] = simplex_tangent_angle(*M, s, p, TangentAngleMode::AtVertex, R);
            agg.check(l1, r1);
            try {
                auto [l2, r2] =
                    simplex_tangent_angle(*M, s, p, TangentAngleMode::AlongProjection, R, 16,
                                          rng.next());
                agg.check(l2, r2);
            } catch (const HypothesisViolated&) {
            } catch (const SimplexLeavesTube&) {
            }
        }));
    }
    return out;
}

CaseAgg sweep_chart_map_distortion(const LemmaOptions& o, const ManifoldList& manifolds) {
    CaseAgg out;
    for (const auto& M : manifolds) {
        double R = M->reach();
        out.merge(sweep(o.cases / 4 + 1, o.seed ^ 0x909, [&](Rng& rng, CaseAgg& agg) {
            Vector p = M->sample_point(rng);
            double rho = rng.uniform(0.02, 0.45);
            double r = rho * R;
            Flat T = M->tangent_flat(p);
            std::vector<Vector> pts{p};
            for (int i = 0; i < 10; ++i) {
                Vector off = Vector::Zero(M->intrinsic_dim());
                for (int d = 0; d < off.size(); ++d) off(d) = rng.uniform(-1.0, 1.0) * r;
                try {
                    Vector cand = M->closest_point(p + T.basis() * off).point_on_M;
                    if ((cand - p).norm() < r) pts.push_back(cand);
                } catch (const OnMedialAxis&) {
                }
            }
            double bound = 4.0 * rho * rho;
            for (size_t i = 0; i < pts.size(); ++i)
                for (size_t k = i + 1; k < pts.size(); ++k) {
                    double d = (pts[i] - pts[k]).norm();
                    if (d < 1e-12) continue;
                    double img = (T.basis().transpose() * (pts[i] - pts[k])).norm();
                    agg.check(std::abs(img / d - 1.0), bound);
                }
        }));
    }
    return out;
}

CaseAgg sweep_secant_projection(const LemmaOptions& o, const ManifoldList& manifolds) {
    CaseAgg out;
    for (const auto& M : manifolds) {
        double R = M->reach();
        out.merge(sweep(o.cases / 4 + 1, o.seed ^ 0xa0a, [&](Rng& rng, CaseAgg& agg) {
            int j = 1 + int(rng.index(uint64_t(M->intrinsic_dim())));
            EuclideanSimplex s = random_manifold_simplex(*M, rng, j, rng.uniform(0.02, 0.2) * R, 0.08);
            auto q = quality_measures(s);
            int pi = int(rng.index(uint64_t(j + 1)));
            Vector p = s.vertex(pi);
            double rch_p = M->local_reach(p);
            if (!(q.longest_edge_L < q.thickness_t * rch_p)) return;
            Flat T = M->tangent_flat(p);
            double bound = std::pow(q.longest_edge_L / (q.thickness_t * rch_p), 2);
            Rng srng(rng.next());
            std::vector<Vector> pts;
            for (int i = 0; i <= j; ++i) pts.push_back(s.vertex(i));
            for (int i = 0; i < 10; ++i) pts.push_back(sample_uniform(s, srng));
            for (size_t i = 0; i < pts.size(); ++i)
                for (size_t k = i + 1; k < pts.size(); ++k) {
                    double d = (pts[i] - pts[k]).norm();
                    if (d < 1e-12) continue;
                    double img = (T.basis().transpose() * (pts[i] - pts[k])).norm();
                    agg.check(std::abs(img / d - 1.0), bound);
                }
        }));
    }
    return out;
}

CaseAgg sweep_closest_point_lipschitz(const LemmaOptions& o, const ManifoldList& manifolds) {
    CaseAgg out;
    for (const auto& M : manifolds) {
        double R = M->reach();
        out.merge(sweep(o.cases, o.seed ^ 0xb0b, [&](Rng& rng, CaseAgg& agg) {
            auto draw = [&](Vector& x, Vector& xp) {
                Vector base = M->sample_point(rng);
                Vector n = Vector::Zero(M->ambient_dim());
                Flat NF = M->normal_flat(base);
                for (int d = 0; d < NF.dim(); ++d)
                    n += rng.uniform(-1.0, 1.0) * NF.basis().col(d);
                double nn = n.norm();
                if (nn > 0) n *= rng.uniform(0.0, 0.8) * R / nn;
                x = base + n;
                xp = base;
            };
            Vector x, xc, y, yc;
            draw(x, xc);
            draw(y, yc);
            try {
                auto px = M->closest_point(x), py = M->closest_point(y);
                double a = std::max(px.distance, py.distance);
                double Rr = std::min(M->local_reach(px.point_on_M), M->local_reach(py.point_on_M));
                if (!(a < 0.95 * Rr)) return;
                double rhs = (x - y).norm() / (1.0 - a / Rr);
                agg.check((px.point_on_M - py.point_on_M).norm(), rhs);
            } catch (const OnMedialAxis&) {
            }
        }));
    }
    return out;
}

CaseAgg sweep_closest_point_simplex(const LemmaOptions& o, const ManifoldList& manifolds) {
    CaseAgg out;
    for (const auto& M : manifolds) {
        double R = M->reach();
        out.merge(sweep(o.cases / 4 + 1, o.seed ^ 0xc0c, [&](Rng& rng, CaseAgg& agg) {
            int j = 1 + int(rng.index(uint64_t(M->intrinsic_dim())));
            EuclideanSimplex s = random_manifold_simplex(*M, rng, j, rng.uniform(0.02, 0.15) * R, 0.08);
            auto q = quality_measures(s);
            if (!(q.longest_edge_L < q.thickness_t * R / 3.0)) return;
            Rng srng(rng.next());
            std::vector<Vector> pts;
            for (int i = 0; i <= j; ++i) pts.push_back(s.vertex(i));
            for (int i = 0; i < 10; ++i) pts.push_back(sample_uniform(s, srng));
            std::vector<Vector> proj;
            try {
                for (const auto& x : pts) proj.push_back(M->closest_point(x).point_on_M);
                require_ball_hypothesis(*M, proj, R);
            } catch (const Error&) {
                return;
            }
            double bound = 12.0 * q.longest_edge_L * q.longest_edge_L /
                           (q.thickness_t * q.thickness_t * R * R);
            for (size_t i = 0; i < pts.size(); ++i)
                for (size_t k = i + 1; k < pts.size(); ++k) {
                    double d = (pts[i] - pts[k]).norm();
                    if (d < 1e-12) continue;
                    agg.check(std::abs((proj[i] - proj[k]).norm() / d - 1.0), bound);
                }
        }));
    }
    return out;
}

CaseAgg sweep_strong_displacement(const LemmaOptions& o) {
    return sweep(o.cases, o.seed ^ 0xd0d, [&](Rng& rng, CaseAgg& agg) {
        int m = 1 + int(rng.index(3));
        EuclideanSimplex s = random_simplex(rng, m, m, rng.uniform(0.5, 2.0), 0.05);
        int pi = int(rng.index(uint64_t(m + 1)));
        Vector p = s.vertex(pi);
        // F = x + h(x) - h(p) with a certified bound on |dh|
        double xi_target = rng.uniform(0.01, 0.9);
        Vector a1(m), u1(m), a2(m), u2(m);
        for (int i = 0; i < m; ++i) {
            a1(i) = rng.normal();
            u1(i) = rng.normal();
            a2(i) = rng.normal();
            u2(i) = rng.normal();
        }
        u1.normalize();
        u2.normalize();
        double c1 = 0.6 * xi_target / std::max(1e-9, a1.norm());
        double c2 = 0.4 * xi_target / std::max(1e-9, a2.norm());
        double ph1 = rng.uniform(0.0, 6.28), ph2 = rng.uniform(0.0, 6.28);
        auto h = [&](const Vector& x) {
            return (c1 * std::sin(a1.dot(x) + ph1) * u1 + c2 * std::sin(a2.dot(x) + ph2) * u2)
                .eval();
        };
        Vector hp = h(p);
        auto F = [&](const Vector& x) { return (x + h(x) - hp).eval(); };
        Rng srng(rng.next());
        for (int i = 0; i < 12; ++i) {
            Vector x = sample_uniform(s, srng);
            agg.check((F(x) - x).norm(), xi_target * (x - p).norm());
        }
    });
}

// random disk fan around the origin (full star in the plane)
GeometricComplex random_fan(Rng& rng, int spokes) {
    GeometricComplex c(2, 2);
    Vector origin = Vector::Zero(2);
    c.add_vertex(origin);
    std::vector<double> angles;
    for (int i = 0; i < spokes; ++i) angles.push_back(2 * M_PI * (i + rng.uniform(0.1, 0.9)) / spokes);
    for (int i = 0; i < spokes; ++i) {
        double r = rng.uniform(0.6, 1.4);
        Vector v(2);
        v << r * std::cos(angles[size_t(i)]), r * std::sin(angles[size_t(i)]);
        c.add_vertex(v);
    }
    for (int i = 0; i < spokes; ++i) {
        VertexId k[3] = {0, VertexId(1 + i), VertexId(1 + (i + 1) % spokes)};
        c.add_top_simplex(k);
    }
    c.finalize();
    return c;
}

int winding_number(const std::vector<Vector>& polygon, const Vector& y) {
    double total = 0;
    for (size_t i = 0; i < polygon.size(); ++i) {
        Vector a = polygon[i] - y;
        Vector b = polygon[(i + 1) % polygon.size()] - y;
        total += std::atan2(a(0) * b(1) - a(1) * b(0), a.dot(b));
    }
    return int(std::lround(total / (2 * M_PI)));
}

CaseAgg sweep_cogent_degree(const LemmaOptions& o) {
    return sweep(o.cases, o.seed ^ 0xe0e, [&](Rng& rng, CaseAgg& agg) {
        int spokes = 5 + int(rng.index(5));
        GeometricComplex fan = random_fan(rng, spokes);
        // cogent (not necessarily positive) vertex images
        std::vector<Vector> images;
        for (VertexId v = 0; v < fan.n_vertices(); ++v) {
            Vector w = fan.vertex(v);
            Vector off(2);
            off << rng.uniform(-0.15, 0.15), rng.uniform(-0.15, 0.15);
            images.push_back(w + off);
        }
        OrientedPLMap map;
        try {
            map = OrientedPLMap::pl(fan, images);
            for (TopId t = 0; t < fan.n_top(); ++t) simplex_sign(map, t);  // cogency
        } catch (const Error&) {
            return;
        }
        Vector y(2);
        y << rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2);
        try {
            y = make_generic(map, y, rng);
        } catch (const SamplingFailed&) {
            return;
        }
        auto deg = degree_at_point(map, y);
        // oracle: winding number of the boundary image cycle
        std::vector<Vector> rim;
        for (int i = 0; i < spokes; ++i) rim.push_back(images[size_t(1 + i)]);
        double dist_rim = kInf;
        for (size_t i = 0; i < rim.size(); ++i) {
            Matrix seg(2, 2);
            seg.col(0) = rim[i];
            seg.col(1) = rim[(i + 1) % rim.size()];
            dist_rim = std::min(dist_rim, point_to_simplex_distance(y, seg));
        }
        if (dist_rim < 1e-8) return;
        int oracle = winding_number(rim, y);
        agg.check(std::abs(double(deg.value - oracle)), 0.0);
    });
}

CaseAgg sweep_degree_local_constancy(const LemmaOptions& o) {
    return sweep(std::max<std::int64_t>(o.cases / 10, 1), o.seed ^ 0xf0f,
                 [&](Rng& rng, CaseAgg& agg) {
                     int spokes = 5 + int(rng.index(4));
                     GeometricComplex fan = random_fan(rng, spokes);
                     std::vector<Vector> images;
                     for (VertexId v = 0; v < fan.n_vertices(); ++v) {
                         Vector w = fan.vertex(v);
                         Vector off(2);
                         off << rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1);
                         images.push_back(w + off);
                     }
                     OrientedPLMap map;
                     try {
                         map = OrientedPLMap::pl(fan, images);
                         auto rep = check_simplexwise_positive(map);
                         if (!rep.pass) return;
                         auto scan = locally_constant_degree_scan(map, 4, 24, rng.next());
                         agg.check(scan.pass ? 0.0 : 1.0, 0.0);
                     } catch (const Error&) {
                     }
                 });
}

using SweepFn = std::function<CaseAgg(const LemmaOptions&, const ManifoldList&)>;

const std::vector<std::pair<std::string, SweepFn>>& registry() {
    static const std::vector<std::pair<std::string, SweepFn>> reg = {
        {"trilateration", [](const LemmaOptions& o, const ManifoldList&) { return sweep_trilateration(o); }},
        {"compose-invert", [](const LemmaOptions& o, const ManifoldList&) { return sweep_compose_invert(o); }},
        {"differential-bound",
         [](const LemmaOptions& o, const ManifoldList&) { return sweep_differential_bound(o); }},
        {"tangent-distance",
         [](const LemmaOptions& o, const ManifoldList& m) { return sweep_tangent_distance(o, m); }},
        {"tangent-variation",
         [](const LemmaOptions& o, const ManifoldList& m) { return sweep_tangent_variation(o, m); }},
        {"whitney-angle", [](const LemmaOptions& o, const ManifoldList&) { return sweep_whitney(o); }},
        {"simplex-proximity",
         [](const LemmaOptions& o, const ManifoldList& m) { return sweep_simplex_proximity(o, m); }},
        {"simplex-tangent-angle",
         [](const LemmaOptions& o, const ManifoldList& m) { return sweep_simplex_tangent_angle(o, m); }},
        {"chart-map-distortion",
         [](const LemmaOptions& o, const ManifoldList& m) { return sweep_chart_map_distortion(o, m); }},
        {"secant-projection-distortion",
         [](const LemmaOptions& o, const ManifoldList& m) { return sweep_secant_projection(o, m); }},
        {"closest-point-lipschitz",
         [](const LemmaOptions& o, const ManifoldList& m) { return sweep_closest_point_lipschitz(o, m); }},
        {"closest-point-simplex-distortion",
         [](const LemmaOptions& o, const ManifoldList& m) { return sweep_closest_point_simplex(o, m); }},
        {"strong-displacement",
         [](const LemmaOptions& o, const ManifoldList&) { return sweep_strong_displacement(o); }},
        {"cogent-degree", [](const LemmaOptions& o, const ManifoldList&) { return sweep_cogent_degree(o); }},
        {"degree-local-constancy",
         [](const LemmaOptions& o, const ManifoldList&) { return sweep_degree_local_constancy(o); }},
    };
    return reg;
}

}  // namespace

std::vector<std::string> lemma_names() {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
}

LemmaResult run_lemma(const std::string& name, const LemmaOptions& opts) {
    for (const auto& [n, fn] : registry()) {
        if (n != name) continue;
        auto manifolds = parse_manifolds(opts);
        auto start = std::chrono::steady_clock::now();
        CaseAgg agg = fn(opts, manifolds);
        auto stop = std::chrono::steady_clock::now();
        LemmaResult r;
        r.name = name;
        r.cases = agg.cases;
        r.violations = agg.violations;
        r.worst_margin = agg.worst_margin == kInf ? 0 : agg.worst_margin;
        r.worst_lhs = agg.worst_lhs;
        r.worst_rhs = agg.worst_rhs;
        r.pass = agg.violations == 0 && agg.cases > 0;
        r.seconds = std::chrono::duration<double>(stop - start).count();
        return r;
    }
    throw BadRecipe("unknown lemma '" + name + "'");
}

std::vector<LemmaResult> run_all_lemmas(const LemmaOptions& opts) {
    std::vector<LemmaResult> out;
    for (const auto& name : lemma_names()) out.push_back(run_lemma(name, opts));
    return out;
}

}  // namespace tricert
