#include "tricert/certifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <limits>
#include <mutex>
#include <sstream>

namespace tricert {

std::string to_string(CertMode mode) {
    switch (mode) {
        case CertMode::GenericMetric: return "generic";
        case CertMode::SubmanifoldLfs: return "lfs";
        case CertMode::SubmanifoldReach: return "reach";
        case CertMode::DifferentialControl: return "diff";
    }
    return "?";
}

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Certified: return "certified";
        case Verdict::Refuted: return "refuted";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

const CriterionResult* CertificationReport::find(const std::string& name) const {
    for (const auto& c : criteria)
        if (c.name == name) return &c;
    return nullptr;
}

bool CertificationReport::all_hold() const {
    for (const auto& c : criteria)
        if (!c.holds) return false;
    return true;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// --- hash grid over vertex coordinates (N <= 3 used; higher dims fold) --------

struct HashGrid {
    double cell = 1;
    Vector lo;
    int N = 0;
    std::vector<uint64_t> keys;      // sorted
    std::vector<VertexId> ids;       // aligned with keys
    std::vector<std::int64_t> cuts;  // group starts in keys/ids
    std::vector<uint64_t> uniq;

    static uint64_t pack(std::int64_t ix, std::int64_t iy, std::int64_t iz) {
        return Rng::mix(uint64_t(ix) * 0x9e3779b97f4a7c15ULL) ^
               Rng::mix(uint64_t(iy) * 0xc2b2ae3d27d4eb4fULL) ^
               Rng::mix(uint64_t(iz) * 0x165667b19e3779f9ULL);
    }

    uint64_t key_of(const double* x) const {
        std::int64_t ix = std::int64_t(std::floor((x[0] - lo(0)) / cell));
        std::int64_t iy = N > 1 ? std::int64_t(std::floor((x[1] - lo(1)) / cell)) : 0;
        std::int64_t iz = N > 2 ? std::int64_t(std::floor((x[2] - lo(2)) / cell)) : 0;
        return pack(ix, iy, iz);
    }

    void build(const GeometricComplex& c, double cell_size) {
        N = c.ambient_dim();
        cell = cell_size;
        const std::int64_t V = c.n_vertices();
        lo = Vector::Constant(N, kInf);
        for (VertexId v = 0; v < V; ++v) lo = lo.cwiseMin(c.vertex(v));
        std::vector<std::pair<uint64_t, VertexId>> kv(static_cast<size_t>(V));
        parallel_for(V, [&](std::int64_t v) {
            kv[size_t(v)] = {key_of(c.vertex(VertexId(v)).data()), VertexId(v)};
        });
        std::sort(kv.begin(), kv.end());
        keys.resize(size_t(V));
        ids.resize(size_t(V));
        for (std::int64_t i = 0; i < V; ++i) {
            keys[size_t(i)] = kv[size_t(i)].first;
            ids[size_t(i)] = kv[size_t(i)].second;
        }
        for (std::int64_t i = 0; i < V; ++i)
            if (i == 0 || keys[size_t(i)] != keys[size_t(i - 1)]) {
                uniq.push_back(keys[size_t(i)]);
                cuts.push_back(i);
            }
        cuts.push_back(V);
    }

    template <typename Fn>
    void visit_ball(const GeometricComplex& c, const Vector& center, double radius, Fn&& fn) const {
        int rings = std::max<int>(1, int(std::ceil(radius / cell)));
        std::int64_t cx = std::int64_t(std::floor((center(0) - lo(0)) / cell));
        std::int64_t cy = N > 1 ? std::int64_t(std::floor((center(1) - lo(1)) / cell)) : 0;
        std::int64_t cz = N > 2 ? std::int64_t(std::floor((center(2) - lo(2)) / cell)) : 0;
        double r2 = radius * radius;
        for (std::int64_t dx = -rings; dx <= rings; ++dx)
            for (std::int64_t dy = (N > 1 ? -rings : 0); dy <= (N > 1 ? rings : 0); ++dy)
                for (std::int64_t dz = (N > 2 ? -rings : 0); dz <= (N > 2 ? rings : 0); ++dz) {
                    uint64_t k = pack(cx + dx, cy + dy, cz + dz);
                    auto it = std::lower_bound(uniq.begin(), uniq.end(), k);
                    if (it == uniq.end() || *it != k) continue;
                    std::int64_t g = it - uniq.begin();
                    for (std::int64_t i = cuts[size_t(g)]; i < cuts[size_t(g + 1)]; ++i) {
                        VertexId v = ids[size_t(i)];
                        if ((c.vertex(v) - center).squaredNorm() <= r2) fn(v);
                    }
                }
    }
};

// --- per-chunk criterion accumulator ------------------------------------------

struct Agg {
    std::int64_t violations = 0;
    double worst_lhs = 0, worst_rhs = 0;
    double min_margin = kInf;
    std::vector<std::string> witnesses;

    void probe(double lhs, double rhs, bool violated, const std::string& who, int cap) {
        double margin = rhs - lhs;
        if (margin < min_margin) {
            min_margin = margin;
            worst_lhs = lhs;
            worst_rhs = rhs;
        }
        if (violated) {
            ++violations;
            if (int(witnesses.size()) < cap) witnesses.push_back(who);
        }
    }
    void merge(const Agg& o) {
        violations += o.violations;
        if (o.min_margin < min_margin) {
            min_margin = o.min_margin;
            worst_lhs = o.worst_lhs;
            worst_rhs = o.worst_rhs;
        }
        for (const auto& w : o.witnesses) witnesses.push_back(w);
    }
    CriterionResult to_criterion(const std::string& name, int cap) const {
        CriterionResult r;
        r.name = name;
        r.holds = violations == 0;
        r.lhs = worst_lhs;
        r.rhs = worst_rhs;
        r.margin = min_margin == kInf ? 0 : min_margin;
        r.witnesses = witnesses;
        if (int(r.witnesses.size()) > cap) r.witnesses.resize(size_t(cap));
        return r;
    }
};

double edge_length_max(const GeometricComplex& c, std::int64_t t, double* smin = nullptr) {
    auto k = c.top(t);
    const int n = int(k.size());
    double L = 0, s = kInf;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = (c.vertex(k[i]) - c.vertex(k[j])).norm();
            L = std::max(L, d);
            s = std::min(s, d);
        }
    if (smin) *smin = s;
    return L;
}

// thickness of a realized top simplex (fast paths for m = 1, 2)
double top_thickness(const GeometricComplex& c, std::int64_t t, double L) {
    const int m = c.dim();
    if (m == 1) return 1.0;
    if (m == 2) {
        auto k = c.top(t);
        Vector e1 = c.vertex(k[1]) - c.vertex(k[0]);
        Vector e2 = c.vertex(k[2]) - c.vertex(k[0]);
        double e1n2 = e1.squaredNorm();
        double area2;  // 2*area
        if (c.ambient_dim() == 3) {
            double cx = e1(1) * e2(2) - e1(2) * e2(1);
            double cy = e1(2) * e2(0) - e1(0) * e2(2);
            double cz = e1(0) * e2(1) - e1(1) * e2(0);
            area2 = std::sqrt(cx * cx + cy * cy + cz * cz);
        } else if (c.ambient_dim() == 2) {
            area2 = std::abs(e1(0) * e2(1) - e1(1) * e2(0));
        } else {
            area2 = std::sqrt(std::max(0.0, e1n2 * e2.squaredNorm() -
                                                e1.dot(e2) * e1.dot(e2)));
        }
        if (L <= 0) return 0;
        // min altitude = 2*area / longest edge
        double a = area2 / L;
        // altitudes over the other edges can be smaller only if those edges are
        // longer, so this is the minimum altitude
        return a / (2.0 * L);
    }
    return thickness(c.realize_top(t));
}

std::string vertex_witness(VertexId p) { return "vertex " + std::to_string(p); }
std::string top_witness(std::int64_t t) { return "simplex " + std::to_string(t); }

// wedge/full-star classification on streamed chart coordinates
enum class StarStatus { Ok, NotFull, NotEmbedded };

struct StarScratch {
    std::vector<VertexId> verts;          // star vertex ids, p first
    std::vector<Vector> chart;            // chart coords aligned with verts
    std::vector<Vector> ambient;          // ambient coords aligned with verts
    std::vector<std::pair<double, double>> wedges;

    int index_of(VertexId v) const {
        for (size_t i = 0; i < verts.size(); ++i)
            if (verts[i] == v) return int(i);
        return -1;
    }
};

StarStatus classify_star(const GeometricComplex& c, VertexId p, const Flat& tangent,
                         StarScratch& s) {
    const int m = c.dim();
    auto ts = c.tops_of_vertex(p);
    s.verts.clear();
    s.chart.clear();
    s.ambient.clear();
    s.verts.push_back(p);
    for (TopId t : ts)
        for (VertexId v : c.top(t))
            if (s.index_of(v) < 0) s.verts.push_back(v);
    s.ambient.reserve(s.verts.size());
    s.chart.reserve(s.verts.size());
    for (VertexId v : s.verts) {
        s.ambient.push_back(c.vertex(v));
        s.chart.push_back(tangent.basis().transpose() * (s.ambient.back() - tangent.base()));
    }
    if (m == 1) {
        if (ts.size() != 2) return StarStatus::NotFull;
        double a = 0, b = 0;
        int got = 0;
        for (TopId t : ts) {
            auto k = c.top(t);
            VertexId other = k[0] == p ? k[1] : k[0];
            (got++ ? b : a) = s.chart[size_t(s.index_of(other))](0);
        }
        if (a == 0.0 || b == 0.0 || a * b >= 0.0) return StarStatus::NotEmbedded;
        return StarStatus::Ok;
    }
    if (m != 2) throw BadDimension("star classification implemented for m <= 2");
    if (ts.size() < 3) return StarStatus::NotFull;
    s.wedges.clear();
    double total = 0;
    for (TopId t : ts) {
        auto k = c.top(t);
        VertexId rim[2];
        int cnt = 0;
        for (int i = 0; i <= 2; ++i)
            if (k[i] != p) rim[cnt++] = k[i];
        const Vector& a = s.chart[size_t(s.index_of(rim[0]))];
        const Vector& b = s.chart[size_t(s.index_of(rim[1]))];
        if (a.norm() <= 0 || b.norm() <= 0) return StarStatus::NotEmbedded;
        double ta = std::atan2(a(1), a(0)), tb = std::atan2(b(1), b(0));
        double d = std::remainder(tb - ta, 2 * M_PI);
        if (std::abs(d) < 1e-12 || std::abs(std::abs(d) - M_PI) < 1e-12)
            return StarStatus::NotEmbedded;
        s.wedges.push_back(d > 0 ? std::make_pair(ta, d) : std::make_pair(tb, -d));
        total += std::abs(d);
    }
    std::sort(s.wedges.begin(), s.wedges.end());
    const double ang_tol = 1e-9;
    for (size_t i = 0; i + 1 < s.wedges.size(); ++i)
        if (s.wedges[i].first + s.wedges[i].second > s.wedges[i + 1].first + ang_tol)
            return StarStatus::NotEmbedded;
    if (s.wedges.back().first + s.wedges.back().second >
        s.wedges.front().first + 2 * M_PI + ang_tol)
        return StarStatus::NotEmbedded;
    if (std::abs(total - 2 * M_PI) > 1e-7)
        return total < 2 * M_PI ? StarStatus::NotFull : StarStatus::NotEmbedded;
    return StarStatus::Ok;
}

// star quality over chart or ambient coordinates in the scratch
void star_quality(const GeometricComplex& c, VertexId p, const StarScratch& s, bool use_chart,
                  double& L0, double& s0, double& t0) {
    L0 = 0;
    s0 = kInf;
    t0 = 1;
    const int m = c.dim();
    const auto& pts = use_chart ? s.chart : s.ambient;
    for (TopId t : c.tops_of_vertex(p)) {
        auto k = c.top(t);
        Matrix V(pts[0].size(), m + 1);
        for (int i = 0; i <= m; ++i) V.col(i) = pts[size_t(s.index_of(k[i]))];
        EuclideanSimplex sx(std::move(V));
        auto q = quality_measures(sx);
        L0 = std::max(L0, q.longest_edge_L);
        s0 = std::min(s0, q.longest_edge_L);
        t0 = std::min(t0, q.thickness_t);
    }
}

// chart-side orientation signs: parity-adjusted determinant of the projected
// simplex, which must agree across the whole star
bool star_signs_consistent(const GeometricComplex& c, VertexId p, const StarScratch& s) {
    const int m = c.dim();
    int ref = 0;
    for (TopId t : c.tops_of_vertex(p)) {
        auto k = c.top(t);
        double det;
        if (m == 1) {
            det = s.chart[size_t(s.index_of(k[1]))](0) - s.chart[size_t(s.index_of(k[0]))](0);
        } else {
            const Vector& a = s.chart[size_t(s.index_of(k[0]))];
            const Vector& b = s.chart[size_t(s.index_of(k[1]))];
            const Vector& d = s.chart[size_t(s.index_of(k[2]))];
            det = (b(0) - a(0)) * (d(1) - a(1)) - (b(1) - a(1)) * (d(0) - a(0));
        }
        int sgn = (det > 0 ? 1 : -1) * c.parity(t);
        if (ref == 0)
            ref = sgn;
        else if (sgn != ref)
            return false;
    }
    return true;
}

// sign of det of the chart-map differential on top t, evaluated in the chart
// at vertex p (lift differential composed with the projection Jacobian)
bool fp_jacobian_positive(const GeometricComplex& c, const TestManifold& M, VertexId p,
                          const Flat& tangent, const StarScratch& s, TopId t, int samples,
                          uint64_t seed) {
    const int m = c.dim();
    auto k = c.top(t);
    Matrix Echart(m, m), Eamb(c.ambient_dim(), m);
    const Vector& a0 = s.ambient[size_t(s.index_of(k[0]))];
    const Vector& c0 = s.chart[size_t(s.index_of(k[0]))];
    for (int i = 1; i <= m; ++i) {
        Echart.col(i - 1) = s.chart[size_t(s.index_of(k[i]))] - c0;
        Eamb.col(i - 1) = s.ambient[size_t(s.index_of(k[i]))] - a0;
    }
    Matrix lift = Eamb * Echart.inverse();  // d(PhiHat^-1)
    Rng rng(seed, uint64_t(t));
    for (int sidx = 0; sidx < samples; ++sidx) {
        auto lam = sample_uniform_barycentric(m, rng);
        Vector x = lam[0] * a0;
        for (int i = 1; i <= m; ++i) x += lam[size_t(i)] * s.ambient[size_t(s.index_of(k[i]))];
        Matrix J = tangent.basis().transpose() * (M.projection_jacobian(x) * lift);
        double det = m == 1 ? J(0, 0) : J.determinant();
        if (!(det > 0)) return false;
    }
    return true;
}

}  // namespace

// --- submanifold certification -------------------------------------------------

CertificationReport certify_submanifold(const TestManifold& M, const GeometricComplex& A,
                                        CertMode mode, const CertifierConfig& config) {
    if (mode != CertMode::SubmanifoldLfs && mode != CertMode::SubmanifoldReach)
        throw Error("certify_submanifold: mode must be lfs or reach");
    const bool lfs_mode = mode == CertMode::SubmanifoldLfs;
    const RrchChoice policy{lfs_mode ? RrchPolicy::LocalLfs : RrchPolicy::GlobalReach, 9.0 / 137.0};
    const double thresh_div = lfs_mode ? 18.0 : 16.0;
    const std::int64_t V = A.n_vertices(), T = A.n_top();
    const int m = A.dim();
    if (T == 0) throw InputNotManifold("empty complex");

    // preconditions: vertices on M, every component hit
    {
        std::atomic<bool> off{false};
        parallel_for(V, [&](std::int64_t v) {
            if (M.on_manifold_residual(A.vertex(VertexId(v))) > tol().geometric) off = true;
        });
        if (off) throw VerticesOffManifold();
        std::vector<std::uint8_t> seen(size_t(M.n_components()), 0);
        for (VertexId v = 0; v < V; ++v) seen[size_t(M.component_of(A.vertex(v)))] = 1;
        for (size_t i = 0; i < seen.size(); ++i)
            if (!seen[i]) throw ComponentWithoutVertex("manifold component " + std::to_string(i));
    }

    CertificationReport rep;
    rep.mode = mode;
    const int cap = config.witness_cap;

    // (pre) closed-manifold complex
    auto chk = A.is_manifold_complex();
    {
        CriterionResult c;
        c.name = "closed-manifold";
        bool ok = chk.pure && chk.coface_counts_ok && chk.links_ok && chk.boundary_empty;
        if (chk.link_check_partial && config.partial_manifold_check_fails) ok = false;
        c.holds = ok;
        c.lhs = ok ? 0 : 1;
        c.rhs = 0;
        c.margin = -c.lhs;
        c.witnesses = chk.failures;
        if (chk.link_check_partial) c.witnesses.push_back("link check partial (m > 3)");
        if (int(c.witnesses.size()) > cap) c.witnesses.resize(size_t(cap));
        rep.criteria.push_back(std::move(c));
    }

    // quality and sizing (criterion b), local or global constants
    double global_eps0 = 0, global_t0 = 1, global_mu0 = 1, global_Lmax = 0;
    Agg quality_agg;
    {
        std::vector<Agg> aggs(kMaxParallelChunks);
        std::vector<double> chunk_eps0(kMaxParallelChunks, 0), chunk_t0(kMaxParallelChunks, 1);
        std::vector<double> chunk_soverl(kMaxParallelChunks, kInf), chunk_L(kMaxParallelChunks, 0);
        int n_chunks = 0;
        parallel_chunks(V, [&](std::int64_t vb, std::int64_t ve, int ci) {
            Agg& agg = aggs[size_t(ci)];
            for (std::int64_t vi = vb; vi < ve; ++vi) {
                VertexId p = VertexId(vi);
                // sizing reference: lfs(p) in lfs mode, global reach otherwise
                double lfsref = lfs_mode ? M.lfs(A.vertex(p)) : M.reach();
                double e = 0, t0 = 1, smin = kInf, Lmax = 0;
                for (TopId t : A.tops_of_vertex(p)) {
                    double L = edge_length_max(A, t);
                    double th = top_thickness(A, t, L);
                    e = std::max(e, L / lfsref);
                    t0 = std::min(t0, th);
                    smin = std::min(smin, L);
                    Lmax = std::max(Lmax, L);
                }
                chunk_eps0[size_t(ci)] = std::max(chunk_eps0[size_t(ci)], e);
                chunk_t0[size_t(ci)] = std::min(chunk_t0[size_t(ci)], t0);
                chunk_soverl[size_t(ci)] = std::min(chunk_soverl[size_t(ci)], smin / lfsref);
                chunk_L[size_t(ci)] = std::max(chunk_L[size_t(ci)], Lmax);
                if (config.local_constants) {
                    double mu = smin / Lmax;
                    double rhs = std::sqrt(mu) * t0 * t0 / thresh_div;
                    agg.probe(e, rhs, !(e <= rhs), vertex_witness(p), cap);
                }
            }
        }, &n_chunks);
        double min_soverl = kInf;
        for (int ci = 0; ci < n_chunks; ++ci) {
            global_eps0 = std::max(global_eps0, chunk_eps0[size_t(ci)]);
            global_t0 = std::min(global_t0, chunk_t0[size_t(ci)]);
            min_soverl = std::min(min_soverl, chunk_soverl[size_t(ci)]);
            global_Lmax = std::max(global_Lmax, chunk_L[size_t(ci)]);
            if (config.local_constants) quality_agg.merge(aggs[size_t(ci)]);
        }
        global_mu0 = global_eps0 > 0 ? min_soverl / global_eps0 : 1.0;
        if (!config.local_constants) {
            double rhs = std::sqrt(global_mu0) * global_t0 * global_t0 / thresh_div;
            quality_agg.probe(global_eps0, rhs, !(global_eps0 <= rhs), "global constants", cap);
        }
        rep.criteria.push_back(quality_agg.to_criterion("quality-and-sizing", cap));
    }

    // grid for the sanity scan
    HashGrid grid;
    double reach = M.reach();
    double cell = std::max(2.2 * global_Lmax, 1e-9 * std::max(1.0, reach));
    grid.build(A, cell);

    // combined per-vertex pass: charts (a), distortion threshold, chart-side
    // positivity, vertex sanity (c)
    Agg star_agg, dist_agg, dist_sharp_agg, pos_agg, sanity_agg;
    std::atomic<std::int64_t> sanity_pairs{0};
    {
        std::vector<Agg> a_star(kMaxParallelChunks), a_dist(kMaxParallelChunks),
            a_sharp(kMaxParallelChunks), a_pos(kMaxParallelChunks), a_san(kMaxParallelChunks);
        int n_chunks = 0;
        parallel_chunks(V, [&](std::int64_t vb, std::int64_t ve, int ci) {
            StarScratch scratch;
            std::int64_t local_pairs = 0;
            for (std::int64_t vi = vb; vi < ve; ++vi) {
                VertexId p = VertexId(vi);
                Vector pp = A.vertex(p);
                Flat tangent = M.tangent_flat(pp);
                StarStatus status = classify_star(A, p, tangent, scratch);
                a_star[size_t(ci)].probe(status == StarStatus::Ok ? 0 : 1, 0,
                                         status != StarStatus::Ok,
                                         vertex_witness(p) + (status == StarStatus::NotFull
                                                                  ? " (star not full)"
                                                                  : " (projection overlaps)"),
                                         cap);
                if (status != StarStatus::Ok) continue;

                // certified chart distortion against the metric-theorem threshold
                double L0s, s0s, t0s, L0h, s0h, t0h;
                star_quality(A, p, scratch, false, L0s, s0s, t0s);
                star_quality(A, p, scratch, true, L0h, s0h, t0h);
                double R = r_rch_at(M, pp, policy);
                double q = (L0s * L0s) / (t0s * t0s * R * R);
                if (!(q <= 1.0 / 256.0)) {
                    a_dist[size_t(ci)].probe(q, 1.0 / 256.0, true,
                                             vertex_witness(p) + " (no certified bound)", cap);
                    a_sharp[size_t(ci)].probe(q, 1.0 / 256.0, true,
                                              vertex_witness(p) + " (no certified bound)", cap);
                } else {
                    double rho = (L0s / R) * (1.0 + 2.0 * L0s / R);
                    double xi = compose_distortion({q / (1.0 - q), 12.0 * q, 4.0 * rho * rho});
                    double rhs = s0h * t0h * t0h / (12.0 * L0h);
                    double rhs_sharp = (m / (6.0 * (m + 1.0))) * s0h * t0h * t0h / L0h;
                    a_dist[size_t(ci)].probe(xi, rhs, !(xi < rhs), vertex_witness(p), cap);
                    a_sharp[size_t(ci)].probe(xi, rhs_sharp, !(xi < rhs_sharp), vertex_witness(p),
                                              cap);
                }

                // chart-side orientation consistency and projection Jacobian sign
                bool pos = star_signs_consistent(A, p, scratch);
                if (pos) {
                    for (TopId t : A.tops_of_vertex(p)) {
                        if (A.top(t)[0] != p) continue;  // each top checked once
                        if (!fp_jacobian_positive(A, M, p, tangent, scratch, t,
                                                  config.positivity_samples, config.seed)) {
                            pos = false;
                            break;
                        }
                    }
                }
                a_pos[size_t(ci)].probe(pos ? 0 : 1, 0, !pos, vertex_witness(p), cap);

                // vertex sanity within the mode's ball
                double r_mode = lfs_mode ? M.lfs(pp) / 15.0 : reach / 14.0;
                double max_star_dist = 0;
                for (size_t i = 1; i < scratch.verts.size(); ++i)
                    max_star_dist = std::max(max_star_dist, (scratch.ambient[i] - pp).norm());
                double rch_p = M.local_reach(pp);
                double sin_max = std::min(1.0, r_mode / (2.0 * rch_p));
                double cos_min = std::sqrt(std::max(0.0, 1.0 - sin_max * sin_max));
                double rq = r_mode;
                if (cos_min > 0)
                    rq = std::min(rq, (max_star_dist * 1.0000001 + 1e-12) / cos_min);
                grid.visit_ball(A, pp, rq, [&](VertexId qv) {
                    if (qv == p) return;
                    Vector qq = A.vertex(qv);
                    if ((qq - pp).norm() >= r_mode) return;
                    ++local_pairs;
                    bool is_star_vertex = scratch.index_of(qv) >= 0;
                    // boundary-inclusive point-in-star test in chart coords
                    Vector cq = tangent.basis().transpose() * (qq - pp);
                    bool inside = false;
                    for (TopId t : A.tops_of_vertex(p)) {
                        auto k = A.top(t);
                        if (m == 1) {
                            double x0 = scratch.chart[size_t(scratch.index_of(k[0]))](0);
                            double x1 = scratch.chart[size_t(scratch.index_of(k[1]))](0);
                            double lamtol = tol().inside_simplex * std::max(1.0, std::abs(x1 - x0));
                            if (cq(0) >= std::min(x0, x1) - lamtol &&
                                cq(0) <= std::max(x0, x1) + lamtol)
                                inside = true;
                        } else {
                            const Vector& a = scratch.chart[size_t(scratch.index_of(k[0]))];
                            const Vector& b = scratch.chart[size_t(scratch.index_of(k[1]))];
                            const Vector& d = scratch.chart[size_t(scratch.index_of(k[2]))];
                            double det = (b(0) - a(0)) * (d(1) - a(1)) -
                                         (b(1) - a(1)) * (d(0) - a(0));
                            if (det == 0) continue;
                            double l1 = ((cq(0) - a(0)) * (d(1) - a(1)) -
                                         (cq(1) - a(1)) * (d(0) - a(0))) / det;
                            double l2 = ((b(0) - a(0)) * (cq(1) - a(1)) -
                                         (b(1) - a(1)) * (cq(0) - a(0))) / det;
                            double l0 = 1.0 - l1 - l2;
                            double lt = tol().inside_simplex;
                            if (l0 >= -lt && l1 >= -lt && l2 >= -lt) inside = true;
                        }
                        if (inside) break;
                    }
                    if (inside != is_star_vertex)
                        a_san[size_t(ci)].probe(1, 0, true,
                                                "(" + std::to_string(p) + "," +
                                                    std::to_string(qv) + ")",
                                                cap);
                });
            }
            sanity_pairs += local_pairs;
        }, &n_chunks);
        for (int ci = 0; ci < n_chunks; ++ci) {
            star_agg.merge(a_star[size_t(ci)]);
            dist_agg.merge(a_dist[size_t(ci)]);
            dist_sharp_agg.merge(a_sharp[size_t(ci)]);
            pos_agg.merge(a_pos[size_t(ci)]);
            sanity_agg.merge(a_san[size_t(ci)]);
        }
    }
    // fold orientation coherence into simplexwise positivity
    if (!chk.coherently_oriented)
        pos_agg.probe(1, 0, true, "incoherent orientation (see closed-manifold witnesses)", cap);

    rep.criteria.push_back(star_agg.to_criterion("stars-embedded-full", cap));
    rep.criteria.push_back(sanity_agg.to_criterion("vertex-sanity", cap));
    rep.criteria.push_back(pos_agg.to_criterion("simplexwise-positive", cap));
    rep.criteria.push_back(dist_agg.to_criterion("distortion-threshold", cap));
    rep.criteria.push_back(dist_sharp_agg.to_criterion("distortion-threshold-dimension-sharp", cap));
    // the verdict uses the selected distortion constant; the other is informational
    const std::string informational = config.use_dimension_sharp_bound
                                          ? "distortion-threshold"
                                          : "distortion-threshold-dimension-sharp";
    auto core_holds = [&rep, &informational] {
        for (const auto& c : rep.criteria)
            if (c.name != informational && !c.holds) return false;
        return true;
    };
    bool core_ok = core_holds();

    // consequence bounds, evaluated only on certified cores
    if (core_ok) {
        std::vector<Agg> a_d(kMaxParallelChunks), a_a(kMaxParallelChunks);
        int n_chunks = 0;
        const double eps0 = global_eps0, t0 = global_t0;
        parallel_chunks(T, [&](std::int64_t tb, std::int64_t te, int ci) {
            for (std::int64_t t = tb; t < te; ++t) {
                Rng rng(config.seed ^ 0xabcdef, uint64_t(t));
                auto k = A.top(t);
                Matrix Vm(A.ambient_dim(), m + 1);
                for (int i = 0; i <= m; ++i) Vm.col(i) = A.vertex(k[i]);
                // simplex direction space for the angle check
                Matrix dirs(A.ambient_dim(), m);
                for (int i = 1; i <= m; ++i) dirs.col(i - 1) = Vm.col(i) - Vm.col(0);
                Flat aff = Flat::subspace(span_orthonormal(Vm));
                for (int sidx = 0; sidx < config.consequence_samples; ++sidx) {
                    auto lam = sample_uniform_barycentric(m, rng);
                    Vector x = Vector::Zero(A.ambient_dim());
                    for (int i = 0; i <= m; ++i) x += lam[size_t(i)] * Vm.col(i);
                    ProjectionResult pr = M.closest_point(x);
                    double dist_rhs = lfs_mode ? (7.0 / 3.0) * eps0 * eps0 * M.lfs(pr.point_on_M)
                                               : 2.0 * eps0 * eps0 * reach;
                    a_d[size_t(ci)].probe(pr.distance, dist_rhs, !(pr.distance <= dist_rhs),
                                          top_witness(t), cap);
                    double sin_angle = std::sin(angle_between_flats(
                        aff, Flat::subspace(M.tangent_flat(pr.point_on_M).basis())));
                    double ang_rhs = lfs_mode ? 13.0 * eps0 / (4.0 * t0) : 3.0 * eps0 / t0;
                    a_a[size_t(ci)].probe(sin_angle, ang_rhs, !(sin_angle <= ang_rhs),
                                          top_witness(t), cap);
                }
            }
        }, &n_chunks);
        Agg d_agg, ang_agg;
        for (int ci = 0; ci < n_chunks; ++ci) {
            d_agg.merge(a_d[size_t(ci)]);
            ang_agg.merge(a_a[size_t(ci)]);
        }
        rep.criteria.push_back(d_agg.to_criterion("consequence-distance", cap));
        rep.criteria.push_back(ang_agg.to_criterion("consequence-angle", cap));
    }

    rep.verdict = core_holds() ? Verdict::Certified : Verdict::Refuted;
    return rep;
}

// --- generic metric certification ------------------------------------------------

namespace {

// smooth per-simplex chart map with affine extension (no point location), so
// finite differences and Gauss-Newton stay inside one smooth branch
std::function<Vector(const Vector&)> fp_on_simplex(const Chart& chart, const TestManifold& M,
                                                   TopId t) {
    const int m = chart.m;
    auto key = chart.projected_star.top(t);
    Matrix Echart(m, m), Eamb(chart.complex->ambient_dim(), m);
    Vector c0 = chart.projected_star.vertex(key[0]);
    Vector a0 = chart.complex->vertex(chart.ambient_vertex_ids[size_t(key[0])]);
    for (int i = 1; i <= m; ++i) {
        Echart.col(i - 1) = chart.projected_star.vertex(key[i]).eval() - c0;
        Eamb.col(i - 1) =
            chart.complex->vertex(chart.ambient_vertex_ids[size_t(key[i])]).eval() - a0;
    }
    Matrix lift = Eamb * Echart.inverse();
    return [&chart, &M, c0 = std::move(c0), a0 = std::move(a0),
            lift = std::move(lift)](const Vector& x) {
        Vector ambient = a0 + lift * (x - c0);
        return chart.to_chart(M.closest_point(ambient).point_on_M);
    };
}

void append_bool_criterion(CertificationReport& rep, const std::string& name, bool ok,
                           std::vector<std::string> witnesses, int cap) {
    CriterionResult c;
    c.name = name;
    c.holds = ok;
    c.lhs = ok ? 0 : 1;
    c.rhs = 0;
    c.margin = -c.lhs;
    c.witnesses = std::move(witnesses);
    if (int(c.witnesses.size()) > cap) c.witnesses.resize(size_t(cap));
    rep.criteria.push_back(std::move(c));
}

// sanity scan over prebuilt charts, hash-grid accelerated
Agg chart_sanity_scan(const GeometricComplex& A, const std::vector<Chart>& charts, int cap) {
    Agg agg;
    double max_radius = 1e-12;
    for (const Chart& chart : charts) max_radius = std::max(max_radius, chart.chart_radius);
    HashGrid grid;
    grid.build(A, max_radius * 1.01);
    for (const Chart& chart : charts) {
        VertexId p = chart.vertex_p;
        Vector pp = A.vertex(p);
        std::vector<VertexId> star_verts = chart.ambient_vertex_ids;
        std::sort(star_verts.begin(), star_verts.end());
        grid.visit_ball(A, pp, chart.chart_radius, [&](VertexId q) {
            if (q == p) return;
            if ((A.vertex(q) - pp).norm() >= chart.chart_radius) return;
            bool inside = chart.contains(chart.to_chart(A.vertex(q)));
            bool is_star = std::binary_search(star_verts.begin(), star_verts.end(), q);
            agg.probe(inside != is_star ? 1 : 0, 0, inside != is_star,
                      "(" + std::to_string(p) + "," + std::to_string(q) + ")", cap);
        });
    }
    return agg;
}

Agg chart_positivity(const std::vector<Chart>& charts, const TestManifold* M, int samples,
                     uint64_t seed, int cap) {
    Agg agg;
    for (const Chart& chart : charts) {
        const GeometricComplex& star = chart.projected_star;
        int ref = 0;
        bool ok = true;
        for (TopId t = 0; t < star.n_top() && ok; ++t) {
            auto k = star.top(t);
            double det;
            if (chart.m == 1) {
                det = star.vertex(k[1])(0) - star.vertex(k[0])(0);
            } else {
                Vector a = star.vertex(k[0]), b = star.vertex(k[1]), d = star.vertex(k[2]);
                det = (b(0) - a(0)) * (d(1) - a(1)) - (b(1) - a(1)) * (d(0) - a(0));
            }
            int sgn = (det > 0 ? 1 : -1) * star.parity(t);
            if (ref == 0) ref = sgn;
            ok = ok && sgn == ref;
        }
        if (ok && M) {
            for (TopId t = 0; t < star.n_top() && ok; ++t) {
                auto fp = fp_on_simplex(chart, *M, t);
                EuclideanSimplex sx = star.realize_top(t);
                double h = 1e-6 * std::max(quality_measures(sx).longest_edge_L, 1e-9);
                Rng rng(seed, uint64_t(t));
                for (int sidx = 0; sidx < samples && ok; ++sidx) {
                    Vector x = sample_uniform(sx, rng);
                    Matrix J(chart.m, chart.m);
                    Vector xp, xm;
                    for (int i = 0; i < chart.m; ++i) {
                        xp = x;
                        xm = x;
                        xp(i) += h;
                        xm(i) -= h;
                        J.col(i) = (fp(xp) - fp(xm)) / (2 * h);
                    }
                    double det = chart.m == 1 ? J(0, 0) : J.determinant();
                    ok = ok && det > 0;
                }
            }
        }
        agg.probe(ok ? 0 : 1, 0, !ok, vertex_witness(chart.vertex_p), cap);
    }
    return agg;
}

}  // namespace

CertificationReport certify_generic(const GeometricComplex& A, const std::vector<Chart>& charts,
                                    const std::vector<ChartDistortion>& distortions,
                                    const QualityBounds& quality, const CertifierConfig& config) {
    auto chk = A.is_manifold_complex();
    bool manifold_ok = chk.is_closed_manifold;
    if (chk.link_check_partial && config.partial_manifold_check_fails) manifold_ok = false;
    if (!manifold_ok) throw InputNotManifold();

    if (charts.size() != size_t(A.n_vertices()) || distortions.size() != charts.size())
        throw DimensionMismatch("one chart + distortion per vertex required");

    CertificationReport rep;
    rep.mode = CertMode::GenericMetric;
    const int cap = config.witness_cap;
    const int m = A.dim();

    // (1) compatible atlases: every vertex has a full-star chart over st(p)
    {
        std::vector<std::string> bad;
        for (size_t i = 0; i < charts.size(); ++i)
            if (charts[i].vertex_p != VertexId(i)) bad.push_back("chart " + std::to_string(i));
        append_bool_criterion(rep, "compatible-atlases", bad.empty(), std::move(bad), cap);
    }

    // (2) simplex quality within the supplied bounds
    {
        Agg agg;
        for (const Chart& chart : charts) {
            const GeometricComplex& star = chart.projected_star;
            for (TopId t = 0; t < star.n_top(); ++t) {
                auto q = quality_measures(star.realize_top(t));
                bool ok = quality.s0 <= q.longest_edge_L && q.longest_edge_L <= quality.L0 &&
                          q.thickness_t >= quality.t0;
                double margin = std::min({q.longest_edge_L - quality.s0,
                                          quality.L0 - q.longest_edge_L,
                                          q.thickness_t - quality.t0});
                agg.probe(-margin, 0, !ok,
                          vertex_witness(chart.vertex_p) + " " + top_witness(t) +
                              (q.thickness_t < quality.t0 ? " (thickness)" : " (edge length)"),
                          cap);
            }
        }
        rep.criteria.push_back(agg.to_criterion("simplex-quality", cap));
    }

    // (3) distortion control, strict
    {
        Agg agg, sharp;
        bool all_certified = true;
        for (size_t i = 0; i < charts.size(); ++i) {
            double xi = distortions[i].xi_total.xi;
            all_certified = all_certified && distortions[i].xi_total.kind == BoundKind::CertifiedUpper;
            double rhs = quality.s0 * quality.t0 * quality.t0 / (12.0 * quality.L0);
            double rhs_sharp =
                (m / (6.0 * (m + 1.0))) * quality.s0 * quality.t0 * quality.t0 / quality.L0;
            agg.probe(xi, rhs, !(xi < rhs), vertex_witness(charts[i].vertex_p), cap);
            sharp.probe(xi, rhs_sharp, !(xi < rhs_sharp), vertex_witness(charts[i].vertex_p), cap);
        }
        rep.criteria.push_back(agg.to_criterion("distortion-threshold", cap));
        rep.criteria.push_back(sharp.to_criterion("distortion-threshold-dimension-sharp", cap));
        if (!all_certified) {
            CriterionResult c;
            c.name = "distortion-inputs-certified";
            c.holds = false;
            c.witnesses.push_back("empirical distortion inputs");
            rep.criteria.push_back(std::move(c));
        }
    }

    // (4) vertex sanity over the chart domains
    rep.criteria.push_back(chart_sanity_scan(A, charts, cap).to_criterion("vertex-sanity", cap));

    // simplexwise positivity (orientation coherence + chart-side signs)
    {
        Agg agg = chart_positivity(charts, charts.empty() ? nullptr : charts.front().manifold,
                                   config.positivity_samples, config.seed, cap);
        if (!chk.coherently_oriented) agg.probe(1, 0, true, "incoherent orientation", cap);
        rep.criteria.push_back(agg.to_criterion("simplexwise-positive", cap));
    }

    const std::string informational = config.use_dimension_sharp_bound
                                          ? "distortion-threshold"
                                          : "distortion-threshold-dimension-sharp";
    bool ok = true, empirical = false;
    for (const auto& c : rep.criteria) {
        if (c.name == informational) continue;
        if (c.name == "distortion-inputs-certified") {
            empirical = true;
            continue;
        }
        ok = ok && c.holds;
    }
    rep.verdict = !ok ? Verdict::Refuted : (empirical ? Verdict::Inconclusive : Verdict::Certified);
    return rep;
}

// --- differential control ---------------------------------------------------------

CertificationReport certify_differential_control(const TestManifold& M, const GeometricComplex& A,
                                                 int jacobian_grid, const CertifierConfig& config) {
    auto chk = A.is_manifold_complex();
    if (!chk.is_closed_manifold && !(chk.link_check_partial && !config.partial_manifold_check_fails))
        throw InputNotManifold();
    const int m = A.dim();
    const int cap = config.witness_cap;
    RrchChoice policy{RrchPolicy::GlobalReach, 9.0 / 137.0};

    CertificationReport rep;
    rep.mode = CertMode::DifferentialControl;

    std::vector<Chart> charts;
    charts.reserve(size_t(A.n_vertices()));
    std::vector<std::string> star_fail;
    for (VertexId p = 0; p < A.n_vertices(); ++p) {
        try {
            charts.push_back(build_chart(M, A, p, policy));
        } catch (const Error& e) {
            star_fail.push_back(vertex_witness(p) + ": " + e.what());
        }
    }
    append_bool_criterion(rep, "stars-embedded-full", star_fail.empty(), star_fail, cap);
    if (!star_fail.empty()) {
        rep.verdict = Verdict::Refuted;
        return rep;
    }

    Agg dev_agg, embed_agg;
    for (const Chart& chart : charts) {
        double max_dev = 0;
        for (TopId t = 0; t < chart.projected_star.n_top(); ++t) {
            auto fp = fp_on_simplex(chart, M, t);
            EuclideanSimplex sx = chart.projected_star.realize_top(t);
            double h = 1e-6 * std::max(quality_measures(sx).longest_edge_L, 1e-9);
            // interior barycentric grid
            for (int gi = 0; gi < jacobian_grid; ++gi)
                for (int gj = 0; gi + gj < jacobian_grid && gj < (m == 1 ? 1 : jacobian_grid); ++gj) {
                    std::vector<double> lam;
                    if (m == 1) {
                        lam = {double(gi + 1) / (jacobian_grid + 1),
                               1.0 - double(gi + 1) / (jacobian_grid + 1)};
                    } else {
                        double l1 = (gi + 1.0) / (jacobian_grid + 2.0);
                        double l2 = (gj + 1.0) / (jacobian_grid + 2.0);
                        lam = {1.0 - l1 - l2, l1, l2};
                        if (lam[0] <= 0.05) continue;
                    }
                    Vector x = point_from_barycentric(sx, lam);
                    Matrix J(m, m);
                    Vector xp, xm;
                    for (int i = 0; i < m; ++i) {
                        xp = x;
                        xm = x;
                        xp(i) += h;
                        xm(i) -= h;
                        J.col(i) = (fp(xp) - fp(xm)) / (2 * h);
                    }
                    if (!J.allFinite()) throw NumericallyUnstableJacobian();
                    Matrix D = J - Matrix::Identity(m, m);
                    max_dev = std::max(max_dev, svd_spectrum(D).operator_norm);
                }
        }
        double rhs = chart.s0_hat * chart.t0_hat / (2.0 * chart.L0_hat);
        double rhs_embed = m * chart.t0_hat;
        dev_agg.probe(max_dev, rhs, !(max_dev < rhs), vertex_witness(chart.vertex_p), cap);
        embed_agg.probe(max_dev, rhs_embed, !(max_dev < rhs_embed), vertex_witness(chart.vertex_p),
                        cap);
    }
    rep.criteria.push_back(dev_agg.to_criterion("jacobian-deviation", cap));
    rep.criteria.push_back(embed_agg.to_criterion("jacobian-embedding-bound", cap));
    rep.criteria.push_back(chart_sanity_scan(A, charts, cap).to_criterion("vertex-sanity", cap));
    {
        Agg agg = chart_positivity(charts, &M, config.positivity_samples, config.seed, cap);
        if (!chk.coherently_oriented) agg.probe(1, 0, true, "incoherent orientation", cap);
        rep.criteria.push_back(agg.to_criterion("simplexwise-positive", cap));
    }

    if (!rep.all_hold())
        rep.verdict = Verdict::Refuted;
    else
        rep.verdict = config.allow_empirical_jacobian_certification ? Verdict::Certified
                                                                    : Verdict::Inconclusive;
    return rep;
}

// --- chart-level checks -----------------------------------------------------------

CriterionResult point_covered_once_check(const Chart& chart, const TestManifold& M,
                                         const std::function<Vector(const Vector&)>& override_map,
                                         int starts_per_simplex) {
    const GeometricComplex& star = chart.projected_star;
    const int m = chart.m;

    // barycentre of the largest-diameter simplex
    TopId largest = 0;
    double Lbest = -1;
    for (TopId t = 0; t < star.n_top(); ++t) {
        double L = quality_measures(star.realize_top(t)).longest_edge_L;
        if (L > Lbest) {
            Lbest = L;
            largest = t;
        }
    }
    EuclideanSimplex sb = star.realize_top(largest);
    Vector b = sb.barycentre();
    auto base_map = [&](const Vector& x) {
        if (override_map) return override_map(x);
        return evaluate_Fp(chart, M, x);
    };
    Vector y = base_map(b);

    // enumerate preimages simplex by simplex with the degree module's
    // evaluator route (Gauss-Newton multistart per simplex)
    std::vector<Vector> points;
    for (TopId t = 0; t < star.n_top(); ++t) {
        std::function<Vector(const Vector&)> fp_t;
        if (override_map)
            fp_t = override_map;
        else
            fp_t = fp_on_simplex(chart, M, t);
        OrientedPLMap one;
        GeometricComplex single = star.extract_tops(std::span<const TopId>(&t, 1));
        one.source = &single;
        for (VertexId v = 0; v < single.n_vertices(); ++v)
            one.vertex_images.push_back(single.vertex(v));
        one.evaluator = fp_t;
        DegreeResult dr = degree_at_point(one, y);
        for (const auto& candidate : dr.preimage_points) {
            bool dup = false;
            for (const auto& p : points)
                dup = dup || (p - candidate).norm() < 1e-7 * std::max(1.0, Lbest);
            if (!dup) points.push_back(candidate);
        }
    }
    (void)starts_per_simplex;

    CriterionResult c;
    c.name = "point-covered-once";
    c.lhs = double(points.size());
    c.rhs = 1.0;
    c.margin = c.rhs - c.lhs;
    c.holds = points.size() == 1;
    double t0 = chart.t0_hat;
    double xi_required = (1.0 / 6.0) * (m / (m + 1.0)) * t0 * t0;
    c.witnesses.push_back("xi threshold (1/6)(m/(m+1)) t0^2 = " + std::to_string(xi_required));
    return c;
}

CriterionResult boundary_separation_check(const Chart& chart, const TestManifold& M, double delta,
                                          const std::function<Vector(const Vector&)>& override_map,
                                          int samples, uint64_t seed) {
    const GeometricComplex& star = chart.projected_star;
    const int m = chart.m;
    double s0 = chart.s0_hat, L0 = chart.L0_hat, t0 = chart.t0_hat;

    // admissible window for delta from the certified chart distortion
    double window = 1.0 / (m + 1.0);
    bool have_xi = false;
    double xi = 0;
    double R = chart.R_rch;
    double q = (chart.L0_star * chart.L0_star) / (chart.t0_star * chart.t0_star * R * R);
    if (q <= 1.0 / 256.0) {
        have_xi = true;
        double rho = (chart.L0_star / R) * (1.0 + 2.0 * chart.L0_star / R);
        xi = compose_distortion({q / (1.0 - q), 12.0 * q, 4.0 * rho * rho});
        window = 1.0 / (m + 1.0) - 6.0 * L0 * xi / (m * s0 * t0 * t0);
    }
    if (!(delta > 0) || (have_xi && delta > window)) throw DeltaOutOfWindow();
    if (!(delta < 1.0 / (m + 1.0))) throw DeltaOutOfWindow();

    auto base_map = [&](const Vector& x) {
        if (override_map) return override_map(x);
        return evaluate_Fp(chart, M, x);
    };

    // sample V_p: points whose barycentric coordinate at p-hat exceeds
    // 1/(m+1) - delta in a containing simplex
    Rng rng(seed);
    std::vector<Vector> vp_samples, bdry_samples;
    double lam_floor = 1.0 / (m + 1.0) - delta;
    for (TopId t = 0; t < star.n_top(); ++t) {
        auto k = star.top(t);
        int p_pos = -1;
        for (int i = 0; i <= m; ++i)
            if (k[i] == chart.p_local) p_pos = i;
        EuclideanSimplex sx = star.realize_top(t);
        int made = 0, guard = 0;
        while (made < samples / std::max<std::int64_t>(1, star.n_top()) && guard < 50 * samples) {
            ++guard;
            auto lam = sample_uniform_barycentric(m, rng);
            if (lam[size_t(p_pos)] <= lam_floor + 1e-12) continue;
            vp_samples.push_back(point_from_barycentric(sx, lam));
            ++made;
        }
        vp_samples.push_back(sx.barycentre());
    }
    for (auto& [facet, t] : star.boundary_facets()) {
        EuclideanSimplex fx = star.realize(facet);
        for (int i = 0; i < std::max(2, samples / 8); ++i) {
            Rng frng(seed ^ 0x5a5a, uint64_t(i) * 131 + uint64_t(t));
            bdry_samples.push_back(fx.dim() == 0 ? fx.vertex(0) : sample_uniform(fx, frng));
        }
    }

    double min_dist = kInf;
    std::vector<Vector> vp_images, bd_images;
    for (const auto& x : vp_samples) vp_images.push_back(base_map(x));
    for (const auto& x : bdry_samples) bd_images.push_back(base_map(x));
    for (const auto& a : vp_images)
        for (const auto& b : bd_images) min_dist = std::min(min_dist, (a - b).norm());

    CriterionResult c;
    c.name = "boundary-separation";
    c.lhs = 0.0;
    c.rhs = min_dist;
    c.margin = min_dist;
    c.holds = min_dist > 0;
    double analytic = (1.0 / 6.0) * (m / (m + 1.0)) * (s0 / L0) * t0 * t0;
    c.witnesses.push_back(have_xi ? (xi < analytic ? "analytic separation guaranteed (xi = " +
                                                         std::to_string(xi) + " < " +
                                                         std::to_string(analytic) + ")"
                                                   : "analytic guarantee not established")
                                  : "no certified xi for this chart");
    return c;
}

// --- homeomorphism probe -----------------------------------------------------------

HomeoProbeResult homeomorphism_probe(const TestManifold& M, const GeometricComplex& A,
                                     std::int64_t injectivity_pairs, std::int64_t surjectivity_points,
                                     uint64_t seed) {
    HomeoProbeResult out;
    const std::int64_t T = A.n_top();
    const int m = A.dim();

    // cumulative measure for area-weighted simplex sampling
    std::vector<double> cum(size_t(T) + 1, 0.0);
    for (std::int64_t t = 0; t < T; ++t) {
        auto q = quality_measures(A.realize_top(t));
        double vol = q.longest_edge_L;  // proportional enough for sampling
        if (m == 2) vol = q.longest_edge_L * q.min_altitude_a;
        cum[size_t(t) + 1] = cum[size_t(t)] + vol;
    }
    double total = cum.back();

    auto draw_point = [&](Rng& rng) {
        double u = rng.uniform(0.0, total);
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        std::int64_t t = std::max<std::int64_t>(0, (it - cum.begin()) - 1);
        t = std::min<std::int64_t>(t, T - 1);
        Rng local(rng.next());
        return sample_uniform(A.realize_top(t), local);
    };

    std::atomic<std::int64_t> collisions{0};
    parallel_for(injectivity_pairs, [&](std::int64_t i) {
        Rng rng(seed, uint64_t(i));
        Vector x = draw_point(rng), y = draw_point(rng);
        Vector hx = M.closest_point(x).point_on_M, hy = M.closest_point(y).point_on_M;
        if ((hx - hy).norm() < 1e-9 && (x - y).norm() >= 1e-6) ++collisions;
    });
    out.collisions = collisions.load();
    out.injectivity_pass = out.collisions == 0;

    // surjectivity: local inversion through the nearest vertex's star
    HashGrid grid;
    double Lmax = 0;
    for (std::int64_t t = 0; t < T; ++t) Lmax = std::max(Lmax, edge_length_max(A, t));
    grid.build(A, std::max(2.0 * Lmax, 1e-9));

    std::atomic<std::int64_t> failures{0};
    std::vector<double> worst(kMaxParallelChunks, 0.0);
    int n_chunks = 0;
    parallel_chunks(surjectivity_points, [&](std::int64_t b, std::int64_t e, int ci) {
        for (std::int64_t i = b; i < e; ++i) {
            Rng rng(seed ^ 0x777, uint64_t(i));
            Vector z = M.sample_point(rng);
            double best = kInf;
            // nearest vertex (expanding rings)
            VertexId nearest = -1;
            for (double radius = 2.0 * Lmax; nearest < 0 && radius < 64 * Lmax; radius *= 2) {
                double bd = kInf;
                grid.visit_ball(A, z, radius, [&](VertexId v) {
                    double d = (A.vertex(v) - z).norm();
                    if (d < bd) {
                        bd = d;
                        nearest = v;
                    }
                });
            }
            if (nearest >= 0) {
                for (TopId t : A.tops_of_vertex(nearest)) {
                    EuclideanSimplex sx = A.realize_top(t);
                    // Gauss-Newton on barycentric coordinates of the simplex
                    std::vector<double> lam(size_t(m) + 1, 1.0 / (m + 1));
                    for (int it = 0; it < 40; ++it) {
                        Vector x = point_from_barycentric(sx, lam);
                        Vector r = M.closest_point(x).point_on_M - z;
                        if (r.norm() < 1e-9) break;
                        // descend in the simplex's edge parametrization
                        Matrix J(r.size(), m);
                        double h = 1e-7 * std::max(1.0, Lmax);
                        for (int d = 1; d <= m; ++d) {
                            auto lp = lam;
                            lp[size_t(d)] += h;
                            lp[0] -= h;
                            Vector xv = point_from_barycentric(sx, lp);
                            J.col(d - 1) = (M.closest_point(xv).point_on_M -
                                            M.closest_point(x).point_on_M) /
                                           h;
                        }
                        Vector step = (J.transpose() * J).ldlt().solve(J.transpose() * r);
                        if (!step.allFinite()) break;
                        for (int d = 1; d <= m; ++d) {
                            lam[size_t(d)] -= step(d - 1);
                            lam[0] += step(d - 1);
                        }
                        // clamp back into the simplex
                        double sum = 0;
                        for (double& l : lam) {
                            l = std::max(l, 0.0);
                            sum += l;
                        }
                        for (double& l : lam) l /= sum;
                    }
                    Vector x = point_from_barycentric(sx, lam);
                    best = std::min(best, (M.closest_point(x).point_on_M - z).norm());
                    if (best < 1e-7) break;
                }
            }
            if (!(best < 1e-7)) ++failures;
            worst[size_t(ci)] = std::max(worst[size_t(ci)], best == kInf ? 1.0 : best);
        }
    }, &n_chunks);
    out.inversion_failures = failures.load();
    out.surjectivity_pass = out.inversion_failures == 0;
    for (int ci = 0; ci < n_chunks; ++ci)
        out.worst_inversion_residual = std::max(out.worst_inversion_residual, worst[size_t(ci)]);
    return out;
}

// --- keystone: certified vs empirical ------------------------------------------------

KeystoneResult keystone_check(const TestManifold& M, const GeometricComplex& A,
                              const RrchChoice& policy, int pairs_per_simplex, uint64_t seed) {
    KeystoneResult out;
    const std::int64_t V = A.n_vertices();
    const int m = A.dim();
    std::atomic<std::int64_t> chart_simplices{0}, violations{0};
    std::vector<double> worst(kMaxParallelChunks, 0.0);
    int n_chunks = 0;
    parallel_chunks(V, [&](std::int64_t vb, std::int64_t ve, int ci) {
        StarScratch scratch;
        for (std::int64_t vi = vb; vi < ve; ++vi) {
            VertexId p = VertexId(vi);
            Vector pp = A.vertex(p);
            Flat tangent = M.tangent_flat(pp);
            if (classify_star(A, p, tangent, scratch) != StarStatus::Ok)
                throw PreconditionViolated("keystone: invalid star at vertex " + std::to_string(p));
            double L0s, s0s, t0s;
            star_quality(A, p, scratch, false, L0s, s0s, t0s);
            double R = r_rch_at(M, pp, policy);
            double q = (L0s * L0s) / (t0s * t0s * R * R);
            if (!(q <= 1.0 / 256.0))
                throw PreconditionViolated("keystone: no certified bound at vertex " +
                                           std::to_string(p));
            double rho = (L0s / R) * (1.0 + 2.0 * L0s / R);
            double xi_total = compose_distortion({q / (1.0 - q), 12.0 * q, 4.0 * rho * rho});

            for (TopId t : A.tops_of_vertex(p)) {
                ++chart_simplices;
                auto k = A.top(t);
                const Vector *ca[3], *aa[3];
                for (int i = 0; i <= m; ++i) {
                    int idx = scratch.index_of(k[i]);
                    ca[i] = &scratch.chart[size_t(idx)];
                    aa[i] = &scratch.ambient[size_t(idx)];
                }
                Rng rng(seed ^ uint64_t(p), uint64_t(t));
                double w = 0;
                for (int pair = 0; pair < pairs_per_simplex; ++pair) {
                    auto l1 = sample_uniform_barycentric(m, rng);
                    auto l2 = sample_uniform_barycentric(m, rng);
                    Vector c1 = l1[0] * (*ca[0]), c2 = l2[0] * (*ca[0]);
                    Vector a1 = l1[0] * (*aa[0]), a2 = l2[0] * (*aa[0]);
                    for (int i = 1; i <= m; ++i) {
                        c1 += l1[size_t(i)] * (*ca[i]);
                        c2 += l2[size_t(i)] * (*ca[i]);
                        a1 += l1[size_t(i)] * (*aa[i]);
                        a2 += l2[size_t(i)] * (*aa[i]);
                    }
                    double d = (c1 - c2).norm();
                    if (d <= 1e-14) continue;
                    Vector f1 = tangent.basis().transpose() *
                                (M.closest_point(a1).point_on_M - pp);
                    Vector f2 = tangent.basis().transpose() *
                                (M.closest_point(a2).point_on_M - pp);
                    double dev = std::abs((f1 - f2).norm() / d - 1.0);
                    w = std::max(w, dev);
                }
                if (w > xi_total) ++violations;
                worst[size_t(ci)] = std::max(worst[size_t(ci)], w / xi_total);
            }
        }
    }, &n_chunks);
    out.chart_simplices = chart_simplices.load();
    out.violations = violations.load();
    for (int ci = 0; ci < n_chunks; ++ci) out.worst_ratio = std::max(out.worst_ratio, worst[size_t(ci)]);
    return out;
}

}  // namespace tricert
