#include "tricert/meshgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace tricert {

MeshRecipe MeshRecipe::parse(const std::string& text) {
    MeshRecipe r;
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    auto to_int = [&](const std::string& s) {
        try {
            size_t used = 0;
            int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return v;
        } catch (...) {
            throw BadRecipe("recipe: bad integer '" + s + "'");
        }
    };
    if (kind == "icosphere") {
        r.generator = Generator::Icosphere;
        r.level = to_int(rest);
        if (r.level < 0 || r.level > 10) throw BadRecipe("icosphere level out of range [0,10]");
    } else if (kind == "torusgrid") {
        r.generator = Generator::TorusGrid;
        auto x = rest.find('x');
        if (x == std::string::npos) throw BadRecipe("torusgrid:NUxNV");
        r.nu = to_int(rest.substr(0, x));
        r.nv = to_int(rest.substr(x + 1));
        if (r.nu < 3 || r.nv < 3) throw BadRecipe("torusgrid needs nu, nv >= 3");
    } else if (kind == "polycircle") {
        r.generator = Generator::PolyCircle;
        r.n = to_int(rest);
        if (r.n < 3) throw BadRecipe("polycircle needs n >= 3");
    } else {
        throw BadRecipe("unknown recipe '" + kind + "' (icosphere, torusgrid, polycircle)");
    }
    return r;
}

std::string MeshRecipe::to_string() const {
    std::ostringstream os;
    switch (generator) {
        case Generator::Icosphere: os << "icosphere:" << level; break;
        case Generator::TorusGrid: os << "torusgrid:" << nu << "x" << nv; break;
        case Generator::PolyCircle: os << "polycircle:" << n; break;
    }
    return os.str();
}

namespace {

using Generator = MeshRecipe::Generator;

// Orients every top simplex so that its normal (or traversal direction for
// m = 1) agrees with the manifold's outward/consistent orientation.
void orient_outward(GeometricComplex& c, const TestManifold& M) {
    if (c.dim() == 2 && c.ambient_dim() == 3) {
        for (TopId t = 0; t < c.n_top(); ++t) {
            auto k = c.top(t);
            Vector a = c.vertex(k[0]), b = c.vertex(k[1]), d = c.vertex(k[2]);
            Vector centroid = (a + b + d) / 3.0;
            Vector n(3);
            Vector e1 = b - a, e2 = d - a;
            n << e1(1) * e2(2) - e1(2) * e2(1), e1(2) * e2(0) - e1(0) * e2(2),
                e1(0) * e2(1) - e1(1) * e2(0);
            ProjectionResult pr = M.closest_point(centroid);
            Vector outward = M.outward_normal(pr.point_on_M);
            double s = n.dot(outward) * c.parity(t);
            if (s < 0) c.flip_orientation(t);
        }
        return;
    }
    if (c.dim() == 1) {
        // counter-clockwise traversal: oriented edge direction crossed with the
        // outward radial direction must be consistent
        for (TopId t = 0; t < c.n_top(); ++t) {
            auto k = c.top(t);
            Vector a = c.vertex(k[0]), b = c.vertex(k[1]);
            Vector mid = 0.5 * (a + b);
            Vector dir = (b - a) * c.parity(t);
            double cross = mid(0) * dir(1) - mid(1) * dir(0);
            if (cross < 0) c.flip_orientation(t);
        }
        return;
    }
    c.orient_coherently();
}

GeometricComplex gen_icosphere(int level, const TestManifold& M) {
    if (M.intrinsic_dim() != 2 || M.ambient_dim() != 3)
        throw BadRecipe("icosphere needs a 2-sphere in R^3 (sphere:2,3,r)");
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Vector> verts;
    auto add = [&](double x, double y, double z) {
        Vector v(3);
        v << x, y, z;
        verts.push_back(v);
    };
    add(-1, phi, 0); add(1, phi, 0); add(-1, -phi, 0); add(1, -phi, 0);
    add(0, -1, phi); add(0, 1, phi); add(0, -1, -phi); add(0, 1, -phi);
    add(phi, 0, -1); add(phi, 0, 1); add(-phi, 0, -1); add(-phi, 0, 1);
    static const int F[20][3] = {{0, 11, 5},  {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                 {1, 5, 9},   {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                 {3, 9, 4},   {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                 {4, 9, 5},   {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    std::vector<std::array<int, 3>> faces;
    for (auto& f : F) faces.push_back({f[0], f[1], f[2]});

    auto project = [&M](const Vector& v) { return M.closest_point(v).point_on_M; };
    for (auto& v : verts) v = project(v);

    for (int l = 0; l < level; ++l) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            Vector mv = project(0.5 * (verts[size_t(a)] + verts[size_t(b)]));
            verts.push_back(mv);
            int id = int(verts.size()) - 1;
            midpoint.emplace(key, id);
            return id;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (auto& f : faces) {
            int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces.swap(next);
    }

    GeometricComplex c(2, 3);
    for (auto& v : verts) c.add_vertex(v);
    for (auto& f : faces) {
        VertexId ids[3] = {VertexId(f[0]), VertexId(f[1]), VertexId(f[2])};
        c.add_top_simplex(ids);
    }
    c.finalize();
    orient_outward(c, M);
    return c;
}

GeometricComplex gen_torusgrid(int nu, int nv, const TestManifold& M) {
    if (M.spec_string().rfind("torus:", 0) != 0) throw BadRecipe("torusgrid needs a torus manifold");
    GeometricComplex c(2, 3);
    // param_point of the torus takes (phi, psi)
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            Vector th(2);
            th << 2 * M_PI * i / nu, 2 * M_PI * j / nv;
            c.add_vertex(M.param_point(0, th));
        }
    auto vid = [&](int i, int j) { return VertexId(((j % nv + nv) % nv) * nu + ((i % nu + nu) % nu)); };
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            VertexId a = vid(i, j), b = vid(i + 1, j), d = vid(i, j + 1), e = vid(i + 1, j + 1);
            if ((i + j) % 2 == 0) {
                VertexId t1[3] = {a, b, e}, t2[3] = {a, e, d};
                c.add_top_simplex(t1);
                c.add_top_simplex(t2);
            } else {
                VertexId t1[3] = {a, b, d}, t2[3] = {b, e, d};
                c.add_top_simplex(t1);
                c.add_top_simplex(t2);
            }
        }
    c.finalize();
    orient_outward(c, M);
    return c;
}

GeometricComplex gen_polycircle(int n, const TestManifold& M) {
    if (M.intrinsic_dim() != 1 || M.ambient_dim() != 2)
        throw BadRecipe("polycircle needs a circle in R^2 (circle:r)");
    GeometricComplex c(1, 2);
    for (int k = 0; k < n; ++k) {
        Vector th(1);
        th << 2 * M_PI * k / n;
        c.add_vertex(M.param_point(0, th));
    }
    for (int k = 0; k < n; ++k) {
        VertexId e[2] = {VertexId(k), VertexId((k + 1) % n)};
        c.add_top_simplex(e);
    }
    c.finalize();
    orient_outward(c, M);
    return c;
}

}  // namespace

GeometricComplex generate(const MeshRecipe& recipe, const TestManifold& M) {
    GeometricComplex c(0, 0);
    switch (recipe.generator) {
        case Generator::Icosphere: c = gen_icosphere(recipe.level, M); break;
        case Generator::TorusGrid: c = gen_torusgrid(recipe.nu, recipe.nv, M); break;
        case Generator::PolyCircle: c = gen_polycircle(recipe.n, M); break;
    }
    double worst = 0;
    for (VertexId v = 0; v < c.n_vertices(); ++v)
        worst = std::max(worst, M.on_manifold_residual(c.vertex(v)));
    if (worst > 1e-10) throw Error("generated vertices off the manifold");
    for (const auto& mut : recipe.mutations) c = apply_mutation(c, M, mut);
    return c;
}

MeshConstants mesh_constants(const GeometricComplex& c, const TestManifold& M,
                             const RrchChoice& policy, bool per_vertex) {
    MeshConstants out;
    const std::int64_t V = c.n_vertices(), T = c.n_top();
    if (T == 0) throw BadRecipe("empty complex");
    for (VertexId v = 0; v < V; ++v)
        if (M.on_manifold_residual(c.vertex(v)) > tol().geometric) throw VerticesOffManifold();

    out.s0 = std::numeric_limits<double>::infinity();
    out.L_min = std::numeric_limits<double>::infinity();
    if (per_vertex) {
        out.eps0_per_vertex.assign(size_t(V), 0.0);
        out.mu0_per_vertex.assign(size_t(V), 1.0);
        out.t0_per_vertex.assign(size_t(V), 1.0);
    }

    // global pass over top simplices
    std::vector<double> Ltop(static_cast<size_t>(T)), ttop(static_cast<size_t>(T));
    parallel_for(T, [&](std::int64_t t) {
        auto q = quality_measures(c.realize_top(t));
        Ltop[size_t(t)] = q.longest_edge_L;
        ttop[size_t(t)] = q.thickness_t;
    });
    for (std::int64_t t = 0; t < T; ++t) {
        out.L_max = std::max(out.L_max, Ltop[size_t(t)]);
        out.L_min = std::min(out.L_min, Ltop[size_t(t)]);
        out.t_min = std::min(out.t_min, ttop[size_t(t)]);
    }
    out.L0 = out.L_max;
    out.s0 = out.L_min;
    out.t0 = out.t_min;

    // eps0 = max over (simplex, vertex) of L(sigma) / lfsref(p)
    std::vector<double> lfsref(static_cast<size_t>(V));
    parallel_for(V, [&](std::int64_t v) {
        lfsref[size_t(v)] = r_rch_at(M, c.vertex(VertexId(v)), policy);
    });
    double eps0 = 0;
    for (std::int64_t t = 0; t < T; ++t)
        for (VertexId v : c.top(t)) eps0 = std::max(eps0, Ltop[size_t(t)] / lfsref[size_t(v)]);
    out.eps0 = eps0;
    double mu0 = 1;
    for (std::int64_t t = 0; t < T; ++t)
        for (VertexId v : c.top(t))
            mu0 = std::min(mu0, Ltop[size_t(t)] / (eps0 * lfsref[size_t(v)]));
    out.mu0 = mu0;

    if (per_vertex) {
        parallel_for(V, [&](std::int64_t v) {
            double e = 0, t0 = 1;
            for (TopId t : c.tops_of_vertex(VertexId(v))) {
                e = std::max(e, Ltop[size_t(t)] / lfsref[size_t(v)]);
                t0 = std::min(t0, ttop[size_t(t)]);
            }
            double mu = 1;
            for (TopId t : c.tops_of_vertex(VertexId(v)))
                mu = std::min(mu, Ltop[size_t(t)] / (e * lfsref[size_t(v)]));
            out.eps0_per_vertex[size_t(v)] = e;
            out.mu0_per_vertex[size_t(v)] = mu;
            out.t0_per_vertex[size_t(v)] = t0;
        });
    }
    return out;
}

GeometricComplex apply_mutation(const GeometricComplex& c, const TestManifold& M,
                                const Mutation& mut) {
    Rng rng(mut.seed);
    std::int64_t target = mut.target >= 0 ? mut.target : std::int64_t(rng.index(uint64_t(c.n_top())));
    if (target >= c.n_top()) throw BadRecipe("mutation target out of range");

    if (mut.kind == Mutation::Kind::FlipOrientation) {
        GeometricComplex out = c;
        out.flip_orientation(target);
        return out;
    }

    if (mut.kind == Mutation::Kind::Sliver) {
        if (c.dim() < 2) throw BadRecipe("sliver mutation needs dimension >= 2");
        if (!(mut.severity > 0 && mut.severity < 1)) throw BadRecipe("sliver severity in (0,1)");
        GeometricComplex out = c;
        auto k = c.top(target);
        VertexId v = k[0];
        Vector opposite_mid = Vector::Zero(c.ambient_dim());
        for (int i = 1; i <= c.dim(); ++i) opposite_mid += c.vertex(k[i]);
        opposite_mid /= double(c.dim());
        Vector moved = c.vertex(v) + mut.severity * (opposite_mid - c.vertex(v));
        out.set_vertex(v, M.closest_point(moved).point_on_M);
        return out;
    }

    // RogueVertex: place a new vertex on M over the target simplex's interior,
    // connected by splitting the farthest top simplex.
    Vector pos = M.closest_point(c.realize_top(target).barycentre()).point_on_M;
    std::int64_t victim = -1;
    double far_d = -1;
    for (std::int64_t t = 0; t < c.n_top(); ++t) {
        double d = (c.realize_top(t).barycentre() - pos).norm();
        if (d > far_d) {
            far_d = d;
            victim = t;
        }
    }
    GeometricComplex out(c.dim(), c.ambient_dim());
    for (VertexId v = 0; v < c.n_vertices(); ++v) out.add_vertex(c.vertex(v));
    VertexId rogue = out.add_vertex(pos);
    std::vector<VertexId> key;
    for (std::int64_t t = 0; t < c.n_top(); ++t) {
        if (t == victim) continue;
        key.assign(c.top(t).begin(), c.top(t).end());
        out.add_top_simplex(key);
        if (c.parity(t) < 0) out.flip_orientation(out.n_top() - 1);
    }
    auto vk = c.top(victim);
    for (int omit = 0; omit <= c.dim(); ++omit) {
        key.clear();
        for (int i = 0; i <= c.dim(); ++i) key.push_back(omit == i ? rogue : vk[i]);
        // replacing vertex `omit` keeps the induced orientation when the
        // replacement sits in the same position parity-wise
        out.add_top_simplex(key);
        bool flip = c.parity(victim) < 0;
        if (flip) out.flip_orientation(out.n_top() - 1);
    }
    out.finalize();
    return out;
}

}  // namespace tricert
