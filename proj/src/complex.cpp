#include "tricert/complex.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>

namespace tricert {

// --- SubcomplexView -----------------------------------------------------------

bool SubcomplexView::contains(const SimplexKey& k) const {
    return std::binary_search(keys.begin(), keys.end(), k);
}

int SubcomplexView::max_dim() const {
    int d = -1;
    for (const auto& k : keys) d = std::max(d, int(k.size()) - 1);
    return d;
}

std::vector<VertexId> SubcomplexView::vertex_ids() const {
    std::vector<VertexId> out;
    for (const auto& k : keys)
        if (k.size() == 1) out.push_back(k[0]);
    return out;
}

std::vector<SimplexKey> SubcomplexView::of_dim(int d) const {
    std::vector<SimplexKey> out;
    for (const auto& k : keys)
        if (int(k.size()) == d + 1) out.push_back(k);
    return out;
}

bool SubcomplexView::closure_audit() const {
    for (const auto& k : keys)
        for (const auto& f : faces_of(k))
            if (!contains(f)) return false;
    return true;
}

std::vector<SimplexKey> faces_of(const SimplexKey& k) {
    const int n = int(k.size());
    std::vector<SimplexKey> out;
    out.reserve((size_t(1) << n) - 1);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        SimplexKey f;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) f.push_back(k[i]);
        out.push_back(std::move(f));
    }
    return out;
}

// --- construction ---------------------------------------------------------------

VertexId GeometricComplex::add_vertex(const Vector& coords) {
    if (coords.size() != N_) throw DimensionMismatch("add_vertex: wrong ambient dim");
    if (!coords.allFinite()) throw Error("add_vertex: non-finite coords");
    if (n_vertices() >= std::numeric_limits<VertexId>::max()) throw Error("too many vertices");
    coords_.insert(coords_.end(), coords.data(), coords.data() + N_);
    finalized_ = false;
    return VertexId(n_vertices() - 1);
}

void GeometricComplex::set_vertex(VertexId v, const Vector& coords) {
    if (v < 0 || v >= n_vertices()) throw UnknownVertex();
    if (coords.size() != N_) throw DimensionMismatch("set_vertex");
    std::copy(coords.data(), coords.data() + N_, coords_.begin() + std::int64_t(v) * N_);
}

void GeometricComplex::add_top_simplex(std::span<const VertexId> oriented) {
    if (int(oriented.size()) != m_ + 1) throw BadDimension("top simplex has wrong dimension");
    if (n_top() >= std::numeric_limits<TopId>::max()) throw Error("too many top simplices");
    SimplexKey k(oriented.begin(), oriented.end());
    // parity of the permutation taking `oriented` to sorted order
    int swaps = 0;
    for (size_t i = 0; i + 1 < k.size(); ++i)
        for (size_t j = 0; j + 1 < k.size() - i; ++j)
            if (k[j] > k[j + 1]) {
                std::swap(k[j], k[j + 1]);
                ++swaps;
            }
    for (size_t i = 0; i + 1 < k.size(); ++i)
        if (k[i] == k[i + 1]) throw Error("top simplex with repeated vertex");
    tops_.insert(tops_.end(), k.begin(), k.end());
    parity_.push_back(std::uint8_t(swaps & 1));
    finalized_ = false;
}

void GeometricComplex::finalize() {
    const std::int64_t V = n_vertices(), T = n_top();
    const int w = m_ + 1;
    for (VertexId v : tops_)
        if (v < 0 || v >= V) throw IndexOutOfRange("top simplex vertex id out of range");
    v2t_offset_.assign(V + 1, 0);
    for (std::int64_t t = 0; t < T; ++t)
        for (int i = 0; i < w; ++i) ++v2t_offset_[tops_[t * w + i] + 1];
    for (std::int64_t v = 0; v < V; ++v) v2t_offset_[v + 1] += v2t_offset_[v];
    v2t_data_.resize(size_t(v2t_offset_[V]));
    std::vector<std::int64_t> cursor(v2t_offset_.begin(), v2t_offset_.end() - 1);
    for (std::int64_t t = 0; t < T; ++t)
        for (int i = 0; i < w; ++i) v2t_data_[size_t(cursor[tops_[t * w + i]]++)] = TopId(t);
    finalized_ = true;  // adjacency is usable from here on
    // duplicate-top detection: duplicates share their minimum vertex
    for (std::int64_t v = 0; v < V; ++v) {
        auto ts = tops_of_vertex(VertexId(v));
        for (size_t a = 0; a < ts.size(); ++a)
            for (size_t b = a + 1; b < ts.size(); ++b) {
                auto ka = top(ts[a]), kb = top(ts[b]);
                if (std::equal(ka.begin(), ka.end(), kb.begin())) throw Error("duplicate top simplex");
            }
    }
}

std::span<const TopId> GeometricComplex::tops_of_vertex(VertexId v) const {
    require_finalized();
    if (v < 0 || v >= n_vertices()) throw UnknownVertex();
    return {v2t_data_.data() + v2t_offset_[v], size_t(v2t_offset_[v + 1] - v2t_offset_[v])};
}

std::vector<TopId> GeometricComplex::cofacet_tops(const SimplexKey& k) const {
    require_finalized();
    if (k.empty()) throw UnknownSimplex("empty key");
    std::vector<TopId> acc(tops_of_vertex(k[0]).begin(), tops_of_vertex(k[0]).end());
    std::vector<TopId> tmp;
    for (size_t i = 1; i < k.size() && !acc.empty(); ++i) {
        auto other = tops_of_vertex(k[i]);
        tmp.clear();
        std::set_intersection(acc.begin(), acc.end(), other.begin(), other.end(),
                              std::back_inserter(tmp));
        acc.swap(tmp);
    }
    return acc;
}

bool GeometricComplex::has_simplex(const SimplexKey& k) const {
    if (k.empty()) return false;
    for (size_t i = 0; i + 1 < k.size(); ++i)
        if (k[i] >= k[i + 1]) throw Error("simplex key not sorted");
    if (k[0] < 0 || k.back() >= n_vertices()) return false;
    if (int(k.size()) == 1) return !tops_of_vertex(k[0]).empty();
    return !cofacet_tops(k).empty();
}

EuclideanSimplex GeometricComplex::realize(const SimplexKey& k) const {
    Matrix V(N_, k.size());
    for (size_t i = 0; i < k.size(); ++i) V.col(i) = vertex(k[i]);
    return EuclideanSimplex(std::move(V));
}

EuclideanSimplex GeometricComplex::realize_top(std::int64_t t) const {
    auto k = top(t);
    Matrix V(N_, k.size());
    for (size_t i = 0; i < k.size(); ++i) V.col(i) = vertex(k[i]);
    return EuclideanSimplex(std::move(V));
}

// --- stars, skeleta, boundary ---------------------------------------------------

SubcomplexView GeometricComplex::star(const SimplexKey& s) const {
    require_finalized();
    if (!has_simplex(s)) throw UnknownSimplex();
    auto cofaces = cofacet_tops(s);
    std::set<SimplexKey> keyset;
    for (TopId t : cofaces) {
        SimplexKey k(top(t).begin(), top(t).end());
        for (auto& f : faces_of(k)) keyset.insert(std::move(f));
    }
    SubcomplexView view;
    view.parent = this;
    view.keys.assign(keyset.begin(), keyset.end());
    return view;
}

bool GeometricComplex::open_star_membership(const SimplexKey& s, const Vector& x) const {
    require_finalized();
    if (!has_simplex(s)) throw UnknownSimplex();
    auto cofaces = cofacet_tops(s);
    std::set<SimplexKey> candidates;
    for (TopId t : cofaces) {
        SimplexKey k(top(t).begin(), top(t).end());
        for (auto& f : faces_of(k))
            if (std::includes(f.begin(), f.end(), s.begin(), s.end())) candidates.insert(std::move(f));
    }
    for (const auto& tau : candidates) {
        EuclideanSimplex sx = realize(tau);
        double scale = std::max(1.0, quality_measures(sx).longest_edge_L);
        if (sx.dim() == 0) {
            if ((x - sx.vertex(0)).norm() <= tol().geometric * scale) return true;
            continue;
        }
        if (thickness(sx) < tol().degenerate_thickness) continue;
        if (sx.affine_hull().distance(x) > tol().geometric * scale) continue;
        auto lam = barycentric_coordinates(sx, x, BarycentricMode::Project);
        bool interior = true;
        for (double l : lam) interior = interior && l > tol().inside_simplex;
        if (interior) return true;
    }
    return false;
}

template <typename Fn>
void GeometricComplex::for_each_interior_and_boundary_facet(Fn&& fn) const {
    // Enumerates each distinct (m-1)-facet once (owned by its minimum coface
    // top id) along with all cofaces. fn(facet, cofaces) -> void.
    require_finalized();
    const std::int64_t T = n_top();
    SimplexKey facet(size_t(m_), VertexId(0));
    std::vector<TopId> cofaces;
    for (std::int64_t t = 0; t < T; ++t) {
        auto k = top(t);
        for (int omit = 0; omit <= m_; ++omit) {
            int c = 0;
            for (int i = 0; i <= m_; ++i)
                if (i != omit) facet[size_t(c++)] = k[i];
            cofaces = cofacet_tops(facet);
            if (!cofaces.empty() && cofaces.front() == TopId(t)) fn(facet, cofaces);
        }
    }
}

SubcomplexView GeometricComplex::boundary_complex() const {
    require_finalized();
    for (std::int64_t v = 0; v < n_vertices(); ++v)
        if (tops_of_vertex(VertexId(v)).empty()) throw NotPure("isolated vertex");
    std::set<SimplexKey> keyset;
    for_each_interior_and_boundary_facet([&](const SimplexKey& facet, const std::vector<TopId>& cof) {
        if (cof.size() == 1)
            for (auto& f : faces_of(facet)) keyset.insert(std::move(f));
    });
    SubcomplexView view;
    view.parent = this;
    view.keys.assign(keyset.begin(), keyset.end());
    return view;
}

std::vector<std::pair<SimplexKey, TopId>> GeometricComplex::boundary_facets() const {
    std::vector<std::pair<SimplexKey, TopId>> out;
    for_each_interior_and_boundary_facet([&](const SimplexKey& facet, const std::vector<TopId>& cof) {
        if (cof.size() == 1) out.emplace_back(facet, cof.front());
    });
    return out;
}

SubcomplexView GeometricComplex::skeleton(int k) const {
    require_finalized();
    if (k < 0 || k > m_) throw BadDimension("skeleton dimension");
    std::set<SimplexKey> keyset;
    const std::int64_t T = n_top();
    for (std::int64_t t = 0; t < T; ++t) {
        SimplexKey key(top(t).begin(), top(t).end());
        for (auto& f : faces_of(key))
            if (int(f.size()) <= k + 1) keyset.insert(std::move(f));
    }
    SubcomplexView view;
    view.parent = this;
    view.keys.assign(keyset.begin(), keyset.end());
    return view;
}

// --- manifold checks ------------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Combinatorial check that a set of triangles forms a 2-manifold (with
// boundary allowed), connected, and reports closedness + Euler characteristic.
struct TriSetCheck {
    bool manifold = false, connected = false, closed = false;
    int euler = 0;
};

TriSetCheck check_triangle_set(const std::vector<std::array<VertexId, 3>>& tris) {
    TriSetCheck out;
    if (tris.empty()) return out;
    std::map<VertexId, int> vid;
    for (auto& t : tris)
        for (VertexId v : t) vid.emplace(v, int(vid.size()));
    std::map<std::pair<int, int>, int> edge_count;
    for (auto& t : tris) {
        int a = vid[t[0]], b = vid[t[1]], c = vid[t[2]];
        ++edge_count[{std::min(a, b), std::max(a, b)}];
        ++edge_count[{std::min(a, c), std::max(a, c)}];
        ++edge_count[{std::min(b, c), std::max(b, c)}];
    }
    bool cof_ok = true, all_closed = true;
    for (auto& [e, c] : edge_count) {
        if (c > 2) cof_ok = false;
        if (c != 2) all_closed = false;
    }
    UnionFind uf(int(vid.size()));
    for (auto& t : tris) {
        uf.unite(vid[t[0]], vid[t[1]]);
        uf.unite(vid[t[0]], vid[t[2]]);
    }
    int comps = 0;
    for (size_t i = 0; i < uf.parent.size(); ++i)
        if (uf.find(int(i)) == int(i)) ++comps;
    out.connected = comps == 1;
    out.closed = all_closed;
    out.euler = int(vid.size()) - int(edge_count.size()) + int(tris.size());
    // vertex-link condition inside the triangle set: every vertex's incident
    // edges opposite to it form a single path/cycle
    bool links_ok = true;
    std::map<int, std::vector<std::pair<int, int>>> star_edges;
    for (auto& t : tris) {
        int a = vid[t[0]], b = vid[t[1]], c = vid[t[2]];
        star_edges[a].push_back({b, c});
        star_edges[b].push_back({a, c});
        star_edges[c].push_back({a, b});
    }
    for (auto& [v, edges] : star_edges) {
        std::map<int, int> deg;
        std::map<int, int> lid;
        for (auto& [a, b] : edges) {
            ++deg[a];
            ++deg[b];
            lid.emplace(a, int(lid.size()));
            lid.emplace(b, int(lid.size()));
        }
        int odd = 0;
        bool degs_ok = true;
        for (auto& [u, d] : deg) {
            if (d > 2) degs_ok = false;
            if (d == 1) ++odd;
        }
        UnionFind luf(int(lid.size()));
        for (auto& [a, b] : edges) luf.unite(lid[a], lid[b]);
        int lcomps = 0;
        for (size_t i = 0; i < luf.parent.size(); ++i)
            if (luf.find(int(i)) == int(i)) ++lcomps;
        if (!degs_ok || lcomps != 1 || (odd != 0 && odd != 2)) links_ok = false;
    }
    out.manifold = cof_ok && links_ok;
    return out;
}

}  // namespace

ManifoldCheckResult GeometricComplex::is_manifold_complex() const {
    require_finalized();
    ManifoldCheckResult r;
    const std::int64_t V = n_vertices(), T = n_top();
    auto note = [&r](std::string s) {
        if (r.failures.size() < 16) r.failures.push_back(std::move(s));
    };

    r.pure = T > 0;
    for (std::int64_t v = 0; v < V && r.pure; ++v)
        if (tops_of_vertex(VertexId(v)).empty()) {
            r.pure = false;
            note("isolated vertex " + std::to_string(v));
        }

    // facet pass: coface counts, boundary, orientation coherence (parallel)
    std::atomic<bool> cof_ok{true}, closed{true}, coherent{true};
    std::mutex note_mu;
    parallel_chunks(T, [&](std::int64_t tb, std::int64_t te, int) {
        SimplexKey facet(size_t(m_), VertexId(0));
        for (std::int64_t t = tb; t < te; ++t) {
            auto k = top(t);
            for (int omit = 0; omit <= m_; ++omit) {
                int c = 0;
                for (int i = 0; i <= m_; ++i)
                    if (i != omit) facet[size_t(c++)] = k[i];
                auto cof = cofacet_tops(facet);
                if (cof.front() != TopId(t)) continue;  // owned elsewhere
                if (cof.size() > 2) {
                    cof_ok = false;
                    std::lock_guard<std::mutex> lk(note_mu);
                    note("facet with " + std::to_string(cof.size()) + " cofaces at top " +
                         std::to_string(t));
                } else if (cof.size() == 1) {
                    closed = false;
                } else {
                    // induced orientation parity: parity(top) * (-1)^(omitted pos)
                    int sgn[2];
                    for (int s = 0; s < 2; ++s) {
                        auto kk = top(cof[size_t(s)]);
                        int pos = 0;
                        for (int i = 0; i <= m_; ++i) {
                            bool in_facet = false;
                            for (int f = 0; f < m_; ++f) in_facet |= facet[size_t(f)] == kk[i];
                            if (!in_facet) {
                                pos = i;
                                break;
                            }
                        }
                        sgn[s] = parity(cof[size_t(s)]) * ((pos % 2) ? -1 : 1);
                    }
                    if (sgn[0] == sgn[1]) {
                        coherent = false;
                        std::lock_guard<std::mutex> lk(note_mu);
                        note("incoherent orientation across tops " + std::to_string(cof[0]) + "," +
                             std::to_string(cof[1]));
                    }
                }
            }
        }
    });
    r.coface_counts_ok = cof_ok.load();
    r.boundary_empty = closed.load();
    r.coherently_oriented = coherent.load();

    // vertex links
    std::atomic<bool> links_ok{true};
    if (m_ == 1) {
        parallel_chunks(V, [&](std::int64_t vb, std::int64_t ve, int) {
            for (std::int64_t v = vb; v < ve; ++v) {
                size_t d = tops_of_vertex(VertexId(v)).size();
                if (d > 2 || d == 0) {
                    links_ok = false;
                    std::lock_guard<std::mutex> lk(note_mu);
                    note("vertex " + std::to_string(v) + " has degree " + std::to_string(d));
                }
            }
        });
    } else if (m_ == 2) {
        parallel_chunks(V, [&](std::int64_t vb, std::int64_t ve, int) {
            std::vector<VertexId> link_v;
            for (std::int64_t v = vb; v < ve; ++v) {
                auto ts = tops_of_vertex(VertexId(v));
                link_v.clear();
                std::map<VertexId, int> deg;
                std::map<VertexId, int> lid;
                for (TopId t : ts) {
                    auto k = top(t);
                    VertexId o[2];
                    int c = 0;
                    for (int i = 0; i <= 2; ++i)
                        if (k[i] != VertexId(v)) o[c++] = k[i];
                    ++deg[o[0]];
                    ++deg[o[1]];
                    lid.emplace(o[0], int(lid.size()));
                    lid.emplace(o[1], int(lid.size()));
                }
                int odd = 0;
                bool degs_ok = true;
                for (auto& [u, d] : deg) {
                    if (d > 2) degs_ok = false;
                    if (d == 1) ++odd;
                }
                UnionFind uf(int(lid.size()));
                for (TopId t : ts) {
                    auto k = top(t);
                    VertexId o[2];
                    int c = 0;
                    for (int i = 0; i <= 2; ++i)
                        if (k[i] != VertexId(v)) o[c++] = k[i];
                    uf.unite(lid[o[0]], lid[o[1]]);
                }
                int comps = 0;
                for (size_t i = 0; i < uf.parent.size(); ++i)
                    if (uf.find(int(i)) == int(i)) ++comps;
                if (!degs_ok || comps != 1 || (odd != 0 && odd != 2)) {
                    links_ok = false;
                    std::lock_guard<std::mutex> lk(note_mu);
                    note("bad link at vertex " + std::to_string(v));
                }
            }
        });
    } else if (m_ == 3) {
        parallel_chunks(V, [&](std::int64_t vb, std::int64_t ve, int) {
            for (std::int64_t v = vb; v < ve; ++v) {
                auto ts = tops_of_vertex(VertexId(v));
                std::vector<std::array<VertexId, 3>> link;
                link.reserve(ts.size());
                for (TopId t : ts) {
                    auto k = top(t);
                    std::array<VertexId, 3> o{};
                    int c = 0;
                    for (int i = 0; i <= 3; ++i)
                        if (k[i] != VertexId(v)) o[size_t(c++)] = k[i];
                    link.push_back(o);
                }
                auto chk = check_triangle_set(link);
                bool ok = chk.manifold && chk.connected && (chk.euler == 2 || chk.euler == 1);
                if (!ok) {
                    links_ok = false;
                    std::lock_guard<std::mutex> lk(note_mu);
                    note("bad link at vertex " + std::to_string(v));
                }
            }
        });
    } else {
        r.link_check_partial = true;
    }
    r.links_ok = links_ok.load();  // for m > 3 this only reflects partial checks

    r.is_manifold = r.pure && r.coface_counts_ok && r.links_ok;
    r.is_closed_manifold = r.is_manifold && r.boundary_empty;
    return r;
}

bool GeometricComplex::is_full_star(VertexId p) const {
    require_finalized();
    if (p < 0 || p >= n_vertices()) throw UnknownVertex();
    auto ts = tops_of_vertex(p);
    if (ts.empty()) return false;
    std::vector<VertexId> old_ids;
    GeometricComplex sub = extract_tops({ts.begin(), ts.size()}, &old_ids);
    auto chk = sub.is_manifold_complex();
    if (!chk.is_manifold) return false;
    if (chk.boundary_empty) return true;  // p interior of a closed star carrier
    VertexId p_new = -1;
    for (size_t i = 0; i < old_ids.size(); ++i)
        if (old_ids[i] == p) p_new = VertexId(i);
    for (auto& [facet, t] : sub.boundary_facets())
        for (VertexId v : facet)
            if (v == p_new) return false;
    return true;
}

bool GeometricComplex::shrunken_star_contains(VertexId p, const Vector& x, double delta) const {
    require_finalized();
    if (p < 0 || p >= n_vertices()) throw UnknownVertex();
    if (!(delta > 0.0) || !(delta < 1.0 / (m_ + 1)))
        throw PreconditionViolated("delta outside (0, 1/(m+1))");
    bool found = false;
    for (TopId t : tops_of_vertex(p)) {
        EuclideanSimplex s = realize_top(t);
        double scale = std::max(1.0, quality_measures(s).longest_edge_L);
        if (s.affine_hull().distance(x) > tol().geometric * scale) continue;
        auto lam = barycentric_coordinates(s, x, BarycentricMode::Project);
        bool inside = true;
        for (double l : lam) inside = inside && l >= -tol().inside_simplex;
        if (!inside) continue;
        found = true;
        auto k = top(t);
        for (int i = 0; i <= m_; ++i)
            if (k[i] == p && lam[size_t(i)] > 1.0 / (m_ + 1) - delta) return true;
    }
    if (!found) throw PointOutsideStar();
    return false;
}

GeometricComplex GeometricComplex::extract_tops(std::span<const TopId> top_ids,
                                                std::vector<VertexId>* old_ids) const {
    GeometricComplex out(m_, N_);
    std::map<VertexId, VertexId> vmap;
    std::vector<VertexId> olds;
    for (TopId t : top_ids)
        for (VertexId v : top(t))
            if (vmap.emplace(v, VertexId(vmap.size())).second) olds.push_back(v);
    // map preserves insertion-id order only via olds; re-add in first-seen order
    for (VertexId v : olds) out.add_vertex(vertex(v));
    std::vector<VertexId> key(static_cast<size_t>(m_ + 1));
    for (TopId t : top_ids) {
        auto k = top(t);
        for (int i = 0; i <= m_; ++i) key[size_t(i)] = vmap[k[i]];
        out.add_top_simplex(key);
        if (parity(t) < 0) out.flip_orientation(out.n_top() - 1);
    }
    out.finalize();
    if (old_ids) *old_ids = std::move(olds);
    return out;
}

void GeometricComplex::orient_coherently() {
    require_finalized();
    const std::int64_t T = n_top();
    std::vector<std::uint8_t> visited(size_t(T), 0);
    std::vector<TopId> stack;
    SimplexKey facet(size_t(m_), VertexId(0));
    for (std::int64_t seed = 0; seed < T; ++seed) {
        if (visited[size_t(seed)]) continue;
        visited[size_t(seed)] = 1;
        stack.push_back(TopId(seed));
        while (!stack.empty()) {
            TopId t = stack.back();
            stack.pop_back();
            auto k = top(t);
            for (int omit = 0; omit <= m_; ++omit) {
                int c = 0;
                for (int i = 0; i <= m_; ++i)
                    if (i != omit) facet[size_t(c++)] = k[i];
                auto cof = cofacet_tops(facet);
                if (cof.size() != 2) continue;
                TopId u = cof[0] == t ? cof[1] : cof[0];
                auto ku = top(u);
                int pos_u = 0;
                for (int i = 0; i <= m_; ++i) {
                    bool in_facet = false;
                    for (int f = 0; f < m_; ++f) in_facet |= facet[size_t(f)] == ku[i];
                    if (!in_facet) {
                        pos_u = i;
                        break;
                    }
                }
                int s_t = parity(t) * ((omit % 2) ? -1 : 1);
                int s_u = parity(u) * ((pos_u % 2) ? -1 : 1);
                if (!visited[size_t(u)]) {
                    if (s_t == s_u) flip_orientation(u);
                    visited[size_t(u)] = 1;
                    stack.push_back(u);
                } else if (s_t == s_u) {
                    throw InputNotManifold("complex is not orientable");
                }
            }
        }
    }
}

}  // namespace tricert
