#pragma once

#include <span>
#include <vector>

#include "tricert/simplex.hpp"

namespace tricert {

using VertexId = std::int32_t;
using TopId = std::int32_t;
/// Canonical simplex key: strictly increasing vertex ids.
using SimplexKey = std::vector<VertexId>;

class GeometricComplex;

/// A face-closed set of simplices of a parent complex.
struct SubcomplexView {
    const GeometricComplex* parent = nullptr;
    std::vector<SimplexKey> keys;  // sorted, unique, closed under faces

    bool contains(const SimplexKey& k) const;
    int max_dim() const;
    std::vector<VertexId> vertex_ids() const;
    std::vector<SimplexKey> of_dim(int d) const;
    /// True when every face of every member is itself a member.
    bool closure_audit() const;
};

struct ManifoldCheckResult {
    bool pure = false;
    bool coface_counts_ok = false;       // every (m-1)-face has <= 2 m-cofaces
    bool links_ok = false;               // vertex links (m <= 3)
    bool link_check_partial = false;     // m > 3: links not fully checked
    bool boundary_empty = false;
    bool coherently_oriented = false;    // interior faces get opposite induced orientations
    bool is_manifold = false;            // manifold with boundary allowed
    bool is_closed_manifold = false;
    std::vector<std::string> failures;   // capped diagnostics
};

/// Pure m-dimensional simplicial complex with geometric realization, stored as
/// flat arrays (built for meshes up to ~1e8 top simplices).
///
/// Top simplices are kept with sorted vertex ids; orientation is a parity bit
/// relative to the sorted order.
class GeometricComplex {
  public:
    GeometricComplex(int dim_m, int ambient_N) : m_(dim_m), N_(ambient_N) {
        if (dim_m < 0 || ambient_N < dim_m) throw BadDimension("GeometricComplex dims");
    }

    VertexId add_vertex(const Vector& coords);
    /// Vertices in oriented order; stored sorted with a parity bit.
    void add_top_simplex(std::span<const VertexId> oriented);
    void finalize();  // validates and builds the vertex->top adjacency

    int dim() const { return m_; }
    int ambient_dim() const { return N_; }
    std::int64_t n_vertices() const { return std::int64_t(coords_.size()) / N_; }
    std::int64_t n_top() const { return std::int64_t(tops_.size()) / (m_ + 1); }

    Eigen::Map<const Vector> vertex(VertexId v) const {
        return Eigen::Map<const Vector>(coords_.data() + std::int64_t(v) * N_, N_);
    }
    void set_vertex(VertexId v, const Vector& coords);
    std::span<const VertexId> top(std::int64_t t) const {
        return {tops_.data() + t * (m_ + 1), size_t(m_ + 1)};
    }
    /// +1 / -1: orientation of top t relative to its sorted vertex order.
    int parity(std::int64_t t) const { return parity_[size_t(t)] ? -1 : +1; }
    void flip_orientation(std::int64_t t) { parity_[size_t(t)] = !parity_[size_t(t)]; }

    /// Geometric realization of top simplex t (vertices in sorted key order).
    EuclideanSimplex realize_top(std::int64_t t) const;
    EuclideanSimplex realize(const SimplexKey& k) const;

    /// Tops incident to all vertices of k (ascending top ids).
    std::vector<TopId> cofacet_tops(const SimplexKey& k) const;
    std::span<const TopId> tops_of_vertex(VertexId v) const;

    bool has_simplex(const SimplexKey& k) const;

    // --- spec operations -----------------------------------------------------
    SubcomplexView star(const SimplexKey& s) const;
    bool open_star_membership(const SimplexKey& s, const Vector& x) const;
    SubcomplexView boundary_complex() const;
    SubcomplexView skeleton(int k) const;
    ManifoldCheckResult is_manifold_complex() const;
    bool is_full_star(VertexId p) const;
    bool shrunken_star_contains(VertexId p, const Vector& x, double delta) const;

    /// Boundary (m-1)-faces, each with its unique coface top id.
    std::vector<std::pair<SimplexKey, TopId>> boundary_facets() const;

    /// Extract the subcomplex spanned by the given tops as its own complex;
    /// old vertex ids of the new complex's vertices returned through `old_ids`.
    GeometricComplex extract_tops(std::span<const TopId> top_ids,
                                  std::vector<VertexId>* old_ids = nullptr) const;

    /// Orient all top simplices coherently by propagation (orientable input
    /// required); the first top of each component keeps its current parity.
    void orient_coherently();

  private:
    int m_, N_;
    std::vector<double> coords_;
    std::vector<VertexId> tops_;
    std::vector<std::uint8_t> parity_;
    bool finalized_ = false;

    // CSR vertex -> incident top ids
    std::vector<std::int64_t> v2t_offset_;
    std::vector<TopId> v2t_data_;

    void require_finalized() const {
        if (!finalized_) throw Error("GeometricComplex: finalize() first");
    }
    template <typename Fn>
    void for_each_interior_and_boundary_facet(Fn&& fn) const;
};

/// All nonempty faces of a sorted key (including itself).
std::vector<SimplexKey> faces_of(const SimplexKey& k);

}  // namespace tricert
