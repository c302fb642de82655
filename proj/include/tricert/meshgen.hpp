#pragma once

#include "tricert/complex.hpp"
#include "tricert/manifolds.hpp"

namespace tricert {

struct Mutation {
    enum class Kind { Sliver, FlipOrientation, RogueVertex };
    Kind kind = Kind::FlipOrientation;
    std::int64_t target = -1;  // top simplex; -1 draws one from the seed
    double severity = 0.9;     // sliver strength in (0,1)
    uint64_t seed = 1;
};

struct MeshRecipe {
    enum class Generator { Icosphere, TorusGrid, PolyCircle };
    Generator generator = Generator::Icosphere;
    int level = 0;       // icosphere subdivisions
    int nu = 0, nv = 0;  // torus grid
    int n = 0;           // polygon vertex count
    std::vector<Mutation> mutations;

    /// "icosphere:3", "torusgrid:32x16", "polycircle:64"
    static MeshRecipe parse(const std::string& text);
    std::string to_string() const;
};

/// Builds the recipe's complex on M with coherent outward orientation;
/// vertices are projected onto M (residual <= 1e-10). Mutations are applied
/// afterwards, so reported constants must be re-measured by the caller.
GeometricComplex generate(const MeshRecipe& recipe, const TestManifold& M);

struct MeshConstants {
    double t0 = 1;                  // min thickness
    double s0 = 0, L0 = 0;          // min / max longest-edge over simplices
    double mu0 = 1;                 // largest valid lower ratio: min L / (eps0 * lfsref)
    double eps0 = 0;                // max over (simplex, vertex) of L / lfsref(p)
    double L_min = 0, L_max = 0, t_min = 1;
    std::vector<double> eps0_per_vertex;
    std::vector<double> mu0_per_vertex;
    std::vector<double> t0_per_vertex;
};

/// Tightest constants the mesh satisfies, per vertex and globally, with
/// lfsref(p) = lfs(p) (LocalLfs policy) or the global reach.
MeshConstants mesh_constants(const GeometricComplex& c, const TestManifold& M,
                             const RrchChoice& policy, bool per_vertex = true);

/// Applies a mutation; RogueVertex rebuilds the complex (new vertex splitting
/// the top simplex farthest from the rogue position).
GeometricComplex apply_mutation(const GeometricComplex& c, const TestManifold& M,
                                const Mutation& mut);

}  // namespace tricert
