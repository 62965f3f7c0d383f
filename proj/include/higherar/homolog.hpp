#pragma once

// Minimal projective resolutions, Ext, global dimension and the higher
// Auslander–Reiten translates τ_d = D Ext^d(−, Λ), τ_d⁻ = Ext^d_{Λ^op}(D−, Λ).

#include <cstddef>
#include <memory>
#include <vector>

#include "higherar/repmod.hpp"

namespace higherar {

/// Maps between sums of indecomposable projectives. A map P_s -> P_t is left
/// multiplication by an element of e_t Λ e_s.
using ProjEntries = std::vector<std::vector<Elem>>;  ///< [target summand][source summand]

DirectSum projective_sum(const AlgebraPtr& alg, const std::vector<std::size_t>& vertices);
RepMap projective_map(const AlgebraPtr& alg, const std::vector<std::size_t>& source,
                      const std::vector<std::size_t>& target, const ProjEntries& entries);
/// The same element read in Λ^op (paths reversed, re-normalised).
Elem opposite_elem(const Algebra& alg, const Elem& e);

struct ProjCover {
    std::vector<std::size_t> vertices;  ///< one P_v per generator
    std::vector<Mat> generators;        ///< generator k as a column of X_{vertices[k]}
    RepMap map;                         ///< ⊕ P_v -> X
};

/// Generators are the standard complement of rad(X)_v = Σ images of arrows into v.
ProjCover projective_cover(const Rep& x);

struct ProjResolution {
    Rep x;
    std::vector<std::vector<std::size_t>> terms;  ///< vertices of the summands of P_k
    std::vector<Rep> modules;                     ///< P_k
    std::vector<RepMap> differentials;            ///< differentials[k-1] = d_k: P_k -> P_{k-1}
    std::vector<ProjEntries> entries;             ///< entries[k-1] describes d_k
    RepMap augmentation;                          ///< P_0 -> X
    std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
};

/// Cached by module identity. Throws ResolutionTooLong beyond `max_len`.
std::shared_ptr<const ProjResolution> min_proj_resolution(const Rep& x, std::size_t max_len = 64);
std::size_t projective_dimension(const Rep& x);
std::size_t global_dimension(const AlgebraPtr& alg);

/// δ_i: Hom(P_{i-1}, Y) -> Hom(P_i, Y), using Hom(P_v, Y) = Y_v.
Mat cochain_differential(const ProjResolution& r, const Rep& y, std::size_t i);

struct ExtSpace {
    std::size_t degree = 0;
    std::size_t dim = 0;
    Mat cocycles;         ///< basis of ker δ_{i+1} in Hom(P_i, Y)
    Mat boundaries;       ///< basis of im δ_i
    Mat representatives;  ///< canonical complement of the boundaries in the cocycles
};

ExtSpace ext(const Rep& x, const Rep& y, std::size_t i);
std::size_t ext_dim(const Rep& x, const Rep& y, std::size_t i);

/// Ext^d(X, Λ) as a Λ^op-module: homology of Hom(P_•, Λ) at degree d.
Rep ext_module(const Rep& x, std::size_t d);
/// Tr X = coker(Hom(P_0, Λ) -> Hom(P_1, Λ)), a Λ^op-module.
Rep transpose(const Rep& x);

Rep tau_d(const Rep& x, std::size_t d);
Rep tau_d_minus(const Rep& x, std::size_t d);

/// Drops every cached resolution.
void clear_resolution_cache();

}  // namespace higherar
