#pragma once

// Tensor products of complexes over Λ = A⊗B, Künneth checks and the tensor
// constructions of higher almost split and source sequences.
//
// Sign convention: d(x⊗y) = dx⊗y + (-1)^p x⊗dy for x in degree p.

#include <string>
#include <vector>

#include "higherar/complete.hpp"
#include "higherar/seqcat.hpp"

namespace higherar {

struct TotalComplex {
    ComplexOfReps x;  ///< over A
    ComplexOfReps y;  ///< over B
    ComplexOfReps total;
    static constexpr const char* sign_convention = "(-1)^p on the right factor";
};

/// Total complex with (X⊗Y)_k = ⊕_{p+q=k} X_p⊗Y_q, summands ordered by p.
TotalComplex tensor_complex(const AlgebraPtr& lambda, const ComplexOfReps& x, const ComplexOfReps& y);
/// φ⊗ψ between total complexes.
ComplexMap tensor_complex_map(const AlgebraPtr& lambda, const ComplexMap& phi, const ComplexMap& psi);

/// H_k(X⊗Y) at vertex (i, j) against Σ_{p+q=k} H_p(X)_i · H_q(Y)_j, all degrees.
bool kunneth_homology_holds(const AlgebraPtr& lambda, const TotalComplex& t);

struct KunnethReport {
    std::vector<std::size_t> lhs;  ///< dim Ext^i over A⊗B
    std::vector<std::size_t> rhs;  ///< Σ_{p+q=i} dim Ext^p_A · dim Ext^q_B
    bool ok() const { return lhs == rhs; }
};

KunnethReport kunneth_ext_check(const AlgebraPtr& lambda, const Rep& m1, const Rep& n1, const Rep& m2,
                                const Rep& n2, std::size_t through);

/// τ_{n+m}(X⊗Y) ≅ τ_n X ⊗ τ_m Y.
bool tau_tensor_check(const AlgebraPtr& lambda, const Rep& x, const Rep& y, std::size_t n, std::size_t m,
                      const DecomposeOptions& opt = {});

/// Cone(φ⊗ψ) in degrees 0..n+m+1, verified as a d-almost split sequence in
/// `ctx` and against the sequence computed directly from its right end.
/// Throws NotAlmostSplit.
ComplexOfReps ass_via_cone(const AlgebraPtr& lambda, const SliceSplit& a, const SliceSplit& b, const CatContext& ctx,
                           std::size_t n, std::size_t m);

/// top(X⊗Y, M⊗N) against top(X, M) · top(Y, N), dimension-wise.
bool top_tensor_identity(const AlgebraPtr& lambda, const Rep& x, const Rep& y, const Rep& m, const Rep& n);

/// X_•⊗Y_• shifted so that X⊗Y sits in degree n+m+1; G_Z-exactness is checked
/// for every generator of `ctx` and the top identity for every pair of factor
/// generators. Throws SequenceLeavesCategory.
ComplexOfReps injective_source_sequence(const AlgebraPtr& lambda, const ComplexOfReps& xs, const ComplexOfReps& ys,
                                        const CatContext& ctx, const CatContext& ctx_a, const CatContext& ctx_b);

struct HomogeneityReport {
    bool t_matches = false;  ///< T_{A⊗B} ≅ T_A⊗T_B
    bool common_l = false;   ///< A and B are l-homogeneous for one l
    std::vector<std::size_t> l_a, l_b;
    bool consistent() const { return t_matches == common_l; }
};

HomogeneityReport homogeneity_transfer_check(const AlgebraPtr& a, const AlgebraPtr& b, std::size_t n, std::size_t m,
                                             const DecomposeOptions& opt = {});

}  // namespace higherar
