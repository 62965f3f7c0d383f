#pragma once

// Right modules as quiver representations (see quivalg.hpp for conventions).

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "higherar/exactla.hpp"
#include "higherar/quivalg.hpp"

namespace higherar {

class Rep {
public:
    Rep() = default;
    /// `arrows[a]` is dim X_{t(a)} × dim X_{s(a)}. Throws DimensionMismatch on
    /// shape errors and InconsistentRelation when a relation does not vanish.
    Rep(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Mat> arrows);

    static Rep zero(AlgebraPtr alg);

    const AlgebraPtr& algebra() const { return d_->alg; }
    const FieldSpec& field() const { return d_->alg->field(); }
    const std::vector<std::size_t>& dims() const { return d_->dims; }
    std::size_t dim(std::size_t v) const { return d_->dims[v]; }
    std::size_t total_dim() const { return d_->total; }
    bool is_zero() const { return d_->total == 0; }
    const Mat& arrow(std::size_t a) const { return d_->arrows[a]; }
    const std::vector<Mat>& arrows() const { return d_->arrows; }

    /// X_s -> X_t for a path from s to t.
    Mat path_action(const Path& p) const;
    /// Action of the basis element `b` of the algebra (a path s -> t).
    Mat basis_action(std::size_t b) const;
    /// Action of an element supported on paths s -> t.
    Mat elem_action(const Elem& e, std::size_t s, std::size_t t) const;

    /// Dimension vector as text. Tensor algebras use the grid layout: rows are
    /// B-vertices from last to first, columns A-vertices, rows concatenated.
    std::string dim_label() const;

    /// Stable identity of the underlying immutable data.
    const void* identity() const { return d_.get(); }

private:
    struct Data {
        AlgebraPtr alg;
        std::vector<std::size_t> dims;
        std::vector<Mat> arrows;
        std::size_t total = 0;
    };
    std::shared_ptr<const Data> d_;
};

class RepMap {
public:
    RepMap() = default;
    /// Checks shapes only; use is_homomorphism() to check the commutation.
    RepMap(Rep dom, Rep cod, std::vector<Mat> comps);

    static RepMap zero(const Rep& x, const Rep& y);
    static RepMap identity(const Rep& x);

    const Rep& dom() const { return dom_; }
    const Rep& cod() const { return cod_; }
    const Mat& comp(std::size_t v) const { return comps_[v]; }
    const std::vector<Mat>& comps() const { return comps_; }

    bool is_homomorphism() const;
    bool is_zero() const;
    bool is_iso() const;
    std::optional<RepMap> inverse() const;
    /// Same shapes and equal components.
    bool operator==(const RepMap& o) const;

    RepMap operator+(const RepMap& o) const;
    RepMap operator-(const RepMap& o) const;
    RepMap operator-() const;
    RepMap scaled(const Scalar& c) const;
    /// Composition: (g * f) = g ∘ f.
    friend RepMap operator*(const RepMap& g, const RepMap& f);

    /// Row-major concatenation of the vertex components.
    Mat flatten() const;
    static RepMap unflatten(const Rep& x, const Rep& y, const Mat& column, std::size_t col = 0);

private:
    Rep dom_;
    Rep cod_;
    std::vector<Mat> comps_;
};

bool same_shape(const Rep& x, const Rep& y);

/// Basis of Hom(X, Y) with its coordinate matrix (one flattened map per column).
struct HomSpace {
    std::vector<RepMap> basis;
    Mat matrix;
    std::size_t dim() const { return basis.size(); }
    RepMap combination(const Mat& coeffs) const;
};

HomSpace hom(const Rep& x, const Rep& y);
std::vector<RepMap> hom_basis(const Rep& x, const Rep& y);

struct RadTop {
    HomSpace hom;
    std::vector<RepMap> rad;   ///< basis of rad(X, Y)
    Mat rad_coeffs;            ///< rad basis in coordinates of hom.basis
    std::size_t top_dim = 0;   ///< dim Hom - dim rad
};

/// rad(X,Y) = {f : tr(g∘f) = 0 for all g ∈ Hom(Y,X)}. Throws CharTooSmall when
/// the characteristic does not exceed the dimensions involved.
RadTop rad_top(const Rep& x, const Rep& y);

/// Whether f lies in rad(dom, cod).
bool is_radical(const RepMap& f);

// -------------------------------------------------------------- constructions

Rep projective(const AlgebraPtr& alg, std::size_t v);
Rep injective(const AlgebraPtr& alg, std::size_t v);
Rep simple(const AlgebraPtr& alg, std::size_t v);

enum class StandardKind { projective, injective, simple };
Rep standard_module(const AlgebraPtr& alg, StandardKind kind, std::size_t v);

/// Λ_Λ and DΛ as direct sums in vertex order.
Rep regular_module(const AlgebraPtr& alg);
Rep dual_regular_module(const AlgebraPtr& alg);

/// Module over the opposite algebra with transposed arrow matrices.
Rep dual(const Rep& x);
/// D(f): D(Y) -> D(X).
RepMap dual(const RepMap& f);

/// Dimension of top(X) = X / X·rad Λ at each vertex.
std::vector<std::size_t> top_vector(const Rep& x);
bool is_projective(const Rep& x);
bool is_injective(const Rep& x);
/// ⊕ I_i^{top_i}; throws NotProjective.
Rep nakayama(const Rep& p);

struct DirectSum {
    Rep sum;
    std::vector<RepMap> inclusions;
    std::vector<RepMap> projections;
};
DirectSum direct_sum(const std::vector<Rep>& parts, const AlgebraPtr& alg);
Rep direct_sum_module(const std::vector<Rep>& parts, const AlgebraPtr& alg);

/// Block map ⊕ X_j -> ⊕ Y_i from blocks[i][j]: X_j -> Y_i.
RepMap block_map(const DirectSum& dom, const DirectSum& cod, const std::vector<std::vector<RepMap>>& blocks);

/// Subrepresentation spanned at each vertex by the columns of `basis[v]`, with
/// its inclusion. Throws DimensionMismatch when the spaces are not invariant.
std::pair<Rep, RepMap> subrep(const Rep& x, const std::vector<Mat>& basis);
std::pair<Rep, RepMap> kernel(const RepMap& f);
std::pair<Rep, RepMap> image(const RepMap& f);
/// Cokernel with the projection Y -> coker f.
std::pair<Rep, RepMap> cokernel(const RepMap& f);
bool is_mono(const RepMap& f);
bool is_epi(const RepMap& f);

/// For a tensor algebra Λ = A⊗B: (X⊗Y)_{(i,j)} = X_i ⊗ Y_j via kronecker.
Rep tensor_rep(const AlgebraPtr& lambda, const Rep& x, const Rep& y);
RepMap tensor_map(const AlgebraPtr& lambda, const RepMap& f, const RepMap& g);

// ------------------------------------------------------- Krull–Schmidt tools

struct Summand {
    Rep module;
    RepMap inclusion;   ///< module -> X
    RepMap projection;  ///< X -> module
};

struct Decomposition {
    std::vector<Summand> parts;
    /// (indecomposable, multiplicity) with isomorphic parts grouped.
    std::vector<std::pair<Rep, std::size_t>> grouped() const;
};

struct DecomposeOptions {
    std::uint64_t seed = 1;
    std::size_t retries = 32;
};

Decomposition decompose(const Rep& x, const DecomposeOptions& opt = {});
/// Decomposes and returns just the indecomposable summands.
std::vector<Rep> indecomposable_summands(const Rep& x, const DecomposeOptions& opt = {});

bool is_indecomposable(const Rep& x, const DecomposeOptions& opt = {});

/// An isomorphism X -> Y, or nothing. A returned witness is always verified.
std::optional<RepMap> find_isomorphism(const Rep& x, const Rep& y, const DecomposeOptions& opt = {});
bool is_isomorphic(const Rep& x, const Rep& y, const DecomposeOptions& opt = {});

/// Index of the first entry of `list` isomorphic to `x`.
std::optional<std::size_t> find_isomorphic(const std::vector<Rep>& list, const Rep& x,
                                           const DecomposeOptions& opt = {});

}  // namespace higherar
