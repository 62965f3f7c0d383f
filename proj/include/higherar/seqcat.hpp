#pragma once

// Finite additive subcategories add{G_1, ..., G_r}, minimal approximations,
// sink/source/d-almost split sequences and the exactness functors F_X, G_X.
//
// Complexes use homological degrees: d_j maps C_j to C_{j-1}. A d-almost split
// sequence 0 -> X -> C_d -> ... -> C_1 -> Y -> 0 has Y in degree 0 and X in
// degree d+1; a source sequence of X likewise puts X in degree d+1.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "higherar/homolog.hpp"
#include "higherar/repmod.hpp"

namespace higherar {

class CatContext {
public:
    CatContext() = default;
    /// Generators must be indecomposable and pairwise non-isomorphic (checked).
    CatContext(AlgebraPtr alg, std::vector<Rep> generators, DecomposeOptions opt = {});

    const AlgebraPtr& algebra() const { return alg_; }
    std::size_t size() const { return gens_.size(); }
    const Rep& gen(std::size_t a) const { return gens_.at(a); }
    const std::vector<Rep>& generators() const { return gens_; }
    const DecomposeOptions& options() const { return opt_; }

    /// Hom and rad from G_a to G_b, computed once.
    const RadTop& rad(std::size_t a, std::size_t b) const;
    /// Generator isomorphic to x, if any.
    std::optional<std::size_t> index_of(const Rep& x) const;
    /// Decomposes x and maps each summand to its generator; nothing if x ∉ add G.
    std::optional<std::vector<std::size_t>> locate(const Rep& x) const;

private:
    AlgebraPtr alg_;
    std::vector<Rep> gens_;
    DecomposeOptions opt_;
    struct Cache {
        std::mutex mutex;
        std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const RadTop>> rad;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

class ComplexOfReps {
public:
    ComplexOfReps() = default;
    /// terms[k] sits in degree lo + k; diffs[k]: terms[k+1] -> terms[k].
    ComplexOfReps(AlgebraPtr alg, int lo, std::vector<Rep> terms, std::vector<RepMap> diffs);

    const AlgebraPtr& algebra() const { return alg_; }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
    Rep term(int j) const;
    /// d_j: C_j -> C_{j-1}; the zero map outside the support.
    RepMap d(int j) const;

    bool squares_to_zero() const;
    std::size_t homology_dim(int j) const;
    /// Homology dimension at each vertex.
    std::vector<std::size_t> homology_vector(int j) const;
    bool is_exact() const;
    bool is_radical() const;
    /// Alternating sum of dimension vectors.
    std::vector<long long> euler_vector() const;
    /// "X -> A+B -> Y", highest degree first, summands by dimension label.
    std::string describe(const DecomposeOptions& opt = {}) const;

    /// Degrees lo..hi only (terms outside are dropped).
    ComplexOfReps restricted(int lo, int hi) const;
    /// The term in degree j moves to degree j + k.
    ComplexOfReps shifted(int k) const;

private:
    AlgebraPtr alg_;
    int lo_ = 0;
    std::vector<Rep> terms_;
    std::vector<RepMap> diffs_;
};

class ComplexMap {
public:
    ComplexMap() = default;
    /// comps[k] acts in degree lo + k.
    ComplexMap(ComplexOfReps dom, ComplexOfReps cod, int lo, std::vector<RepMap> comps);

    const ComplexOfReps& dom() const { return dom_; }
    const ComplexOfReps& cod() const { return cod_; }
    RepMap comp(int j) const;
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(comps_.size()) - 1; }
    bool commutes() const;
    bool is_iso() const;

private:
    ComplexOfReps dom_, cod_;
    int lo_ = 0;
    std::vector<RepMap> comps_;
};

/// Cone(φ)_j = E_{j-1} ⊕ F_j with differential [[-d_E, 0], [φ, d_F]].
ComplexOfReps cone(const ComplexMap& phi);

/// Chain isomorphism found by random sampling of the chain-map space.
std::optional<ComplexMap> find_complex_isomorphism(const ComplexOfReps& c, const ComplexOfReps& d,
                                                   const DecomposeOptions& opt = {});

// ------------------------------------------------------------ approximations

enum class ApproxMode { full, radical };

struct Approximation {
    std::vector<std::size_t> generators;  ///< generator index of each summand of C
    Rep module;                           ///< C
    RepMap map;                           ///< C -> K (right) or K -> C (left)
};

/// Minimal right add G-approximation of Hom(-, K) or rad(-, K).
Approximation minimal_right_approx(const CatContext& ctx, const Rep& k, ApproxMode mode);
/// Minimal left add G-approximation of Hom(K, -) or rad(K, -).
Approximation minimal_left_approx(const CatContext& ctx, const Rep& k, ApproxMode mode);

// ----------------------------------------------------------------- sequences

/// 0 -> K_d -> C_d -> ... -> C_1 -> Y -> 0 from a radical approximation of Y and
/// full approximations of the successive kernels. Throws SequenceLeavesCategory.
ComplexOfReps sink_sequence(const CatContext& ctx, const Rep& y, std::size_t d);
/// X -> C_d -> ... -> C_0 -> 0 from left approximations and cokernels, checked
/// against every G_Z. Throws SequenceLeavesCategory.
ComplexOfReps source_sequence(const CatContext& ctx, const Rep& x, std::size_t d);

struct FunctorReport {
    bool exact = true;
    std::vector<int> failing_degrees;
    std::vector<std::size_t> dims;     ///< dimension of each term, from lo to hi
    std::vector<std::size_t> ranks;    ///< rank of the map leaving each term
    std::string describe() const;
};

enum class FunctorSide { covariant, contravariant };

/// F_X (covariant: Hom(X, C_j) with rad(X, C_0) in degree 0) or G_X
/// (contravariant: Hom(C_j, X) with rad(C_top, X) in degree `top`).
FunctorReport check_functor_exactness(const ComplexOfReps& c, const Rep& x, FunctorSide side,
                                      std::optional<int> special_degree = std::nullopt);

struct AlmostSplitReport {
    bool exact = false;
    bool radical = false;
    bool f_exact = false;
    bool g_exact = false;
    bool left_end_is_tau = false;
    bool no_zero_rows_or_columns = false;
    std::string first_failure;
    bool ok() const { return first_failure.empty(); }
};

AlmostSplitReport verify_almost_split(const CatContext& ctx, const ComplexOfReps& seq, std::size_t d);
/// Sequence ending in Y; throws NotAlmostSplit with the first failed check.
ComplexOfReps d_almost_split(const CatContext& ctx, const Rep& y, std::size_t d);

/// Rows/columns of each differential in decompositions of the terms; true when
/// none is zero.
bool no_zero_rows_or_columns(const ComplexOfReps& seq, const DecomposeOptions& opt = {});

/// Lifts f0: C_0 -> D_0 to a chain map between sequences ending in C_0, D_0.
ComplexMap induced_map_between_sequences(const RepMap& f0, const ComplexOfReps& c, const ComplexOfReps& d);
/// As above, with both sequences computed by d_almost_split.
ComplexMap induced_map_between_sequences(const RepMap& f0, const CatContext& ctx, std::size_t d);

struct SliceSplit {
    ComplexOfReps e;
    ComplexOfReps f;
    ComplexMap phi;
};

/// `slice_of` returns the slice index of an indecomposable. The sequence starts
/// in slice i > 0; E-terms must lie in slice i and F-terms in slice i-1.
SliceSplit slice_split(const ComplexOfReps& seq, const std::function<int(const Rep&)>& slice_of,
                       const DecomposeOptions& opt = {});

}  // namespace higherar
