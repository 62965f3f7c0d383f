#pragma once

// Classical Auslander–Reiten theory: τ⁻ via the transpose, almost split
// sequences from socle elements of Ext¹, knitting of the AR quiver and the
// ⊗/⊙/■/· classification of indecomposables against a catalogue 𝓜.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "higherar/complete.hpp"
#include "higherar/seqcat.hpp"

namespace higherar {

/// 0 -> X -f-> E -g-> Z -> 0 with Z = τ⁻X. As a complex, Z sits in degree 0.
struct ARSequence {
    Rep x;
    Rep e;
    Rep z;
    RepMap f;
    RepMap g;
    ComplexOfReps complex() const;
};

/// Throws NotAnARSequence for injective or decomposable X, or when no
/// candidate socle element passes verification within `opt.retries` draws.
ARSequence classical_ar_sequence(const Rep& x, const DecomposeOptions& opt = {});

struct ARArrow {
    std::size_t from = 0;
    std::size_t to = 0;
    std::size_t multiplicity = 0;
};

struct ARQuiver {
    AlgebraPtr alg;
    std::vector<Rep> modules;                          ///< ind Λ up to iso, in discovery order
    std::vector<bool> projective, injective;
    std::vector<std::optional<std::size_t>> tau_minus;
    std::vector<std::optional<std::size_t>> tau;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> middle;  ///< (module, multiplicity) per AR sequence
    std::vector<ARArrow> arrows;                       ///< irreducible maps

    std::size_t size() const { return modules.size(); }
    std::optional<std::size_t> index_of(const Rep& x, const DecomposeOptions& opt = {}) const;
    /// All indecomposables as generators of a context.
    CatContext context(const DecomposeOptions& opt = {}) const;
};

inline constexpr std::size_t kDefaultKnitCap = 256;

struct KnitOptions {
    std::size_t cap = kDefaultKnitCap;
    DecomposeOptions decompose;
    std::uint64_t order_seed = 0;  ///< 0 keeps the natural worklist order, otherwise it is shuffled
};

/// Throws CapExceeded once more than `opt.cap` indecomposables appear.
ARQuiver enumerate_indecomposables(const AlgebraPtr& alg, const KnitOptions& opt = {});

enum class ModuleTag { in_add_t, in_m_not_t, in_perp_not_m, outside_perp };

/// ⊗, ⊙, ■ and · respectively.
std::string tag_glyph(ModuleTag t);
std::string tag_name(ModuleTag t);

struct ModuleClassification {
    std::vector<ModuleTag> tags;  ///< parallel to ARQuiver::modules
    std::size_t count(ModuleTag t) const;
    std::vector<std::size_t> with(ModuleTag t) const;
};

ModuleClassification classify_modules(const ARQuiver& ar, const MCatalogue& cat, const DecomposeOptions& opt = {});

/// Whether some Ext^i(M, X) and some Ext^i(X, M) with i > 0 and M in 𝓜 is nonzero.
struct ExtSides {
    bool from_m = false;
    bool to_m = false;
};

ExtSides ext_sides(const Rep& x, const MCatalogue& cat);

/// For each indecomposable: X ∈ 𝓜 iff Ext^{0<i<d}(𝓜, X) = 0 iff Ext^{0<i<d}(X, 𝓜) = 0.
/// Returns the index of the first module violating this, or nothing.
std::optional<std::size_t> cluster_tilting_violation(const ARQuiver& ar, const MCatalogue& cat,
                                                     const DecomposeOptions& opt = {});

}  // namespace higherar
