#pragma once

// The τ_d-closure 𝓜 = add{τ_d^i DΛ}, its slices, the module T with add T = 𝓟,
// and the d-completeness conditions (A_d), (B_d), (C_d).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "higherar/seqcat.hpp"

namespace higherar {

struct MCatalogue {
    AlgebraPtr alg;
    std::size_t d = 0;
    std::vector<Rep> members;                              ///< ind 𝓜, slice by slice
    std::vector<std::size_t> slice;                        ///< slice index of each member
    std::vector<std::vector<std::size_t>> slices;          ///< members of 𝒮(i)
    std::vector<std::pair<std::size_t, std::size_t>> origin;  ///< (injective vertex, τ_d power) of first appearance
    std::vector<std::vector<std::size_t>> tau;             ///< members summing to τ_d of each member
    std::vector<std::size_t> injective_member;             ///< member holding I_v
    std::vector<std::size_t> orbit_lengths;                ///< l_v: least l with τ_d^l I_v = 0
    std::vector<std::vector<std::size_t>> orbit_final;     ///< summands of τ_d^{l_v - 1} I_v
    std::vector<std::size_t> t_members;                    ///< summands of T
    Rep t;

    bool in_p(std::size_t m) const { return tau.at(m).empty(); }
    bool in_add_dual(std::size_t m) const { return slice.at(m) == 0; }
    std::vector<std::size_t> p_members() const;
    std::vector<std::size_t> mp_members() const;  ///< ind 𝓜_P
    std::vector<std::size_t> mi_members() const;  ///< ind 𝓜_I
    std::optional<std::size_t> index_of(const Rep& x, const DecomposeOptions& opt = {}) const;
    CatContext context(const DecomposeOptions& opt = {}) const;
};

inline constexpr std::size_t kDefaultSliceCap = 64;

/// Throws TauNonVanishing when more than `cap` slices appear or an orbit repeats.
MCatalogue build_M(const AlgebraPtr& alg, std::size_t d, std::size_t cap = kDefaultSliceCap,
                   const DecomposeOptions& opt = {});
/// Basic module: the τ_d-final member of each injective orbit, once each.
Rep compute_T(const MCatalogue& cat);

struct TiltingReport {
    bool tilting = false;
    std::string obstruction;
    std::optional<std::size_t> failing_ext_degree;
    std::vector<Rep> coresolution;  ///< T_0, ..., T_m with 0 -> Λ -> T_0 -> ... -> T_m -> 0
};

/// Ext^i(T, T) = 0 for 0 < i <= gl.dim and a coresolution of Λ by add T of at
/// most `bound` steps (default gl.dim + 1).
TiltingReport is_tilting(const Rep& t, std::optional<std::size_t> bound = std::nullopt,
                         const DecomposeOptions& opt = {});
/// Ext^i(T, X) = 0 for 0 < i <= gl.dim.
bool perp_membership(const Rep& t, const Rep& x);

struct DirectednessReport {
    std::vector<Rep> generators;
    std::vector<std::vector<std::size_t>> edges;  ///< a -> b when rad(G_a, G_b) != 0
    bool acyclic = false;
    std::vector<std::size_t> cycle;               ///< closed walk when not acyclic
    std::vector<std::size_t> order;               ///< topological order when acyclic
    std::vector<std::size_t> height;              ///< longest chain ending at each generator
};

DirectednessReport directedness_report(const std::vector<Rep>& generators);

struct Flag {
    bool value = false;
    std::string witness;
};

struct Verdict {
    std::size_t d = 0;
    std::size_t gl_dim = 0;
    Flag a, b, c;
    Flag c_with_hom;  ///< the i = 0 strengthening of (C_d)
    Flag acyclic;
    Flag d_complete;
    Flag d_rep_finite;
    Flag d_cocomplete;
    Flag homogeneous;
    std::optional<std::size_t> l;
    std::optional<MCatalogue> catalogue;
};

struct VerifyOptions {
    DecomposeOptions decompose;
    std::size_t cap = kDefaultSliceCap;
    bool cocomplete = true;  ///< also run the checks on the opposite algebra
};

Verdict verify_conditions(const AlgebraPtr& alg, std::size_t d, const VerifyOptions& opt = {});

struct Classification {
    bool homogeneous = false;
    std::optional<std::size_t> l;
    bool d_rep_finite = false;
    bool d_cocomplete = false;
};

Classification classify_algebra(const AlgebraPtr& alg, std::size_t d, const VerifyOptions& opt = {});

/// S_1 ⊕ τ_d S_2 where S_1 collects the summands of S in add T.
Rep E_step(const Rep& s, const MCatalogue& cat, const DecomposeOptions& opt = {});
/// DΛ, E DΛ, E² DΛ, ... up to the first fixed point.
std::vector<Rep> E_iteration(const MCatalogue& cat, const DecomposeOptions& opt = {});

/// First pair of members (X in 𝒮(i), Y in 𝒮(j), i < j) with Hom(X, Y) != 0.
std::optional<std::pair<std::size_t, std::size_t>> slice_hom_violation(const MCatalogue& cat);

}  // namespace higherar
