#pragma once

// Quivers, path bases of bound quiver algebras, opposites and tensor products.
//
// Conventions used by every other module:
//  * A path is written in traversal order: a.b means "a, then b", so
//    t(a) = s(b). Multiplication of basis paths is concatenation.
//  * Modules are right modules. The projective P_i = e_i Λ has basis the
//    basis paths starting at i; a right module X is a representation with
//    X_i = X e_i, and an arrow a: i -> j acts as a linear map X_i -> X_j
//    (x |-> x·a), stored as a dim X_j × dim X_i matrix.
//  * A path a_1...a_k therefore acts by X_{a_k} ··· X_{a_1}.

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "higherar/exactla.hpp"

namespace higherar {

struct Arrow {
    std::string name;
    std::size_t source = 0;
    std::size_t target = 0;
};

class Quiver {
public:
    Quiver() = default;
    /// Throws CyclicQuiver on directed cycles, InconsistentRelation on bad indices.
    Quiver(std::vector<std::string> vertex_names, std::vector<Arrow> arrows);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t arrow_count() const { return arrows_.size(); }
    const std::string& vertex_name(std::size_t v) const { return vertices_.at(v); }
    const std::vector<std::string>& vertex_names() const { return vertices_; }
    const Arrow& arrow(std::size_t a) const { return arrows_.at(a); }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    std::optional<std::size_t> find_vertex(const std::string& name) const;
    std::optional<std::size_t> find_arrow(const std::string& name) const;

private:
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
};

struct Path {
    std::size_t source = 0;
    std::size_t target = 0;
    std::vector<std::size_t> arrows;  ///< traversal order; empty for e_source

    std::size_t length() const { return arrows.size(); }
    bool is_trivial() const { return arrows.empty(); }
    /// Length first, then lexicographic on arrow ids (trivial paths by vertex).
    friend bool operator<(const Path& a, const Path& b);
    friend bool operator==(const Path& a, const Path& b) = default;
};

/// All paths of an acyclic quiver in deterministic order. Throws CyclicQuiver.
std::vector<Path> enumerate_paths(const Quiver& q);

struct RelationTerm {
    Scalar coef;
    Path path;
};

struct Relation {
    std::vector<RelationTerm> terms;
};

/// Sparse algebra element: (basis index, coefficient) with sorted indices.
struct Elem {
    std::vector<std::pair<std::size_t, Scalar>> terms;
    bool is_zero() const { return terms.empty(); }
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// A = first, B = second for algebras built by tensor_algebra.
struct TensorFactors {
    AlgebraPtr a;
    AlgebraPtr b;
};

class Algebra : public std::enable_shared_from_this<Algebra> {
public:
    /// Computes the path basis modulo the two-sided ideal generated by `relations`.
    /// Throws InconsistentRelation for non-parallel or short relation paths.
    static AlgebraPtr create(Quiver q, std::vector<Relation> relations, FieldSpec field,
                             std::optional<TensorFactors> factors = std::nullopt);

    const Quiver& quiver() const { return quiver_; }
    const std::vector<Relation>& relations() const { return relations_; }
    const FieldSpec& field() const { return field_; }
    std::size_t vertex_count() const { return quiver_.vertex_count(); }
    std::size_t dim() const { return basis_.size(); }

    const std::vector<Path>& paths() const { return paths_; }
    /// Basis elements are paths (standard monomials); `basis(k)` is the k-th one.
    const Path& basis(std::size_t k) const { return paths_[basis_[k]]; }
    /// Basis indices of the paths from i to j, in basis order.
    const std::vector<std::size_t>& basis_between(std::size_t i, std::size_t j) const;
    std::size_t arrow_basis_index(std::size_t arrow) const { return arrow_basis_.at(arrow); }
    std::size_t idempotent_basis_index(std::size_t v) const { return idem_basis_.at(v); }

    /// Normal form of an arbitrary path (index into paths()).
    const Elem& normal_form(std::size_t path_index) const { return nf_[path_index]; }
    std::optional<std::size_t> find_path(const Path& p) const;

    Elem basis_elem(std::size_t k) const;
    Elem mul_basis(std::size_t x, std::size_t y) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem add(const Elem& x, const Elem& y) const;
    Elem scale(const Elem& x, const Scalar& c) const;
    /// Dense coordinates in the full basis.
    Mat coords(const Elem& x) const;

    AlgebraPtr opposite() const;
    const std::optional<TensorFactors>& factors() const { return factors_; }
    /// Serialized presentation; equal fingerprints mean identical presentations.
    const std::string& fingerprint() const { return fingerprint_; }

    /// e_i·b·e_j == b for every basis path b from i to j; multiplication associative on basis.
    bool check_structure() const;

private:
    Algebra() = default;

    Quiver quiver_;
    std::vector<Relation> relations_;
    FieldSpec field_;
    std::vector<Path> paths_;
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> path_index_;
    std::vector<Elem> nf_;
    std::vector<std::size_t> basis_;
    std::vector<std::vector<std::vector<std::size_t>>> between_;
    std::vector<std::size_t> arrow_basis_;
    std::vector<std::size_t> idem_basis_;
    std::optional<TensorFactors> factors_;
    std::string fingerprint_;

    mutable std::mutex op_mutex_;
    mutable std::shared_ptr<const Algebra> op_;
    mutable std::weak_ptr<const Algebra> op_of_;
};

bool same_algebra(const Algebra& a, const Algebra& b);
bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Arrows reversed and relation paths reversed.
AlgebraPtr opposite(const AlgebraPtr& alg);

/// Vertex (i, j) has index i·|V_B| + j. Arrows (a, j) then (i, b); relations:
/// A-relations at every B-vertex, B-relations at every A-vertex, and
/// (a,j)·(t(a),b) − (s(a),b)·(a,t(b)) for each arrow pair.
AlgebraPtr tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

/// Path algebra helpers for building the corpus in code.
AlgebraPtr path_algebra(const std::vector<std::string>& vertices,
                        const std::vector<std::tuple<std::string, std::string, std::string>>& arrows,
                        FieldSpec field);

}  // namespace higherar
