#include <doctest.h>

#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "higherar/homolog.hpp"
#include "higherar/knit.hpp"

using namespace higherar;

namespace {

std::multiset<std::string> labels(const ARQuiver& ar) {
    std::multiset<std::string> s;
    for (const auto& m : ar.modules) s.insert(m.dim_label());
    return s;
}

std::vector<long long> dims_of(const Rep& x) { return {x.dims().begin(), x.dims().end()}; }

void check_mesh(const ARQuiver& ar) {
    for (std::size_t i = 0; i < ar.size(); ++i) {
        if (ar.injective[i]) {
            CHECK_FALSE(ar.tau_minus[i].has_value());
            continue;
        }
        REQUIRE(ar.tau_minus[i].has_value());
        std::vector<long long> mid(ar.alg->vertex_count(), 0);
        for (auto [j, mult] : ar.middle[i]) {
            for (std::size_t v = 0; v < mid.size(); ++v) mid[v] += static_cast<long long>(mult * ar.modules[j].dim(v));
        }
        const Rep& z = ar.modules[*ar.tau_minus[i]];
        for (std::size_t v = 0; v < mid.size(); ++v) CHECK(mid[v] == static_cast<long long>(ar.modules[i].dim(v) + z.dim(v)));
    }
}

}  // namespace

TEST_CASE("almost split sequence over A2") {
    auto a2 = corpus::a2();
    ARSequence s = classical_ar_sequence(projective(a2, 0));
    CHECK(s.x.dim_label() == "10");
    CHECK(s.e.dim_label() == "11");
    CHECK(s.z.dim_label() == "01");
    CHECK(is_isomorphic(s.e, projective(a2, 1)));
    CHECK(is_isomorphic(s.z, injective(a2, 1)));
    CHECK(s.f.is_homomorphism());
    CHECK(s.g.is_homomorphism());
    CHECK(s.complex().is_exact());
    CHECK(is_mono(s.f));
    CHECK(is_epi(s.g));
    CHECK(is_radical(s.f));

    SUBCASE("injective left end is rejected") {
        CHECK_THROWS_AS(classical_ar_sequence(injective(a2, 0)), NotAnARSequence);
        CHECK_THROWS_AS(classical_ar_sequence(injective(a2, 1)), NotAnARSequence);
    }
    SUBCASE("right end agrees with the Auslander–Reiten translate") {
        CHECK(is_isomorphic(s.z, tau_d_minus(s.x, 1)));
    }
    SUBCASE("agrees with the sequence from approximations") {
        ARQuiver ar = enumerate_indecomposables(a2);
        CatContext ctx = ar.context();
        ComplexOfReps direct = d_almost_split(ctx, s.z, 1);
        CHECK(find_complex_isomorphism(direct, s.complex()).has_value());
    }
}

TEST_CASE("sequences ending at non-projective indecomposables of the subspace quiver") {
    auto d4 = corpus::d4_subspace();
    for (std::size_t v = 1; v < 4; ++v) {
        // P_v has dimension vector e_1 + e_v and τ⁻P_v has 1111 - e_v.
        ARSequence s = classical_ar_sequence(projective(d4, v));
        std::vector<long long> expect = {1, 1, 1, 1};
        expect[v] = 0;
        CHECK(dims_of(s.z) == expect);
        CHECK(indecomposable_summands(s.e).size() == 1);
        CHECK(s.e.dim_label() == "2111");
    }
    ARSequence s1 = classical_ar_sequence(projective(d4, 0));
    CHECK(s1.z.dim_label() == "2111");
    CHECK(indecomposable_summands(s1.e).size() == 3);
}

TEST_CASE("enumeration of indecomposables") {
    SUBCASE("A2") {
        ARQuiver ar = enumerate_indecomposables(corpus::a2());
        CHECK(ar.size() == 3);
        CHECK(labels(ar) == std::multiset<std::string>{"10", "11", "01"});
        check_mesh(ar);
    }
    SUBCASE("A3 linear") {
        auto a3 = corpus::a3_linear();
        ARQuiver ar = enumerate_indecomposables(a3);
        CHECK(ar.size() == 6);
        CHECK(labels(ar) == std::multiset<std::string>{"100", "110", "111", "010", "011", "001"});
        CHECK(ar.index_of(projective(a3, 2)) == ar.index_of(injective(a3, 0)));
        check_mesh(ar);
    }
    SUBCASE("D4 subspace") {
        auto d4 = corpus::d4_subspace();
        ARQuiver ar = enumerate_indecomposables(d4);
        CHECK(ar.size() == 12);
        for (std::size_t v = 0; v < 4; ++v) {
            CHECK(ar.index_of(projective(d4, v)).has_value());
            CHECK(ar.index_of(injective(d4, v)).has_value());
        }
        CHECK(std::count(ar.projective.begin(), ar.projective.end(), true) == 4);
        CHECK(std::count(ar.injective.begin(), ar.injective.end(), true) == 4);
        check_mesh(ar);
    }
    SUBCASE("cap is enforced") {
        KnitOptions opt;
        opt.cap = 5;
        CHECK_THROWS_AS(enumerate_indecomposables(corpus::d4_subspace(), opt), CapExceeded);
    }
    SUBCASE("independent of worklist order") {
        auto d4 = corpus::d4_subspace();
        ARQuiver base = enumerate_indecomposables(d4);
        for (std::uint64_t seed : {3u, 17u, 99u}) {
            KnitOptions opt;
            opt.order_seed = seed;
            ARQuiver other = enumerate_indecomposables(d4, opt);
            REQUIRE(other.size() == base.size());
            for (const auto& m : other.modules) CHECK(base.index_of(m).has_value());
        }
    }
}

TEST_CASE("irreducible maps satisfy the mesh in both directions") {
    ARQuiver ar = enumerate_indecomposables(corpus::a3_linear());
    // Each arrow X -> Y with Y non-injective has a partner Y -> τ⁻X of the same multiplicity.
    for (const auto& a : ar.arrows) {
        if (ar.injective[a.from] || ar.injective[a.to]) continue;
        const std::size_t z = *ar.tau_minus[a.from];
        bool found = false;
        for (auto [j, mult] : ar.middle[a.to]) {
            if (j == z) {
                found = true;
                CHECK(mult == a.multiplicity);
            }
        }
        CHECK(found);
    }
}

// Ext^1(I_1⊗S_2, X) from 0 -> P(2,1) -> P(2,2) -> I_1⊗S_2 -> 0: the cokernel of
// the map X(2,2) -> X(2,1) along the arrow between them.
std::size_t ext1_from_1100(const AlgebraPtr& sq, const Rep& x) {
    const std::size_t v22 = 3, v21 = 2;
    for (std::size_t a = 0; a < sq->quiver().arrow_count(); ++a) {
        const auto& ar = sq->quiver().arrow(a);
        if (ar.source == v22 && ar.target == v21) return x.dim(v21) - x.arrow(a).rank();
    }
    return 0;
}

TEST_CASE("classification of the commutative square") {
    auto a2 = corpus::a2();
    auto sq = tensor_algebra(a2, a2);
    ARQuiver ar = enumerate_indecomposables(sq);
    // 11 indecomposables; each dimension vector occurs once, so repeated
    // labels in a drawing of this quiver can only be drawing slips.
    CHECK(ar.size() == 11);
    check_mesh(ar);
    CHECK(labels(ar) == std::multiset<std::string>{"0010", "1010", "0011", "1111", "1011", "0001", "1000", "1101",
                                                   "1100", "0101", "0100"});

    MCatalogue cat = build_M(sq, 2);
    ModuleClassification cls = classify_modules(ar, cat);
    CHECK(cls.count(ModuleTag::in_add_t) == 4);
    CHECK(cls.count(ModuleTag::in_m_not_t) == 1);
    // 1011 is outside T^⊥: Ext^1(1100, 1011) = 1 by the hand resolution below.
    CHECK(cls.count(ModuleTag::in_perp_not_m) == 1);
    CHECK(cls.count(ModuleTag::outside_perp) == 5);
    for (auto i : cls.with(ModuleTag::in_perp_not_m)) {
        CHECK(ar.modules[i].dim_label() == "1101");
        ExtSides s = ext_sides(ar.modules[i], cat);
        CHECK(s.from_m);
        CHECK(s.to_m);
    }
    const Rep i1s2 = tensor_rep(sq, injective(a2, 0), simple(a2, 1));
    REQUIRE(i1s2.dim_label() == "1100");
    for (const auto& x : ar.modules) CHECK(ext_dim(i1s2, x, 1) == ext1_from_1100(sq, x));
    const Rep m1011 = *std::find_if(ar.modules.begin(), ar.modules.end(),
                                    [](const Rep& m) { return m.dim_label() == "1011"; });
    CHECK(ext1_from_1100(sq, m1011) == 1);
    for (auto i : cls.with(ModuleTag::outside_perp)) CHECK_FALSE(perp_membership(cat.t, ar.modules[i]));
    CHECK(tag_glyph(ModuleTag::in_perp_not_m) == "■");
}

TEST_CASE("T = Λ leaves nothing outside T^⊥") {
    SUBCASE("hereditary representation-finite algebras at d = 1 have only ⊗ and ⊙") {
        for (auto alg : {corpus::a2(), corpus::a3_linear(), corpus::d4_subspace()}) {
            MCatalogue cat = build_M(alg, 1);
            REQUIRE(is_isomorphic(cat.t, regular_module(alg)));
            ModuleClassification cls = classify_modules(enumerate_indecomposables(alg), cat);
            CHECK(cls.count(ModuleTag::in_perp_not_m) == 0);
            CHECK(cls.count(ModuleTag::outside_perp) == 0);
        }
    }
    SUBCASE("at d = 2 the modules outside 𝓜 are ■") {
        auto alg = corpus::a3_zero_relation();
        MCatalogue cat = build_M(alg, 2);
        REQUIRE(is_isomorphic(cat.t, regular_module(alg)));
        ARQuiver ar = enumerate_indecomposables(alg);
        CHECK(ar.size() == 5);
        ModuleClassification cls = classify_modules(ar, cat);
        CHECK(cls.count(ModuleTag::outside_perp) == 0);
        REQUIRE(cls.count(ModuleTag::in_perp_not_m) == 1);
        CHECK(ar.modules[cls.with(ModuleTag::in_perp_not_m)[0]].dim_label() == "010");
    }
}

TEST_CASE("cluster tilting cross-check by enumeration") {
    SUBCASE("A3 with a zero relation is 2-representation-finite") {
        auto alg = corpus::a3_zero_relation();
        MCatalogue cat = build_M(alg, 2);
        ARQuiver ar = enumerate_indecomposables(alg);
        CHECK_FALSE(cluster_tilting_violation(ar, cat).has_value());
    }
    SUBCASE("the commutative square is not 2-representation-finite") {
        auto a2 = corpus::a2();
        auto sq = tensor_algebra(a2, a2);
        MCatalogue cat = build_M(sq, 2);
        ARQuiver ar = enumerate_indecomposables(sq);
        CHECK(cluster_tilting_violation(ar, cat).has_value());
    }
}
