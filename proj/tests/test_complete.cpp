#include <doctest.h>

#include <algorithm>
#include <set>

#include "corpus.hpp"
#include "higherar/complete.hpp"

using namespace higherar;

namespace {

std::multiset<std::string> labels(const MCatalogue& cat, const std::vector<std::size_t>& idx) {
    std::multiset<std::string> out;
    for (auto m : idx) out.insert(cat.members[m].dim_label());
    return out;
}

std::vector<std::size_t> sorted(std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("semisimple algebras") {
    for (const auto& alg : {corpus::point(), corpus::two_points()}) {
        MCatalogue cat = build_M(alg, 1);
        CHECK(cat.slices.size() == 1);
        CHECK(cat.members.size() == alg->vertex_count());
        CHECK(is_isomorphic(cat.t, regular_module(alg)));
        CHECK(is_isomorphic(cat.t, dual_regular_module(alg)));
        Verdict v = verify_conditions(alg, 1);
        CHECK(v.d_complete.value);
        CHECK(v.d_rep_finite.value);
        CHECK(v.homogeneous.value);
        CHECK(v.l == 1u);
    }
}

TEST_CASE("A2 at d = 1") {
    auto a2 = corpus::a2();
    MCatalogue cat = build_M(a2, 1);
    CHECK(labels(cat, cat.slices[0]) == std::multiset<std::string>{"11", "01"});
    REQUIRE(cat.slices.size() == 2);
    CHECK(labels(cat, cat.slices[1]) == std::multiset<std::string>{"10"});
    CHECK(cat.orbit_lengths == std::vector<std::size_t>{1, 2});
    CHECK(is_isomorphic(cat.t, regular_module(a2)));
    Verdict v = verify_conditions(a2, 1);
    CHECK(v.a.value);
    CHECK(v.b.value);
    CHECK(v.c.value);
    CHECK(v.c_with_hom.value);
    CHECK(v.d_rep_finite.value);
    CHECK(v.d_cocomplete.value);
    CHECK_FALSE(v.homogeneous.value);
}

TEST_CASE("tensor square of A2 at d = 2") {
    auto a2 = corpus::a2();
    auto sq = tensor_algebra(a2, a2);
    MCatalogue cat = build_M(sq, 2);
    CHECK(cat.members.size() == 5);
    REQUIRE(cat.slices.size() == 2);
    CHECK(labels(cat, cat.slices[1]) == std::multiset<std::string>{"0010"});
    CHECK(labels(cat, cat.t_members) == std::multiset<std::string>{"0010", "1111", "0101", "1100"});
    CHECK(labels(cat, cat.p_members()) == labels(cat, cat.t_members));
    CHECK(labels(cat, cat.mp_members()) == std::multiset<std::string>{"0100"});
    CHECK(labels(cat, cat.mi_members()) == std::multiset<std::string>{"0010"});
    CHECK_FALSE(slice_hom_violation(cat).has_value());

    SUBCASE("T is tilting and 𝓜 lies in its perpendicular category") {
        TiltingReport tr = is_tilting(cat.t);
        CHECK(tr.tilting);
        for (const auto& x : cat.members) CHECK(perp_membership(cat.t, x));
        for (auto m : cat.t_members) CHECK(perp_membership(cat.t, cat.members[m]));
    }
    SUBCASE("verdict") {
        Verdict v = verify_conditions(sq, 2);
        CHECK(v.acyclic.value);
        CHECK(v.a.value);
        CHECK(v.b.value);
        CHECK(v.c.value);
        CHECK(v.c_with_hom.value);
        CHECK(v.d_complete.value);
        CHECK_FALSE(v.d_rep_finite.value);
        CHECK(v.d_cocomplete.value);
        CHECK_FALSE(v.homogeneous.value);
        Classification c = classify_algebra(sq, 2);
        CHECK_FALSE(c.d_rep_finite);
        CHECK(c.d_cocomplete);
    }
    SUBCASE("the opposite catalogue differs") {
        MCatalogue op = build_M(sq->opposite(), 2);
        CHECK(op.members.size() == 5);
        std::multiset<std::string> dual_labels;
        for (const auto& x : op.members) dual_labels.insert(dual(x).dim_label());
        std::multiset<std::string> ours;
        for (const auto& x : cat.members) ours.insert(x.dim_label());
        CHECK(dual_labels != ours);
    }
    SUBCASE("E iteration reaches T") {
        std::vector<Rep> it = E_iteration(cat);
        REQUIRE(it.size() == 2);
        CHECK(is_isomorphic(it.back(), cat.t));
        CHECK(is_isomorphic(E_step(cat.t, cat), cat.t));
        for (const auto& s : it) {
            for (std::size_t i = 1; i <= 2; ++i) CHECK(ext_dim(s, s, i) == 0);
        }
    }
    SUBCASE("tau_d and its inverse pair up 𝓜_P and 𝓜_I") {
        for (auto m : cat.mp_members()) {
            REQUIRE(cat.tau[m].size() == 1);
            const std::size_t t = cat.tau[m][0];
            CHECK_FALSE(cat.in_add_dual(t));
            CHECK(is_isomorphic(tau_d_minus(cat.members[t], 2), cat.members[m]));
        }
    }
    SUBCASE("directedness refines the slices") {
        DirectednessReport dr = directedness_report(cat.members);
        CHECK(dr.acyclic);
        for (std::size_t a = 0; a < cat.members.size(); ++a) {
            for (auto b : dr.edges[a]) {
                CHECK(dr.height[b] > dr.height[a]);
                CHECK(cat.slice[a] >= cat.slice[b]);
            }
        }
    }
    SUBCASE("slice cap") {
        CHECK_THROWS_AS(build_M(sq, 2, 1), TauNonVanishing);
    }
}

TEST_CASE("tilting checks") {
    auto a2 = corpus::a2();
    TiltingReport reg = is_tilting(regular_module(a2));
    CHECK(reg.tilting);
    CHECK(reg.coresolution.size() == 1);
    CHECK(is_tilting(dual_regular_module(a2)).tilting);
    TiltingReport bad = is_tilting(direct_sum_module({regular_module(a2), simple(a2, 1)}, a2));
    CHECK_FALSE(bad.tilting);
    CHECK(bad.failing_ext_degree == 1u);
    TiltingReport small = is_tilting(projective(a2, 0));
    CHECK_FALSE(small.tilting);
    CHECK_FALSE(small.obstruction.empty());
}

TEST_CASE("orbit lengths of the hereditary factors") {
    MCatalogue d4 = build_M(corpus::d4_subspace(), 1);
    CHECK(d4.orbit_lengths == std::vector<std::size_t>{3, 3, 3, 3});
    CHECK(d4.members.size() == 12);
    MCatalogue a3 = build_M(corpus::a3_linear(), 1);
    CHECK(sorted(a3.orbit_lengths) == std::vector<std::size_t>{1, 2, 3});
    MCatalogue bip = build_M(corpus::a3_bipartite(), 1);
    CHECK(bip.orbit_lengths == std::vector<std::size_t>{2, 2, 2});

    Classification c = classify_algebra(corpus::d4_subspace(), 1);
    CHECK(c.homogeneous);
    CHECK(c.l == 3u);
    CHECK(c.d_rep_finite);
    CHECK_FALSE(classify_algebra(corpus::a3_linear(), 1).homogeneous);
}

TEST_CASE("higher representation finite examples") {
    Verdict zr = verify_conditions(corpus::a3_zero_relation(), 2);
    CHECK(zr.d_complete.value);
    CHECK(zr.d_rep_finite.value);

    auto bip = corpus::a3_bipartite();
    Verdict v = verify_conditions(tensor_algebra(bip, bip), 2);
    CHECK(v.d_complete.value);
    CHECK(v.d_rep_finite.value);
    CHECK(v.homogeneous.value);
    CHECK(v.l == 2u);
}

TEST_CASE("D4 subspace tensor A3 linear at d = 2") {
    auto lambda = tensor_algebra(corpus::d4_subspace(), corpus::a3_linear());
    MCatalogue cat = build_M(lambda, 2);
    CHECK(cat.members.size() == 24);
    REQUIRE(cat.slices.size() == 3);
    CHECK(cat.slices[0].size() == 12);
    CHECK(cat.slices[1].size() == 8);
    CHECK(cat.slices[2].size() == 4);
    CHECK(cat.t_members.size() == 12);
    CHECK_FALSE(slice_hom_violation(cat).has_value());
    VerifyOptions opt;
    opt.cocomplete = false;
    Verdict v = verify_conditions(lambda, 2, opt);
    CHECK(v.d_complete.value);
    CHECK_FALSE(v.d_rep_finite.value);
    CHECK_FALSE(v.homogeneous.value);
}
