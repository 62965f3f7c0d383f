#include "doctest.h"

#include <algorithm>

#include "corpus.hpp"

using namespace higherar;

namespace {

std::vector<std::string> labels(const std::vector<Rep>& xs) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(x.dim_label());
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("standard modules") {
    auto pt = corpus::point();
    CHECK(projective(pt, 0).total_dim() == 1);
    CHECK(injective(pt, 0).total_dim() == 1);
    CHECK(simple(pt, 0).total_dim() == 1);

    auto a2 = corpus::a2();
    CHECK(projective(a2, 1).dims() == std::vector<std::size_t>{1, 1});
    CHECK(projective(a2, 0).dims() == std::vector<std::size_t>{1, 0});
    CHECK(injective(a2, 0).dims() == std::vector<std::size_t>{1, 1});
    CHECK(injective(a2, 1).dims() == std::vector<std::size_t>{0, 1});

    auto sq = tensor_algebra(a2, a2);
    // P at the source vertex (2,2) of the square is everything.
    CHECK(projective(sq, 3).dim_label() == "1111");
    CHECK(projective(corpus::square(), 0).dims() == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("hom dimensions") {
    std::mt19937_64 rng(11);
    auto alg = corpus::d4_subspace();
    for (int t = 0; t < 10; ++t) {
        Rep y = corpus::random_rep(alg, rng);
        for (std::size_t i = 0; i < alg->vertex_count(); ++i) {
            CHECK(hom(projective(alg, i), y).dim() == y.dim(i));
        }
        CHECK(hom(y, y).dim() >= (y.is_zero() ? 0u : 1u));
        for (const auto& f : hom_basis(y, y)) CHECK(f.is_homomorphism());
    }
}

TEST_CASE("radical and top") {
    auto a2 = corpus::a2();
    Rep s1 = simple(a2, 0);
    RadTop rt = rad_top(s1, s1);
    CHECK(rt.rad.empty());
    CHECK(rt.top_dim == 1);

    // P_1 -> P_2 is the radical inclusion; P_1 and P_2 are not isomorphic.
    RadTop r12 = rad_top(projective(a2, 0), projective(a2, 1));
    CHECK(r12.hom.dim() == 1);
    CHECK(r12.rad.size() == 1);
    CHECK(r12.top_dim == 0);

    // rad is an ideal
    std::mt19937_64 rng(5);
    auto d4 = corpus::d4_subspace();
    for (int t = 0; t < 6; ++t) {
        Rep x = corpus::random_rep(d4, rng);
        Rep y = corpus::random_rep(d4, rng);
        RadTop r = rad_top(x, y);
        for (const auto& f : r.rad) {
            for (const auto& g : hom_basis(y, y)) CHECK(is_radical(g * f));
        }
    }
    CHECK_THROWS_AS(rad_top(Rep(corpus::a2(FieldSpec::prime(2)), {3, 0}, {Mat(FieldSpec::prime(2), 3, 0)}),
                            simple(corpus::a2(FieldSpec::prime(2)), 0)),
                    CharTooSmall);
}

TEST_CASE("duality and the Nakayama functor") {
    auto a2 = corpus::a2();
    for (std::size_t i = 0; i < 2; ++i) {
        Rep ds = dual(simple(a2, i));
        CHECK(same_algebra(ds.algebra(), a2->opposite()));
        CHECK(ds.dims() == simple(a2->opposite(), i).dims());
        CHECK(is_isomorphic(dual(projective(a2, i)), injective(a2->opposite(), i)));
        CHECK(is_isomorphic(dual(dual(projective(a2, i))), projective(a2, i)));
        CHECK(is_isomorphic(nakayama(projective(a2, i)), injective(a2, i)));
    }
    CHECK(is_isomorphic(nakayama(regular_module(a2)), dual_regular_module(a2)));
    CHECK_THROWS_AS(nakayama(injective(a2, 1)), NotProjective);

    auto sq = corpus::square();
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(hom(projective(sq, i), projective(sq, j)).dim() ==
                  hom(nakayama(projective(sq, i)), nakayama(projective(sq, j))).dim());
        }
    }
}

TEST_CASE("tensor products of modules") {
    auto a2 = corpus::a2();
    auto sq = tensor_algebra(a2, a2);
    CHECK(tensor_rep(sq, simple(a2, 1), simple(a2, 1)).dim_label() == "0100");
    CHECK(tensor_rep(sq, simple(a2, 0), simple(a2, 0)).dim_label() == "0010");
    CHECK(tensor_rep(sq, injective(a2, 0), simple(a2, 1)).dim_label() == "1100");
    CHECK(tensor_rep(sq, simple(a2, 1), injective(a2, 0)).dim_label() == "0101");
    CHECK(tensor_rep(sq, injective(a2, 0), injective(a2, 0)).dim_label() == "1111");
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(is_isomorphic(tensor_rep(sq, injective(a2, i), injective(a2, j)), injective(sq, i * 2 + j)));
            CHECK(is_isomorphic(tensor_rep(sq, simple(a2, i), simple(a2, j)), simple(sq, i * 2 + j)));
        }
    }

    std::mt19937_64 rng(3);
    auto b = corpus::a3_linear();
    auto lam = tensor_algebra(a2, b);
    for (int t = 0; t < 15; ++t) {
        Rep x = corpus::random_rep(a2, rng), x2 = corpus::random_rep(a2, rng);
        Rep y = corpus::random_rep(b, rng), y2 = corpus::random_rep(b, rng);
        RadTop rx = rad_top(x, x2), ry = rad_top(y, y2);
        RadTop rl = rad_top(tensor_rep(lam, x, y), tensor_rep(lam, x2, y2));
        const std::size_t hx = rx.hom.dim(), hy = ry.hom.dim();
        CHECK(rl.hom.dim() == hx * hy);
        // dim(R1⊗H2 + H1⊗R2) = r1 h2 + h1 r2 - r1 r2
        CHECK(rl.rad.size() == rx.rad.size() * hy + hx * ry.rad.size() - rx.rad.size() * ry.rad.size());
    }
}

TEST_CASE("decomposition and isomorphism") {
    auto a2 = corpus::a2();
    CHECK(decompose(simple(a2, 0)).parts.size() == 1);

    Rep pp = direct_sum_module({projective(a2, 0), projective(a2, 0)}, a2);
    auto g = decompose(pp).grouped();
    REQUIRE(g.size() == 1);
    CHECK(g[0].second == 2);

    std::mt19937_64 rng(17);
    auto sq = tensor_algebra(a2, a2);
    Rep mid = direct_sum_module({tensor_rep(sq, simple(a2, 1), injective(a2, 0)),
                                 tensor_rep(sq, injective(a2, 0), simple(a2, 1))},
                                sq);
    Rep scrambled = corpus::scramble(mid, rng);
    Decomposition dec = decompose(scrambled);
    REQUIRE(dec.parts.size() == 2);
    std::vector<Rep> parts;
    for (const auto& p : dec.parts) {
        parts.push_back(p.module);
        CHECK(p.projection * p.inclusion == RepMap::identity(p.module));
        CHECK(p.inclusion.is_homomorphism());
    }
    CHECK(labels(parts) == std::vector<std::string>{"0101", "1100"});
    RepMap sum = RepMap::zero(scrambled, scrambled);
    for (const auto& p : dec.parts) sum = sum + p.inclusion * p.projection;
    CHECK(sum == RepMap::identity(scrambled));

    // Krull-Schmidt: re-decomposing the sum of the parts gives the same labels.
    auto d4 = corpus::d4_subspace();
    for (int t = 0; t < 8; ++t) {
        Rep x = corpus::random_rep(d4, rng, 3);
        auto found = indecomposable_summands(x);
        for (const auto& s : found) CHECK(is_indecomposable(s));
        Rep again = corpus::scramble(direct_sum_module(found, d4), rng);
        CHECK(labels(indecomposable_summands(again)) == labels(found));
        CHECK(is_isomorphic(again, x));
    }

    CHECK(is_isomorphic(mid, scrambled));
    auto w = find_isomorphism(mid, mid);
    REQUIRE(w.has_value());
    CHECK(w->is_iso());
    CHECK_FALSE(is_isomorphic(simple(a2, 0), simple(a2, 1)));
    CHECK_FALSE(is_isomorphic(projective(sq, 3), direct_sum_module({simple(sq, 3), simple(sq, 1), simple(sq, 2),
                                                                     simple(sq, 0)}, sq)));
}

TEST_CASE("kernels, images and cokernels") {
    auto a2 = corpus::a2();
    Rep p1 = projective(a2, 0), p2 = projective(a2, 1);
    RepMap f = hom_basis(p1, p2).front();
    CHECK(is_mono(f));
    auto [c, pi] = cokernel(f);
    CHECK(c.dims() == std::vector<std::size_t>{0, 1});
    CHECK(pi.is_homomorphism());
    CHECK((pi * f).is_zero());
    auto [k, inc] = kernel(pi);
    CHECK(k.dims() == p1.dims());
    auto [im, iinc] = image(f);
    CHECK(is_isomorphic(im, p1));
}
