#include "higherar/tensorops.hpp"

#include <algorithm>

namespace higherar {

namespace {

struct Grid {
    int lo = 0, hi = 0;
    std::vector<std::vector<std::pair<int, int>>> cells;  ///< (p, q) for each degree
    const std::vector<std::pair<int, int>>& at(int k) const { return cells[static_cast<std::size_t>(k - lo)]; }
};

Grid grid(const ComplexOfReps& x, const ComplexOfReps& y) {
    Grid g{x.lo() + y.lo(), x.hi() + y.hi(), {}};
    for (int k = g.lo; k <= g.hi; ++k) {
        std::vector<std::pair<int, int>> c;
        for (int p = x.lo(); p <= x.hi(); ++p) {
            const int q = k - p;
            if (q >= y.lo() && q <= y.hi()) c.emplace_back(p, q);
        }
        g.cells.push_back(std::move(c));
    }
    return g;
}

std::vector<DirectSum> grid_sums(const AlgebraPtr& lambda, const Grid& g, const ComplexOfReps& x,
                                 const ComplexOfReps& y) {
    std::vector<DirectSum> sums;
    for (int k = g.lo; k <= g.hi; ++k) {
        std::vector<Rep> parts;
        for (auto [p, q] : g.at(k)) parts.push_back(tensor_rep(lambda, x.term(p), y.term(q)));
        sums.push_back(direct_sum(parts, lambda));
    }
    return sums;
}

}  // namespace

TotalComplex tensor_complex(const AlgebraPtr& lambda, const ComplexOfReps& x, const ComplexOfReps& y) {
    const Grid g = grid(x, y);
    const auto sums = grid_sums(lambda, g, x, y);
    const Scalar one = Scalar::one(lambda->field());
    std::vector<Rep> terms;
    for (const auto& s : sums) terms.push_back(s.sum);
    std::vector<RepMap> diffs;
    for (int k = g.lo + 1; k <= g.hi; ++k) {
        const auto& src = g.at(k);
        const auto& dst = g.at(k - 1);
        std::vector<std::vector<RepMap>> blocks(dst.size());
        for (std::size_t i = 0; i < dst.size(); ++i) {
            for (std::size_t j = 0; j < src.size(); ++j) {
                auto [p, q] = src[j];
                auto [p2, q2] = dst[i];
                const Rep from = tensor_rep(lambda, x.term(p), y.term(q));
                const Rep to = tensor_rep(lambda, x.term(p2), y.term(q2));
                if (p2 == p - 1 && q2 == q) {
                    blocks[i].push_back(tensor_map(lambda, x.d(p), RepMap::identity(y.term(q))));
                } else if (p2 == p && q2 == q - 1) {
                    RepMap b = tensor_map(lambda, RepMap::identity(x.term(p)), y.d(q));
                    blocks[i].push_back(p % 2 == 0 ? b : b.scaled(-one));
                } else {
                    blocks[i].push_back(RepMap::zero(from, to));
                }
            }
        }
        diffs.push_back(block_map(sums[static_cast<std::size_t>(k - g.lo)],
                                  sums[static_cast<std::size_t>(k - 1 - g.lo)], blocks));
    }
    return TotalComplex{x, y, ComplexOfReps(lambda, g.lo, std::move(terms), std::move(diffs))};
}

ComplexMap tensor_complex_map(const AlgebraPtr& lambda, const ComplexMap& phi, const ComplexMap& psi) {
    TotalComplex dom = tensor_complex(lambda, phi.dom(), psi.dom());
    TotalComplex cod = tensor_complex(lambda, phi.cod(), psi.cod());
    const Grid gd = grid(phi.dom(), psi.dom());
    const Grid gc = grid(phi.cod(), psi.cod());
    const auto sd = grid_sums(lambda, gd, phi.dom(), psi.dom());
    const auto sc = grid_sums(lambda, gc, phi.cod(), psi.cod());
    std::vector<RepMap> comps;
    for (int k = gd.lo; k <= gd.hi; ++k) {
        const Rep target = cod.total.term(k);
        RepMap total = RepMap::zero(dom.total.term(k), target);
        if (k >= gc.lo && k <= gc.hi) {
            const auto& src = gd.at(k);
            const auto& dst = gc.at(k);
            const DirectSum& ds = sd[static_cast<std::size_t>(k - gd.lo)];
            const DirectSum& dc = sc[static_cast<std::size_t>(k - gc.lo)];
            for (std::size_t j = 0; j < src.size(); ++j) {
                for (std::size_t i = 0; i < dst.size(); ++i) {
                    if (dst[i] != src[j]) continue;
                    auto [p, q] = src[j];
                    total = total + dc.inclusions[i] * tensor_map(lambda, phi.comp(p), psi.comp(q)) * ds.projections[j];
                }
            }
        }
        comps.push_back(std::move(total));
    }
    return ComplexMap(dom.total, cod.total, gd.lo, std::move(comps));
}

bool kunneth_homology_holds(const AlgebraPtr& lambda, const TotalComplex& t) {
    const auto& fac = lambda->factors();
    if (!fac) throw AlgebraMismatch("kunneth_homology_holds: not a tensor algebra");
    const std::size_t na = fac->a->vertex_count(), nb = fac->b->vertex_count();
    for (int k = t.total.lo() - 1; k <= t.total.hi() + 1; ++k) {
        std::vector<std::size_t> expect(na * nb, 0);
        for (int p = t.x.lo(); p <= t.x.hi(); ++p) {
            const int q = k - p;
            if (q < t.y.lo() || q > t.y.hi()) continue;
            const auto hx = t.x.homology_vector(p);
            const auto hy = t.y.homology_vector(q);
            for (std::size_t i = 0; i < na; ++i) {
                for (std::size_t j = 0; j < nb; ++j) expect[i * nb + j] += hx[i] * hy[j];
            }
        }
        if (t.total.homology_vector(k) != expect) return false;
    }
    return true;
}

KunnethReport kunneth_ext_check(const AlgebraPtr& lambda, const Rep& m1, const Rep& n1, const Rep& m2,
                                const Rep& n2, std::size_t through) {
    auto dim = [](const Rep& x, const Rep& y, std::size_t i) { return i == 0 ? hom(x, y).dim() : ext_dim(x, y, i); };
    KunnethReport r;
    const Rep a = tensor_rep(lambda, m1, n1), b = tensor_rep(lambda, m2, n2);
    for (std::size_t i = 0; i <= through; ++i) {
        r.lhs.push_back(dim(a, b, i));
        std::size_t s = 0;
        for (std::size_t p = 0; p <= i; ++p) s += dim(m1, m2, p) * dim(n1, n2, i - p);
        r.rhs.push_back(s);
    }
    return r;
}

bool tau_tensor_check(const AlgebraPtr& lambda, const Rep& x, const Rep& y, std::size_t n, std::size_t m,
                      const DecomposeOptions& opt) {
    Rep lhs = tau_d(tensor_rep(lambda, x, y), n + m);
    Rep rhs = tensor_rep(lambda, tau_d(x, n), tau_d(y, m));
    return is_isomorphic(lhs, rhs, opt);
}

ComplexOfReps ass_via_cone(const AlgebraPtr& lambda, const SliceSplit& a, const SliceSplit& b, const CatContext& ctx,
                           std::size_t n, std::size_t m) {
    const int d = static_cast<int>(n + m);
    ComplexMap phi = tensor_complex_map(lambda, a.phi, b.phi);
    ComplexOfReps seq = cone(phi).restricted(0, d + 1);
    AlmostSplitReport rep = verify_almost_split(ctx, seq, n + m);
    if (!rep.ok()) throw NotAlmostSplit("Cone(phi⊗psi): " + rep.first_failure);
    ComplexOfReps direct = d_almost_split(ctx, seq.term(0), n + m);
    if (!find_complex_isomorphism(seq, direct, ctx.options())) {
        throw NotAlmostSplit("Cone(phi⊗psi) is not isomorphic to the directly computed sequence");
    }
    return seq;
}

bool top_tensor_identity(const AlgebraPtr& lambda, const Rep& x, const Rep& y, const Rep& m, const Rep& n) {
    const std::size_t lhs = rad_top(tensor_rep(lambda, x, y), tensor_rep(lambda, m, n)).top_dim;
    return lhs == rad_top(x, m).top_dim * rad_top(y, n).top_dim;
}

ComplexOfReps injective_source_sequence(const AlgebraPtr& lambda, const ComplexOfReps& xs, const ComplexOfReps& ys,
                                        const CatContext& ctx, const CatContext& ctx_a, const CatContext& ctx_b) {
    TotalComplex t = tensor_complex(lambda, xs, ys);
    ComplexOfReps seq = t.total.shifted(-1);
    for (const auto& z : ctx.generators()) {
        FunctorReport r = check_functor_exactness(seq, z, FunctorSide::contravariant, seq.hi());
        if (!r.exact) throw SequenceLeavesCategory("G_Z not exact for Z = " + z.dim_label() + ": " + r.describe());
    }
    const Rep x = xs.term(xs.hi()), y = ys.term(ys.hi());
    for (const auto& m : ctx_a.generators()) {
        for (const auto& n : ctx_b.generators()) {
            if (!top_tensor_identity(lambda, x, y, m, n)) {
                throw SequenceLeavesCategory("top identity fails for " + m.dim_label() + " ⊗ " + n.dim_label());
            }
        }
    }
    return seq;
}

HomogeneityReport homogeneity_transfer_check(const AlgebraPtr& a, const AlgebraPtr& b, std::size_t n, std::size_t m,
                                             const DecomposeOptions& opt) {
    HomogeneityReport r;
    AlgebraPtr lambda = tensor_algebra(a, b);
    MCatalogue ca = build_M(a, n, kDefaultSliceCap, opt);
    MCatalogue cb = build_M(b, m, kDefaultSliceCap, opt);
    MCatalogue cl = build_M(lambda, n + m, kDefaultSliceCap, opt);
    r.l_a = ca.orbit_lengths;
    r.l_b = cb.orbit_lengths;
    r.t_matches = is_isomorphic(cl.t, tensor_rep(lambda, ca.t, cb.t), opt);
    const std::size_t l0 = r.l_a.empty() ? 0 : r.l_a[0];
    auto same = [l0](std::size_t l) { return l == l0; };
    r.common_l = std::all_of(r.l_a.begin(), r.l_a.end(), same) && std::all_of(r.l_b.begin(), r.l_b.end(), same);
    return r;
}

}  // namespace higherar
