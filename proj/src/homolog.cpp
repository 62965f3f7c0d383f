#include "higherar/homolog.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace higherar {

namespace {

// Position of each basis element inside basis_between(source, target).
std::vector<std::size_t> between_positions(const Algebra& alg) {
    std::vector<std::size_t> pos(alg.dim(), 0);
    for (std::size_t i = 0; i < alg.vertex_count(); ++i) {
        for (std::size_t j = 0; j < alg.vertex_count(); ++j) {
            const auto& b = alg.basis_between(i, j);
            for (std::size_t k = 0; k < b.size(); ++k) pos[b[k]] = k;
        }
    }
    return pos;
}

// Left multiplication by lambda ∈ e_u Λ e_v as a map P_v -> P_u.
RepMap left_mult(const AlgebraPtr& alg, const Rep& pv, std::size_t v, const Rep& pu, std::size_t u,
                 const Elem& lambda, const std::vector<std::size_t>& pos) {
    std::vector<Mat> comps;
    for (std::size_t w = 0; w < alg->vertex_count(); ++w) {
        const auto& src = alg->basis_between(v, w);
        Mat m(alg->field(), alg->basis_between(u, w).size(), src.size());
        for (std::size_t c = 0; c < src.size(); ++c) {
            for (const auto& [b, coef] : lambda.terms) {
                for (const auto& [r, rc] : alg->mul_basis(b, src[c]).terms) {
                    m.set(pos[r], c, m.at(pos[r], c) + coef * rc);
                }
            }
        }
        comps.push_back(std::move(m));
    }
    return RepMap(pv, pu, std::move(comps));
}

struct ResolutionCache {
    std::shared_mutex mutex;
    std::map<const void*, std::shared_ptr<const ProjResolution>> entries;
};

ResolutionCache& cache() {
    static ResolutionCache c;
    return c;
}

constexpr std::size_t kCacheLimit = 8192;

}  // namespace

DirectSum projective_sum(const AlgebraPtr& alg, const std::vector<std::size_t>& vertices) {
    std::vector<Rep> parts;
    for (auto v : vertices) parts.push_back(projective(alg, v));
    return direct_sum(parts, alg);
}

RepMap projective_map(const AlgebraPtr& alg, const std::vector<std::size_t>& source,
                      const std::vector<std::size_t>& target, const ProjEntries& entries) {
    DirectSum src = projective_sum(alg, source);
    DirectSum tgt = projective_sum(alg, target);
    const auto pos = between_positions(*alg);
    std::vector<std::vector<RepMap>> blocks(target.size());
    for (std::size_t t = 0; t < target.size(); ++t) {
        for (std::size_t s = 0; s < source.size(); ++s) {
            const Rep& ps = src.projections[s].cod();
            const Rep& pt = tgt.projections[t].cod();
            blocks[t].push_back(left_mult(alg, ps, source[s], pt, target[t], entries.at(t).at(s), pos));
        }
    }
    return block_map(src, tgt, blocks);
}

Elem opposite_elem(const Algebra& alg, const Elem& e) {
    const AlgebraPtr op = alg.opposite();
    Elem out;
    for (const auto& [b, c] : e.terms) {
        Path p = alg.basis(b);
        std::swap(p.source, p.target);
        std::reverse(p.arrows.begin(), p.arrows.end());
        const auto idx = op->find_path(p);
        out = op->add(out, op->scale(op->normal_form(*idx), c));
    }
    return out;
}

ProjCover projective_cover(const Rep& x) {
    const AlgebraPtr& alg = x.algebra();
    const Quiver& q = alg->quiver();
    ProjCover pc;
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
        Mat incoming(x.field(), x.dim(v), 0);
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            if (q.arrow(a).target == v) incoming = Mat::hstack(incoming, x.arrow(a));
        }
        Mat comp = complement_basis(image_basis(incoming), x.dim(v));
        for (std::size_t k = 0; k < comp.cols(); ++k) {
            pc.vertices.push_back(v);
            pc.generators.push_back(comp.column(k));
        }
    }
    DirectSum ps = projective_sum(alg, pc.vertices);
    std::vector<std::vector<RepMap>> blocks(1);
    for (std::size_t k = 0; k < pc.vertices.size(); ++k) {
        const std::size_t v = pc.vertices[k];
        std::vector<Mat> comps;
        for (std::size_t w = 0; w < alg->vertex_count(); ++w) {
            const auto& paths = alg->basis_between(v, w);
            Mat m(x.field(), x.dim(w), paths.size());
            for (std::size_t c = 0; c < paths.size(); ++c) {
                m.set_block(0, c, x.basis_action(paths[c]) * pc.generators[k]);
            }
            comps.push_back(std::move(m));
        }
        blocks[0].emplace_back(ps.projections[k].cod(), x, std::move(comps));
    }
    DirectSum target = direct_sum({x}, alg);
    // block_map goes through the one-summand sum; rebase onto x itself.
    RepMap m = block_map(ps, target, blocks);
    pc.map = RepMap(ps.sum, x, m.comps());
    return pc;
}

std::shared_ptr<const ProjResolution> min_proj_resolution(const Rep& x, std::size_t max_len) {
    auto& c = cache();
    {
        std::shared_lock lock(c.mutex);
        auto it = c.entries.find(x.identity());
        if (it != c.entries.end() && it->second->length() <= max_len) return it->second;
    }
    const AlgebraPtr& alg = x.algebra();
    auto res = std::make_shared<ProjResolution>();
    res->x = x;
    ProjCover pc = projective_cover(x);
    res->terms.push_back(pc.vertices);
    res->modules.push_back(pc.map.dom());
    res->augmentation = pc.map;
    RepMap prev = pc.map;
    while (true) {
        auto [k, inc] = kernel(prev);
        if (k.is_zero()) break;
        if (res->terms.size() > max_len) {
            throw ResolutionTooLong("resolution of " + x.dim_label() + " exceeds length " + std::to_string(max_len));
        }
        ProjCover kc = projective_cover(k);
        RepMap d = inc * kc.map;
        // Entries: generator k of the new term, read in the previous term.
        const auto& prev_terms = res->terms.back();
        ProjEntries entries(prev_terms.size(), std::vector<Elem>(kc.vertices.size()));
        for (std::size_t s = 0; s < kc.vertices.size(); ++s) {
            const std::size_t v = kc.vertices[s];
            Mat g = inc.comp(v) * kc.generators[s];
            std::size_t row = 0;
            for (std::size_t t = 0; t < prev_terms.size(); ++t) {
                const auto& paths = alg->basis_between(prev_terms[t], v);
                Elem e;
                for (std::size_t r = 0; r < paths.size(); ++r) {
                    Scalar coef = g.at(row + r, 0);
                    if (!coef.is_zero()) e.terms.emplace_back(paths[r], coef);
                }
                std::sort(e.terms.begin(), e.terms.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                entries[t][s] = std::move(e);
                row += paths.size();
            }
        }
        res->terms.push_back(kc.vertices);
        res->modules.push_back(kc.map.dom());
        res->differentials.push_back(RepMap(kc.map.dom(), res->modules[res->modules.size() - 2], d.comps()));
        res->entries.push_back(std::move(entries));
        prev = res->differentials.back();
    }
    std::unique_lock lock(c.mutex);
    if (c.entries.size() >= kCacheLimit) c.entries.clear();
    c.entries[x.identity()] = res;
    return res;
}

void clear_resolution_cache() {
    auto& c = cache();
    std::unique_lock lock(c.mutex);
    c.entries.clear();
}

std::size_t projective_dimension(const Rep& x) {
    if (x.is_zero()) return 0;
    return min_proj_resolution(x)->length();
}

std::size_t global_dimension(const AlgebraPtr& alg) {
    std::size_t g = 0;
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) g = std::max(g, projective_dimension(simple(alg, v)));
    return g;
}

Mat cochain_differential(const ProjResolution& r, const Rep& y, std::size_t i) {
    auto width = [&](std::size_t k) {
        std::size_t n = 0;
        if (k < r.terms.size()) {
            for (auto v : r.terms[k]) n += y.dim(v);
        }
        return n;
    };
    if (i == 0) return Mat(y.field(), width(0), 0);
    Mat m(y.field(), width(i), width(i - 1));
    if (i >= r.terms.size()) return m;
    const auto& src = r.terms[i - 1];
    const auto& tgt = r.terms[i];
    std::size_t row = 0;
    for (std::size_t s = 0; s < tgt.size(); ++s) {
        std::size_t col = 0;
        for (std::size_t t = 0; t < src.size(); ++t) {
            m.set_block(row, col, y.elem_action(r.entries[i - 1][t][s], src[t], tgt[s]));
            col += y.dim(src[t]);
        }
        row += y.dim(tgt[s]);
    }
    return m;
}

ExtSpace ext(const Rep& x, const Rep& y, std::size_t i) {
    if (!same_algebra(x.algebra(), y.algebra())) throw AlgebraMismatch("ext: modules over different algebras");
    ExtSpace e;
    e.degree = i;
    if (x.is_zero()) {
        e.cocycles = e.boundaries = e.representatives = Mat(y.field(), 0, 0);
        return e;
    }
    auto r = min_proj_resolution(x);
    Mat next = cochain_differential(*r, y, i + 1);
    Mat prev = cochain_differential(*r, y, i);
    e.cocycles = kernel_basis(next);
    e.boundaries = image_basis(prev);
    if (e.boundaries.rows() != e.cocycles.rows()) e.boundaries = Mat(y.field(), e.cocycles.rows(), 0);
    Mat in_z = solve_matrix(e.cocycles, e.boundaries);
    e.representatives = e.cocycles * complement_basis(in_z, e.cocycles.cols());
    e.dim = e.representatives.cols();
    return e;
}

std::size_t ext_dim(const Rep& x, const Rep& y, std::size_t i) { return ext(x, y, i).dim; }

namespace {

// Hom(P_{k-1}, Λ) -> Hom(P_k, Λ) as a map of Λ^op projectives.
RepMap dual_differential(const ProjResolution& r, std::size_t k) {
    const Algebra& alg = *r.x.algebra();
    const AlgebraPtr op = alg.opposite();
    const auto& src = r.terms[k - 1];
    const auto& tgt = r.terms[k];
    ProjEntries e(tgt.size(), std::vector<Elem>(src.size()));
    for (std::size_t s = 0; s < tgt.size(); ++s) {
        for (std::size_t t = 0; t < src.size(); ++t) e[s][t] = opposite_elem(alg, r.entries[k - 1][t][s]);
    }
    return projective_map(op, src, tgt, e);
}

}  // namespace

Rep ext_module(const Rep& x, std::size_t d) {
    const AlgebraPtr op = x.algebra()->opposite();
    if (x.is_zero()) return Rep::zero(op);
    auto r = min_proj_resolution(x);
    if (d > r->length()) return Rep::zero(op);
    DirectSum qd = projective_sum(op, r->terms[d]);
    // cycles
    Rep z = qd.sum;
    RepMap z_inc = RepMap::identity(qd.sum);
    if (d + 1 <= r->length()) {
        auto [k, inc] = kernel(dual_differential(*r, d + 1));
        z = k;
        z_inc = inc;
    }
    if (d == 0) return z;
    RepMap delta = dual_differential(*r, d);
    std::vector<Mat> into_z;
    for (std::size_t v = 0; v < op->vertex_count(); ++v) into_z.push_back(solve_matrix(z_inc.comp(v), delta.comp(v)));
    auto [h, pi] = cokernel(RepMap(delta.dom(), z, std::move(into_z)));
    return h;
}

Rep transpose(const Rep& x) {
    const AlgebraPtr op = x.algebra()->opposite();
    if (x.is_zero()) return Rep::zero(op);
    auto r = min_proj_resolution(x);
    if (r->length() == 0) return Rep::zero(op);
    return cokernel(dual_differential(*r, 1)).first;
}

Rep tau_d(const Rep& x, std::size_t d) { return dual(ext_module(x, d)); }

Rep tau_d_minus(const Rep& x, std::size_t d) { return ext_module(dual(x), d); }

}  // namespace higherar
