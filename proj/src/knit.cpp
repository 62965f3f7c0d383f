#include "higherar/knit.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>

#include "higherar/homolog.hpp"

namespace higherar {

namespace {

std::size_t idempotent_position(const Algebra& alg, std::size_t v) {
    const auto& b = alg.basis_between(v, v);
    return static_cast<std::size_t>(std::find(b.begin(), b.end(), alg.idempotent_basis_index(v)) - b.begin());
}

// The map ⊕ P_{v_s} -> Y sending the s-th generator to the s-th block of `vec`.
RepMap from_cochain(const Rep& p, const std::vector<std::size_t>& verts, const Rep& y, const Mat& vec) {
    const AlgebraPtr& alg = y.algebra();
    const std::size_t n = alg->vertex_count();
    std::vector<Mat> comps;
    for (std::size_t w = 0; w < n; ++w) comps.emplace_back(y.field(), y.dim(w), p.dim(w));
    std::vector<std::size_t> coloff(n, 0);
    std::size_t off = 0;
    for (auto v : verts) {
        const Mat gen = vec.block(off, 0, y.dim(v), 1);
        off += y.dim(v);
        for (std::size_t w = 0; w < n; ++w) {
            const auto& paths = alg->basis_between(v, w);
            for (std::size_t c = 0; c < paths.size(); ++c) {
                comps[w].set_block(0, coloff[w] + c, y.basis_action(paths[c]) * gen);
            }
            coloff[w] += paths.size();
        }
    }
    return RepMap(p, y, std::move(comps));
}

// Images of the generators of ⊕ P_{v_s}, stacked.
Mat to_cochain(const RepMap& f, const std::vector<std::size_t>& verts) {
    const AlgebraPtr& alg = f.dom().algebra();
    const Rep& y = f.cod();
    std::size_t total = 0;
    for (auto v : verts) total += y.dim(v);
    Mat out(y.field(), total, 1);
    std::vector<std::size_t> coloff(alg->vertex_count(), 0);
    std::size_t off = 0;
    for (auto v : verts) {
        out.set_block(off, 0, f.comp(v).column(coloff[v] + idempotent_position(*alg, v)));
        off += y.dim(v);
        for (std::size_t w = 0; w < alg->vertex_count(); ++w) coloff[w] += alg->basis_between(v, w).size();
    }
    return out;
}

// g: ⊕ P_{v_s} -> W with onto ∘ g = f.
RepMap lift(const RepMap& onto, const RepMap& f, const std::vector<std::size_t>& verts) {
    const Mat target = to_cochain(f, verts);
    const Rep& w = onto.dom();
    std::size_t total = 0;
    for (auto v : verts) total += w.dim(v);
    Mat vec(w.field(), total, 1);
    std::size_t in = 0, out = 0;
    for (auto v : verts) {
        auto x = try_solve_matrix(onto.comp(v), target.block(in, 0, onto.cod().dim(v), 1));
        if (!x) throw LiftFailed("lift through a projective: generator image not in the image");
        vec.set_block(out, 0, *x);
        in += onto.cod().dim(v);
        out += w.dim(v);
    }
    return from_cochain(f.dom(), verts, w, vec);
}

// Coefficient vectors c (in the basis `reps` of Ext) whose class is killed by
// every radical endomorphism of Z.
Mat socle_coefficients(const ProjResolution& r, const Rep& x, const ExtSpace& ex) {
    const Rep& z = r.x;
    const Rep& p1 = r.modules[1];
    const RepMap& d1 = r.differentials[0];
    const std::size_t e = ex.dim;
    const std::size_t b = ex.boundaries.cols();
    const std::size_t rows = ex.representatives.rows();
    const std::vector<RepMap> rad = rad_top(z, z).rad;
    if (rad.empty()) return Mat::identity(x.field(), e);
    // [M_ρ R | -B_ρ] blocks, one row-block per ρ, unknowns (c, y_ρ...).
    Mat system(x.field(), rows * rad.size(), e + b * rad.size());
    for (std::size_t k = 0; k < rad.size(); ++k) {
        const RepMap rho0 = lift(r.augmentation, rad[k] * r.augmentation, r.terms[0]);
        const RepMap rho1 = lift(d1, rho0 * d1, r.terms[1]);
        for (std::size_t c = 0; c < e; ++c) {
            const RepMap eta = from_cochain(p1, r.terms[1], x, ex.representatives.column(c));
            system.set_block(k * rows, c, to_cochain(eta * rho1, r.terms[1]));
        }
        system.set_block(k * rows, e + k * b, -ex.boundaries);
    }
    const Mat ker = kernel_basis(system);
    return image_basis(ker.block(0, 0, e, ker.cols()));
}

std::vector<Rep> distinct_generators(const std::vector<Rep>& mods, const DecomposeOptions& opt) {
    std::vector<Rep> out;
    for (const auto& m : mods) {
        for (const auto& s : indecomposable_summands(m, opt)) {
            if (!find_isomorphic(out, s, opt)) out.push_back(s);
        }
    }
    return out;
}

}  // namespace

ComplexOfReps ARSequence::complex() const { return ComplexOfReps(x.algebra(), 0, {z, e, x}, {g, f}); }

ARSequence classical_ar_sequence(const Rep& x, const DecomposeOptions& opt) {
    if (is_injective(x)) throw NotAnARSequence("no almost split sequence starts at an injective module");
    if (!is_indecomposable(x, opt)) throw NotAnARSequence("left end is not indecomposable");
    const AlgebraPtr& alg = x.algebra();
    const Rep z = transpose(dual(x));
    const ExtSpace ex = ext(z, x, 1);
    if (ex.dim == 0) throw NotAnARSequence("Ext^1(τ⁻X, X) vanishes");
    auto r = min_proj_resolution(z);
    const Mat soc = socle_coefficients(*r, x, ex);
    if (soc.cols() == 0) throw NotAnARSequence("Ext^1(τ⁻X, X) has no socle over End(τ⁻X)");

    const Rep& p0 = r->modules[0];
    const RepMap& d1 = r->differentials[0];
    DirectSum ds = direct_sum({x, p0}, alg);
    const RepMap q = r->augmentation * ds.projections[1];
    std::mt19937_64 rng(opt.seed);
    std::string last = "no candidate";
    for (std::size_t attempt = 0; attempt <= opt.retries; ++attempt) {
        const Mat coeffs = attempt == 0 ? soc.column(0) : soc * Mat::random(x.field(), soc.cols(), 1, rng);
        if (coeffs.is_zero()) continue;
        const RepMap eta = from_cochain(r->modules[1], r->terms[1], x, ex.representatives * coeffs);
        auto [e, pi] = cokernel(ds.inclusions[0] * eta - ds.inclusions[1] * d1);
        std::vector<Mat> gc;
        for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
            gc.push_back(solve_matrix(pi.comp(v).transpose(), q.comp(v).transpose()).transpose());
        }
        ARSequence s{x, e, z, pi * ds.inclusions[0], RepMap(e, z, std::move(gc))};
        const ComplexOfReps c = s.complex();
        if (!c.is_exact()) {
            last = "not exact";
            continue;
        }
        std::vector<Rep> gens = distinct_generators({x, z, e}, opt);
        // The left-end comparison there uses D Ext^1(-, Λ), which differs from
        // D Tr beyond hereditary algebras; here X = D Tr Z by construction.
        AlmostSplitReport rep = verify_almost_split(CatContext(alg, gens, opt), c, 1);
        if (rep.exact && rep.radical && rep.f_exact && rep.g_exact && rep.no_zero_rows_or_columns) return s;
        last = rep.left_end_is_tau ? rep.first_failure : "functor exactness or radical check failed";
    }
    throw NotAnARSequence("no socle element gave an almost split sequence: " + last);
}

std::optional<std::size_t> ARQuiver::index_of(const Rep& x, const DecomposeOptions& opt) const {
    return find_isomorphic(modules, x, opt);
}

CatContext ARQuiver::context(const DecomposeOptions& opt) const { return CatContext(alg, modules, opt); }

ARQuiver enumerate_indecomposables(const AlgebraPtr& alg, const KnitOptions& opt) {
    ARQuiver ar;
    ar.alg = alg;
    std::mt19937_64 rng(opt.order_seed);
    auto add = [&](const Rep& m) -> std::size_t {
        if (auto i = ar.index_of(m, opt.decompose)) return *i;
        if (ar.modules.size() >= opt.cap) {
            throw CapExceeded("more than " + std::to_string(opt.cap) + " indecomposables; possibly representation-infinite");
        }
        ar.modules.push_back(m);
        ar.projective.push_back(is_projective(m));
        ar.injective.push_back(is_injective(m));
        ar.tau_minus.emplace_back();
        ar.tau.emplace_back();
        ar.middle.emplace_back();
        return ar.modules.size() - 1;
    };
    std::deque<std::size_t> work;
    std::vector<std::size_t> start(alg->vertex_count());
    for (std::size_t v = 0; v < start.size(); ++v) start[v] = v;
    if (opt.order_seed != 0) std::shuffle(start.begin(), start.end(), rng);
    for (auto v : start) work.push_back(add(projective(alg, v)));
    std::vector<bool> done;
    while (!work.empty()) {
        std::size_t pick = 0;
        if (opt.order_seed != 0) pick = rng() % work.size();
        const std::size_t i = work[pick];
        work.erase(work.begin() + static_cast<std::ptrdiff_t>(pick));
        done.resize(ar.modules.size(), false);
        if (done[i]) continue;
        done[i] = true;
        if (ar.injective[i]) continue;
        const ARSequence s = classical_ar_sequence(ar.modules[i], opt.decompose);
        const std::size_t z = add(s.z);
        ar.tau_minus[i] = z;
        ar.tau[z] = i;
        work.push_back(z);
        for (const auto& [m, mult] : decompose(s.e, opt.decompose).grouped()) {
            const std::size_t j = add(m);
            ar.middle[i].emplace_back(j, mult);
            work.push_back(j);
        }
    }
    // X -> E_j and E_j -> τ⁻X for every sequence; an arrow seen twice carries the same multiplicity.
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> arrows;
    for (std::size_t i = 0; i < ar.size(); ++i) {
        if (!ar.tau_minus[i]) continue;
        for (auto [j, mult] : ar.middle[i]) {
            arrows[{i, j}] = mult;
            arrows[{j, *ar.tau_minus[i]}] = mult;
        }
    }
    for (const auto& [key, mult] : arrows) ar.arrows.push_back({key.first, key.second, mult});
    return ar;
}

std::string tag_glyph(ModuleTag t) {
    switch (t) {
        case ModuleTag::in_add_t: return "⊗";
        case ModuleTag::in_m_not_t: return "⊙";
        case ModuleTag::in_perp_not_m: return "■";
        case ModuleTag::outside_perp: return "·";
    }
    return "?";
}

std::string tag_name(ModuleTag t) {
    switch (t) {
        case ModuleTag::in_add_t: return "in-add-T";
        case ModuleTag::in_m_not_t: return "in-M-not-T";
        case ModuleTag::in_perp_not_m: return "in-perp-not-M";
        case ModuleTag::outside_perp: return "outside-perp";
    }
    return "?";
}

std::size_t ModuleClassification::count(ModuleTag t) const {
    return static_cast<std::size_t>(std::count(tags.begin(), tags.end(), t));
}

std::vector<std::size_t> ModuleClassification::with(ModuleTag t) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tags.size(); ++i) {
        if (tags[i] == t) out.push_back(i);
    }
    return out;
}

ModuleClassification classify_modules(const ARQuiver& ar, const MCatalogue& cat, const DecomposeOptions& opt) {
    std::vector<Rep> t_mods;
    for (auto m : cat.t_members) t_mods.push_back(cat.members[m]);
    ModuleClassification c;
    c.tags.resize(ar.size());
    for (std::size_t i = 0; i < ar.size(); ++i) {
        const Rep& x = ar.modules[i];
        if (find_isomorphic(t_mods, x, opt)) {
            c.tags[i] = ModuleTag::in_add_t;
        } else if (cat.index_of(x, opt)) {
            c.tags[i] = ModuleTag::in_m_not_t;
        } else if (perp_membership(cat.t, x)) {
            c.tags[i] = ModuleTag::in_perp_not_m;
        } else {
            c.tags[i] = ModuleTag::outside_perp;
        }
    }
    return c;
}

ExtSides ext_sides(const Rep& x, const MCatalogue& cat) {
    const std::size_t g = global_dimension(cat.alg);
    ExtSides s;
    for (const auto& m : cat.members) {
        for (std::size_t i = 1; i <= g; ++i) {
            if (!s.from_m && ext_dim(m, x, i) != 0) s.from_m = true;
            if (!s.to_m && ext_dim(x, m, i) != 0) s.to_m = true;
        }
    }
    return s;
}

std::optional<std::size_t> cluster_tilting_violation(const ARQuiver& ar, const MCatalogue& cat,
                                                     const DecomposeOptions& opt) {
    for (std::size_t k = 0; k < ar.size(); ++k) {
        const Rep& x = ar.modules[k];
        const bool member = cat.index_of(x, opt).has_value();
        bool left = true, right = true;
        for (const auto& m : cat.members) {
            for (std::size_t i = 1; i < cat.d; ++i) {
                if (ext_dim(m, x, i) != 0) left = false;
                if (ext_dim(x, m, i) != 0) right = false;
            }
        }
        if (left != member || right != member) return k;
    }
    return std::nullopt;
}

}  // namespace higherar
