#include "higherar/complete.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace higherar {

// --------------------------------------------------------------- catalogue

std::vector<std::size_t> MCatalogue::p_members() const {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < members.size(); ++m) {
        if (in_p(m)) out.push_back(m);
    }
    return out;
}

std::vector<std::size_t> MCatalogue::mp_members() const {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < members.size(); ++m) {
        if (!in_p(m)) out.push_back(m);
    }
    return out;
}

std::vector<std::size_t> MCatalogue::mi_members() const {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < members.size(); ++m) {
        if (!in_add_dual(m)) out.push_back(m);
    }
    return out;
}

std::optional<std::size_t> MCatalogue::index_of(const Rep& x, const DecomposeOptions& opt) const {
    return find_isomorphic(members, x, opt);
}

CatContext MCatalogue::context(const DecomposeOptions& opt) const { return CatContext(alg, members, opt); }

MCatalogue build_M(const AlgebraPtr& alg, std::size_t d, std::size_t cap, const DecomposeOptions& opt) {
    MCatalogue cat;
    cat.alg = alg;
    cat.d = d;
    const std::size_t n = alg->vertex_count();

    auto add_member = [&cat](Rep x, std::size_t slice, std::pair<std::size_t, std::size_t> origin) {
        cat.members.push_back(std::move(x));
        cat.slice.push_back(slice);
        cat.origin.push_back(origin);
        cat.tau.emplace_back();
        return cat.members.size() - 1;
    };

    std::vector<std::size_t> current;
    for (std::size_t v = 0; v < n; ++v) {
        Rep inj = injective(alg, v);
        auto found = cat.index_of(inj, opt);
        if (found) {
            cat.injective_member.push_back(*found);
            continue;
        }
        const std::size_t idx = add_member(inj, 0, {v, 0});
        cat.injective_member.push_back(idx);
        current.push_back(idx);
    }
    cat.slices.push_back(current);

    while (!current.empty()) {
        const std::size_t level = cat.slices.size();
        std::vector<std::size_t> next;
        for (std::size_t m : current) {
            Rep t = tau_d(cat.members[m], d);
            std::vector<std::size_t> children;
            if (!t.is_zero()) {
                for (const auto& s : indecomposable_summands(t, opt)) {
                    std::optional<std::size_t> idx;
                    for (std::size_t c : next) {
                        if (cat.members[c].dims() == s.dims() && is_isomorphic(cat.members[c], s, opt)) {
                            idx = c;
                            break;
                        }
                    }
                    if (!idx) {
                        if (auto earlier = cat.index_of(s, opt)) {
                            throw TauNonVanishing("tau_d orbit returns to " + cat.members[*earlier].dim_label() +
                                                  " in slice " + std::to_string(level));
                        }
                        idx = add_member(s, level, {cat.origin[m].first, cat.origin[m].second + 1});
                        next.push_back(*idx);
                    }
                    children.push_back(*idx);
                }
            }
            cat.tau[m] = std::move(children);
        }
        if (next.empty()) break;
        if (cat.slices.size() >= cap) {
            throw TauNonVanishing("more than " + std::to_string(cap) + " slices");
        }
        cat.slices.push_back(next);
        current = std::move(next);
    }

    std::set<std::size_t> t_set;
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::size_t> orbit{cat.injective_member[v]};
        std::size_t l = 1;
        for (;;) {
            std::vector<std::size_t> nxt;
            for (std::size_t m : orbit) nxt.insert(nxt.end(), cat.tau[m].begin(), cat.tau[m].end());
            if (nxt.empty()) break;
            orbit = std::move(nxt);
            ++l;
        }
        std::sort(orbit.begin(), orbit.end());
        orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
        cat.orbit_lengths.push_back(l);
        t_set.insert(orbit.begin(), orbit.end());
        cat.orbit_final.push_back(std::move(orbit));
    }
    cat.t_members.assign(t_set.begin(), t_set.end());
    cat.t = compute_T(cat);
    return cat;
}

Rep compute_T(const MCatalogue& cat) {
    std::vector<Rep> parts;
    for (std::size_t m : cat.t_members) parts.push_back(cat.members[m]);
    return direct_sum_module(parts, cat.alg);
}

// ----------------------------------------------------------------- tilting

TiltingReport is_tilting(const Rep& t, std::optional<std::size_t> bound, const DecomposeOptions& opt) {
    TiltingReport r;
    const AlgebraPtr& alg = t.algebra();
    const std::size_t gd = global_dimension(alg);
    const std::size_t max_steps = bound.value_or(gd + 1);
    for (std::size_t i = 1; i <= gd; ++i) {
        if (ext_dim(t, t, i) != 0) {
            r.failing_ext_degree = i;
            r.obstruction = "Ext^" + std::to_string(i) + "(T, T) != 0";
            return r;
        }
    }
    std::vector<Rep> gens;
    for (auto& [m, mult] : decompose(t, opt).grouped()) gens.push_back(m);
    CatContext ctx(alg, gens, opt);
    Rep k = regular_module(alg);
    for (std::size_t step = 0; step <= max_steps; ++step) {
        Approximation a = minimal_left_approx(ctx, k, ApproxMode::full);
        if (!is_mono(a.map)) {
            r.obstruction = "add T-approximation in step " + std::to_string(step) + " is not injective";
            return r;
        }
        r.coresolution.push_back(a.module);
        auto [q, pi] = cokernel(a.map);
        if (q.is_zero()) {
            r.tilting = true;
            return r;
        }
        k = q;
    }
    r.obstruction = "coresolution of the regular module exceeds " + std::to_string(max_steps) + " steps";
    return r;
}

bool perp_membership(const Rep& t, const Rep& x) {
    const std::size_t gd = global_dimension(t.algebra());
    for (std::size_t i = 1; i <= gd; ++i) {
        if (ext_dim(t, x, i) != 0) return false;
    }
    return true;
}

// ------------------------------------------------------------- directedness

DirectednessReport directedness_report(const std::vector<Rep>& generators) {
    DirectednessReport r;
    r.generators = generators;
    const std::size_t n = generators.size();
    r.edges.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (!rad_top(generators[a], generators[b]).rad.empty()) r.edges[a].push_back(b);
        }
    }

    // Depth-first search for a closed walk.
    std::vector<int> color(n, 0);
    std::vector<std::size_t> stack;
    std::function<bool(std::size_t)> dfs = [&](std::size_t a) {
        color[a] = 1;
        stack.push_back(a);
        for (std::size_t b : r.edges[a]) {
            if (color[b] == 1) {
                auto it = std::find(stack.begin(), stack.end(), b);
                r.cycle.assign(it, stack.end());
                r.cycle.push_back(b);
                return true;
            }
            if (color[b] == 0 && dfs(b)) return true;
        }
        color[a] = 2;
        stack.pop_back();
        return false;
    };
    for (std::size_t a = 0; a < n && r.cycle.empty(); ++a) {
        if (color[a] == 0) dfs(a);
    }
    r.acyclic = r.cycle.empty();
    if (!r.acyclic) return r;

    std::vector<std::size_t> indeg(n, 0);
    for (const auto& out : r.edges) {
        for (std::size_t b : out) ++indeg[b];
    }
    std::vector<std::size_t> ready;
    for (std::size_t a = 0; a < n; ++a) {
        if (indeg[a] == 0) ready.push_back(a);
    }
    r.height.assign(n, 0);
    while (!ready.empty()) {
        std::size_t a = ready.front();
        ready.erase(ready.begin());
        r.order.push_back(a);
        for (std::size_t b : r.edges[a]) {
            r.height[b] = std::max(r.height[b], r.height[a] + 1);
            if (--indeg[b] == 0) ready.push_back(b);
        }
    }
    return r;
}

// ------------------------------------------------------------------ verdict

namespace {

std::string member_name(const MCatalogue& cat, std::size_t m) {
    return cat.members[m].dim_label() + " (slice " + std::to_string(cat.slice[m]) + ")";
}

Flag check_b(const MCatalogue& cat, const Flag& a, const VerifyOptions& opt) {
    if (!a.value) return {false, "requires T to be tilting"};
    const std::size_t d = cat.d;
    const std::size_t r = cat.members.size();
    for (std::size_t i = 1; i < d; ++i) {
        for (std::size_t x = 0; x < r; ++x) {
            for (std::size_t y = 0; y < r; ++y) {
                if (ext_dim(cat.members[x], cat.members[y], i) != 0) {
                    return {false, "Ext^" + std::to_string(i) + "(" + member_name(cat, x) + ", " + member_name(cat, y) +
                                       ") != 0"};
                }
            }
        }
    }
    if (projective_dimension(cat.t) > d) return {false, "proj.dim T exceeds d"};
    for (std::size_t x = 0; x < r; ++x) {
        if (!perp_membership(cat.t, cat.members[x])) return {false, member_name(cat, x) + " is not in T-perp"};
    }
    CatContext ctx = cat.context(opt.decompose);
    for (std::size_t x = 0; x < r; ++x) {
        try {
            source_sequence(ctx, cat.members[x], d);
        } catch (const SequenceLeavesCategory& e) {
            return {false, "no source sequence for " + member_name(cat, x) + ": " + e.what()};
        }
    }
    return {true, "source sequences of length at most " + std::to_string(d + 2) + " for all " + std::to_string(r) +
                      " members"};
}

}  // namespace

Verdict verify_conditions(const AlgebraPtr& alg, std::size_t d, const VerifyOptions& opt) {
    Verdict v;
    v.d = d;
    v.gl_dim = global_dimension(alg);

    std::vector<Rep> projs;
    for (std::size_t i = 0; i < alg->vertex_count(); ++i) projs.push_back(projective(alg, i));
    DirectednessReport dr = directedness_report(projs);
    v.acyclic.value = dr.acyclic;
    if (!dr.acyclic) {
        v.acyclic.witness = "cycle through";
        for (std::size_t a : dr.cycle) v.acyclic.witness += " P" + alg->quiver().vertex_name(a);
    }

    auto fail_all = [&v](const std::string& why) {
        v.a = {false, why};
        v.b = {false, why};
        v.c = {false, why};
        v.c_with_hom = {false, why};
    };
    if (v.gl_dim > d) {
        fail_all("gl.dim " + std::to_string(v.gl_dim) + " exceeds d = " + std::to_string(d));
    } else {
        try {
            v.catalogue = build_M(alg, d, opt.cap, opt.decompose);
        } catch (const TauNonVanishing& e) {
            fail_all(e.what());
        }
    }

    if (v.catalogue) {
        const MCatalogue& cat = *v.catalogue;
        TiltingReport tr = is_tilting(cat.t, v.gl_dim + 1, opt.decompose);
        v.a.value = tr.tilting;
        v.a.witness = tr.tilting ? "coresolution of length " + std::to_string(tr.coresolution.size() - 1)
                                 : tr.obstruction;
        v.b = check_b(cat, v.a, opt);

        const Rep lambda = regular_module(alg);
        v.c = {true, ""};
        v.c_with_hom = {true, ""};
        for (std::size_t m : cat.mp_members()) {
            for (std::size_t i = 1; i < d && v.c.value; ++i) {
                if (ext_dim(cat.members[m], lambda, i) != 0) {
                    v.c = {false, "Ext^" + std::to_string(i) + "(" + member_name(cat, m) + ", Lambda) != 0"};
                }
            }
            if (v.c_with_hom.value && hom(cat.members[m], lambda).dim() != 0) {
                v.c_with_hom = {false, "Hom(" + member_name(cat, m) + ", Lambda) != 0"};
            }
        }
        if (v.c.value && !v.c_with_hom.value) v.c.witness = "holds, but " + v.c_with_hom.witness;

        const auto& ls = cat.orbit_lengths;
        v.homogeneous.value = !ls.empty() && std::all_of(ls.begin(), ls.end(), [&](std::size_t l) { return l == ls[0]; });
        if (v.homogeneous.value) {
            v.l = ls[0];
        } else {
            v.homogeneous.witness = "orbit lengths";
            for (auto l : ls) v.homogeneous.witness += " " + std::to_string(l);
        }
    }

    v.d_complete.value = v.a.value && v.b.value && v.c.value;
    if (!v.d_complete.value) {
        v.d_complete.witness = !v.a.value ? "(A) fails" : !v.b.value ? "(B) fails" : "(C) fails";
    }
    if (v.d_complete.value) {
        v.d_rep_finite.value = is_isomorphic(v.catalogue->t, regular_module(alg), opt.decompose);
        if (!v.d_rep_finite.value) v.d_rep_finite.witness = "T is not isomorphic to Lambda";
    } else {
        v.d_rep_finite.witness = "not d-complete";
    }
    if (opt.cocomplete) {
        VerifyOptions sub = opt;
        sub.cocomplete = false;
        Verdict op = verify_conditions(alg->opposite(), d, sub);
        v.d_cocomplete.value = op.d_complete.value;
        if (!op.d_complete.value) v.d_cocomplete.witness = "opposite algebra: " + op.d_complete.witness;
    } else {
        v.d_cocomplete.witness = "not checked";
    }
    return v;
}

Classification classify_algebra(const AlgebraPtr& alg, std::size_t d, const VerifyOptions& opt) {
    Verdict v = verify_conditions(alg, d, opt);
    return Classification{v.homogeneous.value, v.l, v.d_rep_finite.value, v.d_cocomplete.value};
}

// -------------------------------------------------------------- E operator

Rep E_step(const Rep& s, const MCatalogue& cat, const DecomposeOptions& opt) {
    std::vector<Rep> parts;
    for (const auto& x : indecomposable_summands(s, opt)) {
        auto idx = cat.index_of(x, opt);
        if (idx && cat.in_p(*idx)) {
            parts.push_back(x);
        } else if (idx) {
            for (std::size_t c : cat.tau[*idx]) parts.push_back(cat.members[c]);
        } else {
            Rep t = tau_d(x, cat.d);
            if (!t.is_zero()) parts.push_back(t);
        }
    }
    return direct_sum_module(parts, cat.alg);
}

std::vector<Rep> E_iteration(const MCatalogue& cat, const DecomposeOptions& opt) {
    std::vector<Rep> out{dual_regular_module(cat.alg)};
    for (std::size_t step = 0; step <= cat.slices.size() + 1; ++step) {
        Rep next = E_step(out.back(), cat, opt);
        if (is_isomorphic(next, out.back(), opt)) return out;
        out.push_back(next);
    }
    throw CapExceeded("E iteration did not stabilise");
}

std::optional<std::pair<std::size_t, std::size_t>> slice_hom_violation(const MCatalogue& cat) {
    for (std::size_t x = 0; x < cat.members.size(); ++x) {
        for (std::size_t y = 0; y < cat.members.size(); ++y) {
            if (cat.slice[x] < cat.slice[y] && hom(cat.members[x], cat.members[y]).dim() != 0) {
                return std::make_pair(x, y);
            }
        }
    }
    return std::nullopt;
}

}  // namespace higherar
