#include "higherar/seqcat.hpp"

#include <algorithm>
#include <sstream>

namespace higherar {

namespace {

/// Flattened maps side by side; `rows` is the flattened size of Hom-ambient.
Mat flat_columns(const std::vector<RepMap>& maps, std::size_t rows, FieldSpec f) {
    Mat m(f, rows, maps.size());
    for (std::size_t k = 0; k < maps.size(); ++k) m.set_block(0, k, maps[k].flatten());
    return m;
}

std::size_t flat_size(const Rep& x, const Rep& y) {
    std::size_t n = 0;
    for (std::size_t v = 0; v < x.dims().size(); ++v) n += x.dim(v) * y.dim(v);
    return n;
}

/// ⊕ X_k -> Y with the given components.
RepMap out_of_sum(const Rep& sum, const Rep& y, const std::vector<RepMap>& maps) {
    std::vector<Mat> comps;
    for (std::size_t v = 0; v < y.dims().size(); ++v) {
        Mat m(y.field(), y.dim(v), 0);
        for (const auto& f : maps) m = Mat::hstack(m, f.comp(v));
        comps.push_back(std::move(m));
    }
    return RepMap(sum, y, std::move(comps));
}

/// Y -> ⊕ X_k with the given components.
RepMap into_sum(const Rep& y, const Rep& sum, const std::vector<RepMap>& maps) {
    std::vector<Mat> comps;
    for (std::size_t v = 0; v < y.dims().size(); ++v) {
        Mat m(y.field(), 0, y.dim(v));
        for (const auto& f : maps) m = Mat::vstack(m, f.comp(v));
        comps.push_back(std::move(m));
    }
    return RepMap(y, sum, std::move(comps));
}

std::string term_label(const Rep& x, const DecomposeOptions& opt) {
    if (x.is_zero()) return "0";
    std::vector<std::string> labels;
    for (const auto& s : indecomposable_summands(x, opt)) labels.push_back(s.dim_label());
    std::sort(labels.begin(), labels.end());
    std::string out;
    for (std::size_t k = 0; k < labels.size(); ++k) out += (k ? "+" : "") + labels[k];
    return out;
}

}  // namespace

// ----------------------------------------------------------------- context

CatContext::CatContext(AlgebraPtr alg, std::vector<Rep> generators, DecomposeOptions opt)
    : alg_(std::move(alg)), gens_(std::move(generators)), opt_(opt) {
    for (std::size_t a = 0; a < gens_.size(); ++a) {
        if (!same_algebra(gens_[a].algebra(), alg_)) throw AlgebraMismatch("CatContext: generator over another algebra");
        if (!is_indecomposable(gens_[a], opt_)) {
            throw DimensionMismatch("CatContext: generator " + gens_[a].dim_label() + " is not indecomposable");
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (gens_[a].dims() == gens_[b].dims() && is_isomorphic(gens_[a], gens_[b], opt_)) {
                throw DimensionMismatch("CatContext: generators " + std::to_string(b) + " and " + std::to_string(a) +
                                        " are isomorphic");
            }
        }
    }
}

const RadTop& CatContext::rad(std::size_t a, std::size_t b) const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto& slot = cache_->rad[{a, b}];
    if (!slot) slot = std::make_shared<const RadTop>(rad_top(gens_.at(a), gens_.at(b)));
    return *slot;
}

std::optional<std::size_t> CatContext::index_of(const Rep& x) const { return find_isomorphic(gens_, x, opt_); }

std::optional<std::vector<std::size_t>> CatContext::locate(const Rep& x) const {
    std::vector<std::size_t> out;
    if (x.is_zero()) return out;
    for (const auto& s : indecomposable_summands(x, opt_)) {
        auto i = index_of(s);
        if (!i) return std::nullopt;
        out.push_back(*i);
    }
    return out;
}

// ---------------------------------------------------------------- complexes

ComplexOfReps::ComplexOfReps(AlgebraPtr alg, int lo, std::vector<Rep> terms, std::vector<RepMap> diffs)
    : alg_(std::move(alg)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
    const std::size_t want = terms_.empty() ? 0 : terms_.size() - 1;
    if (diffs_.size() != want) throw DimensionMismatch("ComplexOfReps: expected one differential per adjacent pair");
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
        if (diffs_[k].dom().dims() != terms_[k + 1].dims() || diffs_[k].cod().dims() != terms_[k].dims()) {
            throw DimensionMismatch("ComplexOfReps: differential does not match its terms");
        }
    }
}

Rep ComplexOfReps::term(int j) const {
    if (j < lo_ || j > hi()) return Rep::zero(alg_);
    return terms_[static_cast<std::size_t>(j - lo_)];
}

RepMap ComplexOfReps::d(int j) const {
    if (j <= lo_ || j > hi()) return RepMap::zero(term(j), term(j - 1));
    return diffs_[static_cast<std::size_t>(j - lo_ - 1)];
}

bool ComplexOfReps::squares_to_zero() const {
    for (int j = lo_ + 2; j <= hi(); ++j) {
        if (!(d(j - 1) * d(j)).is_zero()) return false;
    }
    return true;
}

std::size_t ComplexOfReps::homology_dim(int j) const {
    std::size_t h = 0;
    for (auto v : homology_vector(j)) h += v;
    return h;
}

std::vector<std::size_t> ComplexOfReps::homology_vector(int j) const {
    const RepMap out = d(j), in = d(j + 1);
    std::vector<std::size_t> h;
    for (std::size_t v = 0; v < alg_->vertex_count(); ++v) {
        h.push_back(term(j).dim(v) - out.comp(v).rank() - in.comp(v).rank());
    }
    return h;
}

ComplexOfReps ComplexOfReps::restricted(int lo, int hi) const {
    std::vector<Rep> terms;
    std::vector<RepMap> diffs;
    for (int j = lo; j <= hi; ++j) {
        terms.push_back(term(j));
        if (j > lo) diffs.push_back(d(j));
    }
    return ComplexOfReps(alg_, lo, std::move(terms), std::move(diffs));
}

ComplexOfReps ComplexOfReps::shifted(int k) const { return ComplexOfReps(alg_, lo_ + k, terms_, diffs_); }

bool ComplexOfReps::is_exact() const {
    if (!squares_to_zero()) return false;
    for (int j = lo_; j <= hi(); ++j) {
        if (homology_dim(j) != 0) return false;
    }
    return true;
}

bool ComplexOfReps::is_radical() const {
    for (int j = lo_ + 1; j <= hi(); ++j) {
        if (!higherar::is_radical(d(j))) return false;
    }
    return true;
}

std::vector<long long> ComplexOfReps::euler_vector() const {
    std::vector<long long> e(alg_->vertex_count(), 0);
    for (int j = lo_; j <= hi(); ++j) {
        const long long sign = (j % 2 == 0) ? 1 : -1;
        for (std::size_t v = 0; v < e.size(); ++v) e[v] += sign * static_cast<long long>(term(j).dim(v));
    }
    return e;
}

std::string ComplexOfReps::describe(const DecomposeOptions& opt) const {
    std::string out;
    for (int j = hi(); j >= lo_; --j) {
        if (j != hi()) out += " -> ";
        out += term_label(term(j), opt);
    }
    return out;
}

ComplexMap::ComplexMap(ComplexOfReps dom, ComplexOfReps cod, int lo, std::vector<RepMap> comps)
    : dom_(std::move(dom)), cod_(std::move(cod)), lo_(lo), comps_(std::move(comps)) {
    for (std::size_t k = 0; k < comps_.size(); ++k) {
        const int j = lo_ + static_cast<int>(k);
        if (comps_[k].dom().dims() != dom_.term(j).dims() || comps_[k].cod().dims() != cod_.term(j).dims()) {
            throw DimensionMismatch("ComplexMap: component " + std::to_string(j) + " does not match the terms");
        }
    }
}

RepMap ComplexMap::comp(int j) const {
    if (j < lo_ || j > hi()) return RepMap::zero(dom_.term(j), cod_.term(j));
    return comps_[static_cast<std::size_t>(j - lo_)];
}

bool ComplexMap::commutes() const {
    const int a = std::min(dom_.lo(), cod_.lo());
    const int b = std::max(dom_.hi(), cod_.hi()) + 1;
    for (int j = a; j <= b; ++j) {
        if (!(comp(j - 1) * dom_.d(j) == cod_.d(j) * comp(j))) return false;
    }
    return true;
}

bool ComplexMap::is_iso() const {
    const int a = std::min(dom_.lo(), cod_.lo());
    const int b = std::max(dom_.hi(), cod_.hi());
    for (int j = a; j <= b; ++j) {
        if (!comp(j).is_iso()) return false;
    }
    return commutes();
}

ComplexOfReps cone(const ComplexMap& phi) {
    const ComplexOfReps& e = phi.dom();
    const ComplexOfReps& f = phi.cod();
    const AlgebraPtr& alg = f.algebra() ? f.algebra() : e.algebra();
    const int lo = std::min(e.lo() + 1, f.lo());
    const int hi = std::max(e.hi() + 1, f.hi());
    std::vector<DirectSum> sums;
    std::vector<Rep> terms;
    for (int j = lo; j <= hi; ++j) {
        sums.push_back(direct_sum({e.term(j - 1), f.term(j)}, alg));
        terms.push_back(sums.back().sum);
    }
    std::vector<RepMap> diffs;
    for (int j = lo + 1; j <= hi; ++j) {
        const DirectSum& src = sums[static_cast<std::size_t>(j - lo)];
        const DirectSum& dst = sums[static_cast<std::size_t>(j - lo - 1)];
        std::vector<std::vector<RepMap>> blocks{
            {-e.d(j - 1), RepMap::zero(f.term(j), e.term(j - 2))},
            {phi.comp(j - 1), f.d(j)},
        };
        diffs.push_back(block_map(src, dst, blocks));
    }
    return ComplexOfReps(alg, lo, std::move(terms), std::move(diffs));
}

std::optional<ComplexMap> find_complex_isomorphism(const ComplexOfReps& c, const ComplexOfReps& d,
                                                   const DecomposeOptions& opt) {
    const int lo = std::min(c.lo(), d.lo());
    const int hi = std::max(c.hi(), d.hi());
    for (int j = lo; j <= hi; ++j) {
        if (c.term(j).dims() != d.term(j).dims()) return std::nullopt;
    }
    for (int j = lo; j <= hi; ++j) {
        if (!is_isomorphic(c.term(j), d.term(j), opt)) return std::nullopt;
    }
    const FieldSpec fs = c.algebra()->field();

    // Unknowns: coordinates of f_j in a basis of Hom(C_j, D_j).
    std::vector<HomSpace> homs;
    std::vector<std::size_t> off{0};
    for (int j = lo; j <= hi; ++j) {
        homs.push_back(hom(c.term(j), d.term(j)));
        off.push_back(off.back() + homs.back().dim());
    }
    // Equations: f_{j-1} c_j - d_j f_j = 0 in the ambient space of C_j -> D_{j-1}.
    std::vector<std::size_t> eq_off{0};
    for (int j = lo + 1; j <= hi; ++j) eq_off.push_back(eq_off.back() + flat_size(c.term(j), d.term(j - 1)));
    Mat sys(fs, eq_off.back(), off.back());
    for (int j = lo + 1; j <= hi; ++j) {
        const std::size_t row = eq_off[static_cast<std::size_t>(j - lo - 1)];
        const auto& hj = homs[static_cast<std::size_t>(j - lo)];
        const auto& hp = homs[static_cast<std::size_t>(j - lo - 1)];
        for (std::size_t k = 0; k < hp.dim(); ++k) {
            sys.set_block(row, off[static_cast<std::size_t>(j - lo - 1)] + k, (hp.basis[k] * c.d(j)).flatten());
        }
        for (std::size_t k = 0; k < hj.dim(); ++k) {
            sys.set_block(row, off[static_cast<std::size_t>(j - lo)] + k, (-(d.d(j) * hj.basis[k])).flatten());
        }
    }
    Mat chain = kernel_basis(sys);
    if (chain.cols() == 0) return std::nullopt;
    std::mt19937_64 rng(opt.seed);
    for (std::size_t t = 0; t < std::max<std::size_t>(opt.retries, 1); ++t) {
        Mat coords = chain * Mat::random(fs, chain.cols(), 1, rng);
        std::vector<RepMap> comps;
        bool iso = true;
        for (int j = lo; j <= hi && iso; ++j) {
            const auto idx = static_cast<std::size_t>(j - lo);
            const auto& h = homs[idx];
            RepMap f = h.dim() == 0 ? RepMap::zero(c.term(j), d.term(j))
                                    : h.combination(coords.block(off[idx], 0, h.dim(), 1));
            iso = f.is_iso();
            comps.push_back(std::move(f));
        }
        if (iso) {
            ComplexMap m(c, d, lo, std::move(comps));
            if (m.is_iso()) return m;
        }
    }
    return std::nullopt;
}

// ------------------------------------------------------------ approximations

namespace {

Approximation build_right(const CatContext& ctx, const Rep& k, const std::vector<std::vector<RepMap>>& chosen) {
    std::vector<std::size_t> gens;
    std::vector<Rep> parts;
    std::vector<RepMap> maps;
    for (std::size_t a = 0; a < chosen.size(); ++a) {
        for (const auto& f : chosen[a]) {
            gens.push_back(a);
            parts.push_back(ctx.gen(a));
            maps.push_back(f);
        }
    }
    Rep c = direct_sum_module(parts, ctx.algebra());
    return Approximation{gens, c, out_of_sum(c, k, maps)};
}

Approximation build_left(const CatContext& ctx, const Rep& k, const std::vector<std::vector<RepMap>>& chosen) {
    std::vector<std::size_t> gens;
    std::vector<Rep> parts;
    std::vector<RepMap> maps;
    for (std::size_t a = 0; a < chosen.size(); ++a) {
        for (const auto& f : chosen[a]) {
            gens.push_back(a);
            parts.push_back(ctx.gen(a));
            maps.push_back(f);
        }
    }
    Rep c = direct_sum_module(parts, ctx.algebra());
    return Approximation{gens, c, into_sum(k, c, maps)};
}

/// Basis elements of `space` completing the span of `generated` (maps in the same space).
std::vector<RepMap> top_representatives(const std::vector<RepMap>& space, const std::vector<RepMap>& generated,
                                        std::size_t ambient, FieldSpec fs) {
    if (space.empty()) return {};
    Mat basis = flat_columns(space, ambient, fs);
    Mat coords(fs, space.size(), 0);
    if (!generated.empty()) coords = solve_matrix(basis, flat_columns(generated, ambient, fs));
    Mat comp = complement_basis(coords, space.size());
    std::vector<RepMap> out;
    for (std::size_t c = 0; c < comp.cols(); ++c) {
        for (std::size_t k = 0; k < space.size(); ++k) {
            if (!comp.at(k, c).is_zero()) out.push_back(space[k]);
        }
    }
    return out;
}

}  // namespace

Approximation minimal_right_approx(const CatContext& ctx, const Rep& k, ApproxMode mode) {
    if (!same_algebra(k.algebra(), ctx.algebra())) throw AlgebraMismatch("minimal_right_approx: module over another algebra");
    const std::size_t r = ctx.size();
    const FieldSpec fs = ctx.algebra()->field();
    std::vector<std::vector<RepMap>> space(r);
    for (std::size_t a = 0; a < r; ++a) {
        space[a] = mode == ApproxMode::full ? hom_basis(ctx.gen(a), k) : rad_top(ctx.gen(a), k).rad;
    }
    std::vector<std::vector<RepMap>> chosen(r);
    for (std::size_t a = 0; a < r; ++a) {
        if (space[a].empty()) continue;
        std::vector<RepMap> generated;
        for (std::size_t b = 0; b < r; ++b) {
            if (space[b].empty()) continue;
            for (const auto& rho : ctx.rad(a, b).rad) {
                for (const auto& phi : space[b]) generated.push_back(phi * rho);
            }
        }
        chosen[a] = top_representatives(space[a], generated, flat_size(ctx.gen(a), k), fs);
    }
    return build_right(ctx, k, chosen);
}

Approximation minimal_left_approx(const CatContext& ctx, const Rep& k, ApproxMode mode) {
    if (!same_algebra(k.algebra(), ctx.algebra())) throw AlgebraMismatch("minimal_left_approx: module over another algebra");
    const std::size_t r = ctx.size();
    const FieldSpec fs = ctx.algebra()->field();
    std::vector<std::vector<RepMap>> space(r);
    for (std::size_t a = 0; a < r; ++a) {
        space[a] = mode == ApproxMode::full ? hom_basis(k, ctx.gen(a)) : rad_top(k, ctx.gen(a)).rad;
    }
    std::vector<std::vector<RepMap>> chosen(r);
    for (std::size_t a = 0; a < r; ++a) {
        if (space[a].empty()) continue;
        std::vector<RepMap> generated;
        for (std::size_t b = 0; b < r; ++b) {
            if (space[b].empty()) continue;
            for (const auto& rho : ctx.rad(b, a).rad) {
                for (const auto& phi : space[b]) generated.push_back(rho * phi);
            }
        }
        chosen[a] = top_representatives(space[a], generated, flat_size(k, ctx.gen(a)), fs);
    }
    return build_left(ctx, k, chosen);
}

// ---------------------------------------------------------------- sequences

ComplexOfReps sink_sequence(const CatContext& ctx, const Rep& y, std::size_t d) {
    if (d == 0) throw DimensionMismatch("sink_sequence: d must be at least 1");
    Approximation first = minimal_right_approx(ctx, y, ApproxMode::radical);
    if (!is_epi(first.map)) {
        throw SequenceLeavesCategory("radical approximation of " + y.dim_label() + " is not surjective");
    }
    std::vector<Rep> terms{y, first.module};
    std::vector<RepMap> diffs{first.map};
    auto [k, inc] = kernel(first.map);
    for (std::size_t j = 2; j <= d; ++j) {
        Approximation a = minimal_right_approx(ctx, k, ApproxMode::full);
        if (!is_epi(a.map)) {
            throw SequenceLeavesCategory("kernel " + k.dim_label() + " in degree " + std::to_string(j - 1) +
                                         " is not a quotient of its approximation");
        }
        terms.push_back(a.module);
        diffs.push_back(inc * a.map);
        std::tie(k, inc) = kernel(a.map);
    }
    if (!k.is_zero() && !ctx.locate(k)) {
        throw SequenceLeavesCategory("kernel " + k.dim_label() + " in degree " + std::to_string(d + 1) +
                                     " does not lie in the category");
    }
    terms.push_back(k);
    diffs.push_back(inc);
    return ComplexOfReps(ctx.algebra(), 0, std::move(terms), std::move(diffs));
}

ComplexOfReps source_sequence(const CatContext& ctx, const Rep& x, std::size_t d) {
    if (d == 0) throw DimensionMismatch("source_sequence: d must be at least 1");
    std::vector<Rep> terms{x};  // from degree d+1 downwards
    std::vector<RepMap> maps;
    Approximation a = minimal_left_approx(ctx, x, ApproxMode::radical);
    RepMap g = a.map;
    while (!g.cod().is_zero()) {
        if (terms.size() > d + 1) {
            throw SequenceLeavesCategory("source sequence of " + x.dim_label() + " needs more than " +
                                         std::to_string(d + 2) + " terms");
        }
        terms.push_back(g.cod());
        maps.push_back(g);
        auto [q, pi] = cokernel(g);
        if (q.is_zero()) break;
        Approximation next = minimal_left_approx(ctx, q, ApproxMode::full);
        g = next.map * pi;
    }
    std::reverse(terms.begin(), terms.end());
    std::reverse(maps.begin(), maps.end());
    const int lo = static_cast<int>(d + 1) - static_cast<int>(terms.size() - 1);
    ComplexOfReps seq(ctx.algebra(), lo, std::move(terms), std::move(maps));
    for (std::size_t z = 0; z < ctx.size(); ++z) {
        FunctorReport rep = check_functor_exactness(seq, ctx.gen(z), FunctorSide::contravariant, seq.hi());
        if (!rep.exact) {
            throw SequenceLeavesCategory("G_Z not exact for Z = " + ctx.gen(z).dim_label() + ": " + rep.describe());
        }
    }
    return seq;
}

std::string FunctorReport::describe() const {
    std::ostringstream os;
    os << (exact ? "exact" : "not exact") << "; dims";
    for (auto v : dims) os << ' ' << v;
    if (!failing_degrees.empty()) {
        os << "; failing at degree";
        for (auto j : failing_degrees) os << ' ' << j;
    }
    return os.str();
}

FunctorReport check_functor_exactness(const ComplexOfReps& c, const Rep& x, FunctorSide side,
                                      std::optional<int> special_degree) {
    const bool cov = side == FunctorSide::covariant;
    const int lo = c.lo(), hi = c.hi();
    const int special = special_degree.value_or(cov ? lo : hi);
    const FieldSpec fs = x.field();
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);

    // Basis maps of each V_j, as maps and as flattened columns.
    std::vector<std::vector<RepMap>> basis(n);
    std::vector<Mat> flat(n);
    for (int j = lo; j <= hi; ++j) {
        const auto idx = static_cast<std::size_t>(j - lo);
        const Rep& a = cov ? x : c.term(j);
        const Rep& b = cov ? c.term(j) : x;
        basis[idx] = j == special ? rad_top(a, b).rad : hom_basis(a, b);
        flat[idx] = flat_columns(basis[idx], flat_size(a, b), fs);
    }

    FunctorReport rep;
    for (const auto& b : basis) rep.dims.push_back(b.size());
    rep.ranks.assign(n, 0);
    // ranks[idx]: rank of the map leaving V_j (towards j-1 covariantly, j+1 contravariantly).
    std::vector<bool> lands(n, true);
    for (int j = lo; j <= hi; ++j) {
        const auto idx = static_cast<std::size_t>(j - lo);
        const int tj = cov ? j - 1 : j + 1;
        if (tj < lo || tj > hi || basis[idx].empty()) continue;
        const auto tidx = static_cast<std::size_t>(tj - lo);
        std::vector<RepMap> images;
        for (const auto& f : basis[idx]) images.push_back(cov ? c.d(j) * f : f * c.d(j + 1));
        const Rep& a = cov ? x : c.term(tj);
        const Rep& b = cov ? c.term(tj) : x;
        Mat cols = flat_columns(images, flat_size(a, b), fs);
        auto coords = try_solve_matrix(flat[tidx], cols);
        if (!coords) {
            lands[idx] = false;
            rep.ranks[idx] = cols.rank();
        } else {
            rep.ranks[idx] = coords->rank();
        }
    }
    for (int j = lo; j <= hi; ++j) {
        const auto idx = static_cast<std::size_t>(j - lo);
        const int from = cov ? j + 1 : j - 1;
        const std::size_t incoming =
            (from < lo || from > hi) ? 0 : rep.ranks[static_cast<std::size_t>(from - lo)];
        const bool ok = lands[idx] && rep.dims[idx] == rep.ranks[idx] + incoming;
        if (!ok) {
            rep.exact = false;
            rep.failing_degrees.push_back(j);
        }
    }
    return rep;
}

bool no_zero_rows_or_columns(const ComplexOfReps& seq, const DecomposeOptions& opt) {
    std::vector<Decomposition> dec;
    for (int j = seq.lo(); j <= seq.hi(); ++j) dec.push_back(decompose(seq.term(j), opt));
    for (int j = seq.lo() + 1; j <= seq.hi(); ++j) {
        const RepMap dj = seq.d(j);
        const auto& src = dec[static_cast<std::size_t>(j - seq.lo())];
        const auto& dst = dec[static_cast<std::size_t>(j - seq.lo() - 1)];
        for (const auto& col : src.parts) {
            if ((dj * col.inclusion).is_zero()) return false;
        }
        for (const auto& row : dst.parts) {
            if ((row.projection * dj).is_zero()) return false;
        }
    }
    return true;
}

AlmostSplitReport verify_almost_split(const CatContext& ctx, const ComplexOfReps& seq, std::size_t d) {
    AlmostSplitReport r;
    auto fail = [&r](const std::string& what) {
        if (r.first_failure.empty()) r.first_failure = what;
    };
    if (seq.lo() != 0 || seq.hi() != static_cast<int>(d + 1)) fail("sequence has the wrong length");
    r.exact = seq.is_exact();
    if (!r.exact) fail("not exact");
    r.radical = seq.is_radical();
    if (!r.radical) fail("a differential is not radical");
    r.f_exact = true;
    r.g_exact = true;
    for (std::size_t z = 0; z < ctx.size(); ++z) {
        FunctorReport f = check_functor_exactness(seq, ctx.gen(z), FunctorSide::covariant, 0);
        if (!f.exact) {
            r.f_exact = false;
            fail("F_X not exact for X = " + ctx.gen(z).dim_label() + ": " + f.describe());
        }
        FunctorReport g = check_functor_exactness(seq, ctx.gen(z), FunctorSide::contravariant, static_cast<int>(d + 1));
        if (!g.exact) {
            r.g_exact = false;
            fail("G_X not exact for X = " + ctx.gen(z).dim_label() + ": " + g.describe());
        }
    }
    const Rep left = seq.term(static_cast<int>(d + 1));
    const Rep tau = tau_d(seq.term(0), d);
    r.left_end_is_tau = !tau.is_zero() && is_isomorphic(left, tau, ctx.options());
    if (!r.left_end_is_tau) fail("left end " + left.dim_label() + " is not tau_d of the right end");
    r.no_zero_rows_or_columns = no_zero_rows_or_columns(seq, ctx.options());
    if (!r.no_zero_rows_or_columns) fail("a differential has a zero row or column");
    return r;
}

ComplexOfReps d_almost_split(const CatContext& ctx, const Rep& y, std::size_t d) {
    if (tau_d(y, d).is_zero()) throw NotAlmostSplit("tau_d of " + y.dim_label() + " vanishes");
    ComplexOfReps seq;
    try {
        seq = sink_sequence(ctx, y, d);
    } catch (const SequenceLeavesCategory& e) {
        throw NotAlmostSplit(e.what());
    }
    AlmostSplitReport r = verify_almost_split(ctx, seq, d);
    if (!r.ok()) throw NotAlmostSplit(r.first_failure);
    return seq;
}

ComplexMap induced_map_between_sequences(const RepMap& f0, const ComplexOfReps& c, const ComplexOfReps& d) {
    const FieldSpec fs = f0.dom().field();
    const int hi = std::max(c.hi(), d.hi());
    std::vector<RepMap> comps{f0};
    for (int j = 1; j <= hi; ++j) {
        const RepMap target = comps.back() * c.d(j);
        HomSpace h = hom(c.term(j), d.term(j));
        std::vector<RepMap> images;
        for (const auto& b : h.basis) images.push_back(d.d(j) * b);
        Mat a = flat_columns(images, flat_size(c.term(j), d.term(j - 1)), fs);
        auto sol = try_solve_matrix(a, target.flatten());
        if (!sol) throw LiftFailed("no lift in degree " + std::to_string(j));
        comps.push_back(h.dim() == 0 ? RepMap::zero(c.term(j), d.term(j)) : h.combination(*sol));
    }
    ComplexMap m(c, d, 0, std::move(comps));
    if (!m.commutes()) throw LiftFailed("lifted map does not commute");
    return m;
}

ComplexMap induced_map_between_sequences(const RepMap& f0, const CatContext& ctx, std::size_t d) {
    return induced_map_between_sequences(f0, d_almost_split(ctx, f0.dom(), d), d_almost_split(ctx, f0.cod(), d));
}

SliceSplit slice_split(const ComplexOfReps& seq, const std::function<int(const Rep&)>& slice_of,
                       const DecomposeOptions& opt) {
    const AlgebraPtr& alg = seq.algebra();
    const int lo = seq.lo(), hi = seq.hi();
    const Rep start = seq.term(hi);
    const int i = slice_of(start);
    if (i <= 0) throw SliceMixing("sequence does not start in a positive slice");

    struct Parts {
        Rep a, b;
        RepMap inc_a, inc_b, pro_a, pro_b;
    };
    std::vector<Parts> parts;
    for (int j = lo; j <= hi; ++j) {
        const Rep m = seq.term(j);
        std::vector<Rep> am, bm;
        std::vector<RepMap> ia, ib, pa, pb;
        for (const auto& s : decompose(m, opt).parts) {
            const int sl = slice_of(s.module);
            if (sl == i) {
                am.push_back(s.module);
                ia.push_back(s.inclusion);
                pa.push_back(s.projection);
            } else if (sl == i - 1) {
                bm.push_back(s.module);
                ib.push_back(s.inclusion);
                pb.push_back(s.projection);
            } else {
                throw SliceMixing("summand " + s.module.dim_label() + " in degree " + std::to_string(j) +
                                  " lies in slice " + std::to_string(sl));
            }
        }
        Rep a = direct_sum_module(am, alg), b = direct_sum_module(bm, alg);
        parts.push_back({a, b, out_of_sum(a, m, ia), out_of_sum(b, m, ib), into_sum(m, a, pa), into_sum(m, b, pb)});
    }
    auto at = [&](int j) -> const Parts& { return parts[static_cast<std::size_t>(j - lo)]; };

    // E_{j-1} = A_j, F_j = B_j.
    std::vector<Rep> e_terms, f_terms;
    std::vector<RepMap> e_diffs, f_diffs;
    for (int j = lo; j <= hi; ++j) {
        e_terms.push_back(at(j).a);
        f_terms.push_back(at(j).b);
    }
    for (int j = lo + 1; j <= hi; ++j) {
        const RepMap dj = seq.d(j);
        if (!(at(j - 1).pro_a * dj * at(j).inc_b).is_zero()) {
            throw SliceMixing("nonzero map from slice " + std::to_string(i - 1) + " to slice " + std::to_string(i) +
                              " in degree " + std::to_string(j));
        }
        e_diffs.push_back(-(at(j - 1).pro_a * dj * at(j).inc_a));
        f_diffs.push_back(at(j - 1).pro_b * dj * at(j).inc_b);
    }
    ComplexOfReps e(alg, lo - 1, e_terms, e_diffs);
    ComplexOfReps f(alg, lo, f_terms, f_diffs);
    std::vector<RepMap> phi_comps;
    for (int k = lo - 1; k <= hi; ++k) {
        phi_comps.push_back(k + 1 <= hi && k >= lo ? at(k).pro_b * seq.d(k + 1) * at(k + 1).inc_a
                                                   : RepMap::zero(e.term(k), f.term(k)));
    }
    ComplexMap map(e, f, lo - 1, std::move(phi_comps));
    if (!map.commutes()) throw SliceMixing("slice components do not form a chain map");

    ComplexOfReps c = cone(map);
    std::vector<RepMap> iso;
    for (int j = c.lo(); j <= c.hi(); ++j) {
        if (j < lo || j > hi) {
            iso.push_back(RepMap::zero(seq.term(j), c.term(j)));
            continue;
        }
        const DirectSum ds = direct_sum({at(j).a, at(j).b}, alg);
        iso.push_back(ds.inclusions[0] * at(j).pro_a + ds.inclusions[1] * at(j).pro_b);
    }
    ComplexMap check(seq, c, c.lo(), std::move(iso));
    if (!check.is_iso()) throw SliceMixing("cone of the slice split is not isomorphic to the sequence");
    return SliceSplit{e, f, map};
}

}  // namespace higherar
