#include "higherar/repmod.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace higherar {

namespace {

void require_same_algebra(const Rep& x, const Rep& y, const char* where) {
    if (!same_algebra(x.algebra(), y.algebra())) {
        throw AlgebraMismatch(std::string(where) + ": modules over different algebras");
    }
}

std::vector<std::size_t> hom_offsets(const Rep& x, const Rep& y) {
    std::vector<std::size_t> off(x.dims().size() + 1, 0);
    for (std::size_t v = 0; v < x.dims().size(); ++v) off[v + 1] = off[v] + x.dim(v) * y.dim(v);
    return off;
}

}  // namespace

// ------------------------------------------------------------------- Rep

Rep::Rep(AlgebraPtr alg, std::vector<std::size_t> dims, std::vector<Mat> arrows) {
    const Quiver& q = alg->quiver();
    if (dims.size() != q.vertex_count()) throw DimensionMismatch("dimension vector has the wrong length");
    if (arrows.size() != q.arrow_count()) throw DimensionMismatch("wrong number of arrow matrices");
    for (std::size_t a = 0; a < arrows.size(); ++a) {
        const Arrow& ar = q.arrow(a);
        if (arrows[a].rows() != dims[ar.target] || arrows[a].cols() != dims[ar.source]) {
            throw DimensionMismatch("arrow '" + ar.name + "' has a matrix of the wrong shape");
        }
        if (!(arrows[a].field() == alg->field())) throw FieldMismatch("arrow matrix over a different field");
    }
    auto data = std::make_shared<Data>();
    data->alg = std::move(alg);
    data->dims = std::move(dims);
    data->arrows = std::move(arrows);
    data->total = std::accumulate(data->dims.begin(), data->dims.end(), std::size_t{0});
    d_ = data;
    for (const auto& rel : d_->alg->relations()) {
        const Path& p0 = rel.terms.front().path;
        Mat sum(field(), dim(p0.target), dim(p0.source));
        for (const auto& t : rel.terms) sum += path_action(t.path).scaled(t.coef);
        if (!sum.is_zero()) throw InconsistentRelation("representation does not satisfy a relation");
    }
}

Rep Rep::zero(AlgebraPtr alg) {
    const Quiver& q = alg->quiver();
    std::vector<Mat> arrows;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) arrows.emplace_back(alg->field(), 0, 0);
    return Rep(alg, std::vector<std::size_t>(q.vertex_count(), 0), std::move(arrows));
}

Mat Rep::path_action(const Path& p) const {
    Mat m = Mat::identity(field(), dim(p.source));
    for (auto a : p.arrows) m = d_->arrows[a] * m;
    return m;
}

Mat Rep::basis_action(std::size_t b) const { return path_action(d_->alg->basis(b)); }

Mat Rep::elem_action(const Elem& e, std::size_t s, std::size_t t) const {
    Mat m(field(), dim(t), dim(s));
    for (const auto& [b, c] : e.terms) {
        const Path& p = d_->alg->basis(b);
        if (p.source != s || p.target != t) continue;
        m += basis_action(b).scaled(c);
    }
    return m;
}

std::string Rep::dim_label() const {
    const auto& dims = d_->dims;
    const bool wide = std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d > 9; });
    std::ostringstream os;
    auto put = [&](std::size_t d, bool first) {
        if (wide && !first) os << ",";
        os << d;
    };
    const auto& f = d_->alg->factors();
    if (!f) {
        for (std::size_t v = 0; v < dims.size(); ++v) put(dims[v], v == 0);
        return os.str();
    }
    const std::size_t na = f->a->vertex_count();
    const std::size_t nb = f->b->vertex_count();
    bool first = true;
    for (std::size_t j = nb; j-- > 0;) {
        if (wide && !first) os << "/";
        bool row_first = true;
        for (std::size_t i = 0; i < na; ++i) {
            put(dims[i * nb + j], row_first);
            row_first = false;
        }
        first = false;
    }
    return os.str();
}

bool same_shape(const Rep& x, const Rep& y) {
    return same_algebra(x.algebra(), y.algebra()) && x.dims() == y.dims();
}

// ---------------------------------------------------------------- RepMap

RepMap::RepMap(Rep dom, Rep cod, std::vector<Mat> comps)
    : dom_(std::move(dom)), cod_(std::move(cod)), comps_(std::move(comps)) {
    require_same_algebra(dom_, cod_, "RepMap");
    if (comps_.size() != dom_.dims().size()) throw DimensionMismatch("RepMap: wrong number of components");
    for (std::size_t v = 0; v < comps_.size(); ++v) {
        if (comps_[v].rows() != cod_.dim(v) || comps_[v].cols() != dom_.dim(v)) {
            throw DimensionMismatch("RepMap: component of the wrong shape");
        }
    }
}

RepMap RepMap::zero(const Rep& x, const Rep& y) {
    std::vector<Mat> c;
    for (std::size_t v = 0; v < x.dims().size(); ++v) c.emplace_back(x.field(), y.dim(v), x.dim(v));
    return RepMap(x, y, std::move(c));
}

RepMap RepMap::identity(const Rep& x) {
    std::vector<Mat> c;
    for (std::size_t v = 0; v < x.dims().size(); ++v) c.push_back(Mat::identity(x.field(), x.dim(v)));
    return RepMap(x, x, std::move(c));
}

bool RepMap::is_homomorphism() const {
    const Quiver& q = dom_.algebra()->quiver();
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        if (comps_[ar.target] * dom_.arrow(a) != cod_.arrow(a) * comps_[ar.source]) return false;
    }
    return true;
}

bool RepMap::is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const Mat& m) { return m.is_zero(); });
}

bool RepMap::is_iso() const {
    if (dom_.dims() != cod_.dims()) return false;
    return std::all_of(comps_.begin(), comps_.end(), [](const Mat& m) { return m.is_invertible(); });
}

std::optional<RepMap> RepMap::inverse() const {
    if (dom_.dims() != cod_.dims()) return std::nullopt;
    std::vector<Mat> inv;
    for (const auto& m : comps_) {
        auto i = m.inverse();
        if (!i) return std::nullopt;
        inv.push_back(std::move(*i));
    }
    return RepMap(cod_, dom_, std::move(inv));
}

bool RepMap::operator==(const RepMap& o) const {
    return dom_.dims() == o.dom_.dims() && cod_.dims() == o.cod_.dims() && comps_ == o.comps_;
}

RepMap RepMap::operator+(const RepMap& o) const {
    std::vector<Mat> c;
    for (std::size_t v = 0; v < comps_.size(); ++v) c.push_back(comps_[v] + o.comps_.at(v));
    return RepMap(dom_, cod_, std::move(c));
}

RepMap RepMap::operator-(const RepMap& o) const { return *this + (-o); }

RepMap RepMap::operator-() const {
    std::vector<Mat> c;
    for (const auto& m : comps_) c.push_back(-m);
    return RepMap(dom_, cod_, std::move(c));
}

RepMap RepMap::scaled(const Scalar& s) const {
    std::vector<Mat> c;
    for (const auto& m : comps_) c.push_back(m.scaled(s));
    return RepMap(dom_, cod_, std::move(c));
}

RepMap operator*(const RepMap& g, const RepMap& f) {
    if (g.dom().dims() != f.cod().dims()) throw DimensionMismatch("composition of incompatible maps");
    std::vector<Mat> c;
    for (std::size_t v = 0; v < f.comps().size(); ++v) c.push_back(g.comp(v) * f.comp(v));
    return RepMap(f.dom(), g.cod(), std::move(c));
}

Mat RepMap::flatten() const {
    std::size_t n = 0;
    for (const auto& m : comps_) n += m.rows() * m.cols();
    Mat out(dom_.field(), n, 1);
    std::size_t k = 0;
    for (const auto& m : comps_) {
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) out.accumulate(k++, 0, m, i, j);
        }
    }
    return out;
}

RepMap RepMap::unflatten(const Rep& x, const Rep& y, const Mat& column, std::size_t col) {
    std::vector<Mat> c;
    std::size_t k = 0;
    for (std::size_t v = 0; v < x.dims().size(); ++v) {
        Mat m(x.field(), y.dim(v), x.dim(v));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            for (std::size_t j = 0; j < m.cols(); ++j) m.accumulate(i, j, column, k++, col);
        }
        c.push_back(std::move(m));
    }
    return RepMap(x, y, std::move(c));
}

// ------------------------------------------------------------- Hom and rad

RepMap HomSpace::combination(const Mat& coeffs) const {
    if (basis.empty()) throw DimensionMismatch("combination in a zero Hom space");
    return RepMap::unflatten(basis.front().dom(), basis.front().cod(), matrix * coeffs);
}

HomSpace hom(const Rep& x, const Rep& y) {
    require_same_algebra(x, y, "hom");
    const Quiver& q = x.algebra()->quiver();
    const auto off = hom_offsets(x, y);
    const std::size_t n = off.back();
    std::size_t eqs = 0;
    for (const auto& a : q.arrows()) eqs += y.dim(a.target) * x.dim(a.source);

    // f_t X_a - Y_a f_s = 0 for every arrow a: s -> t.
    Mat sys(x.field(), eqs, n);
    std::size_t row0 = 0;
    for (std::size_t ai = 0; ai < q.arrow_count(); ++ai) {
        const Arrow& a = q.arrow(ai);
        const Mat& xa = x.arrow(ai);
        const Mat& ya = y.arrow(ai);
        const std::size_t dxs = x.dim(a.source), dxt = x.dim(a.target);
        const std::size_t dys = y.dim(a.source), dyt = y.dim(a.target);
        for (std::size_t r = 0; r < dyt; ++r) {
            for (std::size_t c = 0; c < dxs; ++c) {
                const std::size_t row = row0 + r * dxs + c;
                for (std::size_t k = 0; k < dxt; ++k) sys.accumulate(row, off[a.target] + r * dxt + k, xa, k, c);
                for (std::size_t k = 0; k < dys; ++k) {
                    sys.accumulate(row, off[a.source] + k * dxs + c, ya, r, k, true);
                }
            }
        }
        row0 += dyt * dxs;
    }
    HomSpace h;
    h.matrix = kernel_basis(sys);
    for (std::size_t k = 0; k < h.matrix.cols(); ++k) h.basis.push_back(RepMap::unflatten(x, y, h.matrix, k));
    return h;
}

std::vector<RepMap> hom_basis(const Rep& x, const Rep& y) { return hom(x, y).basis; }

RadTop rad_top(const Rep& x, const Rep& y) {
    RadTop out;
    out.hom = hom(x, y);
    const std::size_t h = out.hom.dim();
    if (h == 0) {
        out.rad_coeffs = Mat(x.field(), 0, 0);
        return out;
    }
    HomSpace back = hom(y, x);
    const std::uint32_t p = x.field().characteristic();
    const std::size_t bound = std::max({x.total_dim(), y.total_dim(), h, back.dim()});
    if (p != 0 && p <= bound) {
        throw CharTooSmall("characteristic " + std::to_string(p) + " does not exceed " + std::to_string(bound));
    }
    // pairing[k][l] = tr(g_k ∘ f_l) = sum over v, i, j of g_v(i, j) f_v(j, i).
    const auto off = hom_offsets(x, y);
    Mat gt(x.field(), back.dim(), off.back());
    for (std::size_t k = 0; k < back.dim(); ++k) {
        for (std::size_t v = 0; v < x.dims().size(); ++v) {
            const std::size_t dx = x.dim(v), dy = y.dim(v);
            for (std::size_t i = 0; i < dx; ++i) {
                for (std::size_t j = 0; j < dy; ++j) {
                    gt.accumulate(k, off[v] + j * dx + i, back.matrix, off[v] + i * dy + j, k);
                }
            }
        }
    }
    Mat pairing = gt * out.hom.matrix;
    out.rad_coeffs = kernel_basis(pairing);
    for (std::size_t c = 0; c < out.rad_coeffs.cols(); ++c) {
        out.rad.push_back(out.hom.combination(out.rad_coeffs.column(c)));
    }
    out.top_dim = h - out.rad.size();
    return out;
}

bool is_radical(const RepMap& f) {
    RadTop rt = rad_top(f.dom(), f.cod());
    if (rt.rad.empty()) return f.is_zero();
    return try_solve_matrix(rt.hom.matrix * rt.rad_coeffs, f.flatten()).has_value();
}

// --------------------------------------------------------- standard modules

Rep projective(const AlgebraPtr& alg, std::size_t i) {
    const std::size_t n = alg->vertex_count();
    std::vector<std::size_t> pos(alg->dim(), 0);
    std::vector<std::size_t> dims(n);
    for (std::size_t v = 0; v < n; ++v) {
        const auto& b = alg->basis_between(i, v);
        dims[v] = b.size();
        for (std::size_t k = 0; k < b.size(); ++k) pos[b[k]] = k;
    }
    const Quiver& q = alg->quiver();
    std::vector<Mat> arrows;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        Mat m(alg->field(), dims[ar.target], dims[ar.source]);
        const auto& src = alg->basis_between(i, ar.source);
        for (std::size_t c = 0; c < src.size(); ++c) {
            Elem e = alg->mul_basis(src[c], alg->arrow_basis_index(a));
            for (const auto& [b, coef] : e.terms) m.set(pos[b], c, coef);
        }
        arrows.push_back(std::move(m));
    }
    return Rep(alg, std::move(dims), std::move(arrows));
}

Rep injective(const AlgebraPtr& alg, std::size_t v) { return dual(projective(alg->opposite(), v)); }

Rep simple(const AlgebraPtr& alg, std::size_t v) {
    std::vector<std::size_t> dims(alg->vertex_count(), 0);
    dims.at(v) = 1;
    std::vector<Mat> arrows;
    for (const auto& a : alg->quiver().arrows()) arrows.emplace_back(alg->field(), dims[a.target], dims[a.source]);
    return Rep(alg, std::move(dims), std::move(arrows));
}

Rep standard_module(const AlgebraPtr& alg, StandardKind kind, std::size_t v) {
    switch (kind) {
        case StandardKind::projective: return projective(alg, v);
        case StandardKind::injective: return injective(alg, v);
        case StandardKind::simple: return simple(alg, v);
    }
    return simple(alg, v);
}

Rep regular_module(const AlgebraPtr& alg) {
    std::vector<Rep> parts;
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) parts.push_back(projective(alg, v));
    return direct_sum_module(parts, alg);
}

Rep dual_regular_module(const AlgebraPtr& alg) {
    std::vector<Rep> parts;
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) parts.push_back(injective(alg, v));
    return direct_sum_module(parts, alg);
}

Rep dual(const Rep& x) {
    std::vector<Mat> arrows;
    for (const auto& m : x.arrows()) arrows.push_back(m.transpose());
    return Rep(x.algebra()->opposite(), x.dims(), std::move(arrows));
}

RepMap dual(const RepMap& f) {
    std::vector<Mat> c;
    for (const auto& m : f.comps()) c.push_back(m.transpose());
    return RepMap(dual(f.cod()), dual(f.dom()), std::move(c));
}

std::vector<std::size_t> top_vector(const Rep& x) {
    const Quiver& q = x.algebra()->quiver();
    std::vector<std::size_t> top(x.dims().size());
    for (std::size_t v = 0; v < top.size(); ++v) {
        Mat incoming(x.field(), x.dim(v), 0);
        for (std::size_t a = 0; a < q.arrow_count(); ++a) {
            if (q.arrow(a).target == v) incoming = Mat::hstack(incoming, x.arrow(a));
        }
        top[v] = x.dim(v) - incoming.rank();
    }
    return top;
}

bool is_projective(const Rep& x) {
    const auto& alg = x.algebra();
    const auto top = top_vector(x);
    std::vector<std::size_t> cover(x.dims().size(), 0);
    for (std::size_t i = 0; i < top.size(); ++i) {
        if (top[i] == 0) continue;
        for (std::size_t v = 0; v < cover.size(); ++v) cover[v] += top[i] * alg->basis_between(i, v).size();
    }
    return cover == x.dims();
}

bool is_injective(const Rep& x) { return is_projective(dual(x)); }

Rep nakayama(const Rep& p) {
    if (!is_projective(p)) throw NotProjective("nakayama: module is not projective");
    const auto top = top_vector(p);
    std::vector<Rep> parts;
    for (std::size_t i = 0; i < top.size(); ++i) {
        for (std::size_t k = 0; k < top[i]; ++k) parts.push_back(injective(p.algebra(), i));
    }
    return direct_sum_module(parts, p.algebra());
}

// ------------------------------------------------------------ direct sums

DirectSum direct_sum(const std::vector<Rep>& parts, const AlgebraPtr& alg) {
    const std::size_t n = alg->vertex_count();
    const Quiver& q = alg->quiver();
    const FieldSpec f = alg->field();
    std::vector<std::size_t> dims(n, 0);
    for (const auto& p : parts) {
        if (!same_algebra(p.algebra(), alg)) throw AlgebraMismatch("direct_sum: summand over another algebra");
        for (std::size_t v = 0; v < n; ++v) dims[v] += p.dim(v);
    }
    std::vector<Mat> arrows;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        Mat m(f, dims[ar.target], dims[ar.source]);
        std::size_t r = 0, c = 0;
        for (const auto& p : parts) {
            m.set_block(r, c, p.arrow(a));
            r += p.dim(ar.target);
            c += p.dim(ar.source);
        }
        arrows.push_back(std::move(m));
    }
    DirectSum ds{Rep(alg, dims, std::move(arrows)), {}, {}};
    std::vector<std::size_t> off(n, 0);
    for (const auto& p : parts) {
        std::vector<Mat> inc, pro;
        for (std::size_t v = 0; v < n; ++v) {
            Mat i(f, dims[v], p.dim(v));
            i.set_block(off[v], 0, Mat::identity(f, p.dim(v)));
            pro.push_back(i.transpose());
            inc.push_back(std::move(i));
            off[v] += p.dim(v);
        }
        ds.inclusions.emplace_back(p, ds.sum, std::move(inc));
        ds.projections.emplace_back(ds.sum, p, std::move(pro));
    }
    return ds;
}

Rep direct_sum_module(const std::vector<Rep>& parts, const AlgebraPtr& alg) { return direct_sum(parts, alg).sum; }

RepMap block_map(const DirectSum& dom, const DirectSum& cod, const std::vector<std::vector<RepMap>>& blocks) {
    RepMap total = RepMap::zero(dom.sum, cod.sum);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::size_t j = 0; j < blocks[i].size(); ++j) {
            if (blocks[i][j].is_zero()) continue;
            total = total + cod.inclusions.at(i) * blocks[i][j] * dom.projections.at(j);
        }
    }
    return total;
}

// ----------------------------------------------------- kernels and cokernels

std::pair<Rep, RepMap> subrep(const Rep& x, const std::vector<Mat>& basis) {
    const Quiver& q = x.algebra()->quiver();
    std::vector<std::size_t> dims;
    for (const auto& b : basis) dims.push_back(b.cols());
    std::vector<Mat> arrows;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        auto sol = try_solve_matrix(basis[ar.target], x.arrow(a) * basis[ar.source]);
        if (!sol) throw DimensionMismatch("subrep: subspaces are not closed under the arrows");
        arrows.push_back(std::move(*sol));
    }
    Rep sub(x.algebra(), std::move(dims), std::move(arrows));
    RepMap inc(sub, x, basis);
    return {sub, inc};
}

std::pair<Rep, RepMap> kernel(const RepMap& f) {
    std::vector<Mat> basis;
    for (const auto& m : f.comps()) basis.push_back(kernel_basis(m));
    return subrep(f.dom(), basis);
}

std::pair<Rep, RepMap> image(const RepMap& f) {
    std::vector<Mat> basis;
    for (const auto& m : f.comps()) basis.push_back(image_basis(m));
    return subrep(f.cod(), basis);
}

std::pair<Rep, RepMap> cokernel(const RepMap& f) {
    const Rep& y = f.cod();
    const Quiver& q = y.algebra()->quiver();
    const std::size_t n = y.dims().size();
    std::vector<Mat> comp(n), proj(n);
    for (std::size_t v = 0; v < n; ++v) {
        Mat im = image_basis(f.comp(v));
        comp[v] = complement_basis(im, y.dim(v));
        Mat b = Mat::hstack(im, comp[v]);
        Mat binv = *b.inverse();
        proj[v] = binv.block(im.cols(), 0, comp[v].cols(), y.dim(v));
    }
    std::vector<std::size_t> dims;
    for (const auto& c : comp) dims.push_back(c.cols());
    std::vector<Mat> arrows;
    for (std::size_t a = 0; a < q.arrow_count(); ++a) {
        const Arrow& ar = q.arrow(a);
        arrows.push_back(proj[ar.target] * y.arrow(a) * comp[ar.source]);
    }
    Rep c(y.algebra(), std::move(dims), std::move(arrows));
    return {c, RepMap(y, c, std::move(proj))};
}

bool is_mono(const RepMap& f) {
    return std::all_of(f.comps().begin(), f.comps().end(), [](const Mat& m) { return m.rank() == m.cols(); });
}

bool is_epi(const RepMap& f) {
    return std::all_of(f.comps().begin(), f.comps().end(), [](const Mat& m) { return m.rank() == m.rows(); });
}

// ----------------------------------------------------------------- tensors

namespace {

const TensorFactors& factors_for(const AlgebraPtr& lambda, const Rep& x, const Rep& y) {
    const auto& f = lambda->factors();
    if (!f) throw AlgebraMismatch("tensor_rep: not a tensor algebra");
    if (!same_algebra(f->a, x.algebra()) || !same_algebra(f->b, y.algebra())) {
        throw AlgebraMismatch("tensor_rep: factor algebras do not match");
    }
    return *f;
}

}  // namespace

Rep tensor_rep(const AlgebraPtr& lambda, const Rep& x, const Rep& y) {
    const TensorFactors& f = factors_for(lambda, x, y);
    const Quiver& qa = f.a->quiver();
    const Quiver& qb = f.b->quiver();
    const std::size_t na = qa.vertex_count(), nb = qb.vertex_count();
    const FieldSpec fs = lambda->field();
    std::vector<std::size_t> dims(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) dims[i * nb + j] = x.dim(i) * y.dim(j);
    }
    std::vector<Mat> arrows;
    for (std::size_t a = 0; a < qa.arrow_count(); ++a) {
        for (std::size_t j = 0; j < nb; ++j) arrows.push_back(kronecker(x.arrow(a), Mat::identity(fs, y.dim(j))));
    }
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t b = 0; b < qb.arrow_count(); ++b) {
            arrows.push_back(kronecker(Mat::identity(fs, x.dim(i)), y.arrow(b)));
        }
    }
    return Rep(lambda, std::move(dims), std::move(arrows));
}

RepMap tensor_map(const AlgebraPtr& lambda, const RepMap& f, const RepMap& g) {
    const TensorFactors& fac = factors_for(lambda, f.dom(), g.dom());
    const std::size_t na = fac.a->vertex_count(), nb = fac.b->vertex_count();
    std::vector<Mat> c;
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < nb; ++j) c.push_back(kronecker(f.comp(i), g.comp(j)));
    }
    return RepMap(tensor_rep(lambda, f.dom(), g.dom()), tensor_rep(lambda, f.cod(), g.cod()), std::move(c));
}

// ------------------------------------------------------ Krull–Schmidt tools

namespace {

bool nilpotent(const RepMap& f) {
    for (const auto& m : f.comps()) {
        if (m.rows() > 0 && !m.power(m.rows()).is_zero()) return false;
    }
    return true;
}

RepMap shifted(const RepMap& f, const Scalar& lambda) {
    return f - RepMap::identity(f.dom()).scaled(lambda);
}

// ker f^N ⊕ im f^N with projections along the complementary summand.
struct FittingSplit {
    Rep k, i;
    RepMap inc_k, inc_i, pro_k, pro_i;
};

FittingSplit fitting_split(const RepMap& f) {
    const Rep& x = f.dom();
    std::size_t n = 0;
    for (auto d : x.dims()) n = std::max(n, d);
    std::vector<Mat> kb, ib, pk, pi;
    for (const auto& m : f.comps()) {
        Mat fn = m.power(n);
        Mat k = kernel_basis(fn);
        Mat im = image_basis(fn);
        Mat binv = *Mat::hstack(k, im).inverse();
        pk.push_back(binv.block(0, 0, k.cols(), m.rows()));
        pi.push_back(binv.block(k.cols(), 0, im.cols(), m.rows()));
        kb.push_back(std::move(k));
        ib.push_back(std::move(im));
    }
    auto [kr, ki] = subrep(x, kb);
    auto [ir, ii] = subrep(x, ib);
    return {kr, ir, ki, ii, RepMap(x, kr, std::move(pk)), RepMap(x, ir, std::move(pi))};
}

std::vector<Summand> split_recursive(const Rep& x, std::mt19937_64& rng, std::size_t retries) {
    if (x.is_zero()) return {};
    const RadTop rt = rad_top(x, x);
    if (rt.top_dim == 1) return {Summand{x, RepMap::identity(x), RepMap::identity(x)}};

    const std::size_t h = rt.hom.dim();
    bool non_scalar_seen = false;
    auto try_split = [&](const RepMap& g) -> std::optional<RepMap> {
        auto usable = [](const RepMap& c) { return !nilpotent(c) && !c.is_iso(); };
        if (usable(g)) return g;
        bool scalar_plus_nilpotent = nilpotent(g);
        for (std::size_t v = 0; v < x.dims().size(); ++v) {
            if (x.dim(v) == 0) continue;
            for (const auto& lambda : field_roots(g.comp(v).charpoly(), 2)) {
                RepMap c = shifted(g, lambda);
                if (usable(c)) return c;
                if (nilpotent(c)) scalar_plus_nilpotent = true;
            }
        }
        if (!scalar_plus_nilpotent) non_scalar_seen = true;
        return std::nullopt;
    };

    std::optional<RepMap> splitter;
    for (std::size_t k = 0; k < h && !splitter; ++k) splitter = try_split(rt.hom.basis[k]);
    for (std::size_t t = 0; t < retries && !splitter; ++t) {
        splitter = try_split(rt.hom.combination(Mat::random(x.field(), h, 1, rng)));
    }
    if (!splitter) {
        // Every draw was nilpotent or invertible: End(X) is local with a residue
        // field larger than k.
        if (non_scalar_seen) return {Summand{x, RepMap::identity(x), RepMap::identity(x)}};
        throw DecompositionInconclusive("no splitting endomorphism found for a module of dimension " +
                                        x.dim_label());
    }
    FittingSplit fs = fitting_split(*splitter);
    std::vector<Summand> out;
    for (auto& s : split_recursive(fs.k, rng, retries)) {
        out.push_back(Summand{s.module, fs.inc_k * s.inclusion, s.projection * fs.pro_k});
    }
    for (auto& s : split_recursive(fs.i, rng, retries)) {
        out.push_back(Summand{s.module, fs.inc_i * s.inclusion, s.projection * fs.pro_i});
    }
    return out;
}

std::optional<RepMap> iso_between_indecomposables(const Rep& x, const Rep& y) {
    if (x.dims() != y.dims()) return std::nullopt;
    // For indecomposables every map outside rad(X,Y) is an isomorphism, and a
    // basis of Hom(X,Y) cannot lie inside the proper subspace rad(X,Y).
    for (const auto& f : hom_basis(x, y)) {
        if (f.is_iso()) return f;
    }
    return std::nullopt;
}

}  // namespace

Decomposition decompose(const Rep& x, const DecomposeOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    return Decomposition{split_recursive(x, rng, opt.retries)};
}

std::vector<std::pair<Rep, std::size_t>> Decomposition::grouped() const {
    std::vector<std::pair<Rep, std::size_t>> out;
    for (const auto& p : parts) {
        bool found = false;
        for (auto& [m, c] : out) {
            if (iso_between_indecomposables(m, p.module)) {
                ++c;
                found = true;
                break;
            }
        }
        if (!found) out.emplace_back(p.module, 1);
    }
    return out;
}

std::vector<Rep> indecomposable_summands(const Rep& x, const DecomposeOptions& opt) {
    std::vector<Rep> out;
    for (auto& p : decompose(x, opt).parts) out.push_back(p.module);
    return out;
}

bool is_indecomposable(const Rep& x, const DecomposeOptions& opt) {
    if (x.is_zero()) return false;
    if (rad_top(x, x).top_dim == 1) return true;
    return decompose(x, opt).parts.size() == 1;
}

std::optional<RepMap> find_isomorphism(const Rep& x, const Rep& y, const DecomposeOptions& opt) {
    require_same_algebra(x, y, "find_isomorphism");
    if (x.dims() != y.dims()) return std::nullopt;
    if (x.is_zero()) return RepMap::zero(x, y);
    HomSpace h = hom(x, y);
    if (h.dim() == 0) return std::nullopt;
    for (const auto& f : h.basis) {
        if (f.is_iso()) return f;
    }
    // When X is indecomposable the basis scan above is conclusive.
    if (rad_top(x, x).top_dim == 1) return std::nullopt;
    std::mt19937_64 rng(opt.seed);
    for (int t = 0; t < 4; ++t) {
        RepMap f = h.combination(Mat::random(x.field(), h.dim(), 1, rng));
        if (f.is_iso()) return f;
    }
    // Deterministic fallback: match indecomposable summands.
    Decomposition dx = decompose(x, opt);
    Decomposition dy = decompose(y, opt);
    if (dx.parts.size() != dy.parts.size()) return std::nullopt;
    std::vector<bool> used(dy.parts.size(), false);
    RepMap total = RepMap::zero(x, y);
    for (const auto& sx : dx.parts) {
        bool matched = false;
        for (std::size_t j = 0; j < dy.parts.size() && !matched; ++j) {
            if (used[j]) continue;
            if (auto phi = iso_between_indecomposables(sx.module, dy.parts[j].module)) {
                total = total + dy.parts[j].inclusion * (*phi) * sx.projection;
                used[j] = true;
                matched = true;
            }
        }
        if (!matched) return std::nullopt;
    }
    if (!total.is_iso() || !total.is_homomorphism()) {
        throw DecompositionInconclusive("assembled isomorphism failed verification");
    }
    return total;
}

bool is_isomorphic(const Rep& x, const Rep& y, const DecomposeOptions& opt) {
    return find_isomorphism(x, y, opt).has_value();
}

std::optional<std::size_t> find_isomorphic(const std::vector<Rep>& list, const Rep& x, const DecomposeOptions& opt) {
    for (std::size_t k = 0; k < list.size(); ++k) {
        if (list[k].dims() == x.dims() && is_isomorphic(list[k], x, opt)) return k;
    }
    return std::nullopt;
}

}  // namespace higherar
