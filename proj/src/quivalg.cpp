#include "higherar/quivalg.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace higherar {

Quiver::Quiver(std::vector<std::string> vertex_names, std::vector<Arrow> arrows)
    : vertices_(std::move(vertex_names)), arrows_(std::move(arrows)) {
    std::set<std::string> seen;
    for (const auto& v : vertices_) {
        if (!seen.insert(v).second) throw ParseError("duplicate name '" + v + "'");
    }
    for (const auto& a : arrows_) {
        if (!seen.insert(a.name).second) throw ParseError("duplicate name '" + a.name + "'");
        if (a.source >= vertices_.size() || a.target >= vertices_.size()) {
            throw InconsistentRelation("arrow '" + a.name + "' has an endpoint outside the vertex list");
        }
    }
    // Kahn's algorithm; leftover vertices lie on a cycle.
    std::vector<std::size_t> indeg(vertices_.size(), 0);
    for (const auto& a : arrows_) ++indeg[a.target];
    std::deque<std::size_t> ready;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (indeg[v] == 0) ready.push_back(v);
    }
    std::size_t done = 0;
    while (!ready.empty()) {
        const std::size_t v = ready.front();
        ready.pop_front();
        ++done;
        for (const auto& a : arrows_) {
            if (a.source == v && --indeg[a.target] == 0) ready.push_back(a.target);
        }
    }
    if (done != vertices_.size()) throw CyclicQuiver("quiver has a directed cycle");
}

std::optional<std::size_t> Quiver::find_vertex(const std::string& name) const {
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (vertices_[v] == name) return v;
    }
    return std::nullopt;
}

std::optional<std::size_t> Quiver::find_arrow(const std::string& name) const {
    for (std::size_t a = 0; a < arrows_.size(); ++a) {
        if (arrows_[a].name == name) return a;
    }
    return std::nullopt;
}

bool operator<(const Path& a, const Path& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.is_trivial()) return a.source < b.source;
    return a.arrows < b.arrows;
}

std::vector<Path> enumerate_paths(const Quiver& q) {
    // Re-validate: a Quiver built through the constructor is acyclic, but the
    // check is cheap and keeps this function total.
    Quiver checked(q.vertex_names(), q.arrows());
    std::vector<Path> out;
    std::vector<Path> layer;
    for (std::size_t v = 0; v < q.vertex_count(); ++v) layer.push_back(Path{v, v, {}});
    while (!layer.empty()) {
        std::sort(layer.begin(), layer.end());
        out.insert(out.end(), layer.begin(), layer.end());
        std::vector<Path> next;
        for (const auto& p : layer) {
            for (std::size_t a = 0; a < q.arrow_count(); ++a) {
                if (q.arrow(a).source != p.target) continue;
                Path e = p;
                e.arrows.push_back(a);
                e.target = q.arrow(a).target;
                next.push_back(std::move(e));
            }
        }
        layer = std::move(next);
    }
    return out;
}

namespace {

Path concat(const Path& x, const Path& y) {
    Path r{x.source, y.target, x.arrows};
    r.arrows.insert(r.arrows.end(), y.arrows.begin(), y.arrows.end());
    return r;
}

Path reversed(const Path& p) {
    Path r{p.target, p.source, p.arrows};
    std::reverse(r.arrows.begin(), r.arrows.end());
    return r;
}

std::string path_word(const Quiver& q, const Path& p) {
    if (p.is_trivial()) return "e_" + q.vertex_name(p.source);
    std::string s;
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
        if (k) s += ".";
        s += q.arrow(p.arrows[k]).name;
    }
    return s;
}

void validate_relation(const Quiver& q, const Relation& r, const FieldSpec& f) {
    if (r.terms.empty()) throw InconsistentRelation("empty relation");
    const std::size_t s = r.terms.front().path.source;
    const std::size_t t = r.terms.front().path.target;
    for (const auto& term : r.terms) {
        if (!(term.coef.field() == f)) throw InconsistentRelation("relation coefficient over a different field");
        const Path& p = term.path;
        if (p.length() < 2) throw InconsistentRelation("relation path '" + path_word(q, p) + "' has length < 2");
        if (p.source != s || p.target != t) {
            throw InconsistentRelation("relation mixes non-parallel paths ('" + path_word(q, p) + "')");
        }
        std::size_t at = p.source;
        for (auto a : p.arrows) {
            if (a >= q.arrow_count() || q.arrow(a).source != at) {
                throw InconsistentRelation("relation path '" + path_word(q, p) + "' is not composable");
            }
            at = q.arrow(a).target;
        }
        if (at != p.target) throw InconsistentRelation("relation path endpoints are inconsistent");
    }
}

}  // namespace

AlgebraPtr Algebra::create(Quiver q, std::vector<Relation> relations, FieldSpec field,
                           std::optional<TensorFactors> factors) {
    for (const auto& r : relations) validate_relation(q, r, field);
    std::shared_ptr<Algebra> alg(new Algebra());
    alg->quiver_ = std::move(q);
    alg->relations_ = std::move(relations);
    alg->field_ = field;
    alg->factors_ = std::move(factors);
    alg->paths_ = enumerate_paths(alg->quiver_);

    const std::size_t n = alg->quiver_.vertex_count();
    const auto& paths = alg->paths_;
    for (std::size_t k = 0; k < paths.size(); ++k) {
        alg->path_index_[{paths[k].source, paths[k].arrows}] = k;
    }
    std::vector<std::vector<std::vector<std::size_t>>> group(n, std::vector<std::vector<std::size_t>>(n));
    std::vector<std::size_t> pos_in_group(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) {
        auto& g = group[paths[k].source][paths[k].target];
        pos_in_group[k] = g.size();
        g.push_back(k);
    }

    // Ideal generators u·r·v, one column per generator, rows indexed by the
    // paths of the (s, t) group in *reverse* order so rref pivots land on the
    // largest paths and the standard monomials are the smallest ones.
    std::vector<std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>>> gens(
        n, std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>>(n));
    for (const auto& rel : alg->relations_) {
        const std::size_t rs = rel.terms.front().path.source;
        const std::size_t rt = rel.terms.front().path.target;
        for (std::size_t ui = 0; ui < paths.size(); ++ui) {
            if (paths[ui].target != rs) continue;
            for (std::size_t vi = 0; vi < paths.size(); ++vi) {
                if (paths[vi].source != rt) continue;
                std::vector<std::pair<std::size_t, Scalar>> g;
                for (const auto& term : rel.terms) {
                    const Path full = concat(concat(paths[ui], term.path), paths[vi]);
                    g.emplace_back(alg->path_index_.at({full.source, full.arrows}), term.coef);
                }
                gens[paths[ui].source][paths[vi].target].push_back(std::move(g));
            }
        }
    }

    std::vector<bool> is_pivot(paths.size(), false);
    // For pivot paths: row of the rref expressing them through later columns.
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> reduction(paths.size());
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            const auto& members = group[s][t];
            const auto& gl = gens[s][t];
            if (members.empty() || gl.empty()) continue;
            const std::size_t m = members.size();
            Mat g(field, gl.size(), m);
            for (std::size_t r = 0; r < gl.size(); ++r) {
                for (const auto& [pidx, c] : gl[r]) {
                    const std::size_t col = m - 1 - pos_in_group[pidx];
                    g.set(r, col, g.at(r, col) + c);
                }
            }
            std::vector<std::size_t> piv;
            Mat red = g.rref(&piv);
            for (std::size_t row = 0; row < piv.size(); ++row) {
                const std::size_t pidx = members[m - 1 - piv[row]];
                is_pivot[pidx] = true;
                for (std::size_t col = piv[row] + 1; col < m; ++col) {
                    Scalar c = red.at(row, col);
                    if (!c.is_zero()) reduction[pidx].emplace_back(members[m - 1 - col], -c);
                }
            }
        }
    }

    std::vector<std::size_t> basis_of_path(paths.size(), SIZE_MAX);
    for (std::size_t k = 0; k < paths.size(); ++k) {
        if (is_pivot[k]) continue;
        basis_of_path[k] = alg->basis_.size();
        alg->basis_.push_back(k);
    }
    alg->nf_.resize(paths.size());
    for (std::size_t k = 0; k < paths.size(); ++k) {
        Elem e;
        if (!is_pivot[k]) {
            e.terms.emplace_back(basis_of_path[k], Scalar::one(field));
        } else {
            for (const auto& [pidx, c] : reduction[k]) {
                // Reduced rows only reference non-pivot columns.
                e.terms.emplace_back(basis_of_path[pidx], c);
            }
            std::sort(e.terms.begin(), e.terms.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
        }
        alg->nf_[k] = std::move(e);
    }

    alg->between_.assign(n, std::vector<std::vector<std::size_t>>(n));
    for (std::size_t b = 0; b < alg->basis_.size(); ++b) {
        const Path& p = paths[alg->basis_[b]];
        alg->between_[p.source][p.target].push_back(b);
    }
    for (std::size_t a = 0; a < alg->quiver_.arrow_count(); ++a) {
        const std::size_t pidx = alg->path_index_.at({alg->quiver_.arrow(a).source, {a}});
        alg->arrow_basis_.push_back(basis_of_path[pidx]);
    }
    for (std::size_t v = 0; v < n; ++v) {
        alg->idem_basis_.push_back(basis_of_path[alg->path_index_.at({v, {}})]);
    }

    std::ostringstream fp;
    fp << "field " << field.to_string() << "\n";
    for (const auto& v : alg->quiver_.vertex_names()) fp << "vertex " << v << "\n";
    for (const auto& a : alg->quiver_.arrows()) fp << "arrow " << a.name << " " << a.source << " " << a.target << "\n";
    for (const auto& r : alg->relations_) {
        fp << "relation";
        for (const auto& t : r.terms) fp << " " << t.coef.to_string() << "*" << path_word(alg->quiver_, t.path);
        fp << "\n";
    }
    alg->fingerprint_ = fp.str();
    return alg;
}

const std::vector<std::size_t>& Algebra::basis_between(std::size_t i, std::size_t j) const {
    return between_.at(i).at(j);
}

std::optional<std::size_t> Algebra::find_path(const Path& p) const {
    auto it = path_index_.find({p.source, p.arrows});
    if (it == path_index_.end()) return std::nullopt;
    return it->second;
}

Elem Algebra::basis_elem(std::size_t k) const {
    Elem e;
    e.terms.emplace_back(k, Scalar::one(field_));
    return e;
}

Elem Algebra::mul_basis(std::size_t x, std::size_t y) const {
    const Path& px = basis(x);
    const Path& py = basis(y);
    if (px.target != py.source) return {};
    const Path c = concat(px, py);
    return nf_[path_index_.at({c.source, c.arrows})];
}

Elem Algebra::add(const Elem& x, const Elem& y) const {
    Elem r;
    std::size_t i = 0, j = 0;
    while (i < x.terms.size() || j < y.terms.size()) {
        if (j >= y.terms.size() || (i < x.terms.size() && x.terms[i].first < y.terms[j].first)) {
            r.terms.push_back(x.terms[i++]);
        } else if (i >= x.terms.size() || y.terms[j].first < x.terms[i].first) {
            r.terms.push_back(y.terms[j++]);
        } else {
            Scalar s = x.terms[i].second + y.terms[j].second;
            if (!s.is_zero()) r.terms.emplace_back(x.terms[i].first, s);
            ++i;
            ++j;
        }
    }
    return r;
}

Elem Algebra::scale(const Elem& x, const Scalar& c) const {
    if (c.is_zero()) return {};
    Elem r = x;
    for (auto& t : r.terms) t.second = t.second * c;
    return r;
}

Elem Algebra::mul(const Elem& x, const Elem& y) const {
    Elem r;
    for (const auto& [bx, cx] : x.terms) {
        for (const auto& [by, cy] : y.terms) {
            Elem p = mul_basis(bx, by);
            if (!p.is_zero()) r = add(r, scale(p, cx * cy));
        }
    }
    return r;
}

Mat Algebra::coords(const Elem& x) const {
    Mat m(field_, dim(), 1);
    for (const auto& [b, c] : x.terms) m.set(b, 0, c);
    return m;
}

bool Algebra::check_structure() const {
    const std::size_t n = dim();
    for (std::size_t b = 0; b < n; ++b) {
        const Path& p = basis(b);
        Elem left = mul_basis(idem_basis_[p.source], b);
        Elem both = mul(left, basis_elem(idem_basis_[p.target]));
        Elem self = basis_elem(b);
        if (coords(both) != coords(self)) return false;
    }
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            Elem xy = mul_basis(x, y);
            for (std::size_t z = 0; z < n; ++z) {
                Elem l = mul(xy, basis_elem(z));
                Elem r = mul(basis_elem(x), mul_basis(y, z));
                if (coords(l) != coords(r)) return false;
            }
        }
    }
    return true;
}

AlgebraPtr Algebra::opposite() const {
    std::lock_guard<std::mutex> lock(op_mutex_);
    if (op_) return op_;
    if (auto orig = op_of_.lock()) return orig;
    std::vector<Arrow> arrows;
    for (const auto& a : quiver_.arrows()) arrows.push_back(Arrow{a.name, a.target, a.source});
    std::vector<Relation> rels;
    for (const auto& r : relations_) {
        Relation o;
        for (const auto& t : r.terms) o.terms.push_back({t.coef, reversed(t.path)});
        rels.push_back(std::move(o));
    }
    std::optional<TensorFactors> f;
    if (factors_) f = TensorFactors{factors_->a->opposite(), factors_->b->opposite()};
    auto op = create(Quiver(quiver_.vertex_names(), std::move(arrows)), std::move(rels), field_, std::move(f));
    const_cast<Algebra&>(*op).op_of_ = weak_from_this();
    op_ = op;
    return op_;
}

bool same_algebra(const Algebra& a, const Algebra& b) {
    return &a == &b || a.fingerprint() == b.fingerprint();
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return same_algebra(*a, *b); }

AlgebraPtr opposite(const AlgebraPtr& alg) { return alg->opposite(); }

AlgebraPtr tensor_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
    if (!(a->field() == b->field())) throw FieldMismatch("tensor factors over different fields");
    const FieldSpec f = a->field();
    const Quiver& qa = a->quiver();
    const Quiver& qb = b->quiver();
    const std::size_t nb = qb.vertex_count();
    auto vid = [nb](std::size_t i, std::size_t j) { return i * nb + j; };

    std::vector<std::string> names;
    for (std::size_t i = 0; i < qa.vertex_count(); ++i) {
        for (std::size_t j = 0; j < nb; ++j) names.push_back(qa.vertex_name(i) + "|" + qb.vertex_name(j));
    }
    std::vector<Arrow> arrows;
    // (a, j) has index a·|V_B| + j; (i, b) has index |Q_A|·|V_B| + i·|Q_B| + b.
    for (std::size_t x = 0; x < qa.arrow_count(); ++x) {
        for (std::size_t j = 0; j < nb; ++j) {
            arrows.push_back(Arrow{qa.arrow(x).name + "|" + qb.vertex_name(j), vid(qa.arrow(x).source, j),
                                   vid(qa.arrow(x).target, j)});
        }
    }
    const std::size_t offset_b = arrows.size();
    for (std::size_t i = 0; i < qa.vertex_count(); ++i) {
        for (std::size_t y = 0; y < qb.arrow_count(); ++y) {
            arrows.push_back(Arrow{qa.vertex_name(i) + "|" + qb.arrow(y).name, vid(i, qb.arrow(y).source),
                                   vid(i, qb.arrow(y).target)});
        }
    }
    auto arrow_aj = [nb](std::size_t x, std::size_t j) { return x * nb + j; };
    auto arrow_ib = [&](std::size_t i, std::size_t y) { return offset_b + i * qb.arrow_count() + y; };

    std::vector<Relation> rels;
    for (const auto& r : a->relations()) {
        for (std::size_t j = 0; j < nb; ++j) {
            Relation t;
            for (const auto& term : r.terms) {
                Path p{vid(term.path.source, j), vid(term.path.target, j), {}};
                for (auto x : term.path.arrows) p.arrows.push_back(arrow_aj(x, j));
                t.terms.push_back({term.coef, p});
            }
            rels.push_back(std::move(t));
        }
    }
    for (const auto& r : b->relations()) {
        for (std::size_t i = 0; i < qa.vertex_count(); ++i) {
            Relation t;
            for (const auto& term : r.terms) {
                Path p{vid(i, term.path.source), vid(i, term.path.target), {}};
                for (auto y : term.path.arrows) p.arrows.push_back(arrow_ib(i, y));
                t.terms.push_back({term.coef, p});
            }
            rels.push_back(std::move(t));
        }
    }
    for (std::size_t x = 0; x < qa.arrow_count(); ++x) {
        for (std::size_t y = 0; y < qb.arrow_count(); ++y) {
            const auto& ax = qa.arrow(x);
            const auto& by = qb.arrow(y);
            Path first{vid(ax.source, by.source), vid(ax.target, by.target),
                       {arrow_aj(x, by.source), arrow_ib(ax.target, y)}};
            Path second{vid(ax.source, by.source), vid(ax.target, by.target),
                        {arrow_ib(ax.source, y), arrow_aj(x, by.target)}};
            rels.push_back(Relation{{{Scalar::one(f), first}, {-Scalar::one(f), second}}});
        }
    }
    return Algebra::create(Quiver(std::move(names), std::move(arrows)), std::move(rels), f, TensorFactors{a, b});
}

AlgebraPtr path_algebra(const std::vector<std::string>& vertices,
                        const std::vector<std::tuple<std::string, std::string, std::string>>& arrows,
                        FieldSpec field) {
    std::vector<Arrow> as;
    auto find = [&](const std::string& n) {
        auto it = std::find(vertices.begin(), vertices.end(), n);
        if (it == vertices.end()) throw ParseError("unknown vertex '" + n + "'");
        return static_cast<std::size_t>(it - vertices.begin());
    };
    for (const auto& [name, s, t] : arrows) as.push_back(Arrow{name, find(s), find(t)});
    return Algebra::create(Quiver(vertices, std::move(as)), {}, field);
}

}  // namespace higherar
