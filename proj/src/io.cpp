#include "higherar/io.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace higherar {

namespace {

struct Token {
    std::string text;
    std::size_t column = 0;  ///< 1-based
};

std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

bool valid_name(const std::string& s) {
    if (s.empty() || s == "->") return false;
    return s.find_first_of(":.#+-*") == std::string::npos;
}

struct RawTerm {
    bool negative = false;
    std::string coef;  ///< empty for 1
    std::vector<std::size_t> arrows;
};

struct RawRelation {
    std::vector<RawTerm> terms;
    std::size_t line = 0;
};

class Parser {
public:
    Parser(const ParseOptions& opt, std::string source, int depth)
        : opt_(opt), source_(std::move(source)), depth_(depth) {}

    AlgebraPtr run(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::string line;
        while (std::getline(in, line)) {
            ++line_no_;
            if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
            const auto toks = tokenize(line);
            if (toks.empty()) continue;
            statement(line, toks);
        }
        return finish();
    }

private:
    [[noreturn]] void fail(std::size_t column, const std::string& what) const {
        throw ParseError(source_ + ":" + std::to_string(line_no_) + ":" + std::to_string(column) + ": " + what);
    }

    void statement(const std::string& line, const std::vector<Token>& t) {
        const std::string& kw = t[0].text;
        if (kw == "field") {
            field_statement(t);
        } else if (kw == "vertex") {
            if (t.size() != 2) fail(t[0].column, "expected 'vertex <name>'");
            if (!valid_name(t[1].text)) fail(t[1].column, "invalid vertex name '" + t[1].text + "'");
            for (const auto& v : vertices_) {
                if (v == t[1].text) fail(t[1].column, "duplicate vertex '" + t[1].text + "'");
            }
            vertices_.push_back(t[1].text);
            explicit_ = true;
        } else if (kw == "arrow") {
            arrow_statement(line, t);
            explicit_ = true;
        } else if (kw == "relation") {
            relation_statement(t);
            explicit_ = true;
        } else if (kw == "tensor") {
            if (t.size() != 3) fail(t[0].column, "expected 'tensor <fileA> <fileB>'");
            if (tensor_) fail(t[0].column, "duplicate tensor clause");
            tensor_ = {t[1].text, t[2].text};
            tensor_line_ = line_no_;
            tensor_col_ = t[0].column;
        } else {
            fail(t[0].column, "unknown statement '" + kw + "'");
        }
    }

    void field_statement(const std::vector<Token>& t) {
        if (t.size() != 2) fail(t[0].column, "expected 'field q' or 'field p=<prime>'");
        if (field_) fail(t[0].column, "duplicate field statement");
        const std::string& s = t[1].text;
        if (s == "q") {
            field_ = FieldSpec::rationals();
            return;
        }
        if (s.rfind("p=", 0) != 0 || s.size() == 2 ||
            s.find_first_not_of("0123456789", 2) != std::string::npos || s.size() > 12) {
            fail(t[1].column, "expected 'q' or 'p=<prime>'");
        }
        try {
            field_ = FieldSpec::prime(static_cast<std::uint32_t>(std::stoull(s.substr(2))));
        } catch (const Error& e) {
            fail(t[1].column, e.what());
        } catch (const std::out_of_range&) {
            fail(t[1].column, "prime out of range");
        }
    }

    void arrow_statement(const std::string& line, const std::vector<Token>& t) {
        static const std::regex re(R"(^\s*arrow\s+([^\s:]+)\s*:\s*(\S+)\s*->\s*(\S+)\s*$)");
        std::smatch m;
        if (!std::regex_match(line, m, re)) fail(t[0].column, "expected 'arrow <name>: <v> -> <w>'");
        const std::string name = m[1].str();
        const std::size_t col = static_cast<std::size_t>(m.position(1)) + 1;
        if (!valid_name(name)) fail(col, "invalid arrow name '" + name + "'");
        for (const auto& a : arrows_) {
            if (a.name == name) fail(col, "duplicate arrow '" + name + "'");
        }
        auto vertex = [&](int g) {
            const std::string v = m[g].str();
            for (std::size_t i = 0; i < vertices_.size(); ++i) {
                if (vertices_[i] == v) return i;
            }
            fail(static_cast<std::size_t>(m.position(g)) + 1, "unknown vertex '" + v + "'");
        };
        const std::size_t s = vertex(2), w = vertex(3);
        arrows_.push_back(Arrow{name, s, w});
    }

    void relation_statement(const std::vector<Token>& t) {
        if (t.size() < 2) fail(t[0].column, "relation without terms");
        RawRelation rel;
        rel.line = line_no_;
        for (std::size_t k = 1; k < t.size(); ++k) {
            const std::string& s = t[k].text;
            if (s.empty() || (s[0] != '+' && s[0] != '-')) fail(t[k].column, "term must start with + or -");
            RawTerm term;
            term.negative = s[0] == '-';
            std::string word = s.substr(1);
            if (auto star = word.find('*'); star != std::string::npos) {
                term.coef = word.substr(0, star);
                word = word.substr(star + 1);
                static const std::regex num(R"(^[0-9]+(/[0-9]+)?$)");
                if (!std::regex_match(term.coef, num)) fail(t[k].column + 1, "invalid coefficient '" + term.coef + "'");
            }
            if (word.empty()) fail(t[k].column, "empty path word");
            std::size_t pos = 0;
            while (pos <= word.size()) {
                std::size_t dot = word.find('.', pos);
                if (dot == std::string::npos) dot = word.size();
                const std::string name = word.substr(pos, dot - pos);
                const std::size_t col = t[k].column + (s.size() - word.size()) + pos;
                std::optional<std::size_t> id;
                for (std::size_t a = 0; a < arrows_.size(); ++a) {
                    if (arrows_[a].name == name) id = a;
                }
                if (!id) fail(col, "unknown arrow '" + name + "'");
                if (!term.arrows.empty() && arrows_[term.arrows.back()].target != arrows_[*id].source) {
                    fail(col, "arrow '" + name + "' does not compose with the previous one");
                }
                term.arrows.push_back(*id);
                pos = dot + 1;
            }
            rel.terms.push_back(std::move(term));
        }
        relations_.push_back(std::move(rel));
    }

    Scalar coefficient(const RawTerm& t, const FieldSpec& f) const {
        Scalar c = t.coef.empty() ? Scalar::one(f) : Scalar(f, mpq_class(t.coef));
        if (!f.is_rational() && !t.coef.empty()) {
            const auto slash = t.coef.find('/');
            if (slash != std::string::npos && Scalar(f, mpq_class(t.coef.substr(slash + 1))).is_zero()) {
                throw ParseError(source_ + ": coefficient '" + t.coef + "' has a denominator divisible by p");
            }
        }
        return t.negative ? -c : c;
    }

    AlgebraPtr finish() {
        const FieldSpec field = opt_.field_override ? *opt_.field_override
                                : field_            ? *field_
                                                    : FieldSpec::prime(kDefaultPrime);
        if (tensor_) {
            line_no_ = tensor_line_;
            if (explicit_) fail(tensor_col_, "a tensor clause cannot be combined with vertices, arrows or relations");
            if (depth_ > 16) fail(tensor_col_, "tensor clauses nested too deeply");
            ParseOptions sub;
            sub.field_override = field;
            auto load = [&](const std::string& name) {
                std::filesystem::path p = opt_.base_dir / name;
                std::ifstream in(p);
                if (!in) fail(tensor_col_, "cannot open '" + p.string() + "'");
                std::stringstream ss;
                ss << in.rdbuf();
                sub.base_dir = p.parent_path();
                return Parser(sub, p.string(), depth_ + 1).run(ss.str());
            };
            return tensor_algebra(load(tensor_->first), load(tensor_->second));
        }
        if (vertices_.empty()) throw ParseError(source_ + ": no vertices declared");
        Quiver q(vertices_, arrows_);
        std::vector<Relation> rels;
        for (const auto& r : relations_) {
            Relation rel;
            for (const auto& t : r.terms) {
                Path p{arrows_[t.arrows.front()].source, arrows_[t.arrows.back()].target, t.arrows};
                rel.terms.push_back({coefficient(t, field), p});
            }
            rels.push_back(std::move(rel));
        }
        return Algebra::create(std::move(q), std::move(rels), field);
    }

    ParseOptions opt_;
    std::string source_;
    int depth_ = 0;
    std::size_t line_no_ = 0;
    std::optional<FieldSpec> field_;
    std::vector<std::string> vertices_;
    std::vector<Arrow> arrows_;
    std::vector<RawRelation> relations_;
    std::optional<std::pair<std::string, std::string>> tensor_;
    std::size_t tensor_line_ = 0, tensor_col_ = 0;
    bool explicit_ = false;
};

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string grid_label(const Rep& x) {
    std::string out;
    for (const auto& row : dim_grid(x)) out += (out.empty() ? "" : "\\n") + row;
    return "\"" + out + "\"";
}

std::string labels_of(const MCatalogue& cat, const std::vector<std::size_t>& idx) {
    std::string out;
    for (auto i : idx) out += (out.empty() ? "" : " ") + cat.members[i].dim_label();
    return out;
}

}  // namespace

AlgebraPtr parse_algebra(std::string_view text, const ParseOptions& opt, const std::string& source) {
    return Parser(opt, source, 0).run(text);
}

AlgebraPtr load_algebra(const std::filesystem::path& file, std::optional<FieldSpec> field_override) {
    std::ifstream in(file);
    if (!in) throw ParseError(file.string() + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    ParseOptions opt;
    opt.field_override = field_override;
    opt.base_dir = file.parent_path();
    return parse_algebra(ss.str(), opt, file.string());
}

std::string print_algebra(const Algebra& alg) {
    std::ostringstream os;
    const Quiver& q = alg.quiver();
    os << "field " << alg.field().to_string() << "\n";
    for (const auto& v : q.vertex_names()) os << "vertex " << v << "\n";
    for (const auto& a : q.arrows()) {
        os << "arrow " << a.name << ": " << q.vertex_name(a.source) << " -> " << q.vertex_name(a.target) << "\n";
    }
    for (const auto& r : alg.relations()) {
        os << "relation";
        for (const auto& t : r.terms) {
            std::string c = t.coef.to_string();
            const bool neg = c[0] == '-';
            if (neg) c.erase(0, 1);
            os << " " << (neg ? '-' : '+') << (c == "1" ? "" : c + "*");
            for (std::size_t k = 0; k < t.path.arrows.size(); ++k) os << (k ? "." : "") << q.arrow(t.path.arrows[k]).name;
        }
        os << "\n";
    }
    return os.str();
}

std::vector<std::string> dim_grid(const Rep& x) {
    const auto& dims = x.dims();
    const bool wide = std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d > 9; });
    auto row = [&](const std::vector<std::size_t>& vs) {
        std::string s;
        for (std::size_t k = 0; k < vs.size(); ++k) s += (wide && k ? "," : "") + std::to_string(dims[vs[k]]);
        return s;
    };
    const auto& f = x.algebra()->factors();
    if (!f) {
        std::vector<std::size_t> all(dims.size());
        for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
        return {row(all)};
    }
    const std::size_t na = f->a->vertex_count(), nb = f->b->vertex_count();
    std::vector<std::string> rows;
    for (std::size_t j = nb; j-- > 0;) {
        std::vector<std::size_t> vs;
        for (std::size_t i = 0; i < na; ++i) vs.push_back(i * nb + j);
        rows.push_back(row(vs));
    }
    return rows;
}

std::string quiver_dot(const Quiver& q, const DotOptions& opt) {
    std::ostringstream os;
    os << "digraph " << quoted(opt.graph_name) << " {\n";
    for (std::size_t v = 0; v < q.vertex_count(); ++v) os << "  n" << v << " [label=" << quoted(q.vertex_name(v)) << "];\n";
    for (const auto& a : q.arrows()) {
        os << "  n" << a.source << " -> n" << a.target << " [label=" << quoted(a.name) << "];\n";
    }
    os << "}\n";
    return os.str();
}

std::string ar_quiver_dot(const ARQuiver& ar, const DotOptions& opt, const ModuleClassification* tags) {
    std::ostringstream os;
    os << "digraph " << quoted(opt.graph_name) << " {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < ar.size(); ++i) {
        os << "  n" << i << " [label=" << grid_label(ar.modules[i]);
        if (tags) os << ", xlabel=" << quoted(tag_glyph(tags->tags[i]));
        os << "];\n";
    }
    for (const auto& a : ar.arrows) {
        for (std::size_t k = 0; k < a.multiplicity; ++k) os << "  n" << a.from << " -> n" << a.to << ";\n";
    }
    if (opt.tau_arrows) {
        for (std::size_t i = 0; i < ar.size(); ++i) {
            if (ar.tau[i]) os << "  n" << i << " -> n" << *ar.tau[i] << " [style=dashed, constraint=false];\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::vector<ARArrow> irreducible_arrows(const CatContext& ctx) {
    std::vector<ARArrow> out;
    const std::size_t n = ctx.size();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const auto& rad = ctx.rad(a, b).rad;
            if (rad.empty()) continue;
            const Rep& x = ctx.gen(a);
            Mat comps(x.field(), rad.front().flatten().rows(), 0);
            for (std::size_t z = 0; z < n; ++z) {
                for (const auto& f : ctx.rad(a, z).rad) {
                    for (const auto& g : ctx.rad(z, b).rad) comps = Mat::hstack(comps, (g * f).flatten());
                }
            }
            const std::size_t mult = rad.size() - comps.rank();
            if (mult > 0) out.push_back({a, b, mult});
        }
    }
    return out;
}

std::string catalogue_dot(const MCatalogue& cat, const DotOptions& opt, const DecomposeOptions& dopt) {
    std::ostringstream os;
    os << "digraph " << quoted(opt.graph_name) << " {\n  rankdir=LR;\n";
    for (std::size_t i = 0; i < cat.members.size(); ++i) {
        os << "  n" << i << " [label=" << grid_label(cat.members[i]);
        if (std::find(cat.t_members.begin(), cat.t_members.end(), i) != cat.t_members.end()) os << ", shape=box";
        os << "];\n";
    }
    for (const auto& a : irreducible_arrows(cat.context(dopt))) {
        for (std::size_t k = 0; k < a.multiplicity; ++k) os << "  n" << a.from << " -> n" << a.to << ";\n";
    }
    if (opt.tau_arrows) {
        for (std::size_t i = 0; i < cat.members.size(); ++i) {
            for (auto t : cat.tau[i]) os << "  n" << i << " -> n" << t << " [style=dashed, constraint=false];\n";
        }
    }
    os << "}\n";
    return os.str();
}

void Report::add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
void Report::add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
void Report::add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }

std::string Report::text() const {
    std::ostringstream os;
    for (const auto& [k, v] : lines_) os << k << " = " << v << "\n";
    os << kVerdictBegin << "\n" << verdict_.dump(2) << "\n";
    return os.str();
}

nlohmann::ordered_json verdict_json(const Verdict& v) {
    auto flag = [](const Flag& f) { return nlohmann::ordered_json{{"value", f.value}, {"witness", f.witness}}; };
    nlohmann::ordered_json j;
    j["d"] = v.d;
    j["gl_dim"] = v.gl_dim;
    j["A"] = flag(v.a);
    j["B"] = flag(v.b);
    j["C"] = flag(v.c);
    j["C_with_hom"] = flag(v.c_with_hom);
    j["acyclic"] = flag(v.acyclic);
    j["complete"] = flag(v.d_complete);
    j["representation_finite"] = flag(v.d_rep_finite);
    j["cocomplete"] = flag(v.d_cocomplete);
    j["homogeneous"] = flag(v.homogeneous);
    j["l"] = v.l ? nlohmann::ordered_json(*v.l) : nlohmann::ordered_json(nullptr);
    if (v.catalogue) {
        const MCatalogue& cat = *v.catalogue;
        nlohmann::ordered_json c;
        std::vector<std::string> members, t, mp, mi;
        for (const auto& m : cat.members) members.push_back(m.dim_label());
        for (auto i : cat.t_members) t.push_back(cat.members[i].dim_label());
        for (auto i : cat.mp_members()) mp.push_back(cat.members[i].dim_label());
        for (auto i : cat.mi_members()) mi.push_back(cat.members[i].dim_label());
        c["members"] = members;
        c["slices"] = cat.slices;
        c["T"] = t;
        c["M_P"] = mp;
        c["M_I"] = mi;
        c["orbit_lengths"] = cat.orbit_lengths;
        j["catalogue"] = c;
    }
    return j;
}

void add_verdict_lines(Report& r, const Verdict& v, const std::string& prefix) {
    const std::string d = std::to_string(v.d);
    auto put = [&](const std::string& key, const Flag& f) {
        r.add(prefix + key, f.value);
        if (!f.witness.empty()) r.add(prefix + key + " witness", f.witness);
    };
    r.add(prefix + "d", v.d);
    r.add(prefix + "gl.dim", v.gl_dim);
    put("A_" + d, v.a);
    put("B_" + d, v.b);
    put("C_" + d, v.c);
    put("C_" + d + " with Hom", v.c_with_hom);
    put("acyclic", v.acyclic);
    put(d + "-complete", v.d_complete);
    put(d + "-representation-finite", v.d_rep_finite);
    put(d + "-cocomplete", v.d_cocomplete);
    put("homogeneous", v.homogeneous);
    if (v.l) r.add(prefix + "l", *v.l);
    if (v.catalogue) {
        const MCatalogue& cat = *v.catalogue;
        std::vector<std::size_t> all(cat.members.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        r.add(prefix + "|ind M|", cat.members.size());
        r.add(prefix + "ind M", labels_of(cat, all));
        r.add(prefix + "|T|", cat.t_members.size());
        r.add(prefix + "T", labels_of(cat, cat.t_members));
        r.add(prefix + "M_P", labels_of(cat, cat.mp_members()));
        r.add(prefix + "M_I", labels_of(cat, cat.mi_members()));
        std::string ls;
        for (auto l : cat.orbit_lengths) ls += (ls.empty() ? "" : " ") + std::to_string(l);
        r.add(prefix + "orbit lengths", ls);
    }
}

}  // namespace higherar
