#include "higherar/cli.hpp"

#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "higherar/homolog.hpp"
#include "higherar/io.hpp"
#include "higherar/tensorops.hpp"

namespace higherar {

namespace {

struct Globals {
    std::optional<std::uint32_t> prime;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> cap;

    std::optional<FieldSpec> field() const {
        if (!prime) return std::nullopt;
        return FieldSpec::prime(*prime);
    }
    DecomposeOptions decompose() const {
        DecomposeOptions o;
        if (seed) {
            o.seed = *seed;
        } else if (const char* env = std::getenv("HIGHERAR_SEED")) {
            try {
                o.seed = std::stoull(env);
            } catch (const std::exception&) {
                throw ParseError("HIGHERAR_SEED is not an unsigned integer: '" + std::string(env) + "'");
            }
        }
        return o;
    }
    VerifyOptions verify() const {
        VerifyOptions o;
        o.decompose = decompose();
        if (cap) o.cap = *cap;
        return o;
    }
    KnitOptions knit() const {
        KnitOptions o;
        o.decompose = decompose();
        if (cap) o.cap = *cap;
        return o;
    }
};

void describe_algebra(Report& r, const std::string& key, const std::string& file, const AlgebraPtr& alg) {
    r.add(key, file);
    r.add(key + " field", alg->field().to_string());
    r.add(key + " vertices", alg->vertex_count());
    r.add(key + " dimension", alg->dim());
}

std::size_t default_d(const AlgebraPtr& alg, std::optional<std::size_t> d) {
    return d ? *d : std::max<std::size_t>(1, global_dimension(alg));
}

int cmd_check(const Globals& g, const std::string& file, std::size_t d, std::ostream& out) {
    AlgebraPtr alg = load_algebra(file, g.field());
    Report r;
    r.add("command", std::string("check"));
    describe_algebra(r, "algebra", file, alg);
    Verdict v = verify_conditions(alg, d, g.verify());
    add_verdict_lines(r, v);
    r.verdict() = verdict_json(v);
    out << r.text();
    return v.d_complete.value ? kExitVerified : kExitFailed;
}

bool common_l(const MCatalogue& a, const MCatalogue& b, std::size_t& l) {
    if (a.orbit_lengths.empty()) return false;
    l = a.orbit_lengths.front();
    for (auto x : a.orbit_lengths) {
        if (x != l) return false;
    }
    for (auto x : b.orbit_lengths) {
        if (x != l) return false;
    }
    return true;
}

int cmd_tensor_check(const Globals& g, const std::string& fa, const std::string& fb, std::size_t n, std::size_t m,
                     std::ostream& out) {
    AlgebraPtr a = load_algebra(fa, g.field());
    AlgebraPtr b = load_algebra(fb, g.field());
    AlgebraPtr lambda = tensor_algebra(a, b);
    const VerifyOptions opt = g.verify();
    Report r;
    r.add("command", std::string("tensor-check"));
    describe_algebra(r, "A", fa, a);
    describe_algebra(r, "B", fb, b);
    r.add("Lambda dimension", lambda->dim());

    Verdict va = verify_conditions(a, n, opt);
    Verdict vb = verify_conditions(b, m, opt);
    Verdict vl = verify_conditions(lambda, n + m, opt);
    add_verdict_lines(r, va, "A ");
    add_verdict_lines(r, vb, "B ");
    add_verdict_lines(r, vl);

    const bool hypotheses = va.d_complete.value && vb.d_complete.value && va.acyclic.value && vb.acyclic.value;
    const bool conclusion = vl.d_complete.value && vl.acyclic.value;
    const bool theorem_ok = !hypotheses || conclusion;
    r.add("theorem hypotheses", hypotheses);
    r.add("theorem conclusion", conclusion);
    r.add("theorem consistent", theorem_ok);

    nlohmann::ordered_json cor;
    bool corollary_ok = true;
    if (hypotheses && va.catalogue && vb.catalogue && vl.catalogue) {
        std::size_t l = 0;
        const bool same_l = common_l(*va.catalogue, *vb.catalogue, l);
        const bool predicted = va.d_rep_finite.value && vb.d_rep_finite.value && same_l;
        corollary_ok = predicted == vl.d_rep_finite.value;
        if (predicted) corollary_ok = corollary_ok && vl.homogeneous.value && vl.l == l;
        const bool t_matches =
            is_isomorphic(vl.catalogue->t, tensor_rep(lambda, va.catalogue->t, vb.catalogue->t), opt.decompose);
        r.add("factors homogeneous with a common l", same_l);
        if (same_l) r.add("common l", l);
        r.add("predicted representation-finite", predicted);
        r.add("corollary consistent", corollary_ok);
        r.add("T_Lambda = T_A (x) T_B", t_matches);
        r.add("homogeneity transfer consistent", t_matches == same_l);
        corollary_ok = corollary_ok && t_matches == same_l;
        cor = {{"common_l", same_l ? nlohmann::ordered_json(l) : nlohmann::ordered_json(nullptr)},
               {"predicted_representation_finite", predicted},
               {"t_matches", t_matches},
               {"consistent", corollary_ok}};
    }
    r.verdict()["A"] = verdict_json(va);
    r.verdict()["B"] = verdict_json(vb);
    r.verdict()["tensor"] = verdict_json(vl);
    r.verdict()["theorem"] = {{"hypotheses", hypotheses}, {"conclusion", conclusion}, {"consistent", theorem_ok}};
    r.verdict()["corollary"] = cor;
    out << r.text();
    return vl.d_complete.value && theorem_ok && corollary_ok ? kExitVerified : kExitFailed;
}

int cmd_quiver(const Globals& g, const std::string& file, bool mcat, bool ar, bool tau, std::optional<std::size_t> d,
               std::ostream& out) {
    AlgebraPtr alg = load_algebra(file, g.field());
    DotOptions dot;
    dot.tau_arrows = tau;
    if (mcat) {
        dot.graph_name = "M";
        MCatalogue cat = build_M(alg, default_d(alg, d), g.verify().cap, g.decompose());
        out << catalogue_dot(cat, dot, g.decompose());
    } else if (ar) {
        dot.graph_name = "AR";
        ARQuiver q = enumerate_indecomposables(alg, g.knit());
        if (d) {
            MCatalogue cat = build_M(alg, *d, g.verify().cap, g.decompose());
            ModuleClassification cls = classify_modules(q, cat, g.decompose());
            out << ar_quiver_dot(q, dot, &cls);
        } else {
            out << ar_quiver_dot(q, dot);
        }
    } else {
        out << quiver_dot(alg->quiver(), dot);
    }
    return kExitVerified;
}

int cmd_classify(const Globals& g, const std::string& file, std::size_t d, std::ostream& out) {
    AlgebraPtr alg = load_algebra(file, g.field());
    Report r;
    r.add("command", std::string("classify"));
    describe_algebra(r, "algebra", file, alg);
    Verdict v = verify_conditions(alg, d, g.verify());
    add_verdict_lines(r, v);
    r.verdict() = verdict_json(v);
    if (!v.catalogue) {
        out << r.text();
        return kExitFailed;
    }
    ARQuiver q = enumerate_indecomposables(alg, g.knit());
    ModuleClassification cls = classify_modules(q, *v.catalogue, g.decompose());
    r.add("|ind Lambda|", q.size());
    nlohmann::ordered_json mods = nlohmann::ordered_json::array();
    for (ModuleTag t : {ModuleTag::in_add_t, ModuleTag::in_m_not_t, ModuleTag::in_perp_not_m, ModuleTag::outside_perp}) {
        r.add("count " + tag_name(t), cls.count(t));
        r.verdict()["counts"][tag_name(t)] = cls.count(t);
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
        std::string value = tag_glyph(cls.tags[i]) + " " + tag_name(cls.tags[i]);
        nlohmann::ordered_json mj{{"module", q.modules[i].dim_label()}, {"tag", tag_name(cls.tags[i])}};
        if (cls.tags[i] == ModuleTag::in_perp_not_m) {
            ExtSides s = ext_sides(q.modules[i], *v.catalogue);
            value += std::string(", Ext from M ") + (s.from_m ? "nonzero" : "zero") + ", Ext to M " +
                     (s.to_m ? "nonzero" : "zero");
            mj["ext_from_M"] = s.from_m;
            mj["ext_to_M"] = s.to_m;
        }
        r.add("module " + q.modules[i].dim_label(), value);
        mods.push_back(mj);
    }
    r.verdict()["modules"] = mods;
    out << r.text();
    return kExitVerified;
}

int cmd_sequences(const Globals& g, const std::string& file, std::size_t d, const std::optional<std::string>& end,
                  std::ostream& out) {
    AlgebraPtr alg = load_algebra(file, g.field());
    Report r;
    r.add("command", std::string("sequences"));
    describe_algebra(r, "algebra", file, alg);
    r.add("d", d);
    MCatalogue cat = build_M(alg, d, g.verify().cap, g.decompose());
    CatContext ctx = cat.context(g.decompose());
    std::vector<std::size_t> ends;
    for (std::size_t i = 0; i < cat.members.size(); ++i) {
        if (cat.in_p(i)) continue;
        if (end && *end != cat.members[i].dim_label() && *end != std::to_string(i)) continue;
        ends.push_back(i);
    }
    if (end && ends.empty()) {
        throw ParseError("--end '" + *end + "' names no member of the catalogue outside P");
    }
    bool all_ok = true;
    nlohmann::ordered_json seqs = nlohmann::ordered_json::array();
    for (auto i : ends) {
        ComplexOfReps seq = d_almost_split(ctx, cat.members[i], d);
        AlmostSplitReport rep = verify_almost_split(ctx, seq, d);
        all_ok = all_ok && rep.ok();
        r.add("sequence ending at " + cat.members[i].dim_label(), seq.describe());
        r.add("verified " + cat.members[i].dim_label(), rep.ok() ? std::string("true") : rep.first_failure);
        seqs.push_back({{"end", cat.members[i].dim_label()}, {"terms", seq.describe()}, {"verified", rep.ok()}});
    }
    r.add("sequences", ends.size());
    r.verdict()["sequences"] = seqs;
    r.verdict()["all_verified"] = all_ok;
    out << r.text();
    return all_ok ? kExitVerified : kExitFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Higher Auslander–Reiten computations for acyclic bound quiver algebras", "higherar"};
    app.require_subcommand(1);
    Globals g;
    std::uint32_t prime = 0;
    std::uint64_t seed = 0;
    std::size_t cap = 0;
    auto* prime_opt = app.add_option("--prime", prime, "Work over GF(prime) instead of the file's field");
    auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized decomposition (default HIGHERAR_SEED or 1)");
    auto* cap_opt = app.add_option("--cap", cap, "Slice cap for 𝓜 and indecomposable cap for knitting");
    for (auto* o : {prime_opt, seed_opt, cap_opt}) o->configurable(false);
    app.fallthrough();

    std::string file, file_b;
    std::size_t d = 0, n = 0, m = 0;
    std::optional<std::size_t> opt_d;
    std::optional<std::string> end;
    bool mcat = false, ar = false, tau = false;

    auto* check = app.add_subcommand("check", "Verify the d-completeness conditions");
    check->add_option("alg", file)->required();
    check->add_option("--d", d)->required();

    auto* tensor = app.add_subcommand("tensor-check", "Run the tensor product pipeline on A⊗B");
    tensor->add_option("algA", file)->required();
    tensor->add_option("algB", file_b)->required();
    tensor->add_option("--n", n)->required();
    tensor->add_option("--m", m)->required();

    auto* quiver = app.add_subcommand("quiver", "Emit a DOT diagram");
    quiver->add_option("alg", file)->required();
    quiver->add_flag("--m-cat", mcat, "AR quiver of add 𝓜");
    quiver->add_flag("--ar", ar, "classical AR quiver by knitting");
    quiver->add_flag("--tau", tau, "dashed translate arrows");
    quiver->add_option("--d", opt_d, "d for --m-cat (default gl.dim) or tags for --ar");

    auto* classify = app.add_subcommand("classify", "Classify the indecomposables against 𝓜 and T");
    classify->add_option("alg", file)->required();
    classify->add_option("--d", d)->required();

    auto* sequences = app.add_subcommand("sequences", "d-almost split sequences in 𝓜");
    sequences->add_option("alg", file)->required();
    sequences->add_option("--d", d)->required();
    sequences->add_option("--end", end, "right end by dimension label or member index");

    std::vector<std::string> argv_store{"higherar"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInput;
    }
    if (prime_opt->count()) g.prime = prime;
    if (seed_opt->count()) g.seed = seed;
    if (cap_opt->count()) g.cap = cap;

    try {
        if (check->parsed()) return cmd_check(g, file, d, out);
        if (tensor->parsed()) return cmd_tensor_check(g, file, file_b, n, m, out);
        if (quiver->parsed()) return cmd_quiver(g, file, mcat, ar, tau, opt_d, out);
        if (classify->parsed()) return cmd_classify(g, file, d, out);
        if (sequences->parsed()) return cmd_sequences(g, file, d, end, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CyclicQuiver& e) {
        err << "error: CyclicQuiver: " << e.what() << "\n";
        return kExitInput;
    } catch (const InconsistentRelation& e) {
        err << "error: InconsistentRelation: " << e.what() << "\n";
        return kExitInput;
    } catch (const FieldMismatch& e) {
        err << "error: FieldMismatch: " << e.what() << "\n";
        return kExitInput;
    } catch (const DecompositionInconclusive& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const CapExceeded& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const CharTooSmall& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    } catch (const Error& e) {
        err << "failed: " << e.code() << ": " << e.what() << "\n";
        return kExitFailed;
    }
    return kExitInput;
}

}  // namespace higherar
