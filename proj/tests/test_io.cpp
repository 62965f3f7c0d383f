#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "corpus.hpp"
#include "higherar/cli.hpp"
#include "higherar/io.hpp"

using namespace higherar;

namespace {

const std::filesystem::path kData = HIGHERAR_DATA_DIR;

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
}

// Cartan matrix c[i][j] = dim e_i Λ e_j.
std::vector<std::vector<std::size_t>> cartan(const Algebra& a) {
    std::vector<std::vector<std::size_t>> c(a.vertex_count(), std::vector<std::size_t>(a.vertex_count()));
    for (std::size_t i = 0; i < a.vertex_count(); ++i) {
        for (std::size_t j = 0; j < a.vertex_count(); ++j) c[i][j] = a.basis_between(i, j).size();
    }
    return c;
}

std::size_t arrows_between(const Quiver& q, std::size_t s, std::size_t t) {
    return static_cast<std::size_t>(
        std::count_if(q.arrows().begin(), q.arrows().end(), [&](const Arrow& a) { return a.source == s && a.target == t; }));
}

// A vertex bijection preserving arrow counts and the Cartan matrix.
bool same_up_to_relabeling(const Algebra& a, const Algebra& b) {
    if (a.vertex_count() != b.vertex_count() || a.dim() != b.dim()) return false;
    const auto ca = cartan(a), cb = cartan(b);
    std::vector<std::size_t> perm(a.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < perm.size() && ok; ++i) {
            for (std::size_t j = 0; j < perm.size() && ok; ++j) {
                ok = ca[i][j] == cb[perm[i]][perm[j]] &&
                     arrows_between(a.quiver(), i, j) == arrows_between(b.quiver(), perm[i], perm[j]);
            }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

struct CliRun {
    int code = 0;
    std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliRun r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name) { return (kData / name).string(); }

}  // namespace

TEST_CASE("parsing algebra files") {
    SUBCASE("two vertices and one arrow give A2") {
        AlgebraPtr a = parse_algebra("vertex 1\nvertex 2\narrow a: 2 -> 1\n");
        CHECK(a->dim() == 3);
        CHECK(a->fingerprint() == corpus::a2()->fingerprint());
    }
    SUBCASE("commutative square") {
        AlgebraPtr a = load_algebra(kData / "square.alg");
        CHECK(a->vertex_count() == 4);
        CHECK(a->quiver().arrow_count() == 4);
        CHECK(a->relations().size() == 1);
        // 4 trivial paths, 4 arrows and the one surviving length-two path.
        CHECK(a->dim() == 9);
    }
    SUBCASE("tensor clause matches the explicit square") {
        AlgebraPtr t = load_algebra(kData / "a2_squared.alg");
        AlgebraPtr s = load_algebra(kData / "square.alg");
        REQUIRE(t->factors().has_value());
        CHECK(same_up_to_relabeling(*t, *s));
        CHECK_FALSE(same_up_to_relabeling(*t, *load_algebra(kData / "d4_subspace.alg")));
    }
    SUBCASE("fields and coefficients") {
        AlgebraPtr q = parse_algebra("field q\nvertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a: 1 -> 2\narrow b: 2 -> 4\n"
                                     "arrow c: 1 -> 3\narrow e: 3 -> 4\nrelation +a.b -3/2*c.e\n",
                                     {}, "inline");
        CHECK(q->field().is_rational());
        REQUIRE(q->relations().size() == 1);
        CHECK(q->relations()[0].terms[1].coef == Scalar(q->field(), mpq_class(-3, 2)));
        ParseOptions opt;
        opt.field_override = FieldSpec::prime(10007);
        CHECK(parse_algebra("field q\nvertex 1\n", opt)->field().characteristic() == 10007);
        CHECK(parse_algebra("vertex 1\n")->field().characteristic() == kDefaultPrime);
    }
    SUBCASE("comments and blank lines") {
        CHECK(parse_algebra("# only a point\n\nvertex o   # here\n")->dim() == 1);
    }
}

TEST_CASE("parse errors carry line and column") {
    auto message = [](const std::string& text) {
        try {
            parse_algebra(text, {}, "f");
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("vertex 1\nvertex 1\n").find("f:2:8:") != std::string::npos);
    CHECK(message("vertex 1\nvertex 2\narrow a: 1 -> 3\n").find("f:3:15:") != std::string::npos);
    CHECK(message("vertex 1\nvertex 2\narrow a: 1 -> 2\narrow a: 2 -> 1\n").find("duplicate arrow") != std::string::npos);
    CHECK(message("vertex 1\nvertex 2\narrow a: 1 -> 2\nrelation a.a\n").find("f:4:10:") != std::string::npos);
    CHECK(message("vertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation +b.a\n").find("does not compose") !=
          std::string::npos);
    CHECK(message("vertex 1\nvertex 2\narrow a: 1 -> 2\nrelation +a.z\n").find("unknown arrow 'z'") != std::string::npos);
    CHECK(message("field p=12\nvertex 1\n").find("f:1:7:") != std::string::npos);
    CHECK(message("vertex 1\ntensor a b\n").find("cannot be combined") != std::string::npos);
    CHECK(message("frobnicate\n").find("unknown statement") != std::string::npos);
    CHECK(message("").find("no vertices") != std::string::npos);
    CHECK_THROWS_AS(parse_algebra("vertex 1\nvertex 2\narrow a: 1 -> 2\narrow b: 2 -> 1\n"), CyclicQuiver);
    CHECK_THROWS_AS(parse_algebra("vertex 1\nvertex 2\nvertex 3\narrow a: 1 -> 2\narrow b: 2 -> 3\narrow c: 1 -> 2\n"
                                  "relation +a.b -c\n"),
                    InconsistentRelation);
}

TEST_CASE("printing round-trips") {
    for (const char* f : {"a2.alg", "a3_linear.alg", "a3_bipartite.alg", "d4_subspace.alg", "square.alg", "a2_squared.alg",
                          "a3_zero.alg"}) {
        CAPTURE(f);
        AlgebraPtr a = load_algebra(kData / f);
        const std::string text = print_algebra(*a);
        AlgebraPtr b = parse_algebra(text);
        CHECK(b->fingerprint() == a->fingerprint());
        CHECK(print_algebra(*b) == text);
    }
    AlgebraPtr q = parse_algebra("field q\nvertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a: 1 -> 2\narrow b: 2 -> 4\n"
                                 "arrow c: 1 -> 3\narrow e: 3 -> 4\nrelation +a.b -3/2*c.e\n");
    CHECK(parse_algebra(print_algebra(*q))->fingerprint() == q->fingerprint());
}

TEST_CASE("DOT output") {
    SUBCASE("one vertex") {
        const std::string dot = quiver_dot(corpus::point()->quiver());
        CHECK(dot.rfind("digraph", 0) == 0);
        CHECK(count(dot, "[label=") == 1);
        CHECK(count(dot, "->") == 0);
    }
    SUBCASE("catalogue of the square") {
        AlgebraPtr sq = load_algebra(kData / "a2_squared.alg");
        MCatalogue cat = build_M(sq, 2);
        DotOptions opt;
        opt.tau_arrows = true;
        const std::string dot = catalogue_dot(cat, opt);
        CHECK(count(dot, "[label=") == 5);
        CHECK(count(dot, "->") == 6);
        CHECK(count(dot, "style=dashed") == 1);
        CHECK(dot.find("label=\"00\\n10\"") != std::string::npos);
        CHECK(catalogue_dot(cat, opt) == dot);
    }
    SUBCASE("catalogue of the subspace quiver times A3") {
        AlgebraPtr lam = tensor_algebra(corpus::d4_subspace(), corpus::a3_linear());
        const std::string dot = catalogue_dot(build_M(lam, 2));
        CHECK(count(dot, "[label=") == 24);
    }
    SUBCASE("knitted quiver with tags") {
        AlgebraPtr a3 = corpus::a3_linear();
        ARQuiver ar = enumerate_indecomposables(a3);
        MCatalogue cat = build_M(a3, 1);
        ModuleClassification cls = classify_modules(ar, cat);
        DotOptions opt;
        opt.tau_arrows = true;
        const std::string dot = ar_quiver_dot(ar, opt, &cls);
        CHECK(count(dot, "[label=") == 6);
        CHECK(count(dot, "style=dashed") == 3);
        CHECK(count(dot, "xlabel") == 6);
    }
}

TEST_CASE("grid labels") {
    auto a2 = corpus::a2();
    auto sq = tensor_algebra(a2, a2);
    Rep m = tensor_rep(sq, simple(a2, 0), injective(a2, 0));
    CHECK(dim_grid(m) == std::vector<std::string>{"10", "10"});
    CHECK(dim_grid(projective(a2, 1)) == std::vector<std::string>{"11"});
}

TEST_CASE("irreducible maps in a context") {
    auto a3 = corpus::a3_linear();
    ARQuiver ar = enumerate_indecomposables(a3);
    std::vector<ARArrow> arrows = irreducible_arrows(ar.context());
    std::size_t knitted = 0, found = 0;
    for (const auto& a : ar.arrows) knitted += a.multiplicity;
    for (const auto& a : arrows) found += a.multiplicity;
    CHECK(found == knitted);
    CHECK(found == 6);
}

TEST_CASE("command line") {
    SUBCASE("tensor-check on the square") {
        CliRun r = cli({"tensor-check", data("a2.alg"), data("a2.alg"), "--n", "1", "--m", "1"});
        CHECK(r.code == kExitVerified);
        CHECK(r.out.find("\n2-complete = true\n") != std::string::npos);
        CHECK(r.out.find("\nacyclic = true\n") != std::string::npos);
        CHECK(r.out.find("\n2-representation-finite = false\n") != std::string::npos);
        const auto json = nlohmann::json::parse(r.out.substr(r.out.find(kVerdictBegin) + std::string(kVerdictBegin).size()));
        CHECK(json["tensor"]["complete"]["value"] == true);
        CHECK(json["tensor"]["catalogue"]["T"].size() == 4);
    }
    SUBCASE("check fails with exit code 1") {
        CliRun r = cli({"check", data("a3_zero.alg"), "--d", "1"});
        CHECK(r.code == kExitFailed);
        CHECK(r.out.find("1-complete = false") != std::string::npos);
    }
    SUBCASE("input errors give exit code 2") {
        CHECK(cli({"check", data("missing.alg"), "--d", "1"}).code == kExitInput);
        CHECK(cli({"frobnicate"}).code == kExitInput);
        CHECK(cli({"check", data("a2.alg")}).code == kExitInput);
        CHECK(cli({"sequences", data("a2_squared.alg"), "--d", "2", "--end", "9999"}).code == kExitInput);
    }
    SUBCASE("exhausted caps are inconclusive") {
        CHECK(cli({"--cap", "3", "quiver", data("d4_subspace.alg"), "--ar"}).code == kExitInconclusive);
    }
    SUBCASE("sequences") {
        CliRun r = cli({"sequences", data("a2_squared.alg"), "--d", "2", "--end", "0100"});
        CHECK(r.code == kExitVerified);
        CHECK(r.out.find("0010 -> 1111 -> 0101+1100 -> 0100") != std::string::npos);
    }
    SUBCASE("classify") {
        CliRun r = cli({"classify", data("a2_squared.alg"), "--d", "2"});
        CHECK(r.code == kExitVerified);
        CHECK(r.out.find("count in-add-T = 4") != std::string::npos);
        CHECK(r.out.find("count in-M-not-T = 1") != std::string::npos);
    }
    SUBCASE("seed from the environment") {
        const std::vector<std::string> args{"quiver", data("a2_squared.alg"), "--m-cat", "--tau", "--d", "2"};
        const std::string plain = cli(args).out;
        ::setenv("HIGHERAR_SEED", "12345", 1);
        const std::string seeded = cli(args).out;
        ::setenv("HIGHERAR_SEED", "nonsense", 1);
        const int bad = cli(args).code;
        ::unsetenv("HIGHERAR_SEED");
        CHECK(seeded == plain);
        CHECK(bad == kExitInput);
    }
    SUBCASE("prime override") {
        CliRun r = cli({"--prime", "10007", "check", data("a2.alg"), "--d", "1"});
        CHECK(r.code == kExitVerified);
        CHECK(r.out.find("algebra field = p=10007") != std::string::npos);
    }
}
