#pragma once

// Algebra description files, DOT rendering and verdict reports.
//
// File grammar (one statement per line, '#' starts a comment):
//   field q | field p=<prime>
//   vertex <name>
//   arrow <name>: <v> -> <w>
//   relation <±>[<coef>*]<a.b...> [<±>[<coef>*]<path> ...]
//   tensor <fileA> <fileB>
// A file with a tensor clause describes A⊗B and declares nothing else but
// (optionally) the field, which then applies to both factors.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "higherar/complete.hpp"
#include "higherar/knit.hpp"

namespace higherar {

struct ParseOptions {
    std::optional<FieldSpec> field_override;  ///< replaces any field statement
    std::filesystem::path base_dir;           ///< resolves tensor clauses
};

/// Throws ParseError ("<source>:<line>:<column>: message"), CyclicQuiver or InconsistentRelation.
AlgebraPtr parse_algebra(std::string_view text, const ParseOptions& opt = {}, const std::string& source = "<text>");
AlgebraPtr load_algebra(const std::filesystem::path& file, std::optional<FieldSpec> field_override = std::nullopt);

/// Explicit presentation in the file grammar; parse_algebra(print_algebra(A))
/// has the same fingerprint as A.
std::string print_algebra(const Algebra& alg);

/// Dimension vector as grid rows (B-vertices from last to first) for tensor
/// algebras, a single row otherwise.
std::vector<std::string> dim_grid(const Rep& x);

struct DotOptions {
    std::string graph_name = "G";
    bool tau_arrows = false;  ///< dashed arrows from a module to its translate
};

std::string quiver_dot(const Quiver& q, const DotOptions& opt = {});
/// Irreducible maps and (optionally) τ arrows; node shapes follow `tags` when given.
std::string ar_quiver_dot(const ARQuiver& ar, const DotOptions& opt = {}, const ModuleClassification* tags = nullptr);
/// The AR quiver of add 𝓜 with dashed τ_d arrows when requested.
std::string catalogue_dot(const MCatalogue& cat, const DotOptions& opt = {}, const DecomposeOptions& dopt = {});

/// Irreducible maps in add G: dim rad(X, Y) / rad²(X, Y) inside the context.
std::vector<ARArrow> irreducible_arrows(const CatContext& ctx);

/// Line-oriented report: "key = value" lines, then a JSON verdict block.
class Report {
public:
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, bool value);
    void add(const std::string& key, std::size_t value);
    nlohmann::ordered_json& verdict() { return verdict_; }
    const nlohmann::ordered_json& verdict() const { return verdict_; }
    std::string text() const;

private:
    std::vector<std::pair<std::string, std::string>> lines_;
    nlohmann::ordered_json verdict_ = nlohmann::ordered_json::object();
};

inline constexpr const char* kVerdictBegin = "--- verdict ---";

nlohmann::ordered_json verdict_json(const Verdict& v);
/// Adds the flags of `v` to `r` with keys prefixed by `prefix`.
void add_verdict_lines(Report& r, const Verdict& v, const std::string& prefix = "");

}  // namespace higherar
