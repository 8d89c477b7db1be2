#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cotr/module.hpp"

namespace cotr::io {

// Line-oriented files: "[section]" headers, "key = value" lines, '#' comments. Matrices are
// rows of integers separated by ';' (entries reduced mod p).
//
// .alg   [algebra] name, p, length_bound; then either [quiver] (vertices = ..., "a = 1 -> 2")
//        and [relations] (one relation per line: "x x", "a b - c d", "rad^2"), or the explicit
//        form [basis] ("e1 = idempotent 1", "b = 1 2" for b in e_1 A e_2) and [products]
//        ("x * y = 1 z + 2 w") listing the nonzero products.
// .mod   [module] algebra = <file.alg>, dims = per-vertex dimensions; then [arrows] with one
//        matrix per arrow (target block x source block), or [action] with one matrix per
//        non-idempotent basis element.
// .bimod [bimodule] left = <file.alg>, right = self | endomorphisms | <file.alg>, dim,
//        left_vertices, right_vertices (one vertex label per basis vector); then [left_action]
//        and [right_action] (omitted for right = endomorphisms). Presented algebras need only
//        their arrows listed; other basis elements are derived. With right = endomorphisms the
//        left module may instead be a reference, module = <file.mod>.
//        A module's algebra reference may also be "<file.bimod>:right" for S-modules.
// .hom   [morphism] source = <file.mod>, target = <file.mod>, matrix = <rows>.

struct Section {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;  // key, value; bare lines have key ""
  std::vector<int> lines;
};
std::vector<Section> parse_sections(const std::string& text, const std::string& origin);

Matrix parse_matrix(const std::string& value, int rows, int cols, Scalar p, const std::string& what);
std::string format_matrix(const Matrix& m);

AlgebraPtr parse_algebra(const std::string& text, const std::string& origin = "<text>");
std::string export_algebra(const Algebra& a);

Module parse_module(const std::string& text, const AlgebraPtr& a, const std::string& origin = "<text>");
// algebra_ref is written as the algebra key when non-empty.
std::string export_module(const Module& m, const std::string& algebra_ref = "");

// S = nullptr builds S = End(left module) and its right action.
Bimodule parse_bimodule(const std::string& text, const AlgebraPtr& R, const AlgebraPtr& S,
                        const std::string& origin = "<text>");
std::string export_bimodule(const Bimodule& b, const std::string& left_ref = "", const std::string& right_ref = "");
std::string export_morphism(const Morphism& f, const std::string& source_ref, const std::string& target_ref);

// SHA-256 of the canonical export, "sha256:<hex>".
std::string digest_text(const std::string& text);
std::string digest(const Algebra& a);
std::string digest(const Module& m);
std::string digest(const Bimodule& b);

// Loads files, following algebra/module references relative to the referring file and
// sharing one AlgebraPtr per algebra file.
class Loader {
 public:
  explicit Loader(std::vector<std::filesystem::path> search = {}) : search_(std::move(search)) {}

  // Resolves a name against the working directory, then the search directories (recursively,
  // also trying the given extension).
  std::filesystem::path resolve(const std::string& name, const std::string& ext = "") const;

  AlgebraPtr algebra(const std::string& path);
  // expected, when set, must agree with the file's own algebra reference.
  Module module(const std::string& path, const AlgebraPtr& expected = nullptr);
  Bimodule bimodule(const std::string& path);
  Morphism morphism(const std::string& path);

  // Digest of the object loaded from a resolved path.
  const std::map<std::string, std::string>& digests() const { return digests_; }

 private:
  std::filesystem::path relative_to(const std::filesystem::path& base, const std::string& ref) const;
  std::vector<std::filesystem::path> search_;
  std::map<std::string, AlgebraPtr> algebras_;
  std::map<std::string, Bimodule> bimodules_;
  std::map<std::string, std::string> digests_;
};

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& text);

}  // namespace cotr::io
