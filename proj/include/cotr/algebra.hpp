#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cotr/linalg.hpp"

namespace cotr {

using Vec = std::vector<Scalar>;

struct Arrow {
  std::string name;
  int source = 0;
  int target = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& label) const;
  int arrow_index(const std::string& name) const;
  void validate() const;
};

// A path is a sequence of arrow indices in traversal order (first arrow first).
using Path = std::vector<int>;

struct Relation {
  std::vector<std::pair<long long, Path>> terms;
};

struct Presentation {
  Quiver quiver;
  std::vector<Relation> relations;
  int length_bound = 0;
  // Per basis element, its standard path (empty for vertex idempotents).
  std::vector<Path> basis_paths;
};

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

// Data for a finite-dimensional basic algebra in split form: the basis consists of
// the vertex idempotents and radical elements, each lying in some e_l A e_r.
struct AlgebraSpec {
  Scalar p = 2;
  std::string name;
  std::vector<std::string> labels;
  std::vector<std::string> vertex_labels;
  std::vector<int> idempotent;  // basis index of e_v
  std::vector<int> left_vertex, right_vertex;
  // table[i * dim + j] = sparse expansion of b_i * b_j
  std::vector<std::vector<std::pair<int, Scalar>>> table;
  std::optional<Presentation> presentation;
};

class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  // Validates unit, Peirce, radical and (for small dim) associativity laws.
  static AlgebraPtr make(AlgebraSpec spec);

  Scalar p() const { return s_.p; }
  int dim() const { return int(s_.labels.size()); }
  int num_vertices() const { return int(s_.vertex_labels.size()); }
  const std::string& name() const { return s_.name; }
  const std::vector<std::string>& labels() const { return s_.labels; }
  const std::vector<std::string>& vertex_labels() const { return s_.vertex_labels; }
  int idempotent(int v) const { return s_.idempotent[v]; }
  int left_vertex(int b) const { return s_.left_vertex[b]; }
  int right_vertex(int b) const { return s_.right_vertex[b]; }
  bool is_idempotent_basis(int b) const { return vertex_of_idempotent_[b] >= 0; }
  int vertex_of_idempotent(int b) const { return vertex_of_idempotent_[b]; }
  const std::vector<std::pair<int, Scalar>>& mul(int i, int j) const {
    return s_.table[std::size_t(i) * dim() + j];
  }
  const std::vector<int>& radical_basis() const { return radical_; }
  // Radical elements forming a basis of J modulo J^2; together with the idempotents
  // they generate the algebra.
  const std::vector<int>& radical_generators() const { return gens_; }
  int loewy_length() const { return loewy_; }
  const std::optional<Presentation>& presentation() const { return s_.presentation; }
  const AlgebraSpec& spec() const { return s_; }
  int label_index(const std::string& label) const;

  Vec product(const Vec& x, const Vec& y) const;
  Vec basis_vector(int i) const;
  Vec unit() const;

  // Structural equality (same p, labels, vertices, table).
  bool same_as(const Algebra& o) const;

  // Cached opposite; opposite(opposite(a)) returns a itself while a is alive.
  AlgebraPtr opposite() const;

 private:
  explicit Algebra(AlgebraSpec s) : s_(std::move(s)) {}
  void validate_and_index();

  AlgebraSpec s_;
  std::vector<int> vertex_of_idempotent_;
  std::vector<int> radical_, gens_;
  int loewy_ = 0;
  mutable std::mutex op_mu_;
  mutable std::shared_ptr<const Algebra> op_;
  mutable std::weak_ptr<const Algebra> op_origin_;
};

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

AlgebraPtr path_algebra_quotient(const Quiver& q, const std::vector<Relation>& rels,
                                 int length_bound, Scalar p = 2, const std::string& name = "");

AlgebraPtr opposite(const AlgebraPtr& a);

struct Enveloping {
  AlgebraPtr left, right, env;
  // Basis index of b_i (x) c_j in env is i * dim(right) + j.
  int pair_index(int i, int j) const { return i * right->dim() + j; }
};
Enveloping enveloping(const AlgebraPtr& r, const AlgebraPtr& s);

// Basis indices spanning the Jacobson radical, checked nilpotent.
std::vector<int> radical(const AlgebraPtr& a);

// The one-dimensional algebra F_p on a single vertex.
AlgebraPtr field_algebra(Scalar p);

}  // namespace cotr
