#include "cotr/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cotr {

int Quiver::vertex_index(const std::string& label) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == label) return int(i);
  return -1;
}

int Quiver::arrow_index(const std::string& name) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return int(i);
  return -1;
}

void Quiver::validate() const {
  std::set<std::string> seen(vertices.begin(), vertices.end());
  if (seen.size() != vertices.size()) throw InvalidInput("duplicate vertex label");
  if (vertices.empty()) throw InvalidInput("quiver has no vertices");
  std::set<std::string> names;
  for (auto& a : arrows) {
    if (!names.insert(a.name).second) throw InvalidInput("duplicate arrow name " + a.name);
    if (a.source < 0 || a.target < 0 || a.source >= int(vertices.size()) ||
        a.target >= int(vertices.size()))
      throw InvalidInput("arrow " + a.name + " has an undeclared endpoint");
  }
}

namespace {

using Sparse = std::vector<std::pair<int, Scalar>>;

Sparse normalize(Sparse s, Scalar p) {
  std::map<int, std::uint64_t> acc;
  for (auto [k, c] : s) acc[k] = (acc[k] + c) % p;
  Sparse out;
  for (auto [k, c] : acc)
    if (c) out.emplace_back(k, Scalar(c));
  return out;
}

}  // namespace

AlgebraPtr Algebra::make(AlgebraSpec spec) {
  std::shared_ptr<Algebra> a(new Algebra(std::move(spec)));
  a->validate_and_index();
  return a;
}

int Algebra::label_index(const std::string& label) const {
  for (int i = 0; i < dim(); ++i)
    if (s_.labels[i] == label) return i;
  return -1;
}

void Algebra::validate_and_index() {
  const Scalar p = s_.p;
  if (!is_prime(p)) throw InvalidInput("characteristic " + std::to_string(p) + " is not prime");
  const int n = dim();
  const int nv = num_vertices();
  if (int(s_.idempotent.size()) != nv || int(s_.left_vertex.size()) != n ||
      int(s_.right_vertex.size()) != n || s_.table.size() != std::size_t(n) * n)
    throw InvalidInput("algebra data has inconsistent sizes");
  vertex_of_idempotent_.assign(n, -1);
  for (int v = 0; v < nv; ++v) {
    int b = s_.idempotent[v];
    if (b < 0 || b >= n || vertex_of_idempotent_[b] >= 0) throw InvalidInput("bad idempotent index");
    vertex_of_idempotent_[b] = v;
    if (s_.left_vertex[b] != v || s_.right_vertex[b] != v) throw InvalidInput("idempotent vertex mismatch");
  }
  for (int b = 0; b < n; ++b)
    if (s_.left_vertex[b] < 0 || s_.left_vertex[b] >= nv || s_.right_vertex[b] < 0 ||
        s_.right_vertex[b] >= nv)
      throw InvalidInput("basis element vertex out of range");
  for (auto& t : s_.table) {
    for (auto& [k, c] : t)
      if (k < 0 || k >= n) throw InvalidInput("structure constant index out of range");
    t = normalize(t, p);
  }
  // Peirce and unit laws.
  for (int w = 0; w < nv; ++w) {
    int e = s_.idempotent[w];
    for (int b = 0; b < n; ++b) {
      Sparse want_l = s_.left_vertex[b] == w ? Sparse{{b, 1}} : Sparse{};
      Sparse want_r = s_.right_vertex[b] == w ? Sparse{{b, 1}} : Sparse{};
      if (mul(e, b) != want_l || mul(b, e) != want_r)
        throw InvalidInput("vertex idempotents do not act as Peirce projections on " + s_.labels[b]);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& t = mul(i, j);
      if (!t.empty() && s_.right_vertex[i] != s_.left_vertex[j])
        throw InvalidInput("nonzero product across distinct vertices");
      for (auto [k, c] : t) {
        (void)c;
        if (s_.left_vertex[k] != s_.left_vertex[i] || s_.right_vertex[k] != s_.right_vertex[j])
          throw InvalidInput("product leaves its Peirce component");
        if ((!is_idempotent_basis(i) || !is_idempotent_basis(j)) && is_idempotent_basis(k))
          throw InvalidInput("radical is not closed under multiplication");
      }
    }
  radical_.clear();
  for (int b = 0; b < n; ++b)
    if (!is_idempotent_basis(b)) radical_.push_back(b);
  if (n <= 64) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Vec l(n, 0), r(n, 0);
          for (auto [m, c] : mul(i, j))
            for (auto [q, d] : mul(m, k)) l[q] = Scalar((l[q] + std::uint64_t(c) * d) % p);
          for (auto [m, c] : mul(j, k))
            for (auto [q, d] : mul(i, m)) r[q] = Scalar((r[q] + std::uint64_t(c) * d) % p);
          if (l != r) throw InvalidInput("multiplication is not associative");
        }
  }
  // Powers of J; J^2 determines the generators.
  const int nr = int(radical_.size());
  Matrix J(n, nr, p);
  for (int c = 0; c < nr; ++c) J.at(radical_[c], c) = 1;
  Matrix power = J;
  Matrix J2(n, 0, p);
  loewy_ = nr ? 2 : 1;
  while (power.cols() > 0) {
    std::vector<Matrix> cols;
    for (int r : radical_)
      for (int c = 0; c < power.cols(); ++c) {
        Vec y = product(basis_vector(r), power.col_vector(c));
        cols.push_back(Matrix::column(y, p));
      }
    Matrix next = cols.empty() ? Matrix(n, 0, p) : image_basis(hcat(cols, n, p));
    if (loewy_ == 2) J2 = next;
    if (next.cols() == power.cols()) throw UnsupportedPresentation("radical is not nilpotent");
    power = next;
    if (power.cols() > 0) ++loewy_;
  }
  gens_.clear();
  Matrix span = J2;
  for (int r : radical_) {
    Matrix e(n, 1, p);
    e.at(r, 0) = 1;
    if (!in_span(span, e)) {
      gens_.push_back(r);
      span = hcat({span, e}, n, p);
    }
  }
}

Vec Algebra::product(const Vec& x, const Vec& y) const {
  const Scalar p = s_.p;
  const int n = dim();
  std::vector<std::uint64_t> acc(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < n; ++j) {
      if (!y[j]) continue;
      std::uint64_t c = std::uint64_t(x[i]) * y[j] % p;
      for (auto [k, d] : mul(i, j)) acc[k] = (acc[k] + c * d) % p;
    }
  }
  Vec out(n);
  for (int k = 0; k < n; ++k) out[k] = Scalar(acc[k]);
  return out;
}

Vec Algebra::basis_vector(int i) const {
  Vec v(dim(), 0);
  v[i] = 1;
  return v;
}

Vec Algebra::unit() const {
  Vec v(dim(), 0);
  for (int e : s_.idempotent) v[e] = 1;
  return v;
}

bool Algebra::same_as(const Algebra& o) const {
  return s_.p == o.s_.p && s_.labels == o.s_.labels && s_.vertex_labels == o.s_.vertex_labels &&
         s_.idempotent == o.s_.idempotent && s_.left_vertex == o.s_.left_vertex &&
         s_.right_vertex == o.s_.right_vertex && s_.table == o.s_.table;
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && a->same_as(*b));
}

namespace {

std::string op_name(const std::string& n) {
  const std::string suffix = "^op";
  if (n.size() > suffix.size() && n.compare(n.size() - suffix.size(), suffix.size(), suffix) == 0)
    return n.substr(0, n.size() - suffix.size());
  return n + suffix;
}

}  // namespace

AlgebraPtr Algebra::opposite() const {
  std::lock_guard<std::mutex> lock(op_mu_);
  if (op_) return op_;
  if (auto origin = op_origin_.lock()) return origin;
  AlgebraSpec o = s_;
  o.name = op_name(s_.name);
  std::swap(o.left_vertex, o.right_vertex);
  const int n = dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) o.table[std::size_t(i) * n + j] = s_.table[std::size_t(j) * n + i];
  if (s_.presentation) {
    Presentation pr = *s_.presentation;
    for (auto& a : pr.quiver.arrows) std::swap(a.source, a.target);
    for (auto& r : pr.relations)
      for (auto& t : r.terms) std::reverse(t.second.begin(), t.second.end());
    for (auto& bp : pr.basis_paths) std::reverse(bp.begin(), bp.end());
    o.presentation = std::move(pr);
  }
  std::shared_ptr<Algebra> a(new Algebra(std::move(o)));
  a->validate_and_index();
  a->op_origin_ = weak_from_this();
  op_ = a;
  return op_;
}

AlgebraPtr opposite(const AlgebraPtr& a) { return a->opposite(); }

namespace {

struct Degree {
  std::vector<Path> paths;
  std::map<Path, int> index;
  Matrix reduced;           // rows span the ideal in this degree
  std::vector<int> pivot_row;  // per path: row of the rref where it is a pivot, or -1
  std::vector<int> basis;      // per path: basis index when standard, else -1
};

std::string path_label(const Quiver& q, const Path& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? "." : "") + q.arrows[path[i]].name;
  return s;
}

}  // namespace

AlgebraPtr path_algebra_quotient(const Quiver& q, const std::vector<Relation>& rels,
                                 int length_bound, Scalar p, const std::string& name) {
  q.validate();
  if (!is_prime(p)) throw InvalidInput("characteristic " + std::to_string(p) + " is not prime");
  if (length_bound < 1) throw InvalidInput("length_bound must be at least 1");
  const int na = int(q.arrows.size());
  auto src = [&](const Path& pa) { return q.arrows[pa.front()].source; };
  auto tgt = [&](const Path& pa) { return q.arrows[pa.back()].target; };
  for (auto& r : rels) {
    if (r.terms.empty()) throw InvalidInput("empty relation");
    std::size_t len = r.terms.front().second.size();
    for (auto& [c, pa] : r.terms) {
      (void)c;
      if (pa.size() < 2) throw InvalidInput("relation paths must have length at least 2");
      if (pa.size() != len) throw InvalidInput("only length-homogeneous relations are supported");
      for (int a : pa)
        if (a < 0 || a >= na) throw InvalidInput("relation uses an unknown arrow");
      for (std::size_t k = 1; k < pa.size(); ++k)
        if (q.arrows[pa[k - 1]].target != q.arrows[pa[k]].source)
          throw InvalidInput("relation path is not composable");
      if (src(pa) != src(r.terms.front().second) || tgt(pa) != tgt(r.terms.front().second))
        throw InvalidInput("relation terms are not parallel");
    }
  }

  std::vector<Degree> deg(1);  // deg[0] unused; vertices handled separately
  int top = 0;
  for (int d = 1; d <= length_bound + 1; ++d) {
    Degree D;
    if (d == 1) {
      for (int a = 0; a < na; ++a) D.paths.push_back({a});
    } else {
      for (auto& pa : deg[d - 1].paths)
        for (int a = 0; a < na; ++a)
          if (q.arrows[a].source == tgt(pa)) {
            Path x = pa;
            x.push_back(a);
            D.paths.push_back(x);
          }
    }
    for (std::size_t i = 0; i < D.paths.size(); ++i) D.index[D.paths[i]] = int(i);
    const int np = int(D.paths.size());
    std::vector<Vec> gens;
    if (d >= 2) {
      const Degree& P = deg[d - 1];
      for (int r = 0; r < P.reduced.rows(); ++r) {
        for (int a = 0; a < na; ++a) {
          Vec right(np, 0), left(np, 0);
          bool rn = false, ln = false;
          for (int c = 0; c < P.reduced.cols(); ++c) {
            Scalar v = P.reduced(r, c);
            if (!v) continue;
            const Path& pa = P.paths[c];
            if (tgt(pa) == q.arrows[a].source) {
              Path x = pa;
              x.push_back(a);
              right[D.index[x]] = v;
              rn = true;
            }
            if (src(pa) == q.arrows[a].target) {
              Path x{a};
              x.insert(x.end(), pa.begin(), pa.end());
              left[D.index[x]] = v;
              ln = true;
            }
          }
          if (rn) gens.push_back(right);
          if (ln) gens.push_back(left);
        }
      }
      for (auto& rel : rels) {
        if (int(rel.terms.front().second.size()) != d) continue;
        Vec g(np, 0);
        for (auto& [c, pa] : rel.terms) g[D.index[pa]] = Scalar((g[D.index[pa]] + reduce(c, p)) % p);
        gens.push_back(g);
      }
    }
    Matrix G(int(gens.size()), np, p);
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (int c = 0; c < np; ++c) G.at(int(i), c) = gens[i][c];
    auto rr = rref(G);
    D.reduced = rr.reduced.block(0, 0, int(rr.pivots.size()), np);
    D.pivot_row.assign(np, -1);
    for (std::size_t k = 0; k < rr.pivots.size(); ++k) D.pivot_row[rr.pivots[k]] = int(k);
    D.basis.assign(np, -1);
    bool any = false;
    for (int c = 0; c < np; ++c)
      if (D.pivot_row[c] < 0) any = true;
    if (!any) break;
    if (d == length_bound + 1)
      throw NotFiniteDimensional("nonzero paths of length " + std::to_string(d) +
                                 " survive; the arrow ideal is not nilpotent within length_bound " +
                                 std::to_string(length_bound));
    deg.push_back(std::move(D));
    top = d;
  }

  AlgebraSpec s;
  s.p = p;
  s.name = name;
  s.vertex_labels = q.vertices;
  Presentation pr;
  pr.quiver = q;
  pr.relations = rels;
  pr.length_bound = length_bound;
  const int nv = int(q.vertices.size());
  for (int v = 0; v < nv; ++v) {
    s.idempotent.push_back(int(s.labels.size()));
    s.labels.push_back("e" + q.vertices[v]);
    s.left_vertex.push_back(v);
    s.right_vertex.push_back(v);
    pr.basis_paths.push_back({});
  }
  for (int d = 1; d <= top; ++d) {
    Degree& D = deg[d];
    for (std::size_t c = 0; c < D.paths.size(); ++c) {
      if (D.pivot_row[c] >= 0) continue;
      D.basis[c] = int(s.labels.size());
      s.labels.push_back(path_label(q, D.paths[c]));
      s.left_vertex.push_back(tgt(D.paths[c]));
      s.right_vertex.push_back(src(D.paths[c]));
      pr.basis_paths.push_back(D.paths[c]);
    }
  }
  const int n = int(s.labels.size());
  auto normal_form = [&](const Path& pa) -> Sparse {
    int d = int(pa.size());
    if (d > top) return {};
    Degree& D = deg[d];
    int c = D.index.at(pa);
    if (D.pivot_row[c] < 0) return {{D.basis[c], 1}};
    Sparse out;
    int r = D.pivot_row[c];
    for (int k = 0; k < D.reduced.cols(); ++k) {
      Scalar v = D.reduced(r, k);
      if (k != c && v) out.emplace_back(D.basis[k], p - v);
    }
    return out;
  };
  s.table.assign(std::size_t(n) * n, {});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Path& pi = pr.basis_paths[i];
      const Path& pj = pr.basis_paths[j];
      Sparse& t = s.table[std::size_t(i) * n + j];
      if (pi.empty() && pj.empty()) {
        if (i == j) t = {{i, 1}};
      } else if (pi.empty()) {
        if (tgt(pj) == s.left_vertex[i]) t = {{j, 1}};
      } else if (pj.empty()) {
        if (src(pi) == s.left_vertex[j]) t = {{i, 1}};
      } else if (tgt(pj) == src(pi)) {
        Path x = pj;
        x.insert(x.end(), pi.begin(), pi.end());
        t = normal_form(x);
      }
    }
  s.presentation = std::move(pr);
  return Algebra::make(std::move(s));
}

namespace {

AlgebraPtr tensor_algebra(const AlgebraPtr& A, const AlgebraPtr& B, const std::string& name) {
  AlgebraSpec s;
  s.p = A->p();
  s.name = name;
  const int da = A->dim(), db = B->dim(), nb = B->num_vertices();
  for (int v = 0; v < A->num_vertices(); ++v)
    for (int u = 0; u < nb; ++u) s.vertex_labels.push_back(A->vertex_labels()[v] + "|" + B->vertex_labels()[u]);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j) {
      s.labels.push_back(A->labels()[i] + "(x)" + B->labels()[j]);
      s.left_vertex.push_back(A->left_vertex(i) * nb + B->left_vertex(j));
      s.right_vertex.push_back(A->right_vertex(i) * nb + B->right_vertex(j));
    }
  for (int v = 0; v < A->num_vertices(); ++v)
    for (int u = 0; u < nb; ++u) s.idempotent.push_back(A->idempotent(v) * db + B->idempotent(u));
  const int n = da * db;
  s.table.assign(std::size_t(n) * n, {});
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k)
        for (int l = 0; l < db; ++l) {
          auto& t = s.table[std::size_t(i * db + j) * n + (k * db + l)];
          for (auto [x, c] : A->mul(i, k))
            for (auto [y, d] : B->mul(j, l))
              t.emplace_back(x * db + y, Scalar(std::uint64_t(c) * d % s.p));
        }
  return Algebra::make(std::move(s));
}

}  // namespace

Enveloping enveloping(const AlgebraPtr& r, const AlgebraPtr& s) {
  if (r->p() != s->p()) throw InvalidInput("enveloping: characteristics differ");
  AlgebraPtr sop = opposite(s);
  return {r, s, tensor_algebra(r, sop, r->name() + "(x)" + sop->name())};
}

std::vector<int> radical(const AlgebraPtr& a) { return a->radical_basis(); }

AlgebraPtr field_algebra(Scalar p) {
  Quiver q;
  q.vertices = {"1"};
  return path_algebra_quotient(q, {}, 1, p, "F" + std::to_string(p));
}

}  // namespace cotr
