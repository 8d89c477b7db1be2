#include "cotr/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cotr/catalog.hpp"
#include "cotr/errors.hpp"
#include "cotr/modrep.hpp"

namespace cotr::io {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw InvalidInput(what + ": expected an integer, got '" + s + "'");
  }
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + i, s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

struct Doc {
  std::string origin;
  std::vector<Section> sections;

  const Section* find(const std::string& name) const {
    for (auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }
  const Section& need(const std::string& name) const {
    if (auto* s = find(name)) return *s;
    throw InvalidInput(origin + ": missing section [" + name + "]");
  }
};

const std::string* value_of(const Section& s, const std::string& key) {
  for (auto& [k, v] : s.entries)
    if (k == key) return &v;
  return nullptr;
}

std::string need_value(const Section& s, const std::string& key, const std::string& origin) {
  if (auto* v = value_of(s, key)) return *v;
  throw InvalidInput(origin + ": [" + s.name + "] needs '" + key + "'");
}

// Vertex labels may be integers; arrow and basis labels may not, since they share lines with
// coefficients.
void check_label(const std::string& l, bool vertex = false) {
  if (l.empty() || l.find_first_of(" \t=#;[]*+") != std::string::npos || (!vertex && is_integer(l)))
    throw InvalidInput("label '" + l + "' cannot be written to a file");
}

std::string arrow_path_text(const Quiver& q, const Path& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + q.arrows[p[i]].name;
  return s;
}

Relation parse_relation(const std::string& line, const Quiver& q, const std::string& where) {
  Relation r;
  long long sign = 1, coef = 1;
  bool have_coef = false;
  Path path;
  auto flush = [&] {
    if (path.empty()) {
      if (have_coef) throw InvalidInput(where + ": relation term without a path");
      return;
    }
    r.terms.push_back({sign * coef, path});
    path.clear();
    coef = 1;
    sign = 1;
    have_coef = false;
  };
  for (std::string w : words(line)) {
    if (w == "+" || w == "-") {
      flush();
      sign = w == "-" ? -1 : 1;
      continue;
    }
    if (!w.empty() && w.back() == '*') w.pop_back();
    if (is_integer(w) && path.empty()) {
      coef = parse_int(w, where);
      have_coef = true;
      continue;
    }
    int a = q.arrow_index(w);
    if (a < 0) throw InvalidInput(where + ": unknown arrow '" + w + "'");
    path.push_back(a);
  }
  flush();
  if (r.terms.empty()) throw InvalidInput(where + ": empty relation");
  return r;
}

std::vector<int> vertex_list(const Algebra& a, const std::string& value, const std::string& where) {
  std::vector<int> out;
  for (auto& w : words(value)) {
    auto& vl = a.vertex_labels();
    auto it = std::find(vl.begin(), vl.end(), w);
    if (it == vl.end()) throw InvalidInput(where + ": unknown vertex '" + w + "'");
    out.push_back(int(it - vl.begin()));
  }
  return out;
}

std::string vertex_names(const Algebra& a, const std::vector<int>& vs) {
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? " " : "") + a.vertex_labels()[vs[i]];
  return s;
}

// Arrow index -> basis index of the arrow, or -1 when the arrow is zero in the algebra.
int arrow_basis(const Algebra& a, int arrow) {
  const auto& bp = a.presentation()->basis_paths;
  for (int b = 0; b < int(bp.size()); ++b)
    if (bp[b].size() == 1 && bp[b][0] == arrow) return b;
  return -1;
}

// Action matrices of every basis element from the listed ones. right: composition order of a
// right action, so a path acts as right[first arrow] ... right[last arrow].
std::vector<Matrix> derive_action(const Algebra& a, const std::map<std::string, Matrix>& given,
                                  const std::vector<int>& vertex_of, bool right, const std::string& where) {
  const int n = int(vertex_of.size());
  const Scalar p = a.p();
  std::vector<Matrix> out;
  for (auto& [label, m] : given)
    if (a.label_index(label) < 0) throw InvalidInput(where + ": unknown basis element '" + label + "'");
  std::map<int, Matrix> arrows;
  if (a.presentation()) {
    const Quiver& q = a.presentation()->quiver;
    for (int ar = 0; ar < int(q.arrows.size()); ++ar) {
      auto it = given.find(q.arrows[ar].name);
      arrows[ar] = it != given.end() ? it->second : Matrix(n, n, p);
    }
  }
  for (int b = 0; b < a.dim(); ++b) {
    if (a.is_idempotent_basis(b)) {
      Matrix e(n, n, p);
      for (int k = 0; k < n; ++k)
        if (vertex_of[k] == a.vertex_of_idempotent(b)) e.at(k, k) = 1;
      out.push_back(e);
      continue;
    }
    auto it = given.find(a.labels()[b]);
    if (it != given.end()) {
      out.push_back(it->second);
      continue;
    }
    if (!a.presentation()) throw InvalidInput(where + ": missing action of '" + a.labels()[b] + "'");
    Matrix m = Matrix::identity(n, p);
    for (int ar : a.presentation()->basis_paths[b]) m = right ? m * arrows.at(ar) : arrows.at(ar) * m;
    out.push_back(m);
  }
  return out;
}

std::map<std::string, Matrix> read_actions(const Section* s, int n, Scalar p, const std::string& where) {
  std::map<std::string, Matrix> out;
  if (!s) return out;
  for (auto& [k, v] : s->entries) {
    if (k.empty()) throw InvalidInput(where + ": [" + s->name + "] expects 'label = matrix'");
    if (out.count(k)) throw InvalidInput(where + ": '" + k + "' listed twice");
    out[k] = parse_matrix(v, n, n, p, where + " " + k);
  }
  return out;
}

// Labels written for an action section: arrows for presented algebras, else every
// non-idempotent basis element.
std::vector<int> written_basis(const Algebra& a) {
  std::vector<int> out;
  if (a.presentation()) {
    for (int ar = 0; ar < int(a.presentation()->quiver.arrows.size()); ++ar)
      if (int b = arrow_basis(a, ar); b >= 0) out.push_back(b);
  } else {
    for (int b = 0; b < a.dim(); ++b)
      if (!a.is_idempotent_basis(b)) out.push_back(b);
  }
  return out;
}

}  // namespace

std::vector<Section> parse_sections(const std::string& text, const std::string& origin) {
  std::vector<Section> out;
  std::istringstream in(text);
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw InvalidInput(origin + ":" + std::to_string(lineno) + ": bad section header");
      out.push_back({trim(line.substr(1, line.size() - 2)), {}, {}});
      continue;
    }
    if (out.empty()) throw InvalidInput(origin + ":" + std::to_string(lineno) + ": content before any section");
    auto eq = line.find('=');
    if (eq == std::string::npos)
      out.back().entries.push_back({"", line});
    else
      out.back().entries.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
    out.back().lines.push_back(lineno);
  }
  return out;
}

Matrix parse_matrix(const std::string& value, int rows, int cols, Scalar p, const std::string& what) {
  std::vector<std::vector<long long>> rs;
  std::stringstream in(value);
  for (std::string part; std::getline(in, part, ';');) {
    auto ws = words(part);
    if (ws.empty()) continue;
    std::vector<long long> r;
    for (auto& w : ws) r.push_back(parse_int(w, what));
    rs.push_back(r);
  }
  const bool one_row = value.find(';') == std::string::npos;
  if (one_row && rows != 1 && !rs.empty()) {
    // A flat list of rows * cols entries.
    std::vector<long long> flat = rs[0];
    if (int(flat.size()) != rows * cols)
      throw DimensionMismatch(what + ": expected " + std::to_string(rows) + "x" + std::to_string(cols) + " entries");
    rs.assign(rows, std::vector<long long>(cols));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) rs[i][j] = flat[std::size_t(i) * cols + j];
  }
  if (rows * cols == 0) {
    if (!rs.empty()) throw DimensionMismatch(what + ": expected an empty matrix");
    return Matrix(rows, cols, p);
  }
  if (int(rs.size()) != rows) throw DimensionMismatch(what + ": expected " + std::to_string(rows) + " rows");
  for (auto& r : rs)
    if (int(r.size()) != cols) throw DimensionMismatch(what + ": expected " + std::to_string(cols) + " columns");
  return Matrix::from_rows(rs, p, cols);
}

std::string format_matrix(const Matrix& m) {
  std::string s;
  for (int i = 0; i < m.rows(); ++i) {
    if (i) s += "; ";
    for (int j = 0; j < m.cols(); ++j) s += (j ? " " : "") + std::to_string(m(i, j));
  }
  return s;
}

AlgebraPtr parse_algebra(const std::string& text, const std::string& origin) {
  Doc d{origin, parse_sections(text, origin)};
  const Section& head = d.need("algebra");
  const std::string name = value_of(head, "name") ? *value_of(head, "name") : "";
  const long long p = value_of(head, "p") ? parse_int(*value_of(head, "p"), origin + " p") : 2;
  if (p < 2 || !is_prime(std::uint64_t(p))) throw InvalidInput(origin + ": p must be prime");
  if (const Section* qs = d.find("quiver")) {
    Quiver q;
    q.vertices = words(need_value(*qs, "vertices", origin));
    for (auto& [k, v] : qs->entries) {
      if (k == "vertices") continue;
      auto ws = words(v);
      if (k.empty() || ws.size() != 3 || ws[1] != "->")
        throw InvalidInput(origin + ": arrows are written 'name = source -> target'");
      int s = q.vertex_index(ws[0]), t = q.vertex_index(ws[2]);
      if (s < 0 || t < 0) throw InvalidInput(origin + ": arrow " + k + " uses an unknown vertex");
      q.arrows.push_back({k, s, t});
    }
    q.validate();
    std::vector<Relation> rels;
    if (const Section* rs = d.find("relations")) {
      for (auto& [k, v] : rs->entries) {
        if (!k.empty()) throw InvalidInput(origin + ": relations are bare lines");
        if (v.rfind("rad^", 0) == 0) {
          auto more = radical_power_relations(q, int(parse_int(v.substr(4), origin + " rad^")));
          rels.insert(rels.end(), more.begin(), more.end());
        } else {
          rels.push_back(parse_relation(v, q, origin));
        }
      }
    }
    const int lb = value_of(head, "length_bound") ? int(parse_int(*value_of(head, "length_bound"), origin)) : 8;
    return path_algebra_quotient(q, rels, lb, Scalar(p), name);
  }

  AlgebraSpec s;
  s.p = Scalar(p);
  s.name = name;
  s.vertex_labels = words(need_value(head, "vertices", origin));
  s.idempotent.assign(s.vertex_labels.size(), -1);
  auto vertex = [&](const std::string& v) {
    auto it = std::find(s.vertex_labels.begin(), s.vertex_labels.end(), v);
    if (it == s.vertex_labels.end()) throw InvalidInput(origin + ": unknown vertex '" + v + "'");
    return int(it - s.vertex_labels.begin());
  };
  for (auto& [k, v] : d.need("basis").entries) {
    auto ws = words(v);
    if (k.empty() || ws.size() != 2) throw InvalidInput(origin + ": basis lines are 'label = left right'");
    const int b = int(s.labels.size());
    s.labels.push_back(k);
    if (ws[0] == "idempotent") {
      int vi = vertex(ws[1]);
      s.idempotent[vi] = b;
      s.left_vertex.push_back(vi);
      s.right_vertex.push_back(vi);
    } else {
      s.left_vertex.push_back(vertex(ws[0]));
      s.right_vertex.push_back(vertex(ws[1]));
    }
  }
  for (int v = 0; v < int(s.idempotent.size()); ++v)
    if (s.idempotent[v] < 0) throw InvalidInput(origin + ": vertex " + s.vertex_labels[v] + " has no idempotent");
  const int n = int(s.labels.size());
  auto index = [&](const std::string& l) {
    auto it = std::find(s.labels.begin(), s.labels.end(), l);
    if (it == s.labels.end()) throw InvalidInput(origin + ": unknown basis element '" + l + "'");
    return int(it - s.labels.begin());
  };
  s.table.assign(std::size_t(n) * n, {});
  if (const Section* ps = d.find("products")) {
    for (auto& [k, v] : ps->entries) {
      auto lhs = words(k);
      if (lhs.size() != 3 || lhs[1] != "*") throw InvalidInput(origin + ": products are 'x * y = c z + ...'");
      auto& t = s.table[std::size_t(index(lhs[0])) * n + index(lhs[2])];
      auto ws = words(v);
      for (std::size_t i = 0; i < ws.size();) {
        if (ws[i] == "+") {
          ++i;
          continue;
        }
        if (i + 1 >= ws.size()) throw InvalidInput(origin + ": product terms are 'coefficient label'");
        Scalar c = reduce(parse_int(ws[i], origin), Scalar(p));
        if (c) t.emplace_back(index(ws[i + 1]), c);
        i += 2;
      }
      std::sort(t.begin(), t.end());
    }
  }
  return Algebra::make(std::move(s));
}

std::string export_algebra(const Algebra& a) {
  std::ostringstream o;
  o << "[algebra]\n";
  if (!a.name().empty()) o << "name = " << a.name() << "\n";
  o << "p = " << a.p() << "\n";
  if (const auto& pr = a.presentation()) {
    const Quiver& q = pr->quiver;
    o << "length_bound = " << pr->length_bound << "\n\n[quiver]\nvertices =";
    for (auto& v : q.vertices) check_label(v, true), o << " " << v;
    o << "\n";
    for (auto& ar : q.arrows) {
      check_label(ar.name);
      o << ar.name << " = " << q.vertices[ar.source] << " -> " << q.vertices[ar.target] << "\n";
    }
    if (!pr->relations.empty()) {
      o << "\n[relations]\n";
      for (auto& r : pr->relations) {
        for (std::size_t i = 0; i < r.terms.size(); ++i) {
          Scalar c = reduce(r.terms[i].first, a.p());
          o << (i ? " + " : "");
          if (c != 1) o << c << " ";
          o << arrow_path_text(q, r.terms[i].second);
        }
        o << "\n";
      }
    }
    return o.str();
  }
  o << "vertices =";
  for (auto& v : a.vertex_labels()) check_label(v, true), o << " " << v;
  o << "\n\n[basis]\n";
  for (int b = 0; b < a.dim(); ++b) {
    check_label(a.labels()[b]);
    o << a.labels()[b] << " = ";
    if (a.is_idempotent_basis(b))
      o << "idempotent " << a.vertex_labels()[a.vertex_of_idempotent(b)] << "\n";
    else
      o << a.vertex_labels()[a.left_vertex(b)] << " " << a.vertex_labels()[a.right_vertex(b)] << "\n";
  }
  o << "\n[products]\n";
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      auto t = a.mul(i, j);
      if (t.empty()) continue;
      std::sort(t.begin(), t.end());
      o << a.labels()[i] << " * " << a.labels()[j] << " =";
      for (std::size_t k = 0; k < t.size(); ++k) o << (k ? " + " : " ") << t[k].second << " " << a.labels()[t[k].first];
      o << "\n";
    }
  return o.str();
}

Module parse_module(const std::string& text, const AlgebraPtr& a, const std::string& origin) {
  Doc d{origin, parse_sections(text, origin)};
  const Section& head = d.need("module");
  std::vector<int> dimvec;
  for (auto& w : words(need_value(head, "dims", origin))) {
    long long v = parse_int(w, origin + " dims");
    if (v < 0) throw InvalidInput(origin + ": negative dimension");
    dimvec.push_back(int(v));
  }
  if (int(dimvec.size()) != a->num_vertices())
    throw DimensionMismatch(origin + ": dims needs one entry per vertex (" + std::to_string(a->num_vertices()) + ")");
  const Section* arrows = d.find("arrows");
  const Section* action = d.find("action");
  if (arrows && action) throw InvalidInput(origin + ": give [arrows] or [action], not both");
  if (!action) {
    if (!a->presentation()) throw UnsupportedPresentation(origin + ": [arrows] needs a quiver-presented algebra");
    const Quiver& q = a->presentation()->quiver;
    std::map<std::string, Matrix> m;
    if (arrows)
      for (auto& [k, v] : arrows->entries) {
        int ar = q.arrow_index(k);
        if (ar < 0) throw InvalidInput(origin + ": unknown arrow '" + k + "'");
        m[k] = parse_matrix(v, dimvec[q.arrows[ar].target], dimvec[q.arrows[ar].source], a->p(), origin + " " + k);
      }
    return module_from_arrows(a, dimvec, m);
  }
  std::vector<int> vertex_of;
  for (int v = 0; v < int(dimvec.size()); ++v) vertex_of.insert(vertex_of.end(), dimvec[v], v);
  auto given = read_actions(action, int(vertex_of.size()), a->p(), origin);
  return Module::make(a, dimvec, derive_action(*a, given, vertex_of, false, origin));
}

std::string export_module(const Module& m, const std::string& algebra_ref) {
  const Algebra& a = *m.algebra();
  std::ostringstream o;
  o << "[module]\n";
  if (!algebra_ref.empty()) o << "algebra = " << algebra_ref << "\n";
  o << "dims =";
  for (int v : m.dimvec()) o << " " << v;
  o << "\n";
  if (a.presentation()) {
    const Quiver& q = a.presentation()->quiver;
    std::ostringstream body;
    for (int ar = 0; ar < int(q.arrows.size()); ++ar) {
      int b = arrow_basis(a, ar);
      if (b < 0) continue;
      const Arrow& x = q.arrows[ar];
      if (m.dim_at(x.target) == 0 || m.dim_at(x.source) == 0) continue;
      Matrix blk = m.act(b).block(m.offset(x.target), m.offset(x.source), m.dim_at(x.target), m.dim_at(x.source));
      body << x.name << " = " << format_matrix(blk) << "\n";
    }
    if (!body.str().empty()) o << "\n[arrows]\n" << body.str();
    return o.str();
  }
  o << "\n[action]\n";
  for (int b : written_basis(a)) o << a.labels()[b] << " = " << format_matrix(m.act(b)) << "\n";
  return o.str();
}

Bimodule parse_bimodule(const std::string& text, const AlgebraPtr& R, const AlgebraPtr& S, const std::string& origin) {
  Doc d{origin, parse_sections(text, origin)};
  const Section& head = d.need("bimodule");
  const int n = int(parse_int(need_value(head, "dim", origin), origin + " dim"));
  std::vector<int> lv = vertex_list(*R, need_value(head, "left_vertices", origin), origin);
  if (int(lv.size()) != n) throw DimensionMismatch(origin + ": left_vertices needs " + std::to_string(n) + " labels");
  auto left = derive_action(*R, read_actions(d.find("left_action"), n, R->p(), origin), lv, false, origin);
  if (!S) {
    // Regroup by vertex, then let End act on the right.
    Module m = module_from_coordinates(R, lv, left);
    return bimodule_over_endomorphisms(m);
  }
  std::vector<int> rv = vertex_list(*S, need_value(head, "right_vertices", origin), origin);
  if (int(rv.size()) != n) throw DimensionMismatch(origin + ": right_vertices needs " + std::to_string(n) + " labels");
  auto right = derive_action(*S, read_actions(d.find("right_action"), n, S->p(), origin), rv, true, origin);
  return Bimodule::make(R, S, lv, rv, left, right);
}

std::string export_bimodule(const Bimodule& b, const std::string& left_ref, const std::string& right_ref) {
  std::ostringstream o;
  o << "[bimodule]\n";
  if (!left_ref.empty()) o << "left = " << left_ref << "\n";
  if (!right_ref.empty())
    o << "right = " << right_ref << "\n";
  else if (!left_ref.empty() && same_algebra(b.R, b.S))
    o << "right = self\n";
  o << "dim = " << b.dim << "\n";
  o << "left_vertices = " << vertex_names(*b.R, b.lv) << "\n";
  o << "right_vertices = " << vertex_names(*b.S, b.rv) << "\n";
  o << "\n[left_action]\n";
  for (int x : written_basis(*b.R)) o << b.R->labels()[x] << " = " << format_matrix(b.left[x]) << "\n";
  o << "\n[right_action]\n";
  for (int x : written_basis(*b.S)) o << b.S->labels()[x] << " = " << format_matrix(b.right[x]) << "\n";
  return o.str();
}

std::string export_morphism(const Morphism& f, const std::string& source_ref, const std::string& target_ref) {
  std::ostringstream o;
  o << "[morphism]\nsource = " << source_ref << "\ntarget = " << target_ref << "\nmatrix = " << format_matrix(f.mat)
    << "\n";
  return o.str();
}

std::string digest_text(const std::string& text) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr))
    throw InvariantViolation("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out = "sha256:";
  for (unsigned i = 0; i < len; ++i) out += hex[md[i] >> 4], out += hex[md[i] & 15];
  return out;
}

std::string digest(const Algebra& a) { return digest_text(export_algebra(a)); }
std::string digest(const Module& m) { return digest_text(export_algebra(*m.algebra()) + export_module(m)); }
std::string digest(const Bimodule& b) {
  return digest_text(export_algebra(*b.R) + export_algebra(*b.S) + export_bimodule(b));
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + p.string());
  out << text;
}

fs::path Loader::resolve(const std::string& name, const std::string& ext) const {
  std::vector<std::string> cands{name};
  if (!ext.empty() && fs::path(name).extension() != ext) cands.push_back(name + ext);
  for (auto& c : cands)
    if (fs::is_regular_file(c)) return fs::path(c);
  for (auto& dir : search_) {
    for (auto& c : cands)
      if (fs::is_regular_file(dir / c)) return dir / c;
    if (!fs::is_directory(dir)) continue;
    std::vector<fs::path> hits;
    for (auto& e : fs::recursive_directory_iterator(dir))
      for (auto& c : cands)
        if (e.is_regular_file() && e.path().filename() == fs::path(c).filename() &&
            e.path().string().size() >= c.size() &&
            e.path().string().compare(e.path().string().size() - c.size(), c.size(), c) == 0)
          hits.push_back(e.path());
    std::sort(hits.begin(), hits.end());
    if (!hits.empty()) return hits.front();
  }
  throw InvalidInput("cannot find '" + name + "'");
}

fs::path Loader::relative_to(const fs::path& base, const std::string& ref) const {
  fs::path cand = base.parent_path() / ref;
  if (fs::is_regular_file(cand)) return cand;
  return resolve(ref);
}

AlgebraPtr Loader::algebra(const std::string& path) {
  fs::path p = fs::weakly_canonical(resolve(path, ".alg"));
  auto it = algebras_.find(p.string());
  if (it != algebras_.end()) return it->second;
  AlgebraPtr a = parse_algebra(read_file(p), p.string());
  algebras_[p.string()] = a;
  digests_[p.string()] = digest(*a);
  return a;
}

Module Loader::module(const std::string& path, const AlgebraPtr& expected) {
  fs::path p = fs::weakly_canonical(resolve(path, ".mod"));
  const std::string text = read_file(p);
  Doc d{p.string(), parse_sections(text, p.string())};
  AlgebraPtr a = expected;
  if (auto* ref = value_of(d.need("module"), "algebra")) {
    AlgebraPtr own;
    const std::string suffix = ":right";
    if (ref->size() > suffix.size() && ref->compare(ref->size() - suffix.size(), suffix.size(), suffix) == 0)
      own = bimodule(relative_to(p, ref->substr(0, ref->size() - suffix.size())).string()).S;
    else
      own = algebra(relative_to(p, *ref).string());
    if (expected && !same_algebra(expected, own))
      throw InvalidInput(p.string() + ": module is over " + own->name() + ", expected " + expected->name());
    if (!a) a = own;
  }
  if (!a) throw InvalidInput(p.string() + ": no algebra given");
  Module m = parse_module(text, a, p.string());
  digests_[p.string()] = digest(m);
  return m;
}

Bimodule Loader::bimodule(const std::string& path) {
  fs::path p = fs::weakly_canonical(resolve(path, ".bimod"));
  auto it = bimodules_.find(p.string());
  if (it != bimodules_.end()) return it->second;
  const std::string text = read_file(p);
  Doc d{p.string(), parse_sections(text, p.string())};
  const Section& head = d.need("bimodule");
  AlgebraPtr R = algebra(relative_to(p, need_value(head, "left", p.string())).string());
  const std::string right = value_of(head, "right") ? *value_of(head, "right") : "self";
  AlgebraPtr S = right == "self" ? R : right == "endomorphisms" ? nullptr : algebra(relative_to(p, right).string());
  const std::string* mref = value_of(head, "module");
  if (mref && S) throw InvalidInput(p.string() + ": 'module' is only meaningful with right = endomorphisms");
  Bimodule b = mref ? bimodule_over_endomorphisms(module(relative_to(p, *mref).string(), R))
                    : parse_bimodule(text, R, S, p.string());
  bimodules_.emplace(p.string(), b);
  digests_[p.string()] = digest(b);
  return b;
}

Morphism Loader::morphism(const std::string& path) {
  fs::path p = fs::weakly_canonical(resolve(path, ".hom"));
  const std::string text = read_file(p);
  Doc d{p.string(), parse_sections(text, p.string())};
  const Section& head = d.need("morphism");
  Module src = module(relative_to(p, need_value(head, "source", p.string())).string());
  Module tgt = module(relative_to(p, need_value(head, "target", p.string())).string(), src.algebra());
  Morphism f{src, tgt, parse_matrix(need_value(head, "matrix", p.string()), tgt.dim(), src.dim(), src.p(), p.string())};
  if (!is_homomorphism(f)) throw InvalidInput(p.string() + ": matrix is not a module homomorphism");
  digests_[p.string()] = digest_text(digest(src) + digest(tgt) + format_matrix(f.mat));
  return f;
}

}  // namespace cotr::io
