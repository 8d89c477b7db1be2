#include "cotr/catalog.hpp"

#include <tuple>

namespace cotr {

std::vector<Relation> radical_power_relations(const Quiver& q, int k) {
  std::vector<Path> paths;
  for (int a = 0; a < int(q.arrows.size()); ++a) paths.push_back({a});
  for (int len = 1; len < k; ++len) {
    std::vector<Path> next;
    for (auto& pa : paths)
      for (int a = 0; a < int(q.arrows.size()); ++a)
        if (q.arrows[pa.back()].target == q.arrows[a].source) {
          Path x = pa;
          x.push_back(a);
          next.push_back(x);
        }
    paths = std::move(next);
  }
  std::vector<Relation> rels;
  for (auto& pa : paths) rels.push_back(Relation{{{1, pa}}});
  return rels;
}

Quiver make_quiver(const std::vector<std::string>& vertices,
                   const std::vector<std::tuple<std::string, std::string, std::string>>& arrows) {
  Quiver q;
  q.vertices = vertices;
  for (auto& [name, s, t] : arrows) q.arrows.push_back({name, q.vertex_index(s), q.vertex_index(t)});
  q.validate();
  return q;
}

AlgebraPtr a2_algebra(Scalar p) {
  return path_algebra_quotient(make_quiver({"1", "2"}, {{"a", "1", "2"}}), {}, 4, p, "a2");
}

AlgebraPtr dual_numbers_algebra(Scalar p) {
  Quiver q = make_quiver({"1"}, {{"x", "1", "1"}});
  return path_algebra_quotient(q, {Relation{{{1, {0, 0}}}}}, 4, p, "dual_numbers");
}

AlgebraPtr ex28_algebra(Scalar p) {
  Quiver q = make_quiver({"1", "2", "3", "4", "5"}, {{"a", "1", "2"},
                                                     {"b", "2", "1"},
                                                     {"c", "3", "2"},
                                                     {"d", "4", "3"},
                                                     {"e", "4", "5"},
                                                     {"f", "5", "4"}});
  return path_algebra_quotient(q, radical_power_relations(q, 2), 4, p, "ex28");
}

AlgebraPtr semisimple_algebra(int vertices, Scalar p) {
  std::vector<std::string> v;
  for (int i = 1; i <= vertices; ++i) v.push_back(std::to_string(i));
  return path_algebra_quotient(make_quiver(v, {}), {}, 1, p, "semisimple" + std::to_string(vertices));
}

}  // namespace cotr
