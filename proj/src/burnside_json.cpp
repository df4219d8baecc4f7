#include "khoburn/burnside_json.hpp"

#include <algorithm>
#include <stdexcept>

namespace khoburn {

using nlohmann::json;

json correspondence_to_json(const Correspondence& c) {
  json j;
  j["src"] = c.src;
  j["tgt"] = c.tgt;
  json els = json::array();
  for (const auto& e : c.elements)
    els.push_back(json::array({e.label, c.src[static_cast<size_t>(e.s)],
                               c.tgt[static_cast<size_t>(e.t)]}));
  j["elements"] = els;
  return j;
}

Correspondence correspondence_from_json(const json& j) {
  std::vector<std::tuple<std::string, std::string, std::string>> triples;
  for (const auto& e : j.at("elements"))
    triples.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>(),
                         e.at(2).get<std::string>());
  return make_correspondence(j.at("src").get<std::vector<std::string>>(),
                             j.at("tgt").get<std::vector<std::string>>(), std::move(triples));
}

json burnside_to_json(const BurnsideFunctor& F) {
  json j;
  j["n"] = F.n;

  json verts = json::object();
  for (const auto& [v, labels] : F.vertex_sets) verts[vertex_string(v, F.n)] = labels;
  j["vertices"] = verts;

  json edges = json::array();
  for (const auto& [key, c] : F.edge_corrs) {
    json e;
    e["from"] = vertex_string(key.first, F.n);
    e["to"] = vertex_string(key.second, F.n);
    json els = json::array();
    for (const auto& el : c.elements)
      els.push_back(json::array({el.label, c.src[static_cast<size_t>(el.s)],
                                 c.tgt[static_cast<size_t>(el.t)]}));
    e["elements"] = els;
    edges.push_back(e);
  }
  j["edges"] = edges;

  json squares = json::array();
  for (const auto& [key, m] : F.squares) {
    json s;
    s["u"] = vertex_string(key.u, F.n);
    s["v"] = vertex_string(key.v, F.n);
    s["vp"] = vertex_string(key.vp, F.n);
    s["w"] = vertex_string(key.w, F.n);
    Correspondence dom = compose(F.edge(key.v, key.w), F.edge(key.u, key.v));
    Correspondence cod = compose(F.edge(key.vp, key.w), F.edge(key.u, key.vp));
    json pairs = json::array();
    for (size_t i = 0; i < m.size(); ++i)
      pairs.push_back(json::array(
          {dom.elements[i].label, cod.elements[static_cast<size_t>(m[i])].label}));
    s["pairs"] = pairs;
    squares.push_back(s);
  }
  j["squares"] = squares;
  return j;
}

BurnsideFunctor burnside_from_json(const json& j) {
  BurnsideFunctor F;
  F.n = j.at("n").get<int>();
  for (const auto& [key, labels] : j.at("vertices").items()) {
    Vertex v = vertex_from_string(key);
    auto ls = labels.get<std::vector<std::string>>();
    std::sort(ls.begin(), ls.end());
    F.vertex_sets[v] = std::move(ls);
  }
  for (const auto& e : j.at("edges")) {
    Vertex u = vertex_from_string(e.at("from").get<std::string>());
    Vertex v = vertex_from_string(e.at("to").get<std::string>());
    std::vector<std::tuple<std::string, std::string, std::string>> triples;
    for (const auto& el : e.at("elements"))
      triples.emplace_back(el.at(0).get<std::string>(), el.at(1).get<std::string>(),
                           el.at(2).get<std::string>());
    F.edge_corrs[{u, v}] =
        make_correspondence(F.vertex_sets.at(u), F.vertex_sets.at(v), std::move(triples));
  }
  for (const auto& s : j.at("squares")) {
    SquareKey key{vertex_from_string(s.at("u").get<std::string>()),
                  vertex_from_string(s.at("v").get<std::string>()),
                  vertex_from_string(s.at("vp").get<std::string>()),
                  vertex_from_string(s.at("w").get<std::string>())};
    Correspondence dom = compose(F.edge(key.v, key.w), F.edge(key.u, key.v));
    Correspondence cod = compose(F.edge(key.vp, key.w), F.edge(key.u, key.vp));
    CorrMorphism m(dom.elements.size(), -1);
    const auto& pairs = s.at("pairs");
    if (pairs.size() != m.size()) throw std::invalid_argument("square: wrong pair count");
    for (const auto& p : pairs) {
      int a = dom.element_index(p.at(0).get<std::string>());
      int b = cod.element_index(p.at(1).get<std::string>());
      if (a < 0 || b < 0) throw std::invalid_argument("square: unknown composite label");
      m[static_cast<size_t>(a)] = b;
    }
    F.squares[key] = std::move(m);
  }
  return F;
}

}  // namespace khoburn
