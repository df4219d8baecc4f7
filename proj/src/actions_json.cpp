#include "khoburn/actions_json.hpp"

#include <stdexcept>

#include "khoburn/burnside_json.hpp"

namespace khoburn {

using nlohmann::json;

json cyclic_action_to_json(const CyclicAction& a) {
  json j;
  j["m"] = a.m;
  if (a.perm.empty())
    j["n_block"] = a.n_block;
  else
    j["perm"] = a.perm;
  return j;
}

CyclicAction cyclic_action_from_json(const json& j) {
  CyclicAction a;
  a.m = j.at("m").get<int>();
  if (j.contains("perm"))
    a.perm = j.at("perm").get<std::vector<int>>();
  else
    a.n_block = j.at("n_block").get<int>();
  if (!a.valid()) throw std::invalid_argument("cyclic action: invalid data");
  return a;
}

json rep_label_to_json(const RepLabel& r) {
  json j;
  j["dim"] = r.virtual_dim;
  j["multiplicities"] = json::object();
  for (const auto& [k, c] : r.multiplicities) j["multiplicities"][k] = c;
  return j;
}

RepLabel rep_label_from_json(const json& j) {
  RepLabel r;
  r.virtual_dim = j.at("dim").get<int>();
  for (const auto& [k, c] : j.at("multiplicities").items())
    r.multiplicities[k] = c.get<int>();
  return r;
}

namespace {

int label_index(const std::vector<std::string>& labels, const std::string& s) {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) return static_cast<int>(i);
  throw std::invalid_argument("action json: unknown label '" + s + "'");
}

json bijection_pairs(const std::vector<std::string>& dom, const std::vector<std::string>& cod,
                     const std::vector<int>& f) {
  json pairs = json::array();
  for (size_t i = 0; i < f.size(); ++i)
    pairs.push_back(json::array({dom[i], cod[static_cast<size_t>(f[i])]}));
  return pairs;
}

std::vector<int> bijection_from_pairs(const json& pairs, const std::vector<std::string>& dom,
                                      const std::vector<std::string>& cod) {
  std::vector<int> f(dom.size(), -1);
  if (pairs.size() != dom.size())
    throw std::invalid_argument("action json: wrong number of pairs");
  for (const auto& p : pairs)
    f[static_cast<size_t>(label_index(dom, p.at(0).get<std::string>()))] =
        label_index(cod, p.at(1).get<std::string>());
  return f;
}

std::vector<std::string> element_labels(const Correspondence& c) {
  std::vector<std::string> out;
  for (const auto& e : c.elements) out.push_back(e.label);
  return out;
}

}  // namespace

json musyt_to_json(const BurnsideFunctor& F, const MusytAction& phi) {
  json j;
  j["group"] = cyclic_action_to_json(phi.group);
  json vb = json::array();
  for (const auto& [key, f] : phi.vertex_bijections) {
    Vertex gv = act_vertex(key.first, key.second, phi.group);
    json e;
    e["g"] = key.first;
    e["v"] = vertex_string(key.second, F.n);
    e["pairs"] = bijection_pairs(F.at(key.second), F.at(gv), f);
    vb.push_back(e);
  }
  j["vertex_bijections"] = vb;
  json eb = json::array();
  for (const auto& [key, f] : phi.edge_bijections) {
    auto [g, u, v] = key;
    Vertex gu = act_vertex(g, u, phi.group), gv = act_vertex(g, v, phi.group);
    json e;
    e["g"] = g;
    e["from"] = vertex_string(u, F.n);
    e["to"] = vertex_string(v, F.n);
    e["pairs"] = bijection_pairs(element_labels(F.edge(u, v)), element_labels(F.edge(gu, gv)), f);
    eb.push_back(e);
  }
  j["edge_bijections"] = eb;
  return j;
}

MusytAction musyt_from_json(const json& j, const BurnsideFunctor& F) {
  MusytAction phi;
  phi.group = cyclic_action_from_json(j.at("group"));
  for (const auto& e : j.at("vertex_bijections")) {
    int g = e.at("g").get<int>();
    Vertex v = vertex_from_string(e.at("v").get<std::string>());
    Vertex gv = act_vertex(g, v, phi.group);
    phi.vertex_bijections[{g, v}] = bijection_from_pairs(e.at("pairs"), F.at(v), F.at(gv));
  }
  for (const auto& e : j.at("edge_bijections")) {
    int g = e.at("g").get<int>();
    Vertex u = vertex_from_string(e.at("from").get<std::string>());
    Vertex v = vertex_from_string(e.at("to").get<std::string>());
    Vertex gu = act_vertex(g, u, phi.group), gv = act_vertex(g, v, phi.group);
    phi.edge_bijections[{g, u, v}] = bijection_from_pairs(
        e.at("pairs"), element_labels(F.edge(u, v)), element_labels(F.edge(gu, gv)));
  }
  return phi;
}

json sz_to_json(const BurnsideFunctor& F, const SZAction& psi) {
  json j;
  j["group"] = cyclic_action_to_json(psi.group);
  json oi = json::array();
  for (const auto& [key, c] : psi.one_isos) {
    json e;
    e["g"] = key.first;
    e["v"] = vertex_string(key.second, F.n);
    e["corr"] = correspondence_to_json(c);
    oi.push_back(e);
  }
  j["one_isos"] = oi;
  json sw = json::array();
  for (const auto& [key, f] : psi.square_witnesses) {
    auto [g, h, v] = key;
    Vertex hv = act_vertex(h, v, psi.group);
    const Correspondence& dom = psi.one_iso(g + h, v);
    Correspondence cod = compose(psi.one_iso(g, hv), psi.one_iso(h, v));
    json e;
    e["g"] = g;
    e["h"] = h;
    e["v"] = vertex_string(v, F.n);
    e["pairs"] = bijection_pairs(element_labels(dom), element_labels(cod), f);
    sw.push_back(e);
  }
  j["square_witnesses"] = sw;
  json et = json::array();
  for (const auto& [key, f] : psi.edge_two_morphisms) {
    auto [g, u, v] = key;
    Vertex gu = act_vertex(g, u, psi.group), gv = act_vertex(g, v, psi.group);
    Correspondence dom = compose(psi.one_iso(g, v), F.edge(u, v));
    Correspondence cod = compose(F.edge(gu, gv), psi.one_iso(g, u));
    json e;
    e["g"] = g;
    e["from"] = vertex_string(u, F.n);
    e["to"] = vertex_string(v, F.n);
    e["pairs"] = bijection_pairs(element_labels(dom), element_labels(cod), f);
    et.push_back(e);
  }
  j["edge_two_morphisms"] = et;
  return j;
}

SZAction sz_from_json(const json& j, const BurnsideFunctor& F) {
  SZAction psi;
  psi.group = cyclic_action_from_json(j.at("group"));
  for (const auto& e : j.at("one_isos")) {
    int g = e.at("g").get<int>();
    Vertex v = vertex_from_string(e.at("v").get<std::string>());
    psi.one_isos[{g, v}] = correspondence_from_json(e.at("corr"));
  }
  for (const auto& e : j.at("square_witnesses")) {
    int g = e.at("g").get<int>();
    int h = e.at("h").get<int>();
    Vertex v = vertex_from_string(e.at("v").get<std::string>());
    Vertex hv = act_vertex(h, v, psi.group);
    const Correspondence& dom = psi.one_iso(g + h, v);
    Correspondence cod = compose(psi.one_iso(g, hv), psi.one_iso(h, v));
    psi.square_witnesses[{g, h, v}] =
        bijection_from_pairs(e.at("pairs"), element_labels(dom), element_labels(cod));
  }
  for (const auto& e : j.at("edge_two_morphisms")) {
    int g = e.at("g").get<int>();
    Vertex u = vertex_from_string(e.at("from").get<std::string>());
    Vertex v = vertex_from_string(e.at("to").get<std::string>());
    Vertex gu = act_vertex(g, u, psi.group), gv = act_vertex(g, v, psi.group);
    Correspondence dom = compose(psi.one_iso(g, v), F.edge(u, v));
    Correspondence cod = compose(F.edge(gu, gv), psi.one_iso(g, u));
    psi.edge_two_morphisms[{g, u, v}] =
        bijection_from_pairs(e.at("pairs"), element_labels(dom), element_labels(cod));
  }
  return psi;
}

}  // namespace khoburn
