#include "khoburn/flowcat_json.hpp"

#include <stdexcept>

#include "khoburn/actions_json.hpp"
#include "khoburn/burnside_json.hpp"

namespace khoburn {

using nlohmann::json;

namespace {

json pairs_of(const std::vector<std::string>& dom, const std::vector<std::string>& cod,
              const std::vector<int>& f) {
  json out = json::array();
  for (size_t i = 0; i < f.size(); ++i)
    out.push_back(json::array({dom[i], cod[static_cast<size_t>(f[i])]}));
  return out;
}

std::vector<std::string> element_labels(const Correspondence& c) {
  std::vector<std::string> out;
  for (const auto& e : c.elements) out.push_back(e.label);
  return out;
}

int label_index(const std::vector<std::string>& labels, const std::string& s) {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) return static_cast<int>(i);
  throw std::invalid_argument("flow category: unknown label " + s);
}

std::vector<int> pairs_to_map(const json& pairs, const std::vector<std::string>& dom,
                              const std::vector<std::string>& cod) {
  std::vector<int> f(dom.size(), -1);
  if (pairs.size() != dom.size())
    throw std::invalid_argument("flow category: wrong number of label pairs");
  for (const auto& p : pairs)
    f[static_cast<size_t>(label_index(dom, p.at(0).get<std::string>()))] =
        label_index(cod, p.at(1).get<std::string>());
  return f;
}

}  // namespace

json flowcat_to_json(const CubicalFlowCategory& C) {
  int n = C.n;
  json j;
  j["n"] = n;
  j["group"] = cyclic_action_to_json(C.group);
  j["shift"] = rep_label_to_json(C.shift);
  j["objects"] = json::object();
  j["gradings"] = json::object();
  for (const auto& [v, set] : C.objects) j["objects"][vertex_string(v, n)] = set;
  for (const auto& [v, gr] : C.gradings) {
    json arr = json::array();
    for (const auto& rl : gr) arr.push_back(rep_label_to_json(rl));
    j["gradings"][vertex_string(v, n)] = arr;
  }
  j["components"] = json::array();
  for (const auto& [key, c] : C.components)
    j["components"].push_back({{"from", vertex_string(key.first, n)},
                               {"to", vertex_string(key.second, n)},
                               {"corr", correspondence_to_json(c)}});
  j["composition"] = json::array();
  for (const auto& [key, mu] : C.composition) {
    auto [u, v, w] = key;
    Correspondence dom = compose(C.component(v, w), C.component(u, v));
    j["composition"].push_back({{"u", vertex_string(u, n)},
                                {"via", vertex_string(v, n)},
                                {"w", vertex_string(w, n)},
                                {"pairs", pairs_of(element_labels(dom),
                                                   element_labels(C.component(u, w)), mu)}});
  }
  j["object_maps"] = json::array();
  for (const auto& [key, f] : C.object_maps) {
    Vertex gv = act_vertex(key.first, key.second, C.group);
    j["object_maps"].push_back({{"g", key.first},
                                {"v", vertex_string(key.second, n)},
                                {"pairs", pairs_of(C.objects.at(key.second),
                                                   C.objects.at(gv), f)}});
  }
  j["component_maps"] = json::array();
  for (const auto& [key, f] : C.component_maps) {
    auto [g, u, v] = key;
    Vertex gu = act_vertex(g, u, C.group), gv = act_vertex(g, v, C.group);
    j["component_maps"].push_back(
        {{"g", g},
         {"from", vertex_string(u, n)},
         {"to", vertex_string(v, n)},
         {"pairs", pairs_of(element_labels(C.component(u, v)),
                            element_labels(C.component(gu, gv)), f)}});
  }
  return j;
}

CubicalFlowCategory flowcat_from_json(const json& j) {
  CubicalFlowCategory C;
  C.n = j.at("n").get<int>();
  C.group = cyclic_action_from_json(j.at("group"));
  C.shift = rep_label_from_json(j.at("shift"));
  for (const auto& [k, set] : j.at("objects").items())
    C.objects[vertex_from_string(k)] = set.get<std::vector<std::string>>();
  for (const auto& [k, arr] : j.at("gradings").items()) {
    std::vector<RepLabel> gr;
    for (const auto& rl : arr) gr.push_back(rep_label_from_json(rl));
    C.gradings[vertex_from_string(k)] = std::move(gr);
  }
  for (const auto& e : j.at("components")) {
    Vertex u = vertex_from_string(e.at("from").get<std::string>());
    Vertex v = vertex_from_string(e.at("to").get<std::string>());
    const auto& c = e.at("corr");
    std::vector<std::tuple<std::string, std::string, std::string>> triples;
    for (const auto& el : c.at("elements"))
      triples.emplace_back(el.at(0).get<std::string>(), el.at(1).get<std::string>(),
                           el.at(2).get<std::string>());
    C.components[{u, v}] = make_composite_correspondence(
        c.at("src").get<std::vector<std::string>>(), c.at("tgt").get<std::vector<std::string>>(),
        std::move(triples));
  }
  for (const auto& e : j.at("composition")) {
    Vertex u = vertex_from_string(e.at("u").get<std::string>());
    Vertex v = vertex_from_string(e.at("via").get<std::string>());
    Vertex w = vertex_from_string(e.at("w").get<std::string>());
    Correspondence dom = compose(C.component(v, w), C.component(u, v));
    C.composition[{u, v, w}] = pairs_to_map(e.at("pairs"), element_labels(dom),
                                            element_labels(C.component(u, w)));
  }
  for (const auto& e : j.at("object_maps")) {
    int g = e.at("g").get<int>();
    Vertex v = vertex_from_string(e.at("v").get<std::string>());
    Vertex gv = act_vertex(g, v, C.group);
    C.object_maps[{g, v}] = pairs_to_map(e.at("pairs"), C.objects.at(v), C.objects.at(gv));
  }
  for (const auto& e : j.at("component_maps")) {
    int g = e.at("g").get<int>();
    Vertex u = vertex_from_string(e.at("from").get<std::string>());
    Vertex v = vertex_from_string(e.at("to").get<std::string>());
    Vertex gu = act_vertex(g, u, C.group), gv = act_vertex(g, v, C.group);
    C.component_maps[{g, u, v}] = pairs_to_map(e.at("pairs"),
                                               element_labels(C.component(u, v)),
                                               element_labels(C.component(gu, gv)));
  }
  return C;
}

}  // namespace khoburn
