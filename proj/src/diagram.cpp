#include <map>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "khoburn/khovanov.hpp"

namespace khoburn {

int LinkDiagram::edge_partner(int slot) const { return partner[static_cast<size_t>(slot)]; }

namespace {

struct EdgeUse {
  int label;
  std::vector<int> slots;  // global slot ids, at most 2
};

int find_root(std::vector<int>& up, int x) {
  while (up[static_cast<size_t>(x)] != x) {
    up[static_cast<size_t>(x)] = up[static_cast<size_t>(up[static_cast<size_t>(x)])];
    x = up[static_cast<size_t>(x)];
  }
  return x;
}

}  // namespace

LinkDiagram parse_pd(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("pd input: ") + e.what());
  }
  if (!j.is_object() || !j.contains("pd"))
    throw std::invalid_argument("pd input: expected an object with a \"pd\" array");

  LinkDiagram D;
  const auto& pd = j.at("pd");
  if (!pd.is_array()) throw std::invalid_argument("pd input: \"pd\" must be an array");
  for (size_t c = 0; c < pd.size(); ++c) {
    const auto& t = pd[c];
    if (!t.is_array() || t.size() != 4)
      throw std::invalid_argument("crossing " + std::to_string(c) + ": expected a 4-tuple");
    std::array<int, 4> x{};
    for (size_t s = 0; s < 4; ++s) {
      if (!t[s].is_number_integer())
        throw std::invalid_argument("crossing " + std::to_string(c) + ": edge labels are integers");
      x[s] = t[s].get<int>();
    }
    D.pd.push_back(x);
  }
  D.n = static_cast<int>(D.pd.size());
  if (D.n > 30) throw std::invalid_argument("pd input: more than 30 crossings");

  // each edge label must occupy exactly two slots
  std::map<int, std::vector<int>> uses;
  for (int c = 0; c < D.n; ++c)
    for (int s = 0; s < 4; ++s) uses[D.pd[static_cast<size_t>(c)][static_cast<size_t>(s)]].push_back(4 * c + s);
  for (const auto& [label, slots] : uses)
    if (slots.size() != 2)
      throw std::invalid_argument("edge label " + std::to_string(label) + " appears " +
                                  std::to_string(slots.size()) + " times (expected 2)");
  D.partner.assign(static_cast<size_t>(4 * D.n), -1);
  for (const auto& [label, slots] : uses) {
    D.partner[static_cast<size_t>(slots[0])] = slots[1];
    D.partner[static_cast<size_t>(slots[1])] = slots[0];
  }

  // orientation: head = the slot where an edge enters a crossing. Under-strand
  // slots are fixed (in at 0, out at 2); slots of the same strand at one
  // crossing carry opposite head flags, as do the two slots of one edge.
  std::vector<int> head(static_cast<size_t>(4 * D.n), -1);
  std::queue<int> work;
  auto assign = [&](int slot, int value, const char* why) {
    if (head[static_cast<size_t>(slot)] == -1) {
      head[static_cast<size_t>(slot)] = value;
      work.push(slot);
    } else if (head[static_cast<size_t>(slot)] != value) {
      throw std::invalid_argument("inconsistent orientation at crossing " +
                                  std::to_string(slot / 4) + " corner " +
                                  std::to_string(slot % 4) + " (" + why + ")");
    }
  };
  auto propagate = [&]() {
    while (!work.empty()) {
      int s = work.front();
      work.pop();
      int v = head[static_cast<size_t>(s)];
      assign(s ^ 2, 1 - v, "strand continues through the crossing");
      assign(D.partner[static_cast<size_t>(s)], 1 - v, "edge has one head and one tail");
    }
  };

  if (j.contains("signs")) {
    const auto& signs = j.at("signs");
    if (!signs.is_array() || static_cast<int>(signs.size()) != D.n)
      throw std::invalid_argument("\"signs\" must list one sign per crossing");
    for (int c = 0; c < D.n; ++c) {
      int s = signs[static_cast<size_t>(c)].get<int>();
      if (s != 1 && s != -1)
        throw std::invalid_argument("crossing " + std::to_string(c) + ": sign must be +1 or -1");
      assign(4 * c + 1, s == 1 ? 1 : 0, "explicit sign");
    }
  }
  for (int c = 0; c < D.n; ++c) assign(4 * c + 0, 1, "incoming under-strand");
  propagate();
  // components whose strand never passes under anything are unconstrained;
  // orient them along increasing edge labels at their first crossing
  for (int c = 0; c < D.n; ++c) {
    if (head[static_cast<size_t>(4 * c + 1)] != -1) continue;
    int e1 = D.pd[static_cast<size_t>(c)][1], e3 = D.pd[static_cast<size_t>(c)][3];
    int enters_at_1;
    if (e3 == e1 + 1)
      enters_at_1 = 1;  // over runs corner 1 -> 3 along consecutive labels
    else if (e1 == e3 + 1)
      enters_at_1 = 0;
    else
      enters_at_1 = e1 < e3 ? 1 : 0;
    assign(4 * c + 1, enters_at_1, "free over-strand heuristic");
    propagate();
  }

  for (int c = 0; c < D.n; ++c) {
    bool in1 = head[static_cast<size_t>(4 * c + 1)] == 1;
    D.over_in1.push_back(in1);
    D.sign.push_back(in1 ? 1 : -1);  // positive: over-strand runs corner 1 -> 3
    (in1 ? D.n_plus : D.n_minus)++;
  }

  // link components via union-find over edge labels
  if (D.n > 0) {
    std::vector<int> labels;
    for (const auto& [label, slots] : uses) labels.push_back(label);
    std::map<int, int> idx;
    for (size_t i = 0; i < labels.size(); ++i) idx[labels[i]] = static_cast<int>(i);
    std::vector<int> up(labels.size());
    std::iota(up.begin(), up.end(), 0);
    auto unite = [&](int a, int b) {
      up[static_cast<size_t>(find_root(up, idx.at(a)))] = find_root(up, idx.at(b));
    };
    for (int c = 0; c < D.n; ++c) {
      unite(D.pd[static_cast<size_t>(c)][0], D.pd[static_cast<size_t>(c)][2]);
      unite(D.pd[static_cast<size_t>(c)][1], D.pd[static_cast<size_t>(c)][3]);
    }
    int comps = 0;
    for (size_t i = 0; i < labels.size(); ++i)
      if (find_root(up, static_cast<int>(i)) == static_cast<int>(i)) ++comps;
    D.components = comps;
    if (j.contains("components") && j.at("components").get<int>() != comps)
      throw std::invalid_argument("\"components\" is " +
                                  std::to_string(j.at("components").get<int>()) +
                                  " but the diagram has " + std::to_string(comps));
  } else {
    D.components = j.value("components", 0);
    D.free_circles = D.components;
  }
  return D;
}

}  // namespace khoburn
