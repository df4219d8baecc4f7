#include "khoburn/flowcat.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace khoburn {

namespace {

int gmod(int g, int m) { return ((g % m) + m) % m; }

bool is_bijection(const std::vector<int>& f, size_t out_size) {
  if (f.size() != out_size) return false;
  std::vector<bool> hit(out_size, false);
  for (int x : f) {
    if (x < 0 || x >= static_cast<int>(out_size) || hit[static_cast<size_t>(x)]) return false;
    hit[static_cast<size_t>(x)] = true;
  }
  return true;
}

std::string pair_str(Vertex u, Vertex v, int n) {
  return vertex_string(u, n) + "->" + vertex_string(v, n);
}

std::string triple_str(Vertex u, Vertex v, Vertex w, int n) {
  return "u=" + vertex_string(u, n) + " via v=" + vertex_string(v, n) + " w=" +
         vertex_string(w, n);
}

// comparable pairs u > v, ordered by (u, v)
std::vector<std::pair<Vertex, Vertex>> comparable_pairs(int n) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < (Vertex{1} << n); ++u)
    for (Vertex v = 0; v < (Vertex{1} << n); ++v)
      if (u != v && vertex_geq(u, v)) out.push_back({u, v});
  return out;
}

std::vector<std::tuple<Vertex, Vertex, Vertex>> comparable_triples(int n) {
  std::vector<std::tuple<Vertex, Vertex, Vertex>> out;
  for (const auto& [u, w] : comparable_pairs(n))
    for (Vertex v = 0; v < (Vertex{1} << n); ++v)
      if (v != u && v != w && vertex_geq(u, v) && vertex_geq(v, w)) out.push_back({u, v, w});
  return out;
}

Chain concat_chains(const Chain& a, const Chain& b) {
  Chain c = a;
  c.verts.insert(c.verts.end(), b.verts.begin() + 1, b.verts.end());
  return c;
}

// Induced map on canonical composites: apply the edge bijections along the
// canonical chain, then transport the image chain back to canonical form.
CorrMorphism induced_composite_map(const BurnsideFunctor& F, const MusytAction& phi, int g,
                                   Vertex u, Vertex v) {
  const CyclicAction& a = phi.group;
  Chain canon = canonical_chain(u, v);
  Path P = chain_path(F, canon);
  Chain img = act_chain(g, canon, a);
  Path Pimg = chain_path(F, img);
  Chain canon_g = canonical_chain(act_vertex(g, u, a), act_vertex(g, v, a));
  std::vector<int> T = chain_change_map(F, img, canon_g);
  CorrMorphism out(static_cast<size_t>(P.size()), -1);
  std::vector<int> imgs(static_cast<size_t>(canon.length()), 0);
  for (int e = 0; e < P.size(); ++e) {
    for (int p = 0; p < canon.length(); ++p) {
      const auto& bij = phi.edge(g, canon.verts[static_cast<size_t>(p)],
                                 canon.verts[static_cast<size_t>(p) + 1]);
      imgs[static_cast<size_t>(p)] = bij[static_cast<size_t>(P.elems[static_cast<size_t>(e)][static_cast<size_t>(p)])];
    }
    out[static_cast<size_t>(e)] = T[static_cast<size_t>(Pimg.locate(imgs))];
  }
  return out;
}

// Path of edge components along a chain.
Path component_path(const CubicalFlowCategory& C, const Chain& ch) {
  std::vector<Correspondence> edges;
  for (int p = 0; p < ch.length(); ++p)
    edges.push_back(C.component(ch.verts[static_cast<size_t>(p)], ch.verts[static_cast<size_t>(p) + 1]));
  return make_path(std::move(edges));
}

// Fold of the facet compositions along a chain: index map from the edge
// component path to the component set of the chain's endpoints.
std::vector<int> fold_chain(const CubicalFlowCategory& C, const Chain& ch, const Path& P) {
  int k = ch.length();
  std::vector<Path> twopaths;
  for (int j = 1; j < k; ++j)
    twopaths.push_back(make_path({C.component(ch.top(), ch.verts[static_cast<size_t>(j)]),
                                  C.component(ch.verts[static_cast<size_t>(j)],
                                              ch.verts[static_cast<size_t>(j) + 1])}));
  std::vector<int> out(static_cast<size_t>(P.size()), -1);
  for (int e = 0; e < P.size(); ++e) {
    int val = P.elems[static_cast<size_t>(e)][0];
    for (int j = 1; j < k; ++j) {
      const CorrMorphism& mu =
          C.compose_map(ch.top(), ch.verts[static_cast<size_t>(j)], ch.verts[static_cast<size_t>(j) + 1]);
      val = mu[static_cast<size_t>(twopaths[static_cast<size_t>(j) - 1].locate(
          {val, P.elems[static_cast<size_t>(e)][static_cast<size_t>(j)]}))];
    }
    out[static_cast<size_t>(e)] = val;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& CubicalFlowCategory::objects_at(Vertex v) const {
  auto it = objects.find(v);
  if (it == objects.end()) throw std::out_of_range("CubicalFlowCategory: missing object fiber");
  return it->second;
}

const Correspondence& CubicalFlowCategory::component(Vertex u, Vertex v) const {
  auto it = components.find({u, v});
  if (it == components.end()) throw std::out_of_range("CubicalFlowCategory: missing component set");
  return it->second;
}

const CorrMorphism& CubicalFlowCategory::compose_map(Vertex u, Vertex v, Vertex w) const {
  auto it = composition.find({u, v, w});
  if (it == composition.end()) throw std::out_of_range("CubicalFlowCategory: missing composition");
  return it->second;
}

const std::vector<int>& CubicalFlowCategory::object_map(int g, Vertex v) const {
  auto it = object_maps.find({gmod(g, group.m), v});
  if (it == object_maps.end()) throw std::out_of_range("CubicalFlowCategory: missing object map");
  return it->second;
}

const CorrMorphism& CubicalFlowCategory::component_map(int g, Vertex u, Vertex v) const {
  auto it = component_maps.find({gmod(g, group.m), u, v});
  if (it == component_maps.end())
    throw std::out_of_range("CubicalFlowCategory: missing component map");
  return it->second;
}

CubicalFlowCategory burnside_to_flowcat(const BurnsideFunctor& F, const MusytAction& phi,
                                        const RepLabel& V) {
  ValidationReport rep = validate_musyt(F, phi);
  if (!rep.ok) throw std::invalid_argument("burnside_to_flowcat: " + rep.violations.front());
  const CyclicAction& a = phi.group;
  int m = a.m, n = F.n;

  CubicalFlowCategory C;
  C.n = n;
  C.group = a;
  C.shift = V;
  C.objects = F.vertex_sets;

  // gr_G bookkeeping: the coordinate representation at the object's vertex,
  // recorded as orbit sizes under the object's stabilizer
  for (const auto& [v, set] : F.vertex_sets) {
    std::vector<RepLabel> gr;
    for (size_t x = 0; x < set.size(); ++x) {
      int k0 = m;  // minimal positive element generates the stabilizer
      for (int g = 1; g < m; ++g)
        if (act_vertex(g, v, a) == v && phi.vertex(g, v)[x] == static_cast<int>(x)) {
          k0 = g;
          break;
        }
      RepLabel rl;
      rl.virtual_dim = norm(v);
      std::vector<bool> seen(static_cast<size_t>(n), false);
      for (int i = 0; i < n; ++i) {
        if (!(v >> i & 1) || seen[static_cast<size_t>(i)]) continue;
        int len = 0, j = i;
        do {
          seen[static_cast<size_t>(j)] = true;
          ++len;
          j = a.coord_image(k0, j);
        } while (j != i);
        rl.multiplicities["orbit" + std::to_string(len)] += 1;
      }
      gr.push_back(rl);
    }
    C.gradings[v] = std::move(gr);
  }

  for (const auto& [u, v] : comparable_pairs(n)) C.components[{u, v}] = composite_corr(F, u, v);

  for (const auto& [u, v, w] : comparable_triples(n)) {
    Chain cat = concat_chains(canonical_chain(u, v), canonical_chain(v, w));
    C.composition[{u, v, w}] = chain_change_map(F, cat, canonical_chain(u, w));
  }

  C.object_maps = phi.vertex_bijections;
  for (int g = 0; g < m; ++g)
    for (const auto& [u, v] : comparable_pairs(n))
      C.component_maps[{g, u, v}] = induced_composite_map(F, phi, g, u, v);
  return C;
}

BurnsideData flowcat_to_burnside(const CubicalFlowCategory& C) {
  ValidationReport rep = validate_flowcat(C);
  if (!rep.ok) throw std::invalid_argument("flowcat_to_burnside: " + rep.violations.front());

  BurnsideData out;
  out.functor.n = C.n;
  out.functor.vertex_sets = C.objects;
  for (const auto& [key, c] : C.components)
    if (norm(key.first) - norm(key.second) == 1) out.functor.edge_corrs[key] = c;
  // stored square maps route the via-v composite to the via-v' composite
  for (const SquareKey& sq : all_squares(C.n)) {
    const CorrMorphism& mu_v = C.compose_map(sq.u, sq.v, sq.w);
    const CorrMorphism& mu_vp = C.compose_map(sq.u, sq.vp, sq.w);
    out.functor.squares[sq] = index_map_compose(index_map_inverse(mu_vp), mu_v);
  }
  out.action.group = C.group;
  out.action.vertex_bijections = C.object_maps;
  for (const auto& [key, cm] : C.component_maps)
    if (norm(std::get<1>(key)) - norm(std::get<2>(key)) == 1)
      out.action.edge_bijections[key] = cm;
  out.shift = C.shift;
  return out;
}

ValidationReport validate_flowcat(const CubicalFlowCategory& C) {
  ValidationReport r;
  int n = C.n;
  if (n < 0 || n > 30) {
    r.fail("dimension out of range");
    return r;
  }
  const CyclicAction& a = C.group;
  if (!a.valid()) {
    r.fail("group action is not a valid cyclic action");
    return r;
  }
  if (a.dim() != n) {
    r.fail("group acts on a cube of the wrong dimension");
    return r;
  }
  int m = a.m;
  Vertex top = Vertex{1} << n;

  // object fibers and gradings
  for (Vertex v = 0; v < top; ++v) {
    auto it = C.objects.find(v);
    if (it == C.objects.end()) {
      r.fail("object fiber missing at v=" + vertex_string(v, n));
      continue;
    }
    const auto& set = it->second;
    bool good = std::is_sorted(set.begin(), set.end()) &&
                std::adjacent_find(set.begin(), set.end()) == set.end();
    for (const auto& s : set) good = good && label_ok(s);
    if (!good)
      r.fail("object fiber at v=" + vertex_string(v, n) + " is not a sorted set of labels");
    auto git = C.gradings.find(v);
    if (git == C.gradings.end() || git->second.size() != set.size()) {
      r.fail("grading missing or mismatched at v=" + vertex_string(v, n));
    } else {
      for (size_t x = 0; x < set.size(); ++x)
        if (git->second[x].virtual_dim != norm(v))
          r.fail("grading dimension at v=" + vertex_string(v, n) + " object " + set[x] +
                 " differs from the vertex norm");
    }
  }
  if (C.objects.size() != top) r.fail("object fiber at an unexpected vertex");
  if (C.gradings.size() > top) r.fail("grading at an unexpected vertex");

  // component sets
  auto pairs = comparable_pairs(n);
  for (const auto& [u, v] : pairs) {
    auto it = C.components.find({u, v});
    if (it == C.components.end()) {
      r.fail("component set missing at " + pair_str(u, v, n));
      continue;
    }
    const Correspondence& c = it->second;
    if (C.objects.count(u) && C.objects.count(v) &&
        (c.src != C.objects.at(u) || c.tgt != C.objects.at(v)))
      r.fail("component endpoints at " + pair_str(u, v, n) + " do not match the object fibers");
    bool good = true;
    for (size_t e = 0; e < c.elements.size(); ++e) {
      const auto& el = c.elements[e];
      good = good && composite_label_ok(el.label) && el.s >= 0 &&
             el.s < static_cast<int>(c.src.size()) &&
             el.t >= 0 && el.t < static_cast<int>(c.tgt.size()) &&
             (e == 0 || c.elements[e - 1].label < el.label);
    }
    if (!good) r.fail("component set at " + pair_str(u, v, n) + " is malformed");
  }
  if (C.components.size() != pairs.size()) r.fail("component set at an unexpected pair");
  if (!r.ok) return r;

  // facet compositions
  auto triples = comparable_triples(n);
  for (const auto& [u, v, w] : triples) {
    auto it = C.composition.find({u, v, w});
    if (it == C.composition.end()) {
      r.fail("facet composition missing at " + triple_str(u, v, w, n));
      continue;
    }
    Correspondence dom = compose(C.component(v, w), C.component(u, v));
    const Correspondence& cod = C.component(u, w);
    if (!corr_morphism_valid(dom, cod, it->second))
      r.fail("facet composition at " + triple_str(u, v, w, n) +
             " is not a morphism of correspondences");
    else if (!is_bijection(it->second, cod.elements.size()))
      r.fail("facet composition at " + triple_str(u, v, w, n) +
             " is not a bijection onto the component set");
  }
  if (C.composition.size() != triples.size()) r.fail("facet composition at an unexpected triple");
  if (!r.ok) return r;

  // associativity over length-3 chains
  for (const auto& [u, w] : pairs) {
    if (norm(u) - norm(w) < 3) continue;
    for (const Chain& ch : enumerate_chains(u, w, 3)) {
      Vertex p = ch.verts[1], q = ch.verts[2];
      Path whole = make_path(
          {C.component(u, p), C.component(p, q), C.component(q, w)});
      Path inner_right = make_path({C.component(p, q), C.component(q, w)});
      Path outer_right = make_path({C.component(u, p), C.component(p, w)});
      Path inner_left = make_path({C.component(u, p), C.component(p, q)});
      Path outer_left = make_path({C.component(u, q), C.component(q, w)});
      const CorrMorphism& mu_pq = C.compose_map(p, q, w);
      const CorrMorphism& mu_up = C.compose_map(u, p, w);
      const CorrMorphism& mu_upq = C.compose_map(u, p, q);
      const CorrMorphism& mu_uq = C.compose_map(u, q, w);
      for (int e = 0; e < whole.size(); ++e) {
        const auto& c3 = whole.elems[static_cast<size_t>(e)];
        int d = mu_pq[static_cast<size_t>(inner_right.locate({c3[1], c3[2]}))];
        int lhs = mu_up[static_cast<size_t>(outer_right.locate({c3[0], d}))];
        int f = mu_upq[static_cast<size_t>(inner_left.locate({c3[0], c3[1]}))];
        int rhs = mu_uq[static_cast<size_t>(outer_left.locate({f, c3[2]}))];
        if (lhs != rhs) {
          r.fail("composition associativity fails along " + vertex_string(u, n) + ">" +
                 vertex_string(p, n) + ">" + vertex_string(q, n) + ">" + vertex_string(w, n) +
                 " element " + std::to_string(e));
          break;
        }
      }
    }
  }

  // boundary decomposition of the implicit face posets: the faces of an
  // interval that refine a two-step chain split as a product of the two
  // sub-intervals' faces
  std::map<std::pair<Vertex, Vertex>, long long> face_counts;
  for (const auto& [u, v] : pairs) face_counts[{u, v}] = static_cast<long long>(face_poset(u, v).faces.size());
  for (const auto& [u, v, w] : triples) {
    FacePoset fp = face_poset(u, w);
    long long through = 0;
    for (const Chain& c : fp.faces)
      if (std::find(c.verts.begin(), c.verts.end(), v) != c.verts.end()) ++through;
    if (through != face_counts[{u, v}] * face_counts[{v, w}])
      r.fail("interval faces do not split at " + triple_str(u, v, w, n));
  }

  // group layer: presence and shape
  for (int g = 0; g < m; ++g) {
    for (Vertex v = 0; v < top; ++v) {
      auto it = C.object_maps.find({g, v});
      if (it == C.object_maps.end()) {
        r.fail("object map missing at g=" + std::to_string(g) + " v=" + vertex_string(v, n));
        continue;
      }
      if (it->second.size() != C.objects.at(v).size() ||
          !is_bijection(it->second, C.objects.at(act_vertex(g, v, a)).size()))
        r.fail("object map at g=" + std::to_string(g) + " v=" + vertex_string(v, n) +
               " is not a bijection onto the image fiber");
    }
    for (const auto& [u, v] : pairs) {
      auto it = C.component_maps.find({g, u, v});
      if (it == C.component_maps.end()) {
        r.fail("component map missing at g=" + std::to_string(g) + " " + pair_str(u, v, n));
        continue;
      }
      Vertex gu = act_vertex(g, u, a), gv = act_vertex(g, v, a);
      if (it->second.size() != C.component(u, v).elements.size() ||
          !is_bijection(it->second, C.component(gu, gv).elements.size()))
        r.fail("component map at g=" + std::to_string(g) + " " + pair_str(u, v, n) +
               " is not a bijection onto the image components");
    }
  }
  if (!r.ok) return r;

  // identity layer
  for (Vertex v = 0; v < top; ++v)
    if (!index_map_is_identity(C.object_map(0, v)))
      r.fail("identity layer: object map at v=" + vertex_string(v, n) + " is not the identity");
  for (const auto& [u, v] : pairs)
    if (!index_map_is_identity(C.component_map(0, u, v)))
      r.fail("identity layer: component map at " + pair_str(u, v, n) + " is not the identity");

  // group cocycle
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h) {
      for (Vertex v = 0; v < top; ++v) {
        Vertex hv = act_vertex(h, v, a);
        if (C.object_map(gmod(g + h, m), v) !=
            index_map_compose(C.object_map(g, hv), C.object_map(h, v)))
          r.fail("group cocycle fails on objects at g=" + std::to_string(g) + " h=" +
                 std::to_string(h) + " v=" + vertex_string(v, n));
      }
      for (const auto& [u, v] : pairs) {
        Vertex hu = act_vertex(h, u, a), hv = act_vertex(h, v, a);
        if (C.component_map(gmod(g + h, m), u, v) !=
            index_map_compose(C.component_map(g, hu, hv), C.component_map(h, u, v)))
          r.fail("group cocycle fails on components at g=" + std::to_string(g) + " h=" +
                 std::to_string(h) + " " + pair_str(u, v, n));
      }
    }

  // component maps cover the object maps
  for (int g = 0; g < m; ++g)
    for (const auto& [u, v] : pairs) {
      const Correspondence& dom = C.component(u, v);
      Vertex gu = act_vertex(g, u, a), gv = act_vertex(g, v, a);
      const Correspondence& cod = C.component(gu, gv);
      const CorrMorphism& cm = C.component_map(g, u, v);
      const auto& ou = C.object_map(g, u);
      const auto& ov = C.object_map(g, v);
      for (size_t e = 0; e < dom.elements.size(); ++e)
        if (cod.elements[static_cast<size_t>(cm[e])].s != ou[static_cast<size_t>(dom.elements[e].s)] ||
            cod.elements[static_cast<size_t>(cm[e])].t != ov[static_cast<size_t>(dom.elements[e].t)]) {
          r.fail("component map at g=" + std::to_string(g) + " " + pair_str(u, v, n) +
                 " does not cover the object maps");
          break;
        }
    }
  if (!r.ok) return r;

  // equivariance of composition
  for (int g = 0; g < m; ++g)
    for (const auto& [u, v, w] : triples) {
      Vertex gu = act_vertex(g, u, a), gv = act_vertex(g, v, a), gw = act_vertex(g, w, a);
      Path P = make_path({C.component(u, v), C.component(v, w)});
      Path Pg = make_path({C.component(gu, gv), C.component(gv, gw)});
      const CorrMorphism& mu = C.compose_map(u, v, w);
      const CorrMorphism& mu_g = C.compose_map(gu, gv, gw);
      const CorrMorphism& cm_uv = C.component_map(g, u, v);
      const CorrMorphism& cm_vw = C.component_map(g, v, w);
      const CorrMorphism& cm_uw = C.component_map(g, u, w);
      for (int e = 0; e < P.size(); ++e) {
        int lhs = cm_uw[static_cast<size_t>(mu[static_cast<size_t>(e)])];
        int rhs = mu_g[static_cast<size_t>(Pg.locate(
            {cm_uv[static_cast<size_t>(P.elems[static_cast<size_t>(e)][0])],
             cm_vw[static_cast<size_t>(P.elems[static_cast<size_t>(e)][1])]}))];
        if (lhs != rhs) {
          r.fail("composition equivariance fails at g=" + std::to_string(g) + " " +
                 triple_str(u, v, w, n) + " element " + std::to_string(e));
          break;
        }
      }
    }
  return r;
}

namespace {

// Everything the witness search needs from one category, with composites
// collapsed to edge data through the facet compositions.
struct EdgeView {
  const CubicalFlowCategory* C = nullptr;
  std::map<std::pair<Vertex, Vertex>, Path> paths;        // canonical edge paths, r >= 2
  std::map<std::pair<Vertex, Vertex>, std::vector<int>> folds;  // path index -> component index
};

EdgeView make_view(const CubicalFlowCategory& C) {
  EdgeView v;
  v.C = &C;
  for (const auto& [u, w] : comparable_pairs(C.n)) {
    if (norm(u) - norm(w) < 2) continue;
    Chain canon = canonical_chain(u, w);
    Path P = component_path(C, canon);
    v.folds[{u, w}] = fold_chain(C, canon, P);
    v.paths[{u, w}] = std::move(P);
  }
  return v;
}

struct SearchState {
  std::map<Vertex, std::vector<int>> eta;                       // object bijections
  std::map<std::pair<Vertex, Vertex>, CorrMorphism> eps;        // edge component bijections
  long long budget = 2'000'000;
};

// Expand edge-level data to a composite bijection for one pair.
CorrMorphism expand_pair(const EdgeView& VC, const EdgeView& VD, const SearchState& st,
                         Vertex u, Vertex w) {
  if (norm(u) - norm(w) == 1) return st.eps.at({u, w});
  const Path& PC = VC.paths.at({u, w});
  const Path& PD = VD.paths.at({u, w});
  const std::vector<int>& foldC = VC.folds.at({u, w});
  const std::vector<int>& foldD = VD.folds.at({u, w});
  std::vector<int> foldC_inv = index_map_inverse(foldC);
  Chain canon = canonical_chain(u, w);
  CorrMorphism out(foldC.size(), -1);
  std::vector<int> imgs(static_cast<size_t>(canon.length()), 0);
  for (size_t c = 0; c < foldC_inv.size(); ++c) {
    const auto& chain_elems = PC.elems[static_cast<size_t>(foldC_inv[c])];
    for (int p = 0; p < canon.length(); ++p)
      imgs[static_cast<size_t>(p)] =
          st.eps.at({canon.verts[static_cast<size_t>(p)], canon.verts[static_cast<size_t>(p) + 1]})
              [static_cast<size_t>(chain_elems[static_cast<size_t>(p)])];
    out[c] = foldD[static_cast<size_t>(PD.locate(imgs))];
  }
  return out;
}

// Check every coupling condition on a complete candidate; fills the witness
// component bijections on success.
bool check_candidate(const CubicalFlowCategory& C, const CubicalFlowCategory& D,
                     const EdgeView& VC, const EdgeView& VD, const SearchState& st,
                     FlowcatIso& out) {
  int n = C.n, m = C.group.m;
  std::map<std::pair<Vertex, Vertex>, CorrMorphism> comp_bij;
  for (const auto& [u, w] : comparable_pairs(n)) comp_bij[{u, w}] = expand_pair(VC, VD, st, u, w);

  // compositions intertwine
  for (const auto& [u, v, w] : comparable_triples(n)) {
    Path P = make_path({C.component(u, v), C.component(v, w)});
    Path PD = make_path({D.component(u, v), D.component(v, w)});
    const CorrMorphism& muC = C.compose_map(u, v, w);
    const CorrMorphism& muD = D.compose_map(u, v, w);
    const CorrMorphism& euv = comp_bij.at({u, v});
    const CorrMorphism& evw = comp_bij.at({v, w});
    const CorrMorphism& euw = comp_bij.at({u, w});
    for (int e = 0; e < P.size(); ++e) {
      int lhs = euw[static_cast<size_t>(muC[static_cast<size_t>(e)])];
      int rhs = muD[static_cast<size_t>(PD.locate(
          {euv[static_cast<size_t>(P.elems[static_cast<size_t>(e)][0])],
           evw[static_cast<size_t>(P.elems[static_cast<size_t>(e)][1])]}))];
      if (lhs != rhs) return false;
    }
  }
  // group equivariance
  Vertex top = Vertex{1} << n;
  for (int g = 0; g < m; ++g) {
    for (Vertex v = 0; v < top; ++v) {
      Vertex gv = act_vertex(g, v, C.group);
      if (index_map_compose(st.eta.at(gv), C.object_map(g, v)) !=
          index_map_compose(D.object_map(g, v), st.eta.at(v)))
        return false;
    }
    for (const auto& [u, v] : comparable_pairs(n)) {
      Vertex gu = act_vertex(g, u, C.group), gv = act_vertex(g, v, C.group);
      if (index_map_compose(comp_bij.at({gu, gv}), C.component_map(g, u, v)) !=
          index_map_compose(D.component_map(g, u, v), comp_bij.at({u, v})))
        return false;
    }
  }
  out.object_bijections = st.eta;
  out.component_bijections = std::move(comp_bij);
  return true;
}

// s/t-commuting candidate bijections for one edge pair under a fixed eta.
bool assign_edges(const CubicalFlowCategory& C, const CubicalFlowCategory& D,
                  const EdgeView& VC, const EdgeView& VD, SearchState& st,
                  std::vector<std::pair<Vertex, Vertex>>& edges, size_t pos, FlowcatIso& out) {
  if (st.budget-- <= 0) return false;
  if (pos == edges.size()) return check_candidate(C, D, VC, VD, st, out);
  auto [u, v] = edges[pos];
  const Correspondence& dom = C.component(u, v);
  const Correspondence& cod = D.component(u, v);
  if (dom.elements.size() != cod.elements.size()) return false;
  const auto& eu = st.eta.at(u);
  const auto& ev = st.eta.at(v);
  size_t sz = dom.elements.size();
  CorrMorphism& cur = st.eps[{u, v}];
  cur.assign(sz, -1);
  std::vector<bool> used(sz, false);
  // backtrack elementwise within the fiber structure
  auto rec = [&](auto&& self, size_t e) -> bool {
    if (st.budget-- <= 0) return false;
    if (e == sz) return assign_edges(C, D, VC, VD, st, edges, pos + 1, out);
    for (size_t c = 0; c < sz; ++c) {
      if (used[c]) continue;
      if (cod.elements[c].s != eu[static_cast<size_t>(dom.elements[e].s)] ||
          cod.elements[c].t != ev[static_cast<size_t>(dom.elements[e].t)])
        continue;
      used[c] = true;
      cur[e] = static_cast<int>(c);
      if (self(self, e + 1)) return true;
      used[c] = false;
    }
    return false;
  };
  if (rec(rec, 0)) return true;
  st.eps.erase({u, v});
  return false;
}

bool assign_objects(const CubicalFlowCategory& C, const CubicalFlowCategory& D,
                    const EdgeView& VC, const EdgeView& VD, SearchState& st, Vertex v,
                    std::vector<std::pair<Vertex, Vertex>>& edges, FlowcatIso& out) {
  if (st.budget-- <= 0) return false;
  Vertex top = Vertex{1} << C.n;
  if (v == top) return assign_edges(C, D, VC, VD, st, edges, 0, out);
  size_t sz = C.objects_at(v).size();
  std::vector<int> perm(sz);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (st.budget <= 0) return false;
    st.eta[v] = perm;
    if (assign_objects(C, D, VC, VD, st, v + 1, edges, out)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  st.eta.erase(v);
  return false;
}

}  // namespace

FlowcatIso flowcat_natural_iso(const CubicalFlowCategory& C, const CubicalFlowCategory& D) {
  FlowcatIso w;
  if (C.n != D.n) {
    w.violations.push_back("cube dimensions differ");
    return w;
  }
  if (!(C.group == D.group)) {
    w.violations.push_back("group actions differ");
    return w;
  }
  if (!(C.shift == D.shift)) {
    w.violations.push_back("suspension labels differ");
    return w;
  }
  int n = C.n;
  Vertex top = Vertex{1} << n;
  for (Vertex v = 0; v < top; ++v) {
    auto ic = C.objects.find(v), id = D.objects.find(v);
    size_t sc = ic == C.objects.end() ? 0 : ic->second.size();
    size_t sd = id == D.objects.end() ? 0 : id->second.size();
    if (sc != sd)
      w.violations.push_back("object counts differ at v=" + vertex_string(v, n));
  }
  for (const auto& [u, v] : comparable_pairs(n)) {
    auto ic = C.components.find({u, v}), id = D.components.find({u, v});
    size_t sc = ic == C.components.end() ? 0 : ic->second.elements.size();
    size_t sd = id == D.components.end() ? 0 : id->second.elements.size();
    if (sc != sd)
      w.violations.push_back("component counts differ at " + pair_str(u, v, n));
  }
  if (!w.violations.empty()) return w;

  ValidationReport rc = validate_flowcat(C);
  if (!rc.ok) {
    w.violations.push_back("left category: " + rc.violations.front());
    return w;
  }
  ValidationReport rd = validate_flowcat(D);
  if (!rd.ok) {
    w.violations.push_back("right category: " + rd.violations.front());
    return w;
  }

  EdgeView VC = make_view(C);
  EdgeView VD = make_view(D);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const auto& [u, v] : comparable_pairs(n))
    if (norm(u) - norm(v) == 1) edges.push_back({u, v});

  // fast path: identity by label, which is the canonical witness whenever the
  // right side was rebuilt from the left side's own edge data
  bool same_labels = true;
  for (Vertex v = 0; v < top && same_labels; ++v)
    same_labels = C.objects_at(v) == D.objects_at(v);
  for (const auto& e : edges) {
    if (!same_labels) break;
    const auto& dc = C.component(e.first, e.second).elements;
    const auto& dd = D.component(e.first, e.second).elements;
    same_labels = dc == dd;
  }
  if (same_labels) {
    SearchState st;
    for (Vertex v = 0; v < top; ++v) {
      std::vector<int> id_map(C.objects_at(v).size());
      std::iota(id_map.begin(), id_map.end(), 0);
      st.eta[v] = std::move(id_map);
    }
    for (const auto& e : edges)
      st.eps[e] = corr_morphism_identity(C.component(e.first, e.second));
    if (check_candidate(C, D, VC, VD, st, w)) {
      w.ok = true;
      return w;
    }
  }

  SearchState st;
  FlowcatIso found;
  if (assign_objects(C, D, VC, VD, st, 0, edges, found)) {
    found.ok = true;
    return found;
  }
  w.violations.push_back(st.budget <= 0 ? "search budget exhausted"
                                        : "no equivariant isomorphism exists");
  return w;
}

}  // namespace khoburn
