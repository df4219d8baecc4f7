#include "khoburn/actions.hpp"

#include <algorithm>
#include <stdexcept>

namespace khoburn {

namespace {

int gmod(int g, int m) { return ((g % m) + m) % m; }

// src index -> element index; only meaningful for invertible correspondences.
std::vector<int> s_inverse(const Correspondence& c) {
  std::vector<int> inv(c.src.size(), -1);
  for (size_t i = 0; i < c.elements.size(); ++i)
    inv[static_cast<size_t>(c.elements[i].s)] = static_cast<int>(i);
  return inv;
}

bool is_bijection(const std::vector<int>& f, size_t out_size) {
  if (f.size() != out_size) return false;
  std::vector<bool> hit(out_size, false);
  for (int x : f) {
    if (x < 0 || x >= static_cast<int>(out_size) || hit[static_cast<size_t>(x)]) return false;
    hit[static_cast<size_t>(x)] = true;
  }
  return true;
}

std::string edge_str(Vertex u, Vertex v, int n) {
  return vertex_string(u, n) + "->" + vertex_string(v, n);
}

}  // namespace

const std::vector<int>& MusytAction::vertex(int g, Vertex v) const {
  auto it = vertex_bijections.find({gmod(g, group.m), v});
  if (it == vertex_bijections.end())
    throw std::out_of_range("MusytAction: missing vertex bijection");
  return it->second;
}

const std::vector<int>& MusytAction::edge(int g, Vertex u, Vertex v) const {
  auto it = edge_bijections.find({gmod(g, group.m), u, v});
  if (it == edge_bijections.end()) throw std::out_of_range("MusytAction: missing edge bijection");
  return it->second;
}

const Correspondence& SZAction::one_iso(int g, Vertex v) const {
  auto it = one_isos.find({gmod(g, group.m), v});
  if (it == one_isos.end()) throw std::out_of_range("SZAction: missing one-iso");
  return it->second;
}

const CorrMorphism& SZAction::square_witness(int g, int h, Vertex v) const {
  auto it = square_witnesses.find({gmod(g, group.m), gmod(h, group.m), v});
  if (it == square_witnesses.end())
    throw std::out_of_range("SZAction: missing multiplicativity witness");
  return it->second;
}

const CorrMorphism& SZAction::edge_two_morphism(int g, Vertex u, Vertex v) const {
  auto it = edge_two_morphisms.find({gmod(g, group.m), u, v});
  if (it == edge_two_morphisms.end())
    throw std::out_of_range("SZAction: missing edge 2-morphism");
  return it->second;
}

RepLabel RepLabel::operator+(const RepLabel& o) const {
  RepLabel r = *this;
  r.virtual_dim += o.virtual_dim;
  for (const auto& [k, c] : o.multiplicities) {
    int& v = r.multiplicities[k];
    v += c;
    if (v == 0) r.multiplicities.erase(k);
  }
  return r;
}

ValidationReport validate_musyt(const BurnsideFunctor& F, const MusytAction& phi) {
  ValidationReport r;
  const CyclicAction& a = phi.group;
  if (!a.valid()) {
    r.fail("group action is not a valid cyclic action");
    return r;
  }
  if (a.dim() != F.n) {
    r.fail("group acts on a cube of the wrong dimension");
    return r;
  }
  int m = a.m, n = F.n;

  // presence and shape
  for (int g = 0; g < m; ++g) {
    for (const auto& [v, set] : F.vertex_sets) {
      auto it = phi.vertex_bijections.find({g, v});
      if (it == phi.vertex_bijections.end()) {
        r.fail("vertex bijection missing at g=" + std::to_string(g) + " v=" +
               vertex_string(v, n));
        continue;
      }
      Vertex gv = act_vertex(g, v, a);
      if (it->second.size() != set.size() || !is_bijection(it->second, F.at(gv).size()))
        r.fail("vertex bijection at g=" + std::to_string(g) + " v=" + vertex_string(v, n) +
               " is not a bijection onto the image vertex set");
    }
    for (const auto& [key, c] : F.edge_corrs) {
      auto it = phi.edge_bijections.find({g, key.first, key.second});
      if (it == phi.edge_bijections.end()) {
        r.fail("edge bijection missing at g=" + std::to_string(g) + " edge " +
               edge_str(key.first, key.second, n));
        continue;
      }
      Vertex gu = act_vertex(g, key.first, a), gv = act_vertex(g, key.second, a);
      if (it->second.size() != c.elements.size() ||
          !is_bijection(it->second, F.edge(gu, gv).elements.size()))
        r.fail("edge bijection at g=" + std::to_string(g) + " edge " +
               edge_str(key.first, key.second, n) + " is not a bijection onto the image edge");
    }
  }
  if (!r.ok) return r;

  // identity layer
  for (const auto& [v, set] : F.vertex_sets)
    if (act_vertex(0, v, a) != v || !index_map_is_identity(phi.vertex(0, v)))
      r.fail("identity layer: vertex bijection at v=" + vertex_string(v, n) +
             " is not the identity");
  for (const auto& [key, c] : F.edge_corrs)
    if (!index_map_is_identity(phi.edge(0, key.first, key.second)))
      r.fail("identity layer: edge bijection at " + edge_str(key.first, key.second, n) +
             " is not the identity");

  // cocycle rules
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h) {
      for (const auto& [v, set] : F.vertex_sets) {
        Vertex hv = act_vertex(h, v, a);
        const auto& lhs = phi.vertex(g + h, v);
        const auto& f1 = phi.vertex(h, v);
        const auto& f2 = phi.vertex(g, hv);
        if (lhs != index_map_compose(f2, f1))
          r.fail("vertex cocycle fails at g=" + std::to_string(g) + " h=" + std::to_string(h) +
                 " v=" + vertex_string(v, n));
      }
      for (const auto& [key, c] : F.edge_corrs) {
        Vertex hu = act_vertex(h, key.first, a), hv = act_vertex(h, key.second, a);
        const auto& lhs = phi.edge(g + h, key.first, key.second);
        const auto& f1 = phi.edge(h, key.first, key.second);
        const auto& f2 = phi.edge(g, hu, hv);
        if (lhs != index_map_compose(f2, f1))
          r.fail("edge cocycle fails at g=" + std::to_string(g) + " h=" + std::to_string(h) +
                 " edge " + edge_str(key.first, key.second, n));
      }
    }

  // endpoint intertwining
  for (int g = 0; g < m; ++g)
    for (const auto& [key, c] : F.edge_corrs) {
      Vertex gu = act_vertex(g, key.first, a), gv = act_vertex(g, key.second, a);
      const Correspondence& cg = F.edge(gu, gv);
      const auto& fe = phi.edge(g, key.first, key.second);
      const auto& fu = phi.vertex(g, key.first);
      const auto& fv = phi.vertex(g, key.second);
      for (size_t i = 0; i < c.elements.size(); ++i) {
        const auto& el = c.elements[i];
        const auto& im = cg.elements[static_cast<size_t>(fe[i])];
        if (im.s != fu[static_cast<size_t>(el.s)] || im.t != fv[static_cast<size_t>(el.t)]) {
          r.fail("endpoint intertwining fails at g=" + std::to_string(g) + " edge " +
                 edge_str(key.first, key.second, n) + " element " + std::to_string(i));
          break;
        }
      }
    }
  if (!r.ok) return r;

  // square compatibility: relabeling a 2-face's route must match the image
  // square's route bijection.
  for (const auto& [sq, mor] : F.squares) {
    (void)mor;
    Path P = make_path({F.edge(sq.u, sq.v), F.edge(sq.v, sq.w)});
    Path Q = make_path({F.edge(sq.u, sq.vp), F.edge(sq.vp, sq.w)});
    CorrMorphism via = F.square_map(sq.u, sq.v, sq.vp, sq.w);
    for (int g = 0; g < m; ++g) {
      Vertex gu = act_vertex(g, sq.u, a), gv = act_vertex(g, sq.v, a);
      Vertex gvp = act_vertex(g, sq.vp, a), gw = act_vertex(g, sq.w, a);
      Path Pg = make_path({F.edge(gu, gv), F.edge(gv, gw)});
      Path Qg = make_path({F.edge(gu, gvp), F.edge(gvp, gw)});
      CorrMorphism via_g = F.square_map(gu, gv, gvp, gw);
      const auto& e_uv = phi.edge(g, sq.u, sq.v);
      const auto& e_vw = phi.edge(g, sq.v, sq.w);
      const auto& e_uvp = phi.edge(g, sq.u, sq.vp);
      const auto& e_vpw = phi.edge(g, sq.vp, sq.w);
      for (int e = 0; e < P.size(); ++e) {
        const auto& ch = P.elems[static_cast<size_t>(e)];
        int q = via[static_cast<size_t>(e)];
        const auto& qc = Q.elems[static_cast<size_t>(q)];
        int lhs = Qg.locate({e_uvp[static_cast<size_t>(qc[0])], e_vpw[static_cast<size_t>(qc[1])]});
        int pg = Pg.locate({e_uv[static_cast<size_t>(ch[0])], e_vw[static_cast<size_t>(ch[1])]});
        int rhs = pg < 0 ? -1 : via_g[static_cast<size_t>(pg)];
        if (lhs < 0 || rhs < 0 || lhs != rhs) {
          r.fail("square compatibility fails at g=" + std::to_string(g) + " square u=" +
                 vertex_string(sq.u, n) + " v=" + vertex_string(sq.v, n) + " v'=" +
                 vertex_string(sq.vp, n) + " w=" + vertex_string(sq.w, n) + " element " +
                 std::to_string(e));
          break;
        }
      }
    }
  }
  return r;
}

SZAction musyt_to_sz(const BurnsideFunctor& F, const MusytAction& phi) {
  SZAction psi;
  psi.group = phi.group;
  const CyclicAction& a = phi.group;
  int m = a.m;

  for (int g = 0; g < m; ++g)
    for (const auto& [v, labels] : F.vertex_sets) {
      Vertex gv = act_vertex(g, v, a);
      const auto& bij = phi.vertex(g, v);
      std::vector<std::tuple<std::string, std::string, std::string>> triples;
      for (size_t i = 0; i < labels.size(); ++i)
        triples.emplace_back(labels[i], labels[i], F.at(gv)[static_cast<size_t>(bij[i])]);
      psi.one_isos[{g, v}] = make_correspondence(labels, F.at(gv), std::move(triples));
    }

  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h)
      for (const auto& [v, labels] : F.vertex_sets) {
        Vertex hv = act_vertex(h, v, a);
        const Correspondence& dom = psi.one_iso(g + h, v);
        const Correspondence& B0 = psi.one_iso(h, v);
        const Correspondence& B1 = psi.one_iso(g, hv);
        Path P = make_path({B0, B1});
        auto s0 = s_inverse(B0), s1 = s_inverse(B1);
        CorrMorphism w(dom.elements.size(), -1);
        for (size_t e = 0; e < dom.elements.size(); ++e) {
          int x0 = s0[static_cast<size_t>(dom.elements[e].s)];
          int x1 = s1[static_cast<size_t>(B0.elements[static_cast<size_t>(x0)].t)];
          w[e] = P.locate({x0, x1});
        }
        psi.square_witnesses[{g, h, v}] = std::move(w);
      }

  for (int g = 0; g < m; ++g)
    for (const auto& [key, A] : F.edge_corrs) {
      Vertex gu = act_vertex(g, key.first, a), gv = act_vertex(g, key.second, a);
      const auto& ebij = phi.edge(g, key.first, key.second);
      const Correspondence& Ag = F.edge(gu, gv);
      Path PD = make_path({A, psi.one_iso(g, key.second)});
      Path PC = make_path({psi.one_iso(g, key.first), Ag});
      auto su = s_inverse(psi.one_iso(g, key.first));
      CorrMorphism T(static_cast<size_t>(PD.size()), -1);
      for (int e = 0; e < PD.size(); ++e) {
        int ai = PD.elems[static_cast<size_t>(e)][0];
        int b = ebij[static_cast<size_t>(ai)];
        int y = su[static_cast<size_t>(A.elements[static_cast<size_t>(ai)].s)];
        T[static_cast<size_t>(e)] = PC.locate({y, b});
      }
      psi.edge_two_morphisms[{g, key.first, key.second}] = std::move(T);
    }
  return psi;
}

MusytAction sz_to_musyt(const BurnsideFunctor& F, const SZAction& psi) {
  MusytAction M;
  M.group = psi.group;
  const CyclicAction& a = psi.group;
  int m = a.m;

  for (int g = 0; g < m; ++g)
    for (const auto& [v, labels] : F.vertex_sets) {
      const Correspondence& c = psi.one_iso(g, v);
      if (!is_invertible(c)) throw std::invalid_argument("sz_to_musyt: one-iso not invertible");
      std::vector<int> f(c.src.size(), -1);
      for (const auto& e : c.elements) f[static_cast<size_t>(e.s)] = e.t;
      M.vertex_bijections[{g, v}] = std::move(f);
    }

  for (int g = 0; g < m; ++g)
    for (const auto& [key, A] : F.edge_corrs) {
      Vertex gu = act_vertex(g, key.first, a), gv = act_vertex(g, key.second, a);
      Path PD = make_path({A, psi.one_iso(g, key.second)});
      Path PC = make_path({psi.one_iso(g, key.first), F.edge(gu, gv)});
      const CorrMorphism& T = psi.edge_two_morphism(g, key.first, key.second);
      auto sv = s_inverse(psi.one_iso(g, key.second));
      std::vector<int> f(A.elements.size(), -1);
      for (size_t ai = 0; ai < A.elements.size(); ++ai) {
        int e = PD.locate({static_cast<int>(ai), sv[static_cast<size_t>(A.elements[ai].t)]});
        if (e < 0) throw std::invalid_argument("sz_to_musyt: malformed edge 2-morphism domain");
        int fc = T[static_cast<size_t>(e)];
        f[ai] = PC.elems[static_cast<size_t>(fc)][1];
      }
      M.edge_bijections[{g, key.first, key.second}] = std::move(f);
    }
  return M;
}

ValidationReport validate_sz(const BurnsideFunctor& F, const SZAction& psi) {
  ValidationReport r;
  const CyclicAction& a = psi.group;
  if (!a.valid()) {
    r.fail("group action is not a valid cyclic action");
    return r;
  }
  if (a.dim() != F.n) {
    r.fail("group acts on a cube of the wrong dimension");
    return r;
  }
  int m = a.m, n = F.n;

  // presence, endpoints, invertibility, identity layer
  for (int g = 0; g < m; ++g)
    for (const auto& [v, labels] : F.vertex_sets) {
      auto it = psi.one_isos.find({g, v});
      if (it == psi.one_isos.end()) {
        r.fail("one-iso missing at g=" + std::to_string(g) + " v=" + vertex_string(v, n));
        continue;
      }
      Vertex gv = act_vertex(g, v, a);
      if (it->second.src != F.at(v) || it->second.tgt != F.at(gv)) {
        r.fail("one-iso at g=" + std::to_string(g) + " v=" + vertex_string(v, n) +
               " has wrong endpoints");
        continue;
      }
      if (!is_invertible(it->second)) {
        r.fail("one-iso at g=" + std::to_string(g) + " v=" + vertex_string(v, n) +
               " is not invertible");
        continue;
      }
      if (g == 0 && !(it->second == identity_corr(labels)))
        r.fail("identity layer: one-iso at v=" + vertex_string(v, n) +
               " is not the identity correspondence");
    }
  for (int g = 0; g < m; ++g) {
    for (int h = 0; h < m; ++h)
      for (const auto& [v, labels] : F.vertex_sets)
        if (!psi.square_witnesses.count({g, h, v}))
          r.fail("multiplicativity witness missing at g=" + std::to_string(g) + " h=" +
                 std::to_string(h) + " v=" + vertex_string(v, n));
    for (const auto& [key, c] : F.edge_corrs)
      if (!psi.edge_two_morphisms.count({g, key.first, key.second}))
        r.fail("edge 2-morphism missing at g=" + std::to_string(g) + " edge " +
               edge_str(key.first, key.second, n));
  }
  if (!r.ok) return r;

  // multiplicativity witnesses: well-formed and equal to the recomputed
  // (unique) morphism into the composite
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h)
      for (const auto& [v, labels] : F.vertex_sets) {
        Vertex hv = act_vertex(h, v, a);
        const Correspondence& dom = psi.one_iso(g + h, v);
        Correspondence cod = compose(psi.one_iso(g, hv), psi.one_iso(h, v));
        const CorrMorphism& w = psi.square_witness(g, h, v);
        std::string at = " at g=" + std::to_string(g) + " h=" + std::to_string(h) + " v=" +
                         vertex_string(v, n);
        if (!corr_morphism_valid(dom, cod, w)) {
          r.fail("multiplicativity witness" + at + " is not an isomorphism of correspondences");
          continue;
        }
        auto cs = s_inverse(cod);
        for (size_t e = 0; e < dom.elements.size(); ++e)
          if (w[e] != cs[static_cast<size_t>(dom.elements[e].s)]) {
            r.fail("multiplicativity witness" + at + " differs from the recomputed one");
            break;
          }
      }

  // edge 2-morphisms: well-formed; canonical at g = 0
  for (int g = 0; g < m; ++g)
    for (const auto& [key, A] : F.edge_corrs) {
      Vertex gu = act_vertex(g, key.first, a), gv = act_vertex(g, key.second, a);
      Correspondence dom = compose(psi.one_iso(g, key.second), A);
      Correspondence cod = compose(F.edge(gu, gv), psi.one_iso(g, key.first));
      const CorrMorphism& T = psi.edge_two_morphism(g, key.first, key.second);
      std::string at = " at g=" + std::to_string(g) + " edge " +
                       edge_str(key.first, key.second, n);
      if (!corr_morphism_valid(dom, cod, T)) {
        r.fail("edge 2-morphism" + at + " is not an isomorphism of correspondences");
        continue;
      }
      if (g == 0) {
        Path PD = make_path({A, psi.one_iso(0, key.second)});
        Path PC = make_path({psi.one_iso(0, key.first), A});
        bool good = true;
        for (int e = 0; e < PD.size() && good; ++e) {
          int ai = PD.elems[static_cast<size_t>(e)][0];
          good = T[static_cast<size_t>(e)] ==
                 PC.locate({A.elements[static_cast<size_t>(ai)].s, ai});
        }
        if (!good)
          r.fail("identity layer: edge 2-morphism at edge " +
                 edge_str(key.first, key.second, n) + " is not the canonical reindexing");
      }
    }
  if (!r.ok) return r;

  // stacking coherence: the 2-morphism of a product g+h factors through the
  // 2-morphisms of g and h tied together by the multiplicativity witnesses
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h)
      for (const auto& [key, A] : F.edge_corrs) {
        Vertex u = key.first, v = key.second;
        int gh = gmod(g + h, m);
        Vertex hu = act_vertex(h, u, a), hv = act_vertex(h, v, a);
        Vertex ghu = act_vertex(gh, u, a), ghv = act_vertex(gh, v, a);
        const Correspondence& Ah = F.edge(hu, hv);
        Path PDgh = make_path({A, psi.one_iso(gh, v)});
        Path PCgh = make_path({psi.one_iso(gh, u), F.edge(ghu, ghv)});
        const CorrMorphism& Tgh = psi.edge_two_morphism(gh, u, v);
        Path PBv = make_path({psi.one_iso(h, v), psi.one_iso(g, hv)});
        Path PBu = make_path({psi.one_iso(h, u), psi.one_iso(g, hu)});
        const CorrMorphism& av = psi.square_witness(g, h, v);
        CorrMorphism au_inv = index_map_inverse(psi.square_witness(g, h, u));
        Path PDh = make_path({A, psi.one_iso(h, v)});
        Path PCh = make_path({psi.one_iso(h, u), Ah});
        const CorrMorphism& Th = psi.edge_two_morphism(h, u, v);
        Path PDg = make_path({Ah, psi.one_iso(g, hv)});
        Path PCg = make_path({psi.one_iso(g, hu), F.edge(ghu, ghv)});
        const CorrMorphism& Tg = psi.edge_two_morphism(g, hu, hv);
        for (int e = 0; e < PDgh.size(); ++e) {
          int ai = PDgh.elems[static_cast<size_t>(e)][0];
          int xi = PDgh.elems[static_cast<size_t>(e)][1];
          int f = av[static_cast<size_t>(xi)];
          int x0 = PBv.elems[static_cast<size_t>(f)][0];
          int x1 = PBv.elems[static_cast<size_t>(f)][1];
          int e1 = PDh.locate({ai, x0});
          bool bad = e1 < 0;
          int y0 = -1, bi = -1, y1 = -1, ci = -1, rhs = -1;
          if (!bad) {
            int f1 = Th[static_cast<size_t>(e1)];
            y0 = PCh.elems[static_cast<size_t>(f1)][0];
            bi = PCh.elems[static_cast<size_t>(f1)][1];
            int e2 = PDg.locate({bi, x1});
            bad = e2 < 0;
            if (!bad) {
              int f2 = Tg[static_cast<size_t>(e2)];
              y1 = PCg.elems[static_cast<size_t>(f2)][0];
              ci = PCg.elems[static_cast<size_t>(f2)][1];
              int fu = PBu.locate({y0, y1});
              bad = fu < 0;
              if (!bad) rhs = PCgh.locate({au_inv[static_cast<size_t>(fu)], ci});
            }
          }
          if (bad || Tgh[static_cast<size_t>(e)] != rhs) {
            r.fail("stacking coherence fails at g=" + std::to_string(g) + " h=" +
                   std::to_string(h) + " edge " + edge_str(u, v, n) + " element " +
                   std::to_string(e));
            break;
          }
        }
      }

  // hexagon coherence over every 2-face
  for (const auto& [sq, mor] : F.squares) {
    (void)mor;
    for (int g = 0; g < m; ++g) {
      Vertex gu = act_vertex(g, sq.u, a), gv = act_vertex(g, sq.v, a);
      Vertex gvp = act_vertex(g, sq.vp, a), gw = act_vertex(g, sq.w, a);
      const Correspondence& Auv = F.edge(sq.u, sq.v);
      const Correspondence& Avw = F.edge(sq.v, sq.w);
      const Correspondence& Auvp = F.edge(sq.u, sq.vp);
      const Correspondence& Avpw = F.edge(sq.vp, sq.w);
      Path PT = make_path({Auv, Avw, psi.one_iso(g, sq.w)});
      Path PCod = make_path({psi.one_iso(g, sq.u), F.edge(gu, gvp), F.edge(gvp, gw)});
      Path PDvw = make_path({Avw, psi.one_iso(g, sq.w)});
      Path PCvw = make_path({psi.one_iso(g, sq.v), F.edge(gv, gw)});
      const CorrMorphism& Tvw = psi.edge_two_morphism(g, sq.v, sq.w);
      Path PDuv = make_path({Auv, psi.one_iso(g, sq.v)});
      Path PCuv = make_path({psi.one_iso(g, sq.u), F.edge(gu, gv)});
      const CorrMorphism& Tuv = psi.edge_two_morphism(g, sq.u, sq.v);
      Path PDvpw = make_path({Avpw, psi.one_iso(g, sq.w)});
      Path PCvpw = make_path({psi.one_iso(g, sq.vp), F.edge(gvp, gw)});
      const CorrMorphism& Tvpw = psi.edge_two_morphism(g, sq.vp, sq.w);
      Path PDuvp = make_path({Auvp, psi.one_iso(g, sq.vp)});
      Path PCuvp = make_path({psi.one_iso(g, sq.u), F.edge(gu, gvp)});
      const CorrMorphism& Tuvp = psi.edge_two_morphism(g, sq.u, sq.vp);
      Path Pg1 = make_path({F.edge(gu, gv), F.edge(gv, gw)});
      Path Pg2 = make_path({F.edge(gu, gvp), F.edge(gvp, gw)});
      CorrMorphism sq_g = F.square_map(gu, gv, gvp, gw);
      Path Pd1 = make_path({Auv, Avw});
      Path Pd2 = make_path({Auvp, Avpw});
      CorrMorphism sq0 = F.square_map(sq.u, sq.v, sq.vp, sq.w);
      for (int e = 0; e < PT.size(); ++e) {
        int ai = PT.elems[static_cast<size_t>(e)][0];
        int bi = PT.elems[static_cast<size_t>(e)][1];
        int xi = PT.elems[static_cast<size_t>(e)][2];
        // route across the original square first
        int p2 = sq0[static_cast<size_t>(Pd1.locate({ai, bi}))];
        int ci = Pd2.elems[static_cast<size_t>(p2)][0];
        int di = Pd2.elems[static_cast<size_t>(p2)][1];
        int e3 = PDvpw.locate({di, xi});
        int f3 = Tvpw[static_cast<size_t>(e3)];
        int yp = PCvpw.elems[static_cast<size_t>(f3)][0];
        int dpi = PCvpw.elems[static_cast<size_t>(f3)][1];
        int e4 = PDuvp.locate({ci, yp});
        int f4 = Tuvp[static_cast<size_t>(e4)];
        int zp = PCuvp.elems[static_cast<size_t>(f4)][0];
        int cpi = PCuvp.elems[static_cast<size_t>(f4)][1];
        int rhs = PCod.locate({zp, cpi, dpi});
        // route across the image square last
        int e1 = PDvw.locate({bi, xi});
        int f1 = Tvw[static_cast<size_t>(e1)];
        int y = PCvw.elems[static_cast<size_t>(f1)][0];
        int bpi = PCvw.elems[static_cast<size_t>(f1)][1];
        int e2 = PDuv.locate({ai, y});
        int f2 = Tuv[static_cast<size_t>(e2)];
        int z = PCuv.elems[static_cast<size_t>(f2)][0];
        int api = PCuv.elems[static_cast<size_t>(f2)][1];
        int q = sq_g[static_cast<size_t>(Pg1.locate({api, bpi}))];
        int lhs = PCod.locate({z, Pg2.elems[static_cast<size_t>(q)][0],
                               Pg2.elems[static_cast<size_t>(q)][1]});
        if (lhs < 0 || rhs < 0 || lhs != rhs) {
          r.fail("hexagon coherence fails at g=" + std::to_string(g) + " square u=" +
                 vertex_string(sq.u, n) + " v=" + vertex_string(sq.v, n) + " v'=" +
                 vertex_string(sq.vp, n) + " w=" + vertex_string(sq.w, n) + " element " +
                 std::to_string(e));
          break;
        }
      }
    }
  }
  return r;
}

RoundTripWitness roundtrip_sz(const BurnsideFunctor& F, const SZAction& psi) {
  RoundTripWitness w;
  const CyclicAction& a = psi.group;
  int m = a.m;

  MusytAction M = sz_to_musyt(F, psi);
  ValidationReport vm = validate_musyt(F, M);
  for (auto& s : vm.violations) {
    w.ok = false;
    w.violations.push_back("strict image: " + s);
  }
  SZAction psi2 = musyt_to_sz(F, M);

  std::map<Vertex, Correspondence> eta;
  for (const auto& [v, labels] : F.vertex_sets) eta[v] = identity_corr(labels);
  auto J = join_functor(F, F, eta);
  if (!J) {
    w.ok = false;
    w.violations.push_back("join functor does not assemble");
    return w;
  }
  w.join = *J;

  CyclicAction big;
  big.m = m;
  big.perm.resize(static_cast<size_t>(F.n) + 1);
  for (int i = 0; i < F.n; ++i) big.perm[static_cast<size_t>(i)] = a.coord_image(1, i);
  big.perm[static_cast<size_t>(F.n)] = F.n;

  SZAction PJ;
  PJ.group = big;
  Vertex top = Vertex{1} << F.n;
  for (const auto& [key, c] : psi.one_isos) PJ.one_isos[{key.first, key.second | top}] = c;
  for (const auto& [key, c] : psi2.one_isos) PJ.one_isos[key] = c;
  for (const auto& [key, mor] : psi.square_witnesses)
    PJ.square_witnesses[{std::get<0>(key), std::get<1>(key), std::get<2>(key) | top}] = mor;
  for (const auto& [key, mor] : psi2.square_witnesses) PJ.square_witnesses[key] = mor;
  for (const auto& [key, t] : psi.edge_two_morphisms)
    PJ.edge_two_morphisms[{std::get<0>(key), std::get<1>(key) | top, std::get<2>(key) | top}] =
        t;
  for (const auto& [key, t] : psi2.edge_two_morphisms) PJ.edge_two_morphisms[key] = t;

  // connecting edges: the 2-morphism sends the fiber element over x to the
  // unique one-iso element with source x
  for (const auto& [v, labels] : F.vertex_sets)
    for (int g = 0; g < m; ++g) {
      Vertex gv = act_vertex(g, v, a);
      const Correspondence& E = w.join.edge(v | top, v);
      const Correspondence& Eg = w.join.edge(gv | top, gv);
      const Correspondence& one = psi.one_iso(g, v);
      Path PD = make_path({E, psi2.one_iso(g, v)});
      Path PC = make_path({one, Eg});
      auto sg = s_inverse(one);
      CorrMorphism T(static_cast<size_t>(PD.size()), -1);
      for (int e = 0; e < PD.size(); ++e) {
        int ai = PD.elems[static_cast<size_t>(e)][0];
        int y = sg[static_cast<size_t>(E.elements[static_cast<size_t>(ai)].s)];
        T[static_cast<size_t>(e)] = PC.locate({y, one.elements[static_cast<size_t>(y)].t});
      }
      PJ.edge_two_morphisms[{g, v | top, v}] = std::move(T);
    }

  ValidationReport vj = validate_sz(w.join, PJ);
  for (auto& s : vj.violations) {
    w.ok = false;
    w.violations.push_back("joined action: " + s);
  }
  w.joined_action = std::move(PJ);
  return w;
}

Vertex FixedPointFunctor::ambient_vertex(Vertex y) const {
  Vertex u = 0;
  for (size_t b = 0; b < orbit_masks.size(); ++b)
    if (y & (Vertex{1} << b)) u |= orbit_masks[b];
  return u;
}

namespace {

Chain concat_chains(const Chain& a, const Chain& b) {
  Chain c = a;
  c.verts.insert(c.verts.end(), b.verts.begin() + 1, b.verts.end());
  return c;
}

std::string dotted_label(const Path& P, int e) {
  std::string s = P.label_of(e);
  std::replace(s.begin(), s.end(), '*', '.');
  return s;
}

}  // namespace

FixedPointFunctor fixed_point_functor(const BurnsideFunctor& F, const MusytAction& phi,
                                      int index_k) {
  const CyclicAction& a = phi.group;
  if (!a.valid() || a.dim() != F.n)
    throw std::invalid_argument("fixed_point_functor: action does not match the functor");
  if (index_k <= 0 || a.m % index_k != 0)
    throw std::invalid_argument("fixed_point_functor: subgroup index must divide the order");

  FixedPointFunctor out;
  std::vector<int> orbit_of(static_cast<size_t>(F.n), -1);
  for (int i = 0; i < F.n; ++i) {
    if (orbit_of[static_cast<size_t>(i)] >= 0) continue;
    Vertex mask = 0;
    int j = i;
    do {
      orbit_of[static_cast<size_t>(j)] = static_cast<int>(out.orbit_masks.size());
      mask |= Vertex{1} << j;
      j = a.coord_image(index_k, j);
    } while (j != i);
    out.orbit_masks.push_back(mask);
  }
  int nH = static_cast<int>(out.orbit_masks.size());
  BurnsideFunctor& G = out.functor;
  G.n = nH;

  const char* inconsistent =
      "fixed_point_functor: fixed element sets inconsistent with sources and targets";

  // vertex sets: elements fixed by the subgroup generator
  for (Vertex y = 0; y < (Vertex{1} << nH); ++y) {
    Vertex u = out.ambient_vertex(y);
    const auto& bij = phi.vertex(index_k, u);
    std::vector<std::string> labels;
    for (size_t x = 0; x < bij.size(); ++x)
      if (bij[x] == static_cast<int>(x)) labels.push_back(F.at(u)[x]);
    G.vertex_sets[y] = std::move(labels);
  }

  // per fixed edge, the ambient composite chains of its fixed elements, in
  // the element order of the built correspondence
  std::map<std::pair<Vertex, Vertex>, std::vector<std::vector<int>>> edge_chains;

  for (Vertex y = 0; y < (Vertex{1} << nH); ++y)
    for (int b = 0; b < nH; ++b) {
      if (!(y & (Vertex{1} << b))) continue;
      Vertex y2 = y & ~(Vertex{1} << b);
      Vertex u = out.ambient_vertex(y), v = out.ambient_vertex(y2);
      Chain canon = canonical_chain(u, v);
      Path P = chain_path(F, canon);
      Chain img = act_chain(index_k, canon, a);
      Path Pimg = chain_path(F, img);
      std::vector<int> chg;
      if (img == canon) {
        chg.resize(static_cast<size_t>(P.size()));
        for (int e = 0; e < P.size(); ++e) chg[static_cast<size_t>(e)] = e;
      } else {
        chg = chain_change_map(F, img, canon);
      }
      std::vector<std::tuple<std::string, std::string, std::string>> triples;
      std::map<std::string, std::vector<int>> chain_by_label;
      for (int e = 0; e < P.size(); ++e) {
        const auto& ch = P.elems[static_cast<size_t>(e)];
        std::vector<int> image(ch.size());
        for (size_t p = 0; p < ch.size(); ++p)
          image[p] = phi.edge(index_k, canon.verts[p],
                              canon.verts[p + 1])[static_cast<size_t>(ch[p])];
        int f = Pimg.locate(image);
        if (f < 0 || chg[static_cast<size_t>(f)] < 0) throw std::runtime_error(inconsistent);
        if (chg[static_cast<size_t>(f)] != e) continue;
        int su = P.src_of(e), tv = P.tgt_of(e);
        if (phi.vertex(index_k, u)[static_cast<size_t>(su)] != su ||
            phi.vertex(index_k, v)[static_cast<size_t>(tv)] != tv)
          throw std::runtime_error(inconsistent);
        std::string lbl = dotted_label(P, e);
        triples.emplace_back(lbl, F.at(u)[static_cast<size_t>(su)],
                             F.at(v)[static_cast<size_t>(tv)]);
        chain_by_label[lbl] = ch;
      }
      Correspondence c = make_correspondence(G.at(y), G.at(y2), std::move(triples));
      auto& chains = edge_chains[{y, y2}];
      chains.resize(c.elements.size());
      for (size_t i = 0; i < c.elements.size(); ++i)
        chains[i] = chain_by_label.at(c.elements[i].label);
      G.edge_corrs[{y, y2}] = std::move(c);
    }

  // squares: ambient chain transports restricted to the fixed elements
  for (const SquareKey& sq : all_squares(nH)) {
    Vertex U = out.ambient_vertex(sq.u), V1 = out.ambient_vertex(sq.v);
    Vertex V2 = out.ambient_vertex(sq.vp), W = out.ambient_vertex(sq.w);
    Chain route1 = concat_chains(canonical_chain(U, V1), canonical_chain(V1, W));
    Chain route2 = concat_chains(canonical_chain(U, V2), canonical_chain(V2, W));
    std::vector<int> T = chain_change_map(F, route1, route2);
    Path P1 = chain_path(F, route1);
    Path P2 = chain_path(F, route2);
    size_t r1p = static_cast<size_t>(norm(U) - norm(V2));
    const auto& chA = edge_chains.at({sq.u, sq.v});
    const auto& chB = edge_chains.at({sq.v, sq.w});
    const auto& chC = edge_chains.at({sq.u, sq.vp});
    const auto& chD = edge_chains.at({sq.vp, sq.w});
    Path PD = make_path({G.edge(sq.u, sq.v), G.edge(sq.v, sq.w)});
    Path PC = make_path({G.edge(sq.u, sq.vp), G.edge(sq.vp, sq.w)});
    auto find_chain = [](const std::vector<std::vector<int>>& pool,
                         const std::vector<int>& ch) {
      for (size_t i = 0; i < pool.size(); ++i)
        if (pool[i] == ch) return static_cast<int>(i);
      return -1;
    };
    CorrMorphism mor(static_cast<size_t>(PD.size()), -1);
    for (int e = 0; e < PD.size(); ++e) {
      int ea = PD.elems[static_cast<size_t>(e)][0];
      int eb = PD.elems[static_cast<size_t>(e)][1];
      std::vector<int> full = chA[static_cast<size_t>(ea)];
      full.insert(full.end(), chB[static_cast<size_t>(eb)].begin(),
                  chB[static_cast<size_t>(eb)].end());
      int p = P1.locate(full);
      if (p < 0) throw std::runtime_error(inconsistent);
      const auto& image = P2.elems[static_cast<size_t>(T[static_cast<size_t>(p)])];
      std::vector<int> first(image.begin(), image.begin() + static_cast<long>(r1p));
      std::vector<int> rest(image.begin() + static_cast<long>(r1p), image.end());
      int ec = find_chain(chC, first), ed = find_chain(chD, rest);
      if (ec < 0 || ed < 0) throw std::runtime_error(inconsistent);
      int cod = PC.locate({ec, ed});
      if (cod < 0) throw std::runtime_error(inconsistent);
      mor[static_cast<size_t>(e)] = cod;
    }
    G.squares[sq] = std::move(mor);
  }
  return out;
}

}  // namespace khoburn
