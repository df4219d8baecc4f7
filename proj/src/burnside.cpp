#include "khoburn/burnside.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace khoburn {

const std::vector<std::string>& BurnsideFunctor::at(Vertex v) const {
  auto it = vertex_sets.find(v);
  if (it == vertex_sets.end())
    throw std::invalid_argument("functor: no vertex set at " + vertex_string(v, n));
  return it->second;
}

const Correspondence& BurnsideFunctor::edge(Vertex u, Vertex v) const {
  auto it = edge_corrs.find({u, v});
  if (it == edge_corrs.end())
    throw std::invalid_argument("functor: no edge " + vertex_string(u, n) + "->" +
                                vertex_string(v, n));
  return it->second;
}

CorrMorphism BurnsideFunctor::square_map(Vertex u, Vertex v, Vertex vp, Vertex w) const {
  // stored orientation has the smaller intermediate vertex as domain route
  bool flip = v > vp;
  SquareKey key{u, flip ? vp : v, flip ? v : vp, w};
  auto it = squares.find(key);
  if (it == squares.end())
    throw std::invalid_argument("functor: no square at top " + vertex_string(u, n));
  return flip ? corr_morphism_inverse(it->second) : it->second;
}

std::vector<SquareKey> all_squares(int n) {
  std::vector<SquareKey> out;
  for (Vertex u = 0; u < (Vertex{1} << n); ++u) {
    if (norm(u) < 2) continue;
    for (int i = 0; i < n; ++i) {
      if (!(u >> i & 1)) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!(u >> j & 1)) continue;
        // dropping the higher bit gives the smaller intermediate vertex
        out.push_back({u, u & ~(Vertex{1} << j), u & ~(Vertex{1} << i),
                       u & ~(Vertex{1} << i) & ~(Vertex{1} << j)});
      }
    }
  }
  return out;
}

std::vector<std::pair<Vertex, Vertex>> all_three_faces(int n) {
  std::vector<std::pair<Vertex, Vertex>> out;
  for (Vertex u = 0; u < (Vertex{1} << n); ++u)
    for (Vertex d = u; d; d = (d - 1) & u)  // d runs over nonempty submasks of u
      if (norm(d) == 3) out.push_back({u, u & ~d});
  std::sort(out.begin(), out.end());
  return out;
}

Chain canonical_chain(Vertex u, Vertex w) {
  if (!vertex_geq(u, w)) throw std::invalid_argument("canonical_chain: vertices incomparable");
  Chain c;
  c.verts.push_back(u);
  Vertex cur = u;
  for (Vertex d = u ^ w; d; d &= d - 1) {
    cur &= ~(d & -d);  // clear lowest remaining dropped bit
    c.verts.push_back(cur);
  }
  return c;
}

Path chain_path(const BurnsideFunctor& F, const Chain& chain) {
  if (chain.length() < 1) throw std::invalid_argument("chain_path: need at least one step");
  std::vector<Correspondence> factors;
  for (size_t i = 0; i + 1 < chain.verts.size(); ++i)
    factors.push_back(F.edge(chain.verts[i], chain.verts[i + 1]));
  return make_path(std::move(factors));
}

Correspondence composite_corr(const BurnsideFunctor& F, Vertex u, Vertex w) {
  if (u == w) return identity_corr(F.at(u));
  return chain_path(F, canonical_chain(u, w)).to_correspondence();
}

namespace {

// One adjacent transposition of the drop order at position p, with the
// induced map on path elements (old path -> new path).
struct SwapStep {
  Chain chain;
  std::vector<int> map;
};

SwapStep apply_swap(const BurnsideFunctor& F, const Chain& old_chain, int p) {
  Vertex top = old_chain.verts[static_cast<size_t>(p)];
  Vertex mid = old_chain.verts[static_cast<size_t>(p) + 1];
  Vertex bot = old_chain.verts[static_cast<size_t>(p) + 2];
  Vertex other_mid = top & ~(mid ^ bot);
  Chain next = old_chain;
  next.verts[static_cast<size_t>(p) + 1] = other_mid;
  Path A = chain_path(F, old_chain);
  Path B = chain_path(F, next);
  CorrMorphism sq = F.square_map(top, mid, other_mid, bot);
  return {std::move(next), path_map_pair(A, B, p, sq)};
}

std::vector<int> drop_sequence(const Chain& c) {
  std::vector<int> out;
  for (size_t i = 0; i + 1 < c.verts.size(); ++i)
    out.push_back(std::countr_zero(c.verts[i] ^ c.verts[i + 1]));
  return out;
}

}  // namespace

std::vector<int> chain_change_map(const BurnsideFunctor& F, const Chain& from, const Chain& to) {
  if (from.top() != to.top() || from.bottom() != to.bottom())
    throw std::invalid_argument("chain_change_map: endpoint mismatch");
  int r = norm(from.top()) - norm(from.bottom());
  if (from.length() != r || to.length() != r)
    throw std::invalid_argument("chain_change_map: chains must be maximal");
  std::vector<int> target = drop_sequence(to);
  std::vector<int> rank_of(static_cast<size_t>(32), 0);
  for (int q = 0; q < r; ++q) rank_of[static_cast<size_t>(target[static_cast<size_t>(q)])] = q;

  Chain cur = from;
  std::vector<int> acc = corr_morphism_identity(chain_path(F, from).to_correspondence());
  // bubble sort the drop sequence toward the target order; every adjacent
  // transposition is one square move
  bool moved = true;
  while (moved) {
    moved = false;
    std::vector<int> seq = drop_sequence(cur);
    for (int p = 0; p + 1 < r; ++p) {
      if (rank_of[static_cast<size_t>(seq[static_cast<size_t>(p)])] >
          rank_of[static_cast<size_t>(seq[static_cast<size_t>(p) + 1])]) {
        SwapStep step = apply_swap(F, cur, p);
        acc = index_map_compose(step.map, acc);
        cur = std::move(step.chain);
        moved = true;
        break;
      }
    }
  }
  return acc;
}

ValidationReport validate_functor(const BurnsideFunctor& F) {
  ValidationReport rep;
  if (F.n < 0 || F.n > 30) {
    rep.fail("dimension out of range");
    return rep;
  }
  Vertex count = Vertex{1} << F.n;

  for (Vertex v = 0; v < count; ++v) {
    auto it = F.vertex_sets.find(v);
    if (it == F.vertex_sets.end()) {
      rep.fail("missing vertex set at " + vertex_string(v, F.n));
      continue;
    }
    const auto& labels = it->second;
    for (const auto& l : labels)
      if (!label_ok(l)) rep.fail("bad label '" + l + "' at " + vertex_string(v, F.n));
    if (!std::is_sorted(labels.begin(), labels.end()) ||
        std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      rep.fail("vertex set at " + vertex_string(v, F.n) + " not sorted or has duplicates");
  }
  for (const auto& [v, labels] : F.vertex_sets)
    if (v >= count) rep.fail("vertex set outside cube: " + std::to_string(v));
  if (!rep.ok) return rep;

  for (Vertex u = 0; u < count; ++u) {
    for (int i = 0; i < F.n; ++i) {
      if (!(u >> i & 1)) continue;
      Vertex v = u & ~(Vertex{1} << i);
      auto it = F.edge_corrs.find({u, v});
      std::string ename = vertex_string(u, F.n) + "->" + vertex_string(v, F.n);
      if (it == F.edge_corrs.end()) {
        rep.fail("missing edge " + ename);
        continue;
      }
      if (it->second.src != F.at(u)) rep.fail("edge " + ename + ": source set mismatch");
      if (it->second.tgt != F.at(v)) rep.fail("edge " + ename + ": target set mismatch");
    }
  }
  for (const auto& [key, corr] : F.edge_corrs)
    if (cube_hom(key.first, key.second) != std::optional<int>(1))
      rep.fail("edge key is not a cube edge: " + vertex_string(key.first, F.n) + "->" +
               vertex_string(key.second, F.n));
  if (!rep.ok) return rep;

  auto square_name = [&](const SquareKey& k) {
    return "square (u=" + vertex_string(k.u, F.n) + ", v=" + vertex_string(k.v, F.n) +
           ", v'=" + vertex_string(k.vp, F.n) + ", w=" + vertex_string(k.w, F.n) + ")";
  };
  for (const SquareKey& key : all_squares(F.n)) {
    auto it = F.squares.find(key);
    if (it == F.squares.end()) {
      rep.fail("missing " + square_name(key));
      continue;
    }
    Correspondence via_v = compose(F.edge(key.v, key.w), F.edge(key.u, key.v));
    Correspondence via_vp = compose(F.edge(key.vp, key.w), F.edge(key.u, key.vp));
    if (!corr_morphism_valid(via_v, via_vp, it->second))
      rep.fail(square_name(key) + ": not a bijection commuting with endpoints");
  }
  for (const auto& [key, m] : F.squares) {
    bool shape = key.v < key.vp && cube_hom(key.u, key.v) == std::optional<int>(1) &&
                 cube_hom(key.u, key.vp) == std::optional<int>(1) &&
                 cube_hom(key.v, key.w) == std::optional<int>(1) &&
                 cube_hom(key.vp, key.w) == std::optional<int>(1);
    if (!shape) rep.fail("malformed " + square_name(key));
  }
  if (!rep.ok) return rep;

  // hexagon: walking the six maximal chains of a 3-face by adjacent
  // transpositions (positions 0,1,0,1,0,1) must compose to the identity
  for (const auto& [u, w] : all_three_faces(F.n)) {
    std::string fname = "[w=" + vertex_string(w, F.n) + ", u=" + vertex_string(u, F.n) + "]";
    try {
      Chain cur = canonical_chain(u, w);
      Path start = chain_path(F, cur);
      std::vector<int> acc = corr_morphism_identity(start.to_correspondence());
      for (int step = 0; step < 6; ++step) {
        SwapStep s = apply_swap(F, cur, step % 2);
        acc = index_map_compose(s.map, acc);
        cur = std::move(s.chain);
      }
      if (!index_map_is_identity(acc))
        rep.fail("hexagon at " + fname + ": six-step composite is not the identity");
    } catch (const std::exception& e) {
      rep.fail("hexagon at " + fname + ": " + e.what());
    }
  }
  return rep;
}

int edge_sign(Vertex u, Vertex v) {
  int k = std::countr_zero(u ^ v);
  int s = std::popcount(u & ((Vertex{1} << k) - 1));
  return (s & 1) ? -1 : 1;
}

bool TotalComplex::d_squared_zero() const {
  for (size_t k = 2; k < d.size(); ++k)
    if (!is_zero(mat_mul(d[k - 1], d[k]))) return false;
  return true;
}

TotalComplex totalize(const BurnsideFunctor& F, int (*sign)(Vertex, Vertex)) {
  ValidationReport rep = validate_functor(F);
  if (!rep.ok) throw std::invalid_argument("totalize: invalid functor: " + rep.violations[0]);

  TotalComplex tc;
  tc.gens.resize(static_cast<size_t>(F.n) + 1);
  std::map<std::pair<Vertex, std::string>, int> pos;
  for (const auto& [v, labels] : F.vertex_sets) {  // map order = (vertex, label) order
    auto& g = tc.gens[static_cast<size_t>(norm(v))];
    for (const auto& l : labels) {
      pos[{v, l}] = static_cast<int>(g.size());
      g.emplace_back(v, l);
    }
  }
  tc.d.resize(static_cast<size_t>(F.n) + 1);
  for (int k = 1; k <= F.n; ++k) {
    IntMat m(static_cast<int>(tc.gens[static_cast<size_t>(k) - 1].size()),
             static_cast<int>(tc.gens[static_cast<size_t>(k)].size()));
    for (int col = 0; col < m.cols; ++col) {
      auto [u, x] = tc.gens[static_cast<size_t>(k)][static_cast<size_t>(col)];
      for (int i = 0; i < F.n; ++i) {
        if (!(u >> i & 1)) continue;
        Vertex v = u & ~(Vertex{1} << i);
        const Correspondence& e = F.edge(u, v);
        int xs = e.src_index(x);
        for (int yt = 0; yt < static_cast<int>(e.tgt.size()); ++yt) {
          int c = fiber_count(e, xs, yt);
          if (c == 0) continue;
          int row = pos.at({v, e.tgt[static_cast<size_t>(yt)]});
          m.at(row, col) += sign(u, v) * c;
        }
      }
    }
    tc.d[static_cast<size_t>(k)] = std::move(m);
  }
  return tc;
}

namespace {

// Bijection between the two routes of a naturality square, matching elements
// within each (source, target) fiber by the label of their cube-edge factor
// and falling back to fiber order; empty when fiber sizes disagree. The flag
// says whether the cube-edge factor's label sits before the '*' separator.
std::optional<CorrMorphism> match_mixed_square(const Correspondence& dom, bool dom_edge_prefix,
                                               const Correspondence& cod, bool cod_edge_prefix) {
  if (dom.src != cod.src || dom.tgt != cod.tgt) return std::nullopt;
  if (dom.elements.size() != cod.elements.size()) return std::nullopt;

  auto fiber_split = [](const Correspondence& c, bool edge_prefix) {
    // (s,t) -> list of (edge label, element index), sorted
    std::map<std::pair<int, int>, std::vector<std::pair<std::string, int>>> out;
    for (int i = 0; i < static_cast<int>(c.elements.size()); ++i) {
      const auto& e = c.elements[static_cast<size_t>(i)];
      size_t star = e.label.find('*');
      std::string edge_label =
          edge_prefix ? e.label.substr(0, star) : e.label.substr(star + 1);
      out[{e.s, e.t}].emplace_back(std::move(edge_label), i);
    }
    for (auto& [k, v] : out) std::sort(v.begin(), v.end());
    return out;
  };
  auto dfib = fiber_split(dom, dom_edge_prefix);
  auto cfib = fiber_split(cod, cod_edge_prefix);
  if (dfib.size() != cfib.size()) return std::nullopt;

  CorrMorphism m(dom.elements.size(), -1);
  for (auto& [st, dlist] : dfib) {
    auto it = cfib.find(st);
    if (it == cfib.end() || it->second.size() != dlist.size()) return std::nullopt;
    for (size_t i = 0; i < dlist.size(); ++i)
      m[static_cast<size_t>(dlist[i].second)] = it->second[i].second;
  }
  return m;
}

}  // namespace

std::optional<BurnsideFunctor> join_functor(const BurnsideFunctor& F1, const BurnsideFunctor& F2,
                                            const std::map<Vertex, Correspondence>& eta) {
  if (F1.n != F2.n) throw std::invalid_argument("join_functor: cube dimension mismatch");
  int n = F1.n;
  Vertex level = Vertex{1} << n;

  BurnsideFunctor J;
  J.n = n + 1;
  for (const auto& [v, s] : F1.vertex_sets) J.vertex_sets[v | level] = s;
  for (const auto& [v, s] : F2.vertex_sets) J.vertex_sets[v] = s;
  for (const auto& [k, c] : F1.edge_corrs) J.edge_corrs[{k.first | level, k.second | level}] = c;
  for (const auto& [k, c] : F2.edge_corrs) J.edge_corrs[{k.first, k.second}] = c;
  for (Vertex v = 0; v < level; ++v) {
    auto it = eta.find(v);
    if (it == eta.end()) throw std::invalid_argument("join_functor: missing component");
    J.edge_corrs[{v | level, v}] = it->second;
  }
  for (const auto& [k, m] : F1.squares)
    J.squares[{k.u | level, k.v | level, k.vp | level, k.w | level}] = m;
  for (const auto& [k, m] : F2.squares) J.squares[k] = m;

  // mixed squares: top (u,1), intermediates (u,0) < (v,1), bottom (v,0);
  // the stored map's domain drops the level bit first
  for (Vertex u = 0; u < level; ++u) {
    for (int i = 0; i < n; ++i) {
      if (!(u >> i & 1)) continue;
      Vertex v = u & ~(Vertex{1} << i);
      Correspondence level_first = compose(F2.edge(u, v), eta.at(u));  // labels "edge*eta"
      Correspondence edge_first = compose(eta.at(v), F1.edge(u, v));   // labels "eta*edge"
      auto m = match_mixed_square(level_first, true, edge_first, false);
      if (!m) return std::nullopt;
      J.squares[{u | level, u, v | level, v}] = *m;
    }
  }
  return J;
}

bool natural_isomorphism_check(const BurnsideFunctor& F1, const BurnsideFunctor& F2,
                               const std::map<Vertex, Correspondence>& eta) {
  if (F1.n != F2.n) throw std::invalid_argument("natural_isomorphism_check: dimension mismatch");
  for (Vertex v = 0; v < (Vertex{1} << F1.n); ++v) {
    auto it = eta.find(v);
    if (it == eta.end() || !is_invertible(it->second)) return false;
    if (it->second.src != F1.at(v) || it->second.tgt != F2.at(v)) return false;
  }
  auto J = join_functor(F1, F2, eta);
  return J && validate_functor(*J).ok;
}

}  // namespace khoburn
