#include "khoburn/cube.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>

namespace khoburn {

int norm(Vertex u) { return std::popcount(u); }

bool vertex_geq(Vertex u, Vertex v) { return (u & v) == v; }

std::string vertex_string(Vertex u, int n) {
  std::string s(static_cast<size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (u & (Vertex{1} << i)) s[static_cast<size_t>(i)] = '1';
  return s;
}

Vertex vertex_from_string(const std::string& s) {
  Vertex u = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      u |= Vertex{1} << i;
    else if (s[i] != '0')
      throw std::invalid_argument("vertex string must be over {0,1}: " + s);
  }
  return u;
}

std::optional<int> cube_hom(Vertex u, Vertex v) {
  if (!vertex_geq(u, v)) return std::nullopt;
  return norm(u) - norm(v);
}

bool chain_valid(const Chain& c) {
  if (c.verts.empty()) return false;
  for (size_t i = 0; i + 1 < c.verts.size(); ++i) {
    Vertex a = c.verts[i], b = c.verts[i + 1];
    if (a == b || !vertex_geq(a, b)) return false;
  }
  return true;
}

namespace {

void chains_rec(Vertex cur, Vertex v, int steps_left, Chain& acc,
                std::vector<Chain>& out) {
  if (steps_left == 0) {
    if (cur == v) out.push_back(acc);
    return;
  }
  // next vertex: drop a nonempty subset of cur&~v, keeping all bits of v
  Vertex drop_pool = cur & ~v;
  if (drop_pool == 0) return;
  // enumerate nonempty subsets s of drop_pool
  for (Vertex s = drop_pool; s != 0; s = (s - 1) & drop_pool) {
    Vertex nxt = cur & ~s;
    acc.verts.push_back(nxt);
    chains_rec(nxt, v, steps_left - 1, acc, out);
    acc.verts.pop_back();
    if (s == 0) break;
  }
}

}  // namespace

std::vector<Chain> enumerate_chains(Vertex u, Vertex v, int k) {
  std::vector<Chain> out;
  if (!vertex_geq(u, v) || k < 0) return out;
  if (k == 0) {
    if (u == v) out.push_back(Chain{{u}});
    return out;
  }
  Chain acc;
  acc.verts.push_back(u);
  chains_rec(u, v, k, acc, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool FacePoset::leq(int a, int b) const {
  // face a <= face b iff chain b is a subchain of chain a
  const auto& ca = faces[static_cast<size_t>(a)].verts;
  const auto& cb = faces[static_cast<size_t>(b)].verts;
  if (cb.size() > ca.size()) return false;
  size_t i = 0;
  for (Vertex w : cb) {
    while (i < ca.size() && ca[i] != w) ++i;
    if (i == ca.size()) return false;
    ++i;
  }
  return true;
}

std::vector<long long> FacePoset::f_vector() const {
  std::vector<long long> f(static_cast<size_t>(std::max(r, 1)), 0);
  for (size_t i = 0; i < faces.size(); ++i) f[static_cast<size_t>(dim(static_cast<int>(i)))]++;
  return f;
}

long long FacePoset::euler_sum() const {
  long long e = 0;
  auto f = f_vector();
  for (size_t d = 0; d < f.size(); ++d) e += (d % 2 == 0 ? f[d] : -f[d]);
  return e;
}

FacePoset face_poset(Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("face_poset: degenerate interval u = v");
  if (!vertex_geq(u, v)) throw std::invalid_argument("face_poset: u does not dominate v");
  FacePoset p;
  p.u = u;
  p.v = v;
  p.r = norm(u) - norm(v);
  for (int k = 1; k <= p.r; ++k) {
    auto ch = enumerate_chains(u, v, k);
    p.faces.insert(p.faces.end(), ch.begin(), ch.end());
  }
  std::sort(p.faces.begin(), p.faces.end());
  return p;
}

int CyclicAction::dim() const {
  if (!perm.empty()) return static_cast<int>(perm.size());
  return n_block * m;
}

int CyclicAction::coord_image(int g, int i) const {
  g = ((g % m) + m) % m;
  if (perm.empty()) {
    int b = i / n_block, j = i % n_block;
    return ((b + g) % m) * n_block + j;
  }
  int x = i;
  for (int t = 0; t < g; ++t) x = perm[static_cast<size_t>(x)];
  return x;
}

bool CyclicAction::valid() const {
  if (m <= 0) return false;
  if (perm.empty()) return n_block >= 0;
  int n = static_cast<int>(perm.size());
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int x : perm) {
    if (x < 0 || x >= n || seen[static_cast<size_t>(x)]) return false;
    seen[static_cast<size_t>(x)] = true;
  }
  // order of perm must divide m
  for (int i = 0; i < n; ++i)
    if (coord_image(m % m == 0 ? 0 : m, i) != i) return false;
  // explicit check of perm^m = id
  std::vector<int> x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = i;
  for (int t = 0; t < m; ++t)
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = perm[static_cast<size_t>(x[static_cast<size_t>(i)])];
  for (int i = 0; i < n; ++i)
    if (x[static_cast<size_t>(i)] != i) return false;
  return true;
}

Vertex act_vertex(int g, Vertex u, const CyclicAction& a) {
  int n = a.dim();
  Vertex out = 0;
  for (int i = 0; i < n; ++i)
    if (u & (Vertex{1} << i)) out |= Vertex{1} << a.coord_image(g, i);
  return out;
}

Chain act_chain(int g, const Chain& c, const CyclicAction& a) {
  Chain out;
  out.verts.reserve(c.verts.size());
  for (Vertex w : c.verts) out.verts.push_back(act_vertex(g, w, a));
  return out;
}

bool FixedSubcube::is_fixed(Vertex u) const {
  return act_vertex(index, u, ambient) == u;
}

Vertex FixedSubcube::include(Vertex y) const {
  // y lives in 2^(n_block*k); replicate its k blocks m/k times
  int nb = ambient.n_block, k = index, m = ambient.m;
  Vertex u = 0;
  for (int b = 0; b < m; ++b)
    for (int j = 0; j < nb; ++j)
      if (y & (Vertex{1} << ((b % k) * nb + j))) u |= Vertex{1} << (b * nb + j);
  return u;
}

Vertex FixedSubcube::restrict_to(Vertex u) const {
  int nb = ambient.n_block, k = index;
  Vertex mask = (k * nb >= 32) ? ~Vertex{0} : ((Vertex{1} << (k * nb)) - 1);
  return u & mask;
}

std::vector<Vertex> FixedSubcube::fixed_vertices() const {
  std::vector<Vertex> out;
  int fd = fixed_dim();
  for (Vertex y = 0; y < (Vertex{1} << fd); ++y) out.push_back(include(y));
  std::sort(out.begin(), out.end());
  return out;
}

FixedSubcube fixed_subcube(const CyclicAction& a, int index_k) {
  if (index_k <= 0 || a.m % index_k != 0)
    throw std::invalid_argument("fixed_subcube: index must divide the group order");
  if (!a.perm.empty())
    throw std::invalid_argument("fixed_subcube: requires the standard block action");
  return FixedSubcube{a, index_k};
}

bool FixedFacePoset::is_isomorphism() const {
  const auto& A = fixed_chains;
  const auto& B = subcube_poset;
  if (A.faces.size() != B.faces.size()) return false;
  std::vector<bool> hit(B.faces.size(), false);
  for (int i = 0; i < static_cast<int>(A.faces.size()); ++i) {
    int j = to_subcube[static_cast<size_t>(i)];
    if (j < 0 || j >= static_cast<int>(B.faces.size()) || hit[static_cast<size_t>(j)]) return false;
    hit[static_cast<size_t>(j)] = true;
  }
  for (int i = 0; i < static_cast<int>(A.faces.size()); ++i)
    for (int j = 0; j < static_cast<int>(A.faces.size()); ++j)
      if (A.leq(i, j) != B.leq(to_subcube[static_cast<size_t>(i)], to_subcube[static_cast<size_t>(j)]))
        return false;
  return true;
}

FixedFacePoset fixed_face_poset(Vertex u, Vertex v, const FixedSubcube& H) {
  if (!H.is_fixed(u) || !H.is_fixed(v))
    throw std::invalid_argument("fixed_face_poset: endpoints must be fixed by the subgroup");
  FixedFacePoset out;
  FacePoset full = face_poset(u, v);
  out.fixed_chains.u = u;
  out.fixed_chains.v = v;
  for (const Chain& c : full.faces) {
    bool all_fixed = true;
    for (Vertex w : c.verts)
      if (!H.is_fixed(w)) { all_fixed = false; break; }
    if (all_fixed) out.fixed_chains.faces.push_back(c);
  }
  // dimension bookkeeping in the fixed poset uses the subcube norm gap
  Vertex ru = H.restrict_to(u), rv = H.restrict_to(v);
  out.fixed_chains.r = norm(ru) - norm(rv);
  out.subcube_poset = face_poset(ru, rv);
  std::map<Chain, int> pos;
  for (int j = 0; j < static_cast<int>(out.subcube_poset.faces.size()); ++j)
    pos[out.subcube_poset.faces[static_cast<size_t>(j)]] = j;
  for (const Chain& c : out.fixed_chains.faces) {
    Chain rc;
    for (Vertex w : c.verts) rc.verts.push_back(H.restrict_to(w));
    auto it = pos.find(rc);
    out.to_subcube.push_back(it == pos.end() ? -1 : it->second);
  }
  return out;
}

}  // namespace khoburn
