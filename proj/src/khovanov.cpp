#include "khoburn/khovanov.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace khoburn {

namespace {

int smooth_partner(int slot, int smoothing) {
  int c = slot / 4, j = slot % 4;
  // 0-smoothing pairs 0-1, 2-3; 1-smoothing pairs 0-3, 1-2
  int p = smoothing == 0 ? (j ^ 1) : (3 - j);
  return 4 * c + p;
}

}  // namespace

ResolvedState resolve(const LinkDiagram& D, Vertex v) {
  if (D.n > 0 && norm(v | ((Vertex{1} << D.n) - 1)) != D.n)
    throw std::invalid_argument("resolve: vertex outside the cube");
  ResolvedState rs;
  rs.vertex = v;
  rs.free_circles = D.free_circles;
  int slots = 4 * D.n;
  rs.slot_circle.assign(static_cast<size_t>(slots), -1);
  for (int start = 0; start < slots; ++start) {
    if (rs.slot_circle[static_cast<size_t>(start)] != -1) continue;
    int id = static_cast<int>(rs.circles.size());
    std::vector<int> circle;
    int s = start;
    bool via_smoothing = true;  // alternate smoothing arc / diagram edge
    do {
      circle.push_back(s);
      rs.slot_circle[static_cast<size_t>(s)] = id;
      s = via_smoothing ? smooth_partner(s, (v >> (s / 4)) & 1)
                        : D.edge_partner(s);
      via_smoothing = !via_smoothing;
    } while (s != start);
    rs.circles.push_back(std::move(circle));
  }
  // order circles by their smallest edge label
  std::vector<int> order(rs.circles.size());
  std::iota(order.begin(), order.end(), 0);
  auto min_label = [&](int c) {
    int m = D.edge_label(rs.circles[static_cast<size_t>(c)][0]);
    for (int s : rs.circles[static_cast<size_t>(c)]) m = std::min(m, D.edge_label(s));
    return m;
  };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return min_label(a) < min_label(b); });
  std::vector<std::vector<int>> sorted;
  for (int c : order) sorted.push_back(std::move(rs.circles[static_cast<size_t>(c)]));
  rs.circles = std::move(sorted);
  for (int c = 0; c < static_cast<int>(rs.circles.size()); ++c)
    for (int s : rs.circles[static_cast<size_t>(c)]) rs.slot_circle[static_cast<size_t>(s)] = c;
  return rs;
}

namespace {

std::vector<std::string> all_labelings(int c) {
  std::vector<std::string> out;
  out.reserve(std::size_t{1} << c);
  for (unsigned mask = 0; mask < (1u << c); ++mask) {
    std::string s(static_cast<size_t>(c), '1');
    for (int i = 0; i < c; ++i)
      if (mask >> (c - 1 - i) & 1) s[static_cast<size_t>(i)] = 'x';
    out.push_back(std::move(s));  // mask order = lexicographic, '1' < 'x'
  }
  return out;
}

bool through_crossing(const std::vector<int>& circle, int k) {
  for (int s : circle)
    if (s / 4 == k) return true;
  return false;
}

// Edge correspondence for the surgery at crossing k between resolutions
// ru (smoothing 1 at k) and rv (smoothing 0 at k).
Correspondence khovanov_edge(const ResolvedState& ru, const ResolvedState& rv, int k) {
  int cu = static_cast<int>(ru.circles.size()), cv = static_cast<int>(rv.circles.size());
  // circles missing crossing k have identical slot sets on both sides
  std::vector<int> match(static_cast<size_t>(cv), -1);
  for (int j = 0; j < cv; ++j)
    if (!through_crossing(rv.circles[static_cast<size_t>(j)], k))
      match[static_cast<size_t>(j)] = ru.slot_circle[static_cast<size_t>(rv.circles[static_cast<size_t>(j)][0])];

  // the two 1-smoothing arcs at k are probed by slots 0 and 1, the two
  // 0-smoothing arcs by slots 0 and 2
  int a1 = ru.slot_circle[static_cast<size_t>(4 * k + 0)];
  int a2 = ru.slot_circle[static_cast<size_t>(4 * k + 1)];
  int b1 = rv.slot_circle[static_cast<size_t>(4 * k + 0)];
  int b2 = rv.slot_circle[static_cast<size_t>(4 * k + 2)];
  bool merge = a1 != a2 && b1 == b2;
  bool split = a1 == a2 && b1 != b2;
  if (merge == split)
    throw std::logic_error("surgery at crossing " + std::to_string(k) +
                           " does not change the circle count by one");

  std::vector<std::tuple<std::string, std::string, std::string>> els;
  for (const std::string& g : all_labelings(cu)) {
    std::string base(static_cast<size_t>(cv), '?');
    for (int j = 0; j < cv; ++j)
      if (match[static_cast<size_t>(j)] >= 0)
        base[static_cast<size_t>(j)] = g[static_cast<size_t>(match[static_cast<size_t>(j)])];
    if (merge) {
      char x = g[static_cast<size_t>(a1)], y = g[static_cast<size_t>(a2)];
      if (x == 'x' && y == 'x') continue;  // x*x = 0: empty fiber
      std::string t = base;
      t[static_cast<size_t>(b1)] = (x == 'x' || y == 'x') ? 'x' : '1';
      els.emplace_back(g + ">" + t, g, t);
    } else {
      char x = g[static_cast<size_t>(a1)];
      if (x == 'x') {
        std::string t = base;
        t[static_cast<size_t>(b1)] = 'x';
        t[static_cast<size_t>(b2)] = 'x';
        els.emplace_back(g + ">" + t, g, t);
      } else {
        for (int flip = 0; flip < 2; ++flip) {
          std::string t = base;
          t[static_cast<size_t>(b1)] = flip ? 'x' : '1';
          t[static_cast<size_t>(b2)] = flip ? '1' : 'x';
          els.emplace_back(g + ">" + t, g, t);
        }
      }
    }
  }
  return make_correspondence(all_labelings(cu), all_labelings(cv), std::move(els));
}

// middle-resolution labeling of a composite element "mid>tgt*src>mid"
std::string middle_of(const std::string& composite_label) {
  return composite_label.substr(0, composite_label.find('>'));
}

}  // namespace

BurnsideFunctor khovanov_functor(const LinkDiagram& D) {
  BurnsideFunctor F;
  F.n = D.n;
  std::vector<ResolvedState> rs(std::size_t{1} << D.n);
  for (Vertex v = 0; v < (Vertex{1} << D.n); ++v) {
    rs[v] = resolve(D, v);
    F.vertex_sets[v] = all_labelings(rs[v].circle_count());
  }
  for (Vertex u = 0; u < (Vertex{1} << D.n); ++u)
    for (int k = 0; k < D.n; ++k)
      if (u >> k & 1) {
        Vertex v = u & ~(Vertex{1} << k);
        F.edge_corrs[{u, v}] = khovanov_edge(rs[u], rs[v], k);
      }

  for (const SquareKey& key : all_squares(D.n)) {
    Correspondence dom = compose(F.edge(key.v, key.w), F.edge(key.u, key.v));
    Correspondence cod = compose(F.edge(key.vp, key.w), F.edge(key.u, key.vp));
    std::map<std::pair<int, int>, std::vector<int>> dfib, cfib;
    for (int i = 0; i < static_cast<int>(dom.elements.size()); ++i)
      dfib[{dom.elements[static_cast<size_t>(i)].s, dom.elements[static_cast<size_t>(i)].t}].push_back(i);
    for (int i = 0; i < static_cast<int>(cod.elements.size()); ++i)
      cfib[{cod.elements[static_cast<size_t>(i)].s, cod.elements[static_cast<size_t>(i)].t}].push_back(i);
    if (dfib.size() != cfib.size())
      throw std::logic_error("khovanov square: fiber supports disagree");

    CorrMorphism m(dom.elements.size(), -1);
    for (const auto& [st, dlist] : dfib) {
      auto it = cfib.find(st);
      if (it == cfib.end() || it->second.size() != dlist.size())
        throw std::logic_error("khovanov square: fiber sizes disagree");
      const auto& clist = it->second;
      if (dlist.size() == 1) {
        m[static_cast<size_t>(dlist[0])] = clist[0];
      } else if (dlist.size() == 2) {
        // split-merge fiber: one circle splits and merges back. The right-turn
        // rule walks along the surgery band of the lower changed crossing and
        // turns right, landing on the arcs that exit corners 1 and 3; the
        // matching pairs the routes whose middle circle through corner 1
        // carries the label 1.
        int k = std::countr_zero(key.u ^ key.w);
        int s1 = 4 * k + 1;
        int cv = rs[key.v].slot_circle[static_cast<size_t>(s1)];
        int cvp = rs[key.vp].slot_circle[static_cast<size_t>(s1)];
        auto one_at = [](const std::string& label, int circle) {
          return middle_of(label)[static_cast<size_t>(circle)] == '1';
        };
        int d_alpha = one_at(dom.elements[static_cast<size_t>(dlist[0])].label, cv) ? dlist[0] : dlist[1];
        int d_beta = dlist[0] + dlist[1] - d_alpha;
        int c_alpha = one_at(cod.elements[static_cast<size_t>(clist[0])].label, cvp) ? clist[0] : clist[1];
        int c_beta = clist[0] + clist[1] - c_alpha;
        if (!one_at(dom.elements[static_cast<size_t>(d_alpha)].label, cv) ||
            one_at(dom.elements[static_cast<size_t>(d_beta)].label, cv) ||
            !one_at(cod.elements[static_cast<size_t>(c_alpha)].label, cvp) ||
            one_at(cod.elements[static_cast<size_t>(c_beta)].label, cvp))
          throw std::logic_error("khovanov square: ladybug selection failed");
        m[static_cast<size_t>(d_alpha)] = c_alpha;
        m[static_cast<size_t>(d_beta)] = c_beta;
      } else {
        throw std::logic_error("khovanov square: fiber larger than two");
      }
    }
    F.squares[key] = std::move(m);
  }
  return F;
}

int homological_degree(const LinkDiagram& D, Vertex v) {
  return (D.n - norm(v)) - D.n_minus;
}

int quantum_degree(const LinkDiagram& D, Vertex v, const std::string& gen) {
  int ones = 0, exes = 0;
  for (char c : gen) (c == '1' ? ones : exes)++;
  return (D.n_plus - 2 * D.n_minus) + (D.n - norm(v)) + ones - exes;
}

bool BigradedComplex::d_squared_zero() const {
  for (const auto& [key, m] : diff) {
    auto next = diff.find({key.first + 1, key.second});
    if (next == diff.end()) continue;
    if (!is_zero(mat_mul(next->second, m))) return false;
  }
  return true;
}

long long BigradedComplex::gen_count(int i, int q) const {
  auto it = gens.find({i, q});
  return it == gens.end() ? 0 : static_cast<long long>(it->second.size());
}

BigradedComplex ckh(const LinkDiagram& D) {
  BurnsideFunctor F = khovanov_functor(D);
  TotalComplex tc = totalize(F);

  BigradedComplex C;
  std::map<std::pair<Vertex, std::string>, std::pair<std::pair<int, int>, int>> pos;
  for (int d = 0; d <= D.n; ++d)
    for (const auto& [v, label] : tc.gens[static_cast<size_t>(d)]) {
      std::pair<int, int> iq{homological_degree(D, v), quantum_degree(D, v, label)};
      pos[{v, label}] = {iq, static_cast<int>(C.gens[iq].size())};
      C.gens[iq].emplace_back(v, label);
    }
  for (int d = 1; d <= D.n; ++d) {
    const IntMat& m = tc.d[static_cast<size_t>(d)];
    const auto& src = tc.gens[static_cast<size_t>(d)];
    const auto& tgt = tc.gens[static_cast<size_t>(d) - 1];
    for (int col = 0; col < m.cols; ++col) {
      auto [siq, spos] = pos.at(src[static_cast<size_t>(col)]);
      for (int row = 0; row < m.rows; ++row) {
        if (m.at(row, col) == 0) continue;
        auto [tiq, tpos] = pos.at(tgt[static_cast<size_t>(row)]);
        if (tiq.first != siq.first + 1 || tiq.second != siq.second)
          throw std::logic_error("differential does not preserve the quantum grading");
        IntMat& block = C.diff[siq];
        if (block.rows == 0 && block.cols == 0)
          block = IntMat(static_cast<int>(C.gens[tiq].size()),
                         static_cast<int>(C.gens[siq].size()));
        block.at(tpos, spos) = m.at(row, col);
      }
    }
  }
  return C;
}

HomologyTable homology(const BigradedComplex& C, Coeffs coeffs) {
  auto rank_of = [&](const IntMat& m) -> int {
    if (m.rows == 0 || m.cols == 0) return 0;
    switch (coeffs) {
      case Coeffs::F2:
        return f2_rank(f2_from_int(m));
      default:
        return rank_q(m);
    }
  };
  HomologyTable H;
  for (const auto& [iq, gens] : C.gens) {
    long long n = static_cast<long long>(gens.size());
    auto out_it = C.diff.find(iq);
    IntMat out = out_it == C.diff.end() ? IntMat() : out_it->second;
    auto in_it = C.diff.find({iq.first - 1, iq.second});
    IntMat in = in_it == C.diff.end() ? IntMat() : in_it->second;

    HomologyEntry e;
    if (coeffs == Coeffs::Z) {
      std::vector<long long> inv =
          (in.rows == 0 || in.cols == 0) ? std::vector<long long>{} : smith_invariants(in);
      e.free_rank = n - rank_of(out) - static_cast<long long>(inv.size());
      for (long long d : inv)
        if (d > 1) e.torsion_orders.push_back(d);
    } else {
      e.free_rank = n - rank_of(out) - rank_of(in);
    }
    if (e.free_rank != 0 || !e.torsion_orders.empty()) H[iq] = std::move(e);
  }
  return H;
}

Laurent laurent_add(const Laurent& a, const Laurent& b) {
  Laurent r = a;
  for (const auto& [e, c] : b) {
    r[e] += c;
    if (r[e] == 0) r.erase(e);
  }
  return r;
}

Laurent laurent_mul(const Laurent& a, const Laurent& b) {
  Laurent r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[ea + eb] += ca * cb;
  for (auto it = r.begin(); it != r.end();)
    it = it->second == 0 ? r.erase(it) : std::next(it);
  return r;
}

Laurent state_sum(const LinkDiagram& D) {
  Laurent total;
  Laurent ring = {{-1, 1}, {1, 1}};  // q + q^-1
  for (Vertex v = 0; v < (Vertex{1} << D.n); ++v) {
    int z = D.n - norm(v);
    int c = resolve(D, v).circle_count();
    Laurent term = {{z, (z & 1) ? -1LL : 1LL}};
    for (int i = 0; i < c; ++i) term = laurent_mul(term, ring);
    total = laurent_add(total, term);
  }
  int shift = D.n_plus - 2 * D.n_minus;
  long long sign = (D.n_minus & 1) ? -1 : 1;
  Laurent shifted;
  for (const auto& [e, c] : total) shifted[e + shift] = sign * c;
  return shifted;
}

Laurent euler_from_generators(const BigradedComplex& C) {
  Laurent r;
  for (const auto& [iq, gens] : C.gens) {
    long long term = ((iq.first & 1) ? -1LL : 1LL) * static_cast<long long>(gens.size());
    r[iq.second] += term;
    if (r[iq.second] == 0) r.erase(iq.second);
  }
  return r;
}

Laurent euler_from_homology(const HomologyTable& H) {
  Laurent r;
  for (const auto& [iq, e] : H) {
    long long term = ((iq.first & 1) ? -1LL : 1LL) * e.free_rank;
    if (term == 0) continue;
    r[iq.second] += term;
    if (r[iq.second] == 0) r.erase(iq.second);
  }
  return r;
}

}  // namespace khoburn
