#include "khoburn/periodic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace khoburn {

namespace {

std::vector<int> perm_power(const std::vector<int>& p, int g) {
  std::vector<int> x(p.size());
  std::iota(x.begin(), x.end(), 0);
  for (int t = 0; t < g; ++t)
    for (size_t i = 0; i < x.size(); ++i) x[i] = p[static_cast<size_t>(x[i])];
  return x;
}

bool is_perm(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[static_cast<size_t>(x)]) return false;
    seen[static_cast<size_t>(x)] = true;
  }
  return true;
}

long long perm_order(const std::vector<int>& p) {
  long long o = 1;
  std::vector<bool> seen(p.size(), false);
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    for (size_t j = i; !seen[j]; j = static_cast<size_t>(p[static_cast<size_t>(j)])) {
      seen[j] = true;
      ++len;
    }
    o = o / std::gcd(o, len) * len;
  }
  return o;
}

}  // namespace

PeriodicDiagram parse_periodic(const std::string& json_text) {
  PeriodicDiagram P;
  P.diagram = parse_pd(json_text);
  nlohmann::json j = nlohmann::json::parse(json_text);  // syntax vetted by parse_pd
  if (j.contains("m")) {
    if (!j.at("m").is_number_integer())
      throw std::invalid_argument("periodic input: \"m\" must be an integer");
    P.m = j.at("m").get<int>();
  }
  if (j.contains("sigma_crossings")) {
    if (!j.at("sigma_crossings").is_array())
      throw std::invalid_argument("periodic input: \"sigma_crossings\" must be an array");
    P.sigma_crossings = j.at("sigma_crossings").get<std::vector<int>>();
  } else {
    P.sigma_crossings.resize(static_cast<size_t>(P.diagram.n));
    std::iota(P.sigma_crossings.begin(), P.sigma_crossings.end(), 0);
  }
  if (j.contains("sigma_edges")) {
    if (!j.at("sigma_edges").is_object())
      throw std::invalid_argument("periodic input: \"sigma_edges\" must be an object");
    for (const auto& [k, v] : j.at("sigma_edges").items()) {
      size_t used = 0;
      int key = 0;
      try {
        key = std::stoi(k, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != k.size() || !v.is_number_integer())
        throw std::invalid_argument("periodic input: \"sigma_edges\" maps edge labels to labels");
      P.sigma_edges[key] = v.get<int>();
    }
  } else {
    for (const auto& t : P.diagram.pd)
      for (int e : t) P.sigma_edges[e] = e;
  }
  return P;
}

PeriodicReport validate_periodic(const PeriodicDiagram& P) {
  PeriodicReport r;
  const LinkDiagram& D = P.diagram;
  const int N = D.n;
  if (P.m <= 0) {
    r.fail("period must be positive, got " + std::to_string(P.m));
    return r;
  }
  if (N % P.m != 0) {
    r.fail("crossing count " + std::to_string(N) + " is not divisible by the period " +
           std::to_string(P.m));
    return r;
  }
  if (static_cast<int>(P.sigma_crossings.size()) != N || !is_perm(P.sigma_crossings)) {
    r.fail("sigma_crossings is not a permutation of the crossings");
    return r;
  }
  std::set<int> edge_labels;
  for (const auto& t : D.pd)
    for (int e : t) edge_labels.insert(e);
  {
    std::set<int> keys, vals;
    for (const auto& [k, v] : P.sigma_edges) {
      keys.insert(k);
      vals.insert(v);
    }
    if (keys != edge_labels || vals != edge_labels) {
      r.fail("sigma_edges is not a permutation of the edge labels");
      return r;
    }
  }

  // edge permutation in vector form over sorted labels
  std::vector<int> labels(edge_labels.begin(), edge_labels.end());
  std::map<int, int> label_pos;
  for (size_t i = 0; i < labels.size(); ++i) label_pos[labels[i]] = static_cast<int>(i);
  std::vector<int> eperm(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) eperm[i] = label_pos.at(P.sigma_edges.at(labels[i]));

  long long oc = perm_order(P.sigma_crossings);
  long long oe = perm_order(eperm);
  long long o = oc / std::gcd(oc, oe) * oe;
  if (o != P.m)
    r.fail("the symmetry has order " + std::to_string(o) + ", not the declared period " +
           std::to_string(P.m));

  // the generator must carry each crossing tuple to the image tuple slotwise
  for (int c = 0; c < N; ++c) {
    int ic = P.sigma_crossings[static_cast<size_t>(c)];
    for (int k = 0; k < 4; ++k)
      if (D.pd[static_cast<size_t>(ic)][static_cast<size_t>(k)] !=
          P.sigma_edges.at(D.pd[static_cast<size_t>(c)][static_cast<size_t>(k)])) {
        r.fail("crossing " + std::to_string(c) + " does not map to crossing " + std::to_string(ic) +
               " slotwise");
        break;
      }
  }

  // an edge fixed by a power must have both endpoint crossings fixed
  for (int g = 1; g < P.m; ++g) {
    std::vector<int> cg = perm_power(P.sigma_crossings, g);
    std::vector<int> eg = perm_power(eperm, g);
    for (size_t i = 0; i < labels.size(); ++i) {
      if (eg[i] != static_cast<int>(i)) continue;
      bool endpoints_fixed = true;
      for (int c = 0; c < N; ++c)
        for (int k = 0; k < 4; ++k)
          if (D.pd[static_cast<size_t>(c)][static_cast<size_t>(k)] == labels[i] &&
              cg[static_cast<size_t>(c)] != c)
            endpoints_fixed = false;
      if (!endpoints_fixed)
        r.fail("edge " + std::to_string(labels[i]) + " is fixed by sigma^" + std::to_string(g) +
               " but its endpoints are not");
    }
  }

  // conjugacy with the block rotation: every crossing orbit has size m
  std::vector<int> renum(static_cast<size_t>(N), -1);
  std::vector<bool> seen(static_cast<size_t>(N), false);
  const int nb = N / P.m;
  int orbit = 0;
  bool conjugate = true;
  for (int c = 0; c < N && conjugate; ++c) {
    if (seen[static_cast<size_t>(c)]) continue;
    int len = 0, x = c;
    do {
      seen[static_cast<size_t>(x)] = true;
      renum[static_cast<size_t>(x)] = len * nb + orbit;
      ++len;
      x = P.sigma_crossings[static_cast<size_t>(x)];
    } while (x != c);
    if (len != P.m) {
      r.fail("the crossing action is not conjugate to the block rotation (orbit of size " +
             std::to_string(len) + ")");
      conjugate = false;
    }
    ++orbit;
  }
  if (conjugate) r.renumbering = std::move(renum);
  return r;
}

MusytAction induced_action(const PeriodicDiagram& P) {
  PeriodicReport rep = validate_periodic(P);
  if (!rep.ok) throw std::invalid_argument("induced_action: " + rep.violations.front());
  const LinkDiagram& D = P.diagram;
  const int N = D.n, m = P.m;

  MusytAction A;
  A.group = (m == 1) ? CyclicAction{1, N, {}} : CyclicAction{m, N / m, P.sigma_crossings};

  BurnsideFunctor F = khovanov_functor(D);
  std::vector<ResolvedState> rs;
  rs.reserve(std::size_t{1} << N);
  for (Vertex v = 0; v < (Vertex{1} << N); ++v) rs.push_back(resolve(D, v));

  auto label_index = [&](Vertex v, const std::string& s) {
    const auto& set = F.vertex_sets.at(v);
    auto it = std::lower_bound(set.begin(), set.end(), s);
    if (it == set.end() || *it != s)
      throw std::logic_error("induced_action: missing image labeling " + s);
    return static_cast<int>(it - set.begin());
  };

  for (int g = 0; g < m; ++g) {
    std::vector<int> sg = perm_power(P.sigma_crossings, g);

    // circle bijections of sigma^g, per vertex: a circle goes to the circle
    // containing the image of any of its slots
    std::vector<std::vector<int>> cmap(std::size_t{1} << N);
    for (Vertex v = 0; v < (Vertex{1} << N); ++v) {
      Vertex w = act_vertex(g, v, A.group);
      const ResolvedState& rv = rs[v];
      const ResolvedState& rw = rs[w];
      std::vector<int> cm(static_cast<size_t>(rv.circle_count()));
      for (size_t c = 0; c < rv.circles.size(); ++c) {
        int s = rv.circles[c][0];
        cm[c] = rw.slot_circle[static_cast<size_t>(4 * sg[static_cast<size_t>(s / 4)] + s % 4)];
      }
      for (size_t c = rv.circles.size(); c < cm.size(); ++c) cm[c] = static_cast<int>(c);
      cmap[v] = std::move(cm);

      const auto& set = F.vertex_sets.at(v);
      std::vector<int> vb(set.size());
      for (size_t idx = 0; idx < set.size(); ++idx) {
        std::string t(set[idx].size(), '?');
        for (size_t c = 0; c < t.size(); ++c)
          t[static_cast<size_t>(cmap[v][c])] = set[idx][c];
        vb[idx] = label_index(w, t);
      }
      A.vertex_bijections[{g, v}] = std::move(vb);
    }

    for (const auto& [key, corr] : F.edge_corrs) {
      Vertex u = key.first, v = key.second;
      Vertex gu = act_vertex(g, u, A.group), gv = act_vertex(g, v, A.group);
      const Correspondence& ic = F.edge_corrs.at({gu, gv});
      std::vector<int> eb(corr.elements.size());
      for (size_t e = 0; e < corr.elements.size(); ++e) {
        const auto& el = corr.elements[e];
        const std::string& su = corr.src[static_cast<size_t>(el.s)];
        const std::string& tv = corr.tgt[static_cast<size_t>(el.t)];
        std::string isu(su.size(), '?'), itv(tv.size(), '?');
        for (size_t c = 0; c < su.size(); ++c) isu[static_cast<size_t>(cmap[u][c])] = su[c];
        for (size_t c = 0; c < tv.size(); ++c) itv[static_cast<size_t>(cmap[v][c])] = tv[c];
        int ie = ic.element_index(isu + ">" + itv);
        if (ie < 0) throw std::logic_error("induced_action: image element missing at an edge");
        eb[e] = ie;
      }
      A.edge_bijections[{g, u, v}] = std::move(eb);
    }
  }
  return A;
}

bool GroupModule::valid() const {
  if (m <= 0 || dim < 0 || generator.rows != dim || generator.cols != dim) return false;
  F2Mat p(dim, dim), id(dim, dim);
  for (int i = 0; i < dim; ++i) {
    p.set(i, i, true);
    id.set(i, i, true);
  }
  for (int t = 0; t < m; ++t) p = f2_mul(generator, p);
  return p == id;
}

GroupModule trivial_module(int m) {
  GroupModule M;
  M.m = m;
  M.dim = 1;
  M.generator = F2Mat(1, 1);
  M.generator.set(0, 0, true);
  return M;
}

GroupModule free_module(int m) {
  GroupModule M;
  M.m = m;
  M.dim = m;
  M.generator = F2Mat(m, m);
  for (int k = 0; k < m; ++k) M.generator.set((k + 1) % m, k, true);
  return M;
}

GroupModule EquivariantComplex::module_at(int i, int q) const {
  GroupModule M;
  M.m = m;
  auto it = action.find({i, q});
  M.dim = it == action.end() ? 0 : static_cast<int>(it->second.size());
  M.generator = F2Mat(M.dim, M.dim);
  if (it != action.end())
    for (int a = 0; a < M.dim; ++a)
      M.generator.set(it->second[static_cast<size_t>(a)], a, true);
  return M;
}

EquivariantComplex equivariant_complex(const PeriodicDiagram& P) {
  MusytAction A = induced_action(P);
  BurnsideFunctor F = khovanov_functor(P.diagram);

  EquivariantComplex E;
  E.complex = ckh(P.diagram);
  E.m = P.m;

  std::map<std::pair<Vertex, std::string>, std::pair<std::pair<int, int>, int>> pos;
  for (const auto& [iq, gens] : E.complex.gens)
    for (size_t a = 0; a < gens.size(); ++a) pos[gens[a]] = {iq, static_cast<int>(a)};

  for (const auto& [iq, gens] : E.complex.gens) {
    std::vector<int> perm(gens.size());
    for (size_t a = 0; a < gens.size(); ++a) {
      const auto& [v, s] = gens[a];
      Vertex w = act_vertex(1, v, A.group);
      const auto& set = F.vertex_sets.at(v);
      int idx = static_cast<int>(std::lower_bound(set.begin(), set.end(), s) - set.begin());
      const std::string& t =
          F.vertex_sets.at(w)[static_cast<size_t>(A.vertex(1, v)[static_cast<size_t>(idx)])];
      auto [iq2, b] = pos.at({w, t});
      if (iq2 != iq) throw std::logic_error("equivariant_complex: the action moved a bidegree");
      perm[a] = b;
    }
    E.action[iq] = std::move(perm);
  }
  return E;
}

namespace {

std::vector<std::uint8_t> row_vec(const F2Mat& a, int r) {
  std::vector<std::uint8_t> v(static_cast<size_t>(a.cols));
  for (int j = 0; j < a.cols; ++j) v[static_cast<size_t>(j)] = a.get(r, j) ? 1 : 0;
  return v;
}

std::vector<std::uint8_t> matvec(const F2Mat& a, const std::vector<std::uint8_t>& x) {
  std::vector<std::uint8_t> y(static_cast<size_t>(a.rows), 0);
  for (int i = 0; i < a.rows; ++i) {
    int s = 0;
    for (int j = 0; j < a.cols; ++j)
      if (a.get(i, j) && x[static_cast<size_t>(j)]) s ^= 1;
    y[static_cast<size_t>(i)] = static_cast<std::uint8_t>(s);
  }
  return y;
}

bool zero_vec(const std::vector<std::uint8_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::uint8_t b) { return !b; });
}

// row space kept reduced against earlier pivots
struct Echelon {
  std::vector<std::vector<std::uint8_t>> rows;
  std::vector<int> pivots;

  std::vector<std::uint8_t> reduce(std::vector<std::uint8_t> v) const {
    for (size_t r = 0; r < rows.size(); ++r)
      if (v[static_cast<size_t>(pivots[r])])
        for (size_t j = 0; j < v.size(); ++j) v[j] = v[j] ^ rows[r][j];
    return v;
  }

  bool add(std::vector<std::uint8_t> v) {
    v = reduce(std::move(v));
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j]) {
        pivots.push_back(static_cast<int>(j));
        rows.push_back(std::move(v));
        return true;
      }
    return false;
  }
};

}  // namespace

FreeResolution module_resolution(const GroupModule& M, int length) {
  if (length < 0) throw std::invalid_argument("module_resolution: negative length");
  if (!M.valid()) throw std::invalid_argument("module_resolution: invalid module");
  const int m = M.m;

  FreeResolution R;
  R.m = m;

  int d = M.dim;
  F2Mat T = M.generator;
  F2Mat prev_kernel;  // kernel basis of the previous stage, ambient rows

  for (int s = 0; s <= length; ++s) {
    // greedy free cover by orbits of standard basis vectors
    Echelon span;
    std::vector<int> gen_idx;
    for (int i = 0; i < d; ++i) {
      std::vector<std::uint8_t> e(static_cast<size_t>(d), 0);
      e[static_cast<size_t>(i)] = 1;
      if (zero_vec(span.reduce(e))) continue;
      gen_idx.push_back(i);
      std::vector<std::uint8_t> w = e;
      for (int k = 0; k < m; ++k) {
        span.add(w);
        w = matvec(T, w);
      }
    }
    const int b = static_cast<int>(gen_idx.size());
    R.ranks.push_back(b);

    // stage map on the basis t^k e_i
    F2Mat eps(d, b * m);
    for (int i = 0; i < b; ++i) {
      std::vector<std::uint8_t> w(static_cast<size_t>(d), 0);
      w[static_cast<size_t>(gen_idx[static_cast<size_t>(i)])] = 1;
      for (int k = 0; k < m; ++k) {
        for (int row = 0; row < d; ++row)
          if (w[static_cast<size_t>(row)]) eps.set(row, i * m + k, true);
        w = matvec(T, w);
      }
    }

    if (s == 0) {
      R.augmentation = eps;
    } else {
      // translate the chosen kernel generators to ambient polynomials
      const int rows = R.ranks[static_cast<size_t>(s) - 1];
      std::vector<std::vector<GroupPoly>> pm(
          static_cast<size_t>(rows),
          std::vector<GroupPoly>(static_cast<size_t>(b), GroupPoly(static_cast<size_t>(m), 0)));
      for (int j = 0; j < b; ++j) {
        std::vector<std::uint8_t> w = row_vec(prev_kernel, gen_idx[static_cast<size_t>(j)]);
        for (int i = 0; i < rows; ++i)
          for (int k = 0; k < m; ++k)
            pm[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)] =
                w[static_cast<size_t>(i * m + k)];
      }
      R.maps.push_back(std::move(pm));
    }
    if (s == length) break;

    // next module: the kernel with the regular action restricted
    F2Mat K = f2_kernel(eps);
    F2Mat t_reg(b * m, b * m);
    for (int i = 0; i < b; ++i)
      for (int k = 0; k < m; ++k) t_reg.set(i * m + (k + 1) % m, i * m + k, true);
    F2Mat Kt = f2_transpose(K);
    F2Mat Tn(K.rows, K.rows);
    for (int a = 0; a < K.rows; ++a) {
      std::vector<std::uint8_t> w = matvec(t_reg, row_vec(K, a));
      std::vector<std::uint8_t> y = f2_solve(Kt, w);
      if (y.empty() && !zero_vec(w))
        throw std::logic_error("module_resolution: kernel is not invariant");
      for (int r = 0; r < K.rows && r < static_cast<int>(y.size()); ++r)
        if (y[static_cast<size_t>(r)]) Tn.set(r, a, true);
    }
    d = K.rows;
    T = std::move(Tn);
    prev_kernel = std::move(K);
  }
  return R;
}

F2Mat resolution_matrix(const FreeResolution& R, int s) {
  if (s < 0 || s >= static_cast<int>(R.maps.size()))
    throw std::invalid_argument("resolution_matrix: stage out of range");
  const auto& pm = R.maps[static_cast<size_t>(s)];
  const int rows = R.ranks[static_cast<size_t>(s)], cols = R.ranks[static_cast<size_t>(s) + 1];
  F2Mat out(rows * R.m, cols * R.m);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      for (int k = 0; k < R.m; ++k)
        if (pm[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(k)])
          for (int a = 0; a < R.m; ++a)
            out.set(i * R.m + (a + k) % R.m, j * R.m + a, true);
  return out;
}

namespace {

// homology at one bidegree with the permutation action descended to it
struct SubquotientModule {
  int dim = 0;
  F2Mat T;
};

SubquotientModule homology_module(const std::vector<int>& perm, const F2Mat& d_out,
                                  const F2Mat& d_in) {
  F2Mat Z = f2_kernel(d_out);
  Echelon span;
  F2Mat images = f2_transpose(d_in);
  int img_rank = 0;
  for (int r = 0; r < images.rows; ++r)
    if (span.add(row_vec(images, r))) ++img_rank;

  // quotient representatives: kernel vectors independent of the image
  std::vector<std::vector<std::uint8_t>> reps;
  for (int r = 0; r < Z.rows; ++r) {
    std::vector<std::uint8_t> v = span.reduce(row_vec(Z, r));
    if (!zero_vec(v)) {
      span.add(v);
      reps.push_back(std::move(v));
    }
  }

  SubquotientModule H;
  H.dim = static_cast<int>(reps.size());
  H.T = F2Mat(H.dim, H.dim);
  if (H.dim == 0) return H;

  // coordinates of a vector over (image basis | representatives)
  const int n = Z.cols;
  F2Mat basis(n, img_rank + H.dim);
  for (int r = 0; r < img_rank; ++r)
    for (int j = 0; j < n; ++j)
      if (span.rows[static_cast<size_t>(r)][static_cast<size_t>(j)]) basis.set(j, r, true);
  for (int r = 0; r < H.dim; ++r)
    for (int j = 0; j < n; ++j)
      if (reps[static_cast<size_t>(r)][static_cast<size_t>(j)]) basis.set(j, img_rank + r, true);

  for (int a = 0; a < H.dim; ++a) {
    std::vector<std::uint8_t> w(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      if (reps[static_cast<size_t>(a)][static_cast<size_t>(i)])
        w[static_cast<size_t>(perm[static_cast<size_t>(i)])] = 1;
    std::vector<std::uint8_t> y = f2_solve(basis, w);
    if (y.empty() && !zero_vec(w))
      throw std::logic_error("ekh: the action does not preserve the homology");
    for (int r = 0; r < H.dim && img_rank + r < static_cast<int>(y.size()); ++r)
      if (y[static_cast<size_t>(img_rank + r)]) H.T.set(r, a, true);
  }
  return H;
}

// dim H^j of Hom(R^{b_*}, K) for j = 0..jmax
std::vector<long long> ext_dims(const SubquotientModule& K, const FreeResolution& R, int jmax) {
  const int m = R.m, k = K.dim;
  std::vector<F2Mat> tp(static_cast<size_t>(m));
  tp[0] = F2Mat(k, k);
  for (int i = 0; i < k; ++i) tp[0].set(i, i, true);
  for (int c = 1; c < m; ++c) tp[static_cast<size_t>(c)] = f2_mul(K.T, tp[static_cast<size_t>(c) - 1]);

  auto delta = [&](int s) {
    const auto& pm = R.maps[static_cast<size_t>(s)];
    const int bs = R.ranks[static_cast<size_t>(s)], bn = R.ranks[static_cast<size_t>(s) + 1];
    F2Mat D(bn * k, bs * k);
    for (int i = 0; i < bs; ++i)
      for (int j = 0; j < bn; ++j)
        for (int c = 0; c < m; ++c)
          if (pm[static_cast<size_t>(i)][static_cast<size_t>(j)][static_cast<size_t>(c)]) {
            const F2Mat& t = tp[static_cast<size_t>(c)];
            for (int r = 0; r < k; ++r)
              for (int col = 0; col < k; ++col)
                if (t.get(r, col)) D.set(j * k + r, i * k + col, !D.get(j * k + r, i * k + col));
          }
    return D;
  };

  std::vector<long long> dims(static_cast<size_t>(jmax) + 1, 0);
  int prev_rank = 0;
  for (int j = 0; j <= jmax; ++j) {
    F2Mat dj = delta(j);
    int rj = f2_rank(dj);
    dims[static_cast<size_t>(j)] =
        static_cast<long long>(R.ranks[static_cast<size_t>(j)]) * k - rj - prev_rank;
    prev_rank = rj;
  }
  return dims;
}

}  // namespace

std::map<std::pair<int, int>, long long> ekh_with_resolution(const PeriodicDiagram& P,
                                                             const GroupModule& M,
                                                             const FreeResolution& R, int jmax) {
  if (jmax < 0) throw std::invalid_argument("ekh: jmax must be nonnegative");
  if (!M.valid()) throw std::invalid_argument("ekh: invalid module");
  if (M.m != P.m || R.m != M.m)
    throw std::invalid_argument("ekh: module and period group orders do not agree");
  if (static_cast<int>(R.maps.size()) < jmax + 1)
    throw std::invalid_argument("ekh: jmax exceeds resolution length");

  EquivariantComplex E = equivariant_complex(P);
  auto gens_at = [&](int i, int q) -> int {
    auto it = E.complex.gens.find({i, q});
    return it == E.complex.gens.end() ? 0 : static_cast<int>(it->second.size());
  };
  auto block = [&](int i, int q) {
    auto it = E.complex.diff.find({i, q});
    if (it != E.complex.diff.end()) return f2_from_int(it->second);
    return F2Mat(gens_at(i + 1, q), gens_at(i, q));
  };

  std::map<std::pair<int, int>, long long> table;
  for (const auto& [iq, gens] : E.complex.gens) {
    const auto [i, q] = iq;
    SubquotientModule K = homology_module(E.action.at(iq), block(i, q), block(i - 1, q));
    if (K.dim == 0) continue;
    std::vector<long long> dims = ext_dims(K, R, jmax);
    for (int j = 0; j <= jmax; ++j)
      if (dims[static_cast<size_t>(j)]) table[{j, q}] += dims[static_cast<size_t>(j)];
  }
  return table;
}

std::map<std::pair<int, int>, long long> ekh(const PeriodicDiagram& P, const GroupModule& M,
                                             int jmax) {
  return ekh_with_resolution(P, M, module_resolution(M, jmax + 1), jmax);
}

}  // namespace khoburn
