#include "khoburn/correspondence.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace khoburn {

namespace {

int find_sorted(const std::vector<std::string>& v, const std::string& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) return -1;
  return static_cast<int>(it - v.begin());
}

}  // namespace

int Correspondence::src_index(const std::string& x) const { return find_sorted(src, x); }
int Correspondence::tgt_index(const std::string& y) const { return find_sorted(tgt, y); }

int Correspondence::element_index(const std::string& label) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), label,
                             [](const Element& e, const std::string& l) { return e.label < l; });
  if (it == elements.end() || it->label != label) return -1;
  return static_cast<int>(it - elements.begin());
}

bool label_ok(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '+' || c == '*') return false;
  return true;
}

bool composite_label_ok(const std::string& s) {
  size_t start = 0;
  for (;;) {
    size_t star = s.find('*', start);
    if (!label_ok(s.substr(start, star == std::string::npos ? star : star - start))) return false;
    if (star == std::string::npos) return true;
    start = star + 1;
  }
}

namespace {

std::vector<std::string> sorted_unique_objects(std::vector<std::string> v, const char* what) {
  for (const auto& s : v)
    if (!label_ok(s)) throw std::invalid_argument(std::string(what) + ": bad label '" + s + "'");
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw std::invalid_argument(std::string(what) + ": duplicate label");
  return v;
}

Correspondence build_correspondence(
    std::vector<std::string> src, std::vector<std::string> tgt,
    std::vector<std::tuple<std::string, std::string, std::string>> label_src_tgt,
    bool (*element_label_ok)(const std::string&)) {
  Correspondence c;
  c.src = sorted_unique_objects(std::move(src), "correspondence src");
  c.tgt = sorted_unique_objects(std::move(tgt), "correspondence tgt");
  for (auto& [lbl, sx, ty] : label_src_tgt) {
    if (!element_label_ok(lbl))
      throw std::invalid_argument("correspondence element: bad label '" + lbl + "'");
    int s = c.src_index(sx), t = c.tgt_index(ty);
    if (s < 0 || t < 0)
      throw std::invalid_argument("correspondence element '" + lbl + "': endpoint not in src/tgt");
    c.elements.push_back({lbl, s, t});
  }
  std::sort(c.elements.begin(), c.elements.end(),
            [](const auto& a, const auto& b) { return a.label < b.label; });
  for (size_t i = 0; i + 1 < c.elements.size(); ++i)
    if (c.elements[i].label == c.elements[i + 1].label)
      throw std::invalid_argument("correspondence: duplicate element label " + c.elements[i].label);
  return c;
}

}  // namespace

Correspondence make_correspondence(
    std::vector<std::string> src, std::vector<std::string> tgt,
    std::vector<std::tuple<std::string, std::string, std::string>> label_src_tgt) {
  return build_correspondence(std::move(src), std::move(tgt), std::move(label_src_tgt), label_ok);
}

Correspondence make_composite_correspondence(
    std::vector<std::string> src, std::vector<std::string> tgt,
    std::vector<std::tuple<std::string, std::string, std::string>> label_src_tgt) {
  return build_correspondence(std::move(src), std::move(tgt), std::move(label_src_tgt),
                              composite_label_ok);
}

Correspondence identity_corr(const std::vector<std::string>& objects) {
  Correspondence c;
  c.src = sorted_unique_objects(objects, "identity correspondence");
  c.tgt = c.src;
  for (int i = 0; i < static_cast<int>(c.src.size()); ++i)
    c.elements.push_back({c.src[static_cast<size_t>(i)], i, i});
  return c;
}

bool is_invertible(const Correspondence& c) {
  if (c.elements.size() != c.src.size() || c.elements.size() != c.tgt.size()) return false;
  std::vector<bool> s_hit(c.src.size(), false), t_hit(c.tgt.size(), false);
  for (const auto& e : c.elements) {
    if (s_hit[static_cast<size_t>(e.s)] || t_hit[static_cast<size_t>(e.t)]) return false;
    s_hit[static_cast<size_t>(e.s)] = t_hit[static_cast<size_t>(e.t)] = true;
  }
  return true;
}

Correspondence corr_inverse(const Correspondence& c) {
  if (!is_invertible(c)) throw std::invalid_argument("corr_inverse: not invertible");
  Correspondence r;
  r.src = c.tgt;
  r.tgt = c.src;
  for (const auto& e : c.elements) r.elements.push_back({e.label, e.t, e.s});
  std::sort(r.elements.begin(), r.elements.end(),
            [](const auto& a, const auto& b) { return a.label < b.label; });
  return r;
}

Correspondence compose(const Correspondence& B, const Correspondence& A) {
  if (A.tgt != B.src) throw std::invalid_argument("compose: tgt(A) != src(B)");
  Correspondence c;
  c.src = A.src;
  c.tgt = B.tgt;
  for (const auto& b : B.elements)
    for (const auto& a : A.elements)
      if (a.t == b.s) c.elements.push_back({b.label + "*" + a.label, a.s, b.t});
  std::sort(c.elements.begin(), c.elements.end(),
            [](const auto& x, const auto& y) { return x.label < y.label; });
  return c;
}

int fiber_count(const Correspondence& c, int x, int y) {
  int n = 0;
  for (const auto& e : c.elements)
    if (e.s == x && e.t == y) ++n;
  return n;
}

bool corr_morphism_valid(const Correspondence& dom, const Correspondence& cod,
                         const CorrMorphism& f) {
  if (dom.src != cod.src || dom.tgt != cod.tgt) return false;
  if (dom.elements.size() != cod.elements.size()) return false;
  if (f.size() != dom.elements.size()) return false;
  std::vector<bool> hit(cod.elements.size(), false);
  for (size_t i = 0; i < f.size(); ++i) {
    int j = f[i];
    if (j < 0 || j >= static_cast<int>(cod.elements.size()) || hit[static_cast<size_t>(j)]) return false;
    hit[static_cast<size_t>(j)] = true;
    if (dom.elements[i].s != cod.elements[static_cast<size_t>(j)].s) return false;
    if (dom.elements[i].t != cod.elements[static_cast<size_t>(j)].t) return false;
  }
  return true;
}

CorrMorphism corr_morphism_identity(const Correspondence& c) {
  CorrMorphism f(c.elements.size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = static_cast<int>(i);
  return f;
}

CorrMorphism corr_morphism_compose(const CorrMorphism& second, const CorrMorphism& first) {
  return index_map_compose(second, first);
}

CorrMorphism corr_morphism_inverse(const CorrMorphism& f) { return index_map_inverse(f); }

std::string Path::label_of(int e) const {
  std::string out;
  const auto& chain = elems[static_cast<size_t>(e)];
  for (int p = static_cast<int>(factors.size()) - 1; p >= 0; --p) {
    if (!out.empty()) out += "*";
    out += factors[static_cast<size_t>(p)].elements[static_cast<size_t>(chain[static_cast<size_t>(p)])].label;
  }
  return out;
}

int Path::locate(const std::vector<int>& chain) const {
  // elems sorted by reversed chain tuple; binary search
  auto rev_less = [this](const std::vector<int>& a, const std::vector<int>& b) {
    for (int p = static_cast<int>(factors.size()) - 1; p >= 0; --p) {
      const auto& la = factors[static_cast<size_t>(p)].elements[static_cast<size_t>(a[static_cast<size_t>(p)])].label;
      const auto& lb = factors[static_cast<size_t>(p)].elements[static_cast<size_t>(b[static_cast<size_t>(p)])].label;
      if (la != lb) return la < lb;
    }
    return false;
  };
  auto it = std::lower_bound(elems.begin(), elems.end(), chain, rev_less);
  if (it == elems.end() || *it != chain) return -1;
  return static_cast<int>(it - elems.begin());
}

Correspondence Path::to_correspondence() const {
  Correspondence c;
  c.src = factors.front().src;
  c.tgt = factors.back().tgt;
  for (int e = 0; e < size(); ++e) c.elements.push_back({label_of(e), src_of(e), tgt_of(e)});
  // already sorted: path order is flattened-label order
  return c;
}

Path make_path(std::vector<Correspondence> factors) {
  if (factors.empty()) throw std::invalid_argument("make_path: empty path");
  for (size_t p = 0; p + 1 < factors.size(); ++p)
    if (factors[p].tgt != factors[p + 1].src)
      throw std::invalid_argument("make_path: factors not composable");
  Path path;
  path.factors = std::move(factors);
  std::vector<int> chain(path.factors.size(), 0);
  // depth-first over fiber chains; recursion on the LAST factor outermost so
  // the natural emit order is the reversed-tuple (flattened label) order
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos < 0) {
      path.elems.push_back(chain);
      return;
    }
    const auto& f = path.factors[static_cast<size_t>(pos)];
    for (int i = 0; i < static_cast<int>(f.elements.size()); ++i) {
      if (pos + 1 < static_cast<int>(path.factors.size())) {
        int need = path.factors[static_cast<size_t>(pos) + 1].elements[static_cast<size_t>(chain[static_cast<size_t>(pos) + 1])].s;
        if (f.elements[static_cast<size_t>(i)].t != need) continue;
      }
      chain[static_cast<size_t>(pos)] = i;
      self(self, pos - 1);
    }
  };
  rec(rec, static_cast<int>(path.factors.size()) - 1);
  return path;
}

std::vector<int> path_map_component(const Path& A, const Path& B, int pos, const CorrMorphism& m) {
  std::vector<int> out(A.elems.size());
  for (size_t e = 0; e < A.elems.size(); ++e) {
    std::vector<int> chain = A.elems[e];
    chain[static_cast<size_t>(pos)] = m[static_cast<size_t>(chain[static_cast<size_t>(pos)])];
    int j = B.locate(chain);
    if (j < 0) throw std::logic_error("path_map_component: image element missing");
    out[e] = j;
  }
  return out;
}

std::vector<int> path_map_pair(const Path& A, const Path& B, int pos, const CorrMorphism& sq) {
  Path pairA = make_path({A.factors[static_cast<size_t>(pos)], A.factors[static_cast<size_t>(pos) + 1]});
  Path pairB = make_path({B.factors[static_cast<size_t>(pos)], B.factors[static_cast<size_t>(pos) + 1]});
  std::vector<int> out(A.elems.size());
  for (size_t e = 0; e < A.elems.size(); ++e) {
    std::vector<int> chain = A.elems[e];
    int p = pairA.locate({chain[static_cast<size_t>(pos)], chain[static_cast<size_t>(pos) + 1]});
    if (p < 0) throw std::logic_error("path_map_pair: pair not found");
    int q = sq[static_cast<size_t>(p)];
    chain[static_cast<size_t>(pos)] = pairB.elems[static_cast<size_t>(q)][0];
    chain[static_cast<size_t>(pos) + 1] = pairB.elems[static_cast<size_t>(q)][1];
    int j = B.locate(chain);
    if (j < 0) throw std::logic_error("path_map_pair: image element missing");
    out[e] = j;
  }
  return out;
}

std::vector<int> index_map_compose(const std::vector<int>& second, const std::vector<int>& first) {
  std::vector<int> out(first.size());
  for (size_t i = 0; i < first.size(); ++i) out[i] = second[static_cast<size_t>(first[i])];
  return out;
}

std::vector<int> index_map_inverse(const std::vector<int>& f) {
  std::vector<int> out(f.size(), -1);
  for (size_t i = 0; i < f.size(); ++i) out[static_cast<size_t>(f[i])] = static_cast<int>(i);
  return out;
}

bool index_map_is_identity(const std::vector<int>& f) {
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] != static_cast<int>(i)) return false;
  return true;
}

}  // namespace khoburn
