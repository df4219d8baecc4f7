#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "khoburn/burnside.hpp"
#include "khoburn/burnside_json.hpp"

using namespace khoburn;

namespace {

Correspondence corr(std::vector<std::string> src, std::vector<std::string> tgt,
                    std::vector<std::tuple<std::string, std::string, std::string>> els) {
  return make_correspondence(std::move(src), std::move(tgt), std::move(els));
}

// Functor on 2^n with one singleton {label} per vertex and every edge the
// unique bijection; all squares are forced. The smallest valid functor.
BurnsideFunctor point_functor(int n) {
  BurnsideFunctor F;
  F.n = n;
  for (Vertex v = 0; v < (Vertex{1} << n); ++v) F.vertex_sets[v] = {"pt"};
  for (Vertex u = 0; u < (Vertex{1} << n); ++u)
    for (int i = 0; i < n; ++i)
      if (u >> i & 1) {
        Vertex v = u & ~(Vertex{1} << i);
        F.edge_corrs[{u, v}] = corr({"pt"}, {"pt"}, {{"e" + vertex_string(u, n) +
                                                          vertex_string(v, n),
                                                      "pt", "pt"}});
      }
  for (const SquareKey& k : all_squares(n)) F.squares[k] = {0};
  return F;
}

// Random correspondence with labels drawn from a disjoint pool per call.
Correspondence random_corr(std::mt19937_64& rng, const std::vector<std::string>& src,
                           const std::vector<std::string>& tgt, char tag) {
  std::uniform_int_distribution<int> nel(0, 4);
  std::uniform_int_distribution<int> pick_s(0, static_cast<int>(src.size()) - 1);
  std::uniform_int_distribution<int> pick_t(0, static_cast<int>(tgt.size()) - 1);
  std::vector<std::tuple<std::string, std::string, std::string>> els;
  int k = nel(rng);
  for (int i = 0; i < k; ++i)
    els.emplace_back(std::string(1, tag) + std::to_string(i),
                     src[static_cast<size_t>(pick_s(rng))], tgt[static_cast<size_t>(pick_t(rng))]);
  return corr(src, tgt, std::move(els));
}

}  // namespace

TEST_CASE("compose counts fiber products") {
  // two parallel elements compose with a single one to two elements
  Correspondence A = corr({"x"}, {"y"}, {{"a1", "x", "y"}, {"a2", "x", "y"}});
  Correspondence B = corr({"y"}, {"z"}, {{"b", "y", "z"}});
  Correspondence C = compose(B, A);
  CHECK(C.elements.size() == 2);
  CHECK(C.elements[0].label == "b*a1");
  CHECK(C.elements[1].label == "b*a2");
  CHECK(C.src == std::vector<std::string>{"x"});
  CHECK(C.tgt == std::vector<std::string>{"z"});
  CHECK(fiber_count(C, 0, 0) == 2);
}

TEST_CASE("compose with identity is a canonical isomorphism") {
  Correspondence A = corr({"x1", "x2"}, {"y"}, {{"a", "x1", "y"}, {"b", "x2", "y"}});
  Correspondence I = identity_corr({"y"});
  Correspondence C = compose(I, A);
  REQUIRE(C.elements.size() == A.elements.size());
  for (size_t i = 0; i < A.elements.size(); ++i) {
    CHECK(C.elements[i].label == "y*" + A.elements[i].label);
    CHECK(C.elements[i].s == A.elements[i].s);
    CHECK(C.elements[i].t == A.elements[i].t);
  }
}

TEST_CASE("compose over an empty fiber is empty") {
  Correspondence A = corr({"x", "x2"}, {"y1", "y2"}, {{"a", "x2", "y2"}});
  Correspondence B = corr({"y1", "y2"}, {"z"}, {{"b", "y1", "z"}});
  Correspondence C = compose(B, A);
  CHECK(C.elements.empty());
}

TEST_CASE("compose is associative after normalization") {
  // both bracketings of a triple composite flatten to identical data
  std::mt19937_64 rng(20260815);
  std::vector<std::string> X = {"x1", "x2", "x3"}, Y = {"y1", "y2"}, Z = {"z1", "z2", "z3"},
                           W = {"w1"};
  for (int trial = 0; trial < 200; ++trial) {
    Correspondence A = random_corr(rng, X, Y, 'a');
    Correspondence B = random_corr(rng, Y, Z, 'b');
    Correspondence C = random_corr(rng, Z, W, 'c');
    CHECK(compose(C, compose(B, A)) == compose(compose(C, B), A));
  }
}

TEST_CASE("invertibility and inverse") {
  Correspondence f = corr({"x1", "x2"}, {"y1", "y2"}, {{"p", "x1", "y2"}, {"q", "x2", "y1"}});
  CHECK(is_invertible(f));
  Correspondence g = corr_inverse(f);
  CHECK(g.src == f.tgt);
  CHECK(g.tgt == f.src);
  CHECK(is_invertible(compose(g, f)));
  Correspondence two_to_one = corr({"x1", "x2"}, {"y"}, {{"p", "x1", "y"}, {"q", "x2", "y"}});
  CHECK(!is_invertible(two_to_one));
}

TEST_CASE("path composite agrees with fold composition") {
  std::mt19937_64 rng(7);
  std::vector<std::string> X = {"x1", "x2"}, Y = {"y1", "y2", "y3"}, Z = {"z1"}, W = {"w1", "w2"};
  for (int trial = 0; trial < 100; ++trial) {
    Correspondence A = random_corr(rng, X, Y, 'a');
    Correspondence B = random_corr(rng, Y, Z, 'b');
    Correspondence C = random_corr(rng, Z, W, 'c');
    Path p = make_path({A, B, C});
    CHECK(p.to_correspondence() == compose(C, compose(B, A)));
  }
}

TEST_CASE("canonical chain drops coordinates in increasing order") {
  Chain c = canonical_chain(0b1011, 0b0000);
  CHECK(c.verts == std::vector<Vertex>{0b1011, 0b1010, 0b1000, 0b0000});
  Chain d = canonical_chain(0b110, 0b100);
  CHECK(d.verts == std::vector<Vertex>{0b110, 0b100});
  CHECK(canonical_chain(5, 5).verts == std::vector<Vertex>{5});
}

TEST_CASE("point functor validates in every dimension up to 4") {
  for (int n = 0; n <= 4; ++n) {
    BurnsideFunctor F = point_functor(n);
    ValidationReport rep = validate_functor(F);
    CHECK(rep.ok);
    CHECK(rep.violations.empty());
  }
}

TEST_CASE("validation reports missing pieces with coordinates") {
  BurnsideFunctor F = point_functor(2);
  F.edge_corrs.erase({0b11, 0b01});
  ValidationReport rep = validate_functor(F);
  REQUIRE(!rep.ok);
  CHECK(rep.violations[0].find("missing edge") != std::string::npos);
  CHECK(rep.violations[0].find("11->10") != std::string::npos);  // bit 0 first in string

  BurnsideFunctor G = point_functor(2);
  G.squares.clear();
  rep = validate_functor(G);
  REQUIRE(!rep.ok);
  CHECK(rep.violations[0].find("missing square") != std::string::npos);
}

namespace {

// Singleton vertex sets, two parallel elements a, b on every edge. A composite
// along a chain is a tuple of a/b values indexed by the dropped coordinates;
// square maps transport values along the dropped coordinate, i.e. swap the
// inner and outer labels. All composite elements share one fiber, so any
// transposition of a square map stays a valid 2-morphism and only the hexagon
// test can see it.
BurnsideFunctor product_functor(int n) {
  BurnsideFunctor F;
  F.n = n;
  for (Vertex v = 0; v < (Vertex{1} << n); ++v) F.vertex_sets[v] = {"pt"};
  for (Vertex u = 0; u < (Vertex{1} << n); ++u)
    for (int i = 0; i < n; ++i)
      if (u >> i & 1)
        F.edge_corrs[{u, u & ~(Vertex{1} << i)}] =
            corr({"pt"}, {"pt"}, {{"a", "pt", "pt"}, {"b", "pt", "pt"}});
  for (const SquareKey& k : all_squares(n)) {
    Correspondence dom = compose(F.edge(k.v, k.w), F.edge(k.u, k.v));
    Correspondence cod = compose(F.edge(k.vp, k.w), F.edge(k.u, k.vp));
    CorrMorphism m(dom.elements.size());
    for (size_t i = 0; i < m.size(); ++i) {
      const std::string& l = dom.elements[i].label;  // "y*x" -> "x*y"
      std::string swapped = l.substr(l.find('*') + 1) + "*" + l.substr(0, l.find('*'));
      m[i] = cod.element_index(swapped);
    }
    F.squares[k] = m;
  }
  return F;
}

}  // namespace

TEST_CASE("a transposed square bijection fails the hexagon on adjacent 3-faces") {
  BurnsideFunctor F = product_functor(4);
  REQUIRE(validate_functor(F).ok);

  // transpose two images of the square (0011 > 0001, 0010 > 0000); all four
  // composite elements share the same fiber so the square stays valid
  SquareKey victim{0b0011, 0b0001, 0b0010, 0b0000};
  REQUIRE(F.squares.count(victim) == 1);
  std::swap(F.squares[victim][0], F.squares[victim][1]);
  ValidationReport rep = validate_functor(F);
  REQUIRE(!rep.ok);

  // exactly the 3-faces containing the victim square report hexagon failures
  std::set<std::string> expect = {
      "hexagon at [w=" + vertex_string(0, 4) + ", u=" + vertex_string(0b0111, 4) +
          "]: six-step composite is not the identity",
      "hexagon at [w=" + vertex_string(0, 4) + ", u=" + vertex_string(0b1011, 4) +
          "]: six-step composite is not the identity"};
  CHECK(std::set<std::string>(rep.violations.begin(), rep.violations.end()) == expect);
}

TEST_CASE("no 3-faces means the hexagon stage passes vacuously") {
  BurnsideFunctor F = point_functor(2);
  std::swap(F.squares[all_squares(2)[0]], F.squares[all_squares(2)[0]]);
  CHECK(validate_functor(F).ok);
  CHECK(all_three_faces(2).empty());
}

TEST_CASE("chain change maps compose coherently for the point functor") {
  BurnsideFunctor F = point_functor(4);
  Chain a = canonical_chain(0b1111, 0);
  std::vector<Chain> maximal = enumerate_chains(0b1111, 0, 4);
  for (const Chain& b : maximal) {
    std::vector<int> m = chain_change_map(F, a, b);
    CHECK(m.size() == 1);
    CHECK(m[0] == 0);
  }
}

TEST_CASE("totalize: parallel elements give matrix entry of absolute value 2") {
  BurnsideFunctor F;
  F.n = 1;
  F.vertex_sets[0] = {"y"};
  F.vertex_sets[1] = {"x"};
  F.edge_corrs[{1, 0}] = corr({"x"}, {"y"}, {{"a1", "x", "y"}, {"a2", "x", "y"}});
  TotalComplex tc = totalize(F);
  REQUIRE(tc.d[1].rows == 1);
  REQUIRE(tc.d[1].cols == 1);
  CHECK(tc.d[1].at(0, 0) == 2);  // sign s_{1,0} = 0
}

TEST_CASE("totalize: the two routes of a singleton square get opposite signs") {
  BurnsideFunctor F = point_functor(2);
  TotalComplex tc = totalize(F);
  // d1 is 1x2, d2 is 2x1; signs on the two degree-1 rows must differ
  REQUIRE(tc.d[2].rows == 2);
  REQUIRE(tc.d[2].cols == 1);
  REQUIRE(tc.d[1].rows == 1);
  REQUIRE(tc.d[1].cols == 2);
  long long route_a = tc.d[1].at(0, 0) * tc.d[2].at(0, 0);
  long long route_b = tc.d[1].at(0, 1) * tc.d[2].at(1, 0);
  CHECK(route_a == -route_b);
  CHECK(route_a != 0);
  CHECK(tc.d_squared_zero());
  CHECK(edge_sign(0b11, 0b10) == 1);   // drop bit 0, no lower 1s
  CHECK(edge_sign(0b11, 0b01) == -1);  // drop bit 1, one lower 1
}

TEST_CASE("totalize rejects invalid functors") {
  BurnsideFunctor F = point_functor(2);
  F.edge_corrs.erase({0b11, 0b01});
  CHECK_THROWS_AS(totalize(F), std::invalid_argument);
}

TEST_CASE("d squared vanishes on doubled functors up to dimension 4") {
  for (int n = 2; n <= 4; ++n) {
    BurnsideFunctor F = point_functor(n);
    TotalComplex tc = totalize(F);
    CHECK(tc.d_squared_zero());
  }
}

TEST_CASE("validation is label invariant") {
  // conjugate the whole functor by a relabeling of one vertex set
  BurnsideFunctor F = point_functor(3);
  BurnsideFunctor G = F;
  Vertex moved = 0b101;
  G.vertex_sets[moved] = {"zz"};
  for (auto& [key, c] : G.edge_corrs) {
    if (key.first == moved)
      for (auto& s : c.src) s = "zz";
    if (key.second == moved)
      for (auto& t : c.tgt) t = "zz";
  }
  CHECK(validate_functor(G).ok == validate_functor(F).ok);
}

TEST_CASE("natural isomorphism: identity candidate") {
  for (int n = 1; n <= 3; ++n) {
    BurnsideFunctor F = point_functor(n);
    std::map<Vertex, Correspondence> eta;
    for (Vertex v = 0; v < (Vertex{1} << n); ++v) eta[v] = identity_corr(F.at(v));
    CHECK(natural_isomorphism_check(F, F, eta));
  }
}

TEST_CASE("natural isomorphism: relabeled copy") {
  BurnsideFunctor F = point_functor(2);
  BurnsideFunctor G = F;
  for (auto& [v, labels] : G.vertex_sets) labels = {"qt"};
  for (auto& [key, c] : G.edge_corrs) {
    for (auto& s : c.src) s = "qt";
    for (auto& t : c.tgt) t = "qt";
  }
  std::map<Vertex, Correspondence> eta;
  for (Vertex v = 0; v < 4; ++v)
    eta[v] = corr({"pt"}, {"qt"}, {{"r" + vertex_string(v, 2), "pt", "qt"}});
  CHECK(natural_isomorphism_check(F, G, eta));
}

TEST_CASE("natural isomorphism: dropped edge is detected") {
  BurnsideFunctor F = point_functor(2);
  BurnsideFunctor G = F;
  G.edge_corrs[{0b11, 0b01}] = corr({"pt"}, {"pt"}, {});  // edge with empty element set
  std::map<Vertex, Correspondence> eta;
  for (Vertex v = 0; v < 4; ++v) eta[v] = identity_corr(F.at(v));
  CHECK(!natural_isomorphism_check(F, G, eta));
}

TEST_CASE("natural isomorphism: non-invertible candidate is rejected") {
  BurnsideFunctor F = point_functor(1);
  std::map<Vertex, Correspondence> eta;
  eta[0] = corr({"pt"}, {"pt"}, {});  // empty, not invertible
  eta[1] = identity_corr(F.at(1));
  CHECK(!natural_isomorphism_check(F, F, eta));
}

TEST_CASE("functor json round trip") {
  BurnsideFunctor F = point_functor(3);
  nlohmann::json j = burnside_to_json(F);
  BurnsideFunctor G = burnside_from_json(j);
  CHECK(F == G);
  CHECK(validate_functor(G).ok);
  // byte-stable dump
  CHECK(burnside_to_json(G).dump() == j.dump());
}
