#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "khoburn/khovanov.hpp"

using namespace khoburn;

namespace {

std::string slurp(const std::string& rel) {
  std::ifstream in(std::string(KHOBURN_DATA_DIR) + "/" + rel);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LinkDiagram corpus(const std::string& name) { return parse_pd(slurp("corpus/" + name + ".json")); }

const std::vector<std::string> kCorpus = {"unknot0", "unknot1p", "unknot1n", "unknot2",
                                          "unknot2b", "hopf",     "trefoil",  "fig8",
                                          "t24"};

// "(-2,-6) Z" style rendering so failures show whole tables
std::string table_str(const HomologyTable& H) {
  std::ostringstream ss;
  for (const auto& [iq, e] : H) {
    ss << "(" << iq.first << "," << iq.second << ")";
    if (e.free_rank == 1) ss << " Z";
    if (e.free_rank > 1) ss << " Z^" << e.free_rank;
    for (long long d : e.torsion_orders) ss << (e.free_rank ? "+" : " ") << "Z/" << d;
    ss << "\n";
  }
  return ss.str();
}

std::string laurent_str(const Laurent& p) {
  std::ostringstream ss;
  for (const auto& [e, c] : p) ss << (c >= 0 ? "+" : "") << c << "q^" << e << " ";
  return ss.str();
}

}  // namespace

TEST_CASE("pd parsing rejects malformed input") {
  CHECK_THROWS_WITH_AS(parse_pd("[]"), "pd input: expected an object with a \"pd\" array",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_pd(R"({"pd": [[1, 1, 2]]})"), "crossing 0: expected a 4-tuple",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_pd(R"({"pd": [[1, 1, 1, 2]]})"),
                       "edge label 1 appears 3 times (expected 2)", std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_pd(R"({"pd": [[1, 1, 2, 2]], "signs": [1, -1]})"),
                       "\"signs\" must list one sign per crossing", std::invalid_argument);
  CHECK_THROWS_AS(parse_pd(R"({"pd": [[1, 3, 2, 4], [3, 1, 4, 2]], "signs": [1, 1]})"),
                  std::invalid_argument);  // claims positive crossings on the negative Hopf
}

TEST_CASE("orientation propagation recovers the crossing signs") {
  CHECK(corpus("unknot1p").sign == std::vector<int>{1});
  CHECK(corpus("unknot1n").sign == std::vector<int>{-1});
  CHECK(corpus("hopf").sign == std::vector<int>{-1, -1});
  CHECK(corpus("trefoil").sign == std::vector<int>{1, 1, 1});
  CHECK(corpus("fig8").sign == std::vector<int>{-1, -1, 1, 1});
  CHECK(corpus("t24").sign == std::vector<int>{1, 1, 1, 1});

  LinkDiagram two_kinks = corpus("unknot2");  // both kinks positive: the
  CHECK(two_kinks.n_plus == 2);               // half-turn must preserve signs
  CHECK(two_kinks.n_minus == 0);
  LinkDiagram finger = corpus("unknot2b");
  CHECK(finger.n_plus == 1);
  CHECK(finger.n_minus == 1);

  // explicit signs matching the propagated ones are accepted
  LinkDiagram forced = parse_pd(R"({"pd": [[1, 3, 2, 4], [3, 1, 4, 2]], "signs": [-1, -1]})");
  CHECK(forced.n_minus == 2);

  for (const std::string& name : kCorpus) {
    LinkDiagram D = corpus(name);
    CHECK(D.n_plus + D.n_minus == D.n);
    for (int c = 0; c < D.n; ++c) CHECK(D.sign[static_cast<size_t>(c)] == (D.over_in1[static_cast<size_t>(c)] ? 1 : -1));
  }
}

TEST_CASE("component counting") {
  CHECK(corpus("unknot0").components == 1);
  CHECK(corpus("hopf").components == 2);
  CHECK(corpus("trefoil").components == 1);
  CHECK(corpus("t24").components == 2);
  CHECK_THROWS_AS(parse_pd(R"({"pd": [[1, 3, 2, 4], [3, 1, 4, 2]], "components": 1})"),
                  std::invalid_argument);
}

TEST_CASE("resolutions trace the expected circles") {
  LinkDiagram hopf = corpus("hopf");
  CHECK(resolve(hopf, 0b00).circle_count() == 2);
  CHECK(resolve(hopf, 0b01).circle_count() == 1);
  CHECK(resolve(hopf, 0b10).circle_count() == 1);
  CHECK(resolve(hopf, 0b11).circle_count() == 2);

  LinkDiagram pos_kink = corpus("unknot1p");
  CHECK(resolve(pos_kink, 0).circle_count() == 1);
  CHECK(resolve(pos_kink, 1).circle_count() == 2);
  LinkDiagram neg_kink = corpus("unknot1n");
  CHECK(resolve(neg_kink, 0).circle_count() == 2);
  CHECK(resolve(neg_kink, 1).circle_count() == 1);

  CHECK_THROWS_AS(resolve(hopf, 0b100), std::invalid_argument);

  // every slot lies on exactly one circle; adjacent resolutions differ by one
  for (const std::string& name : kCorpus) {
    LinkDiagram D = corpus(name);
    for (Vertex v = 0; v < (Vertex{1} << D.n); ++v) {
      ResolvedState rs = resolve(D, v);
      std::set<int> seen;
      for (const auto& circle : rs.circles)
        for (int s : circle) CHECK(seen.insert(s).second);
      CHECK(static_cast<int>(seen.size()) == 4 * D.n);
      for (int k = 0; k < D.n; ++k) {
        if (!(v >> k & 1)) continue;
        ResolvedState rw = resolve(D, v ^ (Vertex{1} << k));
        int delta = rs.circle_count() - rw.circle_count();
        CHECK((delta == 1 || delta == -1));
      }
    }
  }
}

TEST_CASE("single-crossing edges follow the Frobenius rules") {
  LinkDiagram neg_kink = corpus("unknot1n");  // 1-resolution has one circle: a split
  Correspondence split = khovanov_functor(neg_kink).edge(1, 0);
  REQUIRE(split.elements.size() == 3);
  CHECK(split.elements[0].label == "1>1x");
  CHECK(split.elements[1].label == "1>x1");
  CHECK(split.elements[2].label == "x>xx");

  LinkDiagram pos_kink = corpus("unknot1p");  // 1-resolution has two circles: a merge
  Correspondence merge = khovanov_functor(pos_kink).edge(1, 0);
  REQUIRE(merge.elements.size() == 3);
  CHECK(merge.elements[0].label == "11>1");
  CHECK(merge.elements[1].label == "1x>x");
  CHECK(merge.elements[2].label == "x1>x");
}

TEST_CASE("the cube functor validates on the whole corpus") {
  for (const std::string& name : kCorpus) {
    INFO(name);
    BurnsideFunctor F = khovanov_functor(corpus(name));
    ValidationReport rep = validate_functor(F);
    for (const std::string& v : rep.violations) MESSAGE(v);
    CHECK(rep.ok);
  }
}

TEST_CASE("both distinguished arcs give the same split-merge matching") {
  // Two-element fibers need a square whose circle counts run c -> c+1 -> c
  // along both routes.  None of the corpus cubes contains one; the smallest
  // diagram that does is a circle laid entirely over another (counts
  // 1 -> 2, 2 -> 1 across its only square).
  std::vector<std::pair<std::string, LinkDiagram>> diagrams;
  for (const std::string& name : kCorpus) diagrams.emplace_back(name, corpus(name));
  diagrams.emplace_back("overlay", parse_pd(R"({"pd": [[1, 4, 2, 3], [2, 4, 1, 3]]})"));
  diagrams.emplace_back("overlay_kink",
                        parse_pd(R"({"pd": [[6, 4, 2, 3], [2, 4, 1, 3], [1, 5, 5, 6]]})"));

  auto middle = [](const std::string& label) { return label.substr(0, label.find('>')); };
  std::map<std::string, int> two_fibers;
  for (const auto& [name, D] : diagrams) {
    INFO(name);
    BurnsideFunctor F = khovanov_functor(D);
    for (const SquareKey& key : all_squares(D.n)) {
      Correspondence dom = compose(F.edge(key.v, key.w), F.edge(key.u, key.v));
      Correspondence cod = compose(F.edge(key.vp, key.w), F.edge(key.u, key.vp));
      CorrMorphism m = F.square_map(key.u, key.v, key.vp, key.w);
      std::map<std::pair<int, int>, std::vector<int>> dfib;
      for (int i = 0; i < static_cast<int>(dom.elements.size()); ++i)
        dfib[{dom.elements[static_cast<size_t>(i)].s, dom.elements[static_cast<size_t>(i)].t}]
            .push_back(i);
      for (const auto& [st, dlist] : dfib) {
        if (dlist.size() != 2) continue;
        ++two_fibers[name];
        int k = std::countr_zero(key.u ^ key.w);
        for (int corner : {1, 3}) {
          int slot = 4 * k + corner;
          int cv = resolve(D, key.v).slot_circle[static_cast<size_t>(slot)];
          int cvp = resolve(D, key.vp).slot_circle[static_cast<size_t>(slot)];
          for (int i : dlist) {
            bool dom_one =
                middle(dom.elements[static_cast<size_t>(i)].label)[static_cast<size_t>(cv)] == '1';
            bool cod_one = middle(cod.elements[static_cast<size_t>(m[static_cast<size_t>(i)])]
                                      .label)[static_cast<size_t>(cvp)] == '1';
            CHECK(dom_one == cod_one);
          }
        }
      }
    }
  }
  // one fiber (source label 1) in the bare square; the kink doubles the cube
  // and its extra circle contributes a second source label on one side
  CHECK(two_fibers["overlay"] == 1);
  CHECK(two_fibers["overlay_kink"] == 3);
  for (const std::string& name : kCorpus) CHECK(two_fibers[name] == 0);
}

TEST_CASE("a kink on the overlaid unlink keeps its homology") {
  LinkDiagram D = parse_pd(R"({"pd": [[6, 4, 2, 3], [2, 4, 1, 3], [1, 5, 5, 6]]})");
  CHECK(D.components == 2);
  CHECK(table_str(homology(ckh(D), Coeffs::Z)) == "(0,-2) Z\n(0,0) Z^2\n(0,2) Z\n");
}

TEST_CASE("bigraded complex: gradings and d squared") {
  BigradedComplex zero = ckh(corpus("unknot0"));
  CHECK(zero.gens.size() == 2);
  CHECK(zero.gen_count(0, 1) == 1);
  CHECK(zero.gen_count(0, -1) == 1);
  CHECK(zero.diff.empty());

  for (const std::string& name : kCorpus) {
    INFO(name);
    BigradedComplex C = ckh(corpus(name));  // throws if d is not q-homogeneous
    CHECK(C.d_squared_zero());
  }
}

TEST_CASE("integral homology of unknot diagrams") {
  const std::string expected = "(0,-1) Z\n(0,1) Z\n";
  for (const std::string& name : {"unknot0", "unknot1p", "unknot1n", "unknot2", "unknot2b"}) {
    INFO(name);
    CHECK(table_str(homology(ckh(corpus(name)), Coeffs::Z)) == expected);
  }
}

TEST_CASE("integral homology of the negative Hopf link") {
  CHECK(table_str(homology(ckh(corpus("hopf")), Coeffs::Z)) ==
        "(-2,-6) Z\n(-2,-4) Z\n(0,-2) Z\n(0,0) Z\n");
}

TEST_CASE("integral homology of the right-handed trefoil") {
  CHECK(table_str(homology(ckh(corpus("trefoil")), Coeffs::Z)) ==
        "(0,1) Z\n(0,3) Z\n(2,5) Z\n(3,7) Z/2\n(3,9) Z\n");
}

TEST_CASE("integral homology of the figure-eight knot") {
  HomologyTable H = homology(ckh(corpus("fig8")), Coeffs::Z);
  CHECK(table_str(H) ==
        "(-2,-5) Z\n(-1,-3) Z/2\n(-1,-1) Z\n(0,-1) Z\n(0,1) Z\n(1,1) Z\n(2,3) Z/2\n(2,5) Z\n");

  // amphichiral: rational homology is symmetric under (i, q) -> (-i, -q)
  HomologyTable Q = homology(ckh(corpus("fig8")), Coeffs::Q);
  for (const auto& [iq, e] : Q) {
    auto it = Q.find({-iq.first, -iq.second});
    REQUIRE(it != Q.end());
    CHECK(it->second.free_rank == e.free_rank);
  }
}

TEST_CASE("integral homology of the (2,4) torus link") {
  CHECK(table_str(homology(ckh(corpus("t24")), Coeffs::Z)) ==
        "(0,2) Z\n(0,4) Z\n(2,6) Z\n(3,8) Z/2\n(3,10) Z\n(4,10) Z\n(4,12) Z\n");
}

TEST_CASE("a kink leaves homology unchanged") {
  // trefoil with a positive kink inserted on edge 2
  LinkDiagram D = parse_pd(
      R"({"pd": [[1, 4, 2, 5], [3, 6, 4, 1], [5, 8, 6, 3], [2, 7, 7, 8]]})");
  CHECK(D.n_plus == 4);
  for (Coeffs c : {Coeffs::Z, Coeffs::F2, Coeffs::Q})
    CHECK(table_str(homology(ckh(D), c)) == table_str(homology(ckh(corpus("trefoil")), c)));
}

TEST_CASE("a free over-loop is oriented by the label heuristic") {
  // two round circles, the second lying entirely over the first
  LinkDiagram D = parse_pd(R"({"pd": [[1, 4, 2, 3], [2, 4, 1, 3]]})");
  CHECK(D.components == 2);
  CHECK(D.n_plus == 1);
  CHECK(D.n_minus == 1);
  CHECK(table_str(homology(ckh(D), Coeffs::Z)) == "(0,-2) Z\n(0,0) Z^2\n(0,2) Z\n");
}

TEST_CASE("mod-2 homology sees torsion in two adjacent degrees") {
  HomologyTable F2 = homology(ckh(corpus("trefoil")), Coeffs::F2);
  CHECK(table_str(F2) == "(0,1) Z\n(0,3) Z\n(2,5) Z\n(2,7) Z\n(3,7) Z\n(3,9) Z\n");

  // rational homology drops the torsion line entirely
  HomologyTable Q = homology(ckh(corpus("trefoil")), Coeffs::Q);
  CHECK(table_str(Q) == "(0,1) Z\n(0,3) Z\n(2,5) Z\n(3,9) Z\n");
}

TEST_CASE("homology of a hand-built complex with torsion") {
  BigradedComplex C;
  C.gens[{0, 0}] = {{0, "a"}};
  C.gens[{1, 0}] = {{0, "b"}};
  IntMat d(1, 1);
  d.at(0, 0) = 2;
  C.diff[{0, 0}] = d;
  CHECK(table_str(homology(C, Coeffs::Z)) == "(1,0) Z/2\n");
  CHECK(homology(C, Coeffs::Q).empty());
  CHECK(table_str(homology(C, Coeffs::F2)) == "(0,0) Z\n(1,0) Z\n");
}

TEST_CASE("state sum equals the graded Euler characteristic") {
  CHECK(laurent_str(state_sum(corpus("unknot0"))) == "+1q^-1 +1q^1 ");
  LinkDiagram unlink2 = parse_pd(R"({"pd": [], "components": 2})");
  CHECK(laurent_str(state_sum(unlink2)) == "+1q^-2 +2q^0 +1q^2 ");

  for (const std::string& name : kCorpus) {
    INFO(name);
    LinkDiagram D = corpus(name);
    BigradedComplex C = ckh(D);
    Laurent expected = state_sum(D);
    CHECK(laurent_str(euler_from_generators(C)) == laurent_str(expected));
    CHECK(laurent_str(euler_from_homology(homology(C, Coeffs::Q))) == laurent_str(expected));
  }
}

TEST_CASE("generators sit in their declared gradings") {
  for (const std::string& name : kCorpus) {
    INFO(name);
    LinkDiagram D = corpus(name);
    BigradedComplex C = ckh(D);
    for (const auto& [iq, gens] : C.gens)
      for (const auto& [v, label] : gens) {
        CHECK(homological_degree(D, v) == iq.first);
        CHECK(quantum_degree(D, v, label) == iq.second);
      }
  }
}
