#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "generators.hpp"
#include "khoburn/actions.hpp"
#include "khoburn/actions_json.hpp"

using namespace khoburn;

namespace {

bool mentions(const ValidationReport& r, const std::string& needle) {
  for (const auto& v : r.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

std::string first_violation(const ValidationReport& r) {
  return r.violations.empty() ? std::string("(none)") : r.violations.front();
}

int count_span_actions(const BurnsideFunctor& F, int m) {
  return static_cast<int>(gen::enumerate_span_actions(F, m).size());
}

}  // namespace

TEST_CASE("every generated instance passes the strict validator") {
  auto instances = gen::generated_instances();
  CHECK(instances.size() >= 50);
  for (const auto& inst : instances) {
    ValidationReport r = validate_musyt(inst.F, inst.M);
    INFO(inst.name, ": ", first_violation(r));
    CHECK(r.ok);
  }
}

TEST_CASE("span action counts match the hand counts") {
  BurnsideFunctor merge = gen::span_functor({"x0", "x1"}, {"y0"},
                                            {{"a0", "x0", "y0"}, {"a1", "x1", "y0"}});
  BurnsideFunctor parallel =
      gen::span_functor({"x0"}, {"y0"}, {{"a0", "x0", "y0"}, {"a1", "x0", "y0"}});
  BurnsideFunctor threecycle = gen::span_functor(
      {"x0", "x1", "x2"}, {"y0", "y1", "y2"},
      {{"a0", "x0", "y1"}, {"a1", "x1", "y2"}, {"a2", "x2", "y0"}});
  // merge: the source swap forces the element swap, the target is a point
  CHECK(count_span_actions(merge, 2) == 2);
  CHECK(count_span_actions(merge, 3) == 1);
  // parallel pair: endpoints are points, the element swap is free
  CHECK(count_span_actions(parallel, 2) == 2);
  CHECK(count_span_actions(parallel, 3) == 1);
  // invertible span: the source permutation determines everything else
  CHECK(count_span_actions(threecycle, 2) == 4);
  CHECK(count_span_actions(threecycle, 3) == 3);
}

TEST_CASE("a relabeling of incompatible order fails the cocycle rule") {
  BurnsideFunctor F = gen::constant_functor(2, {"p", "q", "r"});
  CyclicAction swap2{2, 0, {1, 0}};
  MusytAction M = gen::constant_action(F, swap2, {1, 2, 0});
  ValidationReport r = validate_musyt(F, M);
  CHECK_FALSE(r.ok);
  CHECK(mentions(r, "vertex cocycle"));
}

TEST_CASE("the strict validator locates each broken axiom") {
  SUBCASE("identity layer") {
    BurnsideFunctor F = gen::constant_functor(1, {"p", "q"});
    MusytAction M = gen::constant_action(F, CyclicAction{2, 0, {0}}, {1, 0});
    M.vertex_bijections[{0, 1}] = {1, 0};
    ValidationReport r = validate_musyt(F, M);
    CHECK_FALSE(r.ok);
    CHECK(mentions(r, "identity layer"));
  }
  SUBCASE("endpoint intertwining") {
    BurnsideFunctor F = gen::span_functor({"x0", "x1"}, {"y0"},
                                          {{"a0", "x0", "y0"}, {"a1", "x1", "y0"}});
    CyclicAction triv{2, 0, {0}};
    MusytAction M;
    M.group = triv;
    for (int g = 0; g < 2; ++g) {
      M.vertex_bijections[{g, 1}] = g ? std::vector<int>{1, 0} : std::vector<int>{0, 1};
      M.vertex_bijections[{g, 0}] = {0};
      M.edge_bijections[{g, 1, 0}] = {0, 1};
    }
    ValidationReport r = validate_musyt(F, M);
    CHECK_FALSE(r.ok);
    CHECK(mentions(r, "endpoint intertwining"));
  }
  SUBCASE("square compatibility, located at the face") {
    gen::SpanData tiny{{"x"}, {"y"}, {{"a0", "x", "y"}, {"a1", "x", "y"}}};
    BurnsideFunctor F = gen::product_functor(tiny, 2);
    CyclicAction triv{2, 0, {0, 1}};
    MusytAction M = gen::product_rotation_action(F, tiny, triv, gen::span_identity_aut(tiny));
    // swap the two parallel elements of one edge only: endpoints and cocycle
    // survive, the 2-face routes no longer match
    M.edge_bijections[{1, 3, 1}] = {1, 0};
    ValidationReport r = validate_musyt(F, M);
    CHECK_FALSE(r.ok);
    CHECK(mentions(r, "square compatibility"));
    CHECK(mentions(r, "u=11"));
    CHECK_FALSE(mentions(r, "endpoint intertwining"));
    CHECK_FALSE(mentions(r, "cocycle"));

    // the lax validator rejects the image of the broken action the same way
    SZAction psi = musyt_to_sz(F, M);
    ValidationReport rs = validate_sz(F, psi);
    CHECK_FALSE(rs.ok);
    CHECK(mentions(rs, "hexagon coherence"));
  }
}

TEST_CASE("strict to lax and back is the identity on every generated instance") {
  for (const auto& inst : gen::generated_instances()) {
    SZAction psi = musyt_to_sz(inst.F, inst.M);
    ValidationReport r = validate_sz(inst.F, psi);
    INFO(inst.name, ": ", first_violation(r));
    CHECK(r.ok);
    CHECK(sz_to_musyt(inst.F, psi) == inst.M);
  }
}

TEST_CASE("tampered lax data is rejected") {
  SUBCASE("broken multiplicativity witness") {
    BurnsideFunctor F = gen::constant_functor(1, {"p", "q"});
    MusytAction M = gen::constant_action(F, CyclicAction{2, 0, {0}}, {1, 0});
    SZAction psi = musyt_to_sz(F, M);
    auto& w = psi.square_witnesses.at({1, 1, 1});
    std::reverse(w.begin(), w.end());
    ValidationReport r = validate_sz(F, psi);
    CHECK_FALSE(r.ok);
    CHECK(mentions(r, "multiplicativity witness"));
  }
  SUBCASE("edge 2-morphism breaking the stacking rule") {
    BurnsideFunctor F =
        gen::span_functor({"x0"}, {"y0"}, {{"a0", "x0", "y0"}, {"a1", "x0", "y0"}});
    CyclicAction triv{3, 0, {0}};
    MusytAction M = gen::enumerate_span_actions(F, 3).front();  // the identity action
    SZAction psi = musyt_to_sz(F, M);
    auto& t = psi.edge_two_morphisms.at({1, 1, 0});
    std::swap(t[0], t[1]);  // swap the parallel pair in one group layer only
    ValidationReport r = validate_sz(F, psi);
    CHECK_FALSE(r.ok);
    CHECK(mentions(r, "stacking coherence"));
  }
  SUBCASE("edge 2-morphism breaking the hexagon") {
    gen::SpanData tiny{{"x"}, {"y"}, {{"a0", "x", "y"}, {"a1", "x", "y"}}};
    BurnsideFunctor F = gen::product_functor(tiny, 2);
    CyclicAction triv{2, 0, {0, 1}};
    MusytAction M = gen::product_rotation_action(F, tiny, triv, gen::span_identity_aut(tiny));
    SZAction psi = musyt_to_sz(F, M);
    auto& t = psi.edge_two_morphisms.at({1, 3, 1});
    std::swap(t[0], t[1]);
    ValidationReport r = validate_sz(F, psi);
    CHECK_FALSE(r.ok);
    CHECK(mentions(r, "hexagon coherence"));
  }
}

TEST_CASE("lax round trips are witnessed on the join") {
  for (const auto& inst : gen::generated_instances()) {
    SZAction psi = musyt_to_sz(inst.F, inst.M);
    RoundTripWitness w = roundtrip_sz(inst.F, psi);
    INFO(inst.name, ": ", w.violations.empty() ? "(ok)" : w.violations.front());
    CHECK(w.ok);
    CHECK(w.join.n == inst.F.n + 1);
    // for an action already of strict form the two levels coincide
    Vertex top = Vertex{1} << inst.F.n;
    bool restricts = true;
    for (const auto& [key, c] : psi.one_isos)
      restricts = restricts &&
                  w.joined_action.one_iso(key.first, key.second | top) == c &&
                  w.joined_action.one_iso(key.first, key.second) == c;
    CHECK(restricts);
  }
}

TEST_CASE("twisted lax actions validate, collapse, and round trip") {
  unsigned seed = 7;
  for (const auto& inst : gen::generated_instances()) {
    SZAction psi = musyt_to_sz(inst.F, inst.M);
    SZAction tw = gen::twist_sz(inst.F, psi, seed++);
    ValidationReport r = validate_sz(inst.F, tw);
    INFO(inst.name, ": ", first_violation(r));
    CHECK(r.ok);
    CHECK(sz_to_musyt(inst.F, tw) == inst.M);
    RoundTripWitness w = roundtrip_sz(inst.F, tw);
    INFO(inst.name, " roundtrip: ", w.violations.empty() ? "(ok)" : w.violations.front());
    CHECK(w.ok);
    // level 1 carries the twisted action, level 0 its strict collapse
    Vertex top = Vertex{1} << inst.F.n;
    bool levels = true;
    for (const auto& [key, c] : tw.one_isos) {
      levels = levels && w.joined_action.one_iso(key.first, key.second | top) == c &&
               w.joined_action.one_iso(key.first, key.second) == psi.one_iso(key.first,
                                                                             key.second);
    }
    CHECK(levels);
  }
}

TEST_CASE("the trivial group acts trivially end to end") {
  BurnsideFunctor F = gen::span_functor({"x0", "x1"}, {"y0"},
                                        {{"a0", "x0", "y0"}, {"a1", "x1", "y0"}});
  auto actions = gen::enumerate_span_actions(F, 1);
  REQUIRE(actions.size() == 1);
  CHECK(validate_musyt(F, actions[0]).ok);
  RoundTripWitness w = roundtrip_sz(F, musyt_to_sz(F, actions[0]));
  CHECK(w.ok);
  FixedPointFunctor fp = fixed_point_functor(F, actions[0], 1);
  CHECK(fp.functor == F);
}

TEST_CASE("fixed functors are valid and restrict correctly") {
  for (const auto& inst : gen::generated_instances()) {
    int m = inst.M.group.m;
    for (int k = 1; k <= m; ++k) {
      if (m % k != 0) continue;
      FixedPointFunctor fp = fixed_point_functor(inst.F, inst.M, k);
      ValidationReport r = validate_functor(fp.functor);
      INFO(inst.name, " k=", k, ": ", first_violation(r));
      CHECK(r.ok);
      if (k == m) CHECK(fp.functor == inst.F);  // trivial subgroup
      // vertex sets are exactly the generator-fixed elements
      bool vertices_match = true;
      for (const auto& [y, labels] : fp.functor.vertex_sets) {
        Vertex u = fp.ambient_vertex(y);
        const auto& bij = inst.M.vertex(k, u);
        std::vector<std::string> expect;
        for (size_t x = 0; x < bij.size(); ++x)
          if (bij[x] == static_cast<int>(x)) expect.push_back(inst.F.at(u)[x]);
        vertices_match = vertices_match && labels == expect;
      }
      CHECK(vertices_match);
    }
  }
}

TEST_CASE("a free relabeling leaves an empty fixed functor") {
  BurnsideFunctor F = gen::constant_functor(2, {"p", "q", "r"});
  CyclicAction triv{3, 0, {0, 1}};
  MusytAction M = gen::constant_action(F, triv, {1, 2, 0});
  FixedPointFunctor fp = fixed_point_functor(F, M, 1);
  CHECK(validate_functor(fp.functor).ok);
  for (const auto& [y, labels] : fp.functor.vertex_sets) CHECK(labels.empty());
  TotalComplex tc = totalize(fp.functor);
  for (const auto& g : tc.gens) CHECK(g.empty());
}

TEST_CASE("the fixed functor of a squared span under the swap is the diagonal") {
  gen::SpanData tiny{{"x"}, {"y"}, {{"a0", "x", "y"}, {"a1", "x", "y"}}};
  BurnsideFunctor F = gen::product_functor(tiny, 2);
  CyclicAction swap2{2, 0, {1, 0}};

  SUBCASE("plain swap fixes the diagonal pairs") {
    MusytAction M = gen::product_rotation_action(F, tiny, swap2, gen::span_identity_aut(tiny));
    FixedPointFunctor fp = fixed_point_functor(F, M, 1);
    CHECK(fp.functor.n == 1);
    CHECK(fp.functor.at(1).size() == 1);
    CHECK(fp.functor.at(0).size() == 1);
    const Correspondence& E = fp.functor.edge(1, 0);
    REQUIRE(E.elements.size() == 2);
    // both elements are parallel, mirroring the span itself
    CHECK(E.elements[0].s == E.elements[1].s);
    CHECK(E.elements[0].t == E.elements[1].t);
    CHECK(E.elements[0].label == "y|a0.a0|x");
    CHECK(E.elements[1].label == "y|a1.a1|x");
  }
  SUBCASE("twisting by the element swap fixes the antidiagonal") {
    gen::SpanAut tw = gen::span_identity_aut(tiny);
    std::swap(tw.ta[0], tw.ta[1]);
    MusytAction M = gen::product_rotation_action(F, tiny, swap2, tw);
    REQUIRE(validate_musyt(F, M).ok);
    FixedPointFunctor fp = fixed_point_functor(F, M, 1);
    const Correspondence& E = fp.functor.edge(1, 0);
    REQUIRE(E.elements.size() == 2);
    CHECK(E.elements[0].label == "y|a0.a1|x");
    CHECK(E.elements[1].label == "y|a1.a0|x");
  }
}

TEST_CASE("over the two-element group the fixed complex is the mod-2 shadow of the full one") {
  // for every fixed edge and every pair of fixed endpoints, the full
  // composite fiber and its fixed part have the same parity, so totalizing
  // the fixed functor over F_2 agrees with restricting the totalization
  for (const auto& inst : gen::generated_instances()) {
    if (inst.M.group.m != 2) continue;
    FixedPointFunctor fp = fixed_point_functor(inst.F, inst.M, 1);
    for (const auto& [key, E] : fp.functor.edge_corrs) {
      Vertex u = fp.ambient_vertex(key.first), v = fp.ambient_vertex(key.second);
      Correspondence full = composite_corr(inst.F, u, v);
      for (size_t xs = 0; xs < E.src.size(); ++xs)
        for (size_t yt = 0; yt < E.tgt.size(); ++yt) {
          int fixed = fiber_count(E, static_cast<int>(xs), static_cast<int>(yt));
          int fs = full.src_index(E.src[xs]);
          int ft = full.tgt_index(E.tgt[yt]);
          REQUIRE(fs >= 0);
          REQUIRE(ft >= 0);
          int whole = fiber_count(full, fs, ft);
          INFO(inst.name, " edge ", vertex_string(key.first, fp.functor.n), "->",
               vertex_string(key.second, fp.functor.n));
          CHECK((whole - fixed) % 2 == 0);
        }
    }
  }
}

TEST_CASE("subgroup indices that do not divide the order are rejected") {
  BurnsideFunctor F = gen::constant_functor(1, {"p"});
  MusytAction M = gen::constant_action(F, CyclicAction{2, 0, {0}}, {0});
  CHECK_THROWS_AS(fixed_point_functor(F, M, 3), std::invalid_argument);
  CHECK_THROWS_AS(fixed_point_functor(F, M, 0), std::invalid_argument);
}

TEST_CASE("actions survive their json form") {
  gen::SpanData mspan{{"x0", "x1"}, {"y0"}, {{"a0", "x0", "y0"}, {"a1", "x1", "y0"}}};
  BurnsideFunctor F = gen::product_functor(mspan, 2);
  CyclicAction swap2{2, 0, {1, 0}};
  MusytAction M = gen::product_rotation_action(F, mspan, swap2, gen::span_identity_aut(mspan));
  REQUIRE(validate_musyt(F, M).ok);
  CHECK(musyt_from_json(musyt_to_json(F, M), F) == M);

  SZAction psi = musyt_to_sz(F, M);
  CHECK(sz_from_json(sz_to_json(F, psi), F) == psi);

  SZAction tw = gen::twist_sz(F, psi, 11);
  CHECK(sz_from_json(sz_to_json(F, tw), F) == tw);

  CyclicAction rot{3, 2, {}};
  CHECK(cyclic_action_from_json(cyclic_action_to_json(rot)) == rot);
}
