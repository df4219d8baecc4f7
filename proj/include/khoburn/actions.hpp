#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "khoburn/burnside.hpp"

// Cyclic group actions on Burnside functors in two presentations: strict
// actions by families of bijections relabeling every vertex set and every
// edge element set, and lax actions by invertible correspondences with
// explicit coherence 2-morphisms. Either determines the other; the
// conversions here are inverse on the nose in one direction and up to a
// machine-checked natural isomorphism on the join in the other. The fixed
// functor of a subgroup lives on the orbit cube, with edges given by the
// fixed elements of maximal-chain composites.

namespace khoburn {

// Strict action. For each g and vertex v, vertex_bijections[(g,v)] is an
// index map F(v) -> F(gv); for each cube edge u >=_1 v, edge_bijections
// [(g,u,v)] maps the element set of F(u,v) to that of F(gu,gv). Data must be
// present for every g in [0, m), including g = 0.
struct MusytAction {
  CyclicAction group;
  std::map<std::pair<int, Vertex>, std::vector<int>> vertex_bijections;
  std::map<std::tuple<int, Vertex, Vertex>, std::vector<int>> edge_bijections;

  const std::vector<int>& vertex(int g, Vertex v) const;
  const std::vector<int>& edge(int g, Vertex u, Vertex v) const;

  bool operator==(const MusytAction&) const = default;
};

// Lax action. one_isos[(g,v)] is an invertible correspondence F(v) -> F(gv);
// square_witnesses[(g,h,v)] is the (unique) morphism
//   psi_{g+h,v} -> psi_{g,hv} o psi_{h,v},
// stored as an index map into the flattened composite; edge_two_morphisms
// [(g,u,v)] is the morphism psi_{g,v} o F(u,v) -> F(gu,gv) o psi_{g,u}.
// Normalization: the g = 0 layer consists of identity correspondences and
// the canonical reindexing maps.
struct SZAction {
  CyclicAction group;
  std::map<std::pair<int, Vertex>, Correspondence> one_isos;
  std::map<std::tuple<int, int, Vertex>, CorrMorphism> square_witnesses;
  std::map<std::tuple<int, Vertex, Vertex>, CorrMorphism> edge_two_morphisms;

  const Correspondence& one_iso(int g, Vertex v) const;
  const CorrMorphism& square_witness(int g, int h, Vertex v) const;
  const CorrMorphism& edge_two_morphism(int g, Vertex u, Vertex v) const;

  bool operator==(const SZAction&) const = default;
};

// Formal virtual representation label; bookkeeping metadata for stable
// shifts, additive under suspension. Not consulted by any algebra here.
struct RepLabel {
  std::map<std::string, int> multiplicities;
  int virtual_dim = 0;

  RepLabel operator+(const RepLabel& o) const;
  bool operator==(const RepLabel&) const = default;
};

// Checks, for every g, h and every edge and 2-face: identity at g = 0, the
// cocycle rules for vertex and edge bijections, source/target intertwining,
// and compatibility with the square maps.
ValidationReport validate_musyt(const BurnsideFunctor& F, const MusytAction& phi);

// Checks invertibility and endpoints of the one-isos, the g = 0
// normalization, that every stored multiplicativity witness agrees with the
// recomputed (unique) one, and the elementwise coherence of the edge
// 2-morphisms: the stacking rule for composite group elements and the
// hexagon over every 2-face.
ValidationReport validate_sz(const BurnsideFunctor& F, const SZAction& psi);

// Strict -> lax. psi_{g,v} has the elements of F(v) with source the identity
// and target the vertex bijection; witnesses and edge 2-morphisms are the
// canonical ones induced by the bijections.
SZAction musyt_to_sz(const BurnsideFunctor& F, const MusytAction& phi);

// Lax -> strict. phi_{g,v} = t o s^{-1} on one_isos; edge bijections are the
// edge 2-morphisms conjugated by the canonical pairings of both composites.
MusytAction sz_to_musyt(const BurnsideFunctor& F, const SZAction& psi);

// Witness that psi and its strict-lax round trip are naturally isomorphic
// equivariantly: both actions are carried by the join functor on 2^(n+1)
// (identity connecting edges), and the combined lax action on the join is
// validated with the cube action extended by fixing the interval coordinate.
struct RoundTripWitness {
  bool ok = true;
  std::vector<std::string> violations;
  BurnsideFunctor join;     // on 2^(n+1); restricts to F on both levels
  SZAction joined_action;   // restricts to psi (level 1) and the round trip (level 0)
};

RoundTripWitness roundtrip_sz(const BurnsideFunctor& F, const SZAction& psi);

// Fixed functor of the index-k subgroup H = <k>. Coordinates of the fixed
// cube are the H-orbits of ambient coordinates, ordered by smallest member;
// vertex sets are the fixed elements of F over fixed ambient vertices; an
// edge dropping one orbit carries the fixed elements of the composite along
// the canonical ambient chain, fixity measured after transporting the
// generator's relabeling back to that chain; squares restrict the ambient
// chain transports. Throws when the input action is inconsistent (the
// transports then fail to preserve fixity).
struct FixedPointFunctor {
  BurnsideFunctor functor;          // over 2^(#orbits)
  std::vector<Vertex> orbit_masks;  // per fixed coordinate, mask of ambient coordinates

  Vertex ambient_vertex(Vertex y) const;
};

FixedPointFunctor fixed_point_functor(const BurnsideFunctor& F, const MusytAction& phi,
                                      int index_k);

}  // namespace khoburn
