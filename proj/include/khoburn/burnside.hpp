#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "khoburn/correspondence.hpp"
#include "khoburn/cube.hpp"
#include "khoburn/linalg.hpp"

// Functors from the cube category to the Burnside category: a finite set per
// vertex, a correspondence per cube edge, and a coherent bijection per square
// between the two ways around it. Square data generates all higher coherence;
// the hexagon condition on 3-faces is what validation checks. Longer
// composites are normalized along the maximal chain that drops coordinates in
// increasing index order.

namespace khoburn {

// 2-face of the cube: u covers v and v', both cover w; canonical key keeps
// v < v' and stores the bijection compose(F(v,w),F(u,v)) -> via v'.
struct SquareKey {
  Vertex u = 0, v = 0, vp = 0, w = 0;
  auto operator<=>(const SquareKey&) const = default;
};

struct BurnsideFunctor {
  int n = 0;
  std::map<Vertex, std::vector<std::string>> vertex_sets;
  std::map<std::pair<Vertex, Vertex>, Correspondence> edge_corrs;
  std::map<SquareKey, CorrMorphism> squares;

  const std::vector<std::string>& at(Vertex v) const;
  const Correspondence& edge(Vertex u, Vertex v) const;
  // Bijection between the two routes of the square (u > v, v' > w), in either
  // orientation; derived from the canonically stored one.
  CorrMorphism square_map(Vertex u, Vertex v, Vertex vp, Vertex w) const;

  bool operator==(const BurnsideFunctor&) const = default;
};

// All 2-faces (u, v, v', w) with v < v' below top vertex u.
std::vector<SquareKey> all_squares(int n);
// All 3-dimensional intervals [w, u] of the cube, as (u, w) pairs.
std::vector<std::pair<Vertex, Vertex>> all_three_faces(int n);

// Maximal chain from u down to w dropping coordinates in increasing order.
Chain canonical_chain(Vertex u, Vertex w);

// Path of edge correspondences along a maximal chain.
Path chain_path(const BurnsideFunctor& F, const Chain& chain);

// Composite correspondence along the canonical chain (the identity
// correspondence when u = w). This is the normal form of F(u, w).
Correspondence composite_corr(const BurnsideFunctor& F, Vertex u, Vertex w);

// Element map chain_path(from) -> chain_path(to) between maximal chains with
// the same endpoints, composed from square moves along a bubble-sort of the
// drop sequences. Well defined exactly when the hexagon condition holds.
std::vector<int> chain_change_map(const BurnsideFunctor& F, const Chain& from, const Chain& to);

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  void fail(std::string v) {
    ok = false;
    violations.push_back(std::move(v));
  }
};

ValidationReport validate_functor(const BurnsideFunctor& F);

// Chain complex graded by vertex norm; d[k] maps degree k to degree k-1.
struct TotalComplex {
  std::vector<std::vector<std::pair<Vertex, std::string>>> gens;  // per degree 0..n
  std::vector<IntMat> d;  // d[k]: |gens[k-1]| x |gens[k]|, d[0] empty

  bool d_squared_zero() const;
};

// (-1)^{s_{u,v}} with s_{u,v} = sum_{i<k} u_i, k the dropped coordinate.
int edge_sign(Vertex u, Vertex v);

// Linearization with the given edge sign rule (the default is edge_sign,
// which is the one making d^2 = 0 for every valid functor).
TotalComplex totalize(const BurnsideFunctor& F, int (*sign)(Vertex, Vertex) = edge_sign);

// Builds the join functor on 2^{n+1} (coordinate n being the extra interval
// direction, level 1 = F1, level 0 = F2, connecting edges eta_v) and validates
// it. Mixed square bijections are matched by edge-element label through the
// candidate, falling back to fiberwise order.
bool natural_isomorphism_check(const BurnsideFunctor& F1, const BurnsideFunctor& F2,
                               const std::map<Vertex, Correspondence>& eta);

// The join functor itself (exposed for the equivariant witnesses).
std::optional<BurnsideFunctor> join_functor(const BurnsideFunctor& F1, const BurnsideFunctor& F2,
                                            const std::map<Vertex, Correspondence>& eta);

}  // namespace khoburn
