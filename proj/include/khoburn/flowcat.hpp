#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "khoburn/actions.hpp"
#include "khoburn/burnside.hpp"

// Combinatorial cubical flow categories. Objects are fibered over the cube,
// and the moduli space between objects x over u and y over v is (component
// set) x (face poset of the interval from u to v). Every moduli space in
// scope is a trivial cover of a permutohedron, so storing the component sets
// together with the composition maps between them is lossless; the
// permutohedral factors stay implicit and are recovered from the cube.

namespace khoburn {

struct CubicalFlowCategory {
  int n = 0;
  CyclicAction group;
  RepLabel shift;  // suspension parameter, carried through unchanged

  // fiber of the covering over each vertex; the labels name the objects
  std::map<Vertex, std::vector<std::string>> objects;
  // per-object equivariant grading; only its dimension (= vertex norm) is
  // validated, the named content is bookkeeping
  std::map<Vertex, std::vector<RepLabel>> gradings;
  // component sets of the moduli spaces, one correspondence
  // objects[u] <- components -> objects[v] per comparable pair u > v
  std::map<std::pair<Vertex, Vertex>, Correspondence> components;
  // composition[(u,v,w)]: compose(components[v,w], components[u,v]) ->
  // components[u,w]; one bijection per intermediate vertex = per facet family
  // of the interval from u to w
  std::map<std::tuple<Vertex, Vertex, Vertex>, CorrMorphism> composition;
  // group functors restricted to objects and to components
  std::map<std::pair<int, Vertex>, std::vector<int>> object_maps;
  std::map<std::tuple<int, Vertex, Vertex>, CorrMorphism> component_maps;

  const std::vector<std::string>& objects_at(Vertex v) const;
  const Correspondence& component(Vertex u, Vertex v) const;
  const CorrMorphism& compose_map(Vertex u, Vertex v, Vertex w) const;
  const std::vector<int>& object_map(int g, Vertex v) const;
  const CorrMorphism& component_map(int g, Vertex u, Vertex v) const;

  bool operator==(const CubicalFlowCategory&) const = default;
};

// Flow category of a functor with a strict action: objects are the disjoint
// union of the vertex sets, components over (u, v) are the canonical-chain
// composite correspondences, composition is transport between concatenated
// canonical chains, and the group functors are the induced maps on
// composites. Gradings record the coordinate orbit sizes under each object's
// stabilizer. Throws std::invalid_argument when the action does not validate.
CubicalFlowCategory burnside_to_flowcat(const BurnsideFunctor& F, const MusytAction& phi,
                                        const RepLabel& V);

struct BurnsideData {
  BurnsideFunctor functor;
  MusytAction action;
  RepLabel shift;
};

// Inverse dictionary: vertex sets are the object fibers, edge correspondences
// the length-one components, squares are derived from the two facet
// compositions of each 2-face, and the action restricts the group functors.
// Throws std::invalid_argument when the category does not validate.
BurnsideData flowcat_to_burnside(const CubicalFlowCategory& C);

ValidationReport validate_flowcat(const CubicalFlowCategory& C);

// Equivariant natural isomorphism witness: object bijections over each
// vertex together with component bijections over each comparable pair,
// commuting with the fibration, the group functors, and composition.
struct FlowcatIso {
  bool ok = false;
  std::vector<std::string> violations;
  std::map<Vertex, std::vector<int>> object_bijections;  // C objects -> D objects
  std::map<std::pair<Vertex, Vertex>, CorrMorphism> component_bijections;
};

// Searches for a witness. Composites are first collapsed to their edge data
// through the facet compositions, the search runs over edge-level bijections,
// and a found witness is re-expanded to every comparable pair.
FlowcatIso flowcat_natural_iso(const CubicalFlowCategory& C, const CubicalFlowCategory& D);

}  // namespace khoburn
