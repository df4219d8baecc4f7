#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "khoburn/actions.hpp"
#include "khoburn/khovanov.hpp"
#include "khoburn/linalg.hpp"

// Periodic diagrams: link diagrams carried to themselves by a cyclic
// relabeling of crossings and edges of order m, the strict action this
// induces on the Khovanov functor and on the chain complex over F2, and
// equivariant Khovanov homology as Ext over the group algebra F2[Z_m].

namespace khoburn {

struct PeriodicDiagram {
  LinkDiagram diagram;
  int m = 1;
  std::vector<int> sigma_crossings;  // image of crossing c under the generator
  std::map<int, int> sigma_edges;    // image of each edge label under the generator

  bool operator==(const PeriodicDiagram&) const = default;
};

// Parses {"pd": ..., "m": k, "sigma_crossings": [...], "sigma_edges": {...}}
// (the pd part as in parse_pd; sigma_edges keys are edge labels as strings).
// m defaults to 1 with identity sigma.
PeriodicDiagram parse_periodic(const std::string& json_text);

struct PeriodicReport {
  bool ok = true;
  std::vector<std::string> violations;
  // New index per crossing, conjugating sigma_crossings to the rotation that
  // sends block b to block b+1 of m blocks of size n/m. Filled when the
  // crossing orbits all have size m.
  std::vector<int> renumbering;

  void fail(std::string v) {
    ok = false;
    violations.push_back(std::move(v));
  }
};

// Checks that the sigma pair is a pair of permutations of joint order
// exactly m, that each crossing tuple maps to the image tuple slotwise, that
// anything fixed by a power has fixed local data, and that the crossing
// action is conjugate to the block rotation (all orbits of size m).
PeriodicReport validate_periodic(const PeriodicDiagram& P);

// The strict action induced on khovanov_functor(P.diagram): sigma^g carries
// the circles of the v-resolution to the circles of the (g.v)-resolution
// slotwise, labelings and edge elements follow by relabeling. Throws
// invalid_argument when validate_periodic fails.
MusytAction induced_action(const PeriodicDiagram& P);

// An F2 vector space with an action of Z_m: the generator matrix has order
// dividing m. The free module is the group algebra itself on the basis t^k.
struct GroupModule {
  int m = 1;
  int dim = 0;
  F2Mat generator;

  bool valid() const;
  bool operator==(const GroupModule&) const = default;
};

GroupModule trivial_module(int m);
GroupModule free_module(int m);

struct EquivariantComplex {
  BigradedComplex complex;
  int m = 1;
  // generator permutation of the generators at each occupied (i, q)
  std::map<std::pair<int, int>, std::vector<int>> action;

  // the bidegree summand as a permutation module
  GroupModule module_at(int i, int q) const;
};

// ckh(P.diagram) with the generator permutation per bidegree; over F2 the
// permutation commutes with the differential strictly.
EquivariantComplex equivariant_complex(const PeriodicDiagram& P);

// Polynomial in t over F2 modulo t^m - 1; index k holds the t^k coefficient.
using GroupPoly = std::vector<unsigned char>;

// Free resolution ... -> R^{b_1} -> R^{b_0} -> M -> 0 over R = F2[Z_m],
// computed by iterated kernel plus greedy free cover. maps[s] is the matrix
// of R^{b_{s+1}} -> R^{b_s} with entries in R; the augmentation sends t^k e_i
// to generator^k of the i-th chosen module generator, on the F2 basis t^k e_i
// ordered by i*m + k.
struct FreeResolution {
  int m = 1;
  std::vector<int> ranks;                                 // b_0 ... b_L
  std::vector<std::vector<std::vector<GroupPoly>>> maps;  // maps[s][row][col]
  F2Mat augmentation;                                     // dim(M) x (b_0 * m)
};

// L+1 ranks and L maps; throws invalid_argument on negative length or an
// invalid module. Exactness at every stage is rank-checked by the tests.
FreeResolution module_resolution(const GroupModule& M, int length);

// The F2 matrix of maps[s] on the basis t^k e_i.
F2Mat resolution_matrix(const FreeResolution& R, int s);

// dim EKh^{j,q} for 0 <= j <= jmax, keyed (j, q): Ext^j over F2[Z_m] from M
// into the homology of the equivariant complex, summed over the homological
// grading within each quantum grading. Zero entries are omitted.
std::map<std::pair<int, int>, long long> ekh(const PeriodicDiagram& P, const GroupModule& M,
                                             int jmax);

// Same, against a precomputed resolution of M; throws invalid_argument when
// jmax exceeds the available resolution length.
std::map<std::pair<int, int>, long long> ekh_with_resolution(const PeriodicDiagram& P,
                                                             const GroupModule& M,
                                                             const FreeResolution& R, int jmax);

}  // namespace khoburn
