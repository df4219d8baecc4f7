#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "khoburn/burnside.hpp"
#include "khoburn/cube.hpp"
#include "khoburn/linalg.hpp"

// Khovanov homology from planar diagram codes: PD parsing with orientation
// propagation, resolution tracing on the combinatorial map, the cube functor
// into correspondences (with the right-turn rule fixing the one ambiguous
// square type), and the bigraded complex with its homology and state sum.

namespace khoburn {

// Crossing slots: corners 0,1,2,3 counterclockwise from the incoming
// under-strand; the under-strand exits at corner 2. Global slot id = 4c + j.
struct LinkDiagram {
  int n = 0;  // crossings; cube coordinate i is crossing i
  std::vector<std::array<int, 4>> pd;
  std::vector<int> sign;       // +1 / -1 per crossing
  std::vector<bool> over_in1;  // over-strand enters at corner 1 (else corner 3)
  int n_plus = 0, n_minus = 0;
  int components = 0;
  int free_circles = 0;  // crossingless unknot components (empty pd only)

  int edge_partner(int slot) const;  // the other slot carrying the same edge
  int edge_label(int slot) const { return pd[static_cast<size_t>(slot) / 4][static_cast<size_t>(slot) % 4]; }

  std::vector<int> partner;  // filled by the parser; partner[slot] = edge_partner(slot)
};

// Parses {"pd": [[e0,e1,e2,e3], ...], "components": k?, "signs": [s...]?}.
// Signs are computed from orientations when not given: under-strand direction
// is fixed by the slot convention and over-strand directions are propagated
// through the head/tail constraints of shared edges. An over-strand loop that
// never runs under anything is oriented along increasing edge labels.
LinkDiagram parse_pd(const std::string& json_text);

struct ResolvedState {
  Vertex vertex = 0;
  // Each circle is the cyclic slot sequence of its corner visits, alternating
  // smoothing arc / diagram edge, starting at its smallest slot. Circles are
  // ordered by smallest edge label.
  std::vector<std::vector<int>> circles;
  std::vector<int> slot_circle;  // slot -> circle index
  int free_circles = 0;

  int circle_count() const { return static_cast<int>(circles.size()) + free_circles; }
};

// 0-smoothing joins corners 0-1 and 2-3; 1-smoothing joins 0-3 and 1-2.
// Crossing i is smoothed by bit i of v.
ResolvedState resolve(const LinkDiagram& D, Vertex v);

// F(v) = {1,x}-labelings of the circles of the v-resolution, written as
// strings over {'1','x'} indexed by circle order. Edges apply the Frobenius
// rules (merge: 1*1=1, 1*x=x*1=x, x*x empty; split: 1 -> 1x + x1, x -> xx).
// Square bijections are forced on every fiber of size <= 1; the split-merge
// fibers of size 2 are matched by the right-turn rule.
BurnsideFunctor khovanov_functor(const LinkDiagram& D);

// Homological grading of a vertex and quantum grading of a generator.
int homological_degree(const LinkDiagram& D, Vertex v);
int quantum_degree(const LinkDiagram& D, Vertex v, const std::string& gen);

struct BigradedComplex {
  // generators per (i, q), each a (vertex, label) pair
  std::map<std::pair<int, int>, std::vector<std::pair<Vertex, std::string>>> gens;
  // differential block (i, q) -> (i+1, q); rows index gens at (i+1, q)
  std::map<std::pair<int, int>, IntMat> diff;

  bool d_squared_zero() const;
  long long gen_count(int i, int q) const;
};

BigradedComplex ckh(const LinkDiagram& D);

enum class Coeffs { Z, F2, Q };

struct HomologyEntry {
  long long free_rank = 0;                // dimension for field coefficients
  std::vector<long long> torsion_orders;  // nontrivial, each dividing the next
};

using HomologyTable = std::map<std::pair<int, int>, HomologyEntry>;

HomologyTable homology(const BigradedComplex& C, Coeffs coeffs);

// Laurent polynomials in q as exponent -> coefficient maps.
using Laurent = std::map<int, long long>;

Laurent laurent_add(const Laurent& a, const Laurent& b);
Laurent laurent_mul(const Laurent& a, const Laurent& b);

// (-1)^{n_-} q^{n_+ - 2n_-} sum_v (-1)^{z(v)} q^{z(v)} (q + q^-1)^{c(v)}
// where z(v) counts the 0-coordinates of v. Computed from circle counts only.
Laurent state_sum(const LinkDiagram& D);

// sum over generators of (-1)^i q^q, from the complex; equals state_sum.
Laurent euler_from_generators(const BigradedComplex& C);

// sum (-1)^i q^j dim_Q H^{i,j}, from a homology table.
Laurent euler_from_homology(const HomologyTable& H);

}  // namespace khoburn
