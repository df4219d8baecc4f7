#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// The cube category 2^n. Objects are bit vectors; there is a (unique) morphism
// u -> v exactly when every 1 of v is a 1 of u, so the L1 norm strictly
// decreases along non-identity morphisms and the all-zeros vertex is terminal.
// Hom spaces between distinct comparable vertices are permutohedra; their face
// posets are realized combinatorially as posets of chains.

namespace khoburn {

// Vertex of 2^n as a bitmask; coordinate i is bit i. n <= 30 throughout.
using Vertex = std::uint32_t;

int norm(Vertex u);
bool vertex_geq(Vertex u, Vertex v);

// Bit i of u rendered at string position i, e.g. n=3, u=0b011 -> "110".
std::string vertex_string(Vertex u, int n);
Vertex vertex_from_string(const std::string& s);

// k = |u| - |v| when hom(u,v) is nonempty, absent otherwise.
std::optional<int> cube_hom(Vertex u, Vertex v);

// Strictly decreasing chain u = w^0 > w^1 > ... > w^k = v.
// A chain of length k between u >=_r v is a face of the permutohedron
// Pi_{r-1} of dimension r - k; length-1 chains are facets' top cell, maximal
// chains (k = r) are its vertices.
struct Chain {
  std::vector<Vertex> verts;

  int length() const { return static_cast<int>(verts.size()) - 1; }
  Vertex top() const { return verts.front(); }
  Vertex bottom() const { return verts.back(); }
  bool operator==(const Chain&) const = default;
  bool operator<(const Chain& o) const { return verts < o.verts; }
};

bool chain_valid(const Chain& c);

// All chains of exactly k steps from u to v (empty when out of range).
std::vector<Chain> enumerate_chains(Vertex u, Vertex v, int k);

// Face poset of the hom permutohedron between u >=_r v, r >= 1: every chain
// from u to v, ordered by "is a face of" (a chain is a face of each of its
// subchains). faces are sorted; leq(a,b) tests faces[a] <= faces[b].
struct FacePoset {
  Vertex u = 0, v = 0;
  int r = 0;
  std::vector<Chain> faces;

  int dim(int face_index) const { return r - faces[face_index].length(); }
  bool leq(int a, int b) const;
  // f[d] = number of faces of dimension d, d = 0..r-1.
  std::vector<long long> f_vector() const;
  long long euler_sum() const;  // sum (-1)^dim f_dim, equals 1 (a ball)
};

FacePoset face_poset(Vertex u, Vertex v);

// Z_m acting on 2^(n_block*m) by cyclically permuting the m blocks:
// the generator sends block b to block b+1 (indices mod m), so
// 1.(x_1,...,x_m) = (x_m, x_1, ..., x_{m-1}) in block notation.
// An explicit coordinate permutation of order m may be supplied instead;
// perm[i] is the image of coordinate i under the generator.
struct CyclicAction {
  int m = 1;
  int n_block = 0;
  std::vector<int> perm;  // empty = standard block rotation

  int dim() const;
  int coord_image(int g, int i) const;  // image of coordinate i under g
  bool valid() const;                   // perm (if given) has order dividing m, and order exactly m on blocks

  bool operator==(const CyclicAction&) const = default;
};

Vertex act_vertex(int g, Vertex u, const CyclicAction& a);
Chain act_chain(int g, const Chain& c, const CyclicAction& a);

// The unique subgroup H <= Z_m of index k (k | m) is generated by k.
// Fixed vertices of the standard block action are the block patterns of
// period k; they form a cube 2^(n_block*k).
struct FixedSubcube {
  CyclicAction ambient;
  int index = 1;  // k; fixed cube dimension = n_block * k

  int fixed_dim() const { return ambient.n_block * index; }
  bool is_fixed(Vertex u) const;
  Vertex include(Vertex y) const;   // 2^(n_block*k) -> fixed vertex of 2^(n_block*m)
  Vertex restrict_to(Vertex u) const;  // inverse on fixed vertices
  std::vector<Vertex> fixed_vertices() const;
};

FixedSubcube fixed_subcube(const CyclicAction& a, int index_k);

// Sub-poset of H-fixed chains between H-fixed u >= v, together with the
// face poset of the corresponding interval in the fixed subcube and the
// canonical chain-by-chain map between them. The map is a poset isomorphism
// (checked by is_isomorphism), so the fixed poset is a lower permutohedron.
struct FixedFacePoset {
  FacePoset fixed_chains;       // chains in the ambient cube, all vertices H-fixed
  FacePoset subcube_poset;      // face_poset(restrict(u), restrict(v)) in 2^(n_block*k)
  std::vector<int> to_subcube;  // face index map fixed_chains -> subcube_poset

  bool is_isomorphism() const;
};

FixedFacePoset fixed_face_poset(Vertex u, Vertex v, const FixedSubcube& H);

}  // namespace khoburn
