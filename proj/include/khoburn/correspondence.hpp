#pragma once

#include <map>
#include <string>
#include <vector>

// Finite correspondences X <- A -> Y with labeled element sets, and the
// path machinery for rewriting composites. Composition is the fiber product;
// composite elements are kept in a flattened normal form (labels joined with
// '*', later factor first) so that both bracketings of a triple composite are
// literally equal and equality of composites is a syntactic check.

namespace khoburn {

struct Correspondence {
  std::vector<std::string> src, tgt;  // sorted, unique
  struct Element {
    std::string label;
    int s = 0, t = 0;  // indices into src / tgt
    bool operator==(const Element&) const = default;
  };
  std::vector<Element> elements;  // sorted by label, unique

  bool operator==(const Correspondence&) const = default;
  int src_index(const std::string& x) const;
  int tgt_index(const std::string& y) const;
  int element_index(const std::string& label) const;  // -1 if absent
};

// Labels may use any characters >= '+' (0x2b); '*' is reserved as the
// composite separator and sorts below every admissible character, which makes
// the flattened label order agree with tuple order of the factors.
bool label_ok(const std::string& s);

// Every '*'-separated fragment passes label_ok; accepts the output of compose.
bool composite_label_ok(const std::string& s);

// Validating constructor; sorts object and element lists.
Correspondence make_correspondence(std::vector<std::string> src, std::vector<std::string> tgt,
                                   std::vector<std::tuple<std::string, std::string, std::string>>
                                       label_src_tgt);

// Same, but element labels may be composite; for reloading composed data.
Correspondence make_composite_correspondence(
    std::vector<std::string> src, std::vector<std::string> tgt,
    std::vector<std::tuple<std::string, std::string, std::string>> label_src_tgt);

Correspondence identity_corr(const std::vector<std::string>& objects);
bool is_invertible(const Correspondence& c);
Correspondence corr_inverse(const Correspondence& c);  // swap src/tgt

// Fiber product compose(B, A) for A: X -> Y, B: Y -> Z; element (b,a) has
// label b.label + "*" + a.label, source s_A(a), target t_B(b).
Correspondence compose(const Correspondence& B, const Correspondence& A);

// #elements with s = x, t = y.
int fiber_count(const Correspondence& c, int x, int y);

// A bijection between the element sets of two parallel correspondences,
// commuting with source and target maps; stored as index map dom -> cod.
using CorrMorphism = std::vector<int>;

bool corr_morphism_valid(const Correspondence& dom, const Correspondence& cod,
                         const CorrMorphism& f);
CorrMorphism corr_morphism_identity(const Correspondence& c);
CorrMorphism corr_morphism_compose(const CorrMorphism& second, const CorrMorphism& first);
CorrMorphism corr_morphism_inverse(const CorrMorphism& f);

// Composite of a path of correspondences, first applied first. Element i of
// the composite is the chain elems[i], elems[i][p] an element index of
// factors[p]; ordering matches the flattened-label order of fold-composition.
struct Path {
  std::vector<Correspondence> factors;
  std::vector<std::vector<int>> elems;

  int size() const { return static_cast<int>(elems.size()); }
  int src_of(int e) const { return factors.front().elements[static_cast<size_t>(elems[static_cast<size_t>(e)][0])].s; }
  int tgt_of(int e) const {
    return factors.back().elements[static_cast<size_t>(elems[static_cast<size_t>(e)].back())].t;
  }
  std::string label_of(int e) const;
  int locate(const std::vector<int>& chain) const;  // -1 if absent
  Correspondence to_correspondence() const;
};

Path make_path(std::vector<Correspondence> factors);

// Map between paths differing in one factor, induced by a CorrMorphism there.
std::vector<int> path_map_component(const Path& A, const Path& B, int pos,
                                    const CorrMorphism& m);
// Map between paths differing in factors pos, pos+1, induced by a bijection
// between the two-factor composites (indices in compose(f[pos+1], f[pos])).
std::vector<int> path_map_pair(const Path& A, const Path& B, int pos,
                               const CorrMorphism& sq);

std::vector<int> index_map_compose(const std::vector<int>& second, const std::vector<int>& first);
std::vector<int> index_map_inverse(const std::vector<int>& f);
bool index_map_is_identity(const std::vector<int>& f);

}  // namespace khoburn
