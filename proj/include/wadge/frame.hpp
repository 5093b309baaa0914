#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "wadge/bitseq.hpp"
#include "wadge/coding.hpp"

// The concrete level frame over an alphabet d (finite or omega), the finite
// tree levels it generates, branch recipes with their difference profiles,
// and the dense-family selector construction.
//
// The frame recursion: s_0^i is empty and
//   s_{l+1}^i = s_q^i . i . b_d(n) . 0^N
// with q = (((l)_1)_1)_0, n = (((l)_1)_1)_1 and N = l - q - |b_d(n)|.
// N >= 0 always: q + n <= <q,n> <= (l)_1 <= l and |b_d(n)| <= n.

namespace wadge {

class Frame {
 public:
  // Alphabet bound; nullopt means omega, otherwise d >= 2.
  explicit Frame(std::optional<Nat> d);

  std::optional<Nat> dim() const { return d_; }

  // Word template for level l: letters plus slot flags. Positions flagged as
  // slots carry the coordinate index; all other positions are common to every
  // coordinate.
  struct Template {
    std::vector<Nat> letters;  // slot positions hold 0
    std::vector<char> slot;
  };
  Template tmpl(Nat l) const;

  // s_l^i. Requires i < d.
  Word word(Nat l, Nat i) const;

  // Decomposition of level l >= 1: s_l^i = s_base^i . i . b_d(word_rank) . 0^pad.
  struct StepData {
    Nat base;
    Nat word_rank;
    Nat pad;
  };
  StepData step_data(Nat l) const;

  // Returns l+1 where l = <p, <r, <q, b_d^{-1}(t)>>>, so that
  // s_{l+1}^i = s_q^i . i . t . 0^N with (l)_0 = p and ((l)_1)_0 = r.
  Nat step(Nat q, Nat p, Nat r, const Word& t) const;

 private:
  std::optional<Nat> d_;
  // Sparse memo of small levels; levels only depend on a short chain of
  // (much smaller) base levels, and large ones are cheaper to rebuild than
  // to keep around.
  mutable std::map<Nat, Template> memo_;
};

// One level tuple of the generated tree. Two shapes beyond the root:
//   Common:   coordinate i is s_base^i . tail          (length base + |tail|)
//   Inserted: coordinate i is s_base^i . i . tail      (length base + 1 + |tail|)
struct LevelTuple {
  enum class Form { Root, Common, Inserted };
  Form form = Form::Root;
  Nat base = 0;
  Word tail;

  Nat length() const;
  Word coord(const Frame& f, Nat i) const;
  // The length-(l-1) truncation; nullopt for the root.
  std::optional<LevelTuple> parent(const Frame& f) const;
};

// All level-l tuples whose coordinate-0 word w satisfies w(n) <= n,
// deduplicated by their (coordinate 0, coordinate 1) words. Finite d only.
std::vector<LevelTuple> tree_level(const Frame& f, Nat l);

// The digit tuples (s_i(l))_{i in d} over the level-(l+1) tuples. Finite d only.
std::vector<std::vector<Nat>> level_alphabet(const Frame& f, Nat l);

// A branch of the tree given by a schedule of frame steps: finitely many
// initial steps followed by a cycle repeated forever. The induced level chain
// is m_0 = 0, m_{k+1} = step(m_k, p_k, r_k, t_k), strictly increasing.
struct RecipeStep {
  Nat p = 0;
  Nat r = 0;
  Word t;
};

struct BranchRecipe {
  std::vector<RecipeStep> prefix;
  std::vector<RecipeStep> cycle;  // must be nonempty
};

const RecipeStep& recipe_step(const BranchRecipe& rcp, Nat k);

// m_k of the induced chain.
Nat recipe_chain(const Frame& f, const BranchRecipe& rcp, Nat k);

// First n letters of the branch's coordinate i. Chain levels roughly square
// at every step, so levels past the window are not materialized; once the
// next level provably exceeds n the remainder is zero padding.
Word recipe_prefix(const Frame& f, const BranchRecipe& rcp, Nat i, Nat n);

// All positions below `bound` where the shifted symmetric difference of
// coordinates 0 and 1 holds a 1; these are exactly m_{k+1} - 1 for k >= 0.
std::vector<Nat> recipe_delta_positions(const Frame& f, const BranchRecipe& rcp, Nat bound);

// The shifted symmetric difference as a row map: row p collects the steps
// scheduled with first residue p. Rows fed by the cycle are marked as holding
// infinitely many ones (nonemptiness only); rows fed only by the prefix list
// their columns explicitly.
BitSeq recipe_delta(const Frame& f, const BranchRecipe& rcp);

// A family of open sets, one list per (coordinate, depth): each open set is a
// finite union of cylinders given by their defining words, with the empty word
// denoting the whole space. Lookups beyond the stored lists yield the whole
// space.
struct DenseFamily {
  // opens[i][q] = cylinder words of the q-th open set for coordinate i.
  std::vector<std::vector<std::vector<Word>>> opens;
  Nat search_bound = 64;

  std::vector<Word> open_at(Nat i, Nat q) const;
};

// Raised when no cylinder of the requested open set is compatible with the
// prefix forced at node t, coordinate i.
struct SelectorNotFound : std::runtime_error {
  std::vector<char> node;
  Nat coordinate;
  SelectorNotFound(std::string msg, std::vector<char> t, Nat i)
      : std::runtime_error(std::move(msg)), node(std::move(t)), coordinate(i) {}
};

// The level assignment t -> l(t) over the binary nodes of length <= depth.
struct SelectorResult {
  Nat depth = 0;
  std::map<std::vector<char>, Nat> level;

  Nat at(const std::vector<char>& t) const;
};

// Builds the assignment in enumeration order of the binary nodes, realizing
// each node by a frame step whose residues are ((|t|)_0, ((|t|)_1)_0) and whose
// word extends the forced prefixes into the family's open sets.
SelectorResult build_selector(const Frame& f, const DenseFamily& fam, Nat depth);

// Independent verification (reads only the frame words and the level map):
//  - node words extend a cylinder of the matching open set for i <= |t|;
//  - s_{l(empty)}^i = i . v for a common v;
//  - s_{l(t e)}^i = s_{l(t)}^i . (i*e) . v for a common v;
//  - coordinate-0 words form a chain in enumeration order and obey w(n) <= n;
//  - (l(t)-1)_0 = (|t|)_0 and ((l(t)-1)_1)_0 = ((|t|)_1)_0.
// Returns human-readable violations; empty when all conditions hold.
std::vector<std::string> check_selector(const Frame& f, const DenseFamily& fam,
                                        const SelectorResult& res);

// The increasing position bijection m -> l(alpha|m) - 1 on a finite 1-set
// whose members all lie below the selector depth.
std::vector<std::pair<Nat, Nat>> selector_b_alpha(const SelectorResult& res,
                                                  const std::set<Nat>& ones);

}  // namespace wadge
