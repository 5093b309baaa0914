#include "wadge/frame.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <stdexcept>

namespace wadge {

namespace {

std::vector<char> binary_node(Nat rank) {
  Word w = word_index(Nat{2}, rank);
  std::vector<char> out;
  out.reserve(w.size());
  for (Nat m = 0; m < w.size(); ++m) out.push_back(static_cast<char>(w.at(m)));
  return out;
}

std::string node_string(const std::vector<char>& t) {
  if (t.empty()) return "e";
  std::string s;
  for (char b : t) s.push_back(b ? '1' : '0');
  return s;
}

Word concat(std::optional<Nat> d, std::initializer_list<const Word*> parts) {
  std::vector<Nat> letters;
  for (const Word* w : parts)
    letters.insert(letters.end(), w->letters.begin(), w->letters.end());
  return Word(d, std::move(letters));
}

}  // namespace

Frame::Frame(std::optional<Nat> d) : d_(d) {
  if (d_ && *d_ < 2) throw std::invalid_argument("frame alphabet must have at least 2 letters");
  memo_.emplace(Nat{0}, Template{});  // level 0: the empty word
}

Frame::Template Frame::tmpl(Nat l) const {
  // Large levels only feed on a short chain of much smaller base levels, so
  // walk the chain down to something already memoized and rebuild upward.
  std::vector<Nat> chain;
  Nat cur = l;
  while (!memo_.count(cur)) {
    chain.push_back(cur);
    cur = step_data(cur).base;
  }
  Template t = memo_.at(cur);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Nat lev = *it;
    StepData sd = step_data(lev);
    Word part = word_index(d_, sd.word_rank);
    t.letters.push_back(0);
    t.slot.push_back(1);
    for (Nat m = 0; m < part.size(); ++m) {
      t.letters.push_back(part.at(m));
      t.slot.push_back(0);
    }
    t.letters.insert(t.letters.end(), sd.pad, 0);
    t.slot.insert(t.slot.end(), sd.pad, 0);
    assert(t.letters.size() == lev);
    if (lev <= 4096) memo_.emplace(lev, t);
  }
  return t;
}

Frame::StepData Frame::step_data(Nat l) const {
  if (l == 0) throw std::invalid_argument("level 0 has no step data");
  Nat lam = l - 1;
  Nat inner = proj1(proj1(lam));
  StepData sd;
  sd.base = proj0(inner);
  sd.word_rank = proj1(inner);
  Nat wlen = word_index(d_, sd.word_rank).size();
  // lam >= <base, rank> >= base + rank >= base + wlen.
  sd.pad = lam - sd.base - wlen;
  return sd;
}

Word Frame::word(Nat l, Nat i) const {
  if (d_ && i >= *d_) throw std::invalid_argument("coordinate outside the alphabet");
  const Template& t = tmpl(l);
  std::vector<Nat> letters = t.letters;
  for (Nat m = 0; m < letters.size(); ++m)
    if (t.slot[m]) letters[m] = i;
  return Word(d_, std::move(letters));
}

Nat Frame::step(Nat q, Nat p, Nat r, const Word& t) const {
  Nat n = word_rank(d_, t);
  return pair(p, pair(r, pair(q, n))) + 1;
}

Nat LevelTuple::length() const {
  switch (form) {
    case Form::Root:
      return 0;
    case Form::Common:
      return base + tail.size();
    case Form::Inserted:
      return base + 1 + tail.size();
  }
  return 0;
}

Word LevelTuple::coord(const Frame& f, Nat i) const {
  switch (form) {
    case Form::Root:
      return Word(f.dim(), {});
    case Form::Common: {
      Word w = f.word(base, i);
      return concat(f.dim(), {&w, &tail});
    }
    case Form::Inserted: {
      Word w = f.word(base, i);
      w.letters.push_back(i);
      return concat(f.dim(), {&w, &tail});
    }
  }
  return Word(f.dim(), {});
}

std::optional<LevelTuple> LevelTuple::parent(const Frame& f) const {
  switch (form) {
    case Form::Root:
      return std::nullopt;
    case Form::Common: {
      if (!tail.empty())
        return LevelTuple{Form::Common, base, take_prefix(tail, tail.size() - 1)};
      if (base == 0) return std::nullopt;
      Frame::StepData sd = f.step_data(base);
      Word part = word_index(f.dim(), sd.word_rank);
      if (sd.pad > 0) {
        std::vector<Nat> letters = part.letters;
        letters.insert(letters.end(), sd.pad - 1, 0);
        return LevelTuple{Form::Inserted, sd.base, Word(f.dim(), std::move(letters))};
      }
      if (!part.empty())
        return LevelTuple{Form::Inserted, sd.base, take_prefix(part, part.size() - 1)};
      return LevelTuple{Form::Common, sd.base, Word(f.dim(), {})};
    }
    case Form::Inserted: {
      if (!tail.empty())
        return LevelTuple{Form::Inserted, base, take_prefix(tail, tail.size() - 1)};
      return LevelTuple{Form::Common, base, Word(f.dim(), {})};
    }
  }
  return std::nullopt;
}

namespace {

// Enumerates all words of the given length whose m-th letter is bounded by
// min(slack + m, d - 1), invoking sink on each.
void enumerate_tails(Nat d, Nat length, Nat slack,
                     const std::function<void(const std::vector<Nat>&)>& sink) {
  std::vector<Nat> cur;
  std::function<void()> rec = [&]() {
    if (cur.size() == length) {
      sink(cur);
      return;
    }
    Nat m = cur.size();
    Nat bound = std::min<Nat>(slack + m, d - 1);
    for (Nat letter = 0; letter <= bound; ++letter) {
      cur.push_back(letter);
      rec();
      cur.pop_back();
    }
  };
  rec();
}

bool coord0_filter(const Word& w) {
  for (Nat n = 0; n < w.size(); ++n)
    if (w.at(n) > n) return false;
  return true;
}

}  // namespace

std::vector<LevelTuple> tree_level(const Frame& f, Nat l) {
  if (!f.dim()) throw std::invalid_argument("tree levels are enumerable for finite alphabets only");
  Nat d = *f.dim();
  if (l == 0) return {LevelTuple{}};

  std::vector<LevelTuple> out;
  // Keyed by the coordinate-0 and coordinate-1 words, which determine the
  // whole tuple: a position where descriptors disagree would have to be a
  // slot in one of them, and slots show distinct letters at coordinates 0, 1.
  std::set<std::pair<std::vector<Nat>, std::vector<Nat>>> seen;
  auto admit = [&](LevelTuple t) {
    Word w0 = t.coord(f, 0);
    if (!coord0_filter(w0)) return;
    Word w1 = t.coord(f, 1);
    if (seen.insert({w0.letters, w1.letters}).second) out.push_back(std::move(t));
  };

  // Base 0 is excluded from the common shape: it would denote constant
  // tuples, which never occur as branch prefixes (every nonempty branch
  // coordinate starts with its own index).
  for (Nat q = 1; q <= l; ++q) {
    enumerate_tails(d, l - q, q, [&](const std::vector<Nat>& tail) {
      admit(LevelTuple{LevelTuple::Form::Common, q, Word(f.dim(), tail)});
    });
  }
  for (Nat q = 0; q + 1 <= l; ++q) {
    enumerate_tails(d, l - 1 - q, q + 1, [&](const std::vector<Nat>& tail) {
      admit(LevelTuple{LevelTuple::Form::Inserted, q, Word(f.dim(), tail)});
    });
  }
  return out;
}

std::vector<std::vector<Nat>> level_alphabet(const Frame& f, Nat l) {
  if (!f.dim()) throw std::invalid_argument("level alphabets are enumerable for finite alphabets only");
  Nat d = *f.dim();
  std::set<std::vector<Nat>> digits;
  for (const LevelTuple& t : tree_level(f, l + 1)) {
    std::vector<Nat> tuple(d);
    for (Nat i = 0; i < d; ++i) tuple[i] = t.coord(f, i).at(l);
    digits.insert(std::move(tuple));
  }
  return std::vector<std::vector<Nat>>(digits.begin(), digits.end());
}

const RecipeStep& recipe_step(const BranchRecipe& rcp, Nat k) {
  if (rcp.cycle.empty()) throw std::invalid_argument("branch recipe requires a nonempty cycle");
  if (k < rcp.prefix.size()) return rcp.prefix[k];
  return rcp.cycle[(k - rcp.prefix.size()) % rcp.cycle.size()];
}

Nat recipe_chain(const Frame& f, const BranchRecipe& rcp, Nat k) {
  Nat m = 0;
  for (Nat j = 0; j < k; ++j) {
    const RecipeStep& st = recipe_step(rcp, j);
    m = f.step(m, st.p, st.r, st.t);
  }
  return m;
}

namespace {

// The next chain level, or nullopt when it exceeds the natural-number range.
std::optional<Nat> try_step(const Frame& f, Nat m, const RecipeStep& st) {
  try {
    return f.step(m, st.p, st.r, st.t);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

}  // namespace

Word recipe_prefix(const Frame& f, const BranchRecipe& rcp, Nat i, Nat n) {
  // Assemble s_{m_{k+1}}^i = s_{m_k}^i . i . t_k . 0^pad level by level
  // without materializing the (rapidly growing) full words.
  std::vector<Nat> letters;
  Nat m = 0;
  for (Nat k = 0; letters.size() < n; ++k) {
    const RecipeStep& st = recipe_step(rcp, k);
    letters.push_back(i);
    for (Nat j = 0; j < st.t.size() && letters.size() < n; ++j)
      letters.push_back(st.t.at(j));
    auto next = try_step(f, m, st);
    if (!next || *next > n) {
      letters.insert(letters.end(), n - letters.size(), 0);
      break;
    }
    letters.insert(letters.end(), *next - letters.size(), 0);
    m = *next;
  }
  return Word(f.dim(), std::move(letters));
}

std::vector<Nat> recipe_delta_positions(const Frame& f, const BranchRecipe& rcp, Nat bound) {
  std::vector<Nat> out;
  Nat m = 0;
  for (Nat k = 0;; ++k) {
    auto next = try_step(f, m, recipe_step(rcp, k));
    if (!next || *next - 1 >= bound) break;
    out.push_back(*next - 1);
    m = *next;
  }
  return out;
}

BitSeq recipe_delta(const Frame& f, const BranchRecipe& rcp) {
  if (rcp.cycle.empty()) throw std::invalid_argument("branch recipe requires a nonempty cycle");
  std::set<Nat> cycle_rows;
  for (const RecipeStep& st : rcp.cycle) cycle_rows.insert(st.p);

  // Columns contributed by the prefix steps, per row.
  std::map<Nat, std::set<Nat>> prefix_cols;
  Nat m = 0;
  for (Nat k = 0; k < rcp.prefix.size(); ++k) {
    const RecipeStep& st = rcp.prefix[k];
    m = f.step(m, st.p, st.r, st.t);
    prefix_cols[st.p].insert(proj1(m - 1));
  }

  std::map<Nat, RowDescriptor> rows;
  for (Nat p : cycle_rows) rows[p] = row_infinite_ones();
  for (const auto& [p, cols] : prefix_cols)
    if (!cycle_rows.count(p)) rows[p] = row_finite_ones(cols);
  return BitSeq::row_map(row_all_zero(), std::move(rows));
}

std::vector<Word> DenseFamily::open_at(Nat i, Nat q) const {
  if (i < opens.size() && q < opens[i].size()) return opens[i][q];
  return {Word(std::nullopt, {})};  // the whole space
}

Nat SelectorResult::at(const std::vector<char>& t) const {
  auto it = level.find(t);
  if (it == level.end()) throw std::out_of_range("node outside the selector depth");
  return it->second;
}

namespace {

bool is_prefix(const Word& a, const Word& b) {
  if (a.size() > b.size()) return false;
  for (Nat m = 0; m < a.size(); ++m)
    if (a.at(m) != b.at(m)) return false;
  return true;
}

// Least extension u with prefix.u inside one of the cylinders, subject to the
// realizability bound u(m) <= |prefix| + m. The empty cylinder word denotes
// the whole space.
std::optional<Word> cylinder_extension(const Word& prefix, const std::vector<Word>& open,
                                       Nat bound) {
  for (const Word& v : open) {
    if (v.size() <= prefix.size()) {
      if (is_prefix(v, prefix)) return Word(prefix.alphabet_bound, {});
      continue;
    }
    if (!is_prefix(prefix, v)) continue;
    Word u = drop_prefix(v, prefix.size());
    if (u.size() > bound) continue;
    bool ok = true;
    for (Nat m = 0; m < u.size(); ++m)
      if (u.at(m) > prefix.size() + m) ok = false;
    if (ok) return u;
  }
  return std::nullopt;
}

}  // namespace

SelectorResult build_selector(const Frame& f, const DenseFamily& fam, Nat depth) {
  SelectorResult res;
  res.depth = depth;

  Nat node_count = (Nat{2} << depth) - 1;  // 2^{depth+1} - 1 nodes of length <= depth

  // Root node: coordinate 0 starts with the letter 0; extend into the
  // depth-0 open set and realize i . u* . 0^N with residues from <0> = 0.
  {
    Word p0(f.dim(), {0});
    auto u = cylinder_extension(p0, fam.open_at(0, 0), fam.search_bound);
    if (!u) throw SelectorNotFound("no compatible cylinder at the root, coordinate 0", {}, 0);
    Word core = concat(f.dim(), {&*u});
    res.level[{}] = f.step(0, proj0(0), proj0(proj1(0)), core);
  }

  std::vector<char> prev;  // node handled in the previous round
  for (Nat rank = 1; rank < node_count; ++rank) {
    std::vector<char> node = binary_node(rank);
    std::vector<char> t(node.begin(), node.end() - 1);
    char eps = node.back();
    Nat lt = res.at(t);
    Nat lprev = res.at(prev);

    // Chain word: the part of the previous coordinate-0 word past position
    // l(t); its prefix up to l(t) is s_{l(t)}^0 followed by a 0. At the very
    // first round the previous node is the parent itself, so the chain is
    // empty.
    Word chain(f.dim(), {});
    if (lprev > lt) {
      Word prev0 = f.word(lprev, 0);
      assert(is_prefix(f.word(lt, 0), prev0) && prev0.at(lt) == 0);
      chain = drop_prefix(prev0, lt + 1);
    }

    // Collect the extension words coordinate by coordinate.
    Word zero(f.dim(), {0});
    Word uconcat(f.dim(), {});
    for (Nat i = 0; i + 1 <= node.size(); ++i) {
      Word si = f.word(lt, i);
      Word ins(f.dim(), {eps ? i : Nat{0}});
      Word pi = concat(f.dim(), {&si, &ins, &chain, &zero, &uconcat});
      auto u = cylinder_extension(pi, fam.open_at(i, node.size()), fam.search_bound);
      if (!u)
        throw SelectorNotFound("no compatible cylinder at node " + node_string(node) +
                                   ", coordinate " + std::to_string(i),
                               node, i);
      uconcat = concat(f.dim(), {&uconcat, &*u});
    }

    Nat len = node.size();
    Nat p = proj0(len);
    Nat r = proj0(proj1(len));
    Nat lnew;
    if (eps) {
      Word core = concat(f.dim(), {&chain, &zero, &uconcat});
      lnew = f.step(lt, p, r, core);
    } else {
      // Reuse the base of l(t): s_{l(t)}^i = s_q^i . i . w with w common, so
      // appending the letter 0 keeps the inserted-digit shape over base q.
      Frame::StepData sd = f.step_data(lt);
      Word w0 = drop_prefix(f.word(lt, 0), sd.base + 1);
      Word core = concat(f.dim(), {&w0, &zero, &chain, &zero, &uconcat});
      lnew = f.step(sd.base, p, r, core);
    }
    assert(lnew > lprev);
    res.level[node] = lnew;
    prev = node;
  }
  return res;
}

std::vector<std::string> check_selector(const Frame& f, const DenseFamily& fam,
                                        const SelectorResult& res) {
  std::vector<std::string> bad;
  auto complain = [&](const std::vector<char>& t, const std::string& what) {
    bad.push_back("node " + node_string(t) + ": " + what);
  };

  Nat node_count = (Nat{2} << res.depth) - 1;
  std::vector<std::vector<char>> order;
  for (Nat rank = 0; rank < node_count; ++rank) order.push_back(binary_node(rank));

  Nat max_coord = res.depth + 1;
  if (f.dim()) max_coord = std::min<Nat>(max_coord, *f.dim() - 1);

  for (const auto& t : order) {
    if (!res.level.count(t)) {
      complain(t, "missing level");
      continue;
    }
    Nat lt = res.level.at(t);
    if (lt == 0) complain(t, "level must be positive");

    // (5) the residue condition.
    if (proj0(lt - 1) != proj0(t.size())) complain(t, "first residue mismatch");
    if (proj0(proj1(lt - 1)) != proj0(proj1(t.size()))) complain(t, "second residue mismatch");

    // (1) relative to the family: each tracked coordinate word extends a
    // cylinder of the matching open set.
    for (Nat i = 0; i <= t.size() && i <= max_coord; ++i) {
      Word w = f.word(lt, i);
      bool inside = false;
      for (const Word& v : fam.open_at(i, t.size()))
        if (is_prefix(v, w)) inside = true;
      if (!inside)
        complain(t, "coordinate " + std::to_string(i) + " word escapes the open set");
    }

    // (2) and (3): the insertion shapes with a coordinate-free remainder.
    if (t.empty()) {
      Word w0 = f.word(lt, 0);
      if (w0.empty() || w0.at(0) != 0) complain(t, "root word does not start with its index");
      Word v = drop_prefix(w0, 1);
      for (Nat i = 1; i <= max_coord; ++i) {
        Word wi = f.word(lt, i);
        Word ins(f.dim(), {i});
        Word expect = concat(f.dim(), {&ins, &v});
        if (!(wi == expect)) complain(t, "root insertion shape fails at coordinate " + std::to_string(i));
      }
    } else {
      std::vector<char> par(t.begin(), t.end() - 1);
      char eps = t.back();
      Nat lpar = res.level.count(par) ? res.level.at(par) : 0;
      if (lpar == 0 || lpar >= lt) {
        complain(t, "parent level missing or not below");
      } else {
        Word v = drop_prefix(f.word(lt, 0), lpar + 1);
        for (Nat i = 0; i <= max_coord; ++i) {
          Word wi = f.word(lt, i);
          Word base = f.word(lpar, i);
          Word ins(f.dim(), {eps ? i : Nat{0}});
          Word expect = concat(f.dim(), {&base, &ins, &v});
          if (!(wi == expect))
            complain(t, "insertion shape fails at coordinate " + std::to_string(i));
        }
      }
    }
  }

  // (4) the coordinate-0 chain in enumeration order, plus the letter bound.
  for (Nat rank = 0; rank + 1 < node_count; ++rank) {
    const auto& a = order[rank];
    const auto& b = order[rank + 1];
    if (!res.level.count(a) || !res.level.count(b)) continue;
    if (!is_prefix(f.word(res.level.at(a), 0), f.word(res.level.at(b), 0)))
      complain(b, "coordinate-0 chain breaks");
  }
  for (const auto& t : order) {
    if (!res.level.count(t)) continue;
    Word w0 = f.word(res.level.at(t), 0);
    for (Nat n = 0; n < w0.size(); ++n)
      if (w0.at(n) > n) complain(t, "coordinate-0 letter bound fails");
  }
  return bad;
}

std::vector<std::pair<Nat, Nat>> selector_b_alpha(const SelectorResult& res,
                                                  const std::set<Nat>& ones) {
  std::vector<std::pair<Nat, Nat>> out;
  for (Nat m : ones) {
    if (m > res.depth) throw std::out_of_range("1-position beyond the selector depth");
    std::vector<char> t;
    for (Nat j = 0; j < m; ++j) t.push_back(ones.count(j) ? 1 : 0);
    out.emplace_back(m, res.at(t) - 1);
  }
  return out;
}

}  // namespace wadge
