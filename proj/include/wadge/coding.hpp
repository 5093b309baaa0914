#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Integer/word coding bijections: the diagonal pairing on omega^2, the
// graded word enumerations b_d (prime coding for d = omega), and the
// word-code maps p and q. All functions are pure.

namespace wadge {

using Nat = std::uint64_t;

// <n,p> = (sum_{k<=n+p} k) + p, the diagonal pairing.
Nat pair(Nat n, Nat p);

// Inverse of pair.
std::pair<Nat, Nat> unpair(Nat l);

// First and second projections (l)_0, (l)_1.
inline Nat proj0(Nat l) { return unpair(l).first; }
inline Nat proj1(Nat l) { return unpair(l).second; }

// A finite word over an alphabet that is either a finite d >= 2 or omega
// (represented by an empty optional bound).
struct Word {
  std::optional<Nat> alphabet_bound;  // nullopt means omega
  std::vector<Nat> letters;

  Word() = default;
  Word(std::optional<Nat> bound, std::vector<Nat> ls);

  Nat size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  Nat at(Nat i) const { return letters.at(i); }

  bool operator==(const Word&) const = default;
};

// Word over omega from a plain letter list.
Word omega_word(std::vector<Nat> letters);

// b_d: the graded bijection omega -> d^{<omega}. For finite d this is the
// length-then-lexicographic enumeration; for d = omega it goes through the
// prime coding I and the increasing bijection iota : Seq -> omega.
Word word_index(std::optional<Nat> d, Nat n);

// Inverse of word_index; rejects words over the wrong alphabet.
Nat word_rank(std::optional<Nat> d, const Word& s);

// Prime coding I(s) := p_0^{s(0)+1} ... p_{|s|-1}^{s(|s|-1)+1}, I(empty) = 1.
// Throws on overflow.
Nat prime_code(const Word& s);

// Decodes m back to a word if m lies in Seq = I[omega^{<omega}].
std::optional<Word> prime_decode(Nat m);

// p(s) := s(0) if |s| = 1, else <p(s minus last), s(|s|-1)>.
// The empty word is rejected.
Nat p_code(const Word& s);

// q(t) := t(0) if |t| = 1, else <t(|t|-1), q(t minus last)>.
Nat q_code(const Word& t);

// s reversed.
Word reverse(const Word& s);

// s - s|q, the suffix after dropping the first q letters. Requires q <= |s|.
Word drop_prefix(const Word& s, Nat q);

// s* := s - s|1. Requires s nonempty.
Word tail(const Word& s);

// First q letters of s.
Word take_prefix(const Word& s, Nat q);

std::string to_string(const Word& s);

}  // namespace wadge
