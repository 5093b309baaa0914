#include "wadge/coding.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace wadge {

namespace {

Nat checked_add(Nat a, Nat b) {
  if (a > std::numeric_limits<Nat>::max() - b)
    throw std::overflow_error("natural-number overflow in addition");
  return a + b;
}

Nat checked_mul(Nat a, Nat b) {
  if (a != 0 && b > std::numeric_limits<Nat>::max() / a)
    throw std::overflow_error("natural-number overflow in multiplication");
  return a * b;
}

// T(m) = sum_{k<=m} k.
Nat triangular(Nat m) {
  if (m % 2 == 0) return checked_mul(m / 2, m + 1);
  return checked_mul(m, (m + 1) / 2);
}

// M(l) = max{m : T(m) <= l}, by binary search.
Nat tri_floor(Nat l) {
  Nat lo = 0, hi = 1;
  while (triangular(hi) <= l) {
    lo = hi;
    if (hi > (Nat{1} << 32)) throw std::overflow_error("pairing index too large");
    hi *= 2;
  }
  while (lo < hi) {
    Nat mid = lo + (hi - lo + 1) / 2;
    if (triangular(mid) <= l)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

}  // namespace

Nat pair(Nat n, Nat p) { return checked_add(triangular(checked_add(n, p)), p); }

std::pair<Nat, Nat> unpair(Nat l) {
  Nat m = tri_floor(l);
  Nat t = triangular(m);
  return {m - (l - t), l - t};
}

Word::Word(std::optional<Nat> bound, std::vector<Nat> ls)
    : alphabet_bound(bound), letters(std::move(ls)) {
  if (alphabet_bound) {
    if (*alphabet_bound < 2) throw std::invalid_argument("alphabet bound must be >= 2");
    for (Nat x : letters)
      if (x >= *alphabet_bound) throw std::invalid_argument("letter exceeds alphabet bound");
  }
}

Word omega_word(std::vector<Nat> letters) { return Word(std::nullopt, std::move(letters)); }

namespace {

// Enumeration for finite d: index 0 is the empty word; words of length L
// occupy a block of size d^L starting at 1 + d + ... + d^{L-1}; within a
// block the rank is the base-d value of the word read left to right.
Word finite_word_index(Nat d, Nat n) {
  if (n == 0) return Word(d, {});
  Nat block_start = 1;  // index of the first word of the current length
  Nat len = 1;
  Nat block_size = d;
  while (n >= checked_add(block_start, block_size)) {
    block_start = checked_add(block_start, block_size);
    block_size = checked_mul(block_size, d);
    ++len;
  }
  Nat rank = n - block_start;
  std::vector<Nat> letters(len, 0);
  for (Nat i = len; i-- > 0;) {
    letters[i] = rank % d;
    rank /= d;
  }
  return Word(d, std::move(letters));
}

Nat finite_word_rank(Nat d, const Word& s) {
  if (s.empty()) return 0;
  Nat block_start = 1;
  Nat block_size = d;
  for (Nat i = 1; i < s.size(); ++i) {
    block_start = checked_add(block_start, block_size);
    block_size = checked_mul(block_size, d);
  }
  Nat rank = 0;
  for (Nat x : s.letters) rank = checked_add(checked_mul(rank, d), x);
  return checked_add(block_start, rank);
}

constexpr Nat kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37,
                                41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89};

}  // namespace

Nat prime_code(const Word& s) {
  if (s.size() > std::size(kSmallPrimes))
    throw std::overflow_error("word too long for prime coding");
  Nat v = 1;
  for (Nat i = 0; i < s.size(); ++i)
    for (Nat e = 0; e <= s.at(i); ++e) v = checked_mul(v, kSmallPrimes[i]);
  return v;
}

std::optional<Word> prime_decode(Nat m) {
  if (m == 0) return std::nullopt;
  if (m == 1) return omega_word({});
  std::vector<Nat> letters;
  for (Nat pi : kSmallPrimes) {
    if (m == 1) break;
    if (m % pi != 0) return std::nullopt;  // prime gap: not in Seq
    Nat e = 0;
    while (m % pi == 0) {
      m /= pi;
      ++e;
    }
    letters.push_back(e - 1);
  }
  if (m != 1) return std::nullopt;  // leftover factor beyond the prime table
  return omega_word(std::move(letters));
}

Word word_index(std::optional<Nat> d, Nat n) {
  if (d) return finite_word_index(*d, n);
  // b_omega(n): the word whose prime code is the (n+1)-st element of Seq.
  Nat seen = 0;
  for (Nat m = 1;; ++m) {
    if (m == 0) throw std::overflow_error("prime-coded enumeration exhausted");
    auto w = prime_decode(m);
    if (!w) continue;
    if (seen == n) return *w;
    ++seen;
  }
}

Nat word_rank(std::optional<Nat> d, const Word& s) {
  if (s.alphabet_bound != d) {
    // Words over a smaller alphabet embed into a larger one; re-check letters.
    for (Nat x : s.letters)
      if (d && x >= *d) throw std::invalid_argument("word not over the requested alphabet");
  }
  if (d) return finite_word_rank(*d, Word(d, s.letters));
  Nat code = prime_code(s);
  Nat rank = 0;
  for (Nat m = 1; m < code; ++m)
    if (prime_decode(m)) ++rank;
  return rank;
}

Nat p_code(const Word& s) {
  if (s.empty()) throw std::invalid_argument("p-code of the empty word is undefined");
  Nat v = s.at(0);
  for (Nat i = 1; i < s.size(); ++i) v = pair(v, s.at(i));
  return v;
}

Nat q_code(const Word& t) {
  if (t.empty()) throw std::invalid_argument("q-code of the empty word is undefined");
  Nat v = t.at(0);
  for (Nat i = 1; i < t.size(); ++i) v = pair(t.at(i), v);
  return v;
}

Word reverse(const Word& s) {
  std::vector<Nat> ls(s.letters.rbegin(), s.letters.rend());
  return Word(s.alphabet_bound, std::move(ls));
}

Word drop_prefix(const Word& s, Nat q) {
  if (q > s.size()) throw std::invalid_argument("prefix longer than word");
  return Word(s.alphabet_bound,
              std::vector<Nat>(s.letters.begin() + static_cast<std::ptrdiff_t>(q),
                               s.letters.end()));
}

Word tail(const Word& s) {
  if (s.empty()) throw std::invalid_argument("tail of the empty word");
  return drop_prefix(s, 1);
}

Word take_prefix(const Word& s, Nat q) {
  if (q > s.size()) throw std::invalid_argument("prefix longer than word");
  return Word(s.alphabet_bound,
              std::vector<Nat>(s.letters.begin(),
                               s.letters.begin() + static_cast<std::ptrdiff_t>(q)));
}

std::string to_string(const Word& s) {
  std::ostringstream os;
  bool multidigit = false;
  for (Nat x : s.letters)
    if (x > 9) multidigit = true;
  for (Nat i = 0; i < s.size(); ++i) {
    if (multidigit && i) os << '.';
    os << s.at(i);
  }
  if (s.empty()) os << "e";
  return os.str();
}

}  // namespace wadge
