#include "wadge/bitseq.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wadge {

namespace {

using FM = BitSeq::FiniteMod;
using EP = BitSeq::EventuallyPeriodic;
using RM = BitSeq::RowMap;
using PB = BitSeq::Pullback;

Nat tri(Nat m) { return pair(m, 0); }  // first position of row m

// Smallest m with tri(m) >= bound.
Nat first_row_at(Nat bound) {
  Nat m = 0;
  while (tri(m) < bound) ++m;
  return m;
}

// Minimal period and preamble for an eventually periodic word.
EP canon_ep(EP a) {
  if (a.period.empty()) throw std::invalid_argument("empty period");
  // Minimal period: smallest divisor length that tiles the block.
  for (Nat p = 1; p <= a.period.size(); ++p) {
    if (a.period.size() % p != 0) continue;
    bool ok = true;
    for (Nat i = p; i < a.period.size() && ok; ++i)
      if (a.period[i] != a.period[i % p]) ok = false;
    if (ok) {
      a.period.resize(p);
      break;
    }
  }
  // Shrink the preamble: absorb its tail into the rotating period.
  while (!a.preamble.empty() && a.preamble.back() == a.period.back()) {
    a.preamble.pop_back();
    std::rotate(a.period.begin(), a.period.end() - 1, a.period.end());
  }
  return a;
}

bool ep_eval(const EP& a, Nat n) {
  if (n < a.preamble.size()) return a.preamble[n] != 0;
  return a.period[(n - a.preamble.size()) % a.period.size()] != 0;
}

EP to_ep(const FM& a) {
  EP out;
  Nat top = a.flips.empty() ? 0 : *a.flips.rbegin() + 1;
  out.preamble.resize(top);
  for (Nat i = 0; i < top; ++i) out.preamble[i] = a.default_bit != (a.flips.count(i) > 0);
  out.period = {static_cast<char>(a.default_bit)};
  return canon_ep(out);
}

// Closed forms reduce to a canonical eventually periodic word when possible.
std::optional<EP> try_ep(const BitSeq& a) {
  if (const auto* fm = std::get_if<FM>(&a.rep())) return to_ep(*fm);
  if (const auto* ep = std::get_if<EP>(&a.rep())) return canon_ep(*ep);
  return std::nullopt;
}

bool ep_row_has_one(const EP& a, Nat r) {
  const Nat L = a.preamble.size(), P = a.period.size();
  Nat n = 0;
  for (; pair(r, n) < L; ++n)
    if (a.preamble[pair(r, n)]) return true;
  // The residues (pos - L) mod P cycle in n with period 2P.
  for (Nat j = 0; j < 2 * P; ++j)
    if (a.period[(pair(r, n + j) - L) % P]) return true;
  return false;
}

// q(m s): the base row read by row m of the pullback along route s.
Nat route_row(const std::vector<Nat>& route, Nat m) {
  Nat v = m;
  for (Nat letter : route) v = pair(letter, v);
  return v;
}

// Inverse of route_row, when r is in its range.
std::optional<Nat> route_peel(const std::vector<Nat>& route, Nat r) {
  for (Nat j = route.size(); j-- > 0;) {
    auto [a, b] = unpair(r);
    if (a != route[j]) return std::nullopt;
    r = b;
  }
  return r;
}

Nat pullback_source(const std::vector<Nat>& route, Nat n) {
  return pair(route_row(route, proj0(n)), proj1(n));
}

RowDescriptor normalize_descriptor(RowDescriptor d) {
  if (d.kind == RowDescriptor::Kind::FiniteOnes && d.columns.empty())
    return row_all_zero();
  if (d.kind == RowDescriptor::Kind::FiniteZeros && d.columns.empty()) return row_all_one();
  if (d.kind != RowDescriptor::Kind::FiniteOnes && d.kind != RowDescriptor::Kind::FiniteZeros)
    d.columns.clear();
  return d;
}

const RowDescriptor& rm_row(const RM& a, Nat r) {
  auto it = a.rows.find(r);
  return it == a.rows.end() ? a.default_row : it->second;
}

}  // namespace

RowDescriptor row_all_zero() { return {RowDescriptor::Kind::AllZero, {}}; }
RowDescriptor row_all_one() { return {RowDescriptor::Kind::AllOne, {}}; }
RowDescriptor row_finite_ones(std::set<Nat> cols) {
  return normalize_descriptor({RowDescriptor::Kind::FiniteOnes, std::move(cols)});
}
RowDescriptor row_finite_zeros(std::set<Nat> cols) {
  return normalize_descriptor({RowDescriptor::Kind::FiniteZeros, std::move(cols)});
}
RowDescriptor row_infinite_ones() { return {RowDescriptor::Kind::InfiniteOnes, {}}; }

BitSeq::BitSeq(Rep rep) : rep_(std::move(rep)) {
  if (auto* ep = std::get_if<EventuallyPeriodic>(&rep_)) {
    *ep = canon_ep(*ep);
  } else if (auto* rm = std::get_if<RowMap>(&rep_)) {
    rm->default_row = normalize_descriptor(rm->default_row);
    for (auto it = rm->rows.begin(); it != rm->rows.end();) {
      it->second = normalize_descriptor(it->second);
      if (it->second == rm->default_row)
        it = rm->rows.erase(it);
      else
        ++it;
    }
  } else if (auto* pb = std::get_if<Pullback>(&rep_)) {
    for (Nat letter : pb->route)
      if (letter == 0) throw std::invalid_argument("pullback routes use letters >= 1");
    if (pb->route.empty()) {
      EventuallyPeriodic base = canon_ep(pb->base);
      rep_ = std::move(base);
    } else {
      pb->base = canon_ep(pb->base);
    }
  }
}

BitSeq BitSeq::finite_mod(bool default_bit, std::set<Nat> flips) {
  return BitSeq(FiniteMod{default_bit, std::move(flips)});
}

BitSeq BitSeq::eventually_periodic(std::vector<char> preamble, std::vector<char> period) {
  for (auto& b : preamble) b = b ? 1 : 0;
  for (auto& b : period) b = b ? 1 : 0;
  return BitSeq(EventuallyPeriodic{std::move(preamble), std::move(period)});
}

BitSeq BitSeq::row_map(RowDescriptor default_row, std::map<Nat, RowDescriptor> rows) {
  return BitSeq(RowMap{std::move(default_row), std::move(rows)});
}

bool seq_eval(const BitSeq& a, Nat n) {
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FM>) {
          return r.default_bit != (r.flips.count(n) > 0);
        } else if constexpr (std::is_same_v<T, EP>) {
          return ep_eval(r, n);
        } else if constexpr (std::is_same_v<T, RM>) {
          auto [row, col] = unpair(n);
          const RowDescriptor& d = rm_row(r, row);
          switch (d.kind) {
            case RowDescriptor::Kind::AllZero: return false;
            case RowDescriptor::Kind::AllOne: return true;
            case RowDescriptor::Kind::FiniteOnes: return d.columns.count(col) > 0;
            case RowDescriptor::Kind::FiniteZeros: return d.columns.count(col) == 0;
            case RowDescriptor::Kind::InfiniteOnes:
              throw UnsupportedQuery("row with unlocated ones cannot be evaluated pointwise");
          }
          return false;
        } else {
          return ep_eval(r.base, pullback_source(r.route, n));
        }
      },
      a.rep());
}

std::vector<char> seq_window(const BitSeq& a, Nat k) {
  std::vector<char> out(k);
  for (Nat i = 0; i < k; ++i) out[i] = seq_eval(a, i);
  return out;
}

BitSeq seq_shift(const BitSeq& a, Nat k) {
  if (const auto* fm = std::get_if<FM>(&a.rep())) {
    std::set<Nat> flips;
    for (Nat x : fm->flips)
      if (x >= k) flips.insert(x - k);
    return BitSeq::finite_mod(fm->default_bit, std::move(flips));
  }
  if (auto ep = try_ep(a)) {
    EP out = *ep;
    if (k <= out.preamble.size()) {
      out.preamble.erase(out.preamble.begin(),
                         out.preamble.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      Nat rot = (k - out.preamble.size()) % out.period.size();
      out.preamble.clear();
      std::rotate(out.period.begin(), out.period.begin() + static_cast<std::ptrdiff_t>(rot),
                  out.period.end());
    }
    return BitSeq(std::move(out));
  }
  throw UnsupportedQuery("shift is defined for FiniteMod and EventuallyPeriodic only");
}

BitSeq seq_splice(const std::vector<char>& prefix, const BitSeq& a) {
  if (prefix.empty()) return a;
  if (const auto* fm = std::get_if<FM>(&a.rep())) {
    std::set<Nat> flips;
    for (Nat i = 0; i < prefix.size(); ++i)
      if ((prefix[i] != 0) != fm->default_bit) flips.insert(i);
    for (Nat x : fm->flips) flips.insert(x + prefix.size());
    return BitSeq::finite_mod(fm->default_bit, std::move(flips));
  }
  if (auto ep = try_ep(a)) {
    EP out;
    out.preamble = prefix;
    out.preamble.insert(out.preamble.end(), ep->preamble.begin(), ep->preamble.end());
    out.period = ep->period;
    return BitSeq(std::move(out));
  }
  throw UnsupportedQuery("splice is defined for FiniteMod and EventuallyPeriodic only");
}

BitSeq seq_symdiff(const BitSeq& a, const BitSeq& b) {
  const auto* fa = std::get_if<FM>(&a.rep());
  const auto* fb = std::get_if<FM>(&b.rep());
  if (fa && fb) {
    std::set<Nat> flips;
    for (Nat x : fa->flips)
      if (!fb->flips.count(x)) flips.insert(x);
    for (Nat x : fb->flips)
      if (!fa->flips.count(x)) flips.insert(x);
    return BitSeq::finite_mod(fa->default_bit != fb->default_bit, std::move(flips));
  }
  auto ea = try_ep(a), eb = try_ep(b);
  if (ea && eb) {
    Nat L = std::max(ea->preamble.size(), eb->preamble.size());
    Nat P = std::lcm(ea->period.size(), eb->period.size());
    EP out;
    out.preamble.resize(L);
    out.period.resize(P);
    for (Nat i = 0; i < L; ++i) out.preamble[i] = ep_eval(*ea, i) != ep_eval(*eb, i);
    for (Nat i = 0; i < P; ++i) out.period[i] = ep_eval(*ea, L + i) != ep_eval(*eb, L + i);
    return BitSeq(std::move(out));
  }
  throw UnsupportedQuery("symdiff is defined for FiniteMod and EventuallyPeriodic only");
}

bool seq_all_zero(const BitSeq& a) {
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FM>) {
          return !r.default_bit && r.flips.empty();
        } else if constexpr (std::is_same_v<T, EP>) {
          return std::none_of(r.preamble.begin(), r.preamble.end(), [](char b) { return b; }) &&
                 std::none_of(r.period.begin(), r.period.end(), [](char b) { return b; });
        } else if constexpr (std::is_same_v<T, RM>) {
          if (r.default_row.has_one()) return false;
          for (const auto& [row, d] : r.rows)
            if (d.has_one()) return false;
          return true;
        } else {
          // A 1 exists iff some read base row holds one.
          Nat m0 = first_row_at(r.base.preamble.size());
          Nat M0 = 0;
          while (route_row(r.route, M0) < m0) ++M0;
          for (Nat m = 0; m < M0; ++m)
            if (ep_row_has_one(r.base, route_row(r.route, m))) return false;
          Nat Q = 2 * r.base.period.size() << r.route.size();
          for (Nat m = M0; m < M0 + Q; ++m)
            if (ep_row_has_one(r.base, route_row(r.route, m))) return false;
          return true;
        }
      },
      a.rep());
}

bool seq_all_one(const BitSeq& a) {
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FM>) {
          return r.default_bit && r.flips.empty();
        } else if constexpr (std::is_same_v<T, EP>) {
          return std::all_of(r.preamble.begin(), r.preamble.end(), [](char b) { return b; }) &&
                 std::all_of(r.period.begin(), r.period.end(), [](char b) { return b; });
        } else if constexpr (std::is_same_v<T, RM>) {
          if (r.default_row.kind != RowDescriptor::Kind::AllOne) return false;
          for (const auto& [row, d] : r.rows)
            if (d.kind != RowDescriptor::Kind::AllOne) return false;
          return true;
        } else {
          throw UnsupportedQuery("all-one test on a pullback");
        }
      },
      a.rep());
}

std::optional<Nat> seq_first_one(const BitSeq& a) {
  return std::visit(
      [&](const auto& r) -> std::optional<Nat> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FM>) {
          if (!r.default_bit) {
            if (r.flips.empty()) return std::nullopt;
            return *r.flips.begin();
          }
          Nat m = 0;
          while (r.flips.count(m)) ++m;
          return m;
        } else if constexpr (std::is_same_v<T, EP>) {
          // Any 1 appears within the preamble or one period past it.
          for (Nat i = 0; i < r.preamble.size() + r.period.size(); ++i)
            if (ep_eval(r, i)) return i;
          return std::nullopt;
        } else if constexpr (std::is_same_v<T, RM>) {
          // Minimum over rows; row r's positions start at tri(r), so only
          // rows with tri(r) below the best candidate can matter.
          std::optional<Nat> best;
          bool unlocated_candidates = false;
          auto consider_row = [&](Nat row, const RowDescriptor& d) {
            if (!d.has_one()) return;
            if (best && tri(row) >= *best) return;
            switch (d.kind) {
              case RowDescriptor::Kind::AllOne:
                best = best ? std::min(*best, tri(row)) : tri(row);
                break;
              case RowDescriptor::Kind::FiniteOnes: {
                Nat pos = pair(row, *d.columns.begin());
                best = best ? std::min(*best, pos) : pos;
                break;
              }
              case RowDescriptor::Kind::FiniteZeros: {
                Nat col = 0;
                while (d.columns.count(col)) ++col;
                Nat pos = pair(row, col);
                best = best ? std::min(*best, pos) : pos;
                break;
              }
              case RowDescriptor::Kind::InfiniteOnes:
                unlocated_candidates = true;
                break;
              default:
                break;
            }
          };
          if (r.default_row.kind == RowDescriptor::Kind::InfiniteOnes)
            throw UnsupportedQuery("first one hidden in default rows with unlocated ones");
          for (const auto& [row, d] : r.rows) consider_row(row, d);
          if (r.default_row.has_one()) {
            for (Nat row = 0; !best || tri(row) < *best; ++row)
              if (!r.rows.count(row)) consider_row(row, r.default_row);
          }
          if (unlocated_candidates) {
            // An InfiniteOnes row may hold a position anywhere at or above
            // its start, so it is only harmless if it cannot undercut best.
            for (const auto& [row, d] : r.rows)
              if (d.kind == RowDescriptor::Kind::InfiniteOnes && (!best || tri(row) < *best))
                throw UnsupportedQuery("first one hidden in a row with unlocated ones");
          }
          return best;
        } else {
          if (seq_all_zero(a)) return std::nullopt;
          for (Nat n = 0;; ++n)
            if (seq_eval(a, n)) return n;
        }
      },
      a.rep());
}

bool seq_row_has_one(const BitSeq& a, Nat r) {
  return std::visit(
      [&](const auto& rep) -> bool {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, FM>) {
          if (rep.default_bit) return true;  // finitely many flips cannot empty a row
          for (Nat x : rep.flips)
            if (proj0(x) == r) return true;
          return false;
        } else if constexpr (std::is_same_v<T, EP>) {
          return ep_row_has_one(rep, r);
        } else if constexpr (std::is_same_v<T, RM>) {
          return rm_row(rep, r).has_one();
        } else {
          return ep_row_has_one(rep.base, route_row(rep.route, r));
        }
      },
      a.rep());
}

BitSeq grid_row(const BitSeq& a, Nat r) {
  return std::visit(
      [&](const auto& rep) -> BitSeq {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, FM>) {
          std::set<Nat> cols;
          for (Nat x : rep.flips)
            if (proj0(x) == r) cols.insert(proj1(x));
          return BitSeq::finite_mod(rep.default_bit, std::move(cols));
        } else if constexpr (std::is_same_v<T, EP>) {
          const Nat L = rep.preamble.size(), P = rep.period.size();
          Nat n0 = 0;
          while (pair(r, n0) < L) ++n0;
          EP out;
          out.preamble.resize(n0);
          for (Nat n = 0; n < n0; ++n) out.preamble[n] = rep.preamble[pair(r, n)];
          out.period.resize(2 * P);
          for (Nat j = 0; j < 2 * P; ++j)
            out.period[j] = rep.period[(pair(r, n0 + j) - L) % P];
          return BitSeq(std::move(out));
        } else if constexpr (std::is_same_v<T, RM>) {
          return from_row_descriptor(rm_row(rep, r));
        } else {
          return grid_row(BitSeq(rep.base), route_row(rep.route, r));
        }
      },
      a.rep());
}

RowDescriptor to_row_descriptor(const BitSeq& a) {
  if (const auto* rm = std::get_if<RM>(&a.rep()))
    if (rm->rows.empty()) return rm->default_row;
  if (const auto* fm = std::get_if<FM>(&a.rep()))
    return fm->default_bit ? row_finite_zeros(fm->flips) : row_finite_ones(fm->flips);
  if (auto ep = try_ep(a)) {
    bool per_one = std::all_of(ep->period.begin(), ep->period.end(), [](char b) { return b; });
    bool per_zero =
        std::none_of(ep->period.begin(), ep->period.end(), [](char b) { return b; });
    std::set<Nat> cols;
    for (Nat i = 0; i < ep->preamble.size(); ++i)
      if ((ep->preamble[i] != 0) != per_one) cols.insert(i);
    if (per_zero) return row_finite_ones(std::move(cols));
    if (per_one) return row_finite_zeros(std::move(cols));
    throw UnsupportedQuery("row content is not finitely one- or zero-supported");
  }
  throw UnsupportedQuery("sequence is not expressible as a row descriptor");
}

BitSeq from_row_descriptor(const RowDescriptor& d) {
  switch (d.kind) {
    case RowDescriptor::Kind::AllZero: return BitSeq::zeros();
    case RowDescriptor::Kind::AllOne: return BitSeq::ones();
    case RowDescriptor::Kind::FiniteOnes: return BitSeq::finite_mod(false, d.columns);
    case RowDescriptor::Kind::FiniteZeros: return BitSeq::finite_mod(true, d.columns);
    case RowDescriptor::Kind::InfiniteOnes:
      throw UnsupportedQuery("row with unlocated ones has no sequence form");
  }
  throw std::logic_error("unreachable");
}

BitSeq grid_assemble(const BitSeq& default_row, const std::map<Nat, BitSeq>& rows) {
  std::map<Nat, RowDescriptor> descs;
  for (const auto& [r, seq] : rows) descs.emplace(r, to_row_descriptor(seq));
  return BitSeq::row_map(to_row_descriptor(default_row), std::move(descs));
}

BitSeq rho0(const BitSeq& a) {
  return std::visit(
      [&](const auto& rep) -> BitSeq {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, FM>) {
          if (rep.default_bit) return BitSeq::zeros();  // every row keeps a 1
          std::set<Nat> nonempty_rows;
          for (Nat x : rep.flips) nonempty_rows.insert(proj0(x));
          return BitSeq::finite_mod(true, std::move(nonempty_rows));
        } else if constexpr (std::is_same_v<T, EP>) {
          const Nat P = rep.period.size();
          // Rows wholly inside the periodic zone answer periodically in m.
          Nat m0 = first_row_at(rep.preamble.size());
          EP out;
          out.preamble.resize(m0);
          for (Nat m = 0; m < m0; ++m) out.preamble[m] = !ep_row_has_one(rep, m);
          out.period.resize(2 * P);
          for (Nat j = 0; j < 2 * P; ++j) out.period[j] = !ep_row_has_one(rep, m0 + j);
          return BitSeq(std::move(out));
        } else if constexpr (std::is_same_v<T, RM>) {
          bool def = !rep.default_row.has_one();
          std::set<Nat> flips;
          for (const auto& [row, d] : rep.rows)
            if (d.has_one() == def) flips.insert(row);
          return BitSeq::finite_mod(def, std::move(flips));
        } else {
          // Row m of the pullback is base row q(m s).
          Nat m0 = first_row_at(rep.base.preamble.size());
          Nat M0 = 0;
          while (route_row(rep.route, M0) < m0) ++M0;
          EP out;
          out.preamble.resize(M0);
          for (Nat m = 0; m < M0; ++m)
            out.preamble[m] = !ep_row_has_one(rep.base, route_row(rep.route, m));
          Nat Q = 2 * rep.base.period.size() << rep.route.size();
          out.period.resize(Q);
          for (Nat j = 0; j < Q; ++j)
            out.period[j] = !ep_row_has_one(rep.base, route_row(rep.route, M0 + j));
          return BitSeq(std::move(out));
        }
      },
      a.rep());
}

namespace {

constexpr Nat kLimitStateBound = 4096;

// One coordinatewise stage of the limit recursion: given y after stages
// < k, produce the stage-k value splice(y|k, rho0^{theta_k}(S^k(y))).
BitSeq limit_stage(const Ordinal& theta_k, const BitSeq& y, Nat k) {
  std::vector<char> prefix = k == 0 ? std::vector<char>{} : seq_window(y, k);
  BitSeq tail = rho0_pow(theta_k, k == 0 ? y : seq_shift(y, k));
  return seq_splice(prefix, tail);
}

BitSeq rho0_pow_limit(const Ordinal& eta, const BitSeq& a) {
  // Output coordinate m is stage-m's value at m. From stage 1 on the stage
  // ordinal is the constant delta, so the evolution of the tail state
  // S^{k+1}(y_k) is time-independent: once it recurs, outputs cycle.
  BitSeq y = a;
  std::vector<char> out_bits;
  std::map<std::string, Nat> seen;  // canonical tail state after stage k -> k
  for (Nat k = 0; k < kLimitStateBound; ++k) {
    y = limit_stage(fundamental_seq(eta, k), y, k);
    out_bits.push_back(seq_eval(y, k));
    BitSeq state_seq = seq_shift(y, k + 1);
    std::string state = BitSeq(*try_ep(state_seq)).describe();
    if (k >= 1) {
      auto [it, inserted] = seen.emplace(state, k);
      if (!inserted) {
        Nat k1 = it->second;
        EP out;
        out.preamble.assign(out_bits.begin(), out_bits.begin() + static_cast<std::ptrdiff_t>(k1) + 1);
        out.period.assign(out_bits.begin() + static_cast<std::ptrdiff_t>(k1) + 1, out_bits.end());
        return BitSeq(std::move(out));
      }
    }
  }
  throw ClosureError("limit iterate did not reach a recurrent tail state within bounds");
}

}  // namespace

BitSeq rho0_pow(const Ordinal& eta, const BitSeq& a) {
  switch (ord_kind(eta)) {
    case OrdKind::Zero: return a;
    case OrdKind::Successor: return rho0(rho0_pow(ord_pred(eta), a));
    case OrdKind::Limit: return rho0_pow_limit(eta, a);
  }
  throw std::logic_error("unreachable");
}

bool rho0_pow_at(const Ordinal& eta, const BitSeq& a, Nat m) {
  switch (ord_kind(eta)) {
    case OrdKind::Zero: return seq_eval(a, m);
    case OrdKind::Successor:
      return !seq_row_has_one(rho0_pow(ord_pred(eta), a), m);
    case OrdKind::Limit: {
      BitSeq y = a;
      for (Nat k = 0; k <= m; ++k) y = limit_stage(fundamental_seq(eta, k), y, k);
      return seq_eval(y, m);
    }
  }
  throw std::logic_error("unreachable");
}

Nat tau_index(Nat i, Nat k) {
  if (i == 0) return pair(0, k);
  return pair(pair(i, proj0(k)), proj1(k));
}

BitSeq tau_pull(Nat i, const BitSeq& a) {
  if (i == 0) return grid_row(a, 0);
  return std::visit(
      [&](const auto& rep) -> BitSeq {
        using T = std::decay_t<decltype(rep)>;
        if constexpr (std::is_same_v<T, FM>) {
          std::set<Nat> flips;
          for (Nat x : rep.flips) {
            auto [row, col] = unpair(x);
            auto [j, m] = unpair(row);
            if (j == i) flips.insert(pair(m, col));
          }
          return BitSeq::finite_mod(rep.default_bit, std::move(flips));
        } else if constexpr (std::is_same_v<T, RM>) {
          std::map<Nat, RowDescriptor> rows;
          for (const auto& [row, d] : rep.rows) {
            auto [j, m] = unpair(row);
            if (j == i) rows.emplace(m, d);
          }
          return BitSeq::row_map(rep.default_row, std::move(rows));
        } else if constexpr (std::is_same_v<T, EP>) {
          return BitSeq(PB{{i}, rep});
        } else {
          std::vector<Nat> route{i};
          route.insert(route.end(), rep.route.begin(), rep.route.end());
          return BitSeq(PB{std::move(route), rep.base});
        }
      },
      a.rep());
}

BitSeq tau_pull_route(const Word& s, const BitSeq& a) {
  BitSeq out = a;
  for (Nat i = s.size(); i-- > 0;) out = tau_pull(s.at(i), out);
  return out;
}

Nat tau_route_source(const Word& s, Nat n) {
  for (Nat letter : s.letters)
    if (letter == 0)
      throw std::invalid_argument("route source formula needs letters >= 1");
  return pullback_source(s.letters, n);
}

FiberSpec fiber_identity() {
  return {[](Nat k) { return k; }};
}

FiberSpec fiber_rho0() {
  return {[](Nat k) { return proj0(k); }};
}

FiberSpec fiber_compose(const FiberSpec& outer, const FiberSpec& inner) {
  auto o = outer.map, i = inner.map;
  return {[o, i](Nat k) { return o(i(k)); }};
}

FiberSpec fiber_rho0_pow(Nat n) {
  return {[n](Nat k) {
    for (Nat j = 0; j < n; ++j) k = proj0(k);
    return k;
  }};
}

FiberSpec fiber_tau(Nat i) {
  return {[i](Nat x) -> Nat {
    auto [row, col] = unpair(x);
    if (i == 0) return row == 0 ? col : 0;
    auto [j, m] = unpair(row);
    return j == i ? pair(m, col) : 0;
  }};
}

FiberSpec fiber_tau_route(const Word& s) {
  std::vector<Nat> route = s.letters;
  for (Nat letter : route)
    if (letter == 0) throw std::invalid_argument("route fibers need letters >= 1");
  return {[route](Nat x) -> Nat {
    auto [row, col] = unpair(x);
    auto m = route_peel(route, row);
    return m ? pair(*m, col) : 0;
  }};
}

std::string BitSeq::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, FiniteMod>) {
          os << "fm(" << (r.default_bit ? 1 : 0) << ";";
          bool first = true;
          for (Nat x : r.flips) {
            os << (first ? "" : ",") << x;
            first = false;
          }
          os << ")";
        } else if constexpr (std::is_same_v<T, EventuallyPeriodic>) {
          os << "ep(";
          for (char b : r.preamble) os << (b ? '1' : '0');
          os << ";";
          for (char b : r.period) os << (b ? '1' : '0');
          os << ")";
        } else if constexpr (std::is_same_v<T, RowMap>) {
          auto put = [&](const RowDescriptor& d) {
            switch (d.kind) {
              case RowDescriptor::Kind::AllZero: os << "Z"; break;
              case RowDescriptor::Kind::AllOne: os << "O"; break;
              case RowDescriptor::Kind::InfiniteOnes: os << "I"; break;
              case RowDescriptor::Kind::FiniteOnes:
              case RowDescriptor::Kind::FiniteZeros: {
                os << (d.kind == RowDescriptor::Kind::FiniteOnes ? "F{" : "G{");
                bool first = true;
                for (Nat c : d.columns) {
                  os << (first ? "" : ",") << c;
                  first = false;
                }
                os << "}";
                break;
              }
            }
          };
          os << "rm(default=";
          put(r.default_row);
          for (const auto& [row, d] : r.rows) {
            os << "; " << row << "=";
            put(d);
          }
          os << ")";
        } else {
          os << "pull[";
          for (Nat i = 0; i < r.route.size(); ++i) os << (i ? "," : "") << r.route[i];
          os << "](" << BitSeq(r.base).describe() << ")";
        }
      },
      rep_);
  return os.str();
}

}  // namespace wadge
