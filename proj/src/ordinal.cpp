#include "wadge/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace wadge {

Ordinal ord_zero() { return {}; }

Ordinal ord_from_nat(Nat n) {
  if (n == 0) return {};
  return Ordinal{{{0, n}}};
}

Ordinal ord_omega_power(Nat exp, Nat coeff) {
  if (coeff == 0) return {};
  return Ordinal{{{exp, coeff}}};
}

Ordinal ord_make(std::vector<Ordinal::Term> terms) {
  std::stable_sort(terms.begin(), terms.end(),
                   [](const auto& a, const auto& b) { return a.exp > b.exp; });
  Ordinal out;
  for (const auto& t : terms) {
    if (t.coeff == 0) continue;
    if (!out.terms.empty() && out.terms.back().exp == t.exp)
      out.terms.back().coeff += t.coeff;
    else
      out.terms.push_back(t);
  }
  return out;
}

std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b) {
  for (size_t i = 0; i < std::min(a.terms.size(), b.terms.size()); ++i) {
    if (auto c = a.terms[i].exp <=> b.terms[i].exp; c != 0) return c;
    if (auto c = a.terms[i].coeff <=> b.terms[i].coeff; c != 0) return c;
  }
  return a.terms.size() <=> b.terms.size();
}

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.terms.empty()) return a;
  Nat lead = b.terms.front().exp;
  Ordinal out;
  for (const auto& t : a.terms)
    if (t.exp > lead) out.terms.push_back(t);
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  // Absorb a's term of exponent lead, if any, into b's leading term.
  for (const auto& t : a.terms)
    if (t.exp == lead) out.terms[out.terms.size() - b.terms.size()].coeff += t.coeff;
  return out;
}

Ordinal ord_sub(const Ordinal& xi, const Ordinal& eta) {
  if (ord_lt(xi, eta)) throw std::invalid_argument("ord_sub requires eta <= xi");
  size_t i = 0;
  while (i < eta.terms.size() && i < xi.terms.size() && eta.terms[i] == xi.terms[i]) ++i;
  if (i == eta.terms.size()) {
    // eta is a prefix of xi; the remainder is xi's leftover terms.
    Ordinal out;
    out.terms.assign(xi.terms.begin() + static_cast<std::ptrdiff_t>(i), xi.terms.end());
    return out;
  }
  // First differing term. Since eta <= xi, either xi's term has the same
  // exponent with a larger coefficient (emit the coefficient difference, which
  // absorbs eta's smaller tail) or a strictly larger exponent (xi's tail from
  // here absorbs eta's remainder outright).
  const auto& et = eta.terms[i];
  const auto& xt = xi.terms[i];
  Ordinal out;
  if (et.exp == xt.exp) {
    out.terms.push_back({xt.exp, xt.coeff - et.coeff});
    out.terms.insert(out.terms.end(), xi.terms.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                     xi.terms.end());
    return out;
  }
  out.terms.assign(xi.terms.begin() + static_cast<std::ptrdiff_t>(i), xi.terms.end());
  return out;
}

Ordinal ord_succ(const Ordinal& a) { return ord_add(a, ord_from_nat(1)); }

Ordinal ord_pred(const Ordinal& a) {
  if (ord_kind(a) != OrdKind::Successor)
    throw std::invalid_argument("ord_pred requires a successor");
  Ordinal out = a;
  if (--out.terms.back().coeff == 0) out.terms.pop_back();
  return out;
}

OrdKind ord_kind(const Ordinal& a) {
  if (a.terms.empty()) return OrdKind::Zero;
  return a.terms.back().exp == 0 ? OrdKind::Successor : OrdKind::Limit;
}

bool ord_is_finite(const Ordinal& a) {
  return a.terms.empty() || (a.terms.size() == 1 && a.terms[0].exp == 0);
}

Nat ord_to_nat(const Ordinal& a) {
  if (!ord_is_finite(a)) throw std::invalid_argument("ordinal is infinite");
  return a.terms.empty() ? 0 : a.terms[0].coeff;
}

namespace {

// delta for the least term w^a*c of a limit: 1 if a = 1, else w^{a-1}+1.
Ordinal limit_delta(const Ordinal& eta) {
  Nat a = eta.terms.back().exp;
  if (a == 1) return ord_from_nat(1);
  return ord_add(ord_omega_power(a - 1), ord_from_nat(1));
}

// eta with its least term w^a*c replaced by w^a*(c-1).
Ordinal limit_base(const Ordinal& eta) {
  Ordinal out = eta;
  if (--out.terms.back().coeff == 0) out.terms.pop_back();
  return out;
}

}  // namespace

Ordinal fundamental_seq(const Ordinal& eta, Nat m) {
  if (ord_kind(eta) != OrdKind::Limit)
    throw std::invalid_argument("fundamental_seq requires a limit ordinal");
  Ordinal delta = limit_delta(eta);
  if (m > 0) return delta;
  return ord_add(limit_base(eta), delta);
}

bool fundamental_seq_sums_to(const Ordinal& eta) {
  if (ord_kind(eta) != OrdKind::Limit) return false;
  Ordinal theta0 = fundamental_seq(eta, 0);
  Ordinal delta = fundamental_seq(eta, 1);
  if (ord_kind(theta0) != OrdKind::Successor || ord_kind(delta) != OrdKind::Successor)
    return false;
  // delta repeated omega times sums to w^a where w^a*c is eta's least term:
  // delta * omega = w^a both for delta = 1 and delta = w^{a-1}+1.
  Ordinal delta_omega = ord_omega_power(eta.terms.back().exp);
  return ord_add(theta0, delta_omega) == eta && ord_lt(theta0, eta) && ord_lt(delta, eta);
}

std::string ord_to_string(const Ordinal& a) {
  if (a.terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : a.terms) {
    if (!first) os << '+';
    first = false;
    if (t.exp == 0) {
      os << t.coeff;
    } else {
      os << 'w';
      if (t.exp > 1) os << '^' << t.exp;
      if (t.coeff > 1) os << '*' << t.coeff;
    }
  }
  return os.str();
}

Ordinal ord_parse(const std::string& text) {
  size_t i = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("ordinal literal '" + text + "': " + msg + " at offset " +
                                std::to_string(i));
  };
  auto number = [&]() -> Nat {
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      fail("expected a number");
    Nat v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + static_cast<Nat>(text[i] - '0');
      ++i;
    }
    return v;
  };
  std::vector<Ordinal::Term> terms;
  while (true) {
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) fail("expected a term");
    if (text[i] == 'w') {
      ++i;
      Nat exp = 1, coeff = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        exp = number();
        if (exp == 0) fail("w^0 is not a CNF term; write the coefficient directly");
      }
      if (i < text.size() && text[i] == '*') {
        ++i;
        coeff = number();
        if (coeff == 0) fail("zero coefficient");
      }
      terms.push_back({exp, coeff});
    } else {
      Nat v = number();
      if (v != 0)
        terms.push_back({0, v});
      else if (!terms.empty())
        fail("a zero term is only allowed alone");
    }
    while (i < text.size() && text[i] == ' ') ++i;
    if (i >= text.size()) break;
    if (text[i] != '+') fail("expected '+'");
    ++i;
  }
  for (size_t k = 1; k < terms.size(); ++k)
    if (terms[k - 1].exp <= terms[k].exp) {
      i = 0;
      fail("exponents must strictly decrease");
    }
  return ord_make(std::move(terms));
}

}  // namespace wadge
