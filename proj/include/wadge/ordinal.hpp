#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "wadge/coding.hpp"

// Ordinals below omega^omega in Cantor normal form, with the left-cancelling
// subtraction eta + theta = xi and a fixed fundamental-sequence scheme for
// limits.

namespace wadge {

struct Ordinal {
  // Terms w^exp * coeff with strictly decreasing exponents and coeff >= 1.
  struct Term {
    Nat exp;
    Nat coeff;
    bool operator==(const Term&) const = default;
  };
  std::vector<Term> terms;  // empty means 0

  bool operator==(const Ordinal&) const = default;
};

Ordinal ord_zero();
Ordinal ord_from_nat(Nat n);
Ordinal ord_omega_power(Nat exp, Nat coeff = 1);

// Builds a CNF ordinal; terms may be given in any order and are merged.
Ordinal ord_make(std::vector<Ordinal::Term> terms);

std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b);
inline bool ord_lt(const Ordinal& a, const Ordinal& b) { return ord_cmp(a, b) < 0; }
inline bool ord_le(const Ordinal& a, const Ordinal& b) { return ord_cmp(a, b) <= 0; }

Ordinal ord_add(const Ordinal& a, const Ordinal& b);

// Left subtraction: the unique theta with eta + theta = xi. Requires eta <= xi.
Ordinal ord_sub(const Ordinal& xi, const Ordinal& eta);

// a + 1 and, for successors, a - 1.
Ordinal ord_succ(const Ordinal& a);
Ordinal ord_pred(const Ordinal& a);

enum class OrdKind { Zero, Successor, Limit };
OrdKind ord_kind(const Ordinal& a);

bool ord_is_finite(const Ordinal& a);
// Value of a finite ordinal.
Nat ord_to_nat(const Ordinal& a);

// Canonical fundamental sequence (theta_m)_{m in omega} of a limit ordinal
// eta: writing eta = rho + w^a*c with the least term w^a*c (a >= 1), set
// delta := 1 if a = 1 else w^{a-1} + 1; then theta_0 := rho + w^a*(c-1) + delta
// and theta_m := delta for m >= 1. Each theta_m is a successor and the
// ordinal sum of the sequence is eta.
Ordinal fundamental_seq(const Ordinal& eta, Nat m);

// Checks symbolically that the scheme above sums to eta: theta_0 followed by
// omega copies of delta gives eta, and every theta_m is a nonzero successor.
bool fundamental_seq_sums_to(const Ordinal& eta);

std::string ord_to_string(const Ordinal& a);

// Parses literals like "0", "7", "w", "w*2", "w^3", "w^2*3+w+5".
Ordinal ord_parse(const std::string& text);

}  // namespace wadge
