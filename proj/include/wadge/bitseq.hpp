#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "wadge/coding.hpp"
#include "wadge/ordinal.hpp"

// Symbolic elements of Cantor space, closed under the operations used by the
// membership evaluators: the row-erasure map rho0 (rho0(a)(m) = 1 iff row m of
// the pairing grid of a holds no 1), its ordinal iterates below omega^omega,
// shifts, splices, grid access, and the tau-route pullbacks.
//
// Representations:
//  * FiniteMod        — a default bit with finitely many flipped positions;
//  * EventuallyPeriodic — a preamble followed by a repeating block;
//  * RowMap           — per-row descriptors over the pairing grid;
//  * a private pullback form for tau-routes over eventually periodic bases.
// Queries a representation cannot answer raise UnsupportedQuery rather than
// guessing; normalization failures raise ClosureError.

namespace wadge {

struct UnsupportedQuery : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClosureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Descriptor for one row of a pairing grid.
struct RowDescriptor {
  enum class Kind { AllZero, AllOne, FiniteOnes, FiniteZeros, InfiniteOnes };
  Kind kind = Kind::AllZero;
  // Column sets for FiniteOnes / FiniteZeros.
  std::set<Nat> columns;

  bool has_one() const { return kind != Kind::AllZero; }
  bool operator==(const RowDescriptor&) const = default;
};

RowDescriptor row_all_zero();
RowDescriptor row_all_one();
RowDescriptor row_finite_ones(std::set<Nat> cols);
RowDescriptor row_finite_zeros(std::set<Nat> cols);
RowDescriptor row_infinite_ones();

class BitSeq {
 public:
  struct FiniteMod {
    bool default_bit = false;
    std::set<Nat> flips;  // positions holding the opposite of default_bit
    bool operator==(const FiniteMod&) const = default;
  };
  struct EventuallyPeriodic {
    std::vector<char> preamble;
    std::vector<char> period;  // nonempty
    bool operator==(const EventuallyPeriodic&) const = default;
  };
  struct RowMap {
    RowDescriptor default_row;
    std::map<Nat, RowDescriptor> rows;
    bool operator==(const RowMap&) const = default;
  };
  // tau-route pullback over an eventually periodic base; route letters >= 1.
  struct Pullback {
    std::vector<Nat> route;
    EventuallyPeriodic base;
    bool operator==(const Pullback&) const = default;
  };

  using Rep = std::variant<FiniteMod, EventuallyPeriodic, RowMap, Pullback>;

  BitSeq() : rep_(FiniteMod{}) {}
  explicit BitSeq(Rep rep);

  static BitSeq finite_mod(bool default_bit, std::set<Nat> flips);
  static BitSeq zeros() { return finite_mod(false, {}); }
  static BitSeq ones() { return finite_mod(true, {}); }
  static BitSeq eventually_periodic(std::vector<char> preamble, std::vector<char> period);
  static BitSeq row_map(RowDescriptor default_row, std::map<Nat, RowDescriptor> rows);

  const Rep& rep() const { return rep_; }
  std::string describe() const;

  bool operator==(const BitSeq&) const = default;

 private:
  Rep rep_;
};

// Pointwise access; UnsupportedQuery on rows with unlocated ones.
bool seq_eval(const BitSeq& a, Nat n);

// First k values of a.
std::vector<char> seq_window(const BitSeq& a, Nat k);

// S^k(a): n -> a(n + k). Defined for FiniteMod and EventuallyPeriodic.
BitSeq seq_shift(const BitSeq& a, Nat k);

// prefix followed by a.
BitSeq seq_splice(const std::vector<char>& prefix, const BitSeq& a);

// Pointwise exclusive or; defined when both arguments are FiniteMod or
// EventuallyPeriodic.
BitSeq seq_symdiff(const BitSeq& a, const BitSeq& b);

bool seq_all_zero(const BitSeq& a);
bool seq_all_one(const BitSeq& a);

// Least position holding 1, if any. UnsupportedQuery when the representation
// cannot locate it.
std::optional<Nat> seq_first_one(const BitSeq& a);

// Does row r of the pairing grid of a contain a 1?
bool seq_row_has_one(const BitSeq& a, Nat r);

// Row r of the pairing grid, as a sequence in its own right.
BitSeq grid_row(const BitSeq& a, Nat r);

// Assembles a grid from finitely many explicit rows over a default row; each
// row sequence must be expressible as a RowDescriptor.
BitSeq grid_assemble(const BitSeq& default_row, const std::map<Nat, BitSeq>& rows);

RowDescriptor to_row_descriptor(const BitSeq& a);
BitSeq from_row_descriptor(const RowDescriptor& d);

// rho0(a)(m) = 1 iff row m of a contains no 1. Always lands in FiniteMod or
// EventuallyPeriodic.
BitSeq rho0(const BitSeq& a);

// The iterate rho0^eta for eta < omega^omega, as a closed-form sequence.
// Limit stages follow the coordinatewise splicing scheme driven by the
// canonical fundamental sequence; the tail is found by state recurrence and
// raises ClosureError if none is detected within an internal bound.
BitSeq rho0_pow(const Ordinal& eta, const BitSeq& a);

// Reference per-coordinate evaluation of rho0^eta(a)(m), following the
// defining recursion literally (limit stages evaluate the spliced composite
// for this m only).
bool rho0_pow_at(const Ordinal& eta, const BitSeq& a, Nat m);

// tau_0(k) = <0,k>; tau_i(k) = <<i,(k)_0>,(k)_1> for i >= 1.
Nat tau_index(Nat i, Nat k);

// Pullback a o tau_i.
BitSeq tau_pull(Nat i, const BitSeq& a);

// Pullback along tau_{s(0)} o ... o tau_{s(|s|-1)}.
BitSeq tau_pull_route(const Word& s, const BitSeq& a);

// For a route s over omega \ {0}: the input position read by output n,
// <q((n)_0 s), (n)_1>.
Nat tau_route_source(const Word& s, Nat n);

// Coordinate-dependence bookkeeping: map(k) is the output coordinate that may
// depend on input position k; positions irrelevant everywhere map to 0.
struct FiberSpec {
  std::function<Nat(Nat)> map;
};

FiberSpec fiber_identity();
FiberSpec fiber_rho0();
// Composition for "outer after inner": k -> outer(inner(k)).
FiberSpec fiber_compose(const FiberSpec& outer, const FiberSpec& inner);
// rho0^n for finite n.
FiberSpec fiber_rho0_pow(Nat n);
FiberSpec fiber_tau(Nat i);
FiberSpec fiber_tau_route(const Word& s);

}  // namespace wadge
