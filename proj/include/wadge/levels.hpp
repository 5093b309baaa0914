#pragma once

#include <optional>
#include <vector>

#include "wadge/frame.hpp"

// Finite combinatorics of tuple sets: the coordinate-sharing graph,
// one-sidedness, almost-acyclicity by bounded cycle search, and the
// constructive basepoint partition, together with its equivalence check
// against the two graph properties.

namespace wadge {

struct TupleSet {
  Nat d = 0;
  std::vector<std::vector<Nat>> tuples;  // deduplicated, each of arity d
};

// Validates arity and removes duplicates (first occurrence kept).
TupleSet make_tuple_set(Nat d, std::vector<std::vector<Nat>> tuples);

// A tree level as a tuple set; coordinate words are mapped to integer labels.
TupleSet level_tuple_set(const Frame& f, Nat l);

// Undirected edges {a, b} (indices a < b) between tuples sharing at least one
// coordinate.
std::vector<std::pair<Nat, Nat>> graph_edges(const TupleSet& T);

// Every distinct pair shares at most one coordinate.
bool is_one_sided(const TupleSet& T);

// A cycle (as a vertex index list, first repeated at the end) in which no
// coordinate value is shared by three of its vertices.
struct CycleWitness {
  std::vector<Nat> cycle;
};

// Searches vertex-distinct cycles of length 3..max_len for a violation.
std::optional<CycleWitness> almost_acyclic_violation(const TupleSet& T, Nat max_len);

inline bool is_almost_acyclic_bruteforce(const TupleSet& T, Nat max_len) {
  return !almost_acyclic_violation(T, max_len).has_value();
}

// Blocks M_0 .. M_{L-1} of tuple indices partitioning T minus the basepoint;
// L <= d + 1 blocks, trailing block collects the walkless vertices.
struct BasepointPartition {
  Nat basepoint = 0;
  std::vector<std::vector<Nat>> blocks;
};

// Both properties of the partition:
//  (1) projections of distinct blocks are disjoint in every coordinate;
//  (2) a block-j member agreeing with the basepoint at coordinate i forces i = j.
bool partition_properties_hold(const TupleSet& T, const BasepointPartition& P);

// The walk-based construction: breadth-first minimal walks to the basepoint
// with deterministic tie-breaking; block j collects the vertices whose walk
// enters the basepoint through a coordinate-j agreement, the final block the
// walkless vertices. Returns nullopt when the properties fail to hold.
std::optional<BasepointPartition> partition_for(const TupleSet& T, Nat basepoint);

// Exhaustive search over all block assignments (exponential; |T| <= 6).
std::optional<BasepointPartition> partition_bruteforce(const TupleSet& T, Nat basepoint);

struct EquivalenceReport {
  bool one_sided = false;
  bool almost_acyclic = false;
  bool partitions_exist = false;  // partition_for succeeds for every basepoint
  bool agree = false;             // (one_sided && almost_acyclic) == partitions_exist
};

EquivalenceReport check_equivalence(const TupleSet& T, Nat max_cycle_len);

}  // namespace wadge
