#include "wadge/levels.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace wadge {

TupleSet make_tuple_set(Nat d, std::vector<std::vector<Nat>> tuples) {
  if (d == 0) throw std::invalid_argument("tuple arity must be positive");
  TupleSet T;
  T.d = d;
  std::set<std::vector<Nat>> seen;
  for (auto& t : tuples) {
    if (t.size() != d) throw std::invalid_argument("tuple arity mismatch");
    if (seen.insert(t).second) T.tuples.push_back(std::move(t));
  }
  return T;
}

TupleSet level_tuple_set(const Frame& f, Nat l) {
  if (!f.dim()) throw std::invalid_argument("tuple sets require a finite alphabet");
  Nat d = *f.dim();
  std::map<std::vector<Nat>, Nat> label;
  std::vector<std::vector<Nat>> tuples;
  for (const LevelTuple& t : tree_level(f, l)) {
    std::vector<Nat> row(d);
    for (Nat i = 0; i < d; ++i) {
      std::vector<Nat> w = t.coord(f, i).letters;
      auto [it, fresh] = label.emplace(std::move(w), label.size());
      (void)fresh;
      row[i] = it->second;
    }
    tuples.push_back(std::move(row));
  }
  return make_tuple_set(d, std::move(tuples));
}

namespace {

bool shares_coordinate(const std::vector<Nat>& a, const std::vector<Nat>& b) {
  for (Nat i = 0; i < a.size(); ++i)
    if (a[i] == b[i]) return true;
  return false;
}

std::vector<std::vector<Nat>> adjacency(const TupleSet& T) {
  Nat n = T.tuples.size();
  std::vector<std::vector<Nat>> adj(n);
  for (Nat a = 0; a < n; ++a)
    for (Nat b = a + 1; b < n; ++b)
      if (shares_coordinate(T.tuples[a], T.tuples[b])) {
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
  return adj;
}

}  // namespace

std::vector<std::pair<Nat, Nat>> graph_edges(const TupleSet& T) {
  std::vector<std::pair<Nat, Nat>> edges;
  for (Nat a = 0; a < T.tuples.size(); ++a)
    for (Nat b = a + 1; b < T.tuples.size(); ++b)
      if (shares_coordinate(T.tuples[a], T.tuples[b])) edges.emplace_back(a, b);
  return edges;
}

bool is_one_sided(const TupleSet& T) {
  for (Nat a = 0; a < T.tuples.size(); ++a)
    for (Nat b = a + 1; b < T.tuples.size(); ++b) {
      Nat shared = 0;
      for (Nat i = 0; i < T.d; ++i)
        if (T.tuples[a][i] == T.tuples[b][i]) ++shared;
      if (shared > 1) return false;
    }
  return true;
}

std::optional<CycleWitness> almost_acyclic_violation(const TupleSet& T, Nat max_len) {
  if (max_len < 3) throw std::invalid_argument("cycle search needs max_len >= 3");
  Nat n = T.tuples.size();
  auto adj = adjacency(T);

  // A violating cycle has no coordinate value shared by three of its
  // vertices, so the search can drop any path that already created a triple.
  std::vector<Nat> path;
  std::vector<char> used(n, 0);
  std::map<std::pair<Nat, Nat>, Nat> count;  // (coordinate, value) -> multiplicity

  auto bump = [&](Nat v, int delta) {
    bool triple = false;
    for (Nat i = 0; i < T.d; ++i) {
      auto key = std::make_pair(i, T.tuples[v][i]);
      if (delta > 0) {
        if (++count[key] >= 3) triple = true;
      } else {
        --count[key];
      }
    }
    return triple;
  };

  std::optional<CycleWitness> hit;
  std::function<void(Nat)> dfs = [&](Nat v) {
    if (hit) return;
    if (path.size() >= 3) {
      // Close the cycle if v neighbors the start; canonical direction only.
      Nat start = path.front();
      if (path[1] < path.back() &&
          std::find(adj[v].begin(), adj[v].end(), start) != adj[v].end()) {
        CycleWitness w;
        w.cycle = path;
        w.cycle.push_back(start);
        hit = std::move(w);
        return;
      }
    }
    if (path.size() == max_len) return;
    for (Nat u : adj[v]) {
      if (u <= path.front() || used[u]) continue;
      bool triple = bump(u, +1);
      if (!triple) {
        used[u] = 1;
        path.push_back(u);
        dfs(u);
        path.pop_back();
        used[u] = 0;
      }
      bump(u, -1);
      if (hit) return;
    }
  };

  for (Nat s = 0; s < n && !hit; ++s) {
    used.assign(n, 0);
    count.clear();
    path = {s};
    used[s] = 1;
    bump(s, +1);
    dfs(s);
    bump(s, -1);
  }
  return hit;
}

bool partition_properties_hold(const TupleSet& T, const BasepointPartition& P) {
  const auto& x0 = T.tuples.at(P.basepoint);
  Nat L = P.blocks.size();
  // (1) projection disjointness.
  for (Nat i = 0; i < T.d; ++i) {
    std::map<Nat, Nat> owner;  // value -> block index
    for (Nat j = 0; j < L; ++j)
      for (Nat v : P.blocks[j]) {
        auto [it, fresh] = owner.emplace(T.tuples[v][i], j);
        if (!fresh && it->second != j) return false;
      }
  }
  // (2) basepoint agreements pin the block index.
  for (Nat j = 0; j < L; ++j)
    for (Nat v : P.blocks[j])
      for (Nat i = 0; i < T.d; ++i)
        if (T.tuples[v][i] == x0[i] && i != j) return false;
  return true;
}

std::optional<BasepointPartition> partition_for(const TupleSet& T, Nat basepoint) {
  Nat n = T.tuples.size();
  if (basepoint >= n) throw std::out_of_range("basepoint outside the tuple set");
  auto adj = adjacency(T);

  // Breadth-first minimal walks toward the basepoint, deterministic by index
  // order: next[v] is the first-found successor on a minimal walk to x0.
  std::vector<std::optional<Nat>> next(n);
  std::vector<int> dist(n, -1);
  dist[basepoint] = 0;
  std::queue<Nat> bfs;
  bfs.push(basepoint);
  while (!bfs.empty()) {
    Nat v = bfs.front();
    bfs.pop();
    for (Nat u : adj[v])
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        next[u] = v;
        bfs.push(u);
      }
  }

  const auto& x0 = T.tuples[basepoint];
  std::vector<std::vector<Nat>> L(T.d);
  std::vector<Nat> walkless;
  for (Nat v = 0; v < n; ++v) {
    if (v == basepoint) continue;
    if (dist[v] < 0) {
      walkless.push_back(v);
      continue;
    }
    // The vertex right before the basepoint on v's minimal walk.
    Nat u = v;
    while (*next[u] != basepoint) u = *next[u];
    std::optional<Nat> j;
    for (Nat i = 0; i < T.d; ++i)
      if (T.tuples[u][i] == x0[i]) {
        j = i;
        break;
      }
    if (!j) return std::nullopt;  // walk enters without an agreement: no edge
    L[*j].push_back(v);
  }

  Nat j0 = 0;
  for (Nat j = 0; j < T.d; ++j)
    if (!L[j].empty()) j0 = j;

  BasepointPartition P;
  P.basepoint = basepoint;
  for (Nat j = 0; j <= j0; ++j) P.blocks.push_back(std::move(L[j]));
  P.blocks.push_back(std::move(walkless));

  if (!partition_properties_hold(T, P)) return std::nullopt;
  return P;
}

std::optional<BasepointPartition> partition_bruteforce(const TupleSet& T, Nat basepoint) {
  Nat n = T.tuples.size();
  if (basepoint >= n) throw std::out_of_range("basepoint outside the tuple set");
  if (n > 6) throw std::invalid_argument("exhaustive partition search is limited to 6 tuples");
  std::vector<Nat> others;
  for (Nat v = 0; v < n; ++v)
    if (v != basepoint) others.push_back(v);

  Nat L = T.d + 1;  // block count bound from the claimed partition shape
  Nat total = 1;
  for (Nat k = 0; k < others.size(); ++k) total *= L;
  for (Nat code = 0; code < total; ++code) {
    BasepointPartition P;
    P.basepoint = basepoint;
    P.blocks.assign(L, {});
    Nat c = code;
    for (Nat v : others) {
      P.blocks[c % L].push_back(v);
      c /= L;
    }
    if (partition_properties_hold(T, P)) return P;
  }
  return std::nullopt;
}

EquivalenceReport check_equivalence(const TupleSet& T, Nat max_cycle_len) {
  EquivalenceReport rep;
  rep.one_sided = is_one_sided(T);
  rep.almost_acyclic = is_almost_acyclic_bruteforce(T, max_cycle_len);
  rep.partitions_exist = true;
  for (Nat v = 0; v < T.tuples.size(); ++v)
    if (!partition_for(T, v)) {
      rep.partitions_exist = false;
      break;
    }
  rep.agree = (rep.one_sided && rep.almost_acyclic) == rep.partitions_exist;
  return rep;
}

}  // namespace wadge
