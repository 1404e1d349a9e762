#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <set>

#include "graph_algos.hpp"

namespace rxnlab::detail {

Adjacency build_adjacency(int atom_count, const std::vector<Bond>& bonds) {
  Adjacency adj(static_cast<std::size_t>(atom_count));
  for (int b = 0; b < static_cast<int>(bonds.size()); ++b) {
    const Bond& bond = bonds[static_cast<std::size_t>(b)];
    adj[static_cast<std::size_t>(bond.begin)].push_back({bond.end, b});
    adj[static_cast<std::size_t>(bond.end)].push_back({bond.begin, b});
  }
  return adj;
}

std::vector<bool> find_ring_bonds(const Adjacency& adj, int bond_count) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<bool> ring(static_cast<std::size_t>(bond_count), true);
  int timer = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<std::size_t>(root)] >= 0) continue;
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    stack.push_back({root, -1, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbrs = adj[static_cast<std::size_t>(f.atom)];
      if (f.next < nbrs.size()) {
        const Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.parent_bond) continue;
        auto& d = disc[static_cast<std::size_t>(nb.atom)];
        if (d < 0) {
          d = low[static_cast<std::size_t>(nb.atom)] = timer++;
          stack.push_back({nb.atom, nb.bond, 0});
        } else {
          low[static_cast<std::size_t>(f.atom)] =
              std::min(low[static_cast<std::size_t>(f.atom)], d);
        }
      } else {
        const Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          const int parent = stack.back().atom;
          low[static_cast<std::size_t>(parent)] = std::min(
              low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(done.atom)]);
          if (low[static_cast<std::size_t>(done.atom)] > disc[static_cast<std::size_t>(parent)]) {
            ring[static_cast<std::size_t>(done.parent_bond)] = false;
          }
        }
      }
    }
  }
  return ring;
}

std::vector<Ring> shortest_cycles(const Adjacency& adj, const std::vector<Bond>& bonds,
                                  const std::vector<bool>& ring_bond, int per_bond_cap) {
  const int n = static_cast<int>(adj.size());
  std::vector<Ring> cycles;
  std::set<std::vector<int>> seen;
  std::vector<int> dist(static_cast<std::size_t>(n));

  for (int b = 0; b < static_cast<int>(bonds.size()); ++b) {
    if (!ring_bond[static_cast<std::size_t>(b)]) continue;
    const int src = bonds[static_cast<std::size_t>(b)].begin;
    const int dst = bonds[static_cast<std::size_t>(b)].end;

    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<std::size_t>(src)] = 0;
    std::deque<int> queue{src};
    while (!queue.empty()) {
      const int a = queue.front();
      queue.pop_front();
      if (a == dst) break;
      for (const Neighbor& nb : adj[static_cast<std::size_t>(a)]) {
        if (nb.bond == b || !ring_bond[static_cast<std::size_t>(nb.bond)]) continue;
        if (dist[static_cast<std::size_t>(nb.atom)] < 0) {
          dist[static_cast<std::size_t>(nb.atom)] = dist[static_cast<std::size_t>(a)] + 1;
          queue.push_back(nb.atom);
        }
      }
    }
    if (dist[static_cast<std::size_t>(dst)] < 0) continue;

    // Walk back from dst along strictly decreasing distances: every such
    // walk is a shortest src..dst path avoiding bond b.
    int produced = 0;
    std::vector<int> path_atoms{dst};
    std::vector<int> path_bonds;
    std::function<void(int)> walk = [&](int a) {
      if (produced >= per_bond_cap) return;
      if (a == src) {
        Ring ring;
        ring.atoms.assign(path_atoms.rbegin(), path_atoms.rend());
        ring.bonds.assign(path_bonds.rbegin(), path_bonds.rend());
        ring.bonds.push_back(b);
        std::vector<int> key = ring.bonds;
        std::sort(key.begin(), key.end());
        if (seen.insert(std::move(key)).second) cycles.push_back(std::move(ring));
        ++produced;
        return;
      }
      const int da = dist[static_cast<std::size_t>(a)];
      for (const Neighbor& nb : adj[static_cast<std::size_t>(a)]) {
        if (nb.bond == b || !ring_bond[static_cast<std::size_t>(nb.bond)]) continue;
        if (dist[static_cast<std::size_t>(nb.atom)] != da - 1) continue;
        path_atoms.push_back(nb.atom);
        path_bonds.push_back(nb.bond);
        walk(nb.atom);
        path_atoms.pop_back();
        path_bonds.pop_back();
      }
    };
    walk(dst);
  }
  return cycles;
}

namespace {

using BitRow = std::vector<std::uint64_t>;

BitRow to_bits(const Ring& ring, std::size_t words) {
  BitRow row(words, 0);
  for (int b : ring.bonds) row[static_cast<std::size_t>(b) / 64] |= 1ULL << (b % 64);
  return row;
}

// Reduces `row` against the basis; returns true if it stayed nonzero and was added.
bool add_if_independent(std::vector<std::pair<std::size_t, BitRow>>& basis, BitRow row) {
  for (const auto& [pivot, vec] : basis) {
    if (row[pivot / 64] >> (pivot % 64) & 1ULL) {
      for (std::size_t w = 0; w < row.size(); ++w) row[w] ^= vec[w];
    }
  }
  for (std::size_t w = 0; w < row.size(); ++w) {
    if (row[w] != 0) {
      const std::size_t pivot = w * 64 + static_cast<std::size_t>(__builtin_ctzll(row[w]));
      // keep basis fully reduced on the new pivot
      for (auto& [p, vec] : basis) {
        if (vec[pivot / 64] >> (pivot % 64) & 1ULL) {
          for (std::size_t k = 0; k < vec.size(); ++k) vec[k] ^= row[k];
        }
      }
      basis.emplace_back(pivot, std::move(row));
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<Ring> smallest_ring_basis(std::vector<Ring> cycles, const Adjacency& adj,
                                      const std::vector<Bond>& bonds,
                                      const std::vector<bool>& ring_bond) {
  const int n = static_cast<int>(adj.size());
  // cyclomatic number of the ring-bond subgraph
  int ring_bonds = 0;
  for (bool r : ring_bond) ring_bonds += r ? 1 : 0;
  if (ring_bonds == 0) return {};
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  int ring_atoms = 0;
  int components = 0;
  for (int s = 0; s < n; ++s) {
    bool touches = false;
    for (const Neighbor& nb : adj[static_cast<std::size_t>(s)]) {
      touches = touches || ring_bond[static_cast<std::size_t>(nb.bond)];
    }
    if (!touches) continue;
    ++ring_atoms;
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    ++components;
    std::vector<int> todo{s};
    comp[static_cast<std::size_t>(s)] = components;
    while (!todo.empty()) {
      const int a = todo.back();
      todo.pop_back();
      for (const Neighbor& nb : adj[static_cast<std::size_t>(a)]) {
        if (!ring_bond[static_cast<std::size_t>(nb.bond)]) continue;
        if (comp[static_cast<std::size_t>(nb.atom)] < 0) {
          comp[static_cast<std::size_t>(nb.atom)] = components;
          todo.push_back(nb.atom);
        }
      }
    }
  }
  const int rank = ring_bonds - ring_atoms + components;

  std::stable_sort(cycles.begin(), cycles.end(), [](const Ring& a, const Ring& b) {
    return a.bonds.size() < b.bonds.size();
  });
  const std::size_t words = (bonds.size() + 63) / 64;
  std::vector<std::pair<std::size_t, BitRow>> basis;
  std::vector<Ring> chosen;
  for (Ring& c : cycles) {
    if (static_cast<int>(chosen.size()) >= rank) break;
    if (add_if_independent(basis, to_bits(c, words))) chosen.push_back(std::move(c));
  }
  if (static_cast<int>(chosen.size()) < rank) {
    // Fall back to fundamental cycles of a BFS spanning forest for the remainder.
    std::vector<int> parent_bond(static_cast<std::size_t>(n), -2);
    std::vector<int> depth(static_cast<std::size_t>(n), 0);
    std::vector<bool> tree(bonds.size(), false);
    for (int s = 0; s < n; ++s) {
      if (parent_bond[static_cast<std::size_t>(s)] != -2) continue;
      parent_bond[static_cast<std::size_t>(s)] = -1;
      std::deque<int> q{s};
      while (!q.empty()) {
        const int a = q.front();
        q.pop_front();
        for (const Neighbor& nb : adj[static_cast<std::size_t>(a)]) {
          if (!ring_bond[static_cast<std::size_t>(nb.bond)]) continue;
          if (parent_bond[static_cast<std::size_t>(nb.atom)] == -2) {
            parent_bond[static_cast<std::size_t>(nb.atom)] = nb.bond;
            depth[static_cast<std::size_t>(nb.atom)] = depth[static_cast<std::size_t>(a)] + 1;
            tree[static_cast<std::size_t>(nb.bond)] = true;
            q.push_back(nb.atom);
          }
        }
      }
    }
    std::vector<Ring> extra;
    for (int b = 0; b < static_cast<int>(bonds.size()); ++b) {
      if (!ring_bond[static_cast<std::size_t>(b)] || tree[static_cast<std::size_t>(b)]) continue;
      int u = bonds[static_cast<std::size_t>(b)].begin;
      int v = bonds[static_cast<std::size_t>(b)].end;
      std::vector<int> left{u}, right{v}, lb, rb;
      while (u != v) {
        if (depth[static_cast<std::size_t>(u)] >= depth[static_cast<std::size_t>(v)]) {
          const int pb = parent_bond[static_cast<std::size_t>(u)];
          lb.push_back(pb);
          u = bonds[static_cast<std::size_t>(pb)].other(u);
          left.push_back(u);
        } else {
          const int pb = parent_bond[static_cast<std::size_t>(v)];
          rb.push_back(pb);
          v = bonds[static_cast<std::size_t>(pb)].other(v);
          right.push_back(v);
        }
      }
      Ring r;
      r.atoms = left;
      for (auto it = right.rbegin() + 1; it != right.rend(); ++it) r.atoms.push_back(*it);
      r.bonds = lb;
      for (auto it = rb.rbegin(); it != rb.rend(); ++it) r.bonds.push_back(*it);
      r.bonds.push_back(b);
      extra.push_back(std::move(r));
    }
    std::stable_sort(extra.begin(), extra.end(), [](const Ring& a, const Ring& b) {
      return a.bonds.size() < b.bonds.size();
    });
    for (Ring& c : extra) {
      if (static_cast<int>(chosen.size()) >= rank) break;
      if (add_if_independent(basis, to_bits(c, words))) chosen.push_back(std::move(c));
    }
  }
  return chosen;
}

}  // namespace rxnlab::detail
