#include "dg/pebble.hpp"

#include <algorithm>

#include "dg/errors.hpp"

namespace dg {

PebbleGame23::PebbleGame23(int n)
    : n_(n), pebbles_(n, 2), out_(n), seen_(n, 0), parent_(n, -1) {
  if (n < 1) throw InvariantError("pebble game needs at least one vertex");
}

// DFS from `root` for a vertex with a free pebble, then reverse the path and
// move the pebble to `root`. Pebbles on `root` and `avoid` do not count and
// the search does not pass through `avoid`.
bool PebbleGame23::find_pebble(int root, int avoid) {
  ++stamp_;
  seen_[root] = stamp_;
  seen_[avoid] = stamp_;
  parent_[root] = -1;
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (const int v : out_[u]) {
      if (seen_[v] == stamp_) continue;
      seen_[v] = stamp_;
      parent_[v] = u;
      if (pebbles_[v] > 0) {
        // reverse the path root -> ... -> v; the pebble pays for the new
        // orientation of the final arc
        --pebbles_[v];
        ++pebbles_[root];
        int w = v;
        while (parent_[w] != -1) {
          const int p = parent_[w];
          auto it = std::find(out_[p].begin(), out_[p].end(), w);
          out_[p].erase(it);
          out_[w].push_back(p);
          w = p;
        }
        return true;
      }
      stack.push_back(v);
    }
  }
  return false;
}

bool PebbleGame23::gather(int u, int v, int needed) {
  while (pebbles_[u] + pebbles_[v] < needed) {
    if (find_pebble(u, v)) continue;
    if (find_pebble(v, u)) continue;
    return false;
  }
  return true;
}

bool PebbleGame23::insert_edge(int u, int v) {
  if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_)
    throw InvariantError("pebble game edge endpoints out of range");
  if (!gather(u, v, 4)) return false;  // redundant: lives inside a rigid body
  int tail = u, head = v;
  if (pebbles_[tail] == 0) std::swap(tail, head);
  --pebbles_[tail];
  out_[tail].push_back(head);
  ++independent_;
  return true;
}

bool PebbleGame23::pair_rigid(int u, int v) {
  if (u == v) return true;
  return !gather(u, v, 4);
}

std::vector<int> PebbleGame23::rigid_body_of(int u, int v) {
  std::vector<int> body{std::min(u, v), std::max(u, v)};
  for (int w = 0; w < n_; ++w) {
    if (w == u || w == v) continue;
    if (pair_rigid(u, w) && pair_rigid(v, w)) body.push_back(w);
  }
  std::sort(body.begin(), body.end());
  return body;
}

}  // namespace dg
