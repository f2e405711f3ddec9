#include "allen/lattice.hpp"

#include <deque>

namespace allen {

namespace {

/// Breadth-first distances from `from` inside `allowed`; unreachable is -1.
std::array<int, kRelationCount> distances(BasicRelation from, RelationSet allowed) {
  std::array<int, kRelationCount> dist;
  dist.fill(-1);
  dist[index_of(from)] = 0;
  std::deque<BasicRelation> queue{from};
  while (!queue.empty()) {
    BasicRelation r = queue.front();
    queue.pop_front();
    for (BasicRelation n : neighbors(r) & allowed) {
      if (dist[index_of(n)] >= 0) continue;
      dist[index_of(n)] = dist[index_of(r)] + 1;
      queue.push_back(n);
    }
  }
  return dist;
}

} // namespace

RelationSet neighbors(BasicRelation r) {
  RelationSet out;
  for (const auto& [a, b] : kLatticeEdges) {
    if (a == r) out.insert(b);
    if (b == r) out.insert(a);
  }
  return out;
}

bool is_connected(RelationSet set) {
  if (set.empty()) return true;
  auto dist = distances(*set.begin(), set);
  for (BasicRelation r : set) {
    if (dist[index_of(r)] < 0) return false;
  }
  return true;
}

std::size_t conceptual_distance(BasicRelation r1, BasicRelation r2) {
  return static_cast<std::size_t>(distances(r1, RelationSet::full())[index_of(r2)]);
}

} // namespace allen
