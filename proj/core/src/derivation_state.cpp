#include "allen/derivation_state.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

namespace allen {

VarId DerivationState::add_var(std::string_view name_hint, VarOrigin origin) {
  std::string candidate(name_hint.empty() ? "x" : name_hint);
  while (find(candidate)) candidate += '\'';
  VarId id{static_cast<std::uint32_t>(vars_.size())};
  vars_.push_back({std::move(candidate), origin});
  point_parent_.push_back(2 * id.value);
  point_parent_.push_back(2 * id.value + 1);
  var_parent_.push_back(id.value);
  return id;
}

std::optional<VarId> DerivationState::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].name == name) return VarId{static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

std::size_t DerivationState::find_point(std::size_t i) const {
  while (point_parent_[i] != i) i = point_parent_[i];
  return i;
}

void DerivationState::union_points(std::size_t a, std::size_t b) {
  a = find_point(a);
  b = find_point(b);
  if (a == b) return;
  if (b < a) std::swap(a, b);
  point_parent_[b] = a;
}

std::size_t DerivationState::find_var(std::size_t i) const {
  while (var_parent_[i] != i) i = var_parent_[i];
  return i;
}

void DerivationState::union_vars(std::size_t a, std::size_t b) {
  a = find_var(a);
  b = find_var(b);
  if (a == b) return;
  if (b < a) std::swap(a, b);
  var_parent_[b] = a;
}

void DerivationState::assert_meets(VarId x, VarId y) {
  if (!is_explicit_meets(x, y)) literals_.push_back(Literal::meets(x, y));
  union_points(point_index(end_of(x)), point_index(start_of(y)));
}

void DerivationState::assert_eq(VarId x, VarId y) {
  union_vars(x.value, y.value);
  union_points(point_index(start_of(x)), point_index(start_of(y)));
  union_points(point_index(end_of(x)), point_index(end_of(y)));
}

void DerivationState::bind_span(VarId x, VarId from, VarId to) {
  union_points(point_index(start_of(x)), point_index(start_of(from)));
  union_points(point_index(end_of(x)), point_index(end_of(to)));
}

VarId DerivationState::representative(VarId v) const {
  return VarId{static_cast<std::uint32_t>(find_var(v.value))};
}

std::vector<VarId> DerivationState::representatives() const {
  std::vector<VarId> out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (find_var(i) == i) out.push_back(VarId{static_cast<std::uint32_t>(i)});
  }
  return out;
}

std::size_t DerivationState::point_class(Point p) const { return find_point(point_index(p)); }

bool DerivationState::holds_meets(VarId x, VarId y) const {
  return point_class(end_of(x)) == point_class(start_of(y));
}

bool DerivationState::holds(const Literal& lit) const {
  return lit.kind == Literal::Kind::eq ? same(lit.lhs, lit.rhs) : holds_meets(lit.lhs, lit.rhs);
}

bool DerivationState::is_explicit_meets(VarId x, VarId y) const {
  return std::any_of(literals_.begin(), literals_.end(),
                     [&](const Literal& l) { return same(l.lhs, x) && same(l.rhs, y); });
}

std::vector<std::vector<std::pair<std::size_t, VarId>>> DerivationState::order_graph() const {
  std::vector<std::vector<std::pair<std::size_t, VarId>>> graph(point_parent_.size());
  for (VarId v : representatives()) {
    graph[point_class(start_of(v))].emplace_back(point_class(end_of(v)), v);
  }
  return graph;
}

bool DerivationState::reachable(std::size_t from, std::size_t to) const {
  auto graph = order_graph();
  std::vector<bool> seen(graph.size());
  std::deque<std::size_t> queue{from};
  while (!queue.empty()) {
    auto node = queue.front();
    queue.pop_front();
    for (const auto& [next, var] : graph[node]) {
      if (next == to) return true;
      if (!seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  return false;
}

std::optional<PointOrder> DerivationState::compare(Point a, Point b) const {
  auto ca = point_class(a);
  auto cb = point_class(b);
  if (ca == cb) return PointOrder::equal;
  if (reachable(ca, cb)) return PointOrder::before;
  if (reachable(cb, ca)) return PointOrder::after;
  return std::nullopt;
}

std::optional<std::vector<VarId>> DerivationState::interval_chain(Point from, Point to) const {
  auto source = point_class(from);
  auto target = point_class(to);
  if (source == target) return std::nullopt;
  auto graph = order_graph();
  std::vector<std::optional<std::pair<std::size_t, VarId>>> via(graph.size());
  std::vector<bool> seen(graph.size());
  seen[source] = true;
  std::deque<std::size_t> queue{source};
  while (!queue.empty()) {
    auto node = queue.front();
    queue.pop_front();
    for (const auto& [next, var] : graph[node]) {
      if (seen[next]) continue;
      seen[next] = true;
      via[next] = std::pair{node, var};
      if (next == target) {
        std::vector<VarId> chain;
        for (auto at = target; at != source; at = via[at]->first) chain.push_back(via[at]->second);
        std::reverse(chain.begin(), chain.end());
        return chain;
      }
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

std::vector<VarId> DerivationState::starting_at(Point p) const {
  std::vector<VarId> out;
  auto c = point_class(p);
  for (VarId v : representatives()) {
    if (point_class(start_of(v)) == c) out.push_back(v);
  }
  return out;
}

std::vector<VarId> DerivationState::ending_at(Point p) const {
  std::vector<VarId> out;
  auto c = point_class(p);
  for (VarId v : representatives()) {
    if (point_class(end_of(v)) == c) out.push_back(v);
  }
  return out;
}

std::optional<std::vector<TraceStep>> DerivationState::m1_derivation(VarId x, VarId y) const {
  if (!holds_meets(x, y)) return std::nullopt;
  const auto at = point_class(end_of(x));

  // Bipartite graph at the shared point: left nodes end there, right nodes
  // start there, edges are the explicit literals. Node = 2*rep + side.
  std::map<std::size_t, std::vector<std::size_t>> adjacent;
  for (const auto& lit : literals_) {
    if (point_class(end_of(lit.lhs)) != at) continue;
    std::size_t left = 2 * representative(lit.lhs).value;
    std::size_t right = 2 * representative(lit.rhs).value + 1;
    adjacent[left].push_back(right);
    adjacent[right].push_back(left);
  }
  for (auto& [node, next] : adjacent) {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
  }

  const std::size_t source = 2 * representative(x).value;
  const std::size_t target = 2 * representative(y).value + 1;
  std::map<std::size_t, std::size_t> parent{{source, source}};
  std::deque<std::size_t> queue{source};
  while (!queue.empty() && !parent.contains(target)) {
    auto node = queue.front();
    queue.pop_front();
    for (auto next : adjacent[node]) {
      if (parent.contains(next)) continue;
      parent[next] = node;
      queue.push_back(next);
    }
  }
  if (!parent.contains(target)) {
    throw DerivationError("meets " + name(x) + "||" + name(y) + " holds but has no M1 derivation");
  }

  std::vector<VarId> path;
  for (auto node = target;; node = parent[node]) {
    path.push_back(VarId{static_cast<std::uint32_t>(node / 2)});
    if (node == source) break;
  }
  std::reverse(path.begin(), path.end());

  // path = a0 b0 a1 b1 ... ak bk; each step extends a0 to the next right node.
  std::vector<TraceStep> steps;
  const VarId a0 = path[0];
  for (std::size_t i = 2; i + 1 < path.size(); i += 2) {
    VarId prev = path[i - 1];
    VarId ai = path[i];
    VarId bi = path[i + 1];
    steps.push_back({Rule::m1,
                     "",
                     {Literal::meets(ai, prev), Literal::meets(ai, bi), Literal::meets(a0, prev)},
                     {Literal::meets(a0, bi)}});
  }
  return steps;
}

void DerivationState::saturate() {
  std::map<std::pair<std::size_t, std::size_t>, VarId> by_span;
  for (VarId v : representatives()) {
    auto key = std::pair{point_class(start_of(v)), point_class(end_of(v))};
    auto [it, inserted] = by_span.emplace(key, v);
    if (inserted) continue;
    VarId first = it->second;
    TraceStep step{Rule::m4, "", {}, {Literal::eq(first, v)}};
    auto before = ending_at(start_of(v));
    auto after = starting_at(end_of(v));
    if (!before.empty()) {
      step.premises.push_back(Literal::meets(before.front(), first));
    }
    if (!after.empty()) step.premises.push_back(Literal::meets(first, after.front()));
    if (!before.empty()) step.premises.push_back(Literal::meets(before.front(), v));
    if (!after.empty()) step.premises.push_back(Literal::meets(v, after.front()));
    union_vars(first.value, v.value);
    record(std::move(step));
  }
  if (!contradiction_) detect_cycle();
}

void DerivationState::detect_cycle() {
  auto reps = representatives();
  for (VarId v : reps) {
    if (point_class(start_of(v)) == point_class(end_of(v))) {
      contradiction_ = Contradiction{{v}};
      return;
    }
  }

  auto graph = order_graph();
  enum class Mark : std::uint8_t { fresh, active, done };
  std::vector<Mark> mark(graph.size(), Mark::fresh);
  std::vector<std::pair<std::size_t, VarId>> stack;  // (node, var that entered it)
  std::optional<std::vector<VarId>> found;

  std::function<void(std::size_t)> visit = [&](std::size_t node) {
    mark[node] = Mark::active;
    for (const auto& [next, var] : graph[node]) {
      if (found) return;
      if (mark[next] == Mark::active) {
        std::vector<VarId> cycle;
        auto it = std::find_if(stack.begin(), stack.end(), [&](const auto& e) { return e.first == next; });
        for (++it; it != stack.end(); ++it) cycle.push_back(it->second);
        cycle.push_back(var);
        found = std::move(cycle);
        return;
      }
      if (mark[next] == Mark::fresh) {
        stack.emplace_back(next, var);
        visit(next);
        stack.pop_back();
      }
    }
    mark[node] = Mark::done;
  };

  for (VarId v : reps) {
    auto start = point_class(start_of(v));
    if (mark[start] != Mark::fresh) continue;
    stack.assign(1, {start, v});
    visit(start);
    if (found) {
      contradiction_ = Contradiction{std::move(*found)};
      return;
    }
  }
}

std::string DerivationState::format(const Literal& lit) const {
  if (lit.kind == Literal::Kind::eq) return name(lit.lhs) + " = " + name(lit.rhs);
  return name(lit.lhs) + "||" + name(lit.rhs);
}

VarId add_m3_neighbor(DerivationState& state, VarId x, Side side) {
  VarId c = state.add_var("c", VarOrigin::m3_fresh);
  auto lit = side == Side::start ? Literal::meets(c, x) : Literal::meets(x, c);
  state.assert_meets(lit.lhs, lit.rhs);
  state.record({Rule::m3, "", {}, {lit}});
  return c;
}

VarId add_m5_sum(DerivationState& state, VarId x, VarId y) {
  if (!state.holds_meets(x, y)) {
    throw DerivationError("M5 needs " + state.name(x) + "||" + state.name(y));
  }
  auto explicit_neighbor = [&](bool left) -> std::optional<VarId> {
    std::optional<VarId> best;
    for (const auto& lit : state.explicit_literals()) {
      if (left && state.same(lit.rhs, x) && (!best || lit.lhs < *best)) best = lit.lhs;
      if (!left && state.same(lit.lhs, y) && (!best || lit.rhs < *best)) best = lit.rhs;
    }
    return best;
  };
  auto left = explicit_neighbor(true);
  auto right = explicit_neighbor(false);

  VarId sum = state.add_var(state.name(x) + state.name(y), VarOrigin::m5_sum);
  state.bind_span(sum, x, y);

  TraceStep step{Rule::m5, state.name(x) + "," + state.name(y), {}, {}};
  if (left) {
    step.premises.push_back(Literal::meets(*left, x));
  } else {
    left = state.add_var("r", VarOrigin::m5_sum);
    state.assert_meets(*left, x);
    step.conclusions.push_back(Literal::meets(*left, x));
  }
  step.premises.push_back(Literal::meets(x, y));
  const bool fresh_right = !right;
  if (right) {
    step.premises.push_back(Literal::meets(y, *right));
  } else {
    right = state.add_var("s", VarOrigin::m5_sum);
    state.assert_meets(y, *right);
  }
  state.assert_meets(*left, sum);
  state.assert_meets(sum, *right);
  step.conclusions.push_back(Literal::meets(*left, sum));
  step.conclusions.push_back(Literal::meets(sum, *right));
  if (fresh_right) step.conclusions.push_back(Literal::meets(y, *right));
  state.record(std::move(step));
  return sum;
}

} // namespace allen
