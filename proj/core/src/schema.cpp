#include "allen/schema.hpp"

#include <array>
#include <algorithm>
#include <functional>
#include <map>

namespace allen {

namespace {

constexpr auto M = Literal::Kind::meets;
constexpr auto P = kSlotP;
constexpr auto Q = kSlotQ;

RelationSchema base_schema(BasicRelation r) {
  using enum BasicRelation;
  switch (r) {
    case e: return {e, {}, {{Literal::Kind::eq, P, Q}}};
    case m: return {m, {}, {{M, P, Q}}};
    case b: return {b, {"t"}, {{M, P, 0}, {M, 0, Q}}};
    case ov:
      // k=0 l=1 u=2 v=3 t=4
      return {ov,
              {"k", "l", "u", "v", "t"},
              {{M, 0, P}, {M, P, 2}, {M, 2, 3}, {M, 0, 1}, {M, 1, Q}, {M, Q, 3}, {M, 1, 4}, {M, 4, 2}}};
    case s:
      // k=0 u=1 v=2
      return {s, {"k", "u", "v"}, {{M, 0, P}, {M, P, 1}, {M, 1, 2}, {M, 0, Q}, {M, Q, 2}}};
    case f:
      // k=0 l=1 u=2
      return {f, {"k", "l", "u"}, {{M, 0, 1}, {M, 1, P}, {M, P, 2}, {M, 0, Q}, {M, Q, 2}}};
    case d:
      // k=0 l=1 u=2 v=3
      return {d,
              {"k", "l", "u", "v"},
              {{M, 0, 1}, {M, 1, P}, {M, P, 2}, {M, 2, 3}, {M, 0, Q}, {M, Q, 3}}};
    default: break;
  }
  RelationSchema inv = base_schema(converse(r));
  inv.relation = r;
  auto swap = [](int slot) { return slot == P ? Q : slot == Q ? P : slot; };
  for (auto& lit : inv.literals) {
    lit.lhs = swap(lit.lhs);
    lit.rhs = swap(lit.rhs);
  }
  return inv;
}

const std::array<RelationSchema, kRelationCount>& all_schemas() {
  static const auto schemas = [] {
    std::array<RelationSchema, kRelationCount> out;
    for (BasicRelation r : kAllRelations) out[index_of(r)] = base_schema(r);
    return out;
  }();
  return schemas;
}

VarId resolve(int slot, VarId p, VarId q, const std::vector<VarId>& bound) {
  if (slot == kSlotP) return p;
  if (slot == kSlotQ) return q;
  return bound[static_cast<std::size_t>(slot)];
}

std::string slot_name(const RelationSchema& schema, int slot, std::string_view p, std::string_view q) {
  if (slot == kSlotP) return std::string(p);
  if (slot == kSlotQ) return std::string(q);
  return schema.bound[static_cast<std::size_t>(slot)];
}

/// Endpoint anchors of each bound slot in terms of the p/q endpoints, taken
/// from the schema's own point identifications.
struct Anchors {
  // Per bound slot: start and end anchor, each one of 4 p/q points or -1.
  std::vector<std::array<int, 2>> slot;
  // p/q points (0 S(p), 1 E(p), 2 S(q), 3 E(q)) the schema identifies.
  std::vector<std::pair<int, int>> equal;
};

Anchors anchors_of(const RelationSchema& schema) {
  const std::size_t vars = 2 + schema.bound.size();
  std::vector<std::size_t> parent(2 * vars);
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i];
    return i;
  };
  auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };
  auto index = [](int slot) -> std::size_t { return slot == kSlotP ? 0 : slot == kSlotQ ? 1 : 2 + slot; };
  auto start = [&](int slot) { return 2 * index(slot); };
  auto end = [&](int slot) { return 2 * index(slot) + 1; };

  for (const auto& lit : schema.literals) {
    if (lit.kind == Literal::Kind::eq) {
      unite(start(lit.lhs), start(lit.rhs));
      unite(end(lit.lhs), end(lit.rhs));
    } else {
      unite(end(lit.lhs), start(lit.rhs));
    }
  }

  const std::array<std::size_t, 4> pq = {start(P), end(P), start(Q), end(Q)};
  auto anchor = [&](std::size_t point) {
    for (int i = 0; i < 4; ++i)
      if (find(pq[i]) == find(point)) return i;
    return -1;
  };

  Anchors out;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (find(pq[i]) == find(pq[j])) out.equal.emplace_back(i, j);
  for (std::size_t i = 0; i < schema.bound.size(); ++i) {
    int slot = static_cast<int>(i);
    out.slot.push_back({anchor(start(slot)), anchor(end(slot))});
  }
  return out;
}

Point pq_point(int anchor, VarId p, VarId q) {
  switch (anchor) {
    case 0: return start_of(p);
    case 1: return end_of(p);
    case 2: return start_of(q);
    default: return end_of(q);
  }
}

} // namespace

const RelationSchema& schema_for(BasicRelation r) { return all_schemas()[index_of(r)]; }

std::string format_schema(BasicRelation r, std::string_view p, std::string_view q) {
  const auto& schema = schema_for(r);
  std::string out = "L_" + std::string(name(r)) + "(" + std::string(p) + "," + std::string(q) + ") = {";
  for (std::size_t i = 0; i < schema.literals.size(); ++i) {
    const auto& lit = schema.literals[i];
    if (i) out += ", ";
    out += slot_name(schema, lit.lhs, p, q);
    out += lit.kind == Literal::Kind::eq ? " = " : "||";
    out += slot_name(schema, lit.rhs, p, q);
  }
  return out + "}";
}

std::vector<VarId> instantiate_schema(DerivationState& state, BasicRelation r, VarId p, VarId q) {
  const auto& schema = schema_for(r);
  std::vector<VarId> bound;
  for (const auto& hint : schema.bound) bound.push_back(state.add_var(hint, VarOrigin::schema));
  TraceStep step{Rule::schema, "L_" + std::string(name(r)) + "(" + state.name(p) + "," + state.name(q) + ")", {}, {}};
  for (const auto& lit : schema.literals) {
    VarId a = resolve(lit.lhs, p, q, bound);
    VarId b = resolve(lit.rhs, p, q, bound);
    if (lit.kind == Literal::Kind::eq) {
      state.assert_eq(a, b);
      step.conclusions.push_back(Literal::eq(a, b));
    } else {
      state.assert_meets(a, b);
      step.conclusions.push_back(Literal::meets(a, b));
    }
  }
  state.record(std::move(step));
  return bound;
}

std::optional<SchemaMatch> match_schema(const DerivationState& state, BasicRelation r, VarId p, VarId q) {
  const auto& schema = schema_for(r);
  const auto candidates = state.representatives();
  const std::size_t n = schema.bound.size();

  // Literals grouped by the last slot they mention, so each is checked as
  // soon as all of its variables are assigned. Group 0 holds p/q-only ones.
  std::vector<std::vector<const SchemaLiteral*>> ready(n + 1);
  for (const auto& lit : schema.literals) {
    int last = std::max(lit.lhs, lit.rhs);
    ready[last < 0 ? 0 : static_cast<std::size_t>(last) + 1].push_back(&lit);
  }

  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<TraceStep>> m1_cache;
  auto cost_of = [&](VarId a, VarId b) -> const std::vector<TraceStep>& {
    auto key = std::pair{a.value, b.value};
    auto it = m1_cache.find(key);
    if (it == m1_cache.end()) it = m1_cache.emplace(key, *state.m1_derivation(a, b)).first;
    return it->second;
  };

  std::vector<VarId> bound(n);
  std::optional<std::vector<VarId>> best;
  std::size_t best_cost = 0;

  // Checks the literals completed at `level`, adding their M1 cost; false if any fails.
  auto check = [&](std::size_t level, std::size_t& cost) {
    for (const auto* lit : ready[level]) {
      VarId a = resolve(lit->lhs, p, q, bound);
      VarId b = resolve(lit->rhs, p, q, bound);
      if (lit->kind == Literal::Kind::eq) {
        if (!state.same(a, b)) return false;
        continue;
      }
      if (!state.holds_meets(a, b)) return false;
      cost += cost_of(a, b).size();
    }
    return true;
  };

  std::function<void(std::size_t, std::size_t)> search = [&](std::size_t slot, std::size_t cost) {
    if (best && cost >= best_cost) return;
    if (slot == n) {
      best = bound;
      best_cost = cost;
      return;
    }
    // Ties go to the most recently introduced witness.
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
      bound[slot] = *it;
      std::size_t next = cost;
      if (check(slot + 1, next)) search(slot + 1, next);
    }
  };

  std::size_t base = 0;
  if (!check(0, base)) return std::nullopt;
  search(0, base);
  if (!best) return std::nullopt;

  bound = *best;
  SchemaMatch match{r, {}, {}};
  for (std::size_t i = 0; i < n; ++i) match.bindings.emplace_back(schema.bound[i], bound[i]);
  for (const auto& lit : schema.literals) {
    if (lit.kind != Literal::Kind::meets) continue;
    const auto& steps = cost_of(resolve(lit.lhs, p, q, bound), resolve(lit.rhs, p, q, bound));
    match.m1_steps.insert(match.m1_steps.end(), steps.begin(), steps.end());
  }
  return match;
}

bool construct_witnesses(DerivationState& state, BasicRelation r, VarId p, VarId q) {
  const auto& schema = schema_for(r);
  const auto anchors = anchors_of(schema);

  for (const auto& [i, j] : anchors.equal) {
    if (state.point_class(pq_point(i, p, q)) != state.point_class(pq_point(j, p, q))) return false;
  }

  for (const auto& [from, to] : anchors.slot) {
    if (from >= 0 && to >= 0) {
      Point a = pq_point(from, p, q);
      Point b = pq_point(to, p, q);
      if (state.compare(a, b) != PointOrder::before) return false;
      bool present = false;
      for (VarId v : state.starting_at(a)) {
        if (state.point_class(end_of(v)) == state.point_class(b)) present = true;
      }
      if (present) continue;
      auto chain = state.interval_chain(a, b);
      if (!chain) return false;
      VarId acc = chain->front();
      for (std::size_t k = 1; k < chain->size(); ++k) acc = add_m5_sum(state, acc, (*chain)[k]);
    } else if (to >= 0) {
      Point b = pq_point(to, p, q);
      if (!state.ending_at(b).empty()) continue;
      add_m3_neighbor(state, state.starting_at(b).front(), Side::start);
    } else if (from >= 0) {
      Point a = pq_point(from, p, q);
      if (!state.starting_at(a).empty()) continue;
      add_m3_neighbor(state, state.ending_at(a).front(), Side::end);
    }
  }
  return true;
}

} // namespace allen
