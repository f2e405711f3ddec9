#include "allen/derivation.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace allen {

namespace {

constexpr std::size_t kMaxDepth = 8;

std::string join_literals(const DerivationState& state, const std::vector<Literal>& lits, std::string_view sep) {
  std::string out;
  for (const auto& lit : lits) {
    if (!out.empty()) out += sep;
    out += state.format(lit);
  }
  return out;
}

VarId explicit_left(DerivationState& state, VarId v) {
  std::optional<VarId> best;
  for (const auto& lit : state.explicit_literals()) {
    if (state.same(lit.rhs, v) && (!best || lit.lhs < *best)) best = lit.lhs;
  }
  return best ? *best : add_m3_neighbor(state, v, Side::start);
}

VarId explicit_right(DerivationState& state, VarId v) {
  std::optional<VarId> best;
  for (const auto& lit : state.explicit_literals()) {
    if (state.same(lit.lhs, v) && (!best || lit.rhs < *best)) best = lit.rhs;
  }
  return best ? *best : add_m3_neighbor(state, v, Side::end);
}

std::optional<SplitKind> undetermined(const DerivationState& state, VarId p, VarId q) {
  if (!state.compare(start_of(p), start_of(q))) return SplitKind::start_start;
  if (!state.compare(end_of(p), end_of(q))) return SplitKind::end_end;
  if (!state.compare(end_of(p), start_of(q))) return SplitKind::end_start;
  if (!state.compare(start_of(p), end_of(q))) return SplitKind::start_end;
  return std::nullopt;
}

std::pair<Literal, Literal> split_literals(DerivationState& state, SplitKind kind, VarId p, VarId q) {
  switch (kind) {
    case SplitKind::start_start: {
      VarId x = explicit_left(state, p);
      VarId y = explicit_left(state, q);
      return {Literal::meets(x, p), Literal::meets(y, q)};
    }
    case SplitKind::end_end: {
      VarId x = explicit_right(state, p);
      VarId y = explicit_right(state, q);
      return {Literal::meets(p, x), Literal::meets(q, y)};
    }
    case SplitKind::end_start: {
      VarId x = explicit_right(state, p);
      VarId y = explicit_left(state, q);
      return {Literal::meets(p, x), Literal::meets(y, q)};
    }
    case SplitKind::start_end: {
      VarId x = explicit_right(state, q);
      VarId y = explicit_left(state, p);
      return {Literal::meets(q, x), Literal::meets(y, p)};
    }
  }
  throw DerivationError("unknown split kind");
}

void conclude(DerivationNode& node, VarId p, VarId q) {
  std::vector<std::pair<DerivationState, SchemaMatch>> found;
  for (BasicRelation r : kAllRelations) {
    DerivationState copy = node.state;
    if (!construct_witnesses(copy, r, p, q)) continue;
    copy.saturate();
    if (copy.contradictory()) continue;
    if (auto match = match_schema(copy, r, p, q)) found.emplace_back(std::move(copy), std::move(*match));
  }
  if (found.size() != 1) {
    std::string names;
    for (const auto& [s, match] : found) names += " " + std::string(name(match.relation));
    throw DerivationError("leaf matches " + std::to_string(found.size()) + " relation schemas:" + names);
  }
  auto& [state, match] = found.front();
  for (const auto& step : match.m1_steps) state.record(step);
  node.state = std::move(state);
  node.conclusion = std::move(match);
}

void expand(DerivationNode& node, VarId p, VarId q, std::size_t depth) {
  if (node.state.contradictory()) {
    node.refutation = explain_contradiction(node.state);
    return;
  }
  auto kind = undetermined(node.state, p, q);
  if (!kind) {
    conclude(node, p, q);
    return;
  }
  if (depth >= kMaxDepth) throw DerivationError("derivation exceeds the split depth limit");
  auto literals = split_literals(node.state, *kind, p, q);
  node.split = kind;
  node.split_literals = literals;
  const std::size_t first = node.state.trace().size();
  for (auto& child_state : split_m2(node.state, literals.first, literals.second)) {
    DerivationNode child;
    child.state = std::move(child_state);
    child.first_step = first;
    expand(child, p, q, depth + 1);
    node.children.push_back(std::move(child));
  }
}

void collect_leaves(const DerivationNode& node, std::vector<const DerivationNode*>& out) {
  if (node.is_leaf()) {
    out.push_back(&node);
    return;
  }
  for (const auto& child : node.children) collect_leaves(child, out);
}

std::size_t depth_of(const DerivationNode& node) {
  std::size_t deepest = 0;
  for (const auto& child : node.children) deepest = std::max(deepest, 1 + depth_of(child));
  return deepest;
}

void format_node(const DerivationTree& tree, const DerivationNode& node, std::size_t indent, std::string& out) {
  const auto& state = node.state;
  auto line = [&](std::size_t level, const std::string& text) {
    out += std::string(2 * level, ' ') + text + "\n";
  };
  auto steps = node.steps();
  std::size_t level = indent;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    // The first step of a split child is its case; the rest nest under it.
    line(level, format_step(state, steps[i]));
    if (i == 0 && steps[i].rule == Rule::m2) ++level;
  }
  if (node.conclusion) {
    std::string text = "⊢ (" + state.name(tree.p) + "," + state.name(tree.q) + ") ∈ " +
                       std::string(name(node.conclusion->relation));
    if (!node.conclusion->bindings.empty()) {
      text += " via {";
      for (std::size_t i = 0; i < node.conclusion->bindings.size(); ++i) {
        if (i) text += ", ";
        text += node.conclusion->bindings[i].first + "→" + state.name(node.conclusion->bindings[i].second);
      }
      text += "}";
    }
    line(level, text);
  }
  if (node.split_literals) {
    line(level, "M2(" + state.format(node.split_literals->first) + ", " + state.format(node.split_literals->second) +
                    ")");
    for (const auto& child : node.children) format_node(tree, child, level, out);
  }
}

} // namespace

std::string_view describe(SplitKind kind) {
  switch (kind) {
    case SplitKind::start_start: return "start/start";
    case SplitKind::end_end: return "end/end";
    case SplitKind::end_start: return "end/start";
    case SplitKind::start_end: return "start/end";
  }
  return "?";
}

std::array<DerivationState, 3> split_m2(const DerivationState& state, Literal first, Literal second) {
  if (first.kind != Literal::Kind::meets || second.kind != Literal::Kind::meets) {
    throw DerivationError("M2 applies to meets literals only");
  }
  if (!state.holds(first) || !state.holds(second)) {
    throw DerivationError("M2 premises " + state.format(first) + ", " + state.format(second) + " do not hold");
  }
  if (state.same(first.lhs, second.lhs) && state.same(first.rhs, second.rhs)) {
    throw DerivationError("M2 needs two distinct literals, got " + state.format(first) + " twice");
  }
  const VarId a = first.lhs, b = first.rhs, c = second.lhs, d = second.rhs;
  const std::vector<Literal> premises = {first, second};

  std::array<DerivationState, 3> out = {state, state, state};

  out[0].assert_meets(a, d);
  out[0].record({Rule::m2, "=", premises, {Literal::meets(a, d)}});

  VarId t1 = out[1].add_var("t", VarOrigin::m2_witness);
  out[1].assert_meets(a, t1);
  out[1].assert_meets(t1, d);
  out[1].record({Rule::m2, "<", premises, {Literal::meets(a, t1), Literal::meets(t1, d)}});

  VarId t2 = out[2].add_var("t", VarOrigin::m2_witness);
  out[2].assert_meets(c, t2);
  out[2].assert_meets(t2, b);
  out[2].record({Rule::m2, ">", premises, {Literal::meets(c, t2), Literal::meets(t2, b)}});

  for (auto& child : out) child.saturate();
  return out;
}

Refutation explain_contradiction(DerivationState& state) {
  if (!state.contradiction()) throw DerivationError("state is not contradictory");
  std::vector<VarId> cycle = state.contradiction()->cycle;

  while (cycle.size() >= 3) {
    VarId sum = add_m5_sum(state, cycle[0], cycle[1]);
    cycle.erase(cycle.begin(), cycle.begin() + 2);
    cycle.insert(cycle.begin(), sum);
  }

  Refutation out;
  auto justify = [&](Literal lit) {
    auto steps = state.m1_derivation(lit.lhs, lit.rhs);
    for (auto& step : *steps) state.record(std::move(step));
    out.premises.push_back(lit);
  };

  if (cycle.size() == 2) {
    out.property = "meets_asym";
    justify(Literal::meets(cycle[0], cycle[1]));
    justify(Literal::meets(cycle[1], cycle[0]));
  } else {
    const VarId x = cycle.front();
    std::optional<std::pair<VarId, VarId>> best;
    std::size_t best_cost = std::numeric_limits<std::size_t>::max();
    for (VarId a : state.ending_at(start_of(x))) {
      if (state.same(a, x)) continue;
      for (VarId b : state.starting_at(end_of(x))) {
        if (state.same(b, x)) continue;
        std::size_t cost = state.m1_derivation(a, x)->size() + state.m1_derivation(x, b)->size() +
                           state.m1_derivation(a, b)->size();
        if (cost < best_cost) {
          best_cost = cost;
          best = std::pair{a, b};
        }
      }
    }
    if (best) {
      out.property = "meets_atrans";
      justify(Literal::meets(best->first, x));
      justify(Literal::meets(x, best->second));
      justify(Literal::meets(best->first, best->second));
    } else {
      out.property = "meets_irrefl";
      justify(Literal::meets(x, x));
    }
  }
  state.record({Rule::refute, out.property, out.premises, {}});
  return out;
}

RelationSet DerivationTree::conclusions() const {
  RelationSet out;
  for (const auto* leaf : leaves()) {
    if (leaf->conclusion) out.insert(leaf->conclusion->relation);
  }
  return out;
}

std::size_t DerivationTree::depth() const { return depth_of(root); }

std::vector<const DerivationNode*> DerivationTree::leaves() const {
  std::vector<const DerivationNode*> out;
  collect_leaves(root, out);
  return out;
}

RuleCounts count_rules(std::span<const TraceStep> steps) {
  RuleCounts counts;
  for (const auto& step : steps) {
    switch (step.rule) {
      case Rule::m1: ++counts.m1; break;
      case Rule::m2: ++counts.m2; break;
      case Rule::m3: ++counts.m3; break;
      case Rule::m4: ++counts.m4; break;
      case Rule::m5: ++counts.m5; break;
      default: break;
    }
  }
  return counts;
}

DerivationTree derive_composition(BasicRelation r1, BasicRelation r2) {
  DerivationTree tree;
  auto& state = tree.root.state;
  VarId p = state.add_var("p", VarOrigin::given);
  VarId z = state.add_var("z", VarOrigin::given);
  VarId q = state.add_var("q", VarOrigin::given);
  tree.p = p;
  tree.q = q;
  tree.premise = "(p,z) ∈ " + std::string(name(r1)) + ", (z,q) ∈ " + std::string(name(r2));
  instantiate_schema(state, r1, p, z);
  instantiate_schema(state, r2, z, q);
  state.saturate();
  expand(tree.root, p, q, 0);
  return tree;
}

DerivationTree derive_je() {
  DerivationTree tree;
  auto& state = tree.root.state;
  VarId p = state.add_var("p", VarOrigin::given);
  VarId q = state.add_var("q", VarOrigin::given);
  tree.p = p;
  tree.q = q;
  tree.premise = "p, q arbitrary";
  add_m3_neighbor(state, p, Side::start);
  add_m3_neighbor(state, q, Side::start);
  add_m3_neighbor(state, p, Side::end);
  add_m3_neighbor(state, q, Side::end);
  state.saturate();
  expand(tree.root, p, q, 0);
  return tree;
}

PdProof verify_pd(BasicRelation r1, BasicRelation r2) {
  if (r1 == r2) throw std::invalid_argument("verify_pd needs two different relations");
  DerivationState state;
  VarId p = state.add_var("p", VarOrigin::given);
  VarId q = state.add_var("q", VarOrigin::given);
  instantiate_schema(state, r1, p, q);
  instantiate_schema(state, r2, p, q);
  state.saturate();
  if (!state.contradictory()) {
    throw DerivationError(std::string(name(r1)) + " and " + std::string(name(r2)) + " are not refuted");
  }
  Refutation refutation = explain_contradiction(state);
  return {r1, r2, std::move(state), std::move(refutation)};
}

DerivationReport verify_table_by_derivation(const CompositionTable& expected) {
  DerivationReport report;
  for (BasicRelation r1 : kAllRelations) {
    for (BasicRelation r2 : kAllRelations) {
      ++report.entries;
      std::string entry = std::string(name(r1)) + " ∘ " + std::string(name(r2));
      try {
        auto tree = derive_composition(r1, r2);
        for (const auto* leaf : tree.leaves()) {
          ++report.leaves;
          if (leaf->refutation) ++report.refuted_leaves;
        }
        report.max_depth = std::max(report.max_depth, tree.depth());
        auto got = tree.conclusions();
        if (got == expected.at(r1, r2)) {
          ++report.matches;
        } else {
          report.mismatches.push_back(entry + ": derived {" + to_string(got) + "}, expected {" +
                                      to_string(expected.at(r1, r2)) + "}");
        }
      } catch (const DerivationError& err) {
        report.mismatches.push_back(entry + ": " + err.what());
      }
    }
  }
  return report;
}

std::string format_step(const DerivationState& state, const TraceStep& step) {
  const auto premises = "⟦" + join_literals(state, step.premises, "; ") + "⟧";
  const auto conclusions = join_literals(state, step.conclusions, " ∧ ");
  switch (step.rule) {
    case Rule::schema: return step.label + " = {" + join_literals(state, step.conclusions, ", ") + "}";
    case Rule::m1: return "M1: " + premises + " ⟹ " + conclusions;
    case Rule::m2: return step.label + " " + conclusions;
    case Rule::m3: return "M3: " + conclusions;
    case Rule::m4: return "M4: " + premises + " ⟹ " + conclusions;
    case Rule::m5: return "M5(" + step.label + "): " + premises + " ⟹ " + conclusions;
    case Rule::refute: return "⊥ (rule violated: " + step.label + " on " + join_literals(state, step.premises, ", ") + ")";
  }
  return "";
}

std::string format_tree(const DerivationTree& tree) {
  std::string out = tree.premise + "\n";
  format_node(tree, tree.root, 1, out);
  return out;
}

} // namespace allen
