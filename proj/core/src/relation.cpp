#include "allen/relation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace allen {

namespace {

constexpr std::array<std::string_view, kRelationCount> kNames = {
    "b", "m", "ov", "fi", "di", "s", "e", "si", "d", "f", "ovi", "mi", "bi"};

constexpr CompositionTable make_builtin_table() {
  using enum BasicRelation;
  constexpr auto A1 = named_union(UnionName::alpha1);
  constexpr auto A2 = named_union(UnionName::alpha2);
  constexpr auto A3 = named_union(UnionName::alpha3);
  constexpr auto A4 = named_union(UnionName::alpha4);
  constexpr auto A5 = named_union(UnionName::alpha5);
  constexpr auto B1 = named_union(UnionName::beta1);
  constexpr auto B2 = named_union(UnionName::beta2);
  constexpr auto G = named_union(UnionName::gamma);
  constexpr auto D = named_union(UnionName::delta);
  constexpr auto A1i = A1.converse();
  constexpr auto A2i = A2.converse();
  constexpr auto A3i = A3.converse();
  constexpr auto B1i = B1.converse();
  constexpr auto B2i = B2.converse();
  constexpr auto S = [](BasicRelation r) { return RelationSet::single(r); };

  // Rows r1 and columns r2 both in display order:
  //   b  m  ov  fi  di  s  e  si  d  f  ovi  mi  bi
  const std::array<std::array<RelationSet, kRelationCount>, kRelationCount> rows = {{
      /* b   */ {S(b), S(b), S(b), S(b), S(b), S(b), S(b), S(b), B1, B1, B1, B1, D},
      /* m   */ {S(b), S(b), S(b), S(b), S(b), S(m), S(m), S(m), A1, A1, A1, A4, B1i},
      /* ov  */ {S(b), S(b), A3, A3, B2, S(ov), S(ov), A2, A1, A1, G, A1i, B1i},
      /* fi  */ {S(b), S(m), S(ov), S(fi), S(di), S(ov), S(fi), S(di), A1, A4, A1i, A1i, B1i},
      /* di  */ {B2, A2, A2, S(di), S(di), A2, S(di), S(di), G, A1i, A1i, A1i, B1i},
      /* s   */ {S(b), S(b), A3, A3, B2, S(s), S(s), A5, S(d), S(d), A2i, S(mi), S(bi)},
      /* e   */ {S(b), S(m), S(ov), S(fi), S(di), S(s), S(e), S(si), S(d), S(f), S(ovi), S(mi), S(bi)},
      /* si  */ {B2, A2, A2, S(di), S(di), A5, S(si), S(si), A2i, S(ovi), S(ovi), S(mi), S(bi)},
      /* d   */ {S(b), S(b), B1, B1, D, S(d), S(d), B2i, S(d), S(d), B2i, S(bi), S(bi)},
      /* f   */ {S(b), S(m), A1, A4, B1i, S(d), S(f), A3i, S(d), S(f), A3i, S(bi), S(bi)},
      /* ovi */ {B2, A2, G, A1i, B1i, A2i, S(ovi), A3i, A2i, S(ovi), A3i, S(bi), S(bi)},
      /* mi  */ {B2, A5, A2i, S(mi), S(bi), A2i, S(mi), S(bi), A2i, S(mi), S(bi), S(bi), S(bi)},
      /* bi  */ {D, B2i, B2i, S(bi), S(bi), B2i, S(bi), S(bi), B2i, S(bi), S(bi), S(bi), S(bi)},
  }};

  CompositionTable table;
  for (std::size_t i = 0; i < kRelationCount; ++i)
    for (std::size_t j = 0; j < kRelationCount; ++j) table.set(relation_at(i), relation_at(j), rows[i][j]);
  return table;
}

constexpr CompositionTable kBuiltinTable = make_builtin_table();

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string valid_names() {
  std::string out;
  for (auto n : kNames) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

} // namespace

std::string_view name(BasicRelation r) { return kNames[index_of(r)]; }

BasicRelation parse_relation_token(std::string_view text) {
  std::string token = lowercase(text);
  bool inverse = false;
  if (token.size() > 3 && token.ends_with("^-1")) {
    inverse = true;
    token.resize(token.size() - 3);
  }
  for (BasicRelation r : kAllRelations) {
    if (name(r) != token) continue;
    // `bi^-1` and friends are not accepted; only base names take the suffix.
    if (inverse) {
      using enum BasicRelation;
      if (!RelationSet{b, m, ov, s, d, f, e}.contains(r)) break;
      return converse(r);
    }
    return r;
  }
  throw ParseError("unknown relation '" + std::string(text) + "' (valid: " + valid_names() +
                   ", or <name>^-1)");
}

std::string to_string(RelationSet set) {
  std::string out;
  for (BasicRelation r : set) {
    if (!out.empty()) out += ' ';
    out += name(r);
  }
  return out;
}

RelationSet parse_relation_set(std::string_view text) {
  std::istringstream in{std::string(text)};
  RelationSet set;
  std::string token;
  while (in >> token) set.insert(parse_relation_token(token));
  return set;
}

std::string NamedUnion::label() const {
  static constexpr std::array<std::string_view, 9> kLabels = {"α₁", "α₂", "α₃", "α₄", "α₅",
                                                              "β₁", "β₂", "γ",  "δ"};
  std::string out(kLabels[static_cast<std::size_t>(name)]);
  if (inverse) out += "⁻¹";
  return out;
}

std::string NamedUnion::ascii_label() const {
  static constexpr std::array<std::string_view, 9> kLabels = {
      "alpha1", "alpha2", "alpha3", "alpha4", "alpha5", "beta1", "beta2", "gamma", "delta"};
  std::string out(kLabels[static_cast<std::size_t>(name)]);
  if (inverse) out += "^-1";
  return out;
}

std::optional<NamedUnion> identify_union(RelationSet set) {
  for (UnionName n : kAllUnionNames) {
    if (named_union(n) == set) return NamedUnion{n, false, set};
  }
  for (UnionName n : kAllUnionNames) {
    if (named_union(n, true) == set) return NamedUnion{n, true, set};
  }
  return std::nullopt;
}

const CompositionTable& builtin_table() { return kBuiltinTable; }

RelationSet compose_sets(RelationSet lhs, RelationSet rhs) {
  RelationSet out;
  for (BasicRelation r1 : lhs) {
    for (BasicRelation r2 : rhs) {
      out |= kBuiltinTable.at(r1, r2);
      if (out.is_full()) return out;
    }
  }
  return out;
}

} // namespace allen
