#include "allen/table_io.hpp"

#include <sstream>
#include <vector>

namespace allen {

namespace {

constexpr std::string_view kCorner = "r1\\r2";

std::string cell_text(RelationSet set) {
  std::string out;
  for (BasicRelation r : set) {
    if (!out.empty()) out += '|';
    out += name(r);
  }
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  parts.push_back(std::move(current));
  return parts;
}

} // namespace

std::string table_to_csv(const CompositionTable& table) {
  std::ostringstream out;
  out << kCorner;
  for (BasicRelation r2 : kAllRelations) out << ',' << name(r2);
  out << '\n';
  for (BasicRelation r1 : kAllRelations) {
    out << name(r1);
    for (BasicRelation r2 : kAllRelations) out << ',' << cell_text(table.at(r1, r2));
    out << '\n';
  }
  return out.str();
}

std::string table_to_markdown(const CompositionTable& table) {
  std::ostringstream out;
  out << "| r₁ \\ r₂ |";
  for (BasicRelation r2 : kAllRelations) out << ' ' << name(r2) << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < kRelationCount; ++i) out << "---|";
  out << '\n';
  for (BasicRelation r1 : kAllRelations) {
    out << "| " << name(r1) << " |";
    for (BasicRelation r2 : kAllRelations) {
      RelationSet entry = table.at(r1, r2);
      std::string text;
      if (auto atom = entry.atom()) {
        text = std::string(name(*atom));
      } else if (auto named = identify_union(entry)) {
        text = named->label();
      } else {
        text = "(" + to_string(entry) + ")";
      }
      out << ' ' << text << " |";
    }
    out << '\n';
  }
  return out.str();
}

CompositionTable table_from_csv(std::string_view csv) {
  std::vector<std::string> lines;
  for (auto& line : split(csv, '\n')) {
    if (!line.empty()) lines.push_back(std::move(line));
  }
  if (lines.size() != kRelationCount + 1) {
    throw ParseError("table CSV must have 14 non-empty lines, got " + std::to_string(lines.size()));
  }
  auto header = split(lines[0], ',');
  if (header.size() != kRelationCount + 1) throw ParseError("table CSV header must have 14 cells");
  std::vector<BasicRelation> columns;
  for (std::size_t j = 1; j < header.size(); ++j) columns.push_back(parse_relation_token(header[j]));

  CompositionTable table;
  std::array<bool, kRelationCount * kRelationCount> seen{};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto cells = split(lines[i], ',');
    if (cells.size() != kRelationCount + 1) {
      throw ParseError("table CSV line " + std::to_string(i + 1) + " must have 14 cells");
    }
    BasicRelation r1 = parse_relation_token(cells[0]);
    for (std::size_t j = 1; j < cells.size(); ++j) {
      if (cells[j].empty()) {
        throw ParseError("empty cell at line " + std::to_string(i + 1) + ", column " + std::to_string(j + 1));
      }
      RelationSet entry;
      for (const auto& token : split(cells[j], '|')) entry.insert(parse_relation_token(token));
      table.set(r1, columns[j - 1], entry);
      seen[index_of(r1) * kRelationCount + index_of(columns[j - 1])] = true;
    }
  }
  for (bool s : seen) {
    if (!s) throw ParseError("table CSV does not cover all 169 entries");
  }
  return table;
}

} // namespace allen
