#include "allen_cli/cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>

#include "allen/derivation.hpp"
#include "allen/endpoint_model.hpp"
#include "allen/lattice.hpp"
#include "allen/network.hpp"
#include "allen/relation.hpp"
#include "allen/table_io.hpp"

namespace allen::cli {

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

RelationSet parse_tokens(const std::vector<std::string>& tokens) {
  RelationSet set;
  for (const auto& t : tokens) set.insert(parse_relation_token(t));
  return set;
}

std::vector<std::string> table_mismatches(const CompositionTable& got) {
  std::vector<std::string> out;
  for (BasicRelation r1 : kAllRelations) {
    for (BasicRelation r2 : kAllRelations) {
      if (got.at(r1, r2) == compose(r1, r2)) continue;
      out.push_back(std::string(name(r1)) + " ∘ " + std::string(name(r2)) + ": computed {" +
                    to_string(got.at(r1, r2)) + "}, table {" + to_string(compose(r1, r2)) + "}");
    }
  }
  return out;
}

int verify_table(const std::string& engine, std::ostream& out) {
  std::vector<std::string> parts;
  std::vector<std::string> details;
  constexpr std::size_t total = kRelationCount * kRelationCount;

  if (engine == "oracle" || engine == "both") {
    auto mismatches = table_mismatches(oracle_table());
    std::size_t good = total - mismatches.size();
    parts.push_back(std::to_string(good) + "/" + std::to_string(total) + " oracle " +
                    (mismatches.empty() ? "OK" : "MISMATCH"));
    details.insert(details.end(), mismatches.begin(), mismatches.end());
  }
  if (engine == "derivation" || engine == "both") {
    auto report = verify_table_by_derivation();
    parts.push_back(std::to_string(report.matches) + "/" + std::to_string(total) + " derivation " +
                    (report.ok() ? "OK" : "MISMATCH"));
    details.insert(details.end(), report.mismatches.begin(), report.mismatches.end());
  }

  for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? ", " : "") << parts[i];
  out << "\n";
  for (const auto& d : details) out << "  " << d << "\n";
  return details.empty() ? kOk : kNegative;
}

int run_jepd(std::ostream& out) {
  auto je = verify_jepd();
  out << "JE: " << je.configs << " order types, " << je.distinct_relations << "/13 relations, "
      << je.violations.size() << " violations\n";
  for (const auto& v : je.violations) out << "  " << v << "\n";

  std::size_t pairs = 0;
  std::size_t refuted = 0;
  std::vector<std::string> failures;
  for (BasicRelation r1 : kAllRelations) {
    for (BasicRelation r2 : kAllRelations) {
      if (index_of(r1) >= index_of(r2)) continue;
      ++pairs;
      try {
        verify_pd(r1, r2);
        ++refuted;
      } catch (const DerivationError& e) {
        failures.push_back(std::string(name(r1)) + "/" + std::string(name(r2)) + ": " + e.what());
      }
    }
  }
  out << "PD: " << refuted << "/" << pairs << " pairs refuted\n";
  for (const auto& f : failures) out << "  " << f << "\n";
  return je.ok() && failures.empty() ? kOk : kNegative;
}

void print_adjacency(std::ostream& out) {
  for (BasicRelation r : kAllRelations) out << name(r) << ": " << to_string(neighbors(r)) << "\n";
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Allen interval algebra: composition, derivation and constraint networks", "allen"};
  app.require_subcommand(1);

  auto* compose_cmd = app.add_subcommand("compose", "Composition of two basic relations");
  std::string r1_text, r2_text;
  compose_cmd->add_option("r1", r1_text, "First relation")->required();
  compose_cmd->add_option("r2", r2_text, "Second relation")->required();

  auto* converse_cmd = app.add_subcommand("converse", "Converse of a relation set");
  std::vector<std::string> converse_tokens;
  converse_cmd->add_option("relations", converse_tokens, "Relations")->required();

  auto* table_cmd = app.add_subcommand("table", "Print or verify the composition table");
  std::string table_format = "md";
  std::string verify_engine;
  table_cmd->add_option("--format", table_format, "Output format")->check(CLI::IsMember({"csv", "md"}));
  table_cmd->add_option("--verify", verify_engine, "Recompute and compare")
      ->check(CLI::IsMember({"oracle", "derivation", "both"}));

  auto* classify_cmd = app.add_subcommand("classify", "Relation between two rational intervals");
  std::vector<std::string> endpoints;
  classify_cmd->add_option("endpoints", endpoints, "s1 e1 s2 e2")->required()->expected(4);

  auto* derive_cmd = app.add_subcommand("derive", "Derive a composition from the meets axioms");
  std::string d1_text, d2_text;
  bool show_tree = false;
  derive_cmd->add_option("r1", d1_text, "First relation")->required();
  derive_cmd->add_option("r2", d2_text, "Second relation")->required();
  derive_cmd->add_flag("--tree", show_tree, "Print the derivation tree");

  auto* jepd_cmd = app.add_subcommand("jepd", "Check joint exhaustiveness and pairwise disjointness");

  auto* closure_cmd = app.add_subcommand("closure", "Path consistency of a network file");
  std::string closure_file;
  bool closure_all = false;
  closure_cmd->add_option("file", closure_file, "Network file")->required();
  closure_cmd->add_flag("--all", closure_all, "Also print unconstrained pairs");

  auto* solve_cmd = app.add_subcommand("solve", "Find a scenario of a network file");
  std::string solve_file;
  bool solve_realize = false;
  solve_cmd->add_option("file", solve_file, "Network file")->required();
  solve_cmd->add_flag("--realize", solve_realize, "Print integer endpoints");

  auto* lattice_cmd = app.add_subcommand("lattice", "Conceptual-neighbourhood lattice");
  auto* neighbors_cmd = lattice_cmd->add_subcommand("neighbors", "Adjacent relations");
  std::string neighbor_of;
  neighbors_cmd->add_option("r", neighbor_of, "Relation")->required();
  auto* connected_cmd = lattice_cmd->add_subcommand("connected", "Is the set path-connected");
  std::vector<std::string> connected_tokens;
  connected_cmd->add_option("relations", connected_tokens, "Relations");
  auto* distance_cmd = lattice_cmd->add_subcommand("distance", "Lattice distance");
  std::string dist1, dist2;
  distance_cmd->add_option("r1", dist1, "First relation")->required();
  distance_cmd->add_option("r2", dist2, "Second relation")->required();
  lattice_cmd->require_subcommand(0, 1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compose_cmd) {
      BasicRelation r1 = parse_relation_token(r1_text);
      BasicRelation r2 = parse_relation_token(r2_text);
      out << to_string(compose(r1, r2)) << "\n";
      return kOk;
    }
    if (*converse_cmd) {
      out << to_string(parse_tokens(converse_tokens).converse()) << "\n";
      return kOk;
    }
    if (*table_cmd) {
      if (!verify_engine.empty()) return verify_table(verify_engine, out);
      out << (table_format == "csv" ? table_to_csv(builtin_table()) : table_to_markdown(builtin_table()));
      return kOk;
    }
    if (*classify_cmd) {
      std::vector<Rational> v;
      for (const auto& e : endpoints) v.push_back(parse_rational(e));
      try {
        out << name(classify(RatInterval(v[0], v[1]), RatInterval(v[2], v[3]))) << "\n";
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
      }
      return kOk;
    }
    if (*derive_cmd) {
      BasicRelation r1 = parse_relation_token(d1_text);
      BasicRelation r2 = parse_relation_token(d2_text);
      auto tree = derive_composition(r1, r2);
      if (show_tree) out << format_tree(tree);
      out << to_string(tree.conclusions()) << "\n";
      return kOk;
    }
    if (*jepd_cmd) return run_jepd(out);
    if (*closure_cmd) {
      auto closed = path_consistency(load_network(closure_file));
      if (!closed) {
        out << "INCONSISTENT\n";
        return kNegative;
      }
      out << serialize(*closed, closure_all);
      return kOk;
    }
    if (*solve_cmd) {
      auto net = load_network(solve_file);
      auto scenario = solve(net);
      if (!scenario) {
        out << "NO SCENARIO\n";
        return kNegative;
      }
      out << serialize(scenario->network());
      if (solve_realize) out << format_realization(scenario->network(), realize(*scenario));
      return kOk;
    }
    if (*lattice_cmd) {
      if (*neighbors_cmd) {
        out << to_string(neighbors(parse_relation_token(neighbor_of))) << "\n";
      } else if (*connected_cmd) {
        out << (is_connected(parse_tokens(connected_tokens)) ? "connected" : "disconnected") << "\n";
      } else if (*distance_cmd) {
        BasicRelation r1 = parse_relation_token(dist1);
        BasicRelation r2 = parse_relation_token(dist2);
        out << conceptual_distance(r1, r2) << "\n";
      } else {
        print_adjacency(out);
      }
      return kOk;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

} // namespace allen::cli
