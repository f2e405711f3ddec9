#include "allen/network.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <regex>
#include <sstream>

namespace allen {

namespace {

std::string trim(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return "";
  auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> words(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

/// Dense relation matrix for the closure loop.
class Matrix {
public:
  explicit Matrix(const Network& net) : n_(net.size()), cells_(n_ * n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) cells_[i * n_ + j] = net.get(i, j);
  }
  RelationSet at(std::size_t i, std::size_t j) const { return cells_[i * n_ + j]; }
  void put(std::size_t i, std::size_t j, RelationSet r) {
    cells_[i * n_ + j] = r;
    cells_[j * n_ + i] = r.converse();
  }
  std::size_t size() const { return n_; }

private:
  std::size_t n_;
  std::vector<RelationSet> cells_;
};

} // namespace

std::size_t Network::add_variable(std::string_view name) {
  if (auto i = index_of_variable(name)) return *i;
  variables_.emplace_back(name);
  return variables_.size() - 1;
}

std::optional<std::size_t> Network::index_of_variable(std::string_view name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

RelationSet Network::get(std::size_t i, std::size_t j) const {
  if (i >= size() || j >= size()) throw std::out_of_range("network variable index out of range");
  if (i == j) return RelationSet{BasicRelation::e};
  bool flip = i > j;
  auto it = edges_.find(flip ? std::pair{j, i} : std::pair{i, j});
  if (it == edges_.end()) return RelationSet::full();
  return flip ? it->second.converse() : it->second;
}

void Network::set(std::size_t i, std::size_t j, RelationSet rel) {
  if (i >= size() || j >= size()) throw std::out_of_range("network variable index out of range");
  if (i == j) throw std::invalid_argument("network edges must join two different variables");
  if (i > j) {
    std::swap(i, j);
    rel = rel.converse();
  }
  if (std::find(pair_order_.begin(), pair_order_.end(), std::pair{i, j}) == pair_order_.end())
    pair_order_.emplace_back(i, j);
  if (rel.is_full()) {
    edges_.erase({i, j});
  } else {
    edges_[{i, j}] = rel;
  }
}

void Network::constrain(std::size_t i, std::size_t j, RelationSet rel) { set(i, j, get(i, j) & rel); }

bool Network::is_atomic() const {
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = i + 1; j < size(); ++j)
      if (get(i, j).size() != 1) return false;
  return true;
}

Network parse_network(std::string_view text) {
  static const std::regex kIdentifier("[A-Za-z_][A-Za-z0-9_]*");
  Network net;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto fail = [&](const std::string& what) {
      throw ParseError("line " + std::to_string(line_no) + ": " + what);
    };
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::string content = trim(line);
    if (content.empty()) continue;

    auto colon = content.find(':');
    if (colon == std::string::npos) fail("expected '<var> <var> : <rel>...'");
    auto names = words(std::string_view(content).substr(0, colon));
    auto rels = words(std::string_view(content).substr(colon + 1));
    if (names.size() != 2) fail("expected exactly two variables before ':'");
    for (const auto& n : names) {
      if (!std::regex_match(n, kIdentifier)) fail("invalid variable name '" + n + "'");
    }
    if (names[0] == names[1]) fail("self-edge on '" + names[0] + "'");
    if (rels.empty()) fail("empty relation list");
    RelationSet set;
    for (const auto& token : rels) {
      try {
        set.insert(parse_relation_token(token));
      } catch (const ParseError& err) {
        fail(err.what());
      }
    }
    std::size_t a = net.add_variable(names[0]);
    std::size_t b = net.add_variable(names[1]);
    net.constrain(a, b, set);
  }
  return net;
}

Network load_network(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read network file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_network(buffer.str());
}

std::string serialize(const Network& net, bool include_universal) {
  const std::size_t n = net.size();
  std::vector<bool> mentioned(n, false);
  std::vector<bool> printed(n * n, false);
  std::string out;
  auto emit = [&](std::size_t i, std::size_t j) {
    out += net.variables()[i] + " " + net.variables()[j] + " : " + to_string(net.get(i, j)) + "\n";
    mentioned[i] = mentioned[j] = true;
    printed[i * n + j] = true;
  };
  for (const auto& [i, j] : net.pair_order()) {
    if (include_universal || net.edges().contains({i, j}) || !mentioned[i] || !mentioned[j]) emit(i, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (printed[i * n + j]) continue;
      if (include_universal || net.edges().contains({i, j}) || !mentioned[i] || !mentioned[j]) emit(i, j);
    }
  }
  return out;
}

std::optional<Network> path_consistency(const Network& net) {
  const std::size_t n = net.size();
  Matrix m(net);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.at(i, j).empty()) return std::nullopt;

  std::deque<std::pair<std::size_t, std::size_t>> queue;
  std::vector<bool> queued(n * n, false);
  auto enqueue = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    if (queued[i * n + j]) return;
    queued[i * n + j] = true;
    queue.emplace_back(i, j);
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) enqueue(i, j);

  // Returns false when the revised edge becomes empty.
  auto revise = [&](std::size_t i, std::size_t j, RelationSet with) {
    RelationSet old = m.at(i, j);
    RelationSet refined = old & with;
    if (refined == old) return true;
    m.put(i, j, refined);
    if (refined.empty()) return false;
    enqueue(i, j);
    return true;
  };

  while (!queue.empty()) {
    auto [i, j] = queue.front();
    queue.pop_front();
    queued[i * n + j] = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j) continue;
      if (!revise(i, k, compose_sets(m.at(i, j), m.at(j, k)))) return std::nullopt;
      if (!revise(k, j, compose_sets(m.at(k, i), m.at(i, j)))) return std::nullopt;
    }
  }

  Network out = net;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, m.at(i, j));
  return out;
}

Scenario::Scenario(Network net) : net_(std::move(net)) {
  if (!net_.is_atomic()) throw std::invalid_argument("a scenario needs exactly one relation per pair");
}

std::optional<Scenario> solve(const Network& net) {
  auto closed = path_consistency(net);
  if (!closed) return std::nullopt;

  std::optional<std::pair<std::size_t, std::size_t>> pick;
  std::size_t smallest = kRelationCount + 1;
  for (std::size_t i = 0; i < closed->size(); ++i) {
    for (std::size_t j = i + 1; j < closed->size(); ++j) {
      std::size_t size = closed->get(i, j).size();
      if (size > 1 && size < smallest) {
        smallest = size;
        pick = std::pair{i, j};
      }
    }
  }
  // Closed atomic Allen networks are consistent.
  if (!pick) return Scenario(std::move(*closed));

  auto [i, j] = *pick;
  for (BasicRelation r : closed->get(i, j)) {
    Network attempt = *closed;
    attempt.set(i, j, RelationSet{r});
    if (auto found = solve(attempt)) return found;
  }
  return std::nullopt;
}

std::vector<RatInterval> realize(const Scenario& scenario) {
  const Network& net = scenario.network();
  const std::size_t n = net.size();
  const std::size_t points = 2 * n;

  // Endpoint order of each basic relation, read off the two-interval order types.
  static const auto kOrders = [] {
    std::array<std::vector<int>, kRelationCount> orders;
    for (const auto& config : enumerate_configs(2)) orders[index_of(config.relation(0, 1))] = config.ranks;
    return orders;
  }();

  std::vector<std::size_t> parent(points);
  for (std::size_t i = 0; i < points; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x];
    return x;
  };
  std::vector<std::pair<std::size_t, std::size_t>> before;
  for (std::size_t i = 0; i < n; ++i) before.emplace_back(2 * i, 2 * i + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& ranks = kOrders[index_of(scenario.relation(i, j))];
      const std::array<std::size_t, 4> node = {2 * i, 2 * i + 1, 2 * j, 2 * j + 1};
      for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
          if (ranks[a] == ranks[b] && a < b) parent[find(node[a])] = find(node[b]);
          if (ranks[a] < ranks[b]) before.emplace_back(node[a], node[b]);
        }
      }
    }
  }

  // Longest-path layering over the classes, in Kahn order.
  std::vector<std::vector<std::size_t>> out_edges(points);
  std::vector<std::size_t> indegree(points, 0);
  for (auto [a, b] : before) {
    std::size_t ca = find(a), cb = find(b);
    if (ca == cb) throw RealizationError("endpoint order of the scenario is cyclic");
    out_edges[ca].push_back(cb);
    ++indegree[cb];
  }
  std::vector<long long> rank(points, 0);
  std::deque<std::size_t> ready;
  std::size_t classes = 0;
  for (std::size_t c = 0; c < points; ++c) {
    if (find(c) != c) continue;
    ++classes;
    if (indegree[c] == 0) ready.push_back(c);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    auto c = ready.front();
    ready.pop_front();
    ++visited;
    for (auto next : out_edges[c]) {
      rank[next] = std::max(rank[next], rank[c] + 1);
      if (--indegree[next] == 0) ready.push_back(next);
    }
  }
  if (visited != classes) throw RealizationError("endpoint order of the scenario is cyclic");

  std::vector<RatInterval> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.emplace_back(Rational(rank[find(2 * i)]), Rational(rank[find(2 * i + 1)]));
  }
  return out;
}

std::string format_realization(const Network& net, const std::vector<RatInterval>& intervals) {
  std::string out;
  for (std::size_t i = 0; i < net.size(); ++i) {
    out += net.variables()[i] + " = [" + to_string(intervals.at(i).start()) + ", " + to_string(intervals.at(i).end()) +
           "]\n";
  }
  return out;
}

} // namespace allen
