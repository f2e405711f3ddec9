#include "allen/endpoint_model.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <stdexcept>

namespace allen {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("invalid rational '" + std::string(whole) + "'");
  }
  return value;
}

std::string describe(const RatInterval& i) {
  return "(" + to_string(i.start()) + "," + to_string(i.end()) + ")";
}

const std::vector<EndpointConfig>& three_interval_configs() {
  static const std::vector<EndpointConfig> configs = enumerate_configs(3);
  return configs;
}

} // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::int64_t num = parse_int(text.substr(0, slash), text);
  std::int64_t den = 1;
  if (slash != std::string_view::npos) {
    auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
      throw ParseError("invalid rational '" + std::string(text) + "' (sign belongs on the numerator)");
    }
    den = parse_int(den_text, text);
  }
  if (den == 0) throw ParseError("invalid rational '" + std::string(text) + "': zero denominator");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

RatInterval::RatInterval(Rational start, Rational end) : start_(start), end_(end) {
  if (!(start_ < end_)) {
    throw std::invalid_argument("interval start " + to_string(start_) + " must precede end " + to_string(end_));
  }
}

BasicRelation classify(const RatInterval& p, const RatInterval& q) {
  using enum BasicRelation;
  const auto& ps = p.start();
  const auto& pe = p.end();
  const auto& qs = q.start();
  const auto& qe = q.end();
  if (ps == qs && pe == qe) return e;
  if (pe < qs) return b;
  if (qe < ps) return bi;
  if (pe == qs) return m;
  if (qe == ps) return mi;
  if (ps == qs) return pe < qe ? s : si;
  if (pe == qe) return ps > qs ? f : fi;
  if (qs < ps && pe < qe) return d;
  if (ps < qs && qe < pe) return di;
  return ps < qs ? ov : ovi;
}

bool holds(BasicRelation r, const RatInterval& p, const RatInterval& q) {
  const auto& ps = p.start();
  const auto& pe = p.end();
  const auto& qs = q.start();
  const auto& qe = q.end();
  switch (r) {
    case BasicRelation::e: return ps == qs && pe == qe;
    case BasicRelation::b: return pe < qs;
    case BasicRelation::m: return pe == qs;
    case BasicRelation::ov: return ps < qs && qs < pe && pe < qe;
    case BasicRelation::s: return ps == qs && pe < qe;
    case BasicRelation::f: return pe == qe && qs < ps;
    case BasicRelation::d: return qs < ps && pe < qe;
    default: return holds(converse(r), q, p);
  }
}

RatInterval EndpointConfig::interval(std::size_t i) const {
  return RatInterval(Rational(start_rank(i)), Rational(end_rank(i)));
}

BasicRelation EndpointConfig::relation(std::size_t i, std::size_t j) const {
  return classify(interval(i), interval(j));
}

std::vector<EndpointConfig> enumerate_configs(std::size_t n) {
  if (n < 1 || n > kMaxConfigIntervals) {
    throw std::out_of_range("enumerate_configs: interval count must be in 1.." +
                            std::to_string(kMaxConfigIntervals) + ", got " + std::to_string(n));
  }
  const std::size_t points = 2 * n;
  const int max_rank = static_cast<int>(points);

  // Odometer over all rank functions, most significant digit first so that
  // survivors come out in lexicographic order. Only normalized, valid vectors
  // are kept; each order type has exactly one such representative.
  std::vector<int> ranks(points, 1);
  std::vector<EndpointConfig> out;
  std::vector<bool> used(static_cast<std::size_t>(max_rank) + 1);
  while (true) {
    bool valid = true;
    for (std::size_t i = 0; i < n && valid; ++i) valid = ranks[2 * i] < ranks[2 * i + 1];
    if (valid) {
      std::fill(used.begin(), used.end(), false);
      int top = 0;
      for (int r : ranks) {
        used[static_cast<std::size_t>(r)] = true;
        top = std::max(top, r);
      }
      for (int r = 1; r <= top && valid; ++r) valid = used[static_cast<std::size_t>(r)];
      if (valid) out.push_back(EndpointConfig{ranks});
    }
    std::size_t digit = points;
    while (digit > 0) {
      --digit;
      if (ranks[digit] < max_rank) {
        ++ranks[digit];
        break;
      }
      ranks[digit] = 1;
      if (digit == 0) return out;
    }
  }
}

RelationSet oracle_compose(BasicRelation r1, BasicRelation r2) {
  // Interval 0 is p, 1 is z, 2 is q.
  RelationSet out;
  for (const auto& config : three_interval_configs()) {
    if (config.relation(0, 1) == r1 && config.relation(1, 2) == r2) out.insert(config.relation(0, 2));
  }
  return out;
}

CompositionTable oracle_table() {
  std::array<RelationSet, kRelationCount * kRelationCount> cells{};
  for (const auto& config : three_interval_configs()) {
    auto r1 = config.relation(0, 1);
    auto r2 = config.relation(1, 2);
    cells[index_of(r1) * kRelationCount + index_of(r2)].insert(config.relation(0, 2));
  }
  CompositionTable table;
  for (BasicRelation r1 : kAllRelations)
    for (BasicRelation r2 : kAllRelations) table.set(r1, r2, cells[index_of(r1) * kRelationCount + index_of(r2)]);
  return table;
}

JepdReport verify_jepd() {
  JepdReport report;
  auto configs = enumerate_configs(2);
  report.configs = configs.size();
  RelationSet realized;
  for (const auto& config : configs) {
    auto p = config.interval(0);
    auto q = config.interval(1);
    // Count how many endpoint definitions hold; exactly one must.
    std::size_t holding = 0;
    for (BasicRelation r : kAllRelations) {
      if (holds(r, p, q)) ++holding;
    }
    auto r = classify(p, q);
    if (holding != 1) {
      report.violations.push_back("config " + describe(p) + describe(q) + " satisfies " + std::to_string(holding) +
                                  " relation definitions");
    }
    if (!holds(r, p, q)) report.violations.push_back("classify disagrees with the endpoint definitions");
    if (realized.contains(r)) {
      report.violations.push_back("relation " + std::string(name(r)) + " realized by more than one order type");
    }
    if (classify(q, p) != converse(r)) {
      report.violations.push_back("classify is not converse-symmetric on " + describe(p) + describe(q));
    }
    realized.insert(r);
  }
  report.distinct_relations = realized.size();
  for (BasicRelation r : kAllRelations) {
    if (!realized.contains(r)) report.violations.push_back("relation " + std::string(name(r)) + " is not realized");
  }
  return report;
}

std::vector<RatInterval> integer_intervals(int lo, int hi) {
  std::vector<RatInterval> out;
  for (int a = lo; a <= hi; ++a)
    for (int b = a + 1; b <= hi; ++b) out.emplace_back(Rational(a), Rational(b));
  return out;
}

AxiomReport check_axioms_in_model(std::span<const RatInterval> sample) {
  AxiomReport report;
  if (sample.empty()) throw std::invalid_argument("check_axioms_in_model: sample must be non-empty");

  auto fail = [&](std::string axiom, std::initializer_list<const RatInterval*> tuple, std::string what) {
    std::string msg = axiom + " violated on";
    for (const auto* i : tuple) msg += " " + describe(*i);
    if (!what.empty()) msg += ": " + what;
    report.violations.push_back(std::move(msg));
  };

  std::size_t irrefl = 0, asym = 0, atrans = 0, m1 = 0, m2 = 0, m3 = 0, m4 = 0, m5 = 0;

  for (const auto& p : sample) {
    ++irrefl;
    if (meets(p, p)) fail("meets_irrefl", {&p}, "");

    // M3: neighbours on both sides, built from the endpoints.
    ++m3;
    RatInterval before(p.start() - 1, p.start());
    RatInterval after(p.end(), p.end() + 1);
    if (!meets(before, p) || !meets(p, after)) fail("M3", {&p}, "constructed neighbours do not meet");

    for (const auto& q : sample) {
      if (!meets(p, q)) continue;
      ++asym;
      if (meets(q, p)) fail("meets_asym", {&p, &q}, "");

      // M5: r||p, p||q, q||s, r||t, t||s with t = p + q.
      ++m5;
      RatInterval r(p.start() - 1, p.start());
      RatInterval s(q.end(), q.end() + 1);
      RatInterval t(p.start(), q.end());
      if (!(meets(r, p) && meets(q, s) && meets(r, t) && meets(t, s))) fail("M5", {&p, &q}, "sum witness fails");

      for (const auto& x : sample) {
        if (meets(q, x)) {
          ++atrans;
          if (meets(p, x)) fail("meets_atrans", {&p, &q, &x}, "");
        }
      }
    }
  }

  for (const auto& p : sample) {
    for (const auto& q : sample) {
      if (!meets(p, q)) continue;
      for (const auto& r : sample) {
        for (const auto& s : sample) {
          // M1: p||q, p||s, r||q => r||s
          if (meets(p, s) && meets(r, q)) {
            ++m1;
            if (!meets(r, s)) fail("M1", {&p, &q, &r, &s}, "");
          }
          // M4: p||q, q||s, p||r, r||s => q = r
          if (meets(q, s) && meets(p, r) && meets(r, s)) {
            ++m4;
            if (!(q == r)) fail("M4", {&p, &q, &r, &s}, "");
          }
          // M2: p||q, r||s => exactly one of p||s, (p||t, t||s), (r||t, t||q).
          if (meets(r, s)) {
            ++m2;
            int cases = 0;
            if (meets(p, s)) ++cases;
            if (p.end() < s.start()) {
              RatInterval t(p.end(), s.start());
              if (!(meets(p, t) && meets(t, s))) fail("M2", {&p, &q, &r, &s}, "second-case witness fails");
              ++cases;
            }
            if (r.end() < q.start()) {
              RatInterval t(r.end(), q.start());
              if (!(meets(r, t) && meets(t, q))) fail("M2", {&p, &q, &r, &s}, "third-case witness fails");
              ++cases;
            }
            if (cases != 1) fail("M2", {&p, &q, &r, &s}, std::to_string(cases) + " cases hold");
          }
        }
      }
    }
  }

  report.checked = {{"meets_irrefl", irrefl}, {"meets_asym", asym}, {"meets_atrans", atrans}, {"M1", m1},
                    {"M2", m2},               {"M3", m3},           {"M4", m4},             {"M5", m5}};
  return report;
}

} // namespace allen
