#include "tpb/instances.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "tpb/errors.hpp"

namespace tpb {

namespace {

// Uniform draw in [0, bound) that does not depend on the standard library's
// distribution implementation.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

int draw_int(std::mt19937_64& rng, int bound) {
  return static_cast<int>(draw(rng, static_cast<std::uint64_t>(bound)));
}

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i)
    std::swap(v[i - 1], v[draw(rng, i)]);
}

DemandGraph sorted_graph(BaseSpec base, std::vector<std::pair<int, int>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  return DemandGraph::from_pairs(base, pairs);
}

std::vector<int> random_subset(int n, int k, std::mt19937_64& rng) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  shuffle(all, rng);
  all.resize(static_cast<std::size_t>(k));
  return all;
}

}  // namespace

DemandGraph gen_sharp_conjecture(int n) {
  if (n < 1) throw DomainError("sharp-conj needs n >= 1");
  const int copies = (n + 2) / 3 + 1;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < copies; ++k) pairs.emplace_back(i, i);
  return DemandGraph::from_pairs({n, n}, pairs);
}

DemandGraph gen_sharp_edge(int n) {
  if (n < 4) throw DomainError("sharp-edge needs n >= 4");
  std::vector<std::pair<int, int>> pairs(static_cast<std::size_t>(n), {0, 0});
  pairs.insert(pairs.end(), static_cast<std::size_t>(n - 1), {1, 1});
  return DemandGraph::from_pairs({n, n}, pairs);
}

DemandGraph gen_chain(int n) {
  if (n < 4) throw DomainError("chain needs n >= 4");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n; ++i) pairs.insert(pairs.end(), 2, {i, i});
  return DemandGraph::from_pairs({n, n}, pairs);
}

DemandGraph gen_random_edge_version(int n, int max_edges, int max_degree, std::uint64_t seed) {
  if (n < 1) throw DomainError("random-edge needs n >= 1");
  if (max_edges < 0 || max_degree < 0) throw DomainError("caps must be non-negative");
  const int cap_edges = std::min(max_edges, 2 * n - 2);
  const int cap_degree = std::min(max_degree, n);
  std::mt19937_64 rng(seed);
  const int target = draw_int(rng, 2) == 0 ? cap_edges : draw_int(rng, cap_edges + 1);
  // A few hot vertices per side concentrate edges into multi-edges.
  const int hot = 1 + draw_int(rng, n);
  const auto hot_a = random_subset(n, hot, rng);
  const auto hot_b = random_subset(n, hot, rng);

  std::vector<int> deg_a(static_cast<std::size_t>(n), 0), deg_b(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> pairs;
  for (int attempt = 0; static_cast<int>(pairs.size()) < target && attempt < 50 * (target + 1);
       ++attempt) {
    const bool concentrated = draw_int(rng, 3) != 0;
    const int i = concentrated ? hot_a[static_cast<std::size_t>(draw_int(rng, hot))] : draw_int(rng, n);
    const int j = concentrated ? hot_b[static_cast<std::size_t>(draw_int(rng, hot))] : draw_int(rng, n);
    if (deg_a[static_cast<std::size_t>(i)] >= cap_degree ||
        deg_b[static_cast<std::size_t>(j)] >= cap_degree)
      continue;
    ++deg_a[static_cast<std::size_t>(i)];
    ++deg_b[static_cast<std::size_t>(j)];
    pairs.emplace_back(i, j);
  }
  DemandGraph d = sorted_graph({n, n}, std::move(pairs));
  if (static_cast<int>(d.edge_count()) > cap_edges || d.max_degree() > cap_degree)
    throw StructuralError("random-edge generator left its caps");
  return d;
}

DemandGraph gen_random_blocked(int n, const std::array<int, 3>& sizes, std::uint64_t seed) {
  if (n < 3) throw DomainError("random-blocked needs n >= 3");
  const int m = n / 3;
  if (sizes[0] + sizes[1] + sizes[2] != n) throw DomainError("block sizes must sum to n");
  for (int s : sizes)
    if (s < m) throw DomainError("every block needs at least floor(n/3) vertices");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> pairs;
  int offset = 0;
  for (int s : sizes) {
    if (draw_int(rng, 2) == 0) {
      // m random perfect matchings: m-regular.
      for (int k = 0; k < m; ++k) {
        std::vector<int> perm(static_cast<std::size_t>(s));
        std::iota(perm.begin(), perm.end(), 0);
        shuffle(perm, rng);
        for (int i = 0; i < s; ++i)
          pairs.emplace_back(offset + i, offset + perm[static_cast<std::size_t>(i)]);
      }
    } else {
      const int target = draw_int(rng, s * m + 1);
      std::vector<int> da(static_cast<std::size_t>(s), 0), db(static_cast<std::size_t>(s), 0);
      for (int attempt = 0, placed = 0; placed < target && attempt < 50 * (target + 1); ++attempt) {
        const int i = draw_int(rng, s), j = draw_int(rng, s);
        if (da[static_cast<std::size_t>(i)] >= m || db[static_cast<std::size_t>(j)] >= m) continue;
        ++da[static_cast<std::size_t>(i)];
        ++db[static_cast<std::size_t>(j)];
        pairs.emplace_back(offset + i, offset + j);
        ++placed;
      }
    }
    offset += s;
  }
  DemandGraph d = sorted_graph({n, n}, std::move(pairs));
  if (d.max_degree() > m) throw StructuralError("random-blocked generator exceeded floor(n/3)");
  return d;
}

DemandGraph gen_random_semiregular(int a, int b, int delta_a, std::uint64_t seed) {
  if (a < 1 || b < 1 || delta_a < 0) throw DomainError("random-semiregular needs a, b >= 1");
  if ((static_cast<std::int64_t>(a) * delta_a) % b != 0)
    throw DomainError("b must divide a * delta_a");
  const int delta_b = a * delta_a / b;
  std::mt19937_64 rng(seed);
  std::vector<int> stubs_b;
  for (int j = 0; j < b; ++j) stubs_b.insert(stubs_b.end(), static_cast<std::size_t>(delta_b), j);
  shuffle(stubs_b, rng);
  std::vector<std::pair<int, int>> pairs;
  std::size_t next = 0;
  for (int i = 0; i < a; ++i)
    for (int k = 0; k < delta_a; ++k) pairs.emplace_back(i, stubs_b[next++]);
  DemandGraph d = sorted_graph({a, b}, std::move(pairs));
  for (int i = 0; i < a; ++i)
    if (d.degree(a_vertex(i)) != delta_a) throw StructuralError("semiregular A-degree mismatch");
  for (int j = 0; j < b; ++j)
    if (d.degree(b_vertex(j)) != delta_b) throw StructuralError("semiregular B-degree mismatch");
  return d;
}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::int64_t parse_number(std::string_view word, int line, const char* what) {
  std::int64_t value = 0;
  const auto [end, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
  if (ec != std::errc() || end != word.data() + word.size())
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(word) + "'");
  return value;
}

template <class F>
void for_each_line(std::string_view text, F f) {
  int number = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    f(text.substr(pos, end - pos), number);
    pos = end + 1;
  }
}

}  // namespace

DemandGraph parse_instance(std::string_view text) {
  std::optional<BaseSpec> base;
  std::int64_t declared = 0;
  int header_line = 0;
  std::vector<std::pair<int, int>> pairs;
  for_each_line(text, [&](std::string_view raw, int line) {
    const auto words = split_words(raw);
    if (words.empty() || words[0] == "c") return;
    if (words[0] == "p") {
      if (base) throw ParseError(line, "second header");
      if (words.size() != 5 || words[1] != "tpb")
        throw ParseError(line, "header must read 'p tpb <a> <b> <m>'");
      const auto a = parse_number(words[2], line, "class size");
      const auto b = parse_number(words[3], line, "class size");
      declared = parse_number(words[4], line, "edge count");
      if (a < 1 || b < 1 || a > 1'000'000 || b > 1'000'000)
        throw ParseError(line, "class sizes must lie in 1..1000000");
      if (declared < 0) throw ParseError(line, "negative edge count");
      base = BaseSpec{static_cast<int>(a), static_cast<int>(b)};
      header_line = line;
      return;
    }
    if (words[0] == "e") {
      if (!base) throw ParseError(line, "edge before header");
      if (words.size() != 3 && words.size() != 4)
        throw ParseError(line, "edge line must read 'e <i> <j> [mult]'");
      const auto i = parse_number(words[1], line, "A index");
      const auto j = parse_number(words[2], line, "B index");
      const auto mult = words.size() == 4 ? parse_number(words[3], line, "multiplicity") : 1;
      if (i < 1 || i > base->a) throw ParseError(line, "A index " + std::to_string(i) + " out of range");
      if (j < 1 || j > base->b) throw ParseError(line, "B index " + std::to_string(j) + " out of range");
      if (mult < 1) throw ParseError(line, "multiplicity must be positive");
      if (static_cast<std::int64_t>(pairs.size()) + mult > declared)
        throw ParseError(line, "more edges than the declared " + std::to_string(declared));
      for (std::int64_t k = 0; k < mult; ++k)
        pairs.emplace_back(static_cast<int>(i - 1), static_cast<int>(j - 1));
      return;
    }
    throw ParseError(line, "unknown line type '" + std::string(words[0]) + "'");
  });
  if (!base) throw ParseError(1, "missing header");
  if (static_cast<std::int64_t>(pairs.size()) != declared)
    throw ParseError(header_line, "header declares " + std::to_string(declared) +
                                      " edges but lines sum to " + std::to_string(pairs.size()));
  return DemandGraph::from_pairs(*base, pairs);
}

std::string serialize_instance(const DemandGraph& d) {
  std::map<std::pair<int, int>, int> mult;
  for (const DemandEdge& e : d.edges()) {
    if (!e.crosses()) throw DomainError("edge " + std::to_string(e.id) + " does not join A to B");
    const auto [x, y] = e.key();
    ++mult[{x.index, y.index}];
  }
  std::ostringstream out;
  out << "p tpb " << d.base().a << ' ' << d.base().b << ' ' << d.edge_count() << '\n';
  for (const auto& [p, k] : mult) out << "e " << p.first + 1 << ' ' << p.second + 1 << ' ' << k << '\n';
  return out.str();
}

std::string canonicalize_instance(std::string_view text) {
  return serialize_instance(parse_instance(text));
}

ResolutionFile parse_resolution(std::string_view text) {
  ResolutionFile out;
  bool have_status = false;
  for_each_line(text, [&](std::string_view raw, int line) {
    const auto words = split_words(raw);
    if (words.empty() || words[0] == "c") return;
    if (words[0] == "s") {
      if (have_status) throw ParseError(line, "second status line");
      if (words.size() != 2) throw ParseError(line, "status line must read 's <status>'");
      if (words[1] == "SOLVED") out.status = OracleStatus::kResolvable;
      else if (words[1] == "UNSOLVED") out.status = OracleStatus::kUnresolvable;
      else if (words[1] == "UNKNOWN") out.status = OracleStatus::kUnknown;
      else throw ParseError(line, "unknown status '" + std::string(words[1]) + "'");
      have_status = true;
      return;
    }
    if (words[0] == "r") {
      if (!have_status) throw ParseError(line, "route before status line");
      if (out.status != OracleStatus::kResolvable) throw ParseError(line, "route in an unsolved file");
      if (words.size() < 4) throw ParseError(line, "route line must read 'r <id> <k> <vertices>'");
      const EdgeId id = parse_number(words[1], line, "edge id");
      const auto k = parse_number(words[2], line, "path length");
      if (k < 1 || static_cast<std::size_t>(k) + 4 != words.size())
        throw ParseError(line, "path length " + std::to_string(k) + " does not match " +
                                   std::to_string(words.size() - 3) + " vertices");
      Path path;
      for (std::size_t w = 3; w < words.size(); ++w) {
        const std::string_view tok = words[w];
        if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'b'))
          throw ParseError(line, "bad vertex '" + std::string(tok) + "'");
        const auto index = parse_number(tok.substr(1), line, "vertex index");
        if (index < 1) throw ParseError(line, "vertex index must be positive");
        path.vertices.push_back({tok[0] == 'a' ? Side::A : Side::B, static_cast<int>(index - 1)});
      }
      if (!out.resolution.routes.emplace(id, std::move(path)).second)
        throw ParseError(line, "second route for edge " + std::to_string(id));
      return;
    }
    throw ParseError(line, "unknown line type '" + std::string(words[0]) + "'");
  });
  if (!have_status) throw ParseError(1, "missing status line");
  return out;
}

std::string serialize_resolution(const ResolutionFile& f) {
  std::ostringstream out;
  switch (f.status) {
    case OracleStatus::kResolvable: out << "s SOLVED\n"; break;
    case OracleStatus::kUnresolvable: out << "s UNSOLVED\n"; break;
    case OracleStatus::kUnknown: out << "s UNKNOWN\n"; break;
  }
  if (f.status != OracleStatus::kResolvable) return out.str();
  for (const auto& [id, path] : f.resolution.routes) {
    std::vector<VertexId> vs = path.vertices;
    if (!vs.empty() && vs.front().side == Side::B && vs.back().side == Side::A)
      std::reverse(vs.begin(), vs.end());
    out << "r " << id << ' ' << path.length();
    for (VertexId v : vs) out << ' ' << to_string(v);
    out << '\n';
  }
  return out.str();
}

}  // namespace tpb
