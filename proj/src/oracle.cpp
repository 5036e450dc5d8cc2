#include "tpb/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>

#include "tpb/errors.hpp"

namespace tpb {

const char* to_string(OracleStatus s) {
  switch (s) {
    case OracleStatus::kResolvable: return "resolvable";
    case OracleStatus::kUnresolvable: return "unresolvable";
    case OracleStatus::kUnknown: return "unknown";
  }
  return "?";
}

namespace {

struct Demand {
  EdgeId id;
  int s;
  int t;
};

class Router {
 public:
  Router(const DemandGraph& d, SearchBudget budget)
      : base_(d.base()),
        vertices_(base_.vertex_count()),
        budget_(budget),
        free_(static_cast<std::size_t>(vertices_ * vertices_), 0),
        resid_deg_(static_cast<std::size_t>(vertices_), 0),
        on_path_(static_cast<std::size_t>(vertices_), 0),
        start_(std::chrono::steady_clock::now()) {
    for (int i = 0; i < base_.a; ++i)
      for (int j = 0; j < base_.b; ++j) set_free(i, base_.a + j, true);

    std::map<std::pair<int, int>, int> mult;
    const auto deg = d.degrees();
    for (const DemandEdge& e : d.edges()) {
      Demand dm{e.id, base_.flat(e.u), base_.flat(e.v)};
      demands_.push_back(dm);
      ++mult[key(dm)];
    }
    auto weight = [&](const Demand& x) {
      return std::pair{mult[key(x)], deg[static_cast<std::size_t>(x.s)] +
                                         deg[static_cast<std::size_t>(x.t)]};
    };
    std::stable_sort(demands_.begin(), demands_.end(), [&](const Demand& x, const Demand& y) {
      return weight(x) > weight(y);
    });
    routes_.resize(demands_.size());
  }

  OracleStatus run() {
    const bool found = search(0);
    if (found) return OracleStatus::kResolvable;
    return exhausted_ ? OracleStatus::kUnknown : OracleStatus::kUnresolvable;
  }

  std::int64_t nodes() const { return nodes_; }

  Resolution resolution() const {
    Resolution r;
    for (std::size_t k = 0; k < demands_.size(); ++k) {
      Path p;
      for (int v : routes_[k]) p.vertices.push_back(base_.vertex(v));
      r.routes[demands_[k].id] = std::move(p);
    }
    return r;
  }

 private:
  static std::pair<int, int> key(const Demand& d) { return std::minmax(d.s, d.t); }
  bool same_side(int x, int y) const { return (x < base_.a) == (y < base_.a); }
  char& cell(int x, int y) { return free_[static_cast<std::size_t>(x * vertices_ + y)]; }
  bool is_free(int x, int y) const {
    return free_[static_cast<std::size_t>(x * vertices_ + y)] != 0;
  }
  void set_free(int x, int y, bool value) {
    const int delta = value ? 1 : -1;
    cell(x, y) = value;
    cell(y, x) = value;
    resid_deg_[static_cast<std::size_t>(x)] += delta;
    resid_deg_[static_cast<std::size_t>(y)] += delta;
    resid_edges_ += delta;
  }

  bool out_of_budget() {
    if (nodes_ >= budget_.max_nodes) return true;
    if ((nodes_ & 255) == 0) {
      const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start_)
                               .count();
      if (elapsed >= budget_.max_millis) return true;
    }
    return false;
  }

  // Necessary conditions for routing demands_[level..] in the residual graph.
  bool feasible(std::size_t level) const {
    std::vector<int> need(static_cast<std::size_t>(vertices_), 0);
    std::map<std::pair<int, int>, int> pairs;
    for (std::size_t k = level; k < demands_.size(); ++k) {
      ++need[static_cast<std::size_t>(demands_[k].s)];
      ++need[static_cast<std::size_t>(demands_[k].t)];
      ++pairs[key(demands_[k])];
    }
    for (int v = 0; v < vertices_; ++v)
      if (need[static_cast<std::size_t>(v)] > resid_deg_[static_cast<std::size_t>(v)])
        return false;
    // At most one copy of a crossing pair is routed directly; the rest need
    // length >= 3. Same-side pairs need length >= 2.
    std::int64_t lower = 0;
    for (const auto& [p, k] : pairs) {
      if (same_side(p.first, p.second))
        lower += 2LL * k;
      else
        lower += is_free(p.first, p.second) ? 1 + 3LL * (k - 1) : 3LL * k;
    }
    return lower <= resid_edges_;
  }

  bool search(std::size_t level) {
    if (level == demands_.size()) return true;
    if (!feasible(level)) return false;
    const Demand& d = demands_[level];
    const int parity = same_side(d.s, d.t) ? 0 : 1;
    path_.assign(1, d.s);
    on_path_[static_cast<std::size_t>(d.s)] = 1;
    bool found = false;
    for (int len = parity == 1 ? 1 : 2; len < vertices_ && !found && !exhausted_; len += 2)
      found = extend(level, d.s, d.t, len);
    on_path_[static_cast<std::size_t>(d.s)] = 0;
    return found;
  }

  // Grows path_ from v by exactly `left` edges to t; on completion recurses.
  bool extend(std::size_t level, int v, int t, int left) {
    if (left == 0) {
      if (v != t) return false;
      ++nodes_;
      if (out_of_budget()) {
        exhausted_ = true;
        return false;
      }
      routes_[level] = path_;
      const std::vector<int> saved = path_;
      for (std::size_t i = 0; i + 1 < saved.size(); ++i) set_free(saved[i], saved[i + 1], false);
      std::vector<char> saved_marks(on_path_);
      std::fill(on_path_.begin(), on_path_.end(), 0);
      const bool ok = search(level + 1);
      on_path_ = std::move(saved_marks);
      for (std::size_t i = 0; i + 1 < saved.size(); ++i) set_free(saved[i], saved[i + 1], true);
      path_ = saved;
      return ok;
    }
    for (int w = 0; w < vertices_; ++w) {
      if (!is_free(v, w) || on_path_[static_cast<std::size_t>(w)]) continue;
      if ((w == t) != (left == 1)) continue;
      on_path_[static_cast<std::size_t>(w)] = 1;
      path_.push_back(w);
      const bool ok = extend(level, w, t, left - 1);
      path_.pop_back();
      on_path_[static_cast<std::size_t>(w)] = 0;
      if (ok) return true;
      if (exhausted_) return false;
    }
    return false;
  }

  BaseSpec base_;
  int vertices_;
  SearchBudget budget_;
  std::vector<char> free_;
  std::vector<int> resid_deg_;
  std::int64_t resid_edges_ = 0;
  std::vector<char> on_path_;
  std::vector<Demand> demands_;
  std::vector<std::vector<int>> routes_;
  std::vector<int> path_;
  std::int64_t nodes_ = 0;
  bool exhausted_ = false;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace

OracleVerdict decide(const DemandGraph& d, SearchBudget budget) {
  if (budget.max_nodes < 1 || budget.max_millis < 1)
    throw DomainError("search budget must be positive");
  Router router(d, budget);
  OracleVerdict verdict;
  verdict.status = router.run();
  verdict.nodes_explored = router.nodes();
  if (verdict.status == OracleStatus::kResolvable) verdict.resolution = router.resolution();
  return verdict;
}

namespace {

using Matrix = std::vector<int>;  // n x n multiplicities, row-major

// True when no independent row/column relabelling gives a lexicographically
// smaller matrix. For a fixed row order, sorting columns ascending (as
// top-to-bottom tuples) yields the row-major minimum.
bool is_canonical(const Matrix& m, int n) {
  std::vector<int> rows(static_cast<std::size_t>(n));
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<std::vector<int>> cols(static_cast<std::size_t>(n),
                                     std::vector<int>(static_cast<std::size_t>(n)));
  Matrix candidate(m.size());
  do {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
            m[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)] * n + j)];
    std::sort(cols.begin(), cols.end());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        candidate[static_cast<std::size_t>(i * n + j)] =
            cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    if (candidate < m) return false;
  } while (std::next_permutation(rows.begin(), rows.end()));
  return true;
}

}  // namespace

std::int64_t enumerate_demands(const EnumerationOptions& options,
                               const std::function<bool(const DemandGraph&)>& visit) {
  const int n = options.n;
  if (n < 1) throw DomainError("enumeration needs n >= 1");
  Matrix m(static_cast<std::size_t>(n * n), 0);
  std::vector<int> row_deg(static_cast<std::size_t>(n), 0);
  std::vector<int> col_deg(static_cast<std::size_t>(n), 0);
  std::int64_t visited = 0;
  bool stop = false;

  std::function<void(int, int)> fill = [&](int cell, int left) {
    if (stop) return;
    if (cell == n * n) {
      if (options.canonical && !is_canonical(m, n)) return;
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < m[static_cast<std::size_t>(i * n + j)]; ++k) pairs.emplace_back(i, j);
      ++visited;
      if (!visit(DemandGraph::from_pairs({n, n}, pairs))) stop = true;
      return;
    }
    const int i = cell / n;
    const int j = cell % n;
    auto& r = row_deg[static_cast<std::size_t>(i)];
    auto& c = col_deg[static_cast<std::size_t>(j)];
    for (int k = 0; k <= left && r + k <= options.max_degree && c + k <= options.max_degree; ++k) {
      m[static_cast<std::size_t>(cell)] = k;
      r += k;
      c += k;
      fill(cell + 1, left - k);
      r -= k;
      c -= k;
    }
    m[static_cast<std::size_t>(cell)] = 0;
  };
  fill(0, options.max_edges);
  return visited;
}

}  // namespace tpb
