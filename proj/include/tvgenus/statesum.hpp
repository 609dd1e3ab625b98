#pragma once

// Turaev-Viro state sum over admissible edge colourings of a closed
// triangulation:
//
//   TV = D^{-V} * sum_c prod_edges Delta_c(e) * prod_faces theta^{-1} * prod_tets Tet
//
// with D the global dimension and V the number of vertices.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tvgenus/fixtures.hpp"
#include "tvgenus/recoupling.hpp"
#include "tvgenus/triangulation.hpp"

namespace tvgenus {

enum class Mode { exact, floating, both };

inline std::string to_string(Mode m) {
  switch (m) {
    case Mode::exact: return "exact";
    case Mode::floating: return "float";
    case Mode::both: return "both";
  }
  return "?";
}

inline Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::exact;
  if (s == "float") return Mode::floating;
  if (s == "both") return Mode::both;
  throw std::invalid_argument("unknown mode '" + s + "' (expected exact, float or both)");
}

struct TvOptions {
  Mode mode = Mode::floating;
  double max_states = 1e9;  ///< cap on the (r-1)^E volume estimate
  bool force = false;       ///< ignore the cap
  int threads = 1;
  SignConvention convention = SignConvention::kauffman_lins;
};

class SearchVolumeExceeded : public std::runtime_error {
 public:
  SearchVolumeExceeded(double estimate, double cap)
      : std::runtime_error("estimated search volume " + format(estimate) + " exceeds the cap " + format(cap) +
                           " (use --force or raise --max-states)"),
        estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
  }
  double estimate_;
};

struct TvResult {
  int r = 0;
  Mode mode = Mode::floating;
  std::optional<CycNumber> value_exact;
  double value_float = 0;
  /// Bound on the floating-point error of value_float; 0 when it was
  /// rounded from the exact value.
  double float_error_bound = 0;
  std::uint64_t states_visited = 0;
  std::uint64_t states_admissible = 0;
  std::chrono::duration<double> elapsed{0};
  std::vector<std::string> warnings;
};

struct EdgeColoring {
  std::vector<int> colors;  ///< per edge orbit, -1 while unassigned
};

struct ColoringStats {
  std::uint64_t visited = 0;     ///< partial colourings tried
  std::uint64_t admissible = 0;  ///< admissible total colourings
};

namespace statesum_detail {

/// Static search order with the faces and tetrahedra completed at each depth.
struct SearchPlan {
  std::vector<int> order;
  std::vector<std::vector<std::array<int, 3>>> faces_at;
  /// Edge orbits in (A,B,C,D,E,F) position: 01,12,23,03,02,13.
  std::vector<std::vector<std::array<int, 6>>> tets_at;
};

inline SearchPlan make_plan(const Triangulation& tri) {
  const int ne = tri.edge_count();
  std::vector<std::array<int, 3>> faces;
  for (const auto& fo : tri.face_orbits()) faces.push_back(fo.edges);
  std::vector<std::vector<int>> faces_of(static_cast<std::size_t>(ne));
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (int e : faces[f]) faces_of[static_cast<std::size_t>(e)].push_back(static_cast<int>(f));

  // Greedy most-constrained-first: prefer the edge closing the most faces,
  // then the higher face-incidence degree, then the lower index.
  SearchPlan plan;
  std::vector<char> chosen(static_cast<std::size_t>(ne), 0);
  std::vector<int> depth_of(static_cast<std::size_t>(ne), -1);
  for (int step = 0; step < ne; ++step) {
    int best = -1, best_close = -1, best_deg = -1;
    for (int e = 0; e < ne; ++e) {
      if (chosen[static_cast<std::size_t>(e)]) continue;
      int close = 0;
      for (int f : faces_of[static_cast<std::size_t>(e)]) {
        bool done = true;
        for (int x : faces[static_cast<std::size_t>(f)])
          if (x != e && !chosen[static_cast<std::size_t>(x)]) done = false;
        close += done;
      }
      const int deg = static_cast<int>(faces_of[static_cast<std::size_t>(e)].size());
      if (close > best_close || (close == best_close && deg > best_deg)) {
        best = e;
        best_close = close;
        best_deg = deg;
      }
    }
    chosen[static_cast<std::size_t>(best)] = 1;
    depth_of[static_cast<std::size_t>(best)] = step;
    plan.order.push_back(best);
  }

  auto completion = [&](auto&& edges) {
    int d = -1;
    for (int e : edges) d = std::max(d, depth_of[static_cast<std::size_t>(e)]);
    return static_cast<std::size_t>(d);
  };
  plan.faces_at.resize(static_cast<std::size_t>(ne));
  plan.tets_at.resize(static_cast<std::size_t>(ne));
  for (const auto& f : faces) plan.faces_at[completion(f)].push_back(f);
  for (int t = 0; t < tri.size(); ++t) {
    auto e = [&](int k) { return tri.edge_of(t, k); };
    const std::array<int, 6> six{e(0), e(3), e(5), e(2), e(1), e(4)};
    plan.tets_at[completion(six)].push_back(six);
  }
  return plan;
}

template <class Arith>
std::shared_ptr<const SymbolTable<Arith>> shared_table(const Level& level, SignConvention convention) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const SymbolTable<Arith>>> cache;
  const std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{level.r(), static_cast<int>(convention)}];
  if (!slot) slot = std::make_shared<const SymbolTable<Arith>>(level, convention);
  return slot;
}

/// Depth-first sum over one branch of the colouring tree.
template <class Arith>
class BranchSum {
 public:
  using value_type = typename Arith::value_type;

  BranchSum(const SymbolTable<Arith>& table, const SearchPlan& plan)
      : table_(table), plan_(plan), colors_(plan.order.size(), -1) {
    const value_type one = table.recoupling().arithmetic().one();
    weight_.assign(plan.order.size() + 1, one);
    sum_ = table.recoupling().arithmetic().zero();
  }

  /// Sums every colouring whose first edge in the plan has colour `first`.
  void run(int first) { step(0, first, first + 1); }

  const value_type& sum() const { return sum_; }
  double abs_sum() const { return abs_sum_; }
  std::uint64_t visited() const { return visited_; }
  std::uint64_t leaves() const { return leaves_; }

 private:
  int color(int e) const { return colors_[static_cast<std::size_t>(e)]; }

  void step(std::size_t depth, int from, int to) {
    const int edge = plan_.order[depth];
    const auto& faces = plan_.faces_at[depth];
    const auto& tets = plan_.tets_at[depth];
    for (int c = from; c < to; ++c) {
      ++visited_;
      colors_[static_cast<std::size_t>(edge)] = c;
      bool ok = true;
      for (const auto& f : faces)
        if (!table_.is_admissible(color(f[0]), color(f[1]), color(f[2]))) {
          ok = false;
          break;
        }
      if (!ok) continue;
      value_type w = weight_[depth] * table_.qdim(c);
      for (const auto& f : faces) w *= table_.theta_inverse(color(f[0]), color(f[1]), color(f[2]));
      for (const auto& t : tets)
        w *= table_.tet(color(t[0]), color(t[1]), color(t[2]), color(t[3]), color(t[4]), color(t[5]));
      if (depth + 1 == plan_.order.size()) {
        ++leaves_;
        if constexpr (!Arith::is_exact) abs_sum_ += std::abs(w);
        sum_ += w;
      } else {
        weight_[depth + 1] = std::move(w);
        step(depth + 1, 0, table_.color_count());
      }
    }
    colors_[static_cast<std::size_t>(edge)] = -1;
  }

  const SymbolTable<Arith>& table_;
  const SearchPlan& plan_;
  std::vector<int> colors_;
  std::vector<value_type> weight_;
  value_type sum_;
  double abs_sum_ = 0;
  std::uint64_t visited_ = 0;
  std::uint64_t leaves_ = 0;
};

struct Totals {
  std::uint64_t visited = 0;
  std::uint64_t leaves = 0;
  double abs_sum = 0;
};

/// Runs one branch per colour of the first edge on up to `threads` workers
/// and combines the branch sums in ascending colour order.
template <class Arith>
typename Arith::value_type parallel_sum(const SymbolTable<Arith>& table, const SearchPlan& plan, int threads,
                                        Totals& totals) {
  using value_type = typename Arith::value_type;
  const int branches = table.color_count();
  std::vector<std::optional<value_type>> sums(static_cast<std::size_t>(branches));
  std::vector<Totals> stats(static_cast<std::size_t>(branches));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int b = next++; b < branches; b = next++) {
      BranchSum<Arith> s(table, plan);
      s.run(b);
      sums[static_cast<std::size_t>(b)] = s.sum();
      stats[static_cast<std::size_t>(b)] = {s.visited(), s.leaves(), s.abs_sum()};
    }
  };
  const int nthreads = std::clamp(threads, 1, branches);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  value_type total = table.recoupling().arithmetic().zero();
  for (int b = 0; b < branches; ++b) {
    total += *sums[static_cast<std::size_t>(b)];
    totals.visited += stats[static_cast<std::size_t>(b)].visited;
    totals.leaves += stats[static_cast<std::size_t>(b)].leaves;
    totals.abs_sum += stats[static_cast<std::size_t>(b)].abs_sum;
  }
  return total;
}

template <class Visitor>
void enumerate(const SearchPlan& plan, const Level& level, std::size_t depth,
               EdgeColoring& col, ColoringStats& stats, Visitor& visit) {
  const int edge = plan.order[depth];
  for (int c = 0; c < level.color_count(); ++c) {
    ++stats.visited;
    col.colors[static_cast<std::size_t>(edge)] = c;
    bool ok = true;
    for (const auto& f : plan.faces_at[depth])
      if (!admissible(col.colors[static_cast<std::size_t>(f[0])], col.colors[static_cast<std::size_t>(f[1])],
                      col.colors[static_cast<std::size_t>(f[2])], level))
        ok = false;
    if (!ok) continue;
    if (depth + 1 == plan.order.size()) {
      ++stats.admissible;
      visit(static_cast<const EdgeColoring&>(col));
    } else {
      enumerate(plan, level, depth + 1, col, stats, visit);
    }
  }
  col.colors[static_cast<std::size_t>(edge)] = -1;
}

}  // namespace statesum_detail

/// Estimated leaf volume (r-1)^E of the unpruned search.
inline double search_volume(const Triangulation& tri, const Level& level) {
  return std::pow(static_cast<double>(level.color_count()), tri.edge_count());
}

/// Visits every admissible total colouring exactly once, in the static
/// search order with ascending colours.
template <class Visitor>
ColoringStats enumerate_colorings(const Triangulation& tri, const Level& level, Visitor&& visit) {
  const auto plan = statesum_detail::make_plan(tri);
  EdgeColoring col;
  col.colors.assign(static_cast<std::size_t>(tri.edge_count()), -1);
  ColoringStats stats;
  statesum_detail::enumerate(plan, level, 0, col, stats, visit);
  return stats;
}

/// The Turaev-Viro invariant. Throws SearchVolumeExceeded when the volume
/// estimate exceeds options.max_states and options.force is unset.
inline TvResult tv_invariant(const Triangulation& tri, const Level& level, const TvOptions& options = {}) {
  using namespace statesum_detail;
  const auto start = std::chrono::steady_clock::now();
  const double volume = search_volume(tri, level);
  if (!options.force && volume > options.max_states) throw SearchVolumeExceeded(volume, options.max_states);

  TvResult res;
  res.r = level.r();
  res.mode = options.mode;
  if (!tri.orientable())
    res.warnings.emplace_back("non-orientable triangulation: the state sum is evaluated but is not the invariant studied here");
  const SearchPlan plan = make_plan(tri);
  const int vertices = tri.vertex_count();

  if (options.mode != Mode::floating) {
    const auto table = shared_table<ExactArithmetic>(level, options.convention);
    Totals totals;
    CycNumber sum = parallel_sum(*table, plan, options.threads, totals);
    CycNumber norm = table->recoupling().arithmetic().one();
    for (int v = 0; v < vertices; ++v) norm *= table->global_dim();
    res.value_exact = sum / norm;
    res.value_float = res.value_exact->to_double();
    res.states_visited = totals.visited;
    res.states_admissible = totals.leaves;
    if (!res.value_exact->is_real()) res.warnings.emplace_back("exact value is not real");
  }
  if (options.mode != Mode::exact) {
    const auto table = shared_table<FloatArithmetic>(level, options.convention);
    Totals totals;
    const double sum = parallel_sum(*table, plan, options.threads, totals);
    const double scale = std::pow(table->global_dim(), -vertices);
    const double value = sum * scale;
    const double bound =
        totals.abs_sum * scale * 8 * static_cast<double>(tri.edge_count() + tri.face_count() + tri.size()) * 2.220446049250313e-16;
    if (options.mode == Mode::both) {
      if (std::abs(value - res.value_float) > 1e-9)
        res.warnings.push_back("exact and float values disagree: " + std::to_string(res.value_float) + " vs " +
                               std::to_string(value));
    } else {
      res.states_visited = totals.visited;
      res.states_admissible = totals.leaves;
    }
    res.value_float = value;
    res.float_error_bound = bound;
  }
  res.elapsed = std::chrono::steady_clock::now() - start;
  return res;
}

struct AnchorCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Exact checks of |S3| = 1/D and |S2 x S1| = 1 on the built-in fixtures.
inline std::vector<AnchorCheck> tv_at_paper_normalization_check(const Level& level,
                                                                SignConvention convention = SignConvention::kauffman_lins) {
  TvOptions opt;
  opt.mode = Mode::exact;
  opt.convention = convention;
  std::vector<AnchorCheck> out;
  const ExactArithmetic arith(level);
  const CycNumber inv_dim = Recoupling<ExactArithmetic>(level, convention).global_dim().inverse();
  {
    const TvResult s3 = tv_invariant(fixture("s3").triangulation(), level, opt);
    AnchorCheck c{"S3 = 1/D at r=" + std::to_string(level.r()), *s3.value_exact == inv_dim, ""};
    c.detail = "got " + s3.value_exact->to_string() + ", expected " + inv_dim.to_string();
    out.push_back(c);
  }
  {
    const TvResult s = tv_invariant(fixture("s2xs1").triangulation(), level, opt);
    AnchorCheck c{"S2xS1 = 1 at r=" + std::to_string(level.r()), *s.value_exact == arith.one(), ""};
    c.detail = "got " + s.value_exact->to_string();
    out.push_back(c);
  }
  return out;
}

}  // namespace tvgenus
