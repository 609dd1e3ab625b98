#pragma once

// Heegaard genus lower bound from a Turaev-Viro value, and the census
// screen flagging manifolds whose bound exceeds the rank of H1.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "tvgenus/homology.hpp"
#include "tvgenus/isosig.hpp"
#include "tvgenus/statesum.hpp"

namespace tvgenus {

inline constexpr double kGenusEpsilon = 1e-9;
inline constexpr double kScreenThreshold = 7.235;
inline constexpr int kScreenLevel = 5;

inline const char* const kBelowActionable = "below actionable genus";
inline const char* const kDisclaimer =
    "potential counterexample only: the genus bound is a lower bound and rank is read as the minimal number of "
    "generators of H1";

/// TV of the 3-sphere, 2 sin^2(pi/r) / r.
inline double tv_s3(const Level& level) {
  const double s = std::sin(std::numbers::pi / level.r());
  return 2 * s * s / level.r();
}

struct GenusBound {
  double tv_value = 0;
  int r = 0;
  double raw = 0;  ///< -ln(tv) / ln(tv_S3)
  int genus_lb = 0;
};

/// genus >= ceil(raw - eps) + 1, clamped at 0. A value tv <= 0 gives no
/// information: raw is -infinity and the bound is 0.
inline GenusBound genus_lower_bound(double tv, const Level& level) {
  GenusBound g;
  g.tv_value = tv;
  g.r = level.r();
  if (!(tv > 0)) {
    g.raw = -std::numeric_limits<double>::infinity();
    g.genus_lb = 0;
    return g;
  }
  g.raw = -std::log(tv) / std::log(tv_s3(level));
  g.genus_lb = std::max(0, static_cast<int>(std::ceil(g.raw - kGenusEpsilon)) + 1);
  return g;
}

struct ScreenRecord {
  std::string name;
  std::string isosig;
  int r = 0;
  std::optional<double> tv_float;
  std::optional<std::string> tv_exact;  ///< reduced polynomial in z = exp(i pi / r)
  std::optional<int> genus_lb;
  std::optional<H1Summary> h1;
  bool flagged = false;
  std::vector<std::string> notes;

  bool failed() const { return !tv_float.has_value(); }
  int min_generators() const { return h1 ? h1->min_generators() : 0; }
  bool operator==(const ScreenRecord&) const = default;
};

struct ScreenEntry {
  std::string name;
  std::string isosig;
  std::string error;  ///< non-empty when the input line itself was malformed
};

struct ScreenOptions {
  Level level{kScreenLevel};
  Mode mode = Mode::floating;
  std::optional<double> threshold;
  int threads = 1;
  double max_states = 1e9;
  bool force = false;
};

/// Computes one record. Failures become an "error: ..." note.
inline ScreenRecord screen_one(const ScreenEntry& entry, const ScreenOptions& options) {
  ScreenRecord rec;
  rec.name = entry.name;
  rec.isosig = entry.isosig;
  rec.r = options.level.r();
  if (!entry.error.empty()) {
    rec.notes.push_back("error: " + entry.error);
    return rec;
  }
  try {
    const Triangulation tri = decode_isosig(entry.isosig, entry.name);
    TvOptions tv_opt;
    tv_opt.mode = options.mode;
    tv_opt.max_states = options.max_states;
    tv_opt.force = options.force;
    const TvResult tv = tv_invariant(tri, options.level, tv_opt);
    const H1Summary h = h1(tri);
    const GenusBound g = genus_lower_bound(tv.value_float, options.level);
    rec.tv_float = tv.value_float;
    if (tv.value_exact) rec.tv_exact = tv.value_exact->to_string();
    rec.genus_lb = g.genus_lb;
    rec.h1 = h;
    rec.flagged = g.genus_lb > h.min_generators();
    for (const auto& w : tv.warnings) rec.notes.push_back("warning: " + w);
    if (rec.flagged) rec.notes.emplace_back(kDisclaimer);
  } catch (const std::exception& e) {
    rec = ScreenRecord{};
    rec.name = entry.name;
    rec.isosig = entry.isosig;
    rec.r = options.level.r();
    rec.notes.push_back(std::string("error: ") + e.what());
  }
  return rec;
}

/// Annotates records with genus_lb <= 2: the screen can only detect
/// genus >= 3 against rank 2.
inline void trivial_exclusions(std::vector<ScreenRecord>& records) {
  for (auto& rec : records)
    if (rec.genus_lb && *rec.genus_lb <= 2 &&
        std::find(rec.notes.begin(), rec.notes.end(), kBelowActionable) == rec.notes.end())
      rec.notes.emplace_back(kBelowActionable);
}

/// A flagged record that survives the trivial exclusions.
inline bool actionable(const ScreenRecord& rec) { return rec.flagged && rec.genus_lb && *rec.genus_lb >= 3; }

/// Screens entries in input order on a pool of options.threads workers.
/// Successful records below the threshold are dropped; failed ones kept.
inline std::vector<ScreenRecord> screen(const std::vector<ScreenEntry>& entries, const ScreenOptions& options) {
  std::vector<ScreenRecord> computed(entries.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) computed[i] = screen_one(entries[i], options);
  };
  const int nthreads = std::max(1, std::min<int>(options.threads, static_cast<int>(std::max<std::size_t>(entries.size(), 1))));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<ScreenRecord> out;
  for (auto& rec : computed) {
    if (options.threshold && rec.tv_float && *rec.tv_float < *options.threshold) continue;
    out.push_back(std::move(rec));
  }
  trivial_exclusions(out);
  return out;
}

}  // namespace tvgenus
