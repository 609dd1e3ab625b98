// tvgenus: Turaev-Viro invariants, genus bounds and census screening.
//
//   tvgenus compute  --fixture t3 --r 5 --mode both
//   tvgenus screen   --census census.txt --paper-mode --format csv
//   tvgenus homology --isosig cMcabbgqw
//   tvgenus verify   --r-max 7
//
// Exit codes: 0 success, 1 check or record failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tvgenus/fixtures.hpp"
#include "tvgenus/genus.hpp"
#include "tvgenus/homology.hpp"
#include "tvgenus/identities.hpp"
#include "tvgenus/isosig.hpp"
#include "tvgenus/report.hpp"
#include "tvgenus/statesum.hpp"

namespace {

using namespace tvgenus;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputArgs {
  std::string input;
  std::string isosig;
  std::string fixture;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--input", input, "Gluing file (tets N / i: j0 p0 ... lines)");
    cmd->add_option("--isosig", isosig, "Isomorphism signature");
    cmd->add_option("--fixture", fixture, "Built-in fixture name");
  }
  int count() const { return !input.empty() + !isosig.empty() + !fixture.empty(); }

  Triangulation load() const {
    if (count() != 1) throw UsageError("exactly one of --input, --isosig, --fixture is required");
    if (!fixture.empty()) return tvgenus::fixture(fixture).triangulation();
    if (!isosig.empty()) return decode_isosig(isosig, isosig);
    std::ifstream in(input);
    if (!in) throw std::runtime_error("cannot read " + input);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_gluing_file(ss.str(), input);
  }
  std::string label() const { return !fixture.empty() ? fixture : !isosig.empty() ? isosig : input; }
};

struct CommonArgs {
  int r = 5;
  std::string mode = "float";
  std::string format = "text";
  int threads = 1;
  double max_states = 1e9;
  bool force = false;

  void add_to(CLI::App* cmd, bool with_mode = true) {
    cmd->add_option("--r", r, "Level r >= 3 (q = exp(i pi / r))");
    if (with_mode)
      cmd->add_option("--mode", mode, "exact, float or both")->check(CLI::IsMember({"exact", "float", "both"}));
    cmd->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    cmd->add_option("--threads", threads, "Worker threads (default $TVGENUS_THREADS or 1)")->check(CLI::PositiveNumber);
    cmd->add_option("--max-states", max_states, "Refuse searches above this (r-1)^E estimate")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--force", force, "Ignore the search-volume cap");
  }
  Level level() const {
    if (r < 3) throw UsageError("--r must be at least 3");
    return Level(r);
  }
};

int default_threads() {
  if (const char* env = std::getenv("TVGENUS_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring TVGENUS_THREADS='" << env << "'\n";
  }
  return 1;
}

int cmd_compute(const InputArgs& in, const CommonArgs& args) {
  const Level level = args.level();
  const Triangulation tri = in.load();
  TvOptions opt;
  opt.mode = parse_mode(args.mode);
  opt.threads = args.threads;
  opt.max_states = args.max_states;
  opt.force = args.force;
  const TvResult tv = tv_invariant(tri, level, opt);
  const GenusBound g = genus_lower_bound(tv.value_float, level);
  const H1Summary h = h1(tri);

  if (args.format == "json") {
    nlohmann::json j;
    j["name"] = in.label();
    j["r"] = level.r();
    j["mode"] = args.mode;
    j["tetrahedra"] = tri.size();
    j["tv_float"] = tv.value_float;
    j["tv_float_error_bound"] = tv.float_error_bound;
    j["tv_exact"] = tv.value_exact ? nlohmann::json(tv.value_exact->to_string()) : nlohmann::json(nullptr);
    j["tv_exact_decimal"] =
        tv.value_exact ? nlohmann::json(format_decimal(tv.value_exact->to_double())) : nlohmann::json(nullptr);
    j["raw"] = g.raw;
    j["genus_lb"] = g.genus_lb;
    j["h1"] = h.to_string();
    j["min_gens"] = h.min_generators();
    j["states_visited"] = tv.states_visited;
    j["states_admissible"] = tv.states_admissible;
    j["elapsed_s"] = tv.elapsed.count();
    j["warnings"] = tv.warnings;
    std::cout << j.dump(2) << '\n';
  } else if (args.format == "csv") {
    ScreenRecord rec;
    rec.name = in.label();
    rec.isosig = encode_isosig(tri);
    rec.r = level.r();
    rec.tv_float = tv.value_float;
    if (tv.value_exact) rec.tv_exact = tv.value_exact->to_string();
    rec.genus_lb = g.genus_lb;
    rec.h1 = h;
    rec.flagged = g.genus_lb > h.min_generators();
    rec.notes = tv.warnings;
    std::cout << to_csv({rec});
  } else {
    std::cout << "input        " << in.label() << " (" << tri.size() << " tetrahedra)\n";
    std::cout << "r            " << level.r() << "\n";
    if (opt.mode != Mode::exact) std::cout << "tv (float)   " << format_decimal(tv.value_float) << "\n";
    if (tv.value_exact) {
      std::cout << "tv (exact)   " << tv.value_exact->to_string() << "   z = exp(i pi/" << level.r() << ")\n";
      std::cout << "             = " << format_decimal(tv.value_exact->to_double()) << "\n";
    }
    std::cout << "genus >=     " << g.genus_lb << "\n";
    std::cout << "H1           " << h.to_string() << "  (" << h.min_generators() << " generators)\n";
    std::cout << "states       " << tv.states_admissible << " admissible of " << tv.states_visited << " visited\n";
    for (const auto& w : tv.warnings) std::cout << "warning      " << w << "\n";
  }
  return kExitOk;
}

int cmd_screen(const std::string& census, const CommonArgs& args, std::optional<double> threshold, bool paper_mode,
               bool r_given) {
  ScreenOptions opt;
  if (paper_mode) {
    if (r_given && args.r != kScreenLevel) throw UsageError("--paper-mode fixes --r 5");
    opt.level = Level(kScreenLevel);
    if (!threshold) threshold = kScreenThreshold;
  } else {
    opt.level = args.level();
  }
  if (threshold && !(*threshold > 0)) throw UsageError("--threshold must be positive");
  opt.threshold = threshold;
  opt.mode = parse_mode(args.mode);
  opt.threads = args.threads;
  opt.max_states = args.max_states;
  opt.force = args.force;

  std::ifstream in(census);
  if (!in) throw std::runtime_error("cannot read census file " + census);
  std::ostringstream ss;
  ss << in.rdbuf();
  Report rep;
  rep.provenance.r = opt.level.r();
  rep.provenance.mode = args.mode;
  rep.provenance.threshold = threshold;
  rep.records = screen(parse_census(ss.str()), opt);

  if (args.format == "json")
    std::cout << to_json(rep);
  else if (args.format == "csv")
    std::cout << to_csv(rep.records);
  else
    std::cout << to_text(rep);
  const Summary s = rep.summary();
  if (s.total > 0 && s.failed == s.total) return kExitFailure;
  return kExitOk;
}

int cmd_homology(const InputArgs& in, const std::string& format) {
  const Triangulation tri = in.load();
  const H1Summary h = h1(tri);
  if (format == "json") {
    nlohmann::json j{{"name", in.label()}, {"h1", h.to_string()}, {"min_gens", h.min_generators()}};
    std::cout << j.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "name,h1,min_gens\r\n" << csv_field(in.label()) << ',' << csv_field(h.to_string()) << ','
              << h.min_generators() << "\r\n";
  } else {
    std::cout << h.to_string() << '\n';
  }
  return kExitOk;
}

struct VerifyLine {
  std::string name;
  bool passed;
  std::string detail;
};

int cmd_verify(int r_max, const InputArgs& extra, const std::string& format) {
  if (r_max < 3) throw UsageError("--r-max must be at least 3");
  std::vector<VerifyLine> lines;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    lines.push_back({std::move(name), ok, std::move(detail)});
  };

  for (int r = 3; r <= r_max; ++r) {
    const IdentityReport rep = verify_identities(Level(r));
    for (const auto& c : rep.checks)
      add(c.name + " r=" + std::to_string(r), c.passed,
          c.passed ? std::to_string(c.cases) + " cases" : "counterexample " + c.witness);
    for (const auto& a : tv_at_paper_normalization_check(Level(r))) add(a.name, a.passed, a.passed ? "" : a.detail);
  }

  std::vector<std::pair<std::string, std::optional<Triangulation>>> tris;
  for (const auto& f : fixtures()) tris.emplace_back(f.name, f.triangulation());
  if (extra.count() > 0) {
    try {
      tris.emplace_back(extra.label(), extra.load());
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      add("load " + extra.label(), false, e.what());
    }
  }
  TvOptions exact;
  exact.mode = Mode::exact;
  TvOptions both;
  both.mode = Mode::both;
  const int pachner_r = std::min(r_max, 7);
  for (const auto& [name, tri] : tris) {
    try {
      bool ok = true;
      std::string detail;
      for (int r = 3; r <= pachner_r && ok; ++r) {
        const CycNumber before = *tv_invariant(*tri, Level(r), exact).value_exact;
        for (int fo = 0; fo < tri->face_count(); ++fo) {
          const auto& orbit = tri->face_orbits()[static_cast<std::size_t>(fo)];
          if (orbit.sides[0].tet == orbit.sides[1].tet) continue;
          if (*tv_invariant(pachner_23(*tri, fo), Level(r), exact).value_exact != before) {
            ok = false;
            detail = "r=" + std::to_string(r) + " face " + std::to_string(fo);
            break;
          }
        }
      }
      add("pachner 2-3 invariance " + name, ok, detail);
      ok = true;
      detail.clear();
      for (int r = 3; r <= r_max && ok; ++r) {
        const TvResult res = tv_invariant(*tri, Level(r), both);
        const double diff = std::abs(res.value_exact->to_double() - res.value_float);
        if (diff > 1e-9) {
          ok = false;
          detail = "r=" + std::to_string(r) + " differs by " + format_decimal(diff);
        }
      }
      add("exact/float agreement " + name, ok, detail);
    } catch (const std::exception& e) {
      add("checks on " + name, false, e.what());
    }
  }

  bool all = true;
  for (const auto& l : lines) all = all && l.passed;
  if (format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& l : lines) j.push_back({{"check", l.name}, {"passed", l.passed}, {"detail", l.detail}});
    std::cout << nlohmann::json{{"checks", j}, {"passed", all}}.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << "check,passed,detail\r\n";
    for (const auto& l : lines)
      std::cout << csv_field(l.name) << ',' << (l.passed ? "true" : "false") << ',' << csv_field(l.detail) << "\r\n";
  } else {
    for (const auto& l : lines)
      std::cout << (l.passed ? "PASS  " : "FAIL  ") << l.name << (l.detail.empty() ? "" : "  (" + l.detail + ")")
                << '\n';
    std::size_t failed = 0;
    for (const auto& l : lines) failed += !l.passed;
    std::cout << lines.size() - failed << " passed, " << failed << " failed\n";
  }
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Turaev-Viro invariants, Heegaard genus lower bounds and census screening"};
  app.require_subcommand(1);
  const int env_threads = default_threads();

  auto* compute = app.add_subcommand("compute", "Turaev-Viro invariant and genus bound of one triangulation");
  InputArgs compute_in;
  CommonArgs compute_args;
  compute_args.threads = env_threads;
  compute_in.add_to(compute);
  compute_args.add_to(compute);

  auto* screen_cmd = app.add_subcommand("screen", "Screen a census file of 'name ; isosig' lines");
  std::string census;
  CommonArgs screen_args;
  screen_args.threads = env_threads;
  std::optional<double> threshold;
  bool paper_mode = false;
  screen_cmd->add_option("--census", census, "Census file")->required();
  screen_cmd->add_option("--threshold", threshold, "Keep records with tv >= threshold");
  screen_cmd->add_flag("--paper-mode", paper_mode, "r = 5 and threshold 7.235");
  screen_args.add_to(screen_cmd);

  auto* homology = app.add_subcommand("homology", "First homology of one triangulation");
  InputArgs homology_in;
  std::string homology_format = "text";
  homology_in.add_to(homology);
  homology->add_option("--format", homology_format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  auto* verify = app.add_subcommand("verify", "Recoupling identities, anchors, Pachner invariance, exact/float agreement");
  int r_max = 8;
  InputArgs verify_in;
  std::string verify_format = "text";
  verify->add_option("--r-max", r_max, "Highest level checked (default 8)");
  verify_in.add_to(verify);
  verify->add_option("--format", verify_format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*compute) return cmd_compute(compute_in, compute_args);
    if (*screen_cmd) return cmd_screen(census, screen_args, threshold, paper_mode, screen_cmd->count("--r") > 0);
    if (*homology) return cmd_homology(homology_in, homology_format);
    if (*verify) return cmd_verify(r_max, verify_in, verify_format);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    // unknown fixture names and bad levels are usage errors
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
