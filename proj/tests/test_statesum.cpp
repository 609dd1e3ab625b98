#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <cstring>

#include "tvgenus/fixtures.hpp"
#include "tvgenus/isosig.hpp"
#include "tvgenus/statesum.hpp"

using namespace tvgenus;

namespace {

TvOptions exact_mode() {
  TvOptions o;
  o.mode = Mode::exact;
  return o;
}

double s3_closed_form(int r) {
  const double s = std::sin(std::numbers::pi / r);
  return 2 * s * s / r;
}

// Independently typed weights in double precision, straight from the sine
// formula for quantum integers.
struct NaiveWeights {
  int r;
  double qi(int n) const { return std::sin(n * std::numbers::pi / r) / std::sin(std::numbers::pi / r); }
  double fact(int n) const {
    double out = 1;
    for (int k = 2; k <= n; ++k) out *= qi(k);
    return out;
  }
  bool adm(int a, int b, int c) const {
    return (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * r - 4;
  }
  double delta(int i) const { return (i % 2 ? -1 : 1) * qi(i + 1); }
  double theta(int a, int b, int c) const {
    const int m = (a + b - c) / 2, n = (b + c - a) / 2, p = (a + c - b) / 2;
    return ((m + n + p) % 2 ? -1 : 1) * fact(m + n + p + 1) * fact(m) * fact(n) * fact(p) /
           (fact(m + n) * fact(n + p) * fact(m + p));
  }
  double tet(int A, int B, int C, int D, int E, int F) const {
    const int a[4] = {(A + B + E) / 2, (C + D + E) / 2, (A + D + F) / 2, (B + C + F) / 2};
    const int b[3] = {(B + D + E + F) / 2, (A + C + E + F) / 2, (A + B + C + D) / 2};
    const int lo = *std::max_element(a, a + 4), hi = *std::min_element(b, b + 3);
    double inner = 1, outer = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) inner *= fact(b[i] - a[j]);
    for (int x : {A, B, C, D, E, F}) inner /= fact(x);
    for (int s = lo; s <= hi; ++s) {
      double den = 1;
      for (int j = 0; j < 4; ++j) den *= fact(s - a[j]);
      for (int i = 0; i < 3; ++i) den *= fact(b[i] - s);
      outer += (s % 2 ? -1 : 1) * fact(s + 1) / den;
    }
    return inner * outer;
  }
};

// Full (r-1)^E enumeration with no pruning and no shared code path.
double naive_tv(const Triangulation& tri, int r) {
  const NaiveWeights w{r};
  const int ne = tri.edge_count(), n = r - 1;
  std::vector<int> c(static_cast<std::size_t>(ne), 0);
  double total = 0;
  while (true) {
    bool ok = true;
    for (const auto& f : tri.face_orbits())
      ok = ok && w.adm(c[static_cast<std::size_t>(f.edges[0])], c[static_cast<std::size_t>(f.edges[1])],
                       c[static_cast<std::size_t>(f.edges[2])]);
    if (ok) {
      double term = 1;
      for (int e = 0; e < ne; ++e) term *= w.delta(c[static_cast<std::size_t>(e)]);
      for (const auto& f : tri.face_orbits())
        term /= w.theta(c[static_cast<std::size_t>(f.edges[0])], c[static_cast<std::size_t>(f.edges[1])],
                        c[static_cast<std::size_t>(f.edges[2])]);
      for (int t = 0; t < tri.size(); ++t) {
        auto col = [&](int a, int b) { return c[static_cast<std::size_t>(tri.edge_of(t, edge_index(a, b)))]; };
        term *= w.tet(col(0, 1), col(1, 2), col(2, 3), col(0, 3), col(0, 2), col(1, 3));
      }
      total += term;
    }
    int k = 0;
    while (k < ne && ++c[static_cast<std::size_t>(k)] == n) c[static_cast<std::size_t>(k++)] = 0;
    if (k == ne) break;
  }
  const double s = std::sin(std::numbers::pi / r);
  return total * std::pow(2 * s * s / r, tri.vertex_count());
}

std::vector<std::vector<std::string>> read_rows(const std::string& file) {
  std::ifstream in(std::string(TVGENUS_TEST_DATA) + "/" + file);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    for (std::size_t start = 0;;) {
      const auto semi = line.find(" ; ", start);
      f.push_back(line.substr(start, semi - start));
      if (semi == std::string::npos) break;
      start = semi + 3;
    }
    rows.push_back(f);
  }
  return rows;
}

}  // namespace

TEST(StateSum, SphereAnchor) {
  const Triangulation s3 = fixture("s3").triangulation();
  for (int r = 3; r <= 8; ++r) {
    const Level level(r);
    const TvResult res = tv_invariant(s3, level, exact_mode());
    ASSERT_TRUE(res.value_exact);
    EXPECT_EQ(*res.value_exact, global_dim(level).inverse()) << "r=" << r;
    EXPECT_NEAR(tv_invariant(s3, level).value_float, s3_closed_form(r), 1e-9);
  }
  EXPECT_NEAR(tv_invariant(s3, Level(5)).value_float, 0.1381966011, 1e-10);
}

TEST(StateSum, SphereTimesCircleAnchor) {
  const Triangulation t = fixture("s2xs1").triangulation();
  for (int r = 3; r <= 8; ++r) {
    const TvResult res = tv_invariant(t, Level(r), exact_mode());
    EXPECT_EQ(*res.value_exact, CycNumber(cyclotomic_field(r), 1)) << "r=" << r;
  }
}

TEST(StateSum, ThreeTorus) {
  const Triangulation t3 = fixture("t3").triangulation();
  TvOptions both;
  both.mode = Mode::both;
  const TvResult res = tv_invariant(t3, Level(5), both);
  EXPECT_NEAR(res.value_float, 16.0, 1e-9);
  EXPECT_EQ(*res.value_exact, CycNumber(cyclotomic_field(5), 16));
  EXPECT_TRUE(res.warnings.empty());
}

TEST(StateSum, LensSpacesMatchReferenceValues) {
  // reference values for r = 3..8 from an external implementation
  const std::map<std::string, std::vector<double>> ref{
      {"rp3", {0, 0.146446609407, 0, 0.044658198739, 0, 0.019030116872}},
      {"l31", {0.5, 0.25, 0.361803398875, 0.25, 0.174645847708, 0.213388347648}},
  };
  for (const auto& [name, values] : ref) {
    const Triangulation tri = fixture(name).triangulation();
    for (int r = 3; r <= 8; ++r) {
      EXPECT_NEAR(tv_invariant(tri, Level(r)).value_float, values[static_cast<std::size_t>(r - 3)], 1e-9)
          << name << " r=" << r;
    }
  }
}

TEST(StateSum, AgreesWithNaiveEnumeration) {
  for (const auto& f : fixtures()) {
    const Triangulation tri = f.triangulation();
    for (int r = 3; r <= 6; ++r) {
      if (std::pow(r - 1, tri.edge_count()) > 3e5) continue;
      EXPECT_NEAR(tv_invariant(tri, Level(r)).value_float, naive_tv(tri, r), 1e-9) << f.name << " r=" << r;
    }
  }
}

TEST(StateSum, CensusReference) {
  const auto rows = read_rows("census_reference.txt");
  ASSERT_GE(rows.size(), 200u);
  for (const auto& row : rows) {
    const Triangulation tri = decode_isosig(row.at(1), row[0]);
    for (int r = 3; r <= 6; ++r) {
      const std::string& v = row.at(static_cast<std::size_t>(r));
      if (v == "-") continue;
      EXPECT_NEAR(tv_invariant(tri, Level(r)).value_float, std::stod(v), 1e-9) << row[0] << " r=" << r;
    }
  }
}

TEST(StateSum, PachnerInvarianceExact) {
  for (const auto& f : fixtures()) {
    const Triangulation tri = f.triangulation();
    if (tri.size() > 4) continue;  // the acceptance suite covers the rest
    for (int r = 3; r <= 5; ++r) {
      const CycNumber before = *tv_invariant(tri, Level(r), exact_mode()).value_exact;
      for (int fo = 0; fo < tri.face_count(); ++fo) {
        const auto& orbit = tri.face_orbits()[static_cast<std::size_t>(fo)];
        if (orbit.sides[0].tet == orbit.sides[1].tet) continue;
        EXPECT_EQ(*tv_invariant(pachner_23(tri, fo), Level(r), exact_mode()).value_exact, before)
            << f.name << " r=" << r << " face " << fo;
      }
    }
  }
}

TEST(StateSum, ConnectedSumMultiplicativity) {
  const std::vector<std::array<std::string, 3>> sums{
      {"rp3#rp3", "rp3", "rp3"}, {"rp3#l31", "rp3", "l31"},     {"l31#l31", "l31", "l31"},
      {"l31#l41", "l31", "l41"}, {"l31#s2xs1", "l31", "s2xs1"}};
  for (int r = 3; r <= 6; ++r) {
    const Level level(r);
    const CycNumber s3 = *tv_invariant(fixture("s3").triangulation(), level, exact_mode()).value_exact;
    for (const auto& [sum, a, b] : sums) {
      auto tv = [&](const std::string& n) { return *tv_invariant(fixture(n).triangulation(), level, exact_mode()).value_exact; };
      EXPECT_EQ(tv(sum) * s3, tv(a) * tv(b)) << sum << " r=" << r;
    }
  }
}

TEST(StateSum, ExactFloatAgreementAndNonnegativity) {
  TvOptions both;
  both.mode = Mode::both;
  for (const auto& f : fixtures()) {
    const Triangulation tri = f.triangulation();
    for (int r = 3; r <= 6; ++r) {
      const TvResult res = tv_invariant(tri, Level(r), both);
      EXPECT_NEAR(res.value_exact->to_double(), res.value_float, 1e-9) << f.name;
      EXPECT_TRUE(res.value_exact->is_real());
      EXPECT_GE(res.value_float, -1e-12) << f.name << " r=" << r;
      EXPECT_TRUE(res.warnings.empty());
      EXPECT_LE(res.float_error_bound, 1e-9);
    }
  }
}

TEST(StateSum, FloatResultsAreBitIdenticalAcrossRunsAndThreadCounts) {
  for (const auto& f : fixtures()) {
    const Triangulation tri = f.triangulation();
    TvOptions one, many;
    many.threads = 3;
    const double a = tv_invariant(tri, Level(7), one).value_float;
    const double b = tv_invariant(tri, Level(7), one).value_float;
    const double c = tv_invariant(tri, Level(7), many).value_float;
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0) << f.name;
    EXPECT_EQ(std::memcmp(&a, &c, sizeof a), 0) << f.name;
  }
}

TEST(StateSum, ThreadedExactMatchesSerial) {
  TvOptions serial = exact_mode(), threaded = exact_mode();
  threaded.threads = 4;
  const Triangulation t3 = fixture("t3").triangulation();
  EXPECT_EQ(*tv_invariant(t3, Level(6), serial).value_exact, *tv_invariant(t3, Level(6), threaded).value_exact);
}

TEST(StateSum, VolumeGuard) {
  const Triangulation t3 = fixture("t3").triangulation();
  TvOptions tight;
  tight.max_states = 1000;
  EXPECT_THROW(tv_invariant(t3, Level(5), tight), SearchVolumeExceeded);
  try {
    tv_invariant(t3, Level(5), tight);
  } catch (const SearchVolumeExceeded& e) {
    EXPECT_DOUBLE_EQ(e.estimate(), std::pow(4.0, t3.edge_count()));
  }
  tight.force = true;
  EXPECT_NEAR(tv_invariant(t3, Level(5), tight).value_float, 16.0, 1e-9);
}

TEST(StateSum, NonOrientableInputWarns) {
  // RP2 x S1
  const Triangulation tri = decode_isosig("dLQbcccajqs");
  ASSERT_FALSE(tri.orientable());
  const TvResult res = tv_invariant(tri, Level(4));
  ASSERT_FALSE(res.warnings.empty());
  EXPECT_NE(res.warnings[0].find("non-orientable"), std::string::npos);
}

TEST(NormalizationCheck, AnchorsHoldAndMutationIsCaught) {
  for (int r = 3; r <= 8; ++r)
    for (const auto& c : tv_at_paper_normalization_check(Level(r))) EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  const auto broken = tv_at_paper_normalization_check(Level(5), SignConvention::unsigned_dimension);
  ASSERT_EQ(broken.size(), 2u);
  EXPECT_FALSE(broken[0].passed);
  EXPECT_NE(broken[0].name.find("S3"), std::string::npos);
}

TEST(Enumeration, LeafCountMatchesUnprunedFilter) {
  for (const auto& f : fixtures()) {
    const Triangulation tri = f.triangulation();
    for (int r = 3; r <= 5; ++r) {
      const Level level(r);
      if (std::pow(r - 1, tri.edge_count()) > 2e5) continue;
      std::set<std::vector<int>> seen;
      bool zero_seen = false;
      const ColoringStats st = enumerate_colorings(tri, level, [&](const EdgeColoring& c) {
        EXPECT_TRUE(seen.insert(c.colors).second);
        zero_seen = zero_seen || std::all_of(c.colors.begin(), c.colors.end(), [](int x) { return x == 0; });
        for (const auto& fo : tri.face_orbits())
          EXPECT_TRUE(admissible(c.colors[static_cast<std::size_t>(fo.edges[0])],
                                 c.colors[static_cast<std::size_t>(fo.edges[1])],
                                 c.colors[static_cast<std::size_t>(fo.edges[2])], level));
      });
      EXPECT_TRUE(zero_seen) << f.name;
      // unpruned oracle
      std::uint64_t expected = 0;
      const int ne = tri.edge_count();
      std::vector<int> c(static_cast<std::size_t>(ne), 0);
      while (true) {
        bool ok = true;
        for (const auto& fo : tri.face_orbits())
          ok = ok && admissible(c[static_cast<std::size_t>(fo.edges[0])], c[static_cast<std::size_t>(fo.edges[1])],
                                c[static_cast<std::size_t>(fo.edges[2])], level);
        if (ok) {
          ++expected;
          EXPECT_TRUE(seen.count(c)) << f.name;
        }
        int k = 0;
        while (k < ne && ++c[static_cast<std::size_t>(k)] == r - 1) c[static_cast<std::size_t>(k++)] = 0;
        if (k == ne) break;
      }
      EXPECT_EQ(st.admissible, expected) << f.name << " r=" << r;
      EXPECT_EQ(seen.size(), expected);
    }
  }
}
